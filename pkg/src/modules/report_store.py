"""Report Storage

JSON persistence for spectrum and corpus reports written by the tmn script.
Writes are atomic: the previous file is kept as a .bak copy and the new
content goes through a temporary file that is renamed into place.
"""

from typing import Any, Dict, List, Optional
from datetime import datetime
from pathlib import Path
import json
import logging
import re
import shutil

logger = logging.getLogger(__name__)

_UNSAFE = re.compile(r"[^A-Za-z0-9._-]+")


def report_name(kind: str, subject: str) -> str:
    """File-safe report name such as "spectrum-Q_8_S_3"."""
    return f"{kind}-{_UNSAFE.sub('_', subject).strip('_') or 'group'}"


class ReportStore:
    """Saved reports, one pretty-printed JSON file per report name."""

    def __init__(self, reports_dir: Path):
        """Initialize report store.

        Args:
            reports_dir: Directory holding the reports (created if missing)
        """
        self.reports_dir = Path(reports_dir)
        self.reports_dir.mkdir(parents=True, exist_ok=True)
        logger.info(f"Report store initialized at {self.reports_dir}")

    def path_for(self, name: str) -> Path:
        if not name or _UNSAFE.search(name):
            raise ValueError(f"Invalid report name {name!r}")
        return self.reports_dir / f"{name}.json"

    def save_report(self, name: str, payload: Dict[str, Any]) -> Path:
        """Save a report, replacing any previous one of the same name.

        Args:
            name: Report name (letters, digits, '.', '_' and '-')
            payload: JSON-serialisable report body

        Returns:
            Path of the written file

        Raises:
            ValueError: If the name is not file-safe
            IOError: If the write fails
        """
        path = self.path_for(name)
        entry = {"name": name, "saved_at": datetime.now().isoformat(), "report": payload}
        self._save_json(path, entry)
        logger.info(f"Saved report {name}")
        return path

    def load_report(self, name: str, default: Any = None) -> Any:
        """Report body saved under name, or default when missing or unreadable."""
        entry = self._load_json(self.path_for(name), default=None)
        if not isinstance(entry, dict) or "report" not in entry:
            return default
        return entry["report"]

    def list_reports(self) -> List[str]:
        """Names of saved reports, sorted."""
        return sorted(p.stem for p in self.reports_dir.glob("*.json"))

    def _load_json(self, file_path: Path, default: Optional[Any] = None) -> Any:
        if not file_path.exists():
            logger.debug(f"File {file_path} does not exist, using default")
            return default

        try:
            with open(file_path, "r") as f:
                return json.load(f)
        except (json.JSONDecodeError, IOError) as e:
            logger.error(f"Failed to load {file_path}: {e}, using default")
            return default

    def _save_json(self, file_path: Path, data: Any) -> None:
        if file_path.exists():
            backup_path = file_path.with_suffix(".json.bak")
            shutil.copy2(file_path, backup_path)
            logger.debug(f"Created backup: {backup_path}")

        temp_path = file_path.with_suffix(".json.tmp")
        try:
            with open(temp_path, "w") as f:
                json.dump(data, f, indent=2, sort_keys=True, default=str)
            temp_path.replace(file_path)
            logger.debug(f"Saved {file_path}")
        except IOError as e:
            logger.error(f"Failed to save {file_path}: {e}")
            if temp_path.exists():
                temp_path.unlink()
            raise
