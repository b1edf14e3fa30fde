"""Tests for configuration loading."""

import pytest

from src.modules.settings import DEFAULT_CONFIG, load_config


@pytest.fixture(autouse=True)
def clean_env(monkeypatch):
    for name in ("TMN_CONFIG", "TMN_ORDER_CAP", "TMN_NODE_LIMIT", "TMN_TIME_LIMIT", "TMN_LOG_LEVEL"):
        monkeypatch.delenv(name, raising=False)
    monkeypatch.setattr("src.modules.settings.load_dotenv", lambda: None)


class TestLoadConfig:
    """Tests for load_config."""

    def test_defaults_when_missing(self, tmp_path):
        """A missing file gives the built-in defaults."""
        assert load_config(tmp_path / "none.yaml") == DEFAULT_CONFIG

    def test_deep_merge(self, tmp_path):
        """File values override single keys and keep the rest."""
        path = tmp_path / "config.yaml"
        path.write_text("search:\n  node_limit: 42\n")
        config = load_config(path)
        assert config["search"]["node_limit"] == 42
        assert config["search"]["time_limit_seconds"] == 60
        assert config["groups"]["order_cap"] == 2000

    def test_empty_file(self, tmp_path):
        """An empty file is treated as no overrides."""
        path = tmp_path / "config.yaml"
        path.write_text("")
        assert load_config(path) == DEFAULT_CONFIG

    def test_non_mapping(self, tmp_path):
        """A list at top level is rejected."""
        path = tmp_path / "config.yaml"
        path.write_text("- 1\n- 2\n")
        with pytest.raises(ValueError, match="must contain a mapping"):
            load_config(path)

    def test_env_overrides(self, tmp_path, monkeypatch):
        """TMN_* variables override single keys with their types."""
        monkeypatch.setenv("TMN_NODE_LIMIT", "1000")
        monkeypatch.setenv("TMN_TIME_LIMIT", "2.5")
        monkeypatch.setenv("TMN_LOG_LEVEL", "DEBUG")
        config = load_config(tmp_path / "none.yaml")
        assert config["search"]["node_limit"] == 1000
        assert config["search"]["time_limit_seconds"] == 2.5
        assert config["logging"]["level"] == "DEBUG"

    def test_bad_env_value_ignored(self, tmp_path, monkeypatch):
        """Unparseable overrides are skipped."""
        monkeypatch.setenv("TMN_ORDER_CAP", "lots")
        assert load_config(tmp_path / "none.yaml")["groups"]["order_cap"] == 2000

    def test_config_env_path(self, tmp_path, monkeypatch):
        """TMN_CONFIG names the file when no path is given."""
        path = tmp_path / "custom.yaml"
        path.write_text("groups:\n  order_cap: 99\n")
        monkeypatch.setenv("TMN_CONFIG", str(path))
        assert load_config()["groups"]["order_cap"] == 99

    def test_defaults_not_mutated(self, tmp_path):
        """Merging never changes DEFAULT_CONFIG."""
        path = tmp_path / "config.yaml"
        path.write_text("search:\n  node_limit: 7\n")
        load_config(path)
        assert DEFAULT_CONFIG["search"]["node_limit"] == 10_000_000
