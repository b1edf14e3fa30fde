#!/usr/bin/env python3
"""tmn - Decide the T(m,n) commuting-subsets property for finite groups

Usage:
    python src/scripts/tmn.py info S:4
    python src/scripts/tmn.py decide S:3 -m 2 -n 3
    python src/scripts/tmn.py decide "Q:8*S:3" -m 12 -n 2 --json
    python src/scripts/tmn.py spectrum A:5 --max-m 10 --save
    python src/scripts/tmn.py verify-paper --only "A5.T(9,5)"
    python src/scripts/tmn.py ingest --check data/groups/frobenius21.perm

A GROUP is C:<n>, D:<order>, Q:<order>, S:<n>, A:<n>, cayley:<path>,
perm:<path>, fixture:<name> or a product of these joined with '*'.

Exit codes: 0 answered (NOT_TMN included), 1 a corpus claim failed,
2 invalid input, 3 search budget exhausted, 4 internal invariant violation.
"""

import sys
import argparse
import json
import logging
import time
from pathlib import Path
from typing import Any, Dict, List, Optional

# Add parent directory to path for imports
sys.path.insert(0, str(Path(__file__).parent.parent))

from modules import __version__
from modules.claims import load_corpus_group, verify_paper_corpus
from modules.clique import element_clique_number
from modules.errors import BudgetExceeded, InvariantViolation, TmnError
from modules.group import FiniteGroup
from modules.ingest import export_cayley, read_group_file
from modules.invariants import GroupInvariants
from modules.obstruction import (
    Decision,
    DecisionStatus,
    SearchBudget,
    brute_force_is_tmn,
    verify_certificate,
)
from modules.report_store import ReportStore, report_name
from modules.settings import PROJECT_ROOT, load_config
from modules.spectrum import spectrum
from modules.theorems import CheckStatus

logger = logging.getLogger("tmn")

EXIT_OK = 0
EXIT_CLAIM_FAILED = 1
EXIT_INPUT = 2
EXIT_BUDGET = 3
EXIT_INVARIANT = 4


def setup_logging(config: dict, verbose: bool) -> None:
    """Log to stderr and, when configured, to a log file."""
    level_name = "INFO" if verbose else str(config["logging"]["level"]).upper()
    handlers: List[logging.Handler] = [logging.StreamHandler(sys.stderr)]
    log_file = config["logging"].get("file")
    if log_file:
        log_path = Path(log_file)
        if not log_path.is_absolute():
            log_path = PROJECT_ROOT / log_path
        log_path.parent.mkdir(parents=True, exist_ok=True)
        handlers.append(logging.FileHandler(log_path))
    logging.basicConfig(
        level=getattr(logging, level_name, logging.WARNING),
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        handlers=handlers,
        force=True,
    )


class TmnArgumentParser(argparse.ArgumentParser):
    """Usage errors print as error:usage: and exit 2 like every other input error."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"error:usage: {message}\n")


def common_options(suppress: bool) -> argparse.ArgumentParser:
    """--json, --verbose and --config, accepted before or after the subcommand."""
    extra = {"default": argparse.SUPPRESS} if suppress else {}
    common = TmnArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="Structured JSON output on stdout", **extra)
    common.add_argument("--verbose", "-v", action="store_true", help="Log progress at INFO level", **extra)
    common.add_argument("--config", type=Path, help="Alternative config.yaml", **extra)
    return common


def build_parser() -> argparse.ArgumentParser:
    parser = TmnArgumentParser(
        prog="tmn",
        description="Decide T(m,n) membership and compute non-commuting-graph invariants",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  # Is S3 a T(2,3)-group?
  python src/scripts/tmn.py decide S:3 -m 2 -n 3

  # Twelve-part obstruction of Q8 x S3 as JSON
  python src/scripts/tmn.py decide "Q:8*S:3" -m 12 -n 2 --json

  # Full spectrum of S4, saved under reports/
  python src/scripts/tmn.py spectrum S:4 --save

  # Re-check every named claim
  python src/scripts/tmn.py verify-paper
        """,
        parents=[common_options(suppress=False)],
    )
    shared = [common_options(suppress=True)]

    sub = parser.add_subparsers(dest="command", required=True)

    info = sub.add_parser("info", help="Order, center, structure and twin classes", parents=shared)
    info.add_argument("spec", metavar="GROUP", help="Group spec")

    clique = sub.add_parser("clique", help="Clique number of the non-commuting graph", parents=shared)
    clique.add_argument("spec", metavar="GROUP", help="Group spec")
    clique.add_argument("--elementwise", action="store_true", help="Also run the element-level oracle")

    for name, text in (("decide", "Decide T(m,n) by obstruction search"), ("oracle", "Brute-force T(m,n)")):
        cmd = sub.add_parser(name, help=text, parents=shared)
        cmd.add_argument("spec", metavar="GROUP", help="Group spec")
        cmd.add_argument("-m", type=int, required=True, help="Number of subsets (>= 2)")
        cmd.add_argument("-n", type=int, required=True, help="Subset size (>= 1)")
        if name == "decide":
            cmd.add_argument("--budget", type=int, help="Node limit for the search")
            cmd.add_argument("--time", type=float, help="Time limit in seconds")

    spec_cmd = sub.add_parser("spectrum", help="N(m) for m = 2 .. w+1", parents=shared)
    spec_cmd.add_argument("spec", metavar="GROUP", help="Group spec")
    spec_cmd.add_argument("--max-m", type=int, help="Last m to compute")
    spec_cmd.add_argument("--budget", type=int, help="Node limit per search")
    spec_cmd.add_argument("--time", type=float, help="Time limit per search in seconds")
    spec_cmd.add_argument("--save", action="store_true", help="Save the report under reports.dir")

    verify = sub.add_parser("verify-paper", help="Evaluate the named claims over the corpus", parents=shared)
    verify.add_argument("--only", help="Run a single claim id or check id")
    verify.add_argument("--budget", type=int, help="Node limit per search")
    verify.add_argument("--time", type=float, help="Time limit per search in seconds")
    verify.add_argument("--include-s5", action="store_true", help="Add S5 to the corpus")
    verify.add_argument("--save", action="store_true", help="Save the report under reports.dir")

    ingest = sub.add_parser("ingest", help="Validate a Cayley or permutation file", parents=shared)
    ingest.add_argument("--check", type=Path, required=True, metavar="PATH", help="File to validate")
    ingest.add_argument("--kind", choices=["cayley", "perm"], help="Skip format detection")

    export = sub.add_parser("export", help="Write a group as a Cayley file", parents=shared)
    export.add_argument("spec", metavar="GROUP", help="Group spec")
    export.add_argument("-o", "--output", type=Path, help="Output path (stdout if omitted)")

    return parser


def make_budget(config: dict, args: argparse.Namespace) -> SearchBudget:
    budget = SearchBudget.from_config(config)
    node_limit = getattr(args, "budget", None) or budget.node_limit
    time_limit = getattr(args, "time", None) or budget.time_limit_seconds
    return SearchBudget(node_limit=node_limit, time_limit_seconds=time_limit)


def load_group(spec: str, config: dict) -> FiniteGroup:
    groups = config["groups"]
    return load_corpus_group(
        spec,
        order_cap=int(groups["order_cap"]),
        associativity=groups["associativity_check"],
        spot_check_factor=int(groups["spot_check_factor"]),
    )


def decision_payload(group: FiniteGroup, decision: Decision) -> Dict[str, Any]:
    """Decision as JSON; certificates are re-verified before they are emitted."""
    certificate = None
    if decision.certificate is not None:
        check = verify_certificate(group, decision.certificate, decision.m, decision.n)
        if not check.valid:
            raise InvariantViolation(f"Refusing to emit invalid certificate: {check.violation}")
        certificate = decision.certificate.to_json(group)
    return {
        "status": decision.status.value,
        "m": decision.m,
        "n": decision.n,
        "certificate": certificate,
        "nodes": decision.nodes,
    }


def cmd_info(args, config, budget):
    inv = GroupInvariants(load_group(args.spec, config), budget)
    payload = {
        "order": inv.group.order,
        "center_order": len(inv.center),
        "primes": inv.primes,
        "abelian": inv.is_abelian,
        "nilpotent": inv.nilpotent,
        "solvable": inv.solvable,
        "derived_length": inv.derived.derived_length,
        "capacities": inv.partition.capacities,
        "complete_multipartite": inv.partition.complete_multipartite,
        "w": inv.w,
    }
    lines = [
        f"Group:            {inv.origin}",
        f"Order:            {payload['order']}",
        f"|Z(G)|:           {payload['center_order']}",
        f"Primes:           {', '.join(str(p) for p in inv.primes) or '-'}",
        f"Nilpotent:        {inv.nilpotent}",
        f"Solvable:         {inv.solvable}",
        f"Derived length:   {payload['derived_length']}",
        f"Twin classes:     {len(inv.partition.classes)} (capacities {inv.partition.capacities})",
        f"Complete multip.: {inv.partition.complete_multipartite}",
        f"w(G):             {inv.w}",
    ]
    return payload, lines, EXIT_OK


def cmd_clique(args, config, budget):
    inv = GroupInvariants(load_group(args.spec, config), budget)
    result = inv.clique
    payload: Dict[str, Any] = {
        "w": result.w,
        "witness": [{"index": x, "label": inv.group.labels[x]} for x in result.witness],
        "exhausted": result.exhausted,
    }
    lines = [f"w({inv.origin}) = {result.w}", "witness: " + ", ".join(inv.group.labels[x] for x in result.witness)]
    if args.elementwise:
        oracle = element_clique_number(inv.group, max_order=int(config["oracle"]["clique_max_order"]))
        payload["elementwise_w"] = oracle.w
        lines.append(f"element-level oracle: w = {oracle.w}")
        if oracle.w != result.w:
            raise InvariantViolation(f"Clique oracles disagree: {result.w} vs {oracle.w}")
    return payload, lines, EXIT_OK


def cmd_decide(args, config, budget):
    inv = GroupInvariants(load_group(args.spec, config), budget)
    decision = inv.decide(args.m, args.n)
    payload = decision_payload(inv.group, decision)
    lines = [decision.status.value]
    if decision.certificate is not None:
        lines.append(f"obstruction: {decision.certificate.describe(inv.group)}")
    lines.append(f"nodes: {decision.nodes}")
    code = EXIT_BUDGET if decision.status is DecisionStatus.UNKNOWN else EXIT_OK
    return payload, lines, code


def cmd_oracle(args, config, budget):
    group = load_group(args.spec, config)
    oracle = config["oracle"]
    decision = brute_force_is_tmn(
        group, args.m, args.n, max_order=int(oracle["max_order"]), max_mn=int(oracle["max_mn"])
    )
    payload = decision_payload(group, decision)
    lines = [decision.status.value]
    if decision.certificate is not None:
        lines.append(f"obstruction: {decision.certificate.describe(group)}")
    return payload, lines, EXIT_OK


def cmd_spectrum(args, config, budget):
    inv = GroupInvariants(load_group(args.spec, config), budget)
    rows = spectrum(inv.group, inv.partition, inv.w, m_max=args.max_m, budget=budget)
    payload = {"w": inv.w, "spectrum": [row.to_dict(inv.group) for row in rows]}
    lines = [f"w({inv.origin}) = {inv.w}", f"{'m':>4}  {'N(m)':>5}  proof"]
    for row in rows:
        marker = ">=" if row.unknown else "  "
        lines.append(f"{row.m:>4}  {marker}{row.N:>3}  {row.upper_proof}")
    if args.save:
        path = ReportStore(reports_dir(config)).save_report(report_name("spectrum", inv.origin), payload)
        lines.append(f"saved to {path}")
    code = EXIT_BUDGET if any(row.unknown for row in rows) else EXIT_OK
    return payload, lines, code


def cmd_verify_paper(args, config, budget):
    include_s5 = args.include_s5 or bool(config["corpus"]["include_s5"])
    report = verify_paper_corpus(
        budget, order_cap=int(config["groups"]["order_cap"]), include_s5=include_s5, only=args.only
    )
    payload = {
        "claims": [o.to_dict() for o in report.claims],
        "checks": [o.to_dict() for o in report.checks],
        "summary": {status.value: report.count(status) for status in CheckStatus},
        "spectra": report.spectra,
    }
    lines = [f"{o.check_id:<24} {o.status.value:<18} {o.details}" for o in report.claims]
    lines += [f"{o.check_id:<6} {o.group:<22} {o.status.value:<18} {o.details}" for o in report.checks]
    lines.append("  ".join(f"{k}: {v}" for k, v in payload["summary"].items()))
    if args.save:
        path = ReportStore(reports_dir(config)).save_report("verify-paper", payload)
        lines.append(f"saved to {path}")

    if report.count(CheckStatus.FAIL):
        code = EXIT_CLAIM_FAILED
    elif report.count(CheckStatus.UNKNOWN):
        code = EXIT_BUDGET
    else:
        code = EXIT_OK
    return payload, lines, code


def cmd_ingest(args, config, budget):
    group = read_group_file(
        args.check,
        kind=args.kind,
        order_cap=int(config["groups"]["order_cap"]),
        associativity="full",
    )
    payload = {"valid": True, "order": group.order, "abelian": group.is_abelian}
    return payload, [f"ok: {args.check} is a group of order {group.order}"], EXIT_OK


def cmd_export(args, config, budget):
    group = load_group(args.spec, config)
    text = export_cayley(group)
    if args.output:
        args.output.write_text(text)
        return {"order": group.order, "path": str(args.output)}, [f"wrote {args.output}"], EXIT_OK
    return {"order": group.order, "cayley": text}, [text.rstrip("\n")], EXIT_OK


def reports_dir(config: dict) -> Path:
    path = Path(config["reports"]["dir"])
    return path if path.is_absolute() else PROJECT_ROOT / path


COMMANDS = {
    "info": cmd_info,
    "clique": cmd_clique,
    "decide": cmd_decide,
    "oracle": cmd_oracle,
    "spectrum": cmd_spectrum,
    "verify-paper": cmd_verify_paper,
    "ingest": cmd_ingest,
    "export": cmd_export,
}


def group_descriptor(args: argparse.Namespace) -> Optional[str]:
    if getattr(args, "spec", None):
        return args.spec
    if getattr(args, "check", None):
        return str(args.check)
    return None


def main(argv: Optional[List[str]] = None) -> int:
    """Main execution function"""
    parser = build_parser()
    args = parser.parse_args(argv)

    try:
        config = load_config(args.config)
        setup_logging(config, args.verbose)
        budget = make_budget(config, args)
    except (ValueError, OSError) as e:
        print(f"error:{getattr(e, 'category', 'config')}: {e}", file=sys.stderr)
        return EXIT_INPUT

    logger.info(f"Running {args.command} on {group_descriptor(args) or 'corpus'}")
    started = time.perf_counter()
    try:
        payload, lines, code = COMMANDS[args.command](args, config, budget)
    except BudgetExceeded as e:
        print(f"error:{e.category}: {e}", file=sys.stderr)
        return EXIT_BUDGET
    except TmnError as e:
        print(f"error:{e.category}: {e}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as e:
        print(f"error:file: {e}", file=sys.stderr)
        return EXIT_INPUT
    except InvariantViolation as e:
        logger.error(f"Invariant violation: {e}")
        print(f"error:{e.category}: {e}", file=sys.stderr)
        return EXIT_INVARIANT

    if args.json:
        report = {
            "command": args.command,
            "group": group_descriptor(args),
            "version": __version__,
            "budget": {"node_limit": budget.node_limit, "time_limit_seconds": budget.time_limit_seconds},
            "wall_time": round(time.perf_counter() - started, 3),
            **payload,
        }
        print(json.dumps(report, indent=2, sort_keys=True))
    else:
        print("\n".join(lines))
    return code


if __name__ == "__main__":
    sys.exit(main())
