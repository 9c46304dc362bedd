"""Command line interface: ``autsolv certify|oracle|fixtures``."""
from __future__ import annotations

import argparse
import json
import sys
import time
from importlib import resources
from typing import List, Optional

from .algebra import DEFAULT_DIM_CAP, AdmissiblePresentation, IdealPresentation, validate_admissible
from .certifier import CertReport, SearchConfig, certify
from .deroracle import Consistency, OracleResult, cross_check, run_oracle
from .errors import AutsolvError, ConflictError, TooLargeError
from .parser import parse_presentation

SCHEMA_VERSION = "1"
EXIT_OK, EXIT_INPUT, EXIT_CONFLICT = 0, 2, 3


# -- fixtures -------------------------------------------------------------------

def fixture_names() -> List[str]:
    root = resources.files("autsolv.fixtures")
    return sorted(p.name[:-4] for p in root.iterdir() if p.name.endswith(".txt"))


def fixture_text(name: str) -> str:
    return resources.files("autsolv.fixtures").joinpath(name + ".txt").read_text()


def load_fixture(name: str) -> IdealPresentation:
    if name not in fixture_names():
        raise KeyError(name)
    return parse_presentation(fixture_text(name))


def _read_input(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except FileNotFoundError:
        if path in fixture_names():
            return fixture_text(path)
        raise


# -- report document ------------------------------------------------------------

def _input_block(p: IdealPresentation) -> dict:
    return {
        "field": p.field.characteristic,
        "vars": list(p.names),
        "lowey_cap": p.power,
        "generators": [g.to_str(p.names) for g in p.generators],
    }


def _verdict_block(r: CertReport) -> dict:
    return {
        "verdict": r.verdict.value,
        "rank_bound": r.rank_bound,
        "nilpotency_annotation": r.nilpotency_annotation,
        "advisory": r.advisory,
        "notes": list(r.notes),
    }


def _rules_block(r: CertReport) -> list:
    return [{
        "tag": f.tag.value,
        "polarity": f.polarity.value,
        "witness": f.witness,
        "via": f.via.value if f.via else None,
        "justification": f.justification,
    } for f in r.fired_rules]


def _oracle_block(o: OracleResult, consistency=None) -> dict:
    out = {
        "status": "computed",
        "dim_A": o.dim_A,
        "der_dim": o.der_dim,
        "series": list(o.series.dims),
        "solvable": o.solvable,
    }
    if consistency is not None:
        out["cross_check"] = consistency.status.value
        out["message"] = consistency.message
    return out


def report_document(p: IdealPresentation, ap: AdmissiblePresentation, report: Optional[CertReport],
                    oracle: Optional[dict], seed: int, timing_ms: Optional[int] = None) -> dict:
    """Canonical key order: schema_version, input, invariants, verdict, rules, oracle, seed, timing_ms."""
    return {
        "schema_version": SCHEMA_VERSION,
        "input": _input_block(p),
        "invariants": dict(report.invariants) if report else {"n": ap.nvars, "lowey": ap.lowey},
        "verdict": _verdict_block(report) if report else None,
        "rules": _rules_block(report) if report else [],
        "oracle": oracle,
        "seed": seed,
        "timing_ms": timing_ms,
    }


def dump_json(doc: dict) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def render_text(doc: dict) -> str:
    inp = doc["input"]
    lines = [f"field {inp['field']}, vars {' '.join(inp['vars'])}, lowey cap {inp['lowey_cap']}"]
    for g in inp["generators"]:
        lines.append(f"  gen {g}")
    inv = doc["invariants"]
    lines.append("invariants: " + ", ".join(f"{k}={v}" for k, v in inv.items()))
    v = doc["verdict"]
    if v is not None:
        lines.append(f"verdict: {v['verdict']} (rank bound {v['rank_bound']})")
        for r in doc["rules"]:
            via = f" via {r['via']}" if r["via"] else ""
            lines.append(f"  {r['tag']}{via} [{r['polarity']}]: {r['witness']}")
        if v["nilpotency_annotation"]:
            lines.append(f"nilpotency: {v['nilpotency_annotation']}")
        if v["advisory"]:
            lines.append(f"advisory: {v['advisory']}")
        for note in v["notes"]:
            lines.append(f"note: {note}")
    o = doc["oracle"]
    if o is not None:
        if o["status"] == "computed":
            lines.append(f"oracle: dim Der(A) = {o['der_dim']}, series {o['series']}, "
                         f"solvable {str(o['solvable']).lower()}")
            if "cross_check" in o:
                lines.append(f"cross-check: {o['cross_check']} ({o['message']})")
        else:
            lines.append(f"oracle: skipped ({o['reason']})")
    return "\n".join(lines) + "\n"


# -- commands -------------------------------------------------------------------

def _config(args) -> SearchConfig:
    return SearchConfig(seed=args.seed, trials=args.trials, coefficient_bound=args.bound)


def _evaluate(p: IdealPresentation, args, want_certify: bool, oracle_mode: Optional[bool]) -> dict:
    """oracle_mode: True = required, False = off, None = run when within the cap."""
    start = time.perf_counter()
    ap = validate_admissible(p)
    report = certify(ap, _config(args)) if want_certify else None
    oracle = None
    if oracle_mode is not False:
        try:
            result = run_oracle(ap, args.dim_cap)
        except TooLargeError as e:
            if oracle_mode:
                raise
            oracle = {"status": "skipped", "reason": str(e)}
        else:
            consistency = cross_check(report, result, ap.field) if report else None
            oracle = _oracle_block(result, consistency)
    timing = round((time.perf_counter() - start) * 1000) if args.timing else None
    return report_document(p, ap, report, oracle, args.seed, timing)


def _emit(doc: dict, fmt: str):
    sys.stdout.write(dump_json(doc) if fmt == "json" else render_text(doc))


def _exit_for(doc: dict) -> int:
    o = doc.get("oracle") or {}
    return EXIT_CONFLICT if o.get("cross_check") == Consistency.FAIL.value else EXIT_OK


def cmd_certify(args) -> int:
    p = parse_presentation(_read_input(args.file))
    doc = _evaluate(p, args, True, args.oracle)
    _emit(doc, args.format)
    return _exit_for(doc)


def cmd_oracle(args) -> int:
    p = parse_presentation(_read_input(args.file))
    doc = _evaluate(p, args, args.certify, True)
    _emit(doc, args.format)
    return _exit_for(doc)


def cmd_fixtures(args) -> int:
    names = [n for n in fixture_names() if args.filter is None or args.filter in n]
    if not names:
        print(f"autsolv: no fixture matches {args.filter!r}", file=sys.stderr)
        return EXIT_INPUT
    docs = {}
    worst = EXIT_OK
    for name in names:
        doc = _evaluate(load_fixture(name), args, True, args.oracle)
        docs[name] = doc
        worst = max(worst, _exit_for(doc))
    if args.format == "json":
        sys.stdout.write(dump_json(docs))
        return worst
    print(f"{'fixture':<16} {'verdict':<24} {'rules':<40} {'oracle':<14} agreement")
    for name, doc in docs.items():
        o = doc["oracle"]
        if o is None:
            ostr, agree = "off", "-"
        elif o["status"] == "computed":
            ostr = "solvable" if o["solvable"] else "not solvable"
            agree = o["cross_check"]
        else:
            ostr, agree = "too large", "-"
        rules = ",".join(r["tag"] for r in doc["rules"]) or "-"
        print(f"{name:<16} {doc['verdict']['verdict']:<24} {rules:<40} {ostr:<14} {agree}")
    return worst


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="autsolv", description="Certify solvability of G_A for local algebras K[X]/I.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="seed for the non-singular form search")
    common.add_argument("--trials", type=int, default=64, help="random combinations tried (default 64)")
    common.add_argument("--bound", type=int, default=10, help="coefficient bound B for the search")
    common.add_argument("--dim-cap", type=int, default=DEFAULT_DIM_CAP,
                        help="oracle limit on n * dim A unknowns (default %(default)s)")
    # default resolved per command: json for certify/oracle, text for fixtures
    common.add_argument("--format", choices=("json", "text"), default=None)
    common.add_argument("--timing", action="store_true", help="record wall time (makes output non-deterministic)")
    sub = ap.add_subparsers(dest="command", required=True)

    c = sub.add_parser("certify", parents=[common], help="certify one presentation file")
    c.add_argument("file", help="presentation file, '-' for stdin, or a fixture name")
    c.add_argument("--oracle", action=argparse.BooleanOptionalAction, default=None,
                   help="force the oracle on/off (default: on when within --dim-cap)")
    c.set_defaults(func=cmd_certify)

    o = sub.add_parser("oracle", parents=[common], help="compute Der(A) and its derived series")
    o.add_argument("file")
    o.add_argument("--certify", action="store_true", help="also certify and cross-check")
    o.set_defaults(func=cmd_oracle)

    f = sub.add_parser("fixtures", parents=[common], help="run the built-in example corpus")
    f.add_argument("filter", nargs="?", help="substring of fixture names")
    f.add_argument("--oracle", action=argparse.BooleanOptionalAction, default=None)
    f.set_defaults(func=cmd_fixtures, default_format="text")
    return ap


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.format is None:
        args.format = getattr(args, "default_format", "json")
    try:
        if args.trials < 1 or args.bound < 1 or args.dim_cap < 1:
            raise ValueError("--trials, --bound and --dim-cap must be positive")
        return args.func(args)
    except ConflictError as e:
        print(f"autsolv: internal conflict: {e}", file=sys.stderr)
        return EXIT_CONFLICT
    except (AutsolvError, OSError, ValueError) as e:
        print(f"autsolv: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
