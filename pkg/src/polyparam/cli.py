"""Command-line front end.

Exit status: 0 on success, 2 when a reference algorithm ran out of budget,
1 on input errors or oracle disagreements.
"""
from __future__ import annotations

import argparse
import json
import re
import sys

from .errors import PolyparamError
from .oracle import grid_check
from .parser import load_model, parse_property
from .properties import Reach, TracePreserve, Unavoid
from .synthesis import ALGORITHMS, INTEGER, REFERENCE, SynthesisRequest, export_dot, synthesize

DEFAULT_ALGORITHM = {Reach: "rief", Unavoid: "riaf", TracePreserve: "ritp"}
_ORACLE = re.compile(r"^(off|integer-grid|grid\+rational\((\d+)\))$")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="polyparam",
        description="Synthesize parameter valuations of a bounded parametric timed automaton.",
    )
    ap.add_argument("model", help="model file")
    ap.add_argument("--prop", required=True, help="'EF {l1}', 'AF {l1}' or 'TP at p=1, q=2'")
    ap.add_argument("--algorithm", choices=sorted(ALGORITHMS),
                    help="defaults to rief, riaf or ritp according to the property")
    ap.add_argument("--budget", type=int, help="state budget (ef, af, tp only)")
    ap.add_argument("--output", choices=("text", "json"), default="text")
    ap.add_argument("--dot", metavar="PATH", help="write the explored tree as Graphviz")
    ap.add_argument("--oracle-check", default="off", metavar="MODE",
                    help="off | integer-grid | grid+rational(N)")
    ap.add_argument("--timing", action="store_true",
                    help="include wall-clock time (makes output run-dependent)")
    return ap


def run(argv: list[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    args = build_parser().parse_args(argv)
    m = _ORACLE.match(args.oracle_check)
    if not m:
        print(f"error: bad --oracle-check value {args.oracle_check!r}", file=err)
        return 1
    samples = int(m.group(2)) if m.group(2) else 0
    try:
        pta = load_model(args.model)
        prop = parse_property(args.prop, pta)
        algorithm = args.algorithm or DEFAULT_ALGORITHM[type(prop)]
        kind, variant = ALGORITHMS[algorithm]
        if not isinstance(prop, kind):
            raise PolyparamError(f"algorithm {algorithm} does not match property '{prop}'")
        if args.budget is not None and variant != REFERENCE:
            raise PolyparamError("--budget applies to ef, af and tp only")
        req = SynthesisRequest(pta, prop, variant, budget=args.budget,
                               record_trace=args.dot is not None)
        result = synthesize(req)
        report = None
        if m.group(1) != "off":
            report = grid_check(pta, prop, result.valuations, rational_samples=samples)
    except (PolyparamError, OSError) as exc:
        print(f"error: {exc}", file=err)
        return 1

    if args.dot:
        try:
            with open(args.dot, "w", encoding="utf-8") as fh:
                fh.write(export_dot(result.trace))
        except OSError as exc:
            print(f"error: {exc}", file=err)
            return 1

    stats = result.stats.to_json()
    if not args.timing:
        stats.pop("seconds")
    if args.output == "json":
        body = result.to_json()
        body["stats"] = stats
        body["algorithm"] = algorithm
        body["property"] = str(prop)
        if report is not None:
            body["oracle"] = json.loads(report.to_json())
        print(json.dumps(body, sort_keys=True, indent=2), file=out)
    else:
        print(result.to_text(), file=out)
        print(f"status: {result.status}", file=out)
        print("stats: " + ", ".join(f"{k}={v}" for k, v in stats.items()), file=out)
        for w in result.warnings:
            print(f"warning: {w}", file=out)
        if report is not None:
            print(report.to_table(), file=out)

    if report is not None:
        # integer-only modes make no claim about rational valuations
        failures = report.integer_disagreements if variant == INTEGER else report.disagreements
        if failures and result.complete:
            return 1
    return 2 if not result.complete else 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
