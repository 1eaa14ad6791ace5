"""Command line entry point ``disperse``.

Exit codes: 0 all gates pass, 1 a gate failed, 2 malformed scenario or
usage error, 3 numerical failure.  With several scenarios the worst code
wins (3 > 2 > 1 > 0).
"""
from __future__ import annotations

import argparse
import difflib
import sys
from concurrent.futures import ProcessPoolExecutor

from . import runner

_SEVERITY = {runner.EXIT_OK: 0, runner.EXIT_GATE: 1, runner.EXIT_MALFORMED: 2, runner.EXIT_NUMERIC: 3}


def _run_one(args):
    path, outdir = args
    return runner.run_scenario(runner.resolve_scenario_path(path), outdir)


def cmd_run(ns) -> int:
    jobs = [(s, ns.output) for s in ns.scenarios]
    if ns.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=ns.jobs) as pool:
            results = list(pool.map(_run_one, jobs))
    else:
        results = [_run_one(j) for j in jobs]
    worst = runner.EXIT_OK
    for code, msg in results:
        print(msg, file=sys.stderr if code == runner.EXIT_MALFORMED else sys.stdout)
        if _SEVERITY[code] > _SEVERITY[worst]:
            worst = code
    return worst


def cmd_list(ns) -> int:
    print("experiments:")
    for name, (_, _, summary) in runner.EXPERIMENTS.items():
        print(f"  {name:20s} {summary}")
    print("bundled scenarios:")
    for sid, obj in runner.bundled_scenarios().items():
        print(f"  {sid:28s} {obj['experiment']}")
    return 0


def cmd_describe(ns) -> int:
    if ns.experiment not in runner.EXPERIMENTS:
        close = difflib.get_close_matches(ns.experiment, list(runner.EXPERIMENTS), n=3, cutoff=0.4)
        hint = f"; did you mean {', '.join(close)}?" if close else ""
        print(f"unknown experiment {ns.experiment!r}{hint}", file=sys.stderr)
        return runner.EXIT_MALFORMED
    print(runner.describe(ns.experiment))
    return 0


def cmd_selftest(ns) -> int:
    sc = runner.parse_scenario({"id": "specialfn_selftest", "experiment": "specialfn-selftest"})
    res = runner.execute(sc)
    runner.write_outputs(res, ns.output)
    for g in res.gates:
        print(f"{'PASS' if g['pass'] else 'FAIL'}  {g['name']}: {g['value']:.3g} (<= {g['threshold']:.3g})")
    return runner.EXIT_OK if res.passed else runner.EXIT_GATE


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="disperse", description="Causal dispersive response experiments.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="run scenario files (paths or bundled ids)")
    p.add_argument("scenarios", nargs="+")
    p.add_argument("-o", "--output", default="out", help="output directory (default: out)")
    p.add_argument("--jobs", type=int, default=1, help="parallel worker processes")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("list", help="list experiments and bundled scenarios")
    p.set_defaults(func=cmd_list)

    p = sub.add_parser("describe", help="show the fields an experiment accepts")
    p.add_argument("experiment")
    p.set_defaults(func=cmd_describe)

    p = sub.add_parser("selftest-specialfn", help="error tables for the special functions")
    p.add_argument("-o", "--output", default="out")
    p.set_defaults(func=cmd_selftest)
    return ap


def main(argv=None) -> int:
    ns = build_parser().parse_args(argv)
    if getattr(ns, "jobs", 1) < 1:
        print("--jobs: must be >= 1", file=sys.stderr)
        return runner.EXIT_MALFORMED
    return ns.func(ns)


if __name__ == "__main__":
    sys.exit(main())
