"""Command line entry point.

    barbellcalc run --scenario PATH [--window N] [--out PATH] [--timing]
    barbellcalc batch PATH... [--out-dir DIR]
    barbellcalc selftest [--window N] [--out PATH]

Exit codes for run: 0 Certified, 1 NotCertified, 2 Inconclusive, 3 input or
precondition error. batch returns the largest code over its files.
"""

from __future__ import annotations

import argparse
import dataclasses
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from .certify import PreconditionError, Verdict, run_scenario
from .lattice import Window
from .scenario_io import Report, ScenarioParseError, dumps, load_scenario
from .selftest import run_selftest, thread_count

EXIT = {Verdict.CERTIFIED: 0, Verdict.NOT_CERTIFIED: 1, Verdict.INCONCLUSIVE: 2}
EXIT_INPUT = 3


def _write(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


def evaluate(path, window: int | None = None, timing: bool = False) -> tuple[int, str]:
    """Run one scenario file; return (exit code, report or diagnostic text)."""
    try:
        s = load_scenario(path)
        if window is not None:
            s = dataclasses.replace(s, window=Window(s.window.rank, window))
        start = time.perf_counter()
        cert = run_scenario(s)
        elapsed = time.perf_counter() - start
    except OSError as err:
        return EXIT_INPUT, f"error: cannot read {path}: {err}\n"
    except ScenarioParseError as err:
        return EXIT_INPUT, f"error: {path}: {err}\n"
    except PreconditionError as err:
        return EXIT_INPUT, f"error: {path}: precondition failed: {err}\n"
    except ValueError as err:
        return EXIT_INPUT, f"error: {path}: {err}\n"
    report = Report.from_certificate(s, cert, f"{elapsed:.3f}s" if timing else None)
    return EXIT[cert.verdict], report.to_json()


def cmd_run(args) -> int:
    code, text = evaluate(args.scenario, args.window, args.timing)
    if code == EXIT_INPUT:
        sys.stderr.write(text)
        return code
    _write(text, args.out)
    if args.out is not None:
        sys.stderr.write(f"{args.scenario}: exit {code}\n")
    return code


def cmd_batch(args) -> int:
    paths = list(args.scenarios)
    with ThreadPoolExecutor(max_workers=thread_count()) as pool:
        results = list(pool.map(lambda p: evaluate(p, args.window, False), paths))
    worst = 0
    for path, (code, text) in zip(paths, results):
        worst = max(worst, code)
        if code == EXIT_INPUT:
            sys.stderr.write(text)
            continue
        if args.out_dir:
            Path(args.out_dir).mkdir(parents=True, exist_ok=True)
            _write(text, str(Path(args.out_dir) / (Path(path).stem + ".report.json")))
        sys.stdout.write(f"{path}: exit {code}\n")
    return worst


def cmd_selftest(args) -> int:
    report = run_selftest(args.window, corrupt=args.inject_corruption)
    _write(dumps(report), args.out)
    for c in report["checks"]:
        sys.stderr.write(f"{'PASS' if c['passed'] else 'FAIL'} {c['name']}\n")
    return 0 if report["passed"] else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="barbellcalc", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    r = sub.add_parser("run", help="evaluate one scenario file")
    r.add_argument("--scenario", required=True)
    r.add_argument("--window", type=int, help="override the window bound")
    r.add_argument("--out", help="report path (default stdout)")
    r.add_argument("--timing", action="store_true", help="record wall time in the report")
    r.set_defaults(func=cmd_run)

    b = sub.add_parser("batch", help="evaluate several scenario files in parallel")
    b.add_argument("scenarios", nargs="+")
    b.add_argument("--window", type=int)
    b.add_argument("--out-dir")
    b.set_defaults(func=cmd_batch)

    t = sub.add_parser("selftest", help="run the embedded verification suite")
    t.add_argument("--window", type=int, default=2)
    t.add_argument("--out", help="report path (default stdout)")
    t.add_argument("--inject-corruption", action="store_true", help=argparse.SUPPRESS)
    t.set_defaults(func=cmd_selftest)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "window", None) is not None and args.window < 1:
        sys.stderr.write("error: --window must be >= 1\n")
        return EXIT_INPUT
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
