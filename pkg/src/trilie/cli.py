"""``tlx`` command line: verify problem files and the bundled corpus.

Exit codes: 0 when every task passes, 1 on a verification failure, 2 on an
input error (unreadable file, syntax, unknown name, guard violation).
"""

from __future__ import annotations

import argparse
import sys
from typing import Sequence

from .errors import InputError
from .problem import TASKS, parse_assignment, read_problem
from .tasks import DEFAULT_SAMPLES, DEFAULT_SEED, corpus_files, machine_report, run_spec, text_report

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


def _seed(text: str) -> int:
    try:
        return int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid seed {text!r}") from None


def _samples(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        n = 0
    if n < 1:
        raise argparse.ArgumentTypeError(f"--samples needs a positive integer, got {text!r}")
    return n


def _tasks(text: str) -> tuple[str, ...]:
    chosen = tuple(t.strip() for t in text.split(",") if t.strip())
    bad = [t for t in chosen if t not in TASKS]
    if bad:
        raise argparse.ArgumentTypeError(f"unknown task(s) {', '.join(bad)}; choose from {', '.join(TASKS)}")
    return chosen


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tlx", description="Exact verification of 3-Lie algebra extension data.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--samples", type=_samples, default=DEFAULT_SAMPLES, help="points per parametric family")
    common.add_argument("--seed", type=_seed, default=DEFAULT_SEED, help="sampling seed (default 0x3117)")
    common.add_argument("--task", type=_tasks, default=None, help="comma-separated tasks (default: the file's list)")
    common.add_argument("--report", choices=("text", "machine"), default="text")
    sub = parser.add_subparsers(dest="command", required=True)

    check = sub.add_parser("check", parents=[common], help="verify one problem file")
    check.add_argument("file")
    check.add_argument("--param", default=None, help="fix every parameter, e.g. r1=1,r2=-3/2")

    sub.add_parser("corpus", parents=[common], help="verify every bundled corpus file")
    sub.add_parser("tasks", help="list task names")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "tasks":
        print("\n".join(TASKS))
        return EXIT_OK
    try:
        if args.command == "check":
            spec = read_problem(args.file)
            assignment = parse_assignment(args.param) if args.param is not None else None
            specs = [(spec, assignment)]
        else:
            specs = [(read_problem(path), None) for path in corpus_files()]
        reports = [
            run_spec(spec, tasks=args.task, assignment=assignment, samples=args.samples, seed=args.seed)
            for spec, assignment in specs
        ]
    except InputError as exc:
        print(f"tlx: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    render = machine_report if args.report == "machine" else text_report
    sys.stdout.write(render(reports))
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
