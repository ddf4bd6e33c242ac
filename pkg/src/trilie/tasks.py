"""Task execution and reports for problem files.

Each task is evaluated per parameter point.  A point yields one of four
outcomes: ``ok``, ``fail``, ``confirmed`` (a failure the FI oracle agrees
with, or a precondition the oracle shows is unmet) and ``disagree`` (the
verifier and the oracle differ).  Points are then folded into a task status.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Callable, Iterable, Sequence

from .algebra import CheckReport, LinearMap, fundamental_leibniz, is_leibniz, is_three_lie, wedge_labels
from .dgla import (
    ad_power,
    cochain_to_datum,
    datum_to_cochain,
    dgla_differential,
    gauge_transform,
    map_to_cochain,
    mc_defect,
)
from .errors import ConstraintError, InputError
from .extension import ExtensionDatum, extension_bracket, extension_defects, is_extension_isomorphism, theta_morphism_check
from .leibniz_ext import build_l_r_varpi, fundamental_oracle_check, leibniz_extension_defects, w_bracket
from .problem import TASKS, Problem, ProblemSpec, read_problem
from .representation import rep_defects
from .sampling import random_linear_map

DEFAULT_SEED = 0x3117
DEFAULT_SAMPLES = 20
SAMPLE_RANGE = (-5, 5)
MAX_DRAWS_PER_SAMPLE = 200

OK, FAIL, CONFIRMED, DISAGREE = "ok", "fail", "confirmed", "disagree"


@dataclass
class PointResult:
    outcome: str
    summary: str
    lines: list[str] = field(default_factory=list)


@dataclass
class TaskResult:
    task: str
    status: str
    detail: str
    lines: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.status == "ok" or self.status.startswith("family-pass")


@dataclass
class FileReport:
    source: str
    seed: int
    assignments: list[dict[str, Fraction]]
    family: bool
    results: list[TaskResult]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)


def corpus_dir() -> Path:
    return Path(str(resources.files("trilie") / "corpus"))


def corpus_files() -> list[Path]:
    return sorted(corpus_dir().glob("*.tlx"))


def format_assignment(assignment: dict[str, Fraction]) -> str:
    return ", ".join(f"{k}={v}" for k, v in assignment.items()) or "(no parameters)"


def sample_assignments(spec: ProblemSpec, n: int, seed: int) -> list[dict[str, Fraction]]:
    """``n`` integer points from ``SAMPLE_RANGE`` at which every guard is nonzero."""
    rng = random.Random(seed)
    lo, hi = SAMPLE_RANGE
    out: list[dict[str, Fraction]] = []
    draws = 0
    while len(out) < n:
        draws += 1
        if draws > MAX_DRAWS_PER_SAMPLE * max(n, 1):
            raise InputError(f"{spec.source}: guards reject almost every point in {lo}..{hi}")
        point = {p: Fraction(rng.randint(lo, hi)) for p in spec.params}
        try:
            spec.check_guards(point)
        except ConstraintError:
            continue
        out.append(point)
    return out


# ---------------------------------------------------------------------------
# per-point checks
# ---------------------------------------------------------------------------


def _report_lines(label: str, report: CheckReport) -> list[str]:
    return [f"{label} {v.name}: {v.describe()}" for v in report]


def _first_failure(label: str, report: CheckReport) -> str:
    bad = report.failures[0]
    return f"{label} {bad.name} {bad.describe()}"


def _fold(parts: Sequence[PointResult]) -> PointResult:
    if not parts:
        return PointResult(OK, "nothing to check")
    lines = [line for p in parts for line in p.lines]
    for outcome in (DISAGREE, FAIL, CONFIRMED):
        hit = [p for p in parts if p.outcome == outcome]
        if hit:
            return PointResult(outcome, hit[0].summary, lines)
    return PointResult(OK, "; ".join(p.summary for p in parts), lines)


def _is_extension(D: ExtensionDatum) -> tuple[bool, bool]:
    """Verifier and oracle verdicts on ``D``."""
    return extension_defects(D).ok, is_three_lie(extension_bracket(D)).ok


def _check_3lie(problem: Problem, rng: random.Random) -> PointResult:
    parts = []
    for name, A in problem.ternary.items():
        v = is_three_lie(A)
        parts.append(PointResult(OK if v else FAIL, f"{name} ok" if v else f"{name} {v.describe()}", [f"{name}: {v.describe()}"]))
    return _fold(parts)


def _check_leibniz(problem: Problem, rng: random.Random) -> PointResult:
    parts = []
    targets = [(name, L) for name, L in problem.binary.items()]
    targets += [(f"wedge2({name})", fundamental_leibniz(A)) for name, A in problem.ternary.items() if is_three_lie(A)]
    for name, L in targets:
        v = is_leibniz(L)
        parts.append(PointResult(OK if v else FAIL, f"{name} ok" if v else f"{name} {v.describe()}", [f"{name}: {v.describe()}"]))
    return _fold(parts)


def _check_rep(problem: Problem, rng: random.Random) -> PointResult:
    parts = []
    for name, R in problem.representations.items():
        report = rep_defects(R)
        summary = f"{name} ok" if report.ok else _first_failure(name, report)
        parts.append(PointResult(OK if report.ok else FAIL, summary, _report_lines(name, report)))
    return _fold(parts)


def _check_extension(problem: Problem, rng: random.Random) -> PointResult:
    parts = []
    for name, D in problem.extensions.items():
        report = extension_defects(D)
        oracle = is_three_lie(extension_bracket(D)).ok
        lines = _report_lines(name, report)
        if report.ok != oracle:
            parts.append(PointResult(DISAGREE, f"{name} verifier {report.ok} but FI oracle {oracle}", lines))
        elif report.ok:
            parts.append(PointResult(OK, f"{name} ok", lines))
        else:
            parts.append(PointResult(CONFIRMED, _first_failure(name, report), lines))
    return _fold(parts)


def _check_mc(problem: Problem, rng: random.Random) -> PointResult:
    parts = []
    for name, D in problem.extensions.items():
        defect = mc_defect(datum_to_cochain(D))
        mc = defect.is_zero()
        oracle = is_three_lie(extension_bracket(D)).ok
        if mc:
            summary = f"{name} Maurer-Cartan"
        else:
            slots, k = defect.nonzero_arguments()[0]
            wedges = wedge_labels(defect.space)
            shown = ", ".join(wedges[s] for s in slots)
            summary = f"{name} defect nonzero at ({shown}) in the {defect.space.basis[k]} component"
        outcome = DISAGREE if mc != oracle else OK if mc else CONFIRMED
        if mc != oracle:
            summary = f"{name} Maurer-Cartan {mc} but FI oracle {oracle}"
        parts.append(PointResult(outcome, summary, [f"{name}: {summary}"]))
    return _fold(parts)


def _gauge_check(label: str, xi: LinearMap, D: ExtensionDatum) -> PointResult:
    c = datum_to_cochain(D)
    x = map_to_cochain(xi, D.g, D.h)
    moved = gauge_transform(x, c, D.g.dim)
    D2 = cochain_to_datum(moved, D.g, D.h)
    checks = [
        ("Maurer-Cartan", mc_defect(moved).is_zero()),
        ("isomorphism", is_extension_isomorphism(xi, D, D2).ok),
        ("theta morphism", theta_morphism_check(xi, D, D2).ok),
        ("nilpotent on c", ad_power(x, c, 3).is_zero()),
        ("nilpotent on d(xi)", ad_power(x, dgla_differential(x), 3).is_zero()),
    ]
    lines = [f"{label} {what}: {'ok' if good else 'fail'}" for what, good in checks]
    bad = [what for what, good in checks if not good]
    if bad:
        return PointResult(FAIL, f"{label} {bad[0]} fails", lines)
    return PointResult(OK, f"{label} ok", lines)


def _uncertified(name: str, D: ExtensionDatum) -> PointResult | None:
    verifier, oracle = _is_extension(D)
    if verifier and oracle:
        return None
    if verifier != oracle:
        return PointResult(DISAGREE, f"{name} verifier {verifier} but FI oracle {oracle}")
    return PointResult(CONFIRMED, f"{name} is not an extension datum")


def _check_gauge(problem: Problem, rng: random.Random) -> PointResult:
    parts = []
    explicit = {ext for ext, _ in problem.gauges.values()}
    jobs = [(f"{gname} on {ext}", xi, ext) for gname, (ext, xi) in problem.gauges.items()]
    for name, D in problem.extensions.items():
        if name not in explicit:
            xi = random_linear_map(rng, D.g.space, D.h.space)
            jobs.append((f"random xi on {name}", xi, name))
    for label, xi, ext in jobs:
        D = problem.extensions[ext]
        blocked = _uncertified(ext, D)
        parts.append(blocked if blocked else _gauge_check(label, xi, D))
    return _fold(parts)


def _check_fundamental(problem: Problem, rng: random.Random) -> PointResult:
    parts = []
    for name, D in problem.extensions.items():
        blocked = _uncertified(name, D)
        if blocked:
            parts.append(blocked)
            continue
        oracle = fundamental_oracle_check(D)
        leib = is_leibniz(w_bracket(D))
        conds = leibniz_extension_defects(build_l_r_varpi(D))
        lines = [f"{name} oracle: {oracle.describe()}", f"{name} W Leibniz: {leib.describe()}"]
        lines += _report_lines(name, conds)
        if oracle and leib and conds.ok:
            parts.append(PointResult(OK, f"{name} ok", lines))
        elif not conds.ok:
            parts.append(PointResult(FAIL, _first_failure(name, conds), lines))
        else:
            bad = oracle if not oracle else leib
            parts.append(PointResult(FAIL, f"{name} {bad.describe()}", lines))
    return _fold(parts)


def _roundtrip(problem: Problem, rng: random.Random) -> PointResult:
    parts = []
    for name, D in problem.extensions.items():
        c = datum_to_cochain(D)
        back = cochain_to_datum(c, D.g, D.h)
        mc = mc_defect(c).is_zero()
        ext = extension_defects(D).ok
        if back != D:
            parts.append(PointResult(FAIL, f"{name} datum does not survive the round trip"))
        elif mc != ext:
            parts.append(PointResult(DISAGREE, f"{name} Maurer-Cartan {mc} but extension check {ext}"))
        else:
            parts.append(PointResult(OK, f"{name} ok (both verdicts {'pass' if ext else 'fail'})"))
    return _fold(parts)


RUNNERS: dict[str, Callable[[Problem, random.Random], PointResult]] = {
    "check-3lie": _check_3lie,
    "check-leibniz": _check_leibniz,
    "check-rep": _check_rep,
    "check-extension": _check_extension,
    "check-mc": _check_mc,
    "check-gauge": _check_gauge,
    "check-fundamental-ext": _check_fundamental,
    "roundtrip-mc-extension": _roundtrip,
}
assert set(RUNNERS) == set(TASKS)


# ---------------------------------------------------------------------------
# files and reports
# ---------------------------------------------------------------------------


def _status(task: str, points: list[PointResult], family: bool, corpus: bool,
            assignments: list[dict[str, Fraction]]) -> TaskResult:
    n = len(points)
    outcomes = [p.outcome for p in points]

    def where(i: int) -> str:
        return f" at {format_assignment(assignments[i])}" if family else ""

    lines = []
    for i, p in enumerate(points):
        if family:
            lines.append(f"point {i + 1}: {p.outcome}: {p.summary}")
        else:
            lines.extend(p.lines or [p.summary])
    if DISAGREE in outcomes:
        i = outcomes.index(DISAGREE)
        return TaskResult(task, "oracle-disagreement", points[i].summary + where(i), lines)
    bad = [i for i, o in enumerate(outcomes) if o != OK]
    if not bad:
        if family:
            return TaskResult(task, f"family-pass({n})", f"verified at {n} rational points", lines)
        return TaskResult(task, "ok", points[0].summary, lines)
    i = bad[0]
    failed = f"{len(bad)}/{n} points fail; first: " if family else ""
    if corpus and all(outcomes[j] == CONFIRMED for j in bad):
        return TaskResult(task, "corpus-discrepancy", failed + points[i].summary + where(i), lines)
    return TaskResult(task, "fail", failed + points[i].summary + where(i), lines)


def _task_seed(seed: int, source: str, task: str, point: int) -> str:
    return f"{seed}:{source}:{task}:{point}"


def run_spec(
    spec: ProblemSpec,
    tasks: Sequence[str] | None = None,
    assignment: dict[str, Fraction] | None = None,
    samples: int = DEFAULT_SAMPLES,
    seed: int = DEFAULT_SEED,
) -> FileReport:
    """Run ``tasks`` (default: the file's own list) at one point or over sampled points."""
    tasks = tuple(tasks) if tasks else spec.tasks
    unknown = [t for t in tasks if t not in RUNNERS]
    if unknown:
        raise InputError(f"unknown task(s): {', '.join(unknown)}")
    family = spec.is_family and assignment is None
    assignments = sample_assignments(spec, samples, seed) if family else [dict(assignment or {})]
    problems = [spec.resolve(a) for a in assignments]
    results = []
    for task in tasks:
        points = [
            RUNNERS[task](p, random.Random(_task_seed(seed, spec.source, task, i)))
            for i, p in enumerate(problems)
        ]
        results.append(_status(task, points, family, spec.corpus, assignments))
    return FileReport(spec.source, seed, assignments if family or spec.is_family else [], family, results)


def run_file(path: str | Path, **kwargs) -> FileReport:
    return run_spec(read_problem(path), **kwargs)


def machine_report(reports: Iterable[FileReport]) -> str:
    out = []
    for r in reports:
        out.append(f"# file: {Path(r.source).name}")
        out.append(f"# seed: {r.seed:#x}")
        if r.family:
            out.append(f"# samples: {len(r.assignments)}")
        for i, a in enumerate(r.assignments):
            out.append(f"# point {i + 1}: {format_assignment(a)}")
        for t in r.results:
            out.append(f"{t.task}\t{t.status}\t{t.detail}")
    return "\n".join(out) + "\n"


def text_report(reports: Iterable[FileReport]) -> str:
    out = []
    for r in reports:
        out.append(f"== {Path(r.source).name} (seed {r.seed:#x})")
        if r.family:
            out.append(f"sampled {len(r.assignments)} points:")
        for i, a in enumerate(r.assignments):
            out.append(f"  point {i + 1}: {format_assignment(a)}")
        for t in r.results:
            out.append(f"{t.task}: {t.status}")
            out.append(f"  {t.detail}")
            out.extend(f"    {line}" for line in t.lines)
        out.append("")
    return "\n".join(out)


__all__ = [
    "DEFAULT_SAMPLES",
    "DEFAULT_SEED",
    "FileReport",
    "TaskResult",
    "corpus_dir",
    "corpus_files",
    "machine_report",
    "run_file",
    "run_spec",
    "sample_assignments",
    "text_report",
]
