"""Reader for ``.tlx`` problem files.

A file is read in two steps: :func:`read_problem` parses the text and keeps
every entry as an unevaluated expression, and :meth:`ProblemSpec.resolve`
substitutes a parameter assignment, checks the guards and builds the kernel
objects.  The grammar is documented in ``docs/format.md``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Mapping

from .algebra import LeibnizAlgebra, LinearMap, Space, ThreeLieAlgebra
from .errors import ConstraintError, ExprEvalError, InputError
from .exact import QArray
from .expr import Expr, evaluate, evaluate_linear, names, parse_expr
from .extension import ExtensionDatum
from .representation import Representation, adjoint_representation

HEADER = "tlx 1"

TASKS = (
    "check-3lie",
    "check-leibniz",
    "check-rep",
    "check-extension",
    "check-mc",
    "check-gauge",
    "check-fundamental-ext",
    "roundtrip-mc-extension",
)

_SECTION = re.compile(r"^\[\s*([a-z]+)(?:\s+([A-Za-z_][A-Za-z0-9_]*))?\s*\]$")
_IDENT = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")
_INDEXED = re.compile(r"^([a-z]+)((?:\[[^\]]*\])+)$")


@dataclass
class Entry:
    key: str
    value: str
    line: int


@dataclass
class Section:
    kind: str
    name: str | None
    line: int
    entries: list[Entry] = field(default_factory=list)

    def get(self, key: str, default: str | None = None) -> str | None:
        found = [e.value for e in self.entries if e.key == key]
        if len(found) > 1:
            raise InputError(f"line {self.line}: key {key!r} given twice in [{self.kind}]")
        return found[0] if found else default

    def indexed(self, prefix: str) -> list[tuple[tuple[tuple[int, ...], ...], Entry]]:
        """Entries like ``rho[1,2][3]`` as ``(((1, 2), (3,)), entry)``."""
        out = []
        for e in self.entries:
            m = _INDEXED.match(e.key)
            if not m or m.group(1) != prefix:
                continue
            groups = re.findall(r"\[([^\]]*)\]", m.group(2))
            try:
                idx = tuple(tuple(int(t) for t in g.split(",")) for g in groups)
            except ValueError:
                raise InputError(f"line {e.line}: bad index in {e.key!r}") from None
            out.append((idx, e))
        return out


def _split_list(value: str) -> list[str]:
    return [t.strip() for t in value.split(",") if t.strip()]


def _unquote(value: str) -> str:
    if len(value) >= 2 and value[0] == value[-1] == '"':
        return value[1:-1]
    return value


def parse_text(text: str, source: str = "<string>") -> list[Section]:
    lines = text.splitlines()
    first = next((i for i, l in enumerate(lines) if l.strip() and not l.strip().startswith("#")), None)
    if first is None or lines[first].strip() != HEADER:
        raise InputError(f"{source}: missing header line {HEADER!r}")
    sections: list[Section] = []
    for lineno, raw in enumerate(lines[first + 1:], start=first + 2):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _SECTION.match(line)
        if m:
            sections.append(Section(m.group(1), m.group(2), lineno))
            continue
        if "=" not in line:
            raise InputError(f"{source}:{lineno}: expected 'key = value' or a [section]")
        if not sections:
            raise InputError(f"{source}:{lineno}: entry outside any section")
        key, value = (t.strip() for t in line.split("=", 1))
        sections[-1].entries.append(Entry(key.replace(" ", ""), _unquote(value), lineno))
    return sections


@dataclass
class Guard:
    text: str
    expr: Expr


@dataclass
class Problem:
    """A problem with every entry evaluated at one parameter assignment."""

    source: str
    assignment: dict[str, Fraction]
    corpus: bool
    title: str
    ternary: dict[str, ThreeLieAlgebra]
    binary: dict[str, LeibnizAlgebra]
    representations: dict[str, Representation]
    extensions: dict[str, ExtensionDatum]
    gauges: dict[str, tuple[str, LinearMap]]
    tasks: tuple[str, ...]


@dataclass
class ProblemSpec:
    source: str
    sections: list[Section]
    params: tuple[str, ...]
    guards: tuple[Guard, ...]
    tasks: tuple[str, ...]
    corpus: bool
    title: str

    @property
    def is_family(self) -> bool:
        return bool(self.params)

    def check_guards(self, assignment: Mapping[str, Fraction]) -> None:
        for guard in self.guards:
            try:
                value = evaluate(guard.expr, assignment)
            except ExprEvalError as exc:
                raise ConstraintError(f"guard {guard.text!r} cannot be evaluated: {exc}", guard.text) from None
            if value == 0:
                shown = ", ".join(f"{k}={v}" for k, v in assignment.items())
                raise ConstraintError(f"guard {guard.text!r} vanishes at {shown}", guard.text)

    def resolve(self, assignment: Mapping[str, object] | None = None) -> Problem:
        assignment = {k: Fraction(v) for k, v in (assignment or {}).items()}
        missing = [p for p in self.params if p not in assignment]
        if missing:
            raise InputError(f"no value for parameter(s) {', '.join(missing)}")
        unknown = [p for p in assignment if p not in self.params]
        if unknown:
            raise InputError(f"unknown parameter(s) {', '.join(unknown)}")
        self.check_guards(assignment)
        return _Resolver(self, assignment).run()


def read_problem(path: str | Path) -> ProblemSpec:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    return parse_problem(text, path.name)


def parse_problem(text: str, source: str = "<string>") -> ProblemSpec:
    sections = parse_text(text, source)
    params: tuple[str, ...] = ()
    guards: list[Guard] = []
    tasks: tuple[str, ...] = ()
    corpus, title = False, source
    for sec in sections:
        if sec.kind == "params":
            params = tuple(_split_list(sec.get("names", "")))
            for p in params:
                if not _IDENT.match(p):
                    raise InputError(f"{source}:{sec.line}: bad parameter name {p!r}")
            for e in sec.entries:
                if e.key == "guard":
                    guards.append(Guard(e.value, _parse(e, source)))
                elif e.key != "names":
                    raise InputError(f"{source}:{e.line}: unknown key {e.key!r} in [params]")
        elif sec.kind == "tasks":
            tasks = tuple(_split_list(sec.get("run", "")))
            bad = [t for t in tasks if t not in TASKS]
            if bad:
                raise InputError(f"{source}:{sec.line}: unknown task(s) {', '.join(bad)}")
        elif sec.kind == "meta":
            corpus = (sec.get("corpus", "false") or "").lower() == "true"
            title = sec.get("title", source) or source
    for g in guards:
        stray = names(g.expr) - set(params)
        if stray:
            raise InputError(f"{source}: guard {g.text!r} uses undeclared name(s) {', '.join(sorted(stray))}")
    return ProblemSpec(source, sections, params, tuple(guards), tasks, corpus, title)


def _parse(e: Entry, source: str) -> Expr:
    try:
        return parse_expr(e.value)
    except InputError as exc:
        raise InputError(f"{source}:{e.line}: {exc}") from None


class _Resolver:
    def __init__(self, spec: ProblemSpec, assignment: dict[str, Fraction]):
        self.spec = spec
        self.assignment = assignment
        self.ternary: dict[str, ThreeLieAlgebra] = {}
        self.binary: dict[str, LeibnizAlgebra] = {}
        self.reps: dict[str, Representation] = {}
        self.exts: dict[str, ExtensionDatum] = {}
        self.gauges: dict[str, tuple[str, LinearMap]] = {}

    def fail(self, line: int, message: str) -> InputError:
        return InputError(f"{self.spec.source}:{line}: {message}")

    def vector(self, e: Entry, basis: tuple[str, ...]) -> list[Fraction]:
        value = e.value.strip()
        try:
            if value.startswith("["):
                if not value.endswith("]"):
                    raise self.fail(e.line, "unterminated coefficient list")
                items = _split_list(value[1:-1])
                if len(items) != len(basis):
                    raise self.fail(e.line, f"expected {len(basis)} coefficients, got {len(items)}")
                return [evaluate(parse_expr(t), self.assignment) for t in items]
            return evaluate_linear(parse_expr(value), self.assignment, basis)
        except InputError as exc:
            if str(exc).startswith(self.spec.source):
                raise
            raise self.fail(e.line, str(exc)) from None

    def name(self, sec: Section) -> str:
        if not sec.name:
            raise self.fail(sec.line, f"[{sec.kind}] needs a name")
        taken = set(self.ternary) | set(self.binary) | set(self.reps) | set(self.exts) | set(self.gauges)
        if sec.name in taken:
            raise self.fail(sec.line, f"name {sec.name!r} declared twice")
        return sec.name

    def basis(self, sec: Section) -> tuple[str, ...]:
        labels = tuple(_split_list(sec.get("basis", "") or ""))
        for lbl in labels:
            if not _IDENT.match(lbl) or lbl in self.spec.params:
                raise self.fail(sec.line, f"bad basis label {lbl!r}")
        if len(set(labels)) != len(labels):
            raise self.fail(sec.line, "repeated basis label")
        return labels

    def known(self, table: dict, key: str | None, sec: Section, what: str):
        if key not in table:
            raise self.fail(sec.line, f"{what} {key!r} is not declared above")
        return table[key]

    def check_keys(self, sec: Section, allowed: set[str], prefixes: set[str]) -> None:
        for e in sec.entries:
            m = _INDEXED.match(e.key)
            if e.key in allowed or (m and m.group(1) in prefixes):
                continue
            raise self.fail(e.line, f"unknown key {e.key!r} in [{sec.kind}]")

    def index(self, e: Entry, idx, shape: tuple[int, ...], dims: tuple[int, ...], strict: tuple[bool, ...]):
        """Validate 1-based indices and convert to 0-based."""
        if tuple(len(g) for g in idx) != shape:
            raise self.fail(e.line, f"bad index shape in {e.key!r}")
        out = []
        for group, dim, increasing in zip(idx, dims, strict):
            for i in group:
                if not 1 <= i <= dim:
                    raise self.fail(e.line, f"index {i} out of range in {e.key!r}")
            if increasing and any(a >= b for a, b in zip(group, group[1:])):
                raise self.fail(e.line, f"{e.key!r} is not a canonical (increasing) index tuple")
            out.extend(i - 1 for i in group)
        return tuple(out)

    def unique(self, entries):
        seen = set()
        for key, e in entries:
            if key in seen:
                raise self.fail(e.line, f"entry {e.key!r} given twice")
            seen.add(key)

    # sections -------------------------------------------------------------
    def algebra(self, sec: Section) -> None:
        name = self.name(sec)
        kind = sec.get("kind", "ternary")
        basis = self.basis(sec)
        n = len(basis)
        space = Space(name, basis)
        if kind == "ternary":
            self.check_keys(sec, {"kind", "basis"}, {"c"})
            entries = [(self.index(e, idx, (3,), (n,), (True,)), e) for idx, e in sec.indexed("c")]
            self.unique(entries)
            self.ternary[name] = ThreeLieAlgebra(space, {k: self.vector(e, basis) for k, e in entries}, name=name)
        elif kind == "binary":
            self.check_keys(sec, {"kind", "basis"}, {"b"})
            entries = [(self.index(e, idx, (2,), (n,), (False,)), e) for idx, e in sec.indexed("b")]
            self.unique(entries)
            consts = {k: self.vector(e, basis) for k, e in entries}
            self.binary[name] = LeibnizAlgebra.from_constants(space, consts, name=name)
        else:
            raise self.fail(sec.line, f"unknown algebra kind {kind!r}")

    def representation(self, sec: Section) -> None:
        name = self.name(sec)
        self.check_keys(sec, {"algebra", "basis", "adjoint"}, {"rho"})
        g = self.known(self.ternary, sec.get("algebra"), sec, "algebra")
        if (sec.get("adjoint", "false") or "").lower() == "true":
            if sec.indexed("rho") or sec.get("basis"):
                raise self.fail(sec.line, "an adjoint representation takes no basis or rho entries")
            self.reps[name] = adjoint_representation(g)
            return
        basis = self.basis(sec)
        space = Space(name, basis)
        entries = [(self.index(e, idx, (2, 1), (g.dim, len(basis)), (True, False)), e) for idx, e in sec.indexed("rho")]
        self.unique(entries)
        self.reps[name] = Representation.from_actions(g, space, {k: self.vector(e, basis) for k, e in entries})

    def extension(self, sec: Section) -> None:
        name = self.name(sec)
        self.check_keys(sec, {"g", "h"}, {"rho", "nu", "omega"})
        g = self.known(self.ternary, sec.get("g"), sec, "algebra")
        h = self.known(self.ternary, sec.get("h"), sec, "algebra")
        n, m, hb = g.dim, h.dim, h.space.basis
        rho = [(self.index(e, idx, (2, 1), (n, m), (True, False)), e) for idx, e in sec.indexed("rho")]
        nu = [(self.index(e, idx, (1, 2), (n, m), (False, True)), e) for idx, e in sec.indexed("nu")]
        omega = [(self.index(e, idx, (3,), (n,), (True,)), e) for idx, e in sec.indexed("omega")]
        for group in (rho, nu, omega):
            self.unique(group)
        self.exts[name] = ExtensionDatum.from_tables(
            g,
            h,
            rho={k: self.vector(e, hb) for k, e in rho},
            nu={k: self.vector(e, hb) for k, e in nu},
            omega={k: self.vector(e, hb) for k, e in omega},
        )

    def gauge(self, sec: Section) -> None:
        name = self.name(sec)
        self.check_keys(sec, {"extension"}, {"xi"})
        ext_name = sec.get("extension")
        D = self.known(self.exts, ext_name, sec, "extension")
        n, hb = D.g.dim, D.h.space.basis
        entries = [(self.index(e, idx, (1,), (n,), (False,)), e) for idx, e in sec.indexed("xi")]
        self.unique(entries)
        images = {k[0]: self.vector(e, hb) for k, e in entries}
        rows = [[images.get(a, [Fraction(0)] * len(hb))[k] for a in range(n)] for k in range(len(hb))]
        matrix = QArray.from_values(rows) if rows and n else QArray.zeros((len(hb), n))
        self.gauges[name] = (ext_name, LinearMap(D.g.space, D.h.space, matrix))

    def run(self) -> Problem:
        handlers = {
            "algebra": self.algebra,
            "representation": self.representation,
            "extension": self.extension,
            "gauge": self.gauge,
        }
        for sec in self.spec.sections:
            if sec.kind in handlers:
                handlers[sec.kind](sec)
            elif sec.kind not in ("meta", "params", "tasks"):
                raise self.fail(sec.line, f"unknown section [{sec.kind}]")
        return Problem(
            self.spec.source,
            dict(self.assignment),
            self.spec.corpus,
            self.spec.title,
            self.ternary,
            self.binary,
            self.reps,
            self.exts,
            self.gauges,
            self.spec.tasks,
        )


def load_problem(path: str | Path, assignment: Mapping[str, object] | None = None) -> Problem:
    """Read, evaluate and build a problem file at one parameter assignment."""
    return read_problem(path).resolve(assignment)


def parse_assignment(text: str) -> dict[str, Fraction]:
    """``"r1=1,r2=-3/2"`` as a mapping."""
    out: dict[str, Fraction] = {}
    for item in _split_list(text):
        if "=" not in item:
            raise InputError(f"bad parameter setting {item!r}; expected name=value")
        key, value = (t.strip() for t in item.split("=", 1))
        if not _IDENT.match(key):
            raise InputError(f"bad parameter name {key!r}")
        try:
            out[key] = evaluate(parse_expr(value))
        except InputError as exc:
            raise InputError(f"bad value for {key}: {exc}") from None
    return out
