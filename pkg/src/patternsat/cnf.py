"""Clause sets over 0-based variables.

DIMACS variable ``k`` is stored internally as index ``k - 1``. A clause is a
tuple of :class:`Literal`; a :class:`ClauseSet` carries the ambient variable
count explicitly, and substitution never shrinks it.

Residuals of :func:`assign` are ``True`` (no clause left), ``False`` (some
clause emptied) or a non-empty :class:`ClauseSet`.
"""

from __future__ import annotations

import logging
import warnings
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, NamedTuple, Sequence, Union

log = logging.getLogger(__name__)


class DimacsError(ValueError):
    pass


class Literal(NamedTuple):
    var: int
    positive: bool = True

    def __neg__(self) -> "Literal":
        return Literal(self.var, not self.positive)

    def __str__(self) -> str:
        return str(self.var) if self.positive else f"!{self.var}"


Clause = tuple  # tuple[Literal, ...]


@dataclass(frozen=True, eq=True)
class ClauseSet:
    clauses: tuple
    num_vars: int

    def __post_init__(self):
        clauses = tuple(
            tuple(lit if isinstance(lit, Literal) else Literal(*lit) for lit in c) for c in self.clauses
        )
        object.__setattr__(self, "clauses", clauses)
        if self.num_vars < 0:
            raise ValueError("num_vars must be non-negative")
        for c in clauses:
            for lit in c:
                if not 0 <= lit.var < self.num_vars:
                    raise ValueError(f"variable {lit.var} outside 0..{self.num_vars - 1}")

    @classmethod
    def _trusted(cls, clauses: tuple, num_vars: int) -> "ClauseSet":
        # Skips validation; callers guarantee well-formed Literal tuples.
        obj = object.__new__(cls)
        object.__setattr__(obj, "clauses", clauses)
        object.__setattr__(obj, "num_vars", num_vars)
        return obj

    def __len__(self) -> int:
        return len(self.clauses)

    def __iter__(self):
        return iter(self.clauses)

    @cached_property
    def key(self) -> str:
        """Canonical text encoding, e.g. ``"!0,1;2,3"``."""
        return encode(self)

    @cached_property
    def variables(self) -> tuple:
        """Sorted indices of variables occurring in some clause."""
        return tuple(sorted({lit.var for c in self.clauses for lit in c}))

    def __str__(self) -> str:
        return "{" + "".join("{" + ",".join(map(str, c)) + "}" for c in self.clauses) + "}"


Residual = Union[bool, ClauseSet]


_lit_text: dict = {}


def _text(lit: Literal) -> str:
    t = _lit_text.get(lit)
    if t is None:
        t = _lit_text[lit] = str(lit)
    return t


def encode(s: ClauseSet) -> str:
    return ";".join(",".join([_text(l) for l in c]) for c in s.clauses)


def decode(text: str, num_vars: int | None = None) -> ClauseSet:
    """Inverse of :func:`encode`. ``num_vars`` defaults to max index + 1."""
    clauses = []
    for part in filter(None, text.replace(" ", "").split(";")):
        clause = []
        for tok in part.split(","):
            if tok.startswith("!"):
                clause.append(Literal(int(tok[1:]), False))
            else:
                clause.append(Literal(int(tok), True))
        clauses.append(tuple(clause))
    if num_vars is None:
        num_vars = max((lit.var for c in clauses for lit in c), default=-1) + 1
    return ClauseSet(tuple(clauses), num_vars)


def from_ints(clauses: Iterable[Sequence[int]], num_vars: int | None = None) -> ClauseSet:
    """Build from DIMACS-style signed 1-based integers."""
    cs = tuple(tuple(Literal(abs(x) - 1, x > 0) for x in c) for c in clauses)
    if num_vars is None:
        num_vars = max((lit.var for c in cs for lit in c), default=-1) + 1
    return ClauseSet(cs, num_vars)


def parse_dimacs(text: str) -> ClauseSet:
    num_vars = num_clauses = None
    clauses = []
    current = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c") or line.startswith("%"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise DimacsError(f"line {lineno}: malformed header {line!r}")
            try:
                num_vars, num_clauses = int(parts[2]), int(parts[3])
            except ValueError:
                raise DimacsError(f"line {lineno}: malformed header {line!r}") from None
            if num_vars < 0 or num_clauses < 0:
                raise DimacsError(f"line {lineno}: negative header value")
            continue
        if num_vars is None:
            raise DimacsError(f"line {lineno}: clause before header")
        for tok in line.split():
            try:
                x = int(tok)
            except ValueError:
                raise DimacsError(f"line {lineno}: bad token {tok!r}") from None
            if x == 0:
                clauses.append(tuple(current))
                current = []
            elif abs(x) > num_vars:
                raise DimacsError(f"line {lineno}: variable {abs(x)} out of range 1..{num_vars}")
            else:
                current.append(Literal(abs(x) - 1, x > 0))
    if num_vars is None:
        raise DimacsError("missing header")
    if current:
        # last clause without terminating 0
        clauses.append(tuple(current))
    if len(clauses) != num_clauses:
        warnings.warn(f"header announces {num_clauses} clauses, found {len(clauses)}", stacklevel=2)
    return ClauseSet(tuple(clauses), num_vars)


def serialize_dimacs(s: ClauseSet, comments: Sequence[str] = ()) -> str:
    lines = [f"c {c}" for c in comments]
    lines.append(f"p cnf {s.num_vars} {len(s.clauses)}")
    for c in s.clauses:
        lines.append(" ".join(str(l.var + 1 if l.positive else -(l.var + 1)) for l in c) + " 0")
    return "\n".join(lines)


def normalize(s: ClauseSet) -> ClauseSet:
    out = []
    seen = set()
    dropped = 0
    for c in s.clauses:
        lits = sorted(set(c))
        vs = [l.var for l in lits]
        if len(set(vs)) != len(vs):
            dropped += 1
            continue
        t = tuple(lits)
        if t not in seen:
            seen.add(t)
            out.append(t)
    if dropped:
        log.info("normalize: dropped %d tautological clause(s)", dropped)
    return ClauseSet(tuple(out), s.num_vars)


def is_normalized(s: ClauseSet) -> bool:
    return normalize(s) == s


def assign(s: ClauseSet, var: int, value: bool) -> Residual:
    if not 0 <= var < s.num_vars:
        raise ValueError(f"variable {var} out of range")
    out = []
    seen = set()
    for c in s.clauses:
        reduced = []
        satisfied = False
        for lit in c:
            if lit.var == var:
                if lit.positive == value:
                    satisfied = True
                    break
            else:
                reduced.append(lit)
        if satisfied:
            continue
        if not reduced:
            return False
        t = tuple(reduced)
        if t not in seen:
            seen.add(t)
            out.append(t)
    if not out:
        return True
    return ClauseSet._trusted(tuple(out), s.num_vars)


def evaluate(s: ClauseSet, a: Mapping[int, bool]) -> bool:
    """Truth value of ``s`` under ``a``, which must cover every occurring variable."""
    missing = [v for v in s.variables if v not in a]
    if missing:
        raise ValueError(f"assignment not total: missing {missing}")
    return all(any(a[l.var] == l.positive for l in c) for c in s.clauses)
