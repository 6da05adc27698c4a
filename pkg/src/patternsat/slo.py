"""Strongly linearly ordered (s.l.o.) clause sets.

A set is s.l.o. when

a. literals inside every clause are sorted by variable index,
b. scanning left to right, each variable first occurs with an index larger
   than every index seen before it,
c. clause sizes never decrease, and
d. inside each run of equal-size clauses, head indices never decrease
   (e. size ordering takes priority over head ordering, which is why d is
   only checked within runs).

CRA renames variables by first occurrence (rows of the connection matrix);
CRA+ alternates CRA and sorting until the set is s.l.o. Ordering is
sign-agnostic throughout.
"""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass, field

from patternsat.cnf import ClauseSet, Literal


class CraPlusError(RuntimeError):
    pass


@dataclass(frozen=True)
class RenamingMap:
    forward: dict

    @classmethod
    def identity(cls, variables) -> "RenamingMap":
        return cls({v: v for v in variables})

    @property
    def inverse(self) -> dict:
        return {new: old for old, new in self.forward.items()}

    def is_identity(self) -> bool:
        return all(k == v for k, v in self.forward.items())

    def then(self, other: "RenamingMap") -> "RenamingMap":
        """Apply ``self`` first, then ``other``."""
        return RenamingMap({old: other.forward[mid] for old, mid in self.forward.items()})

    def apply(self, s: ClauseSet) -> ClauseSet:
        table = {}
        for old, new in self.forward.items():
            table[(old, True)] = Literal(new, True)
            table[(old, False)] = Literal(new, False)
        clauses = tuple(tuple(sorted([table[l] for l in c])) for c in s.clauses)
        return ClauseSet._trusted(clauses, s.num_vars)

    def to_json(self) -> str:
        return json.dumps({str(k): v for k, v in sorted(self.forward.items())})

    @classmethod
    def from_json(cls, text: str) -> "RenamingMap":
        return cls({int(k): int(v) for k, v in json.loads(text).items()})


@dataclass(frozen=True)
class ConnectionMatrix:
    row_vars: tuple
    cols: int
    cells: tuple  # cells[r][c]

    def cell(self, r: int, c: int) -> bool:
        return self.cells[r][c]

    def __str__(self) -> str:
        head = "\t" + "\t".join(f"C{j}" for j in range(self.cols))
        rows = [f"{v}\t" + "\t".join("True" if x else "False" for x in row)
                for v, row in zip(self.row_vars, self.cells)]
        return "\n".join([head] + rows)


@dataclass(frozen=True)
class Violation:
    condition: str
    clauses: tuple
    message: str


@dataclass(frozen=True)
class SloReport:
    violations: tuple = field(default_factory=tuple)

    @property
    def holds(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {
            "holds": self.holds,
            "violations": [
                {"condition": v.condition, "clauses": list(v.clauses), "message": v.message}
                for v in self.violations
            ],
        }


def _first_occurrence(s: ClauseSet) -> list:
    order = []
    seen = set()
    for c in s.clauses:
        for lit in c:
            if lit.var not in seen:
                seen.add(lit.var)
                order.append(lit.var)
    return order


def connection_matrix(s: ClauseSet) -> ConnectionMatrix:
    rows = _first_occurrence(s)
    occ = [{lit.var for lit in c} for c in s.clauses]
    cells = tuple(tuple(v in o for o in occ) for v in rows)
    return ConnectionMatrix(tuple(rows), len(s.clauses), cells)


def cra(s: ClauseSet) -> tuple:
    """One renaming pass. Returns ``(renamed_set, RenamingMap)``."""
    m = RenamingMap({v: k for k, v in enumerate(_first_occurrence(s))})
    return m.apply(s), m


def compact(s: ClauseSet) -> tuple:
    """Order-preserving relabel of the occurring variables onto ``0..k-1``."""
    m = RenamingMap({v: k for k, v in enumerate(s.variables)})
    if m.is_identity():
        return s, m
    return m.apply(s), m


def _size_head(c) -> tuple:
    return len(c), (c[0].var if c else -1)


def slo_check(s: ClauseSet) -> SloReport:
    out = []
    for i, c in enumerate(s.clauses):
        vs = [l.var for l in c]
        if any(a >= b for a, b in zip(vs, vs[1:])):
            out.append(Violation("a", (i,), f"clause {i} literals not strictly ascending"))

    seen = set()
    highest = -1
    for i, c in enumerate(s.clauses):
        for lit in c:
            if lit.var in seen:
                continue
            if lit.var <= highest:
                out.append(Violation(
                    "b", (i,), f"variable {lit.var} first occurs in clause {i} after index {highest}"))
            seen.add(lit.var)
            highest = max(highest, lit.var)

    for i in range(1, len(s.clauses)):
        (n0, h0), (n1, h1) = _size_head(s.clauses[i - 1]), _size_head(s.clauses[i])
        if n0 > n1:
            out.append(Violation("c", (i - 1, i), f"clause {i} (size {n1}) after size {n0}"))
        elif n0 == n1 and h0 > h1:
            out.append(Violation("d", (i - 1, i), f"clause {i} head {h1} after head {h0}"))
    return SloReport(tuple(out))


def is_slo(s: ClauseSet) -> bool:
    """Boolean-only version of :func:`slo_check`."""
    highest = -1
    prev_size = 0
    prev_head = -1
    seen = set()
    for c in s.clauses:
        size = len(c)
        head = c[0].var if c else -1
        if size < prev_size or (size == prev_size and head < prev_head):
            return False
        prev_size, prev_head = size, head
        last = -1
        for lit in c:
            v = lit.var
            if v <= last:
                return False
            last = v
            if v not in seen:
                if v <= highest:
                    return False
                seen.add(v)
                highest = v
    return True


def _sort_key(c) -> tuple:
    return (len(c), c[0].var if c else -1, tuple(l.var for l in c))


def slo_sort(s: ClauseSet) -> ClauseSet:
    return ClauseSet._trusted(tuple(sorted(s.clauses, key=_sort_key)), s.num_vars)


def cra_plus(s: ClauseSet, track: bool = True) -> tuple:
    """Rename and sort until s.l.o.

    Returns ``(slo_set, RenamingMap, iterations)``. A repeated intermediate
    set means the loop cycles; the smallest encoding on the cycle is
    returned with a warning. More than ``10 * M`` iterations raises
    :class:`CraPlusError`. With ``track=False`` the returned map is ``None``.
    """
    current = s
    total = RenamingMap.identity(s.variables) if track else None
    # clause tuples are in bijection with text encodings and cheaper to hash
    history = {current.clauses: 0}
    states = [(current, total)]
    limit = 10 * max(len(s.clauses), 1)
    iterations = 0
    while not is_slo(current):
        if iterations >= limit:
            raise CraPlusError(f"CRA+ did not converge within {limit} iterations")
        renamed, step = cra(current)
        current = slo_sort(renamed)
        if track:
            total = total.then(step)
        iterations += 1
        if current.clauses in history:
            cycle = states[history[current.clauses]:]
            best, best_map = min(cycle, key=lambda st: st[0].key)
            warnings.warn(f"CRA+ cycle of length {len(cycle)} detected", RuntimeWarning, stacklevel=2)
            return best, best_map, iterations
        history[current.clauses] = len(states)
        states.append((current, total))
    return current, total, iterations
