"""Brute-force ground truth over the canonical truth table.

Row ``r`` of the canonical table assigns ``x_i`` the bit ``N-1-i`` of ``r``:
``x0`` is the slowest-changing column and ``x_{N-1}`` alternates every row.
Everything here enumerates rows, so it is only meant for small ``N``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from patternsat.cnf import ClauseSet

MAX_TABLE_VARS = 24
MAX_STREAM_VARS = 30
_CHUNK_BITS = 20


@dataclass(frozen=True)
class PatternDomain:
    bits: np.ndarray
    n: int

    def __post_init__(self):
        if len(self.bits) != 1 << self.n:
            raise ValueError("pattern length must be 2**n")

    def __str__(self) -> str:
        return bits_to_str(self.bits)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PatternDomain):
            return NotImplemented
        return self.n == other.n and bool(np.array_equal(self.bits, other.bits))

    __hash__ = None

    def count(self) -> int:
        return int(np.count_nonzero(self.bits))


@dataclass(frozen=True)
class PlrInfo:
    var: int
    period_length: int
    repetitions: int


def bits_to_str(bits) -> str:
    return "".join("1" if b else "0" for b in bits)


def row_assignment(r: int, n: int) -> dict:
    if not 0 <= r < (1 << n):
        raise ValueError(f"row {r} out of range for N={n}")
    return {i: bool((r >> (n - 1 - i)) & 1) for i in range(n)}


def _columns(n: int, start: int, stop: int) -> np.ndarray:
    rows = np.arange(start, stop, dtype=np.int64)
    shifts = np.arange(n - 1, -1, -1, dtype=np.int64)
    return ((rows[:, None] >> shifts[None, :]) & 1).astype(bool)


def _eval_rows(s: ClauseSet, start: int, stop: int) -> np.ndarray:
    cols = _columns(s.num_vars, start, stop)
    out = np.ones(stop - start, dtype=bool)
    for c in s.clauses:
        sat = np.zeros(stop - start, dtype=bool)
        for lit in c:
            sat |= cols[:, lit.var] if lit.positive else ~cols[:, lit.var]
        out &= sat
    return out


def pattern_domain(s: ClauseSet) -> PatternDomain:
    if s.num_vars > MAX_TABLE_VARS:
        raise ValueError(f"N={s.num_vars} exceeds table limit {MAX_TABLE_VARS}")
    size = 1 << s.num_vars
    step = 1 << _CHUNK_BITS
    bits = np.concatenate([_eval_rows(s, a, min(a + step, size)) for a in range(0, size, step)])
    return PatternDomain(bits, s.num_vars)


def variable_pattern(i: int, positive: bool, n: int) -> np.ndarray:
    """One period of literal ``x_i`` in the canonical table (length ``2**(n-i)``)."""
    if not 0 <= i < n:
        raise ValueError(f"variable {i} out of range for N={n}")
    half = 1 << (n - i - 1)
    lo, hi = (False, True) if positive else (True, False)
    return np.array([lo] * half + [hi] * half, dtype=bool)


def plr(s: ClauseSet) -> PlrInfo:
    if not s.variables:
        raise ValueError("PLR undefined for a set without literals")
    i = s.variables[0]
    return PlrInfo(var=i, period_length=1 << (s.num_vars - i), repetitions=1 << i)


def brute_count(s: ClauseSet) -> int:
    n = s.num_vars
    if n > MAX_STREAM_VARS:
        raise ValueError(f"N={n} exceeds counting limit {MAX_STREAM_VARS}")
    size = 1 << n
    step = 1 << _CHUNK_BITS
    return sum(int(np.count_nonzero(_eval_rows(s, a, min(a + step, size)))) for a in range(0, size, step))


def subfunction_count(s: ClauseSet, ys) -> int:
    """Number of distinct subfunctions on the other variables over all assignments to ``ys``."""
    ys = sorted(set(ys))
    if len(ys) > 20:
        raise ValueError("|Y| must be at most 20")
    n = s.num_vars
    if any(not 0 <= y < n for y in ys):
        raise ValueError("Y contains out-of-range variables")
    if n == 0:
        return 1
    table = pattern_domain(s).bits.reshape((2,) * n)
    rest = [v for v in range(n) if v not in ys]
    table = np.transpose(table, ys + rest).reshape(1 << len(ys), 1 << len(rest))
    return len({row.tobytes() for row in np.packbits(table, axis=1)})
