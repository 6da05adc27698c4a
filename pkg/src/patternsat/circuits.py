"""Instance generators: carry-save multipliers, factorization targets, kCNF.

Multiplier netlist for ``ibits``: factor ``a`` has ``ibits - 1`` bits and
factor ``b`` has ``ceil(ibits / 2)`` bits, both LSB first. Partial products
``a_j & b_i`` are reduced row by row with carry-save full/half adders; the
last row's sums and carries are merged by a ripple-carry adder. Inputs take
the first variable indices, gate outputs follow in creation (row-major) order.
Every gate is encoded with clauses of at most three literals.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, replace
from itertools import combinations

from patternsat.cnf import ClauseSet, Literal, normalize


@dataclass(frozen=True)
class CircuitInstance:
    clause_set: ClauseSet
    input_a_vars: tuple
    input_b_vars: tuple
    output_vars: tuple
    pinned_units: tuple = ()

    def dimacs_comments(self) -> list:
        def ones(vs):
            return " ".join(str(v + 1) for v in vs)

        return [
            f"inputs_a {ones(self.input_a_vars)}",
            f"inputs_b {ones(self.input_b_vars)}",
            f"outputs {ones(self.output_vars)}",
        ]

    def pin_outputs(self, value: int) -> ClauseSet:
        """Clause set with the product bits fixed to ``value`` (no bookkeeping)."""
        return ClauseSet(self.clause_set.clauses + _unit_pins(self.output_vars, value), self.clause_set.num_vars)


class _Netlist:
    def __init__(self, first_free: int):
        self.next_var = first_free
        self.clauses: list = []

    def fresh(self) -> Literal:
        v = Literal(self.next_var, True)
        self.next_var += 1
        return v

    def emit(self, *lits: Literal):
        self.clauses.append(tuple(sorted(lits)))

    def and2(self, x: Literal, y: Literal) -> Literal:
        o = self.fresh()
        self.emit(-x, -y, o)
        self.emit(x, -o)
        self.emit(y, -o)
        return o

    def xor2(self, x: Literal, y: Literal) -> Literal:
        o = self.fresh()
        self.emit(-x, -y, -o)
        self.emit(x, y, -o)
        self.emit(x, -y, o)
        self.emit(-x, y, o)
        return o

    def majority(self, x: Literal, y: Literal, z: Literal) -> Literal:
        o = self.fresh()
        for p, q in combinations((x, y, z), 2):
            self.emit(-p, -q, o)
            self.emit(p, q, -o)
        return o

    def half_adder(self, x: Literal, y: Literal) -> tuple:
        return self.xor2(x, y), self.and2(x, y)

    def full_adder(self, x: Literal, y: Literal, z: Literal) -> tuple:
        return self.xor2(self.xor2(x, y), z), self.majority(x, y, z)

    def add(self, *signals):
        """Sum of 1-3 signals of equal weight as ``(sum, carry_or_None)``."""
        signals = [s for s in signals if s is not None]
        if len(signals) == 1:
            return signals[0], None
        if len(signals) == 2:
            return self.half_adder(*signals)
        return self.full_adder(*signals)


def factor_widths(ibits: int) -> tuple:
    return ibits - 1, math.ceil(ibits / 2)


def gen_multiplier(ibits: int) -> CircuitInstance:
    if not 3 <= ibits <= 16:
        raise ValueError("ibits must be in 3..16")
    na, nb = factor_widths(ibits)
    a = [Literal(j, True) for j in range(na)]
    b = [Literal(na + i, True) for i in range(nb)]
    net = _Netlist(na + nb)

    product = []
    sums = [net.and2(a[j], b[0]) for j in range(na)]  # weight j
    carries = [None] * na
    for i in range(1, nb):
        product.append(sums[0])
        new_sums, new_carries = [], []
        for j in range(na):
            # weight i + j: previous row's sum at j+1, its carry at j, and a_j b_i
            upper = sums[j + 1] if j + 1 < na else None
            s, c = net.add(upper, carries[j], net.and2(a[j], b[i]))
            new_sums.append(s)
            new_carries.append(c)
        sums, carries = new_sums, new_carries
    product.append(sums[0])

    # ripple merge at weight nb + j: sums[j+1] + carries[j] + running carry
    carry = None
    for j in range(na):
        upper = sums[j + 1] if j + 1 < na else None
        ins = [x for x in (upper, carries[j], carry) if x is not None]
        if j == na - 1 and len(ins) == 2:
            # top product bit; its carry-out is always 0
            product.append(net.xor2(*ins))
            carry = None
        else:
            s, carry = net.add(*ins)
            product.append(s)
    if len(product) != na + nb:
        raise AssertionError(f"expected {na + nb} product bits, built {len(product)}")
    cs = ClauseSet(tuple(net.clauses), net.next_var)
    return CircuitInstance(
        cs,
        tuple(l.var for l in a),
        tuple(l.var for l in b),
        tuple(l.var for l in product),
    )


def _unit_pins(output_vars, value: int) -> tuple:
    return tuple((Literal(v, bool((value >> k) & 1)),) for k, v in enumerate(output_vars))


def gen_factorization(ibits: int, target: int) -> CircuitInstance:
    inst = gen_multiplier(ibits)
    width = len(inst.output_vars)
    if not 0 <= target < (1 << width):
        raise ValueError(f"target {target} does not fit in {width} output bits")
    base = inst.clause_set.clauses
    pins = _unit_pins(inst.output_vars, target)
    cs = ClauseSet(base + pins, inst.clause_set.num_vars)
    return replace(inst, clause_set=cs, pinned_units=tuple(range(len(base), len(base) + len(pins))))


def drop_units(inst: CircuitInstance) -> CircuitInstance:
    drop = set(inst.pinned_units)
    kept = tuple(c for i, c in enumerate(inst.clause_set.clauses) if i not in drop)
    return replace(inst, clause_set=ClauseSet(kept, inst.clause_set.num_vars), pinned_units=())


def split_to_3cnf(clause, fresh_start: int) -> list:
    """Chain a long clause into 3-literal clauses with fresh variables.

    ``(l1 l2 l3 ... lk)`` becomes ``(l1 l2 y1) (!y1 l3 y2) ... (!y_{k-3} l_{k-1} l_k)``.
    The result is equisatisfiable with the input, not equivalent.
    """
    lits = list(clause)
    if not lits:
        raise ValueError("cannot split the empty clause")
    if len(lits) <= 3:
        return [tuple(lits)]
    k = len(lits)
    ys = [Literal(fresh_start + t, True) for t in range(k - 3)]
    out = [(lits[0], lits[1], ys[0])]
    for t in range(1, k - 3):
        out.append((-ys[t - 1], lits[t + 1], ys[t]))
    out.append((-ys[-1], lits[-2], lits[-1]))
    return out


def to_3cnf(s: ClauseSet) -> ClauseSet:
    """Split every clause longer than three literals; fresh variables start at ``N``."""
    clauses = []
    fresh = s.num_vars
    for c in s.clauses:
        parts = split_to_3cnf(c, fresh)
        fresh += max(len(c) - 3, 0)
        clauses.extend(parts)
    return normalize(ClauseSet(tuple(clauses), fresh))


def gen_random_kcnf(n: int, m: int, k: int, seed: int) -> ClauseSet:
    """``m`` distinct clauses of ``k`` distinct variables each, reproducible per seed."""
    if not (1 <= k <= n <= 30) or m < 0:
        raise ValueError("need 1 <= k <= n <= 30 and m >= 0")
    if m > math.comb(n, k) * (1 << k):
        raise ValueError("more clauses requested than distinct k-clauses exist")
    rng = random.Random(seed)
    seen = set()
    clauses = []
    while len(clauses) < m:
        c = tuple(sorted(Literal(v, rng.random() < 0.5) for v in rng.sample(range(n), k)))
        if c not in seen:
            seen.add(c)
            clauses.append(c)
    return ClauseSet(tuple(clauses), n)
