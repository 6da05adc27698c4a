import itertools
import random

import pytest
from hypothesis import strategies as st

from patternsat.cnf import ClauseSet, Literal, normalize

ACCEPTANCE = []


def enumerate_count(s: ClauseSet) -> int:
    """Plain itertools enumeration; deliberately shares nothing with the numpy oracle."""
    total = 0
    for bits in itertools.product((False, True), repeat=s.num_vars):
        if all(any(bits[v] == pos for v, pos in c) for c in s.clauses):
            total += 1
    return total


def dpll(clauses) -> dict | None:
    """Tiny DPLL with unit propagation over lists of (var, positive) pairs."""
    clauses = [list(c) for c in clauses]
    assignment: dict = {}

    def simplify(cls, var, val):
        out = []
        for c in cls:
            if (var, val) in c:
                continue
            reduced = [l for l in c if l[0] != var]
            if not reduced:
                return None
            out.append(reduced)
        return out

    def solve(cls, asg):
        while True:
            unit = next((c[0] for c in cls if len(c) == 1), None)
            if unit is None:
                break
            asg = {**asg, unit[0]: unit[1]}
            cls = simplify(cls, *unit)
            if cls is None:
                return None
        if not cls:
            return asg
        var = cls[0][0][0]
        for val in (True, False):
            nxt = simplify(cls, var, val)
            if nxt is not None:
                res = solve(nxt, {**asg, var: val})
                if res is not None:
                    return res
        return None

    return solve(clauses, assignment)


def random_clause_set(rng: random.Random, n: int, m: int, k: int) -> ClauseSet:
    clauses = []
    for _ in range(m):
        width = min(k, n)
        clauses.append(tuple(Literal(v, rng.random() < 0.5) for v in rng.sample(range(n), width)))
    return normalize(ClauseSet(tuple(clauses), n))


@st.composite
def clause_sets(draw, max_vars=8, max_clauses=8, max_width=3, min_vars=1):
    n = draw(st.integers(min_vars, max_vars))
    m = draw(st.integers(0, max_clauses))
    clauses = []
    for _ in range(m):
        width = draw(st.integers(1, min(max_width, n)))
        vs = draw(st.lists(st.integers(0, n - 1), min_size=width, max_size=width, unique=True))
        clauses.append(tuple(Literal(v, draw(st.booleans())) for v in vs))
    return ClauseSet(tuple(clauses), n)


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(number, title): exit criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    if rep.when == "call" or (rep.when == "setup" and rep.failed):
        number, title = marker.args
        ACCEPTANCE.append((number, title, item.name, rep.passed))


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, name, passed in sorted(ACCEPTANCE, key=lambda r: (r[0], r[2])):
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  criterion {number:>2}: {title} [{name}]")
