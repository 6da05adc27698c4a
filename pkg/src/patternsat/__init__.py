"""Pattern-oriented SAT toolkit: s.l.o. renaming, FBDD construction and diagnostics."""

from patternsat.cnf import ClauseSet, Literal, assign, evaluate, normalize, parse_dimacs, serialize_dimacs
from patternsat.fbdd import Canonical, Explicit, RandomOrder, Terminal, build_pr, build_pr_prime, is_sat
from patternsat.slo import RenamingMap, cra, cra_plus, slo_check, slo_sort

__all__ = [
    "Canonical",
    "ClauseSet",
    "Explicit",
    "Literal",
    "RandomOrder",
    "RenamingMap",
    "Terminal",
    "assign",
    "build_pr",
    "build_pr_prime",
    "cra",
    "cra_plus",
    "evaluate",
    "is_sat",
    "normalize",
    "parse_dimacs",
    "serialize_dimacs",
    "slo_check",
    "slo_sort",
]
