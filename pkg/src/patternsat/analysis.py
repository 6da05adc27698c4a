"""Counting, complete-subtree diagnostics and growth estimation over built graphs."""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from typing import Iterable, Optional

import numpy as np

from patternsat.cnf import ClauseSet
from patternsat.fbdd import PER_NODE, FbddGraph, Terminal
from patternsat.oracle import pattern_domain, row_assignment
from patternsat.slo import RenamingMap

EXACT_TREE_NODE_LIMIT = 10_000
GROWTH_CSV_HEADER = ("label", "n_vars", "node_count", "distance", "base_estimate")


@dataclass(frozen=True)
class GrowthRecord:
    label: str
    n_vars: int
    node_count: int
    distance: int
    base_estimate: Optional[float]

    @property
    def growth_factor(self) -> Optional[float]:
        if self.base_estimate is None:
            return None
        return self.base_estimate ** self.distance


@dataclass(frozen=True)
class TreeReport:
    dp_depth_bound: int
    exact_depth: object  # int, or "not computed" past the size guard

    def to_dict(self) -> dict:
        return {"dp_depth_bound": self.dp_depth_bound, "exact_depth": self.exact_depth}


def _postorder(g: FbddGraph) -> list:
    out, done, stack = [], set(), [(g.root, False)]
    while stack:
        ref, expanded = stack.pop()
        if isinstance(ref, Terminal) or ref in done:
            continue
        if expanded:
            done.add(ref)
            out.append(ref)
            continue
        stack.append((ref, True))
        n = g.nodes[ref]
        stack.append((n.hi, False))
        stack.append((n.lo, False))
    return out


def model_count(g: FbddGraph, ambient_n: int | None = None) -> int:
    """Number of satisfying assignments over ``ambient_n`` variables.

    Each node weighs its children by the variables that vanished between the
    node's residual and the child's, so the count is independent of how the
    residuals were renamed.
    """
    n = g.num_vars if ambient_n is None else ambient_n
    if g.root is Terminal.TRUE:
        return 1 << n
    if g.root is Terminal.FALSE:
        return 0
    counts: dict = {}

    def child(ref, parent_vars: int) -> int:
        if ref is Terminal.TRUE:
            c, k = 1, 0
        elif ref is Terminal.FALSE:
            return 0
        else:
            c, k = counts[ref], g.nodes[ref].residual_var_count
        free = parent_vars - 1 - k
        if free < 0:
            raise ValueError(f"child residual larger than parent ({k} >= {parent_vars})")
        return c << free

    for ref in _postorder(g):
        node = g.nodes[ref]
        if node.residual_var_count is None:
            raise ValueError(f"node {ref} lacks residual_var_count")
        counts[ref] = child(node.lo, node.residual_var_count) + child(node.hi, node.residual_var_count)
    root_vars = g.nodes[g.root].residual_var_count
    if root_vars > n:
        raise ValueError("ambient variable count smaller than the root residual")
    return counts[g.root] << (n - root_vars)


def _depths(g: FbddGraph) -> dict:
    depth = {}
    for ref in _postorder(g):
        n = g.nodes[ref]
        lo = 0 if isinstance(n.lo, Terminal) else depth[n.lo]
        hi = 0 if isinstance(n.hi, Terminal) else depth[n.hi]
        depth[ref] = 1 + min(lo, hi)
    return depth


def tree_depth_bound(g: FbddGraph) -> int:
    """Largest depth of a tree-shaped unfolding of nonterminals, shared nodes allowed.

    A node-disjoint complete binary subtree of depth ``m`` can only exist if
    this bound is at least ``m``.
    """
    return max(_depths(g).values(), default=0)


def _tree_nodes(g: FbddGraph, ref, m: int, acc: list) -> bool:
    if m == 0:
        return True
    if isinstance(ref, Terminal):
        return False
    acc.append(ref)
    n = g.nodes[ref]
    return _tree_nodes(g, n.lo, m - 1, acc) and _tree_nodes(g, n.hi, m - 1, acc)


def exact_complete_tree(g: FbddGraph, m: int) -> bool:
    """True iff ``2**m - 1`` distinct nonterminals form a complete binary tree of depth ``m``."""
    if len(g.nodes) > EXACT_TREE_NODE_LIMIT:
        raise ValueError(f"graph has {len(g.nodes)} nodes, limit {EXACT_TREE_NODE_LIMIT}")
    if m <= 0:
        return True
    depth = _depths(g)
    for ref, d in depth.items():
        if d < m:
            continue
        acc: list = []
        # the unfolding below a node is fixed, so only distinctness can fail here
        if _tree_nodes(g, ref, m, acc) and len(set(acc)) == len(acc):
            return True
    return False


def tree_report(g: FbddGraph) -> TreeReport:
    bound = tree_depth_bound(g)
    if len(g.nodes) > EXACT_TREE_NODE_LIMIT:
        return TreeReport(bound, "not computed")
    exact = 0
    while exact < bound and exact_complete_tree(g, exact + 1):
        exact += 1
    return TreeReport(bound, exact)


def function_equiv(g: FbddGraph, s: ClauseSet, mapping: RenamingMap | None = None) -> bool:
    """Pointwise comparison of the graph against ``s`` on every canonical row."""
    if g.mode == PER_NODE:
        raise ValueError("per-node graphs are search DAGs; pointwise equivalence is undefined")
    if s.num_vars > 20:
        raise ValueError("function_equiv limited to N <= 20")
    if mapping is None:
        mapping = g.renaming or RenamingMap.identity(range(s.num_vars))
    expected = pattern_domain(s).bits
    f = mapping.forward
    for r in range(1 << s.num_vars):
        a = row_assignment(r, s.num_vars)
        # variables outside the map never occur in s, so the graph never tests them
        renamed = {f[v]: val for v, val in a.items() if v in f}
        if g.evaluate(renamed) != bool(expected[r]):
            return False
    return True


def growth_table(records: Iterable) -> list:
    """Consecutive base estimates from ``size2 / size1 = base ** (n2 - n1)``."""
    out = []
    prev = None
    for label, n_vars, node_count in records:
        n_vars, node_count = int(n_vars), int(node_count)
        if node_count <= 0:
            raise ValueError(f"{label}: node count must be positive")
        if prev is None:
            out.append(GrowthRecord(str(label), n_vars, node_count, 0, None))
        else:
            distance = n_vars - prev[0]
            if distance <= 0:
                raise ValueError(f"{label}: n_vars must increase strictly ({prev[0]} -> {n_vars})")
            base = math.exp((math.log(node_count) - math.log(prev[1])) / distance)
            out.append(GrowthRecord(str(label), n_vars, node_count, distance, base))
        prev = (n_vars, node_count)
    return out


def growth_csv(rows: list) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(GROWTH_CSV_HEADER)
    for r in rows:
        base = "" if r.base_estimate is None else f"{r.base_estimate:.6f}"
        w.writerow([r.label, r.n_vars, r.node_count, r.distance, base])
    return buf.getvalue()


def read_records_csv(text: str) -> list:
    """Parse ``label,n_vars,node_count`` rows (header required)."""
    reader = csv.DictReader(io.StringIO(text))
    missing = {"label", "n_vars", "node_count"} - set(reader.fieldnames or ())
    if missing:
        raise ValueError(f"records CSV missing columns {sorted(missing)}")
    return [(row["label"], int(row["n_vars"]), int(row["node_count"])) for row in reader]


def bases_trend(rows: list) -> np.ndarray:
    return np.array([r.base_estimate for r in rows if r.base_estimate is not None], dtype=float)
