"""FBDD construction by recursive substitution with a store of resolved sets.

``build_pr`` selects one variable per residual according to an ordering
policy and shares every residual it has already resolved (a "common node").
``build_pr_prime`` first brings the set into s.l.o. form with CRA+ and then
always instantiates the lowest variable. In ``upfront`` mode this happens once
at the root and the result is an FBDD over the renamed variables. In
``per-node`` mode every residual is re-renamed before lookup, so
renaming-isomorphic residuals are merged; that graph is a memoized search DAG
which preserves satisfiability and model counts but not the pointwise function
over the original variables.

Node counts always mean nonterminal nodes.
"""

from __future__ import annotations

import enum
import json
import random
import sys
from contextlib import contextmanager
from dataclasses import asdict, dataclass, field
from typing import Union

from patternsat.cnf import ClauseSet, assign
from patternsat.slo import RenamingMap, compact, cra_plus

UPFRONT = "upfront"
PER_NODE = "per-node"


class Terminal(enum.Enum):
    FALSE = 0
    TRUE = 1

    def __str__(self) -> str:
        return self.name


Ref = Union[int, Terminal]


@dataclass(frozen=True)
class Node:
    id: int
    test_var: int
    lo: Ref
    hi: Ref
    residual_key: str
    residual_var_count: int


@dataclass
class BuildStats:
    unique_nonterminal_nodes: int = 0
    store_hits: int = 0
    recursive_calls: int = 0
    cra_plus_invocations: int = 0

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class Canonical:
    pass


@dataclass(frozen=True)
class Explicit:
    order: tuple

    def __post_init__(self):
        object.__setattr__(self, "order", tuple(self.order))


@dataclass(frozen=True)
class RandomOrder:
    seed: int

    def permutation(self, n: int) -> tuple:
        order = list(range(n))
        random.Random(self.seed).shuffle(order)
        return tuple(order)


@dataclass
class FbddGraph:
    nodes: dict
    root: Ref
    num_vars: int
    mode: str = "pr"
    renaming: RenamingMap | None = None
    store: dict = field(default_factory=dict, repr=False)

    def __len__(self) -> int:
        return len(self.nodes)

    def children(self, ref: Ref) -> tuple:
        n = self.nodes[ref]
        return n.lo, n.hi

    def evaluate(self, assignment) -> bool:
        """Follow the path selected by ``assignment`` (variables in graph naming)."""
        if self.mode == PER_NODE:
            raise ValueError("per-node graphs do not compute a pointwise function")
        ref = self.root
        while not isinstance(ref, Terminal):
            n = self.nodes[ref]
            ref = n.hi if assignment[n.test_var] else n.lo
        return ref is Terminal.TRUE

    def preorder(self) -> list:
        """Nonterminal ids in depth-first preorder (lo before hi)."""
        out, seen, stack = [], set(), [self.root]
        while stack:
            ref = stack.pop()
            if isinstance(ref, Terminal) or ref in seen:
                continue
            seen.add(ref)
            out.append(ref)
            n = self.nodes[ref]
            stack.append(n.hi)
            stack.append(n.lo)
        return out


@contextmanager
def _recursion_room(depth: int):
    old = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old, 3 * depth + 1000))
    try:
        yield
    finally:
        sys.setrecursionlimit(old)


class _Builder:
    def __init__(self, select, per_node: bool = False):
        self.select = select
        self.per_node = per_node
        self.store: dict = {}
        self.nodes: dict = {}
        self.stats = BuildStats()

    def prepare(self, s: ClauseSet, track: bool = False):
        if not self.per_node:
            return s, None
        self.stats.cra_plus_invocations += 1
        slo_set, m, _ = cra_plus(s, track=track)
        packed, m2 = compact(slo_set)
        return packed, (m.then(m2) if track else None)

    def child(self, r) -> Ref:
        if r is True:
            return Terminal.TRUE
        if r is False:
            return Terminal.FALSE
        return self.visit(r)

    def visit(self, s: ClauseSet) -> Ref:
        self.stats.recursive_calls += 1
        s, _ = self.prepare(s)
        hit = self.store.get(s.clauses)
        if hit is not None:
            self.stats.store_hits += 1
            return hit
        v = self.select(s)
        lo = self.child(assign(s, v, False))
        hi = self.child(assign(s, v, True))
        node = Node(len(self.nodes), v, lo, hi, s.key, len(s.variables))
        self.nodes[node.id] = node
        self.store[s.clauses] = node.id
        return node.id

    def run(self, s: ClauseSet, mode: str, renaming=None) -> tuple:
        if any(len(c) == 0 for c in s.clauses):
            root: Ref = Terminal.FALSE
        elif not s.clauses:
            root = Terminal.TRUE
        else:
            with _recursion_room(len(s.variables)):
                root = self.visit(s)
        self.stats.unique_nonterminal_nodes = len(self.nodes)
        store = {self.nodes[i].residual_key: i for i in self.store.values()}
        g = FbddGraph(self.nodes, root, s.num_vars, mode, renaming, store)
        return g, self.stats


def _selector(s: ClauseSet, policy):
    if isinstance(policy, Canonical):
        return lambda r: r.variables[0]
    if isinstance(policy, RandomOrder):
        policy = Explicit(policy.permutation(s.num_vars))
    if isinstance(policy, Explicit):
        rank = {v: i for i, v in enumerate(policy.order)}
        missing = [v for v in s.variables if v not in rank]
        if missing:
            raise ValueError(f"explicit order does not cover variables {missing}")
        return lambda r: min(r.variables, key=rank.__getitem__)
    raise TypeError(f"unknown ordering policy {policy!r}")


def build_pr(s: ClauseSet, policy=Canonical()) -> tuple:
    """Returns ``(FbddGraph, BuildStats)``."""
    return _Builder(_selector(s, policy)).run(s, "pr")


def build_pr_prime(s: ClauseSet, mode: str = PER_NODE) -> tuple:
    """Returns ``(FbddGraph, BuildStats, RenamingMap)``.

    The map takes original variables to the root's renamed variables.
    """
    if mode == UPFRONT:
        renamed, m, _ = cra_plus(s)
        g, stats = _Builder(lambda r: r.variables[0]).run(renamed, UPFRONT, m)
        stats.cra_plus_invocations = 1
        return g, stats, m
    if mode == PER_NODE:
        b = _Builder(lambda r: 0, per_node=True)
        if s.clauses and all(s.clauses):
            _, root_map = b.prepare(s, track=True)
            b.stats.cra_plus_invocations = 0
        else:
            root_map = RenamingMap.identity(s.variables)
        g, stats = b.run(s, PER_NODE, root_map)
        return g, stats, root_map
    raise ValueError(f"unknown PR' mode {mode!r}")


def is_sat(g: FbddGraph) -> bool:
    seen = set()
    stack = [g.root]
    while stack:
        ref = stack.pop()
        if ref is Terminal.TRUE:
            return True
        if isinstance(ref, Terminal) or ref in seen:
            continue
        seen.add(ref)
        stack.extend(g.children(ref))
    return False


def _ref_out(ref: Ref, ids: dict):
    return ref.name if isinstance(ref, Terminal) else ids[ref]


def to_json(g: FbddGraph) -> str:
    ids = {old: new for new, old in enumerate(g.preorder())}
    nodes = []
    for old in g.preorder():
        n = g.nodes[old]
        nodes.append({
            "id": ids[old],
            "var": n.test_var,
            "lo": _ref_out(n.lo, ids),
            "hi": _ref_out(n.hi, ids),
            "residual_key": n.residual_key,
            "residual_var_count": n.residual_var_count,
        })
    doc = {
        "mode": g.mode,
        "num_vars": g.num_vars,
        "root": _ref_out(g.root, ids),
        "renaming": None if g.renaming is None else {str(k): v for k, v in sorted(g.renaming.forward.items())},
        "nodes": nodes,
    }
    return json.dumps(doc, indent=1)


def from_json(text: str) -> FbddGraph:
    doc = json.loads(text)

    def ref(x) -> Ref:
        return Terminal[x] if isinstance(x, str) else int(x)

    nodes = {}
    for d in doc["nodes"]:
        n = Node(d["id"], d["var"], ref(d["lo"]), ref(d["hi"]), d["residual_key"], d["residual_var_count"])
        nodes[n.id] = n
    renaming = doc.get("renaming")
    if renaming is not None:
        renaming = RenamingMap({int(k): v for k, v in renaming.items()})
    store = {n.residual_key: n.id for n in nodes.values()}
    return FbddGraph(nodes, ref(doc["root"]), doc["num_vars"], doc["mode"], renaming, store)


def _dot_escape(text: str) -> str:
    for ch in '\\{}|<>"':
        text = text.replace(ch, "\\" + ch)
    return text


def to_dot(g: FbddGraph) -> str:
    ids = {old: new for new, old in enumerate(g.preorder())}
    lines = ["digraph fbdd {", "  node [shape=record];"]
    for old in g.preorder():
        n = g.nodes[old]
        label = _dot_escape(f"x{n.test_var}") + "|" + _dot_escape(n.residual_key)
        lines.append(f'  n{ids[old]} [label="{{{label}}}"];')
    lines.append('  TRUE [shape=box, label="1"];')
    lines.append('  FALSE [shape=box, label="0"];')

    def name(ref: Ref) -> str:
        return ref.name if isinstance(ref, Terminal) else f"n{ids[ref]}"

    for old in g.preorder():
        n = g.nodes[old]
        lines.append(f"  n{ids[old]} -> {name(n.hi)} [style=solid];")
        lines.append(f"  n{ids[old]} -> {name(n.lo)} [style=dashed];")
    if isinstance(g.root, Terminal):
        lines.append(f"  root [shape=point]; root -> {g.root.name};")
    lines.append("}")
    return "\n".join(lines)


def export(g: FbddGraph, fmt: str = "json") -> str:
    if fmt == "json":
        return to_json(g)
    if fmt == "dot":
        return to_dot(g)
    raise ValueError(f"unknown export format {fmt!r}")
