import random

import pytest
from hypothesis import given, settings

from patternsat.cnf import ClauseSet, decode, normalize
from patternsat.fbdd import (
    PER_NODE,
    UPFRONT,
    Canonical,
    Explicit,
    RandomOrder,
    Terminal,
    build_pr,
    build_pr_prime,
    export,
    from_json,
    is_sat,
    to_dot,
    to_json,
)
from patternsat.oracle import brute_count

from conftest import clause_sets, random_clause_set

S = decode("0,4;1,2;2,3", 5)
SIX_VAR = normalize(decode("0,1,!2;1,3,4;!1,5;2,3", 6))


def nodes(s, policy=Canonical()):
    return build_pr(s, policy)[1].unique_nonterminal_nodes


@pytest.mark.parametrize("text,policy,expected", [
    ("0,4;1,2;2,3", Canonical(), 10),
    ("0,4;1,2;2,3", Explicit((2, 1, 3, 0, 4)), 5),
    ("1,2;2,3", Canonical(), 4),
    ("0,4;1,2", Canonical(), 6),
    ("0,1;0,2;3,4", Canonical(), 5),
    ("0,1;0,2", Canonical(), 3),
])
def test_small_node_counts(text, policy, expected):
    assert nodes(decode(text, 5), policy) == expected


def test_empty_and_contradiction():
    g, stats = build_pr(ClauseSet((), 3))
    assert g.root is Terminal.TRUE and stats.unique_nonterminal_nodes == 0
    assert is_sat(g)
    g, _ = build_pr(decode("0;!0", 1))
    assert not is_sat(g)
    g, _ = build_pr(ClauseSet(((),), 2))
    assert g.root is Terminal.FALSE


def test_single_clause_prime():
    g, stats, m = build_pr_prime(decode("0", 1), PER_NODE)
    assert len(g) == 1
    node = g.nodes[g.root]
    assert (node.lo, node.hi) == (Terminal.FALSE, Terminal.TRUE)
    assert m.is_identity()
    assert stats.cra_plus_invocations == 1


def test_six_var_per_node():
    g, stats, _ = build_pr_prime(SIX_VAR, PER_NODE)
    assert stats.unique_nonterminal_nodes == 6
    assert stats.store_hits == 1
    assert stats.recursive_calls == 7
    assert is_sat(g)


def test_six_var_upfront_is_fbdd_over_renamed_vars():
    g, stats, m = build_pr_prime(SIX_VAR, UPFRONT)
    assert stats.cra_plus_invocations == 1
    assert _read_once(g)
    assert brute_count(m.apply(SIX_VAR)) == brute_count(SIX_VAR)
    assert g.nodes[g.root].residual_key == "!0,1;2,3;0,!2,4;0,3,5"


def test_explicit_order_errors():
    with pytest.raises(ValueError, match="does not cover"):
        build_pr(S, Explicit((0, 1, 2)))
    with pytest.raises(TypeError):
        build_pr(S, "canonical")
    with pytest.raises(ValueError):
        build_pr_prime(S, "sideways")


def test_explicit_selects_first_listed_occurring_var():
    g, _ = build_pr(decode("3,4", 5), Explicit((0, 1, 4, 2, 3)))
    assert g.nodes[g.root].test_var == 4


def test_random_order_is_seeded():
    assert RandomOrder(3).permutation(8) == RandomOrder(3).permutation(8)
    assert sorted(RandomOrder(3).permutation(8)) == list(range(8))


def _read_once(g) -> bool:
    def walk(ref, seen):
        if isinstance(ref, Terminal):
            return True
        n = g.nodes[ref]
        if n.test_var in seen:
            return False
        seen = seen | {n.test_var}
        return walk(n.lo, seen) and walk(n.hi, seen)

    return walk(g.root, frozenset())


def _random_instances(count, seed):
    rng = random.Random(seed)
    for _ in range(count):
        n = rng.randint(2, 12)
        k = rng.choice([2, 3])
        yield random_clause_set(rng, n, rng.randint(1, 3 * n), k)


def test_decision_soundness_all_builders():
    for s in _random_instances(300, 11):
        sat = brute_count(s) > 0
        graphs = [
            build_pr(s, Canonical())[0],
            build_pr(s, RandomOrder(5))[0],
            build_pr(s, Explicit(tuple(reversed(range(s.num_vars)))))[0],
            build_pr_prime(s, UPFRONT)[0],
            build_pr_prime(s, PER_NODE)[0],
        ]
        assert all(is_sat(g) == sat for g in graphs)


def test_read_once_pr_and_upfront():
    for s in _random_instances(150, 12):
        assert _read_once(build_pr(s, Canonical())[0])
        assert _read_once(build_pr(s, RandomOrder(1))[0])
        assert _read_once(build_pr_prime(s, UPFRONT)[0])


def test_store_soundness():
    for s in _random_instances(100, 13):
        for g, stats in (build_pr(s), build_pr_prime(s, PER_NODE)[:2]):
            keys = [n.residual_key for n in g.nodes.values()]
            assert len(keys) == len(set(keys))
            assert stats.unique_nonterminal_nodes == len(g.nodes)
            # every call either creates a node or hits the store
            assert stats.recursive_calls == len(g.nodes) + stats.store_hits
            assert all(n.residual_var_count >= 1 for n in g.nodes.values())
            assert set(g.store.values()) == set(g.nodes)


def test_determinism():
    for s in _random_instances(30, 14):
        assert to_json(build_pr(s, RandomOrder(9))[0]) == to_json(build_pr(s, RandomOrder(9))[0])
        assert to_json(build_pr_prime(s)[0]) == to_json(build_pr_prime(s)[0])


def test_json_round_trip_100_graphs():
    builders = [
        lambda s: build_pr(s)[0],
        lambda s: build_pr_prime(s, UPFRONT)[0],
        lambda s: build_pr_prime(s, PER_NODE)[0],
    ]
    for i, s in enumerate(_random_instances(100, 15)):
        text = to_json(builders[i % 3](s))
        assert to_json(from_json(text)) == text


def test_json_round_trip_preserves_semantics():
    g = build_pr(S)[0]
    h = from_json(to_json(g))
    assert len(h) == len(g)
    for r in range(32):
        a = {i: bool(r >> (4 - i) & 1) for i in range(5)}
        assert h.evaluate(a) == g.evaluate(a)


def test_dot_records():
    dot = to_dot(build_pr(decode("0", 1))[0])
    assert dot.count("[label=\"{") == 1
    assert dot.count("-> TRUE") == 1 and dot.count("-> FALSE") == 1
    assert "style=solid" in dot and "style=dashed" in dot

    dot = export(build_pr(S, Explicit((2, 1, 3, 0, 4)))[0], "dot")
    assert dot.count("[label=\"{") == 5


def test_dot_labels_carry_residual_keys():
    dot = to_dot(build_pr(decode("!0,1", 2))[0])
    assert "!0,1" in dot


def test_export_rejects_format():
    with pytest.raises(ValueError):
        export(build_pr(S)[0], "png")


def test_per_node_graph_refuses_evaluate():
    g, _, _ = build_pr_prime(S, PER_NODE)
    with pytest.raises(ValueError):
        g.evaluate({i: True for i in range(5)})


@given(clause_sets(max_vars=9, max_clauses=10))
@settings(max_examples=100, deadline=None)
def test_ordering_invariance_of_truth(s):
    s = normalize(s)
    results = {is_sat(build_pr(s, p)[0]) for p in (Canonical(), RandomOrder(0), RandomOrder(1))}
    results.add(is_sat(build_pr_prime(s, PER_NODE)[0]))
    assert len(results) == 1
