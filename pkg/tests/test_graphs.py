import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from poissonoperad import graphs as G
from poissonoperad import perm as P
from poissonoperad.suites import cooperad_instance, golden_graphs

TEN = G.Graph.parse("10; 1->4, 2->3, 4->5, 5->8, 6->10, 8->9")


def _forest_oracle(n, edges):
    """Union-find free check: a multigraph is a forest iff #edges = n - #components."""
    adj = {v: set() for v in range(1, n + 1)}
    for a, b in edges:
        adj[a].add(b)
        adj[b].add(a)
    seen, comps = set(), 0
    for v in adj:
        if v in seen:
            continue
        comps += 1
        stack = [v]
        while stack:
            w = stack.pop()
            if w not in seen:
                seen.add(w)
                stack.extend(adj[w] - seen)
    return len(edges) == n - comps


def _brute_count(n):
    directed = [(a, b) for a in range(1, n + 1) for b in range(1, n + 1) if a != b]
    total = 0
    for r in range(n):
        for chosen in itertools.combinations(directed, r):
            if _forest_oracle(n, chosen):
                total += 1
    return total


@pytest.mark.parametrize("n,count", [(1, 1), (2, 3), (3, 19), (4, 201)])
def test_acyclic_counts(n, count):
    assert len(G.enumerate_acyclic(n)) == count
    assert _brute_count(n) == count


def test_enumeration_bound():
    with pytest.raises(ValueError):
        G.enumerate_acyclic(9)


def test_double_edges_and_tadpoles():
    assert not G.is_acyclic(G.Graph.parse("2; 1->2, 1->2"))
    assert not G.is_acyclic(G.Graph.parse("2; 1->2, 2->1"))
    with pytest.raises(ValueError):
        G.Graph.parse("2; 1->1")
    # undirected cycle without a consistent orientation
    g = G.Graph.parse("2; 1->2, 1->2")
    assert G.oriented_cycles(g, 3) == []
    assert len(G.oriented_cycles(G.Graph.parse("3; 1->2, 2->3, 3->1"), 3)) == 1
    assert G.oriented_cycles(G.Graph.parse("3; 1->2, 2->3, 3->1"), 2) == []


def test_cocomposition_of_ten_graph():
    co = G.cocompose(TEN, (2, 4, 1, 3))
    assert str(co.outer) == "4; 1->2, 1->2, 2->4, 2->4"
    assert [str(g) for g in co.inner] == ["2; ", "4; 2->3", "1; ", "3; 1->2"]
    # the other cocomposition pieces: clasping by the single-block partition etc.
    assert str(G.cocompose(TEN, (10,)).inner[0]) == str(TEN)
    assert str(G.cocompose(TEN, (1,) * 10).outer) == str(TEN)


def test_external_connectedness_of_ten_graph():
    for k in range(1, 11):
        expected = set() if k in (7, 9) else {1, 2, 4}
        assert G.externally_connected(TEN, (2, 4, 1, 3), k) == expected


def test_relabeling_example():
    g = G.Graph.parse("5; 1->2, 1->3, 4->1, 5->4")
    sigma = P.from_cycles("(12)(354)", 5)
    assert str(G.permute_graph(sigma, g)) == "5; 2->1, 2->5, 3->2, 4->3"


def test_component_permutation_example():
    g = G.Graph.parse("5; 1->3, 2->4")
    sigma = P.from_cycles("(145)(23)", 5)
    assert G.induced_component_permutation(sigma, g) == P.from_cycles("(132)", 3)


def test_rho_example():
    assert G.rho_permutation(G.Graph.parse("7; 1->5, 3->4, 6->7"), 4, 3) == (3, 1, 4, 2)


def test_rho_undefined_on_cyclic_clasp():
    with pytest.raises(G.UndefinedPermutation):
        G.rho_permutation(G.Graph.parse("4; 1->2, 1->3"), 2, 2)


def test_golden_file_replays():
    assert all(g["ok"] for g in golden_graphs())


def test_zero_size_groups():
    co = G.cocompose(G.Graph.parse("2; 1->2"), (0, 2, 0))
    assert co.outer == G.edgeless(3) and str(co.inner[1]) == "2; 1->2"


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 10**6))
def test_cooperad_laws(seed):
    assert cooperad_instance(random.Random(seed)) == []


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10**6))
def test_component_permutation_property(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 7)
    g = G.random_graph(rng, n, acyclic=True)
    sigma = tuple(rng.sample(range(1, n + 1), n))
    tilde = G.induced_component_permutation(sigma, g)
    comps = G.connected_components(g)
    new = G.connected_components(G.permute_graph(sigma, g))
    for k, comp in enumerate(new, 1):
        assert comp == frozenset(sigma[v - 1] for v in comps[tilde[k - 1] - 1])
    # left action
    tau = tuple(rng.sample(range(1, n + 1), n))
    assert G.permute_graph(P.compose(tau, sigma), g) == G.permute_graph(tau, G.permute_graph(sigma, g))
