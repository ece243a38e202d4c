import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from tangleforge.sepcore import (SepError, SepSystem, classify, consistent_orientations, down_closure,
                                 edge_tree_set, is_consistent, is_nested, is_nested_set, is_regular,
                                 is_star, is_tree_set, splitting_stars, tree_from_tree_set)


def bipartitions(V):
    """All set separations (A, B) with A | B = V, ordered by (A <= C and B >= D)."""
    V = frozenset(V)
    items = sorted(V)
    elems = []
    for a_mask in range(1 << len(items)):
        for b_mask in range(1 << len(items)):
            A = frozenset(x for i, x in enumerate(items) if a_mask >> i & 1)
            B = frozenset(x for i, x in enumerate(items) if b_mask >> i & 1)
            if A | B == V:
                elems.append((A, B))
    return SepSystem(elems, {(A, B): (B, A) for A, B in elems},
                     lambda r, s: r[0] <= s[0] and r[1] >= s[1])


def fs(*xs):
    return frozenset(xs)


@pytest.fixture(scope="module")
def sys3():
    return bipartitions({1, 2, 3})


def test_well_formed(sys3):
    assert sys3.check() == []


def test_degenerate_and_small(sys3):
    V = fs(1, 2, 3)
    assert classify(sys3, (V, V)) == "degenerate"
    assert classify(sys3, (fs(), V)) in ("small", "trivial")
    assert sys3.leq((fs(), V), (V, fs()))


def test_small_is_exactly_A_V(sys3):
    V = fs(1, 2, 3)
    for A, B in sys3.elements:
        assert (classify(sys3, (A, B)) in ("small", "trivial", "degenerate")) == (B == V)


def test_classification_implications(sys3):
    for s in sys3.elements:
        c = classify(sys3, s)
        if c in ("degenerate", "trivial"):
            assert sys3.leq(s, sys3.inv[s])


def test_unknown_element(sys3):
    with pytest.raises(SepError):
        classify(sys3, "nope")


def test_path_edge_is_proper():
    sys = edge_tree_set("abc", [("a", "b"), ("b", "c")])
    assert len(sys) == 4
    assert classify(sys, ("a", "b")) == "proper"
    # documented order on the 3-vertex path: (a,b) < (b,c) and (c,b) < (b,a)
    assert sys.leq(("a", "b"), ("b", "c"))
    assert sys.leq(("c", "b"), ("b", "a"))
    assert not sys.leq(("a", "b"), ("c", "b"))
    assert not sys.leq(("b", "a"), ("b", "c"))


def test_crossing_bipartitions():
    sys = bipartitions({1, 2, 3, 4})
    a = (fs(1, 2), fs(3, 4))
    b = (fs(1, 3), fs(2, 4))
    assert not is_nested(sys, a, b)
    assert is_nested(sys, a, a)


def test_partial_orientation_error():
    sys = edge_tree_set("ab", [("a", "b")])
    with pytest.raises(SepError):
        is_consistent(sys, [("a", "b"), ("b", "a")])


def test_star_tree_pointing_away_is_inconsistent():
    sys = edge_tree_set("cxyz", [("c", "x"), ("c", "y"), ("c", "z")])
    # (c,x) points to x; its inverse (x,c) lies below (c,y)
    away = [("c", "x"), ("c", "y"), ("c", "z")]
    assert not is_consistent(sys, away)
    toward = [("x", "c"), ("y", "c"), ("z", "c")]
    assert is_consistent(sys, toward)


def test_single_separation_stars():
    sys = edge_tree_set("ab", [("a", "b")])
    stars = splitting_stars(sys)
    assert sorted(map(sorted, stars)) == [[("a", "b")], [("b", "a")]]


def test_empty_tree_set_single_node():
    sys = SepSystem([], {}, set())
    ids, edges, stars = tree_from_tree_set(sys)
    assert ids == [0] and edges == []


def random_tree(seed, n):
    if n == 1:
        return nx.empty_graph(1)
    return nx.random_labeled_tree(n, seed=seed) if hasattr(nx, "random_labeled_tree") \
        else nx.random_tree(n, seed=seed)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 10), st.integers(0, 10_000))
def test_edge_tree_set_properties(n, seed):
    T = random_tree(seed, n)
    nodes, edges = list(T.nodes), list(T.edges)
    sys = edge_tree_set(nodes, edges)
    assert sys.check() == []
    assert is_nested_set(sys, sys.elements)
    assert is_tree_set(sys) and is_regular(sys)
    stars = splitting_stars(sys)
    expected = {frozenset((x, t) for x in T.neighbors(t)) for t in nodes}
    assert set(stars) == expected
    for s in stars:
        assert is_star(sys, s)
        assert is_consistent(sys, down_closure(sys, s))
    # each consistent orientation is the down-closure of exactly one splitting star
    for O in consistent_orientations(sys):
        assert sum(1 for s in stars if down_closure(sys, s) == O) == 1
    ids, tedges, _ = tree_from_tree_set(sys)
    R = nx.Graph()
    R.add_nodes_from(ids)
    R.add_edges_from(tedges)
    assert nx.is_isomorphic(R, T)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10_000))
def test_classify_stable_under_relabelling(seed):
    T = random_tree(seed, 6)
    sys = edge_tree_set(list(T.nodes), list(T.edges))
    rename = {v: f"v{v}" for v in T.nodes}
    sys2 = edge_tree_set([rename[v] for v in T.nodes], [(rename[a], rename[b]) for a, b in T.edges])
    for x, y in sys.elements:
        assert classify(sys, (x, y)) == classify(sys2, (rename[x], rename[y]))

