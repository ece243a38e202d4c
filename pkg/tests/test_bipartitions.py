import random

import pytest
from hypothesis import given, settings, strategies as st

from tangleforge.bipartitions import (CARDINALITY, COUNTING, BipError, BipTreeSet, ChainFamily, StarFamily,
                                      Subset, SymbolicSet, dichotomy, forced_orientation_witness,
                                      graph_to_bipartitions, is_nested_bip, verify_witness)
from tangleforge.fixtures import fixture
from tangleforge.pipeline import starting_tree_set
from tangleforge.principal import TreeSet

from helpers import random_bip_tree_set

N = 40      # truncation used by the concrete reference


def concrete(Z, n=N):
    """Z restricted to the first n indices of every class, as a plain set."""
    out = {("named", x) for x in Z.named}
    for c, cof, idx in Z.parts:
        out |= {(c, i) for i in range(n) if (i not in idx if cof else i in idx)}
    return out


def random_subset(rng, K):
    named = [x for x in K.named if rng.random() < 0.5]
    parts = {c: (rng.random() < 0.5, rng.sample(range(8), rng.randint(0, 3))) for c in K.classes}
    return Subset.make(K, named, parts)


K2 = SymbolicSet(("a", "b"), ("c", "d"))


# ---------------------------------------------------------------- subset algebra against plain sets

@settings(max_examples=80, deadline=None)
@given(st.integers(0, 10_000))
def test_subset_algebra_matches_plain_sets(seed):
    rng = random.Random(seed)
    A, B = random_subset(rng, K2), random_subset(rng, K2)
    full = concrete(K2.full())
    assert concrete(A | B) == concrete(A) | concrete(B)
    assert concrete(A & B) == concrete(A) & concrete(B)
    assert concrete(A - B) == concrete(A) - concrete(B)
    assert concrete(A.complement()) == full - concrete(A)
    # indices past 8 are generic, so the truncation decides inclusion
    assert (A <= B) == (concrete(A) <= concrete(B))
    assert A.is_empty() == (not concrete(A))
    assert A.complement().complement() == A


def test_subset_errors_and_describe():
    with pytest.raises(BipError):
        Subset.make(K2, ["zzz"], {})
    with pytest.raises(BipError):
        K2.full().part("nope")
    Z = Subset.make(K2, ["a"], {"c": (True, [1]), "d": (False, [0, 2])})
    assert Z.describe() == {"named": ["a"], "classes": {"c": {"all_but": [1]}, "d": {"only": [0, 2]}}}
    assert Z.is_infinite() and not Z.is_full()


# ---------------------------------------------------------------- hand examples

def chain_example():
    K = SymbolicSet(("a", "b"), ("c",))
    base = Subset.make(K, ["a"], {"c": (True, ())})
    named = [Subset.make(K, ["a"], {}), Subset.make(K, ["b"], {})]
    return BipTreeSet(K, named, [ChainFamily(base, "c")], [])


def test_chain_members_decrease():
    T = chain_example()
    ch = T.chains[0]
    for n in range(5):
        assert ch.member(n + 1) <= ch.member(n) and ch.member(n) != ch.member(n + 1)
        assert ch.limit() <= ch.member(n)
    assert concrete(ch.limit()) == {("named", "a")}


def test_chain_witness():
    T = chain_example()
    assert T.is_nested() and T.is_regular()
    assert dichotomy(T).kind == "omega-chain"
    w = forced_orientation_witness(T)
    assert w.kind == "omega-chain" and CARDINALITY in w.notes
    assert verify_witness(T, w) == []
    # {b} lies outside the chain: it is forced to its complement
    b = T.named[1]
    (_, W, _k), = [o for o in w.orientation if o[0] == b]
    assert W == b.complement()


def test_star_witness():
    K = SymbolicSet(("a",), ("c",))
    T = BipTreeSet(K, [Subset.make(K, ["a"], {})], [], [StarFamily(K, "c", block=2)])
    assert T.is_nested() and T.is_regular()
    w = forced_orientation_witness(T)
    assert w.kind == "infinite-star"
    assert verify_witness(T, w) == []
    assert all(W.is_infinite() for _Z, W, _k in w.orientation)


def test_finite_tree_set_reports_counting():
    K = SymbolicSet(("a", "b", "c"), ())
    T = BipTreeSet(K, [Subset.make(K, ["a"], {}), Subset.make(K, ["a", "b"], {})])
    assert dichotomy(T).kind == "finite"
    with pytest.raises(BipError) as err:
        forced_orientation_witness(T)
    assert COUNTING in str(err.value)


def test_irregular_rejected():
    K = SymbolicSet(("a",), ())
    with pytest.raises(BipError, match="regular"):
        dichotomy(BipTreeSet(K, [K.empty()]))


def test_crossing_tree_set_rejected():
    T = chain_example()
    T.stars.append(StarFamily(T.K, "c", block=2))
    assert not T.is_nested()
    with pytest.raises(BipError, match="not nested"):
        dichotomy(T)


def test_star_with_a_coarser_named_member():
    # {c_0, c_1} swallows the first two blocks: K - {c_0, c_1} replaces them in the splitting star
    K = SymbolicSet((), ("c",))
    odd = Subset.make(K, (), {"c": (False, [0, 1])})
    T = BipTreeSet(K, [odd], [], [StarFamily(K, "c")])
    w = forced_orientation_witness(T)
    assert verify_witness(T, w) == []
    star = T.stars[0]
    assert odd.complement() in w.filter_base
    assert star.member(0) not in w.filter_base and star.member(2) in w.filter_base
    (_, W, _k), = [o for o in w.orientation if o[0] == odd]
    assert W == odd.complement()


def test_nested_check_looks_past_the_representatives():
    T = chain_example()
    K = T.K
    # {a, c_13} sits inside Z_0..Z_13 but crosses Z_14 = {a} + c minus its first 14
    T.named.append(Subset.make(K, ["a"], {"c": (False, [13])}))
    assert all(is_nested_bip(T.named[-1], Y) for Y in T.representatives())
    assert not T.is_nested()


def test_verify_catches_a_bad_witness():
    T = chain_example()
    w = forced_orientation_witness(T)
    Z, W, k = w.orientation[0]
    w.orientation[0] = (Z, W.complement(), k)
    assert verify_witness(T, w)


# ---------------------------------------------------------------- random families

@st.composite
def tree_sets(draw):
    kind = draw(st.sampled_from(["chain", "star"]))
    return random_bip_tree_set(random.Random(draw(st.integers(0, 10**6))), kind)


@settings(max_examples=60, deadline=None)
@given(tree_sets())
def test_random_witnesses(T):
    assert T.is_nested()
    if not T.is_regular():
        with pytest.raises(BipError):
            dichotomy(T)
        return
    w = forced_orientation_witness(T)
    assert verify_witness(T, w) == []
    # reference: every filter element is large in the truncation, every forced side contains it
    for F in w.filter_base:
        assert len(concrete(F) - concrete(F, 20)) > 0
    for _Z, W, k in w.orientation:
        assert concrete(W) >= concrete(w.filter_base[k])


# ---------------------------------------------------------------- from graphs

@pytest.mark.parametrize("name", ["fig2", "fig2-split", "tree3", "mixed"])
def test_graph_tree_sets(name):
    st_ = starting_tree_set(fixture(name), crit_only=True)
    f = st_.frame
    for X in f.crit_sets():
        if not any(Y == X for Y, _a in st_.T.families):
            continue
        B = graph_to_bipartitions(st_.T, X)
        assert B.is_nested() and B.is_regular()
        assert dichotomy(B).kind == "infinite-star"
        assert verify_witness(B, forced_orientation_witness(B)) == []


def test_graph_to_bipartitions_rejects_non_critical():
    st_ = starting_tree_set(fixture("fig2"), crit_only=True)
    with pytest.raises(BipError, match="not critical"):
        graph_to_bipartitions(st_.T, frozenset({("c", "u")}))


def test_empty_graph_tree_set():
    f = fixture("fig2").frame(4)
    X = frozenset({("c", "x1"), ("c", "x2")})
    B = graph_to_bipartitions(TreeSet(f, []), X)
    assert B.named == [] and B.stars == [] and B.skipped == 0
    assert dichotomy(B).kind == "finite"
