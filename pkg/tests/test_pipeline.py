import random
from itertools import combinations

import pytest

from tangleforge.checks import decompose_suite, lift_suite, tough_suite
from tangleforge.corridor import CorridorError, walked_corridor
from tangleforge.fixtures import fixture, random_model
from tangleforge.pipeline import (PipelineError, distinguishing_tree_set, end_tree_set, find_pointer, is_tough,
                                  member_for_critical_separator, orientation_from_Z, starting_tree_set,
                                  tough_torso_decomposition)
from tangleforge.symgraph import crit, fmt_ref
from tangleforge.tangles import TanglePoint, distinction_order, distinguishes, min_order_separator, tangle_points


def c(*names):
    return frozenset(("c", n) for n in names)


@pytest.mark.parametrize("name", ["fig2", "tree3", "mixed", "three-ends"])
def test_fixture_decompositions(name):
    G = fixture(name)
    D = distinguishing_tree_set(G)
    assert decompose_suite(G, D=D) == []
    assert lift_suite(D) == []
    n = len(D.points)
    assert len(D.certificates) == n * (n - 1) // 2


def test_fig2_orders():
    D = distinguishing_tree_set(fixture("fig2"))
    (cert,) = D.certificates
    assert cert["order"] == 2 and D.runs == []
    assert cert["sep"] in D.start.T.members


def test_tree3_needs_only_T():
    D = distinguishing_tree_set(fixture("tree3"))
    assert D.runs == []
    for cert in D.certificates:
        assert cert["order"] == 1


def test_random_models_sweep():
    for seed in range(20):
        G = random_model(random.Random(1000 + seed))
        D = distinguishing_tree_set(G)
        assert decompose_suite(G, D=D) == [], seed
        assert lift_suite(D) == [], seed


def test_member_for_critical_separator():
    st = starting_tree_set(fixture("fig2"))
    tX, tY = TanglePoint.crit(c("x1", "x2")), TanglePoint.crit(c("x1", "y2"))
    s = member_for_critical_separator(st.T, tX, tY, c("x1", "x2"))
    assert s.sep == c("x1", "x2") and distinguishes(s, tX, tY)
    # {x1} lies in a critical set; {u} does not
    assert member_for_critical_separator(st.T, tX, tY, c("u")) is None


def test_member_for_critical_separator_error():
    st = starting_tree_set(fixture("mixed"))
    with pytest.raises(PipelineError, match="no member") as err:
        member_for_critical_separator(st.T, TanglePoint.end("R"), TanglePoint.end("S"), c("p1", "p2"))
    assert err.value.dump["pair"] == ["End(R)", "End(S)"]


def test_orientation_from_Z_errors():
    st = starting_tree_set(fixture("fig2"))
    with pytest.raises(PipelineError, match="inside a critical"):
        orientation_from_Z(st.T, c("x1"))
    st = starting_tree_set(fixture("path-ray"))
    with pytest.raises(PipelineError, match="not generous"):
        orientation_from_Z(st.T, c("q1"))


def test_orientation_from_Z_three_ends():
    st = starting_tree_set(fixture("three-ends"))
    O = orientation_from_Z(st.T, c("a"))
    assert c("a") <= O.part()


def test_end_tree_set_three_ends():
    D = distinguishing_tree_set(fixture("three-ends"))
    run = D.runs[0]
    TH = end_tree_set(run.MT)
    f = run.MT.frame
    ends = run.MT.end_points()
    assert len(ends) == 3
    for a, b in combinations(ends, 2):
        d = distinction_order(f, a, b, cuttable=run.MT.cuttable())
        assert any(s.order == d and distinguishes(s, a, b) for s in TH)


def test_find_pointer_sweep():
    found = 0
    for seed in range(100, 220):
        D = distinguishing_tree_set(random_model(random.Random(seed)))
        runs = {r.Z: r for r in D.runs}
        for t1, t2 in combinations(D.points, 2):
            _k, zs = min_order_separator(D.frame, t1, t2)
            run = runs.get(zs.sep)
            if run is None:
                continue
            for t in (t1, t2):
                try:
                    i = walked_corridor(run.MT, t)
                except CorridorError:
                    continue
                if i is None:
                    with pytest.raises(CorridorError, match="closure of the part"):
                        find_pointer(run, t, zs)
                    continue
                out = find_pointer(run, t, zs)
                assert out["corridor"] == i and out["pointer"], seed
                found += 1
    assert found >= 20


def test_find_pointer_in_part():
    D = distinguishing_tree_set(fixture("three-ends"))
    run = D.runs[0]
    t = TanglePoint.end("R1")
    with pytest.raises(CorridorError, match="closure of the part"):
        find_pointer(run, t, D.members[0])


# ---------------------------------------------------------------- toughness

def test_tree3_torsos_are_tough():
    R = tough_torso_decomposition(fixture("tree3"))
    assert set(R.separators()) == set(R.start.frame.crit_sets())
    assert R.torsos and all(e["tough"] for e in R.torsos)
    assert not is_tough(fixture("tree3"))
    assert tough_suite(fixture("tree3")) == []


def test_finite_model_is_one_tough_torso():
    R = tough_torso_decomposition(fixture("c4"))
    assert len(R.torsos) == 1
    (entry,) = R.torsos
    assert entry["point"] is None and entry["tough"]
    assert crit(fixture("c4")) == []


@pytest.mark.parametrize("name", ["fig2", "mixed", "three-ends"])
def test_tough_suite_fixtures(name):
    assert tough_suite(fixture(name)) == []


def test_tough_sweep():
    for seed in range(30):
        G = random_model(random.Random(2000 + seed))
        assert tough_suite(G) == [], seed


def test_invalid_model_rejected():
    from tangleforge.symgraph import ModelError, SymbolicGraph
    G = SymbolicGraph.from_dict({"core": {"vertices": ["a", "b"], "edges": []}})
    with pytest.raises(ModelError):
        distinguishing_tree_set(G)


def test_points_listed():
    D = distinguishing_tree_set(fixture("mixed"))
    assert sorted(p.label() for p in D.points) == ["Crit({p1,p2})", "End(R)", "End(S)"]
    assert [fmt_ref(v) for v in D.frame.sorted(c("p1", "p2"))] == ["p1", "p2"]
    assert tangle_points(D.start.Gc) == D.points
