"""Verification suites shared by the CLI and the test-suite.

Each suite returns a list of problem strings; an empty list means pass.
Symbolic answers come from the frame engine, reference answers from
`oracle` on finite expansions.
"""
from __future__ import annotations

import random
from itertools import combinations

from . import oracle
from .corridor import (corridor_membership_matches_region, corridors_partition_outside, lift,
                       overlapping_members_comparable, tangle_proxy)
from .pipeline import (distinguishing_tree_set, starting_tree_set, tough_torso_decomposition)
from .principal import (down_closure, interior, is_admissible, is_star_set, orientation_is_consistent,
                        proper_region_orientation, sigma_star)
from .symgraph import GraphSeparation, expand, fmt_ref, is_nested_pair, sep_le
from .tangles import TanglePoint, anchor_nodes, distinguishes, is_tame, orient, tangle_points

SUITES = ("expansion", "treeset", "decompose", "tough", "lifts")


def _fmt(f, X):
    return "{" + ",".join(fmt_ref(v) for v in f.sorted(X)) + "}"


# ---------------------------------------------------------------- expansion equivalence

def _probe_sets(f, E, k, rng, samples):
    ok = [v for v in f.sorted(f.concrete) if v in E.adj and f.touched_indices([v]) <= k - 2]
    out = [X for X in f.crit_sets() if f.touched_indices(X) <= k - 2]
    out.append(frozenset())
    for _ in range(samples):
        if not ok:
            break
        size = rng.randint(1, min(2, len(ok)))
        X = frozenset(rng.sample(ok, size))
        if X not in out:
            out.append(X)
    return out


def _visible(f, cs, k):
    """Every component of G - X still has vertices in the expansion."""
    return all(f.project_set(c, k) for c in cs.comps)


def expansion_suite(G, k, rng=None, m=4, samples=6):
    rng = rng or random.Random(0)
    f = G.frame(m)
    E = expand(G, k)
    E2 = expand(G, k + 1)
    probs = []
    probes = _probe_sets(f, E, k, rng, samples)
    for X in probes:
        cs = f.components(X)
        actual = set(oracle.components(E, X))
        expected = set()
        residual = []
        for c in cs.comps:
            if cs.is_family(c):
                residual.append(next(iter(c)))
            else:
                P = f.project_set(c, k)
                if P:
                    expected.add(P)
        rest = actual - expected
        if not expected <= actual:
            probs.append(f"components of G - {_fmt(f, X)} differ at k={k}")
            continue
        for a in residual:
            inst = f.project_set([a], k)
            mine = [c for c in rest if c <= inst]
            if len(mine) != max(0, k - m) or frozenset().union(*mine) != inst:
                probs.append(f"family {fmt_ref(a)} at {_fmt(f, X)} has {len(mine)} instances at k={k}")
            rest -= set(mine)
        if rest:
            probs.append(f"unexplained components of G - {_fmt(f, X)} at k={k}")
        hat_exp = {f.project_set(c, k) for c in cs.hat() if not cs.is_family(c)} - {frozenset()}
        hat_act = set(oracle.hat(E, X))
        if not hat_exp <= hat_act or any(not any(h <= f.project_set([a], k) for a in residual)
                                         for h in hat_act - hat_exp):
            probs.append(f"hat set of {_fmt(f, X)} differs at k={k}")
        if X:
            grows = len(oracle.hat(E2, X)) > len(hat_act)
            if grows != f.is_critical(X):
                probs.append(f"criticality of {_fmt(f, X)} differs at k={k}")
    # order and orientation on separations whose components are all visible
    seps = []
    for X in probes:
        cs = f.components(X)
        if not _visible(f, cs, k) or len(cs.comps) > 8:
            continue
        for _ in range(2):
            side = frozenset().union(*[c for c in cs.comps if rng.random() < 0.5])
            seps.append(GraphSeparation(f, X, side))
    for s, t in combinations(seps, 2):
        As, Bs = f.project_set(s.A, k), f.project_set(s.B, k)
        At, Bt = f.project_set(t.A, k), f.project_set(t.B, k)
        if sep_le(s, t) != (As <= At and Bs >= Bt):
            probs.append(f"order of {_fmt(f, s.sep)} and {_fmt(f, t.sep)} differs at k={k}")
    pts = [p for p in tangle_points(G, m=m) if p.kind == "end" or f.touched_indices(p.X) <= k - 2]
    for s in seps:
        comps = oracle.components(E, s.sep)
        for p in pts:
            if p.kind == "crit":
                if p.X <= s.sep or not is_tame(s):
                    continue
            where = oracle.locate(G, E, comps, p, s.sep, k)
            o = orient(p, s)
            side = o.side if o is s else s.co_side
            if not where <= f.project_set(side, k):
                probs.append(f"orientation of {p.label()} by {_fmt(f, s.sep)} differs at k={k}")
    return probs


# ---------------------------------------------------------------- starting tree set

def treeset_suite(G, m=4):
    probs = []
    st = starting_tree_set(G, m)
    f, adm, T = st.frame, st.adm, st.T
    if not is_admissible(adm, strong=True):
        probs.append("admissible predicate fails")
    for X in adm.members:
        if len(adm.hat(X)) - len(adm.chosen(X)) > 1:
            probs.append(f"more than one exclusion at {_fmt(f, X)}")
    if not T.is_nested():
        probs.append("T is not nested")
    if not T.is_regular():
        probs.append("T is not regular")
    for X in adm.members:
        star, fams = sigma_star(f, adm, X)
        if not is_star_set(star):
            probs.append(f"sigma at {_fmt(f, X)} is not a star")
        if interior(f, star) - set(fams) != X:
            probs.append(f"sigma at {_fmt(f, X)} has the wrong interior")
        try:
            O = down_closure(T, star)
        except Exception as exc:
            probs.append(f"down-closure of sigma at {_fmt(f, X)} fails: {exc}")
            continue
        if not orientation_is_consistent(O):
            probs.append(f"down-closure of sigma at {_fmt(f, X)} is inconsistent")
    P = proper_region_orientation(T, adm)
    if P and not orientation_is_consistent(P):
        probs.append("partial orientation by proper regions is inconsistent")
    return probs


# ---------------------------------------------------------------- distinguishing tree set

def decompose_suite(G, m=4, max_points=4, oracle_k=6, max_order=4, D=None):
    probs = []
    D = D or distinguishing_tree_set(G, m)
    if not D.is_nested():
        probs.append("T' is not nested")
    if not D.all_tame():
        probs.append("T' has a member that is not tame")
    for fail in D.failures:
        probs.append(f"pair {fail['pair']} not certified")
    keys = {s.unoriented() for s in D.members}
    check_oracle = len(D.points) <= max_points
    for c in D.certificates:
        if c["sep"].unoriented() not in keys:
            probs.append("certificate refers to a separation outside T'")
        if c["order"] != c["distinction_order"] or not distinguishes(c["sep"], c["t1"], c["t2"]):
            probs.append(f"certificate for {c['t1'].label()},{c['t2'].label()} is not efficient")
        if check_oracle:
            ref = oracle.distinction_order(G, c["t1"], c["t2"], max_order=max_order, k=oracle_k)
            if ref != c["order"]:
                probs.append(f"{c['t1'].label()},{c['t2'].label()}: order {c['order']} but oracle {ref}")
    return probs


# ---------------------------------------------------------------- lifts

def lift_suite(D):
    probs = []
    T = D.start.T
    lifted = []
    for run in D.runs:
        MT = run.MT
        for s, ls in zip(run.TH, run.lifts):
            if frozenset(MT.node[v[1]] for v in s.sep) != ls.sep:
                probs.append("lift changed the separator")
            if not is_tame(ls):
                probs.append(f"lift at {_fmt(ls.frame, ls.sep)} is not tame")
            for t in T.members:
                if not is_nested_pair(ls, t):
                    probs.append(f"lift at {_fmt(ls.frame, ls.sep)} crosses T")
            again = lift(MT, s, check=True)
            if again != ls:
                probs.append("lift is not deterministic")
            for p in D.points:
                try:
                    q = tangle_proxy(MT, p)
                except Exception:
                    continue
                in_H = anchor_nodes(MT.frame, q) <= s.side
                in_G = anchor_nodes(ls.frame, p) <= ls.side
                if in_H != in_G:
                    probs.append(f"{p.label()} and its proxy are oriented differently")
            lifted.append(ls)
    for a, b in combinations(lifted, 2):
        if not is_nested_pair(a, b):
            probs.append("two lifts cross")
    return probs


# ---------------------------------------------------------------- toughness

def tough_suite(G, m=4, ks=(3, 4, 5), max_xi=3, cap=60):
    probs = []
    R = tough_torso_decomposition(G, m)
    f = R.start.frame
    seps = set(R.separators())
    if seps != set(f.crit_sets()):
        probs.append("separators differ from the critical vertex sets")
    for entry in R.torsos:
        H = entry["torso"].H
        if not entry["tough"]:
            probs.append("a torso is not tough")
        core = [("c", v) for v in H.core_vertices]
        subsets = [frozenset(c) for r in range(max_xi + 1) for c in combinations(core, r)][:cap]
        Es = [expand(H, k) for k in ks]
        for Xi in subsets:
            counts = {len([c for c in oracle.components(E, Xi) if c & (set(core) - Xi)]) for E in Es}
            if len(counts) > 1:
                probs.append(f"torso component count after deleting {sorted(v[1] for v in Xi)} grows")
    return probs


def random_finite_orientation(rng, max_bags=8, max_members=6):
    """A finite graph glued from bags along cliques, separations from the gluing tree and a
    random consistent orientation of them."""
    from .corridor import Orientation
    from .principal import TreeSet, separation_system
    from .sepcore import consistent_orientations
    from .symgraph import SymbolicGraph
    bags, tree, V = [], [], []
    edges = set()

    def fresh():
        V.append(f"v{len(V)}")
        return V[-1]

    bags.append([fresh() for _ in range(rng.randint(1, 3))])
    for i in range(1, rng.randint(2, max_bags)):
        j = rng.randrange(i)
        glue = rng.sample(bags[j], rng.randint(1, min(2, len(bags[j]))))
        for a, b in combinations(sorted(glue), 2):
            edges.add(frozenset((a, b)))
        new = [fresh() for _ in range(rng.randint(1, 3))]
        bag = glue + new
        for v in new:
            for w in rng.sample(bag, rng.randint(1, len(bag) - 1)) if len(bag) > 1 else []:
                if w != v:
                    edges.add(frozenset((v, w)))
            if not any(v in e for e in edges):
                edges.add(frozenset((v, glue[0])))
        bags.append(bag)
        tree.append((j, i, frozenset(glue)))
    G = SymbolicGraph.from_dict({"core": {"vertices": V, "edges": [sorted(e) for e in edges]}})
    f = G.frame(4)
    below = {i: {i} for i in range(len(bags))}
    for j, i, _g in reversed(tree):
        below[j] |= below[i]
    members = []
    for j, i, glue in rng.sample(tree, min(len(tree), max_members)):
        X = frozenset(("c", v) for v in glue)
        side = frozenset(("c", v) for b in below[i] for v in bags[b]) - X
        s = GraphSeparation(f, X, side)
        if s.side and s.co_side and s.is_valid() and \
                all(s.unoriented() != t.unoriented() for t in members):
            members.append(s)
    T = TreeSet(f, members)
    O_elems = rng.choice(consistent_orientations(separation_system(members)))
    return Orientation(T, [s if s in O_elems else s.inverse() for s in members], rule="random")


def corridor_suite(O, rng=None, samples=4):
    """The orientation facts on a finite graph."""
    from .corridor import (corridor_separators_are_cliques, part_paths_stay_in_separators,
                           set_fits_corridor_member, set_inside_some_strict_side, torso_connects_part)
    rng = rng or random.Random(0)
    probs = []
    if not overlapping_members_comparable(O):
        probs.append("overlapping members are incomparable")
    if not corridors_partition_outside(O):
        probs.append("corridor regions do not partition the outside of the part")
    if not corridor_membership_matches_region(O):
        probs.append("corridor membership does not match the regions")
    if not corridor_separators_are_cliques(O):
        probs.append("a corridor separator is not a clique")
    if not part_paths_stay_in_separators(O):
        probs.append("a path through the outside has ends in no common separator")
    f = O.frame
    nodes = f.sorted(f.nodes)
    Pi = O.part()
    g = f.graph
    for _ in range(samples):
        # connected vertex sets: BFS balls
        if not nodes:
            break
        root = rng.choice(nodes)
        U = {root}
        for _ in range(rng.randint(0, 3)):
            U |= {w for v in U for w in g.adj[v]}
        U = frozenset(U)
        if not torso_connects_part(O, U):
            probs.append("torso misses a connection inside a connected set")
        if not (U & Pi) and U:
            hits = [c for c in O.corridors() if U <= c.region]
            if not hits or not set_fits_corridor_member(O, U, hits[0]):
                probs.append("connected set outside the part fits no corridor member")
        if U and not (U & Pi) and not set_inside_some_strict_side(O, U):
            probs.append("connected set outside the part is in no strict side")
    return probs


def run_suites(G, names=SUITES, k=3, seed=0, m=4):
    bad = [n for n in names if n not in SUITES]
    if bad:
        raise ValueError(f"unknown suite {bad[0]!r}")
    rng = random.Random(seed)
    out = {}
    D = None
    for name in names:
        try:
            if name == "expansion":
                out[name] = [p for kk in range(1, k + 1) for p in expansion_suite(G, kk, rng, m)]
            elif name == "treeset":
                out[name] = treeset_suite(G, m)
            elif name == "decompose":
                D = D or distinguishing_tree_set(G, m)
                out[name] = decompose_suite(G, m, D=D)
            elif name == "lifts":
                D = D or distinguishing_tree_set(G, m)
                out[name] = lift_suite(D)
            else:
                out[name] = tough_suite(G, m)
        except Exception as exc:
            out[name] = [f"{type(exc).__name__}: {exc}"]
    return out
