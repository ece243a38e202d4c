"""Assembling the decompositions.

`distinguishing_tree_set` builds a nested set of tame separations that efficiently
distinguishes every two tangle points; `tough_torso_decomposition` builds the tree set whose
separators are exactly the critical vertex sets and checks its torsos.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .corridor import (CorridorError, ModifiedTorso, Orientation, lift, modified_torso,
                       tangle_proxy, walked_corridor)
from .principal import (Admissible, Collection, TreeSet, build_T, clique_ify, crit_collection,
                        generous_subsets, strongly_admissible)
from .symgraph import GraphSeparation, SymbolicGraph, check, crit, fmt_ref, is_nested_pair
from .tangles import (TangleError, TanglePoint, anchor_nodes, distinction_order, distinguishes,
                      is_generous_set, is_tame, min_order_separator, orient, tangle_points)


class PipelineError(RuntimeError):
    def __init__(self, msg, dump=None):
        super().__init__(msg)
        self.dump = dump or {}


@dataclass
class Start:
    G: SymbolicGraph
    Gc: SymbolicGraph
    Y: Collection
    adm: Admissible
    T: TreeSet

    @property
    def frame(self):
        return self.T.frame


def starting_tree_set(G: SymbolicGraph, m=4, crit_only=False) -> Start:
    """Generous subsets of critical sets (or the critical sets), clique-ified, with their tree set."""
    check(G)
    Y = crit_collection(G) if crit_only else generous_subsets(G, m)
    Gc = clique_ify(G, Y)
    f = Gc.frame(m)
    adm = strongly_admissible(f, Y, exactly_one=not crit_only)
    T = build_T(f, adm)
    if not T.is_nested():
        raise PipelineError("starting tree set is not nested")
    if not crit_only and not T.is_regular():
        raise PipelineError("starting tree set is not regular")
    return Start(G, Gc, Y, adm, T)


def crit_contains(frame, Z):
    return any(Z <= X for X in frame.crit_sets())


def orientation_from_Z(T: TreeSet, Z) -> Orientation:
    """Orient every member toward the unique component of G - X that Z meets."""
    f = T.frame
    Z = frozenset(Z)
    if crit_contains(f, Z):
        raise PipelineError("Z lies inside a critical vertex set")
    if not is_generous_set(f, Z):
        raise PipelineError("Z is not generous")
    chosen = []
    for s in T.members:
        cs = f.components(s.sep)
        met = {cs.containing(v) for v in Z - s.sep}
        if len(met) != 1:
            raise PipelineError(f"Z meets {len(met)} components of G - separator")
        comp = met.pop()
        chosen.append(s if comp <= s.side else s.inverse())
    O = Orientation(T, chosen, rule="toward " + ",".join(fmt_ref(v) for v in f.sorted(Z)))
    assert Z <= O.part()
    return O


def orientation_of_tangle(T: TreeSet, t: TanglePoint) -> Orientation:
    return Orientation(T, [orient(t, s) for s in T.members], rule=f"induced by {t.label()}")


def member_for_critical_separator(T: TreeSet, t1, t2, Z):
    """A member of T with separator Z distinguishing t1, t2, if Z lies in a critical set."""
    f = T.frame
    Z = frozenset(Z)
    if not crit_contains(f, Z):
        return None
    for s in T.members:
        if s.sep == Z and distinguishes(s, t1, t2):
            return s
    raise PipelineError("no member of T with this separator distinguishes the pair",
                        {"separator": [fmt_ref(v) for v in f.sorted(Z)],
                         "pair": [t1.label(), t2.label()]})


def _candidates(f, a, b, d, cut, chosen):
    src, dst = anchor_nodes(f, a), anchor_nodes(f, b)
    for S in combinations(sorted(cut, key=f.key), d):
        S = frozenset(S)
        cs = f.components(S)
        ba = {cs.containing(v) for v in src}
        bb = {cs.containing(v) for v in dst}
        if ba & bb:
            continue
        others = [c for c in cs.comps if c not in ba and c not in bb]
        base = frozenset().union(*bb)
        masks = [0, (1 << len(others)) - 1]
        if len(others) <= 10:
            masks += list(range(1, (1 << len(others)) - 1))
        for mask in masks:
            side = base.union(*[c for i, c in enumerate(others) if mask >> i & 1])
            s = GraphSeparation(f, S, side)
            if all(is_nested_pair(s, t) for t in chosen):
                yield s


def end_tree_set(MT: ModifiedTorso):
    """Nested separations of H, each efficiently distinguishing some end pair, covering all pairs."""
    f = MT.frame
    cut = MT.cuttable()
    ends = MT.end_points()
    pairs = []
    for a, b in combinations(ends, 2):
        pairs.append((distinction_order(f, a, b, cuttable=cut), a, b))
    pairs.sort(key=lambda p: (p[0], p[1].sort_key(), p[2].sort_key()))
    chosen = []
    for d, a, b in pairs:
        if any(s.order == d and distinguishes(s, a, b) for s in chosen):
            continue
        s = next(_candidates(f, a, b, d, cut, chosen), None)
        if s is None:
            raise PipelineError("no nested efficient separator for an end pair of H",
                                {"pair": [a.label(), b.label()], "order": d,
                                 "chosen": [t.describe() for t in chosen]})
        chosen.append(s)
    for d, a, b in pairs:
        assert any(s.order == d and distinguishes(s, a, b) for s in chosen)
    return chosen


@dataclass
class TorsoRun:
    Z: frozenset
    O: Orientation
    MT: ModifiedTorso
    TH: list
    lifts: list


@dataclass
class Decomposition:
    start: Start
    points: list
    members: list
    provenance: dict
    certificates: list = field(default_factory=list)
    runs: list = field(default_factory=list)
    failures: list = field(default_factory=list)

    @property
    def frame(self):
        return self.start.frame

    def is_nested(self):
        return all(is_nested_pair(a, b) for a, b in combinations(self.members, 2))

    def all_tame(self):
        return all(is_tame(s) for s in self.members)


def _certify(members, t1, t2, d):
    for s in members:
        if s.order == d and distinguishes(s, t1, t2):
            return s
    return None


def distinguishing_tree_set(G: SymbolicGraph, m=4) -> Decomposition:
    st = starting_tree_set(G, m)
    f = st.frame
    pts = tangle_points(st.Gc, m=m)
    members = list(st.T.members)
    prov = {s.unoriented(): st.T.provenance.get(s.unoriented(), "T") for s in members}
    out = Decomposition(st, pts, members, prov)
    runs = {}
    for t1, t2 in combinations(pts, 2):
        d = distinction_order(f, t1, t2)
        s = _certify(out.members, t1, t2, d)
        how = out.provenance.get(s.unoriented()) if s is not None else None
        if s is None:
            _k, zs = min_order_separator(f, t1, t2)
            Z = zs.sep
            s = member_for_critical_separator(st.T, t1, t2, Z)
            how = "T (separator inside a critical set)"
            if s is None:
                run = runs.get(Z)
                if run is None:
                    run = _torso_run(st.T, Z)
                    runs[Z] = run
                    out.runs.append(run)
                    for ls in run.lifts:
                        key = ls.unoriented()
                        if key not in out.provenance:
                            out.members.append(ls)
                            out.provenance[key] = "lift from " + run.O.rule
                s = _certify(out.members, t1, t2, d)
                how = out.provenance.get(s.unoriented()) if s is not None else None
        if s is None:
            out.failures.append({"pair": [t1.label(), t2.label()], "order": d})
            continue
        out.certificates.append({"t1": t1, "t2": t2, "sep": s, "order": s.order,
                                 "distinction_order": d, "source": how})
    return out


def _torso_run(T, Z):
    O = orientation_from_Z(T, Z)
    MT = modified_torso(O)
    TH = end_tree_set(MT)
    lifts = [lift(MT, s, check=False) for s in TH]
    return TorsoRun(Z, O, MT, TH, lifts)


def proxies_distinguished_by_Z(run: TorsoRun, t1, t2):
    """Check that Z separates the proxies of t1, t2 in H at the least possible order."""
    MT = run.MT
    e1, e2 = tangle_proxy(MT, t1), tangle_proxy(MT, t2)
    f = MT.frame
    ZH = frozenset(MT.h_node(v) for v in run.Z)
    cs = f.components(ZH)
    b1 = {cs.containing(v) for v in anchor_nodes(f, e1)}
    b2 = {cs.containing(v) for v in anchor_nodes(f, e2)}
    return not (b1 & b2) and distinction_order(f, e1, e2, cuttable=MT.cuttable()) == len(run.Z)


# ---------------------------------------------------------------- toughness

def is_tough(H: SymbolicGraph) -> bool:
    """No finite deletion leaves infinitely many components: no critical vertex set."""
    return not crit(H)


@dataclass
class ToughReport:
    start: Start
    torsos: list

    def separators(self):
        return self.start.T.separators()


def tough_torso_decomposition(G: SymbolicGraph, m=4) -> ToughReport:
    st = starting_tree_set(G, m, crit_only=True)
    T = st.T
    torsos = []
    seen = set()
    for t in tangle_points(st.Gc, m=m):
        O = orientation_of_tangle(T, t)
        key = frozenset(O.chosen)
        if key in seen:
            continue
        seen.add(key)
        MT = modified_torso(O, add_cliques=False)
        torsos.append({"point": t, "orientation": O, "torso": MT, "tough": is_tough(MT.H)})
    if not torsos:
        MT = modified_torso(Orientation(T, [], rule="empty"), add_cliques=False)
        torsos.append({"point": None, "orientation": MT.O, "torso": MT, "tough": is_tough(MT.H)})
    return ToughReport(st, torsos)


def find_pointer(run: TorsoRun, t: TanglePoint, zsep: GraphSeparation):
    """A ray tail or generic hat member of t inside its walked corridor, on t's side of Z."""
    MT, O = run.MT, run.O
    i = walked_corridor(MT, t)
    if i is None:
        raise CorridorError(f"{t.label()} lies in the closure of the part")
    corr = O.corridors()[i]
    side = zsep.side if orient(t, zsep) == zsep else zsep.co_side
    region = corr.region - O.part()
    pts = anchor_nodes(O.frame, t)
    if not pts <= region & side:
        raise CorridorError("pointer is not inside the corridor on the correct side")
    return {"corridor": i, "pointer": [fmt_ref(v) for v in O.frame.sorted(pts)]}

