"""Orientations of tree sets: parts, corridors, torsos, modified torsos and lifts."""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .principal import TreeSet, separation_system
from .sepcore import is_consistent
from .symgraph import (CliqueClass, FiniteGraph, Frame, GraphSeparation, ModelError, RayClass,
                       SymbolicGraph, fmt_ref, sep_le, validate)
from .tangles import TangleError, TanglePoint, anchor_nodes, distinction_order, orient


class CorridorError(ValueError):
    pass


@dataclass
class Corridor:
    members: list
    region: frozenset
    xi: frozenset
    family_atom: tuple | None = None

    @property
    def is_family(self):
        return self.family_atom is not None

    def describe(self, frame):
        return {"separator": [fmt_ref(v) for v in frame.sorted(self.xi)],
                "region": [fmt_ref(v) for v in frame.sorted(self.region)],
                "multiplicity": "omega" if self.is_family else 1}


class Orientation:
    """A consistent orientation of a tree set.

    `chosen` orients every named member.  Each omega family of T lives inside
    one atom a with separator Y; all of its members point away from a and are
    represented by the pseudo-member (a + Y, V - a), which is the supremum of
    the family.
    """

    def __init__(self, T: TreeSet, chosen, rule="explicit", check=True):
        self.T = T
        self.frame = T.frame
        self.chosen = list(chosen)
        self.rule = rule
        f = self.frame
        atoms = {a: X for X, a in T.families}
        self.pseudos = [GraphSeparation(f, X, f.nodes - X - {a}) for a, X in sorted(atoms.items(), key=lambda p: f.key(p[0]))]
        if check:
            if len(self.chosen) != len(T.members):
                raise CorridorError("orientation must orient every member")
            keys = {s.unoriented() for s in self.chosen}
            if keys != {s.unoriented() for s in T.members}:
                raise CorridorError("orientation does not match the tree set")
            if not self.is_consistent():
                raise CorridorError("orientation is not consistent")
        self._part = None
        self._corr = None

    @property
    def elements(self):
        return self.chosen + self.pseudos

    def is_consistent(self):
        sys = separation_system(self.elements)
        return is_consistent(sys, self.elements)

    def part(self):
        if self._part is None:
            out = self.frame.nodes
            for s in self.elements:
                out = out & s.B
            self._part = out
        return self._part

    def corridors(self):
        if self._corr is None:
            self._corr = _corridors(self)
        return self._corr

    def corridor_of(self, node):
        for i, c in enumerate(self.corridors()):
            if node in c.region and node not in self.part():
                return i
        return None

    def separators(self):
        out = []
        for s in self.elements:
            if s.sep not in out:
                out.append(s.sep)
        return out


def _corridors(O: Orientation):
    """Classes of the common-upper-bound relation, with regions and separators."""
    elems = O.elements
    named = O.chosen
    n = len(elems)
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    above = [[j for j, u in enumerate(named) if sep_le(x, u)] for x in elems]
    for i in range(n):
        for j in range(i + 1, n):
            x, y = elems[i], elems[j]
            if sep_le(x, y) or sep_le(y, x) or set(above[i]) & set(above[j]):
                parent[find(i)] = find(j)
    groups = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    Pi = O.part()
    out = []
    for idx in sorted(groups.values()):
        members = [elems[i] for i in idx]
        region = frozenset().union(*[s.A for s in members])
        fam = None
        if len(idx) == 1 and idx[0] >= len(named):
            s = elems[idx[0]]
            fam = next(iter(s.A - s.sep))
        out.append(Corridor(members, region, region & Pi, fam))
    return out


def part(O: Orientation):
    return O.part()


def corridors(O: Orientation):
    if not O.T.is_regular():
        raise CorridorError("corridors need a regular tree set")
    return O.corridors()


def torso_edges(O: Orientation):
    """Pairs of distinct part vertices lying in a common separator."""
    Pi = O.part()
    out = set()
    for X in O.separators():
        for a, b in combinations(sorted(X & Pi, key=O.frame.key), 2):
            out.add((a, b))
    return out


def torso(O: Orientation) -> FiniteGraph:
    """G[part] plus torso edges, on frame nodes."""
    Pi = O.part()
    g = O.frame.graph.subgraph(Pi)
    for a, b in torso_edges(O):
        g.adj[a].add(b)
        g.adj[b].add(a)
    return g


# ---------------------------------------------------------------- modified torsos

@dataclass
class ModifiedTorso:
    O: Orientation
    H: SymbolicGraph
    name: dict
    node: dict
    zmap: dict = field(default_factory=dict)
    ends: dict = field(default_factory=dict)

    @property
    def frame(self) -> Frame:
        return self.H.frame(self.O.frame.m)

    def h_node(self, g_node):
        return ("c", self.name[g_node])

    def cuttable(self):
        return frozenset(("c", v) for v in self.H.core_vertices)

    def end_points(self):
        return [TanglePoint.end(r.id) for r in self.H.rays] + [TanglePoint.end(q.id) for q in self.H.cliques]


def modified_torso(O: Orientation, add_cliques=True) -> ModifiedTorso:
    """The torso of the part as a model, with an omega-clique per finite corridor separator."""
    f = O.frame
    G = f.G
    Pi = O.part()
    if not Pi:
        raise CorridorError("part is empty")
    if any(v[0] == "F" for v in Pi):
        raise CorridorError("a family atom lies in the part")
    conc = f.sorted(v for v in Pi if v[0] not in ("T", "Q"))
    name = {v: fmt_ref(v) for v in conc}
    node = {n: v for v, n in name.items()}
    edges = []
    seen = set()
    for a in conc:
        for b in f.graph.adj[a]:
            if b in name and frozenset((a, b)) not in seen:
                seen.add(frozenset((a, b)))
                edges.append((name[a], name[b]))
    for a, b in sorted(torso_edges(O), key=lambda e: (f.key(e[0]), f.key(e[1]))):
        if frozenset((a, b)) not in seen and a in name and b in name:
            seen.add(frozenset((a, b)))
            edges.append((name[a], name[b]))
    rays, cliques, ends = [], [], {}
    for r in G.rays:
        if ("T", r.id) in Pi:
            last = ("r", r.id, f.m - 1)
            if last not in name:
                raise CorridorError(f"ray {r.id} has its tail in the part but not its frame end")
            ends[r.id] = r.id + "'"
            rays.append(RayClass(ends[r.id], name[last], tuple(name[("c", d)] for d in r.dominating)))
    for q in G.cliques:
        if ("Q", q.id) in Pi:
            att = [("c", a) for a in q.attach] + [("k", q.id, n) for n in range(f.m)]
            ends[q.id] = q.id + "'"
            cliques.append(CliqueClass(ends[q.id], tuple(name[v] for v in att)))
    zmap = {}
    if add_cliques:
        used = set(ends.values())
        xi_ids = {}
        for i, c in enumerate(O.corridors()):
            if c.xi not in xi_ids:
                cid = f"Xi{len(xi_ids)}"
                while cid in used:
                    cid += "'"
                xi_ids[c.xi] = cid
                cliques.append(CliqueClass(cid, tuple(name[v] for v in f.sorted(c.xi))))
            zmap[i] = xi_ids[c.xi]
    H = SymbolicGraph(tuple(name[v] for v in conc), tuple(edges), (), tuple(rays), tuple(cliques))
    diags = validate(H)
    if diags:
        raise CorridorError("modified torso is not a valid model: " + "; ".join(diags))
    return ModifiedTorso(O, H, name, node, zmap, ends)


def corridor_proxy(MT: ModifiedTorso, index) -> TanglePoint:
    c = MT.O.corridors()[index]
    if index in MT.zmap:
        return TanglePoint.end(MT.zmap[index])
    # an infinite separator is an omega-clique of G inside the part
    for q in MT.O.frame.G.cliques:
        if q.id in MT.ends and ("Q", q.id) in c.region:
            return TanglePoint.end(MT.ends[q.id])
    raise CorridorError("proxy of corridor is undefined")


def walked_corridor(MT: ModifiedTorso, t: TanglePoint):
    """Index of the unique corridor walked by t, or None when t lives in the part."""
    O = MT.O
    nodes = anchor_nodes(O.frame, t)
    Pi = O.part()
    if t.kind == "end" and nodes <= Pi:
        return None
    idx = {O.corridor_of(v) for v in nodes}
    if None in idx or len(idx) != 1:
        raise CorridorError(f"{t.label()} does not walk a unique corridor")
    i = idx.pop()
    if O.corridors()[i].is_family:
        raise CorridorError(f"proxy undefined: the orientation contains the star of {t.label()}")
    return i


def tangle_proxy(MT: ModifiedTorso, t: TanglePoint) -> TanglePoint:
    i = walked_corridor(MT, t)
    if i is None:
        return TanglePoint.end(MT.ends[t.anchor])
    return corridor_proxy(MT, i)


def is_H_relevant(MT: ModifiedTorso, s: GraphSeparation) -> bool:
    f = MT.frame
    if s.frame is not f:
        raise CorridorError("separation is not on the modified torso")
    ends = MT.end_points()
    for a, b in combinations(ends, 2):
        if orient(a, s) != orient(b, s):
            if s.order == distinction_order(f, a, b, cuttable=MT.cuttable()):
                assert all(v[0] == "c" for v in s.sep)
                return True
    return False


def lift(MT: ModifiedTorso, s: GraphSeparation, check=True) -> GraphSeparation:
    """Extend an H-separation to G: the part as in H, each corridor to its proxy's side."""
    if check and not is_H_relevant(MT, s):
        raise CorridorError("separation is not H-relevant")
    O = MT.O
    f = O.frame
    if not all(v[0] == "c" for v in s.sep):
        raise CorridorError("separator leaves the part")
    sep = frozenset(MT.node[v[1]] for v in s.sep)
    back = {h: g for g, h in MT.ends.items()}
    side = set()
    for v in s.side:
        if v[0] == "c":
            side.add(MT.node[v[1]])
        elif v[0] in ("T", "Q") and v[1] in back:
            side.add((v[0], back[v[1]]))
    Pi = O.part()
    for i, c in enumerate(O.corridors()):
        proxy = corridor_proxy(MT, i)
        if anchor_nodes(MT.frame, proxy) <= s.side:
            side |= c.region - Pi
    out = GraphSeparation(f, sep, frozenset(side) - sep)
    if not out.is_valid():
        raise CorridorError("lift is not a separation of G")
    return out


# ---------------------------------------------------------------- finite checks

def overlapping_members_comparable(O: Orientation) -> bool:
    E = O.elements
    for x in E:
        for y in E:
            if x is not y and (x.A - y.B) and not (sep_le(x, y) or sep_le(y, x)):
                return False
    return True


def set_fits_corridor_member(O: Orientation, U, corridor: Corridor) -> bool:
    Pi = O.part()
    U = frozenset(U)
    return any(U <= s.A and (U - Pi) <= (s.A - s.B) for s in corridor.members)


def corridors_partition_outside(O: Orientation) -> bool:
    Pi = O.part()
    seen = set()
    for c in O.corridors():
        r = c.region - Pi
        if r & seen:
            return False
        seen |= r
    return seen == O.frame.nodes - Pi


def corridor_membership_matches_region(O: Orientation) -> bool:
    for c in O.corridors():
        for s in O.chosen:
            if (s in c.members) != ((s.A - s.B) <= c.region):
                return False
    return True


def set_inside_some_strict_side(O: Orientation, F) -> bool:
    F = frozenset(F)
    return any(F <= (s.A - s.B) for s in O.elements)


def corridor_separators_are_cliques(O: Orientation) -> bool:
    adj = O.frame.graph.adj
    for c in O.corridors():
        for a, b in combinations(c.xi, 2):
            if b not in adj[a]:
                return False
    return True


def part_paths_stay_in_separators(O: Orientation) -> bool:
    """Every G[part]-path has both ends in one member separator.

    Such a path runs through a component of G - part, so it is enough to look
    at pairs of part vertices adjacent to a common component.
    """
    Pi = O.part()
    g = O.frame.graph
    seps = O.separators()
    for comp in g.components(Pi):
        nb = sorted(g.neighbours(comp) & Pi, key=O.frame.key)
        for a, b in combinations(nb, 2):
            if not any(a in X and b in X for X in seps):
                return False
    return True


def torso_connects_part(O: Orientation, U) -> bool:
    Pi = O.part()
    keep = frozenset(U) & Pi
    if not keep:
        return True
    g = torso(O).subgraph(keep)
    return len(g.components(())) == 1
