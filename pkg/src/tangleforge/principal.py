"""Principal collections, admissible functions and the tree set they induce.

A collection is given by templates (context with wildcards plus vertex
names).  Every instance whose indices lie inside the frame is handled
explicitly; instances beyond the frame are interchangeable with the
untouched materialized ones, so they only show up as family markers.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, product

from .sepcore import SepSystem, is_consistent, is_nested_set
from .symgraph import (CritEntry, Frame, GraphSeparation, ModelError, SymbolicGraph, crit,
                       fmt_ref, is_nested_pair, sep_le)
from .tangles import is_generous_set


class PrincipalError(ValueError):
    pass


# ---------------------------------------------------------------- collections

@dataclass
class Collection:
    """A (possibly infinite) family of finite vertex sets, closed under instance symmetry."""
    templates: list

    def members(self, frame: Frame):
        """Instances inside the frame: non-family templates first, then families by index."""
        named, fam = [], []
        for ti, e in enumerate(self.templates):
            n_wild = sum(1 for _c, i in e.context if i is None)
            if n_wild == 0:
                named.append(e.instantiate(()))
            else:
                for idx in product(range(frame.m), repeat=n_wild):
                    fam.append(((ti, idx), e.instantiate(idx)))
        fam.sort(key=lambda p: p[0])
        out = []
        for X in named + [X for _k, X in fam]:
            if X not in out:
                out.append(X)
        return out

    def describe(self):
        return [e.describe() for e in self.templates]


def crit_collection(G: SymbolicGraph) -> Collection:
    return Collection(crit(G))


def generous_subsets(G: SymbolicGraph, m=4) -> Collection:
    """All generous subsets of critical vertex sets, as templates."""
    frame = G.frame(m)
    out = []
    for e in crit(G):
        for r in range(1, len(e.names) + 1):
            for sub in combinations(e.names, r):
                t = CritEntry(e.context, tuple(sub))
                if t in out:
                    continue
                rep = t.instantiate((0,) * sum(1 for _c, i in t.context if i is None))
                if is_generous_set(frame, rep):
                    out.append(t)
    return Collection(out)


# ---------------------------------------------------------------- components

def component_meeting(frame: Frame, X, S):
    """The unique component of G - X meeting S, None if S lies inside X."""
    X, S = frozenset(X), frozenset(S)
    rest = S - X
    if not rest:
        return None
    cs = frame.components(X)
    met = {cs.containing(v) for v in rest}
    if len(met) > 1:
        raise PrincipalError("two components met: "
                             f"{sorted(fmt_ref(v) for v in S)} is not principal w.r.t. "
                             f"{sorted(fmt_ref(v) for v in X)}")
    return met.pop()


def is_principal(frame: Frame, members) -> bool:
    for X in members:
        for Y in members:
            if X != Y:
                try:
                    component_meeting(frame, Y, X)
                except PrincipalError:
                    return False
    return True


def is_problem_case(frame: Frame, X, Y) -> bool:
    X, Y = frozenset(X), frozenset(Y)
    if X <= Y or Y <= X:
        return False
    cx = component_meeting(frame, X, Y)
    cy = component_meeting(frame, Y, X)
    return cx in frame.hat_components(X) and cy in frame.hat_components(Y)


# ---------------------------------------------------------------- admissible functions

@dataclass
class Admissible:
    """X -> K(X) given by the hat set of X minus at most one excluded component."""
    frame: Frame
    members: list
    excluded: dict = field(default_factory=dict)
    problem: set = field(default_factory=set)

    def hat(self, X):
        return self.frame.hat_components(X)

    def chosen(self, X):
        """Members of K(X): named components and residual family atoms."""
        ex = self.excluded.get(X)
        return [c for c in self.hat(X) if c != ex]

    def region(self, X):
        return frozenset().union(*self.chosen(X)) if self.chosen(X) else frozenset()

    def contains(self, X, comp):
        return comp in self.hat(X) and comp != self.excluded.get(X)


def is_admissible(adm: Admissible, strong=True) -> bool:
    f = adm.frame
    for X, Y in combinations(adm.members, 2):
        if X <= Y or Y <= X:
            continue
        cx, cy = component_meeting(f, X, Y), component_meeting(f, Y, X)
        if adm.contains(X, cx) and adm.contains(Y, cy):
            return False
    if strong:
        for X in adm.members:
            if len(adm.hat(X)) - len(adm.chosen(X)) > 1:
                return False
    return True


def strongly_admissible(frame: Frame, Y: Collection, exactly_one=False) -> Admissible:
    """Greedy: K(X) drops C_X(Y) for the first Y forming a problem case with X.

    With exactly_one every member drops exactly one component, the first
    named member of its hat set when X is in no problem case.
    """
    members = Y.members(frame)
    if not is_principal(frame, members):
        raise PrincipalError("collection is not principal")
    adm = Admissible(frame, members)
    partners = {X: [Z for Z in members if Z != X and is_problem_case(frame, X, Z)] for X in members}
    P = [X for X in members if partners[X]]
    adm.problem = set(P)
    for X in P:
        first = next(Z for Z in P if Z in partners[X])
        adm.excluded[X] = component_meeting(frame, X, first)
    if exactly_one:
        for X in members:
            if X not in adm.excluded:
                cs = frame.components(X)
                named = [c for c in cs.hat() if not cs.is_family(c)]
                if named:
                    adm.excluded[X] = named[0]
    if not is_admissible(adm):
        raise PrincipalError("greedy choice is not admissible")
    return adm


# ---------------------------------------------------------------- the tree set

@dataclass
class TreeSet:
    """Named members (frame separations) plus markers for omega families {X, K}."""
    frame: Frame
    members: list
    families: list = field(default_factory=list)
    provenance: dict = field(default_factory=dict)

    def system(self):
        return separation_system(self.members)

    def separators(self):
        out = []
        for s in self.members:
            if s.sep not in out:
                out.append(s.sep)
        for X, _a in self.families:
            if X not in out:
                out.append(X)
        return out

    def add(self, s, why):
        key = s.unoriented()
        for t in self.members:
            if t.unoriented() == key:
                return t
        self.members.append(s)
        self.provenance[key] = why
        return s

    def is_nested(self):
        return all(is_nested_pair(a, b) for a, b in combinations(self.members, 2))

    def is_regular(self):
        return all(s.side and s.co_side for s in self.members)

    def describe(self):
        out = []
        for s in self.members:
            d = s.describe()
            d["source"] = self.provenance.get(s.unoriented(), "")
            out.append(d)
        fams = [{"separator": [fmt_ref(v) for v in self.frame.sorted(X)], "side": fmt_ref(a),
                 "multiplicity": "omega"} for X, a in self.families]
        return {"members": out, "families": fams}


def separation_system(seps) -> SepSystem:
    elems = []
    for s in seps:
        for x in (s, s.inverse()):
            if x not in elems:
                elems.append(x)
    return SepSystem(elems, {x: x.inverse() for x in elems}, sep_le)


def build_T(frame: Frame, adm: Admissible) -> TreeSet:
    if not is_admissible(adm, strong=False):
        raise PrincipalError("admissibility check failed")
    T = TreeSet(frame, [])
    cs_of = {X: frame.components(X) for X in adm.members}
    for X in adm.members:
        T.add(GraphSeparation(frame, X, adm.region(X)), "K(X)")
        for c in adm.chosen(X):
            if cs_of[X].is_family(c):
                T.families.append((X, next(iter(c))))
            else:
                T.add(GraphSeparation(frame, X, c), "component of K(X)")
    return T


def sigma_star(frame: Frame, adm: Admissible, X):
    """(X, K(X)) together with (K, X) for the named K in K(X); families are markers."""
    X = frozenset(X)
    cs = frame.components(X)
    top = GraphSeparation(frame, X, adm.region(X))
    rest = [GraphSeparation(frame, X, c).inverse() for c in adm.chosen(X) if not cs.is_family(c)]
    fams = [next(iter(c)) for c in adm.chosen(X) if cs.is_family(c)]
    return [top] + rest, fams


def is_star_set(seps) -> bool:
    return all(sep_le(r, s.inverse()) for r in seps for s in seps if r != s)


def interior(frame: Frame, seps):
    out = frame.nodes
    for s in seps:
        out = out & s.B
    return out


def down_closure(T: TreeSet, star):
    """Orientation of T given by the star: each member takes the side below some star element."""
    out = []
    for s in T.members:
        for x in (s, s.inverse()):
            if any(sep_le(x, t) for t in star):
                out.append(x)
                break
        else:
            raise ModelError("star does not orient every member")
    return out


def proper_region_orientation(T: TreeSet, adm: Admissible):
    """{(K(X), X) : K(X) is a proper part of the components of G - X}."""
    out = []
    for X in adm.members:
        if len(adm.chosen(X)) < len(adm.frame.components(X).comps):
            out.append(GraphSeparation(adm.frame, X, adm.region(X)).inverse())
    return out


def orientation_is_consistent(seps) -> bool:
    sys = separation_system(seps)
    return is_consistent(sys, [s for s in seps])


def clique_ify(G: SymbolicGraph, Y: Collection) -> SymbolicGraph:
    """Complete every member of the collection to a clique."""
    core_edges = list(G.core_edges)
    have = {frozenset(e) for e in core_edges}
    extra = {}
    for e in Y.templates:
        for a, b in combinations(e.names, 2):
            if not e.context:
                if frozenset((a, b)) not in have:
                    have.add(frozenset((a, b)))
                    core_edges.append((a, b))
            else:
                extra.setdefault(e.context[-1][0], set()).add(frozenset((a, b)))
    classes = []
    for c in G.classes:
        edges = list(c.edges)
        known = {frozenset(x) for x in edges}
        for pair in sorted(extra.get(c.id, ()), key=sorted):
            if pair not in known:
                edges.append(tuple(sorted(pair)))
        classes.append(type(c)(c.id, c.scope, c.vertices, tuple(edges), c.attachment, c.multiplicity))
    return G.replace(core_edges=tuple(core_edges), classes=tuple(classes))


def is_nested_family(seps) -> bool:
    return is_nested_set(separation_system(seps), seps)
