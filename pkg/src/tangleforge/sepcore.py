"""Abstract separation systems: a finite poset with an order-reversing involution.

Elements are arbitrary hashable ids.  The order is stored as an explicit
relation table, which is fine for the small systems handled here.
"""
from __future__ import annotations

from itertools import combinations


class SepError(ValueError):
    pass


class SepSystem:
    def __init__(self, elements, inv, leq):
        """`inv` maps each element to its inverse, `leq(r, s)` is a predicate or a set of pairs."""
        self.elements = tuple(elements)
        self._index = {e: i for i, e in enumerate(self.elements)}
        self.inv = dict(inv)
        if callable(leq):
            pairs = {(r, s) for r in self.elements for s in self.elements if r == s or leq(r, s)}
        else:
            pairs = set(leq) | {(e, e) for e in self.elements}
        self._leq = frozenset(pairs)

    def __contains__(self, s):
        return s in self._index

    def __len__(self):
        return len(self.elements)

    def leq(self, r, s) -> bool:
        return (r, s) in self._leq

    def lt(self, r, s) -> bool:
        return r != s and (r, s) in self._leq

    def check(self):
        """Return a list of violated axioms (empty when the system is well formed)."""
        problems = []
        for e in self.elements:
            if self.inv.get(e) not in self._index:
                problems.append(f"inverse of {e!r} missing")
            elif self.inv[self.inv[e]] != e:
                problems.append(f"inv is not an involution at {e!r}")
        for r in self.elements:
            for s in self.elements:
                if self.leq(r, s) and not self.leq(self.inv[s], self.inv[r]):
                    problems.append(f"inv does not reverse {r!r} <= {s!r}")
                if r != s and self.leq(r, s) and self.leq(s, r):
                    problems.append(f"antisymmetry fails for {r!r}, {s!r}")
                if self.leq(r, s):
                    for t in self.elements:
                        if self.leq(s, t) and not self.leq(r, t):
                            problems.append(f"transitivity fails for {r!r}, {s!r}, {t!r}")
        return problems

    def separation(self, s):
        """The unoriented separation {s, s*} as a frozenset."""
        return frozenset((s, self.inv[s]))

    def separations(self):
        seen = []
        for e in self.elements:
            u = self.separation(e)
            if u not in seen:
                seen.append(u)
        return seen

    def restrict(self, elements):
        keep = set(elements)
        for e in list(keep):
            keep.add(self.inv[e])
        order = [e for e in self.elements if e in keep]
        return SepSystem(order, {e: self.inv[e] for e in order},
                         {(r, s) for (r, s) in self._leq if r in keep and s in keep})

    def _need(self, s):
        if s not in self._index:
            raise SepError(f"unknown element {s!r}")


def classify(sys: SepSystem, s) -> str:
    sys._need(s)
    si = sys.inv[s]
    if s == si:
        return "degenerate"
    for t in sys.elements:
        if sys.separation(t) == sys.separation(s):
            continue
        if sys.lt(s, t) and sys.lt(s, sys.inv[t]):
            return "trivial"
    if sys.leq(s, si):
        return "small"
    return "proper"


def is_nested(sys: SepSystem, s1, s2) -> bool:
    sys._need(s1)
    sys._need(s2)
    for a in (s1, sys.inv[s1]):
        for b in (s2, sys.inv[s2]):
            if sys.leq(a, b) or sys.leq(b, a):
                return True
    return False


def is_nested_set(sys: SepSystem, seps) -> bool:
    seps = list(seps)
    return all(is_nested(sys, a, b) for a, b in combinations(seps, 2))


def is_tree_set(sys: SepSystem) -> bool:
    if not is_nested_set(sys, sys.elements):
        return False
    return all(classify(sys, e) not in ("degenerate", "trivial") for e in sys.elements)


def is_regular(sys: SepSystem) -> bool:
    return all(classify(sys, e) == "proper" for e in sys.elements)


def _check_partial(sys, O):
    O = set(O)
    for s in O:
        sys._need(s)
        if sys.inv[s] in O and sys.inv[s] != s:
            raise SepError(f"both orientations of {s!r} given")
    return O


def is_consistent(sys: SepSystem, O) -> bool:
    """No two members pointing away from each other: r* < s for r, s in O."""
    O = _check_partial(sys, O)
    for r in O:
        for s in O:
            if sys.separation(r) != sys.separation(s) and sys.lt(sys.inv[r], s):
                return False
    return True


def is_star(sys: SepSystem, members) -> bool:
    members = list(members)
    for r in members:
        if r == sys.inv[r]:
            return False
    for r in members:
        for s in members:
            if r != s and not sys.leq(r, sys.inv[s]):
                return False
    return True


def down_closure(sys: SepSystem, subset):
    subset = list(subset)
    return frozenset(r for r in sys.elements if any(sys.leq(r, s) for s in subset))


def maximal_elements(sys: SepSystem, O):
    O = list(O)
    return frozenset(s for s in O if not any(sys.lt(s, t) for t in O))


def consistent_orientations(sys: SepSystem):
    """All consistent orientations, found by backtracking with pairwise pruning."""
    seps = sys.separations()
    out = []

    def ok(chosen, s):
        for r in chosen:
            if sys.lt(sys.inv[r], s) or sys.lt(sys.inv[s], r):
                return False
        return True

    def rec(i, chosen):
        if i == len(seps):
            out.append(frozenset(chosen))
            return
        for s in sorted(seps[i], key=sys._index.get):
            if ok(chosen, s):
                chosen.append(s)
                rec(i + 1, chosen)
                chosen.pop()

    rec(0, [])
    return out


def splitting_stars(sys: SepSystem):
    if not is_nested_set(sys, sys.elements):
        raise SepError("system is not nested")
    stars = []
    for O in consistent_orientations(sys):
        top = maximal_elements(sys, O)
        if down_closure(sys, top) == O and top not in stars:
            stars.append(top)
    return stars


def edge_tree_set(nodes, edges) -> SepSystem:
    """Oriented edges (x, y) of a finite tree with the path order."""
    nodes = list(nodes)
    adj = {v: [] for v in nodes}
    for x, y in edges:
        adj[x].append(y)
        adj[y].append(x)

    def dist_from(src):
        d = {src: 0}
        todo = [src]
        while todo:
            v = todo.pop()
            for w in adj[v]:
                if w not in d:
                    d[w] = d[v] + 1
                    todo.append(w)
        return d

    dist = {v: dist_from(v) for v in nodes}
    elems = []
    for x, y in edges:
        elems += [(x, y), (y, x)]

    def leq(r, s):
        (x, y), (u, v) = r, s
        if {x, y} == {u, v}:
            return r == s
        # the path between the two edges leaves {x,y} at y and enters {u,v} at u
        return dist[y][u] < dist[x][u] and dist[y][u] < dist[y][v]

    return SepSystem(elems, {(x, y): (y, x) for x, y in elems}, leq)


def tree_from_tree_set(sys: SepSystem):
    """Rebuild the tree of a finite regular tree set: nodes are splitting stars."""
    if not is_nested_set(sys, sys.elements):
        raise SepError("system is not nested")
    if not is_regular(sys):
        raise SepError("system is not regular")
    stars = splitting_stars(sys)
    where = {}
    for i, star in enumerate(stars):
        for s in star:
            where[s] = i
    edges = []
    for u in sys.separations():
        a, b = sorted(u, key=sys._index.get)
        edges.append((where[a], where[b]))
    return list(range(len(stars))), edges, stars
