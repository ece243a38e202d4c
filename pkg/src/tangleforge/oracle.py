"""Brute-force checks on finite expansions.

Nothing in here touches the frame engine: components come from a separate
union-find over `expand(G, k)`, and tangle points are located by looking at
far-out instances and ray positions of the expansion.
"""
from __future__ import annotations

from itertools import combinations

from .symgraph import SymbolicGraph, expand


def components(E, removed):
    removed = set(removed)
    parent = {v: v for v in E.nodes if v not in removed}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for v in parent:
        for w in E.adj[v]:
            if w in parent:
                a, b = find(v), find(w)
                if a != b:
                    parent[a] = b
    groups = {}
    for v in parent:
        groups.setdefault(find(v), set()).add(v)
    return [frozenset(g) for g in groups.values()]


def neighbourhood(E, comp):
    out = set()
    for v in comp:
        out |= E.adj[v]
    return frozenset(out - comp)


def hat(E, X):
    X = frozenset(X)
    return [c for c in components(E, X) if neighbourhood(E, c) == X]


def universe(G: SymbolicGraph, inst=3, ray=5, k=6):
    """Core, the first `inst` copies of every omega class, the first `ray` ray positions."""
    E = expand(G, k)
    out = []
    for v in E.nodes:
        if v[0] == "c":
            out.append(v)
        elif v[0] == "g":
            if all(i < inst or not G.cls(c).omega for c, i in v[1]):
                out.append(v)
        elif v[0] == "r" and v[2] < ray:
            out.append(v)
        elif v[0] == "k" and v[2] < inst:
            out.append(v)
    return out


def _generic_vertex(G, X, k):
    """A vertex of the last expansion copy of a piece attached exactly at X."""
    X = frozenset(X)
    some = next(iter(X))
    ctx = () if some[0] == "c" else some[1]
    scope = None if not ctx else ctx[-1][0]
    for c in G.children(scope):
        if not c.omega:
            continue
        for piece, att in G.pieces(c.id):
            names = frozenset(("c", a) if not ctx else ("g", ctx, a) for a in att)
            if names == X:
                return ("g", ctx + ((c.id, k - 1),), piece[0])
    raise ValueError(f"{sorted(X)} is not the attachment set of an omega piece")


def locate(G, E, comps, t, S, k):
    """Where a tangle point lives in expand(G,k) - S."""
    if t.kind == "end":
        if any(r.id == t.anchor for r in G.rays):
            v = ("r", t.anchor, k - 1)
        else:
            v = ("k", t.anchor, k - 1)
        return next(c for c in comps if v in c)
    if t.X <= S:
        return ("group", t.X)
    v = _generic_vertex(G, t.X, k)
    return next(c for c in comps if v in c)


def distinction_order(G: SymbolicGraph, t1, t2, max_order=4, k=6, inst=3, ray=5):
    """Least |S| over subsets of the small universe that puts t1 and t2 apart."""
    E = expand(G, k)
    U = universe(G, inst, ray, k)
    for size in range(max_order + 1):
        for S in combinations(U, size):
            S = frozenset(S)
            comps = components(E, S)
            if locate(G, E, comps, t1, S, k) != locate(G, E, comps, t2, S, k):
                return size
    return None


def critical_sets(G: SymbolicGraph, max_size=3, inst=2, k_small=4, k_big=5):
    """Sets inside the small universe whose hat set grows with the expansion."""
    Es, Eb = expand(G, k_small), expand(G, k_big)
    U = universe(G, inst, 2, k_small)
    out = []
    for size in range(1, max_size + 1):
        for X in combinations(U, size):
            if len(hat(Eb, X)) > len(hat(Es, X)):
                out.append(frozenset(X))
    return out


def separations(E, max_order=None):
    """All (separator, side) pairs of a small finite graph, side a union of components."""
    out = []
    nodes = list(E.nodes)
    top = len(nodes) if max_order is None else max_order
    for size in range(top + 1):
        for S in combinations(nodes, size):
            comps = components(E, S)
            for mask in range(1 << len(comps)):
                side = frozenset().union(*[c for i, c in enumerate(comps) if mask >> i & 1])
                out.append((frozenset(S), side))
    return out
