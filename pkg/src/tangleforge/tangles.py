"""Tangle points (ends and critical vertex sets) and how they orient separations."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .symgraph import (Frame, GraphSeparation, ModelError, SymbolicGraph, crit, fmt_ref,
                       lexmin_cut, min_vertex_cut, sep_le)


class TangleError(ValueError):
    pass


@dataclass(frozen=True)
class TanglePoint:
    kind: str
    anchor: str | None = None
    X: frozenset | None = None

    @staticmethod
    def end(anchor):
        return TanglePoint("end", anchor=anchor)

    @staticmethod
    def crit(X):
        return TanglePoint("crit", X=frozenset(X))

    def label(self, frame=None):
        if self.kind == "end":
            return f"End({self.anchor})"
        names = sorted(fmt_ref(v) for v in self.X)
        return "Crit({" + ",".join(names) + "})"

    def sort_key(self):
        if self.kind == "end":
            return (0, self.anchor)
        return (1, tuple(sorted(self.X)))


def as_frame(G, m=4) -> Frame:
    return G if isinstance(G, Frame) else G.frame(m)


def anchor_nodes(frame: Frame, t: TanglePoint):
    """Frame atoms that carry the tangle point."""
    if t.kind == "end":
        if any(r.id == t.anchor for r in frame.G.rays):
            return frozenset({("T", t.anchor)})
        if any(q.id == t.anchor for q in frame.G.cliques):
            return frozenset({("Q", t.anchor)})
        raise TangleError(f"unknown end anchor {t.anchor!r}")
    atoms = frame.atoms_at(t.X)
    if not atoms:
        raise TangleError(f"{t.label()} is not a critical vertex set of this frame")
    return atoms


def tangle_points(G: SymbolicGraph, reps=(0, 1), m=4):
    """Every end plus critical sets, families instantiated at the given indices."""
    pts = [TanglePoint.end(r.id) for r in G.rays] + [TanglePoint.end(q.id) for q in G.cliques]
    seen = set()
    for e in crit(G):
        n_wild = sum(1 for _c, i in e.context if i is None)
        for idx in product(reps, repeat=n_wild):
            X = e.instantiate(idx)
            if X not in seen:
                seen.add(X)
                pts.append(TanglePoint.crit(X))
    frame = G.frame(m)
    for t in pts:
        anchor_nodes(frame, t)
    return pts


def residual_groups(sep: GraphSeparation):
    """Residual omega families of G - separator, grouped by neighbourhood."""
    f = sep.frame
    groups = {}
    for c in f.components(sep.sep).residual:
        a = next(iter(c))
        groups.setdefault(f.atom_attach[a], set()).add(a)
    return groups


def is_tame(s: GraphSeparation) -> bool:
    """No neighbourhood class has omega many components on both sides."""
    for atoms in residual_groups(s).values():
        inside = {a in s.side for a in atoms}
        if len(inside) == 2:
            return False
    return True


def orient(t: TanglePoint, s: GraphSeparation) -> GraphSeparation:
    """The orientation (A, B) of s with the tangle point living in B."""
    atoms = anchor_nodes(s.frame, t)
    inside = {a in s.side for a in atoms}
    if len(inside) == 2:
        raise TangleError(f"ambiguous orientation: {t.label()} has omega many components on both sides")
    return s if inside.pop() else s.inverse()


def distinguishes(s, t1, t2) -> bool:
    if t1 == t2:
        raise TangleError("tangle points are identical")
    return orient(t1, s) != orient(t2, s)


def min_order_separator(G, t1, t2, m=4, cuttable=None):
    """Least-order separation distinguishing t1 and t2, oriented toward t2.

    Among the minimum cuts the lexicographically least separator is taken so
    that repeated runs agree.
    """
    if t1 == t2:
        raise TangleError("no separator exists between a tangle point and itself")
    f = as_frame(G, m)
    src, dst = anchor_nodes(f, t1), anchor_nodes(f, t2)
    cuttable = f.concrete if cuttable is None else frozenset(cuttable)
    k, S = lexmin_cut(f.graph, src, dst, cuttable, f.key, limit=len(cuttable))
    if k is None:
        raise TangleError(f"{t1.label()} and {t2.label()} cannot be separated by a finite set")
    comps = f.components(S)
    block = set()
    for a in src:
        block |= comps.containing(a)
    side = f.nodes - S - block
    s = GraphSeparation(f, S, side)
    assert s.is_valid() and is_tame(s) and orient(t2, s) == s and orient(t1, s) != s
    return k, s


def distinction_order(G, t1, t2, m=4, cuttable=None) -> int:
    if t1 == t2:
        raise TangleError("tangle points are identical")
    f = as_frame(G, m)
    cuttable = f.concrete if cuttable is None else frozenset(cuttable)
    k, _ = min_vertex_cut(f.graph, anchor_nodes(f, t1), anchor_nodes(f, t2), cuttable, limit=len(cuttable))
    if k is None:
        raise TangleError(f"{t1.label()} and {t2.label()} cannot be separated by a finite set")
    return k


def efficiently_distinguishes(s, t1, t2) -> bool:
    return distinguishes(s, t1, t2) and s.order == distinction_order(s.frame, t1, t2)


def hat_members(frame: Frame, X):
    """Members of the hat set of X: named components plus residual family atoms."""
    return frame.hat_components(X)


def cofinal_bound(t: TanglePoint, s: GraphSeparation) -> GraphSeparation:
    """(X, C) with C a cofinite part of the hat set of X and s <= (X, C)."""
    if t.kind != "crit":
        raise TangleError("cofinal_bound needs a critical tangle point")
    if orient(t, s) != s:
        raise TangleError("separation is not oriented toward the tangle point")
    f = s.frame
    picked = [c for c in f.hat_components(t.X) if c <= s.side]
    out = GraphSeparation.from_components(f, t.X, picked)
    assert sep_le(s, out) and orient(t, out) == out
    return out


def is_generous(s: GraphSeparation) -> bool:
    hat = s.frame.hat_components(s.sep)
    return any(c <= s.side for c in hat) and any(not (c <= s.side) for c in hat)


def hat_size(frame: Frame, X):
    """Number of members of the hat set; None stands for infinitely many."""
    cs = frame.components(X)
    hat = cs.hat()
    if any(cs.is_family(c) for c in hat):
        return None
    return len(hat)


def is_generous_set(G, X, m=4) -> bool:
    n = hat_size(as_frame(G, m), frozenset(X))
    return n is None or n >= 2


def require_critical(frame, X):
    if not frame.is_critical(X):
        raise ModelError(f"{sorted(fmt_ref(v) for v in X)} is not critical")
