"""Finitely described infinite graphs.

A model is a finite core plus gadget classes (finite or omega multiplicity,
possibly nested inside instances of a parent class), ray classes and
omega-cliques.  All symbolic work happens on a `Frame`: the first `m`
instances of every omega class are materialized, and every family of
remaining instances becomes one *atom* node.  Rays keep `m` explicit
vertices plus a tail atom, omega-cliques keep `m` vertices plus a remainder
atom.  Vertex references are tagged tuples:

    ("c", name)               core vertex
    ("g", path, name)         gadget vertex; path = ((class, index), ...)
    ("r", ray, n)             n-th ray vertex
    ("k", clique, n)          n-th clique vertex
    ("F", ctx, class, piece)  all instances >= m of `class` in context ctx, one piece each
    ("T", ray)                ray tail beyond the frame
    ("Q", clique)             clique remainder beyond the frame
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from itertools import combinations

OMEGA = None
ATOM_TAGS = ("F", "T", "Q")


class ModelError(ValueError):
    pass


@dataclass(frozen=True)
class GadgetClass:
    id: str
    scope: str | None
    vertices: tuple
    edges: tuple
    attachment: tuple
    multiplicity: int | None = OMEGA

    @property
    def omega(self):
        return self.multiplicity is OMEGA


@dataclass(frozen=True)
class RayClass:
    id: str
    attach: str
    dominating: tuple = ()


@dataclass(frozen=True)
class CliqueClass:
    id: str
    attach: tuple


@dataclass(frozen=True)
class SymbolicGraph:
    core_vertices: tuple
    core_edges: tuple = ()
    classes: tuple = ()
    rays: tuple = ()
    cliques: tuple = ()
    _cache: dict = field(default_factory=dict, compare=False, hash=False, repr=False)

    # ---- construction / serialization

    @classmethod
    def from_dict(cls, d):
        try:
            core = d.get("core", {})
            classes = []
            for c in d.get("classes", []):
                mult = c.get("multiplicity", "omega")
                if mult == "omega":
                    mult = OMEGA
                elif not isinstance(mult, int) or isinstance(mult, bool):
                    raise ModelError(f"class {c.get('id')}: bad multiplicity {mult!r}")
                scope = c.get("scope", "core")
                g = c.get("gadget", {})
                classes.append(GadgetClass(
                    id=str(c["id"]),
                    scope=None if scope in (None, "core") else str(scope),
                    vertices=tuple(str(v) for v in g.get("vertices", [])),
                    edges=tuple((str(a), str(b)) for a, b in g.get("edges", [])),
                    attachment=tuple((str(a), str(b)) for a, b in c.get("attachment", [])),
                    multiplicity=mult))
            rays = [RayClass(str(r["id"]), str(r["attach"]), tuple(str(v) for v in r.get("dominating", [])))
                    for r in d.get("rays", [])]
            cliques = [CliqueClass(str(q["id"]), tuple(str(v) for v in q.get("attach", [])))
                       for q in d.get("cliques", [])]
            return cls(tuple(str(v) for v in core.get("vertices", [])),
                       tuple((str(a), str(b)) for a, b in core.get("edges", [])),
                       tuple(classes), tuple(rays), tuple(cliques))
        except (KeyError, TypeError, AttributeError, ValueError) as exc:
            if isinstance(exc, ModelError):
                raise
            raise ModelError(f"malformed graph description: {exc}") from exc

    @classmethod
    def from_json(cls, text):
        try:
            d = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ModelError(f"invalid JSON: {exc}") from exc
        if not isinstance(d, dict):
            raise ModelError("graph description must be a JSON object")
        return cls.from_dict(d)

    def to_dict(self):
        out = {"core": {"vertices": list(self.core_vertices), "edges": [list(e) for e in self.core_edges]},
               "classes": [], "rays": [], "cliques": []}
        for c in self.classes:
            out["classes"].append({
                "id": c.id, "scope": c.scope or "core",
                "gadget": {"vertices": list(c.vertices), "edges": [list(e) for e in c.edges]},
                "attachment": [list(a) for a in c.attachment],
                "multiplicity": "omega" if c.omega else c.multiplicity})
        for r in self.rays:
            item = {"id": r.id, "attach": r.attach}
            if r.dominating:
                item["dominating"] = list(r.dominating)
            out["rays"].append(item)
        for q in self.cliques:
            out["cliques"].append({"id": q.id, "attach": list(q.attach)})
        return out

    def replace(self, **kw):
        d = dict(core_vertices=self.core_vertices, core_edges=self.core_edges, classes=self.classes,
                 rays=self.rays, cliques=self.cliques)
        d.update(kw)
        return SymbolicGraph(**d)

    # ---- class structure

    def cls(self, cid) -> GadgetClass:
        for c in self.classes:
            if c.id == cid:
                return c
        raise ModelError(f"unknown class {cid!r}")

    def children(self, scope):
        return [c for c in self.classes if c.scope == scope]

    def class_order(self):
        """Classes with every parent before its children."""
        out, placed = [], set()
        pending = list(self.classes)
        while pending:
            progress = False
            for c in list(pending):
                if c.scope is None or c.scope in placed:
                    out.append(c)
                    placed.add(c.id)
                    pending.remove(c)
                    progress = True
            if not progress:
                raise ModelError("class scopes form a cycle or reference unknown classes")
        return out

    def pieces(self, cid):
        """Connected pieces of one generic instance subtree of a class.

        Returns a list of (piece, attach) with piece a sorted tuple of the
        class's own gadget vertices and attach the sorted scope vertices the
        piece is joined to.
        """
        key = ("pieces", cid)
        if key in self._cache:
            return self._cache[key]
        c = self.cls(cid)
        parent = {v: v for v in c.vertices}

        def find(v):
            while parent[v] != v:
                parent[v] = parent[parent[v]]
                v = parent[v]
            return v

        def union(a, b):
            parent[find(a)] = find(b)

        for a, b in c.edges:
            union(a, b)
        for child in self.children(cid):
            for _piece, att in self.pieces(child.id):
                for a, b in zip(att, att[1:]):
                    union(a, b)
        groups = {}
        for v in c.vertices:
            groups.setdefault(find(v), []).append(v)
        out = []
        for vs in groups.values():
            piece = tuple(sorted(vs))
            att = tuple(sorted({s for g, s in c.attachment if g in piece}))
            out.append((piece, att))
        out.sort()
        self._cache[key] = out
        return out

    def parent_piece(self, cid, piece):
        """The piece of the parent class that a child piece hangs off."""
        c = self.cls(cid)
        att = dict(self.pieces(cid))[piece]
        for p, _a in self.pieces(c.scope):
            if att and att[0] in p:
                return p
        raise ModelError(f"piece {piece} of {cid} has no attachment")

    def depth(self):
        best = 0
        for c in self.classes:
            d, cur = 1, c
            while cur.scope is not None:
                cur = self.cls(cur.scope)
                d += 1
            best = max(best, d)
        return best

    def frame(self, m=4):
        key = ("frame", m)
        if key not in self._cache:
            self._cache[key] = Frame(self, m)
        return self._cache[key]


# ---------------------------------------------------------------- validation

def validate(G: SymbolicGraph):
    """List of diagnostics; empty means the model is usable."""
    diags = []
    if not G.core_vertices and not G.classes and not G.rays and not G.cliques:
        return ["empty vertex set"]
    if not G.core_vertices:
        diags.append("empty core: every class, ray and clique must attach to core vertices")
    core = set(G.core_vertices)
    if len(core) != len(G.core_vertices):
        diags.append("duplicate core vertex")
    for a, b in G.core_edges:
        if a not in core or b not in core:
            diags.append(f"core edge {a}-{b} uses an unknown vertex")
        if a == b:
            diags.append(f"core loop at {a}")
    ids = [c.id for c in G.classes] + [r.id for r in G.rays] + [q.id for q in G.cliques]
    if len(set(ids)) != len(ids):
        diags.append("duplicate class/ray/clique id")
    by_id = {c.id: c for c in G.classes}
    for c in G.classes:
        where = f"class {c.id}"
        if c.scope is not None and c.scope not in by_id:
            diags.append(f"{where}: unknown scope {c.scope}")
            continue
        if not c.vertices:
            diags.append(f"{where}: empty gadget")
        if c.multiplicity is not OMEGA and c.multiplicity < 1:
            diags.append(f"{where}: multiplicity must be >= 1")
        gv = set(c.vertices)
        for a, b in c.edges:
            if a not in gv or b not in gv:
                diags.append(f"{where}: gadget edge {a}-{b} uses an unknown vertex")
        scope_vs = core if c.scope is None else set(by_id[c.scope].vertices)
        for g, s in c.attachment:
            if g not in gv:
                diags.append(f"{where}: attachment from unknown gadget vertex {g}")
            if s not in scope_vs:
                diags.append(f"{where}: attachment target {s} not in scope")
    if diags:
        return diags
    try:
        G.class_order()
    except ModelError as exc:
        return [str(exc)]
    for c in G.classes:
        for piece, att in G.pieces(c.id):
            if not att:
                diags.append(f"class {c.id}: gadget piece {list(piece)} is not attached (disconnected)")
    for r in G.rays:
        if r.attach not in core:
            diags.append(f"ray {r.id}: attachment {r.attach} not in core")
        for d in r.dominating:
            if d not in core:
                diags.append(f"ray {r.id}: dominating vertex {d} not in core")
    for q in G.cliques:
        if not q.attach:
            diags.append(f"clique {q.id}: empty attachment (disconnected)")
        for v in q.attach:
            if v not in core:
                diags.append(f"clique {q.id}: attachment {v} not in core")
    if diags:
        return diags
    fg = expand(G, 1)
    if len(fg.components(())) > 1:
        diags.append("graph is disconnected")
    return diags


def check(G: SymbolicGraph):
    diags = validate(G)
    if diags:
        raise ModelError("; ".join(diags))
    return G


# ------------------------------------------------------------- ref helpers

def is_atom(node):
    return node[0] in ATOM_TAGS


_RANK = {"c": 0, "g": 1, "r": 2, "k": 3, "F": 4, "T": 5, "Q": 6}


def ref_key(node):
    return (_RANK[node[0]], node)


def fmt_path(path):
    return ".".join(f"{c}[{'*' if i is None else i}]" for c, i in path)


def fmt_ref(node):
    tag = node[0]
    if tag == "c":
        return node[1]
    if tag == "g":
        return f"{fmt_path(node[1])}.{node[2]}"
    if tag == "r":
        return f"{node[1]}#{node[2]}"
    if tag == "k":
        return f"{node[1]}#{node[2]}"
    if tag == "F":
        ctx = fmt_path(node[1])
        head = f"{ctx}." if ctx else ""
        return f"{head}{node[2]}[*].{{{','.join(node[3])}}}"
    if tag == "T":
        return f"{node[1]}#tail"
    if tag == "Q":
        return f"{node[1]}#rest"
    raise ValueError(node)


_PATH_RE = re.compile(r"([^.\[\]#]+)\[(\d+)\]")


def parse_ref(G: SymbolicGraph, text: str):
    """Inverse of fmt_ref for concrete vertices."""
    if text in G.core_vertices:
        return ("c", text)
    if "#" in text:
        name, pos = text.rsplit("#", 1)
        if pos.isdigit():
            if any(r.id == name for r in G.rays):
                return ("r", name, int(pos))
            if any(q.id == name for q in G.cliques):
                return ("k", name, int(pos))
    parts = text.split(".")
    path = []
    for p in parts[:-1]:
        mt = _PATH_RE.fullmatch(p)
        if not mt:
            break
        path.append((mt.group(1), int(mt.group(2))))
    else:
        if path:
            return ("g", tuple(path), parts[-1])
    raise ModelError(f"cannot resolve vertex reference {text!r}")


def sort_nodes(nodes):
    return sorted(nodes, key=ref_key)


# ------------------------------------------------------------- finite graphs

class FiniteGraph:
    """Plain finite graph over hashable nodes with union-find components."""

    def __init__(self, nodes, edges=()):
        self.nodes = tuple(nodes)
        self.adj = {v: set() for v in self.nodes}
        for a, b in edges:
            if a != b:
                self.adj[a].add(b)
                self.adj[b].add(a)

    def edges(self):
        seen = set()
        out = []
        for v in self.nodes:
            for w in self.adj[v]:
                e = frozenset((v, w))
                if e not in seen:
                    seen.add(e)
                    out.append((v, w))
        return out

    def components(self, removed):
        removed = set(removed)
        seen = set(removed)
        comps = []
        for v in self.nodes:
            if v in seen:
                continue
            comp = {v}
            seen.add(v)
            todo = [v]
            while todo:
                x = todo.pop()
                for y in self.adj[x]:
                    if y not in seen:
                        seen.add(y)
                        comp.add(y)
                        todo.append(y)
            comps.append(frozenset(comp))
        return comps

    def neighbours(self, vs):
        out = set()
        for v in vs:
            out |= self.adj[v]
        return out - set(vs)

    def subgraph(self, keep):
        keep = set(keep)
        g = FiniteGraph([v for v in self.nodes if v in keep])
        for v in g.nodes:
            g.adj[v] = self.adj[v] & keep
        return g


# ------------------------------------------------------------- instances

def _scope_ref(ctx, name):
    return ("c", name) if not ctx else ("g", ctx, name)


def _instance_paths(G: SymbolicGraph, k):
    """Instance paths of every class with omega replaced by k copies."""
    paths = []
    by_class = {}
    for c in G.class_order():
        ctxs = [()] if c.scope is None else by_class.get(c.scope, [])
        mine = []
        for ctx in ctxs:
            n = k if c.omega else c.multiplicity
            for i in range(n):
                mine.append(ctx + ((c.id, i),))
        by_class[c.id] = mine
        paths += mine
    return paths, by_class


def _build(G: SymbolicGraph, k, atoms=True):
    paths, by_class = _instance_paths(G, k)
    nodes = [("c", v) for v in G.core_vertices]
    edges = [(("c", a), ("c", b)) for a, b in G.core_edges]
    for p in paths:
        c = G.cls(p[-1][0])
        ctx = p[:-1]
        nodes += [("g", p, v) for v in c.vertices]
        edges += [(("g", p, a), ("g", p, b)) for a, b in c.edges]
        edges += [(("g", p, g), _scope_ref(ctx, s)) for g, s in c.attachment]
    atom_attach = {}
    if atoms:
        for c in G.class_order():
            if not c.omega:
                continue
            ctxs = [()] if c.scope is None else by_class[c.scope]
            for ctx in ctxs:
                for piece, att in G.pieces(c.id):
                    a = ("F", ctx, c.id, piece)
                    nodes.append(a)
                    atom_attach[a] = frozenset(_scope_ref(ctx, s) for s in att)
                    edges += [(a, t) for t in atom_attach[a]]
    for r in G.rays:
        dom = [("c", d) for d in r.dominating]
        prev = ("c", r.attach)
        for n in range(k):
            v = ("r", r.id, n)
            nodes.append(v)
            edges.append((prev, v))
            edges += [(v, d) for d in dom]
            prev = v
        if atoms:
            t = ("T", r.id)
            nodes.append(t)
            edges.append((prev, t))
            edges += [(t, d) for d in dom]
    for q in G.cliques:
        att = [("c", v) for v in q.attach]
        vs = [("k", q.id, n) for n in range(k)]
        nodes += vs
        edges += [(a, b) for a, b in combinations(vs, 2)]
        edges += [(v, a) for v in vs for a in att]
        if atoms:
            t = ("Q", q.id)
            nodes.append(t)
            edges += [(t, v) for v in vs + att]
    return nodes, edges, paths, atom_attach


def expand(G: SymbolicGraph, k: int) -> FiniteGraph:
    """Finite expansion: k instances per omega class, rays of k vertices, k-cliques."""
    if k < 1:
        raise ValueError("k must be positive")
    # built independently of the frame so the two can be checked against each other
    nodes = [("c", v) for v in G.core_vertices]
    edges = [(("c", a), ("c", b)) for a, b in G.core_edges]

    def grow(scope, ctx):
        for c in G.children(scope):
            for i in range(k if c.omega else c.multiplicity):
                path = ctx + ((c.id, i),)
                nodes.extend(("g", path, v) for v in c.vertices)
                edges.extend((("g", path, a), ("g", path, b)) for a, b in c.edges)
                for g, s in c.attachment:
                    edges.append((("g", path, g), ("c", s) if scope is None else ("g", ctx, s)))
                grow(c.id, path)

    grow(None, ())
    for r in G.rays:
        for n in range(k):
            edges.append((("c", r.attach) if n == 0 else ("r", r.id, n - 1), ("r", r.id, n)))
            nodes.append(("r", r.id, n))
            edges.extend((("r", r.id, n), ("c", d)) for d in r.dominating)
    for q in G.cliques:
        for n in range(k):
            nodes.append(("k", q.id, n))
            edges.extend((("k", q.id, n), ("k", q.id, j)) for j in range(n))
            edges.extend((("k", q.id, n), ("c", a)) for a in q.attach)
    return FiniteGraph(nodes, edges)


# ------------------------------------------------------------- frame

class ComponentSet:
    """Components of G - X on a frame.

    `named` are explicit components (finite, or containing atoms merged
    with explicit vertices).  `residual` are atoms isolated by X: each
    stands for omega many components, one per generic instance.
    """

    def __init__(self, frame, X, comps):
        self.frame = frame
        self.X = X
        self.comps = comps
        self.residual = tuple(c for c in comps if len(c) == 1 and next(iter(c))[0] == "F")
        self.named = tuple(c for c in comps if c not in set(self.residual))
        self.nbr = {c: frozenset(frame.graph.neighbours(c)) for c in comps}
        self._where = {}
        for c in comps:
            for v in c:
                self._where[v] = c

    def containing(self, node):
        return self._where.get(node)

    def hat(self):
        """Components whose neighbourhood is exactly X."""
        return [c for c in self.comps if self.nbr[c] == self.X]

    def is_family(self, comp):
        return comp in self.residual

    def describe(self):
        fmt = lambda c: [fmt_ref(v) for v in sort_nodes(c)]
        return {"separator": fmt(self.X),
                "named": [{"vertices": fmt(c), "neighbourhood": fmt(self.nbr[c])} for c in self.named],
                "residual": [{"family": fmt_ref(next(iter(c))), "neighbourhood": fmt(self.nbr[c]),
                              "multiplicity": "omega"} for c in self.residual]}


class Frame:
    def __init__(self, G: SymbolicGraph, m=4):
        if m < 2:
            raise ValueError("frame needs m >= 2")
        self.G = G
        self.m = m
        nodes, edges, paths, atom_attach = _build(G, m, atoms=True)
        self.graph = FiniteGraph(nodes, edges)
        self.nodes = frozenset(nodes)
        self.order = {v: i for i, v in enumerate(sorted(nodes, key=ref_key))}
        self.paths = paths
        self.atom_attach = atom_attach
        self.concrete = frozenset(v for v in nodes if not is_atom(v))
        self._comp_cache = {}

    def key(self, v):
        return self.order[v]

    def sorted(self, vs):
        return sorted(vs, key=self.order.__getitem__)

    def components(self, X) -> ComponentSet:
        X = frozenset(X)
        cs = self._comp_cache.get(X)
        if cs is None:
            bad = [v for v in X if v not in self.concrete]
            if bad:
                raise ModelError(f"separator contains non-concrete or unknown refs: {bad}")
            comps = self.graph.components(X)
            comps.sort(key=lambda c: min(self.order[v] for v in c))
            cs = ComponentSet(self, X, comps)
            self._comp_cache[X] = cs
        return cs

    def hat_components(self, X):
        return self.components(X).hat()

    def is_critical(self, X):
        X = frozenset(X)
        return any(self.atom_attach[next(iter(c))] == X for c in self.components(X).residual)

    def crit_sets(self):
        """Critical vertex sets whose context is materialized in this frame."""
        out = []
        for a in self.frame_atoms("F"):
            X = self.atom_attach[a]
            if X not in out:
                out.append(X)
        return out

    def frame_atoms(self, tag):
        return [v for v in self.sorted(self.nodes) if v[0] == tag]

    def atoms_at(self, X):
        X = frozenset(X)
        return frozenset(a for a, att in self.atom_attach.items() if att == X)

    # -- projection onto finite expansions

    def touched_indices(self, nodes):
        """Largest omega instance index / ray position used by concrete nodes."""
        best = -1
        for v in nodes:
            if v[0] == "g":
                for c, i in v[1]:
                    if self.G.cls(c).omega:
                        best = max(best, i)
            elif v[0] in ("r", "k"):
                best = max(best, v[2])
        return best

    def project(self, node, k):
        G = self.G
        tag = node[0]
        if tag == "c":
            return {node}
        if tag == "g":
            ok = all(i < k or not G.cls(c).omega for c, i in node[1])
            return {node} if ok else set()
        if tag in ("r", "k"):
            return {node} if node[2] < k else set()
        if tag == "T":
            return {("r", node[1], n) for n in range(self.m, k)}
        if tag == "Q":
            return {("k", node[1], n) for n in range(self.m, k)}
        ctx, cid, piece = node[1], node[2], node[3]
        if not all(i < k or not G.cls(c).omega for c, i in ctx):
            return set()
        out = set()
        for i in range(self.m, k):
            out |= _piece_vertices(G, ctx + ((cid, i),), piece, k)
        return out

    def project_set(self, nodes, k):
        out = set()
        for v in nodes:
            out |= self.project(v, k)
        return frozenset(out)


def _piece_vertices(G, path, piece, k):
    out = {("g", path, v) for v in piece}
    cid = path[-1][0]
    for child in G.children(cid):
        n = k if child.omega else child.multiplicity
        for cp, _att in G.pieces(child.id):
            if G.parent_piece(child.id, cp) != piece:
                continue
            for j in range(n):
                out |= _piece_vertices(G, path + ((child.id, j),), cp, k)
    return out


# ------------------------------------------------------------- critical sets

@dataclass(frozen=True)
class CritEntry:
    """A critical set, or a family of them (one per instance of the wildcard classes)."""
    context: tuple
    names: tuple

    @property
    def is_family(self):
        return any(i is None for _c, i in self.context)

    def instantiate(self, indices=()):
        it = iter(indices)
        ctx = tuple((c, next(it) if i is None else i) for c, i in self.context)
        return frozenset(_scope_ref(ctx, n) for n in self.names)

    def matches(self, X):
        X = frozenset(X)
        for v in X:
            if self.context:
                if v[0] != "g" or len(v[1]) != len(self.context):
                    return False
                for (c, i), (c2, i2) in zip(self.context, v[1]):
                    if c != c2 or (i is not None and i != i2):
                        return False
            elif v[0] != "c":
                return False
        ctxs = {v[1] for v in X} if self.context else {()}
        if len(ctxs) != 1:
            return False
        ctx = next(iter(ctxs))
        return X == frozenset(_scope_ref(ctx, n) for n in self.names)

    def describe(self):
        return {"context": fmt_path(self.context), "vertices": list(self.names),
                "family": self.is_family}


def crit(G: SymbolicGraph):
    """All critical vertex sets as named sets plus per-instance families."""
    out = []
    for c in G.class_order():
        if not c.omega:
            continue
        for tmpl in _context_templates(G, c.scope):
            for _piece, att in G.pieces(c.id):
                e = CritEntry(tmpl, att)
                if e not in out:
                    out.append(e)
    return out


def _context_templates(G, scope):
    if scope is None:
        return [()]
    c = G.cls(scope)
    out = []
    for t in _context_templates(G, c.scope):
        if c.omega:
            out.append(t + ((c.id, None),))
        else:
            out += [t + ((c.id, i),) for i in range(c.multiplicity)]
    return out


def is_critical(G: SymbolicGraph, X, m=4):
    return G.frame(m).is_critical(X)


def components(G: SymbolicGraph, X, m=4) -> ComponentSet:
    return G.frame(m).components(X)


def hat_components(G: SymbolicGraph, X, m=4):
    return G.frame(m).hat_components(X)


# ------------------------------------------------------------- separations

class GraphSeparation:
    """Oriented separation (A, B) = (V - side, sep | side) on a frame.

    `side` is a union of components of G - sep, so this is the pair written
    (X, C) for the component selection C; its inverse is (C, X).
    """

    __slots__ = ("frame", "sep", "side", "_h")

    def __init__(self, frame: Frame, sep, side):
        self.frame = frame
        self.sep = frozenset(sep)
        self.side = frozenset(side)
        self._h = None

    @classmethod
    def from_components(cls, frame, X, comps):
        side = frozenset().union(*comps) if comps else frozenset()
        return cls(frame, X, side)

    @property
    def order(self):
        return len(self.sep)

    @property
    def A(self):
        return self.frame.nodes - self.side

    @property
    def B(self):
        return self.sep | self.side

    @property
    def co_side(self):
        return self.frame.nodes - self.sep - self.side

    def inverse(self):
        return GraphSeparation(self.frame, self.sep, self.co_side)

    def is_valid(self):
        if self.sep & self.side:
            return False
        if not self.sep <= self.frame.concrete:
            return False
        rest = self.co_side
        adj = self.frame.graph.adj
        return not any(adj[v] & rest for v in self.side)

    def is_small(self):
        return not self.co_side

    def is_cosmall(self):
        return not self.side

    def unoriented(self):
        other = self.co_side
        return (self.sep, frozenset((self.side, other)))

    def __eq__(self, other):
        return (isinstance(other, GraphSeparation) and self.frame is other.frame
                and self.sep == other.sep and self.side == other.side)

    def __hash__(self):
        if self._h is None:
            self._h = hash((self.sep, self.side))
        return self._h

    def __repr__(self):
        return f"Sep({self.describe()})"

    def describe(self):
        f = self.frame
        return {"separator": [fmt_ref(v) for v in f.sorted(self.sep)],
                "side": [fmt_ref(v) for v in f.sorted(self.side)],
                "order": self.order}


def _same(s, t):
    if s.frame is not t.frame:
        raise ModelError("separations live on different graphs/frames")


def sep_le(s: GraphSeparation, t: GraphSeparation) -> bool:
    """(A,B) <= (C,D) iff A is inside C and B contains D."""
    _same(s, t)
    return t.side <= s.side and t.sep <= (s.sep | s.side)


def is_nested_pair(s, t) -> bool:
    si, ti = s.inverse(), t.inverse()
    return sep_le(s, t) or sep_le(s, ti) or sep_le(si, t) or sep_le(si, ti)


def sup(s: GraphSeparation, t: GraphSeparation) -> GraphSeparation:
    """(A u C, B n D)."""
    _same(s, t)
    X, R, Y, S = s.sep, s.side, t.sep, t.side
    out = GraphSeparation(s.frame, (X & Y) | (X & S) | (R & Y), R & S)
    assert out.is_valid(), "supremum has a jumping edge"
    return out


def inf(s: GraphSeparation, t: GraphSeparation) -> GraphSeparation:
    """(A n C, B u D)."""
    _same(s, t)
    X, R, Y, S = s.sep, s.side, t.sep, t.side
    out = GraphSeparation(s.frame, (X | Y) - (R | S), R | S)
    assert out.is_valid(), "infimum has a jumping edge"
    return out


# ------------------------------------------------------------- min vertex cuts

INF = float("inf")


def min_vertex_cut(graph: FiniteGraph, sources, sinks, cuttable, limit=8, removed=()):
    """Minimum number of cuttable vertices separating sources from sinks.

    Unit-capacity augmenting paths on the split graph; returns (value, cut)
    or (None, None) when more than `limit` vertices would be needed.
    """
    removed = set(removed)
    sources = set(sources) - removed
    sinks = set(sinks) - removed
    if sources & sinks:
        return None, None
    flow = {}

    def cap(u, v):
        # u, v are (node, side) with side 0 = in, 1 = out
        if u[0] == v[0]:
            if u[1] == 0:
                base = 1 if u[0] in cuttable else INF
            else:
                base = 0
        else:
            base = INF if (u[1] == 1 and v[1] == 0) else 0
        return base - flow.get((u, v), 0)

    def nbrs(u):
        node, side = u
        if side == 0:
            yield (node, 1)
            for w in graph.adj[node]:
                if w not in removed:
                    yield (w, 1)  # residual of w_out -> node_in
        else:
            yield (node, 0)
            for w in graph.adj[node]:
                if w not in removed:
                    yield (w, 0)

    def augment():
        start = [(s, 0) for s in sources]
        prev = {u: None for u in start}
        todo = list(start)
        while todo:
            nxt = []
            for u in todo:
                for v in nbrs(u):
                    if v in prev or cap(u, v) <= 0:
                        continue
                    prev[v] = u
                    if v[1] == 1 and v[0] in sinks:
                        path = [v]
                        while prev[path[-1]] is not None:
                            path.append(prev[path[-1]])
                        path.reverse()
                        for a, b in zip(path, path[1:]):
                            flow[(a, b)] = flow.get((a, b), 0) + 1
                            flow[(b, a)] = flow.get((b, a), 0) - 1
                        return True, prev
                    nxt.append(v)
            todo = nxt
        return False, prev

    value = 0
    while True:
        found, reach = augment()
        if not found:
            break
        value += 1
        if value > limit:
            return None, None
    cut = {n for (n, side) in reach if side == 0 and (n, 1) not in reach}
    return value, frozenset(cut)


def lexmin_cut(graph, sources, sinks, cuttable, order_key, limit=8):
    """Lexicographically least minimum cut (as a sorted sequence)."""
    value, _cut = min_vertex_cut(graph, sources, sinks, cuttable, limit)
    if value is None:
        return None, None
    chosen = []
    for v in sorted(cuttable, key=order_key):
        if len(chosen) == value:
            break
        if v in sources or v in sinks:
            continue
        rest, _ = min_vertex_cut(graph, sources, sinks, cuttable, limit, removed=chosen + [v])
        if rest == value - len(chosen) - 1:
            chosen.append(v)
    assert len(chosen) == value
    return value, frozenset(chosen)
