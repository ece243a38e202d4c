"""Built-in example models and a seeded random model generator."""
from __future__ import annotations

import random

from .symgraph import SymbolicGraph, validate


def _single(cid, name, targets, scope="core", mult="omega"):
    return {"id": cid, "scope": scope, "gadget": {"vertices": [name], "edges": []},
            "attachment": [[name, t] for t in targets], "multiplicity": mult}


FIG2 = {
    "core": {"vertices": ["x1", "x2", "y2", "u"], "edges": [["x2", "y2"], ["u", "x1"]]},
    "classes": [_single("A", "a", ["x1", "x2"]), _single("B", "b", ["x1", "y2"])],
}

# fig2 with class A declared twice; used for separations that split the A-members
FIG2_SPLIT = {
    "core": FIG2["core"],
    "classes": [_single("A1", "a", ["x1", "x2"]), _single("A2", "a", ["x1", "x2"]),
                _single("B", "b", ["x1", "y2"])],
}

TREE3 = {
    "core": {"vertices": ["r"], "edges": []},
    "classes": [_single("C1", "v", ["r"]), _single("C2", "leaf", ["v"], scope="C1")],
}

MIXED = {
    "core": {"vertices": ["p1", "p2", "p3"], "edges": [["p1", "p2"], ["p2", "p3"]]},
    "classes": [_single("M", "m", ["p1", "p2"])],
    "rays": [{"id": "R", "attach": "p3"}, {"id": "S", "attach": "p1"}],
}

# one-ended: a finite path with a ray hanging off its end
PATH_RAY = {
    "core": {"vertices": ["q1", "q2", "q3"], "edges": [["q1", "q2"], ["q2", "q3"]]},
    "rays": [{"id": "R", "attach": "q3"}],
}

# three ends meeting in a triangle; one of them is an omega-clique
THREE_ENDS = {
    "core": {"vertices": ["a", "b", "c"], "edges": [["a", "b"], ["b", "c"], ["a", "c"]]},
    "rays": [{"id": "R1", "attach": "a"}, {"id": "R2", "attach": "b", "dominating": ["b"]}],
    "cliques": [{"id": "K", "attach": ["c"]}],
}

C4 = {
    "core": {"vertices": ["w", "x", "y", "z"],
             "edges": [["w", "x"], ["x", "y"], ["y", "z"], ["z", "w"]]},
}

FINITE_PATH = {
    "core": {"vertices": ["s", "t"], "edges": [["s", "t"]]},
}

FIXTURES = {
    "fig2": FIG2,
    "fig2-split": FIG2_SPLIT,
    "tree3": TREE3,
    "mixed": MIXED,
    "path-ray": PATH_RAY,
    "three-ends": THREE_ENDS,
    "c4": C4,
    "finite-path": FINITE_PATH,
}


def fixture(name) -> SymbolicGraph:
    return SymbolicGraph.from_dict(FIXTURES[name])


def random_model(rng: random.Random, max_core=6, max_classes=3, max_depth=2,
                 rays=True, cliques=True) -> SymbolicGraph:
    """A connected random model; retries until it validates."""
    while True:
        n = rng.randint(1, max_core)
        core = [f"v{i}" for i in range(n)]
        edges = [[core[i], core[rng.randrange(i)]] for i in range(1, n)]
        for _ in range(rng.randint(0, n)):
            a, b = rng.sample(core, 2) if n > 1 else (core[0], core[0])
            if a != b and [a, b] not in edges and [b, a] not in edges:
                edges.append([a, b])
        classes = []
        depth = {}
        for ci in range(rng.randint(0, max_classes)):
            cid = f"K{ci}"
            parents = [c for c in classes if depth[c["id"]] < max_depth]
            scope = rng.choice(parents)["id"] if parents and rng.random() < 0.35 else "core"
            targets = core if scope == "core" else next(c for c in classes if c["id"] == scope)["gadget"]["vertices"]
            gsize = rng.randint(1, 2)
            gv = [f"g{j}" for j in range(gsize)]
            gedges = [[gv[0], gv[1]]] if gsize == 2 and rng.random() < 0.6 else []
            att = []
            for g in gv:
                for t in rng.sample(targets, rng.randint(1, min(2, len(targets)))):
                    att.append([g, t])
            mult = "omega" if rng.random() < 0.75 else rng.randint(1, 2)
            classes.append({"id": cid, "scope": scope, "gadget": {"vertices": gv, "edges": gedges},
                            "attachment": att, "multiplicity": mult})
            depth[cid] = 1 if scope == "core" else depth[scope] + 1
        rs = []
        if rays:
            for ri in range(rng.choice([0, 0, 1, 2])):
                r = {"id": f"R{ri}", "attach": rng.choice(core)}
                if rng.random() < 0.25:
                    r["dominating"] = [rng.choice(core)]
                rs.append(r)
        qs = []
        if cliques and rng.random() < 0.25:
            qs.append({"id": "Q0", "attach": rng.sample(core, rng.randint(1, min(2, n)))})
        G = SymbolicGraph.from_dict({"core": {"vertices": core, "edges": edges},
                                     "classes": classes, "rays": rs, "cliques": qs})
        if not validate(G):
            return G
