"""Command-line front end.

Exit codes: 0 success, 1 a verification failed (a counterexample is dumped),
2 bad input.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import oracle
from .bipartitions import (COUNTING, BipError, BipTreeSet, ChainFamily, StarFamily, Subset,
                           SymbolicSet, dichotomy, forced_orientation_witness, graph_to_bipartitions,
                           verify_witness)
from .checks import SUITES, run_suites
from .fixtures import FIXTURES, fixture, random_model
from .pipeline import PipelineError, distinguishing_tree_set, starting_tree_set, tough_torso_decomposition
from .principal import separation_system
from .sepcore import SepError, tree_from_tree_set
from .symgraph import ModelError, SymbolicGraph, crit, fmt_ref, parse_ref, validate

ENUMERATION = ("named templates before families, families by (template, index); "
               "tangle points ends first then critical sets; pairs in that order")


class InputError(Exception):
    pass


class VerificationFailure(Exception):
    def __init__(self, msg, dump=None):
        super().__init__(msg)
        self.dump = dump or {}


# ---------------------------------------------------------------- input

def read_json(path):
    if path.startswith("fixture:"):
        name = path.split(":", 1)[1]
        if name not in FIXTURES:
            raise InputError(f"unknown fixture {name!r}; known: {', '.join(FIXTURES)}")
        return json.loads(json.dumps(FIXTURES[name]))
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}")
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON in {path}: {exc}")


def load_graph(path, strict=True):
    d = read_json(path)
    try:
        G = SymbolicGraph.from_dict(d)
    except ModelError as exc:
        raise InputError(str(exc))
    if strict:
        diags = validate(G)
        if diags:
            raise InputError("; ".join(diags))
    return G


def _subset(K, d):
    parts = {}
    for c, spec in d.get("classes", {}).items():
        if "all_but" in spec:
            parts[c] = (True, spec["all_but"])
        else:
            parts[c] = (False, spec.get("only", []))
    return Subset.make(K, d.get("named", []), parts)


def load_bip(d, reps=5):
    try:
        K = SymbolicSet(tuple(d["K"].get("named", [])), tuple(d["K"].get("classes", [])))
        T = BipTreeSet(K, reps=reps)
        T.named = [_subset(K, z) for z in d.get("named", [])]
        T.chains = [ChainFamily(_subset(K, c["base"]), c["class"]) for c in d.get("chains", [])]
        T.stars = [StarFamily(K, s["class"], int(s.get("block", 1))) for s in d.get("stars", [])]
        for fam in T.chains:
            fam.positions(1)
        for s in T.stars:
            if s.cls not in K.classes:
                raise BipError(f"unknown class {s.cls}")
    except (KeyError, TypeError, AttributeError) as exc:
        raise InputError(f"malformed bipartition tree set: {exc}")
    except BipError as exc:
        raise InputError(str(exc))
    return T


# ---------------------------------------------------------------- serialization

def dumps(obj):
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _pts(f, X):
    return [fmt_ref(v) for v in f.sorted(X)]


def tree_set_json(f, members, families, provenance):
    out = []
    for s in members:
        d = s.describe()
        d["source"] = provenance.get(s.unoriented(), "")
        out.append(d)
    fams = [{"separator": _pts(f, X), "side": fmt_ref(a), "multiplicity": "omega"} for X, a in families]
    return {"members": out, "families": fams}


def to_dot(f, members, families):
    """One node per splitting star, one edge per named separation, one badge edge per family."""
    lines = ["graph T {", "  node [shape=circle];"]
    try:
        sys_ = separation_system(members)
        ids, edges, stars = tree_from_tree_set(sys_)
    except SepError:
        ids, edges, stars = None, None, None
    if ids is None:
        # not a tree set on its own: one node per separation
        for i, s in enumerate(members):
            lines.append(f'  s{i} [shape=box, label="{{{",".join(_pts(f, s.sep))}}} |{s.order}|"];')
    else:
        for i in ids:
            lines.append(f'  n{i} [label="{i}"];')
        seen = set()
        for (a, b), s in zip(edges, sys_.separations()):
            key = (min(a, b), max(a, b), s)
            if key in seen:
                continue
            seen.add(key)
            x = next(iter(s))
            lines.append(f'  n{a} -- n{b} [label="{{{",".join(_pts(f, x.sep))}}} |{x.order}|"];')
    for j, (X, a) in enumerate(families):
        host = 0
        if stars:
            for i, star in enumerate(stars):
                if all(a in s.B for s in star):
                    host = i
                    break
        src = f"n{host}" if ids is not None else "root"
        if ids is None and j == 0:
            lines.append('  root [shape=point];')
        lines.append(f'  f{j} [shape=doublecircle, label="{fmt_ref(a)}"];')
        lines.append(f'  {src} -- f{j} [label="{{{",".join(_pts(f, X))}}} |{len(X)}| ×ω"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------- commands

def cmd_validate(args):
    G = load_graph(args.file, strict=False)
    diags = validate(G)
    if diags:
        raise InputError("; ".join(diags))
    return {"valid": True, "core_vertices": len(G.core_vertices), "classes": len(G.classes),
            "rays": len(G.rays), "cliques": len(G.cliques)}


def cmd_crit(args):
    G = load_graph(args.file)
    entries = crit(G)
    return {"named": [e.describe() for e in entries if not e.is_family],
            "families": [e.describe() for e in entries if e.is_family]}


def cmd_treeset(args):
    G = load_graph(args.file)
    st = starting_tree_set(G, args.m)
    T = st.T
    out = tree_set_json(T.frame, T.members, T.families, T.provenance)
    out.update({"nested": T.is_nested(), "regular": T.is_regular(),
                "collection": st.Y.describe(),
                "metadata": {"enumeration_order": ENUMERATION, "m": args.m}})
    if args.dot:
        with open(args.dot, "w") as fh:
            fh.write(to_dot(T.frame, T.members, T.families))
    return out


def cmd_decompose(args):
    G = load_graph(args.file)
    D = distinguishing_tree_set(G, args.m)
    f = D.frame
    certs, bad = [], []
    use_oracle = args.aug_bound > 0
    for c in D.certificates:
        ref = None
        if use_oracle and c["order"] <= args.aug_bound:
            ref = oracle.distinction_order(G, c["t1"], c["t2"], max_order=args.aug_bound, k=args.k)
            if ref != c["order"]:
                bad.append(c)
        certs.append({"t1": c["t1"].label(), "t2": c["t2"].label(), "separator": _pts(f, c["sep"].sep),
                      "order": c["order"], "oracle_order": ref, "source": c["source"]})
    out = {"tree_set": tree_set_json(f, D.members, D.start.T.families, D.provenance),
           "points": [p.label() for p in D.points],
           "certificates": certs,
           "provenance": sorted({v for v in D.provenance.values()}),
           "torso_runs": [{"Z": _pts(f, r.Z), "orientation": r.O.rule, "lifts": len(r.lifts)} for r in D.runs],
           "nested": D.is_nested(), "tame": D.all_tame(),
           "metadata": {"enumeration_order": ENUMERATION, "m": args.m,
                        "bounds": {"oracle_max_order": args.aug_bound}, "oracle_k": args.k}}
    if args.dot:
        with open(args.dot, "w") as fh:
            fh.write(to_dot(f, D.members, D.start.T.families))
    if D.failures or bad or not out["nested"] or not out["tame"]:
        raise VerificationFailure("decomposition failed verification",
                                  {"failures": D.failures,
                                   "oracle_mismatch": [x for x in certs if x["oracle_order"] not in (None, x["order"])],
                                   "nested": out["nested"], "tame": out["tame"]})
    return out


def cmd_tough(args):
    G = load_graph(args.file)
    R = tough_torso_decomposition(G, args.m)
    f = R.start.frame
    torsos = []
    for t in R.torsos:
        torsos.append({"point": t["point"].label() if t["point"] else None,
                       "orientation": t["orientation"].rule,
                       "torso": t["torso"].H.to_dict(),
                       "tough": t["tough"]})
    out = {"separators": [_pts(f, X) for X in R.separators()], "torsos": torsos,
           "all_tough": all(t["tough"] for t in R.torsos),
           "metadata": {"enumeration_order": ENUMERATION, "m": args.m}}
    if not out["all_tough"]:
        raise VerificationFailure("a torso is not tough", out)
    return out


def cmd_bip_witness(args):
    d = read_json(args.file)
    if "K" in d:
        T = load_bip(d)
        source = "inline"
    else:
        try:
            G = SymbolicGraph.from_dict(d)
        except ModelError as exc:
            raise InputError(str(exc))
        st = starting_tree_set(G, args.m)
        f = st.frame
        if args.x:
            try:
                X = frozenset(parse_ref(st.Gc, v) for v in args.x.split(","))
            except (ModelError, ValueError) as exc:
                raise InputError(str(exc))
        elif f.crit_sets():
            X = f.crit_sets()[0]
        else:
            raise InputError("graph has no critical vertex set")
        try:
            T = graph_to_bipartitions(st.T, X)
        except BipError as exc:
            raise InputError(str(exc))
        source = "graph at " + "{" + ",".join(_pts(f, X)) + "}"
    out = {"source": source, "tree_set": T.describe()}
    try:
        kind = dichotomy(T).kind
    except BipError as exc:
        raise InputError(str(exc))
    out["dichotomy"] = kind
    if kind == "finite":
        out["report"] = COUNTING
        return out
    try:
        w = forced_orientation_witness(T)
    except BipError as exc:
        out["error"] = str(exc)
        raise VerificationFailure("no witness could be built", out)
    out["witness"] = w.describe()
    problems = verify_witness(T, w)
    out["problems"] = problems
    if problems:
        raise VerificationFailure("witness failed verification", out)
    return out


def cmd_verify(args):
    names = SUITES if args.suite == "all" else tuple(args.suite.split(","))
    if any(n not in SUITES for n in names):
        raise InputError(f"unknown suite; choose from all, {', '.join(SUITES)}")
    if args.file == "random":
        import random
        graphs = [(f"random seed {args.seed + i}", random_model(random.Random(args.seed + i)))
                  for i in range(args.count)]
    else:
        graphs = [(args.file, load_graph(args.file))]
    results = {}
    failed = {}
    for label, G in graphs:
        r = run_suites(G, names, k=args.k, seed=args.seed, m=args.m)
        results[label] = {n: ("pass" if not v else v) for n, v in r.items()}
        if any(r.values()):
            failed[label] = {"graph": G.to_dict(), "problems": {n: v for n, v in r.items() if v}}
    out = {"results": results, "metadata": {"suites": list(names), "k": args.k, "seed": args.seed,
                                            "m": args.m, "count": len(graphs)}}
    if failed:
        raise VerificationFailure("verification suites failed", failed)
    return out


COMMANDS = {"validate": cmd_validate, "crit": cmd_crit, "treeset": cmd_treeset, "decompose": cmd_decompose,
            "tough": cmd_tough, "bip-witness": cmd_bip_witness, "verify": cmd_verify}


def build_parser():
    p = argparse.ArgumentParser(prog="tangleforge", description="Tree-of-tangles decompositions of "
                                "finitely described infinite graphs.")
    sub = p.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sp = sub.add_parser(name)
        sp.add_argument("file", help="graph JSON file, fixture:NAME, or 'random' for verify")
        sp.add_argument("--k", type=int, default=6, help="expansion size for oracle checks")
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--dot", metavar="PATH")
        sp.add_argument("--json", metavar="PATH", help="write the JSON report here instead of stdout")
        sp.add_argument("--aug-bound", type=int, default=4, help="largest separator order the oracle tries")
        sp.add_argument("--m", type=int, default=4, help="materialized instances per omega class")
        if name == "verify":
            sp.add_argument("--suite", default="all")
            sp.add_argument("--count", type=int, default=10, help="number of random models")
        if name == "bip-witness":
            sp.add_argument("--x", help="comma separated critical vertex set")
    return p


def _emit(args, obj, stream):
    text = dumps(obj)
    if getattr(args, "json", None):
        with open(args.json, "w") as fh:
            fh.write(text)
    else:
        stream.write(text)


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "verify" and args.k < 1:
        print("error: --k must be positive", file=sys.stderr)
        return 2
    try:
        out = COMMANDS[args.command](args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except VerificationFailure as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        sys.stderr.write(dumps(exc.dump))
        return 1
    except PipelineError as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        sys.stderr.write(dumps(exc.dump))
        return 1
    _emit(args, out, sys.stdout)
    return 0


if __name__ == "__main__":
    sys.exit(main())
