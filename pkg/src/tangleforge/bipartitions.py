"""Tree sets of bipartitions of a countable set and the forced-orientation witness.

Subsets of K are written (named part, per-class part), each class part
being a finite or a cofinite set of indices.  In the separation system of
bipartitions the order is reverse inclusion and the involution is the
complement in K.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .sepcore import SepSystem, is_consistent


class BipError(ValueError):
    pass


@dataclass(frozen=True)
class SymbolicSet:
    named: tuple
    classes: tuple

    def full(self):
        return Subset.make(self, self.named, {c: (True, ()) for c in self.classes})

    def empty(self):
        return Subset.make(self, (), {})

    def element(self, cls, i):
        return Subset.make(self, (), {cls: (False, (i,))})

    def describe(self):
        return {"named": list(self.named), "classes": list(self.classes)}


@dataclass(frozen=True)
class Subset:
    K: SymbolicSet
    named: frozenset
    parts: tuple   # ((cls, cofinite, frozenset(indices)), ...) for every class of K

    @staticmethod
    def make(K, named, parts):
        named = frozenset(named)
        if not named <= set(K.named):
            raise BipError("unknown named element")
        out = []
        for c in K.classes:
            cof, idx = parts.get(c, (False, ()))
            out.append((c, bool(cof), frozenset(idx)))
        return Subset(K, named, tuple(out))

    def part(self, cls):
        for c, cof, idx in self.parts:
            if c == cls:
                return cof, idx
        raise BipError(f"unknown class {cls}")

    def has(self, cls, i):
        cof, idx = self.part(cls)
        return (i not in idx) if cof else (i in idx)

    def complement(self):
        return Subset(self.K, frozenset(self.K.named) - self.named,
                      tuple((c, not cof, idx) for c, cof, idx in self.parts))

    def _combine(self, other, op):
        named = (self.named | other.named) if op == _OR else (self.named & other.named)
        parts = []
        for (c, a, x), (_c, b, y) in zip(self.parts, other.parts):
            # generic indices follow the flags, only listed indices can differ
            cof = op_bool(op, a, b)
            universe = x | y
            idx = frozenset(i for i in universe
                            if op_bool(op, (i not in x) if a else (i in x), (i not in y) if b else (i in y)) != cof)
            parts.append((c, cof, idx))
        return Subset(self.K, named, tuple(parts))

    def __or__(self, other):
        return self._combine(other, _OR)

    def __and__(self, other):
        return self._combine(other, _AND)

    def __sub__(self, other):
        return self & other.complement()

    def __le__(self, other):
        return (self - other).is_empty()

    def __ge__(self, other):
        return other <= self

    def is_empty(self):
        return not self.named and all(not cof and not idx for _c, cof, idx in self.parts)

    def is_full(self):
        return self.complement().is_empty()

    def is_infinite(self):
        return any(cof for _c, cof, _i in self.parts)

    def describe(self):
        parts = {}
        for c, cof, idx in self.parts:
            if cof:
                parts[c] = {"all_but": sorted(idx)}
            elif idx:
                parts[c] = {"only": sorted(idx)}
        return {"named": sorted(self.named), "classes": parts}


_OR, _AND = "or", "and"


def op_bool(op, a, b):
    return (a or b) if op == _OR else (a and b)


def is_nested_bip(Z1: Subset, Z2: Subset) -> bool:
    return Z1 <= Z2 or Z2 <= Z1 or (Z1 | Z2).is_full() or (Z1 & Z2).is_empty()


# ---------------------------------------------------------------- families

@dataclass(frozen=True)
class ChainFamily:
    """Z_n = base minus its first n elements of `cls`; Z_0 > Z_1 > ..."""
    base: Subset
    cls: str

    def positions(self, n):
        cof, idx = self.base.part(self.cls)
        if not cof:
            raise BipError("chain base must contain cofinitely many elements of its class")
        out, i = [], 0
        while len(out) < n:
            if i not in idx:
                out.append(i)
            i += 1
        return out

    def member(self, n):
        drop = Subset.make(self.base.K, (), {self.cls: (False, self.positions(n))})
        return self.base - drop

    def limit(self):
        return self.base - Subset.make(self.base.K, (), {self.cls: (True, ())})

    def describe(self):
        return {"kind": "chain", "base": self.base.describe(), "class": self.cls}


@dataclass(frozen=True)
class StarFamily:
    """Z_i = K minus the i-th block of `block` consecutive elements of `cls`."""
    K: SymbolicSet
    cls: str
    block: int = 1

    def removed(self, i):
        return Subset.make(self.K, (), {self.cls: (False, range(i * self.block, (i + 1) * self.block))})

    def member(self, i):
        return self.K.full() - self.removed(i)

    def describe(self):
        return {"kind": "star", "class": self.cls, "block": self.block}


@dataclass
class BipTreeSet:
    K: SymbolicSet
    named: list = field(default_factory=list)
    chains: list = field(default_factory=list)
    stars: list = field(default_factory=list)
    reps: int = 5

    def representatives(self, n=None):
        """Named members plus the first n (default `reps`) members of every family."""
        n = self.reps if n is None else n
        out = list(self.named)
        for c in self.chains:
            out += [c.member(i) for i in range(n)]
        for s in self.stars:
            out += [s.member(i) for i in range(n)]
        return out

    def horizon(self):
        """Family members past this index all look alike to every named member."""
        top = 0
        for Z in self.named + [c.base for c in self.chains]:
            for _c, _cof, idx in Z.parts:
                top = max([top] + [i + 1 for i in idx])
        blocks = max([s.block for s in self.stars], default=1)
        return max(self.reps, top + 2, top // blocks + 2)

    def is_regular(self):
        return all(not (Z.is_empty() or Z.is_full()) for Z in self.representatives(self.horizon()))

    def is_nested(self):
        R = self.representatives(self.horizon())
        return all(is_nested_bip(a, b) for i, a in enumerate(R) for b in R[i + 1:])

    def describe(self):
        return {"K": self.K.describe(), "named": [Z.describe() for Z in self.named],
                "families": [c.describe() for c in self.chains] + [s.describe() for s in self.stars]}


def system(members) -> SepSystem:
    elems = []
    for Z in members:
        for x in (Z, Z.complement()):
            if x not in elems:
                elems.append(x)
    return SepSystem(elems, {x: x.complement() for x in elems}, lambda a, b: a >= b)


# ---------------------------------------------------------------- dichotomy and witness

@dataclass
class Dichotomy:
    kind: str
    witness: object = None


def dichotomy(T: BipTreeSet) -> Dichotomy:
    if not T.is_nested():
        raise BipError("tree set is not nested")
    if not T.is_regular():
        raise BipError("tree set is not regular")
    if T.chains:
        return Dichotomy("omega-chain", T.chains[0])
    for star in T.stars:
        if _splitting_star(T, star) is not None:
            return Dichotomy("infinite-star", star)
    if T.stars:
        raise BipError("star is not splitting: no star family has maximal generic members")
    return Dichotomy("finite")


COUNTING = ("a finite tree set has finitely many orientations while an infinite set carries "
            "infinitely many free ultrafilters, so some two of them induce the same orientation")
CARDINALITY = ("the same construction yields 2^(2^aleph0) free ultrafilters inducing one orientation")


@dataclass
class Witness:
    kind: str
    partition: list
    filter_base: list
    orientation: list          # (member, forced side, index of the filter element implying it)
    notes: list = field(default_factory=list)

    def describe(self):
        return {"kind": self.kind,
                "partition": self.partition,
                "filter_base": [F.describe() for F in self.filter_base],
                "orientation": [{"member": Z.describe(), "forced": W.describe(), "implied_by": k}
                                for Z, W, k in self.orientation],
                "notes": self.notes}


def forced_orientation_witness(T: BipTreeSet) -> Witness:
    d = dichotomy(T)
    if d.kind == "finite":
        raise BipError("finite tree set: " + COUNTING)
    if d.kind == "omega-chain":
        return _chain_witness(T, d.witness)
    return _star_witness(T, d.witness)


def _chain_witness(T, chain: ChainFamily):
    K = T.K
    Zw = chain.limit()
    n_max = T.horizon()
    pos = chain.positions(n_max + 1)
    partition = [{"block": f"K_{n}", "elements": [[chain.cls, pos[n]]]} for n in range(n_max)]
    partition.append({"block": f"K_n for n >= {n_max}", "elements": "one element of the class each"})
    rest = (K.full() - chain.member(0)) | Zw
    partition.append({"block": "K_omega", "set": rest.describe()})
    F = [chain.member(n) - Zw for n in range(n_max + 1)]
    orient = []
    for Z in T.representatives():
        got = None
        for W in (Z, Z.complement()):
            for n in range(n_max + 1):
                if W >= chain.member(n):
                    got = (W, n)
                    break
            if got:
                break
            if W <= Zw:
                got = (W.complement(), 0)
                break
        if got is None:
            raise BipError("member neither contains a chain element nor lies in the chain limit")
        W, n = got
        assert W >= F[n]
        orient.append((Z, W, n))
    return Witness("omega-chain", partition, F, orient, [CARDINALITY])


def _splitting_star(T, star: StarFamily):
    """The maximal elements of the orientation choosing, for every member, the side with
    cofinitely many elements of the family's class.  Any free ultrafilter concentrated on
    that class induces this orientation.  Returns (families, named extras, elements)."""
    n = T.horizon()
    picked = []
    for Z in T.representatives(n):
        cof, _idx = Z.part(star.cls)
        W = Z if cof else Z.complement()
        if W not in picked:
            picked.append(W)
    # maximal in the separation order means minimal as a set
    elems = [W for W in picked if not any(V != W and V <= W for V in picked)]
    if star.member(n - 1) not in elems:
        return None
    fams = [x for x in T.stars if any(x.member(i) in elems for i in range(n))]
    named = set(T.named) | {Z.complement() for Z in T.named}
    extra = [W for W in elems if W in named and not any(W == x.member(i) for x in fams for i in range(n))]
    return fams, extra, elems


def _star_witness(T, star: StarFamily):
    K = T.K
    found = _splitting_star(T, star)
    if found is None:
        raise BipError("star is not splitting: its generic members are not maximal")
    fams, extra, elements = found
    partition = []
    for x in fams:
        partition += [{"block": f"{x.cls}:K_{i}", "set": x.removed(i).describe()}
                      for i in range(T.reps) if x.member(i) in elements]
        partition.append({"block": f"{x.cls}:K_i for i >= {T.horizon()}",
                          "elements": f"blocks of {x.block} in {x.cls}"})
    partition += [{"block": "complement of a named star element", "set": W.complement().describe()}
                  for W in extra]
    inner = K.full()
    for x in elements:
        inner = inner & x
    for x in fams:
        inner = inner - Subset.make(K, (), {x.cls: (True, ())})
    if not inner.is_empty():
        partition.append({"block": "interior", "set": inner.describe()})
    orient = []
    for Z in T.representatives():
        got = next((W, k) for W in (Z, Z.complement()) for k, x in enumerate(elements) if W >= x)
        orient.append((Z, got[0], got[1]))
    return Witness("infinite-star", partition, elements, orient, [CARDINALITY])


def verify_witness(T: BipTreeSet, w: Witness):
    """Consistency, coverage, single-element implication and pairwise infinite intersections."""
    problems = []
    R = T.representatives()
    forced = [W for _Z, W, _k in w.orientation]
    if len(w.orientation) != len(R):
        problems.append("orientation does not cover every member")
    for Z, W, k in w.orientation:
        if W not in (Z, Z.complement()):
            problems.append("forced side is not an orientation of its member")
        if not W >= w.filter_base[k]:
            problems.append("forced side not implied by its filter element")
    sys = system(R)
    chosen = []
    for W in forced:
        if W not in chosen:
            chosen.append(W)
    try:
        if not is_consistent(sys, chosen):
            problems.append("forced orientation is inconsistent")
    except Exception as exc:
        problems.append(f"forced orientation invalid: {exc}")
    F = w.filter_base
    for i in range(len(F)):
        for j in range(i, len(F)):
            if not (F[i] & F[j]).is_infinite():
                problems.append("filter base has a finite intersection")
    return problems


# ---------------------------------------------------------------- from graphs

def graph_to_bipartitions(T_G, X, reps=5) -> BipTreeSet:
    """Bipartitions of the hat set of X induced by members whose separator contains X."""
    from .tangles import TanglePoint, orient
    from .symgraph import fmt_ref

    f = T_G.frame
    X = frozenset(X)
    if not f.is_critical(X):
        raise BipError("X is not critical")
    cs = f.components(X)
    hat = cs.hat()
    named = [c for c in hat if not cs.is_family(c)]
    fams = [next(iter(c)) for c in hat if cs.is_family(c)]
    label = {c: "{" + ",".join(fmt_ref(v) for v in f.sorted(c))[:60] + "}" for c in named}
    K = SymbolicSet(tuple(label[c] for c in named), tuple(fmt_ref(a) for a in fams))
    t = TanglePoint.crit(X)
    out = BipTreeSet(K, reps=reps)
    skipped = 0
    for s in T_G.members:
        if not X <= s.sep:
            skipped += 1
            continue
        o = orient(t, s)
        small = o.co_side
        Z = Subset.make(K, [label[c] for c in named if c <= small],
                        {fmt_ref(a): (True, ()) for a in fams if a in small})
        if Z.is_empty() or Z.is_full():
            continue
        if Z not in out.named:
            out.named.append(Z)
    for Y, a in T_G.families:
        if Y == X and a in fams:
            out.stars.append(StarFamily(K, fmt_ref(a)))
    out.skipped = skipped
    return out
