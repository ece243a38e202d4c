"""Generators shared by the test modules."""
import random

from tangleforge.bipartitions import BipTreeSet, ChainFamily, StarFamily, Subset, SymbolicSet, is_nested_bip


def greedy_named(rng, K, T, tries=12):
    """Add random named members that stay nested with everything, far past the listed indices."""
    for _ in range(tries):
        Z = Subset.make(K, [x for x in K.named if rng.random() < 0.5],
                        {c: (rng.random() < 0.2, rng.sample(range(12, 20), rng.randint(0, 1))) for c in K.classes})
        if Z.is_empty() or Z.is_full():
            continue
        if all(is_nested_bip(Z, Y) for Y in T.representatives(25)) and Z not in T.named:
            T.named.append(Z)


def random_bip_tree_set(rng: random.Random, kind=None):
    K = SymbolicSet(tuple(f"n{i}" for i in range(rng.randint(0, 4))),
                    tuple(f"c{i}" for i in range(rng.randint(1, 2))))
    kind = kind or rng.choice(["chain", "star"])
    if kind == "chain":
        cls = rng.choice(K.classes)
        named = [x for x in K.named if rng.random() < 0.5]
        parts = {c: (True, ()) if c == cls else (rng.random() < 0.3, ()) for c in K.classes}
        T = BipTreeSet(K, [], [ChainFamily(Subset.make(K, named, parts), cls)], [])
    else:
        T = BipTreeSet(K, [], [], [StarFamily(K, c, rng.randint(1, 2)) for c in K.classes if rng.random() < 0.8]
                       or [StarFamily(K, K.classes[0])])
    greedy_named(rng, K, T)
    return T
