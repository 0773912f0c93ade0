"""Seeded random instances: relations, terms, systems and label relations.

Every function takes a :class:`random.Random` so callers control the seed.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from .functors import (
    DET, DLTS, PLTS, SUSP, SUSPIE, Coalgebra, FrozenMap, Pair, PMap,
)
from .relcore import FinSet, Rel


def states(prefix: str, n: int) -> FinSet:
    return FinSet(f"{prefix}{i}" for i in range(n))


def random_rel(rng, X: FinSet, Y: FinSet, density: float = 0.5) -> Rel:
    return Rel(X, Y, frozenset(p for p in itertools.product(X, Y) if rng.random() < density))


def random_map(rng, X: FinSet, Y: FinSet) -> dict:
    return {x: rng.choice(Y.elements) for x in X}


def random_dist(rng, cells, denominator: int = 4) -> FrozenMap:
    """A distribution on a nonempty subset of ``cells`` with weights in ``1/denominator``."""
    k = rng.randint(1, min(len(cells), denominator))
    chosen = rng.sample(list(cells), k)
    cuts = sorted(rng.sample(range(1, denominator), k - 1))
    parts = [b - a for a, b in zip([0] + cuts, cuts + [denominator])]
    return FrozenMap((c, Fraction(p, denominator)) for c, p in zip(chosen, parts))


def random_term(rng, kind, carrier: FinSet, branching: int = 3, denominator: int = 4):
    xs = carrier.elements
    if isinstance(kind, PLTS):
        cells = [(l, x) for l in kind.labels for x in xs]
        k = rng.randint(0, min(branching, len(cells)))
        return frozenset(rng.sample(cells, k))
    if isinstance(kind, DLTS):
        cells = [(l, x) for l in kind.labels for x in xs]
        return random_dist(rng, cells, denominator)
    if isinstance(kind, DET):
        return (rng.choice(kind.labels), rng.choice(xs))
    if isinstance(kind, PMap):
        keys = list(kind.keys)
        if kind.mode == "total":
            dom = keys
        else:
            dom = [k for k in keys if rng.random() < 0.5]
            if kind.mode == "nonempty" and not dom:
                dom = [rng.choice(keys)]
        return FrozenMap((k, rng.choice(xs)) for k in dom)
    if isinstance(kind, Pair):
        return (random_term(rng, kind.first, carrier, branching, denominator),
                random_term(rng, kind.second, carrier, branching, denominator))
    raise TypeError(f"unknown kind {kind!r}")


def random_system(rng, kind, n: int, prefix: str = "s", branching: int = 3,
                  denominator: int = 4) -> Coalgebra:
    S = states(prefix, n)
    return Coalgebra(kind, S, FrozenMap((x, random_term(rng, kind, S, branching, denominator))
                                        for x in S))


def random_label_rel(rng, A, B, density: float = 0.5, right_total: bool = False) -> Rel:
    A, B = FinSet(A), FinSet(B)
    pairs = {p for p in itertools.product(A, B) if rng.random() < density}
    if right_total:
        for b in B:
            if not any(q == b for _, q in pairs):
                pairs.add((rng.choice(A.elements), b))
    return Rel(A, B, frozenset(pairs))


def susp_pair(rng, inputs=("i",), outputs=("o", "p"), n: int = 3, m: int = 3):
    """A random suspension automaton and a random input-enabled one."""
    spec = random_system(rng, SUSP(inputs, outputs), n, "s")
    impl = random_system(rng, SUSPIE(inputs, outputs), m, "t")
    return spec, impl
