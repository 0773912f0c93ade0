"""The catalog of set functors, their elements (terms) and coalgebras.

Kinds
-----
``PLTS(labels)``      labelled successor sets        P(A × X)
``DLTS(labels)``      labelled rational distributions D(A × X)
``DET(labels)``       one labelled successor           A × X
``PMap(keys, mode)``  partial / nonempty / total maps  K ⇀ X, K ⇀ne X, K → X
``Pair(k1, k2)``      products                         F1 × F2

Suspension automata are products of two map kinds; :func:`SUSP` and
:func:`SUSPIE` build them.

Term representations
--------------------
PLTS: ``frozenset`` of ``(label, state)``; DLTS: :class:`FrozenMap` from
``(label, state)`` to positive :class:`~fractions.Fraction`; DET: a tuple
``(label, state)``; PMap: :class:`FrozenMap` from key to state; Pair: a tuple
``(t1, t2)``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator, Mapping

from .caps import DEFAULT_CAPS
from .errors import CapExceeded, KindMismatch, TermViolation
from .relcore import FinSet


class FrozenMap(Mapping):
    """A hashable read-only mapping."""

    __slots__ = ("_d", "_h")

    def __init__(self, items=()):
        self._d = dict(items)
        self._h = None

    def __getitem__(self, k):
        return self._d[k]

    def __iter__(self):
        return iter(self._d)

    def __len__(self):
        return len(self._d)

    def __hash__(self):
        if self._h is None:
            self._h = hash(frozenset(self._d.items()))
        return self._h

    def __eq__(self, other):
        if isinstance(other, FrozenMap):
            return self._d == other._d
        if isinstance(other, Mapping):
            return self._d == dict(other)
        return NotImplemented

    def __repr__(self):
        return "{" + ", ".join(f"{k!r}: {v!r}" for k, v in self._d.items()) + "}"


# --------------------------------------------------------------------------
# kinds

@dataclass(frozen=True)
class PLTS:
    labels: tuple

    @property
    def name(self):
        return "PLTS"


@dataclass(frozen=True)
class DLTS:
    labels: tuple

    @property
    def name(self):
        return "DLTS"


@dataclass(frozen=True)
class DET:
    labels: tuple

    def __post_init__(self):
        if not self.labels:
            raise ValueError("DET needs a nonempty label set")

    @property
    def name(self):
        return "DET"


PMAP_MODES = ("partial", "nonempty", "total")


@dataclass(frozen=True)
class PMap:
    keys: tuple
    mode: str = "partial"

    def __post_init__(self):
        if self.mode not in PMAP_MODES:
            raise ValueError(f"unknown map mode {self.mode!r}")
        if self.mode == "nonempty" and not self.keys:
            raise ValueError("nonempty partial maps need at least one key")

    @property
    def labels(self):
        return self.keys

    @property
    def name(self):
        return {"partial": "PMAP", "nonempty": "NEMAP", "total": "TMAP"}[self.mode]


@dataclass(frozen=True)
class Pair:
    first: object
    second: object

    @property
    def labels(self):
        return tuple(self.first.labels) + tuple(l for l in self.second.labels
                                                if l not in self.first.labels)

    @property
    def name(self):
        if isinstance(self.first, PMap) and isinstance(self.second, PMap) \
                and self.second.mode == "nonempty":
            if self.first.mode == "partial":
                return "SUSP"
            if self.first.mode == "total":
                return "SUSPIE"
        return "PAIR"


def _labels(labels) -> tuple:
    labels = tuple(labels)
    if len(set(labels)) != len(labels):
        raise ValueError(f"duplicate labels in {labels}")
    return labels


def plts(labels) -> PLTS:
    return PLTS(_labels(labels))


def dlts(labels) -> DLTS:
    return DLTS(_labels(labels))


def det(labels) -> DET:
    return DET(_labels(labels))


def SUSP(inputs, outputs) -> Pair:
    """Suspension automata: ``(I ⇀ X) × (O ⇀ne X)``."""
    inputs, outputs = _labels(inputs), _labels(outputs)
    if set(inputs) & set(outputs):
        raise ValueError("input and output alphabets must be disjoint")
    return Pair(PMap(inputs, "partial"), PMap(outputs, "nonempty"))


def SUSPIE(inputs, outputs) -> Pair:
    """Input-enabled suspension automata: ``(I → X) × (O ⇀ne X)``."""
    inputs, outputs = _labels(inputs), _labels(outputs)
    if set(inputs) & set(outputs):
        raise ValueError("input and output alphabets must be disjoint")
    return Pair(PMap(inputs, "total"), PMap(outputs, "nonempty"))


def is_susp(kind) -> bool:
    return isinstance(kind, Pair) and kind.name in ("SUSP", "SUSPIE")


def kind_str(kind) -> str:
    if isinstance(kind, Pair):
        if is_susp(kind):
            return f"{kind.name}(in={','.join(kind.first.keys)};out={','.join(kind.second.keys)})"
        return f"PAIR({kind_str(kind.first)}, {kind_str(kind.second)})"
    if isinstance(kind, PMap):
        return f"{kind.name}({','.join(kind.keys)})"
    return f"{kind.name}({','.join(map(str, kind.labels))})"


# --------------------------------------------------------------------------
# terms

def dist(items) -> FrozenMap:
    """Build a DLTS term from ``{(label, state): weight}`` or an item list."""
    items = items.items() if isinstance(items, Mapping) else items
    acc = {}
    for k, w in items:
        acc[k] = acc.get(k, Fraction(0)) + Fraction(w)
    return FrozenMap((k, w) for k, w in acc.items() if w != 0)


def pmap(items=()) -> FrozenMap:
    items = items.items() if isinstance(items, Mapping) else items
    return FrozenMap(items)


def term_violation(kind, t, carrier: FinSet) -> str | None:
    """Return a description of the first violated invariant, or ``None``."""
    if isinstance(kind, PLTS):
        if not isinstance(t, frozenset):
            return "PLTS term must be a frozenset of (label, state)"
        for item in t:
            if not (isinstance(item, tuple) and len(item) == 2):
                return f"malformed transition {item!r}"
            l, x = item
            if l not in kind.labels:
                return f"unknown label {l}"
            if x not in carrier:
                return f"unknown state {x}"
        return None
    if isinstance(kind, DLTS):
        if not isinstance(t, Mapping):
            return "DLTS term must be a mapping (label, state) -> weight"
        total = Fraction(0)
        for (l, x), w in t.items():
            if l not in kind.labels:
                return f"unknown label {l}"
            if x not in carrier:
                return f"unknown state {x}"
            if not isinstance(w, (Fraction, int)) or w <= 0:
                return f"weight {w} is not a positive rational"
            total += w
        if total != 1:
            return f"mass {total} ≠ 1"
        return None
    if isinstance(kind, DET):
        if not (isinstance(t, tuple) and len(t) == 2):
            return "DET term must be one (label, state)"
        l, x = t
        if l not in kind.labels:
            return f"unknown label {l}"
        if x not in carrier:
            return f"unknown state {x}"
        return None
    if isinstance(kind, PMap):
        if not isinstance(t, Mapping):
            return "map term must be a mapping key -> state"
        for k, x in t.items():
            if k not in kind.keys:
                return f"unknown key {k}"
            if x not in carrier:
                return f"unknown state {x}"
        if kind.mode == "nonempty" and not t:
            return "non-blocking: output map has empty domain"
        if kind.mode == "total":
            for k in kind.keys:
                if k not in t:
                    return f"input {k} undefined"
        return None
    if isinstance(kind, Pair):
        if not (isinstance(t, tuple) and len(t) == 2):
            return "product term must be a pair"
        return term_violation(kind.first, t[0], carrier) or term_violation(kind.second, t[1], carrier)
    raise KindMismatch(f"unknown kind {kind!r}")


def term_validate(kind, t, carrier: FinSet, state=None) -> None:
    """Raise :class:`TermViolation` naming the violated clause."""
    problem = term_violation(kind, t, carrier)
    if problem is not None:
        raise TermViolation(problem, state)


def fmap(kind, f: Mapping | Callable, t):
    """The functorial action ``Ff(t)``; ``f`` must be defined on ``support(t)``."""
    get = f.__getitem__ if isinstance(f, Mapping) else f

    def app(x):
        try:
            return get(x)
        except KeyError:
            raise KindMismatch(f"map undefined on {x!r}") from None

    if isinstance(kind, PLTS):
        return frozenset((l, app(x)) for l, x in t)
    if isinstance(kind, DLTS):
        acc = {}
        for (l, x), w in t.items():
            key = (l, app(x))
            acc[key] = acc.get(key, Fraction(0)) + w
        return FrozenMap(acc)
    if isinstance(kind, DET):
        return (t[0], app(t[1]))
    if isinstance(kind, PMap):
        return FrozenMap((k, app(x)) for k, x in t.items())
    if isinstance(kind, Pair):
        return (fmap(kind.first, f, t[0]), fmap(kind.second, f, t[1]))
    raise KindMismatch(f"unknown kind {kind!r}")


def support(kind, t) -> frozenset:
    """The least set of states the term mentions."""
    if isinstance(kind, PLTS):
        return frozenset(x for _, x in t)
    if isinstance(kind, DLTS):
        return frozenset(x for _, x in t)
    if isinstance(kind, DET):
        return frozenset((t[1],))
    if isinstance(kind, PMap):
        return frozenset(t.values())
    if isinstance(kind, Pair):
        return support(kind.first, t[0]) | support(kind.second, t[1])
    raise KindMismatch(f"unknown kind {kind!r}")


def label_succ(kind, t, label) -> frozenset:
    """States reachable by ``label`` in a PLTS/DET term."""
    if isinstance(kind, PLTS):
        return frozenset(x for l, x in t if l == label)
    if isinstance(kind, DET):
        return frozenset((t[1],)) if t[0] == label else frozenset()
    raise KindMismatch(f"{kind_str(kind)} has no labelled successor sets")


# --------------------------------------------------------------------------
# enumeration

def _compositions(total: int, parts: int) -> Iterator[tuple]:
    """Weak compositions of ``total`` into ``parts`` nonnegative integers."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def count_terms(kind, n: int, denominator: int = 2) -> int:
    """Number of terms over a carrier of size ``n``."""
    if isinstance(kind, PLTS):
        return 2 ** (len(kind.labels) * n)
    if isinstance(kind, DLTS):
        slots = len(kind.labels) * n
        return math.comb(denominator + slots - 1, slots - 1) if slots else 0
    if isinstance(kind, DET):
        return len(kind.labels) * n
    if isinstance(kind, PMap):
        k = len(kind.keys)
        if kind.mode == "total":
            return n ** k
        if kind.mode == "nonempty":
            return (n + 1) ** k - 1
        return (n + 1) ** k
    if isinstance(kind, Pair):
        return count_terms(kind.first, n, denominator) * count_terms(kind.second, n, denominator)
    raise KindMismatch(f"unknown kind {kind!r}")


def enumerate_terms(kind, carrier: FinSet, denominator: int = 2,
                    cap: int = DEFAULT_CAPS.terms) -> Iterator:
    """Every valid term over ``carrier`` exactly once, in a fixed order.

    DLTS weights are restricted to multiples of ``1/denominator``.
    """
    count = count_terms(kind, len(carrier), denominator)
    if count > cap:
        raise CapExceeded(f"terms of {kind_str(kind)} over {len(carrier)} states", count, cap)
    return _enum(kind, carrier, denominator)


def _enum(kind, carrier, denominator):
    xs = carrier.elements
    if isinstance(kind, PLTS):
        cells = [(l, x) for l in kind.labels for x in xs]
        for mask in range(1 << len(cells)):
            yield frozenset(c for i, c in enumerate(cells) if mask >> i & 1)
    elif isinstance(kind, DLTS):
        cells = [(l, x) for l in kind.labels for x in xs]
        for comp in _compositions(denominator, len(cells)):
            yield FrozenMap((c, Fraction(k, denominator)) for c, k in zip(cells, comp) if k)
    elif isinstance(kind, DET):
        for l in kind.labels:
            for x in xs:
                yield (l, x)
    elif isinstance(kind, PMap):
        choices = xs if kind.mode == "total" else (None,) + tuple(xs)
        for combo in itertools.product(choices, repeat=len(kind.keys)):
            m = FrozenMap((k, x) for k, x in zip(kind.keys, combo) if x is not None)
            if kind.mode == "nonempty" and not m:
                continue
            yield m
    elif isinstance(kind, Pair):
        seconds = list(_enum(kind.second, carrier, denominator))
        for a in _enum(kind.first, carrier, denominator):
            for b in seconds:
                yield (a, b)
    else:
        raise KindMismatch(f"unknown kind {kind!r}")


# --------------------------------------------------------------------------
# coalgebras

@dataclass(frozen=True, eq=False)
class Coalgebra:
    """A finite system: states plus a transition map into ``kind``-terms."""

    kind: object
    states: FinSet
    trans: FrozenMap

    def __post_init__(self):
        if not isinstance(self.trans, FrozenMap):
            object.__setattr__(self, "trans", FrozenMap(self.trans))
        for x in self.states:
            if x not in self.trans:
                raise TermViolation("missing transition structure", x)
            term_validate(self.kind, self.trans[x], self.states, state=x)
        extra = set(self.trans) - self.states.as_set
        if extra:
            raise TermViolation(f"transitions for undeclared states {sorted(map(str, extra))}")

    def __call__(self, x):
        return self.trans[x]

    def __eq__(self, other):
        if not isinstance(other, Coalgebra):
            return NotImplemented
        return (self.kind == other.kind and self.states == other.states
                and all(self.trans[x] == other.trans[x] for x in self.states))

    def __hash__(self):
        return hash((self.kind, self.states))

    def __repr__(self):
        return f"Coalgebra({kind_str(self.kind)}, {len(self.states)} states)"


def coalgebra(kind, trans: Mapping, states=None) -> Coalgebra:
    states = FinSet(trans.keys() if states is None else states)
    return Coalgebra(kind, states, FrozenMap(trans))


def lts(labels, edges, states=None) -> Coalgebra:
    """Convenience PLTS constructor from ``(src, label, dst)`` triples."""
    kind = plts(labels)
    edges = list(edges)
    if states is None:
        seen = []
        for s, _, d in edges:
            for q in (s, d):
                if q not in seen:
                    seen.append(q)
        states = seen
    trans = {x: set() for x in states}
    for s, l, d in edges:
        trans[s].add((l, d))
    return Coalgebra(kind, FinSet(states), FrozenMap((x, frozenset(v)) for x, v in trans.items()))
