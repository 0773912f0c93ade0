"""Finite sets, binary relations and the relational algebra on them.

Everything here is immutable.  Iteration over a :class:`FinSet` follows the
declared element order and relations iterate their pairs in the
lexicographic order induced by the declared orders of source and target, so
any output derived from these objects is reproducible.
"""

from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass, field
from functools import cached_property
from typing import Hashable, Iterable, Iterator

from .caps import DEFAULT_CAPS
from .errors import CarrierMismatch


@dataclass(frozen=True)
class FinSet:
    """A finite set with a fixed declaration order."""

    elements: tuple

    def __init__(self, elements: Iterable[Hashable] = ()):
        elems = tuple(elements)
        if len(set(elems)) != len(elems):
            dup = next(e for i, e in enumerate(elems) if e in elems[:i])
            raise ValueError(f"duplicate element {dup!r}")
        object.__setattr__(self, "elements", elems)

    @cached_property
    def index(self) -> dict:
        return {e: i for i, e in enumerate(self.elements)}

    @cached_property
    def as_set(self) -> frozenset:
        return frozenset(self.elements)

    def __iter__(self) -> Iterator:
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, x) -> bool:
        return x in self.index

    def same_elements(self, other: "FinSet") -> bool:
        return self.as_set == other.as_set

    def sort(self, items: Iterable) -> list:
        """Sort members of this set into declaration order."""
        idx = self.index
        return sorted(items, key=idx.__getitem__)

    def subset(self, items: Iterable) -> frozenset:
        items = frozenset(items)
        stray = items - self.as_set
        if stray:
            raise CarrierMismatch(f"elements {sorted(map(repr, stray))} not in carrier")
        return items

    def restrict(self, items: Iterable) -> "FinSet":
        keep = frozenset(items)
        return FinSet(e for e in self.elements if e in keep)

    def subsets(self) -> Iterator[frozenset]:
        """All subsets, by size then lexicographically in declared order."""
        for k in range(len(self.elements) + 1):
            for combo in itertools.combinations(self.elements, k):
                yield frozenset(combo)

    def __repr__(self):
        return "FinSet(" + ", ".join(map(str, self.elements)) + ")"


def finset(*elements) -> FinSet:
    return FinSet(elements)


@dataclass(frozen=True, eq=False)
class Rel:
    """A relation ``r ⊆ src × dst``."""

    src: FinSet
    dst: FinSet
    pairs: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        pairs = frozenset(self.pairs)
        object.__setattr__(self, "pairs", pairs)
        for x, y in pairs:
            if x not in self.src or y not in self.dst:
                raise CarrierMismatch(f"pair ({x!r}, {y!r}) outside {self.src} x {self.dst}")

    # relations compare by pairs and carrier contents, not by declaration order
    def __eq__(self, other):
        if not isinstance(other, Rel):
            return NotImplemented
        return (
            self.pairs == other.pairs
            and self.src.same_elements(other.src)
            and self.dst.same_elements(other.dst)
        )

    def __hash__(self):
        return hash((self.pairs, self.src.as_set, self.dst.as_set))

    @cached_property
    def _fwd(self) -> dict:
        out = {x: set() for x in self.src}
        for x, y in self.pairs:
            out[x].add(y)
        return {x: frozenset(ys) for x, ys in out.items()}

    @cached_property
    def _bwd(self) -> dict:
        out = {y: set() for y in self.dst}
        for x, y in self.pairs:
            out[y].add(x)
        return {y: frozenset(xs) for y, xs in out.items()}

    def __contains__(self, pair) -> bool:
        return pair in self.pairs

    def __len__(self):
        return len(self.pairs)

    def __iter__(self) -> Iterator[tuple]:
        si, di = self.src.index, self.dst.index
        return iter(sorted(self.pairs, key=lambda p: (si[p[0]], di[p[1]])))

    def related(self, x, y) -> bool:
        return (x, y) in self.pairs

    def succ(self, x) -> frozenset:
        """``r[{x}]``."""
        return self._fwd.get(x, frozenset())

    def pred(self, y) -> frozenset:
        """``r°[{y}]``."""
        return self._bwd.get(y, frozenset())

    def image(self, subset: Iterable) -> frozenset:
        return rel_image(self, subset)

    def issubset(self, other: "Rel") -> bool:
        return self.pairs <= other.pairs

    def is_left_total(self) -> bool:
        return all(self._fwd[x] for x in self.src)

    def is_right_total(self) -> bool:
        return all(self._bwd[y] for y in self.dst)

    def is_function(self) -> bool:
        return all(len(self._fwd[x]) == 1 for x in self.src)

    def restrict(self, src: Iterable | None = None, dst: Iterable | None = None) -> "Rel":
        """Restriction to subsets of the carriers (pullback along the inclusions)."""
        s = self.src if src is None else self.src.restrict(src)
        d = self.dst if dst is None else self.dst.restrict(dst)
        return Rel(s, d, frozenset((x, y) for x, y in self.pairs if x in s and y in d))

    def __repr__(self):
        body = ", ".join(f"({x},{y})" for x, y in self)
        return f"Rel({{{body}}})"


def rel(src: Iterable, dst: Iterable, pairs: Iterable = ()) -> Rel:
    src = src if isinstance(src, FinSet) else FinSet(src)
    dst = dst if isinstance(dst, FinSet) else FinSet(dst)
    return Rel(src, dst, frozenset(pairs))


def diagonal(x: FinSet) -> Rel:
    return Rel(x, x, frozenset((e, e) for e in x))


def empty_rel(x: FinSet, y: FinSet) -> Rel:
    return Rel(x, y, frozenset())


def full_rel(x: FinSet, y: FinSet) -> Rel:
    return Rel(x, y, frozenset(itertools.product(x, y)))


def graph(f, src: FinSet, dst: FinSet) -> Rel:
    """The graph of a total map given as a dict or callable."""
    get = f.__getitem__ if isinstance(f, dict) else f
    return Rel(src, dst, frozenset((x, get(x)) for x in src))


def rel_compose(s: Rel, r: Rel) -> Rel:
    """Applicative-order composite ``s·r`` (first ``r``, then ``s``)."""
    if not r.dst.same_elements(s.src):
        raise CarrierMismatch(f"cannot compose: {r.dst} vs {s.src}")
    out = set()
    for x, y in r.pairs:
        for z in s.succ(y):
            out.add((x, z))
    return Rel(r.src, s.dst, frozenset(out))


def rel_converse(r: Rel) -> Rel:
    return Rel(r.dst, r.src, frozenset((y, x) for x, y in r.pairs))


def rel_image(r: Rel, subset: Iterable) -> frozenset:
    """``r[A] = {y | ∃x∈A. x r y}``."""
    subset = frozenset(subset)
    stray = subset - r.src.as_set
    if stray:
        raise CarrierMismatch(f"elements {sorted(map(repr, stray))} not in {r.src}")
    out = set()
    for x in subset:
        out |= r.succ(x)
    return frozenset(out)


def rel_union(*rels: Rel) -> Rel:
    first = rels[0]
    return Rel(first.src, first.dst, frozenset().union(*(r.pairs for r in rels)))


def rel_meet(r: Rel, s: Rel) -> Rel:
    return Rel(r.src, r.dst, r.pairs & s.pairs)


def all_relations(x: FinSet, y: FinSet) -> Iterator[Rel]:
    """Every relation between two small sets (2^(|x||y|) of them)."""
    cells = list(itertools.product(x, y))
    for mask in range(1 << len(cells)):
        yield Rel(x, y, frozenset(c for i, c in enumerate(cells) if mask >> i & 1))


def all_maps(x: FinSet, y: FinSet) -> Iterator[dict]:
    for images in itertools.product(y.elements, repeat=len(x)):
        yield dict(zip(x.elements, images))


@dataclass(frozen=True)
class CounivFactorization:
    """``r = s·t`` through the set of all boxes ``A×B ⊆ r``."""

    mid: FinSet
    t: Rel
    s: Rel


def boxes(r: Rel, maximal: bool = False) -> list[tuple[frozenset, frozenset]]:
    """All pairs ``(A, B)`` with ``A×B ⊆ r``, or only the inclusion-maximal ones.

    Boxes are listed by ``A`` in subset order and, for each ``A``, by ``B``.
    """
    out = []
    for a in r.src.subsets():
        # the largest admissible B for this A
        if a:
            common = frozenset.intersection(*(r.succ(x) for x in a))
        else:
            common = r.dst.as_set
        if maximal:
            # A is maximal for B iff no outside x is related to all of B
            if any(x not in a and common <= r.succ(x) for x in r.src):
                continue
            out.append((a, common))
        else:
            for b in r.dst.restrict(common).subsets():
                out.append((a, b))
    return out


def couniv_factorize(r: Rel, warn_at: int = DEFAULT_CAPS.factorization_warn,
                     maximal: bool = False) -> CounivFactorization:
    """Factorize ``r`` through its boxes.

    With ``maximal=True`` only inclusion-maximal boxes are kept; that is still
    a factorization of ``r`` and every factorization maps into it along
    a map that only enlarges boxes, which is all the composite evaluator
    needs.
    """
    mid_elems = boxes(r, maximal=maximal)
    if len(mid_elems) > warn_at:
        warnings.warn(f"couniversal factorization has {len(mid_elems)} middle elements",
                      stacklevel=2)
    mid = FinSet(mid_elems)
    t = Rel(r.src, mid, frozenset((x, ab) for ab in mid_elems for x in ab[0]))
    s = Rel(mid, r.dst, frozenset((ab, z) for ab in mid_elems for z in ab[1]))
    return CounivFactorization(mid, t, s)
