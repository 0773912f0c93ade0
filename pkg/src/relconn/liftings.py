"""Monotone predicate liftings (modalities) for the catalog functors.

Liftings are kind-agnostic values; the functor kind is supplied when they are
evaluated, which is how the same ``dia(a)`` serves labelled transition
systems, deterministic steps, distributions and partial maps.

All arguments handed to :func:`eval_lifting` may be arbitrary sets: only
their intersection with the support of the term matters.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .caps import DEFAULT_CAPS
from .errors import CapExceeded, KindMismatch, ParseError
from .functors import DET, DLTS, PLTS, Pair, PMap, kind_str, support


# --------------------------------------------------------------------------
# catalog

@dataclass(frozen=True)
class Dia:
    label: object

    def __str__(self):
        return f"dia({self.label})"


@dataclass(frozen=True)
class Box:
    label: object

    def __str__(self):
        return f"box({self.label})"


@dataclass(frozen=True)
class Down:
    """0-ary: the key is undefined."""
    label: object

    def __str__(self):
        return f"down({self.label})"


@dataclass(frozen=True)
class Up:
    """0-ary: the key is defined (dual of :class:`Down`)."""
    label: object

    def __str__(self):
        return f"up({self.label})"


@dataclass(frozen=True)
class PGe:
    """``α({l}×A) ≥ ε``."""
    label: object
    eps: Fraction

    def __post_init__(self):
        eps = Fraction(self.eps)
        if not 0 <= eps <= 1:
            raise ValueError(f"threshold {eps} outside [0,1]")
        object.__setattr__(self, "eps", eps)

    def __str__(self):
        return f"pge({self.label},{self.eps})"


@dataclass(frozen=True)
class PGeDual:
    """``α({l}×(X∖A)) < ε``; internal, produced only by dualization."""
    label: object
    eps: Fraction

    def __str__(self):
        return f"pge~({self.label},{self.eps})"


@dataclass(frozen=True)
class BigBox:
    """``⋀_l □_l (−)_l``, one argument per label of the kind."""

    def __str__(self):
        return "bigbox"


@dataclass(frozen=True)
class BigDia:
    """``⋁_l ◇_l (−)_l``, one argument per label of the kind."""

    def __str__(self):
        return "bigdia"


# positive Boolean skeletons -----------------------------------------------

@dataclass(frozen=True)
class STop:
    def __str__(self):
        return "top"


@dataclass(frozen=True)
class SBot:
    def __str__(self):
        return "bot"


@dataclass(frozen=True)
class SVar:
    index: int

    def __str__(self):
        return f"_{self.index}"


@dataclass(frozen=True)
class SAnd:
    items: tuple

    def __str__(self):
        return "and(" + ", ".join(map(str, self.items)) + ")"


@dataclass(frozen=True)
class SOr:
    items: tuple

    def __str__(self):
        return "or(" + ", ".join(map(str, self.items)) + ")"


@dataclass(frozen=True)
class SApp:
    lifting: object
    args: tuple

    def __str__(self):
        return f"{self.lifting}[" + ", ".join(map(str, self.args)) + "]"


@dataclass(frozen=True)
class PosBool:
    """A positive Boolean combination of atomic liftings applied to positive
    Boolean combinations of placeholders ``_0 … _{arity-1}``."""

    skeleton: object
    arity: int

    def __post_init__(self):
        _check_outer(self.skeleton, self.arity)

    def __str__(self):
        return f"pos({self.skeleton})"


def _check_outer(s, arity):
    if isinstance(s, (STop, SBot)):
        return
    if isinstance(s, (SAnd, SOr)):
        for item in s.items:
            _check_outer(item, arity)
        return
    if isinstance(s, SApp):
        if isinstance(s.lifting, PosBool):
            raise ValueError("nested pos(...) inside a skeleton")
        for a in s.args:
            _check_inner(a, arity)
        return
    raise ValueError(f"{s} cannot appear outside a lifting application")


def _check_inner(s, arity):
    if isinstance(s, (STop, SBot)):
        return
    if isinstance(s, SVar):
        if not 0 <= s.index < arity:
            raise ValueError(f"placeholder _{s.index} outside arity {arity}")
        return
    if isinstance(s, (SAnd, SOr)):
        for item in s.items:
            _check_inner(item, arity)
        return
    raise ValueError(f"{s} cannot appear inside a lifting argument")


LIFTING_TYPES = (Dia, Box, Down, Up, PGe, PGeDual, BigBox, BigDia, PosBool)


# --------------------------------------------------------------------------
# arity and applicability

def _component(kind, label):
    """The factor of a product kind whose alphabet holds ``label``."""
    hits = []
    if label in kind.first.labels:
        hits.append((0, kind.first))
    if label in kind.second.labels:
        hits.append((1, kind.second))
    if len(hits) != 1:
        raise KindMismatch(f"label {label!r} does not pick a unique factor of {kind_str(kind)}")
    return hits[0]


def arity(lam, kind) -> int:
    if isinstance(lam, (Down, Up)):
        return 0
    if isinstance(lam, (BigBox, BigDia)):
        if not isinstance(kind, (PLTS, DET)):
            raise KindMismatch(f"{lam} needs a labelled kind, got {kind_str(kind)}")
        return len(kind.labels)
    if isinstance(lam, PosBool):
        return lam.arity
    return 1


def check_applicable(lam, kind, caps=DEFAULT_CAPS) -> None:
    """Raise :class:`KindMismatch` unless ``lam`` is defined on ``kind``."""
    if isinstance(lam, PosBool):
        _check_skeleton_kind(lam.skeleton, kind, caps)
        return
    if isinstance(kind, Pair) and isinstance(lam, (Dia, Box, Down, Up)):
        _, sub = _component(kind, lam.label)
        check_applicable(lam, sub, caps)
        return
    if isinstance(lam, (BigBox, BigDia)):
        if not isinstance(kind, (PLTS, DET)):
            raise KindMismatch(f"{lam} is not defined on {kind_str(kind)}")
        if len(kind.labels) > caps.arity:
            raise CapExceeded(f"{lam} arity", len(kind.labels), caps.arity)
        return
    if isinstance(lam, (Dia, Box)):
        if not isinstance(kind, (PLTS, DET, DLTS, PMap)):
            raise KindMismatch(f"{lam} is not defined on {kind_str(kind)}")
    elif isinstance(lam, (Down, Up)):
        if not isinstance(kind, PMap):
            raise KindMismatch(f"{lam} is only defined on partial-map components")
    elif isinstance(lam, (PGe, PGeDual)):
        if not isinstance(kind, DLTS):
            raise KindMismatch(f"{lam} is only defined on distributions")
    else:
        raise KindMismatch(f"unknown lifting {lam!r}")
    if lam.label not in kind.labels:
        raise KindMismatch(f"label {lam.label!r} not in {kind_str(kind)}")


def _check_skeleton_kind(s, kind, caps):
    if isinstance(s, (SAnd, SOr)):
        for item in s.items:
            _check_skeleton_kind(item, kind, caps)
    elif isinstance(s, SApp):
        check_applicable(s.lifting, kind, caps)
        if arity(s.lifting, kind) != len(s.args):
            raise KindMismatch(f"{s.lifting} applied to {len(s.args)} arguments")


# --------------------------------------------------------------------------
# evaluation

def _mass(t, label, states) -> Fraction:
    return sum((w for (l, x), w in t.items() if l == label and x in states), Fraction(0))


def eval_lifting(lam, kind, args: Sequence[Iterable], t) -> bool:
    """Decide ``t ∈ λ(args)`` for a term ``t`` of the given kind."""
    args = tuple(frozenset(a) for a in args)
    if len(args) != arity(lam, kind):
        raise KindMismatch(f"{lam} has arity {arity(lam, kind)}, got {len(args)} arguments")
    return _eval(lam, kind, args, t)


def _eval(lam, kind, args, t) -> bool:
    if isinstance(lam, PosBool):
        supp = support(kind, t)
        return _eval_outer(lam.skeleton, kind, args, t, supp)
    if isinstance(kind, Pair) and isinstance(lam, (Dia, Box, Down, Up)):
        i, sub = _component(kind, lam.label)
        return _eval(lam, sub, args, t[i])
    if isinstance(lam, Dia):
        (a,) = args
        if isinstance(kind, PLTS):
            return any(l == lam.label and x in a for l, x in t)
        if isinstance(kind, DET):
            return t[0] == lam.label and t[1] in a
        if isinstance(kind, DLTS):
            return _mass(t, lam.label, a) > 0
        if isinstance(kind, PMap):
            return lam.label in t and t[lam.label] in a
    elif isinstance(lam, Box):
        (a,) = args
        if isinstance(kind, PLTS):
            return all(x in a for l, x in t if l == lam.label)
        if isinstance(kind, DET):
            return t[0] != lam.label or t[1] in a
        if isinstance(kind, DLTS):
            return all(x in a for (l, x) in t if l == lam.label)
        if isinstance(kind, PMap):
            return lam.label not in t or t[lam.label] in a
    elif isinstance(lam, Down):
        if isinstance(kind, PMap):
            return lam.label not in t
    elif isinstance(lam, Up):
        if isinstance(kind, PMap):
            return lam.label in t
    elif isinstance(lam, PGe):
        if isinstance(kind, DLTS):
            return _mass(t, lam.label, args[0]) >= lam.eps
    elif isinstance(lam, PGeDual):
        if isinstance(kind, DLTS):
            a = args[0]
            outside = sum((w for (l, x), w in t.items() if l == lam.label and x not in a),
                          Fraction(0))
            return outside < lam.eps
    elif isinstance(lam, BigBox):
        idx = {l: i for i, l in enumerate(kind.labels)}
        if isinstance(kind, PLTS):
            return all(x in args[idx[l]] for l, x in t)
        if isinstance(kind, DET):
            return t[1] in args[idx[t[0]]]
    elif isinstance(lam, BigDia):
        idx = {l: i for i, l in enumerate(kind.labels)}
        if isinstance(kind, PLTS):
            return any(x in args[idx[l]] for l, x in t)
        if isinstance(kind, DET):
            return t[1] in args[idx[t[0]]]
    raise KindMismatch(f"{lam} is not defined on {kind_str(kind)}")


def _eval_inner(s, args, supp) -> frozenset:
    # top may be read as the support: only the part inside it is ever inspected
    if isinstance(s, SVar):
        return args[s.index]
    if isinstance(s, STop):
        return supp
    if isinstance(s, SBot):
        return frozenset()
    if isinstance(s, SAnd):
        out = supp
        for item in s.items:
            out = out & _eval_inner(item, args, supp)
        return out
    if isinstance(s, SOr):
        out = frozenset()
        for item in s.items:
            out = out | _eval_inner(item, args, supp)
        return out
    raise ValueError(f"bad inner skeleton {s}")


def _eval_outer(s, kind, args, t, supp) -> bool:
    if isinstance(s, STop):
        return True
    if isinstance(s, SBot):
        return False
    if isinstance(s, SAnd):
        return all(_eval_outer(i, kind, args, t, supp) for i in s.items)
    if isinstance(s, SOr):
        return any(_eval_outer(i, kind, args, t, supp) for i in s.items)
    if isinstance(s, SApp):
        inner = tuple(_eval_inner(a, args, supp) for a in s.args)
        if len(inner) != arity(s.lifting, kind):
            raise KindMismatch(f"{s.lifting} applied to {len(inner)} arguments")
        return _eval(s.lifting, kind, inner, t)
    raise ValueError(f"bad outer skeleton {s}")


# --------------------------------------------------------------------------
# duals

def dual_lifting(lam):
    """``λ∂(A…) = FX ∖ λ(X∖A…)``, as another catalog lifting."""
    if isinstance(lam, Dia):
        return Box(lam.label)
    if isinstance(lam, Box):
        return Dia(lam.label)
    if isinstance(lam, Down):
        return Up(lam.label)
    if isinstance(lam, Up):
        return Down(lam.label)
    if isinstance(lam, PGe):
        return PGeDual(lam.label, lam.eps)
    if isinstance(lam, PGeDual):
        return PGe(lam.label, lam.eps)
    if isinstance(lam, BigBox):
        return BigDia()
    if isinstance(lam, BigDia):
        return BigBox()
    if isinstance(lam, PosBool):
        return PosBool(_dual_skeleton(lam.skeleton), lam.arity)
    raise TypeError(f"not a lifting: {lam!r}")


def _dual_skeleton(s):
    # De Morgan at both levels; placeholders are self-dual
    if isinstance(s, STop):
        return SBot()
    if isinstance(s, SBot):
        return STop()
    if isinstance(s, SVar):
        return s
    if isinstance(s, SAnd):
        return SOr(tuple(_dual_skeleton(i) for i in s.items))
    if isinstance(s, SOr):
        return SAnd(tuple(_dual_skeleton(i) for i in s.items))
    if isinstance(s, SApp):
        return SApp(dual_lifting(s.lifting), tuple(_dual_skeleton(a) for a in s.args))
    raise ValueError(f"bad skeleton {s}")


@dataclass(frozen=True)
class LambdaRel:
    """An arity-preserving relation between liftings of two functors."""

    pairs: tuple

    def __init__(self, pairs: Iterable = ()):
        seen = []
        for p in pairs:
            p = tuple(p)
            if len(p) != 2 or not all(isinstance(l, LIFTING_TYPES) for l in p):
                raise TypeError(f"not a pair of liftings: {p!r}")
            if p not in seen:
                seen.append(p)
        object.__setattr__(self, "pairs", tuple(seen))

    def __iter__(self):
        return iter(self.pairs)

    def __len__(self):
        return len(self.pairs)

    def __contains__(self, pair):
        return tuple(pair) in self.pairs

    def check(self, left_kind, right_kind, caps=DEFAULT_CAPS) -> None:
        """Applicability on both sides and arity preservation."""
        for lam, mu in self.pairs:
            check_applicable(lam, left_kind, caps)
            check_applicable(mu, right_kind, caps)
            if arity(lam, left_kind) != arity(mu, right_kind):
                raise KindMismatch(f"pair ({lam}, {mu}) does not preserve arity")

    def converse(self) -> "LambdaRel":
        return LambdaRel((mu, lam) for lam, mu in self.pairs)

    def __str__(self):
        return "{" + ", ".join(f"({l}, {m})" for l, m in self.pairs) + "}"


def lambda_dual(lam_rel: LambdaRel) -> LambdaRel:
    return LambdaRel((dual_lifting(l), dual_lifting(m)) for l, m in lam_rel)


def lambda_compose(theta: LambdaRel, lam_rel: LambdaRel) -> LambdaRel:
    """``Θ·Λ = {(λ, π) | (λ, μ) ∈ Λ, (μ, π) ∈ Θ}`` (syntactic middle match)."""
    return LambdaRel((l, p) for l, m in lam_rel for m2, p in theta if m == m2)


# --------------------------------------------------------------------------
# surface syntax: dia(a), box(a), down(o), up(o), pge(a,1/2), bigbox, bigdia,
# pos(<skeleton>) with skeletons and(..), or(..), top, bot, _N, lift[args]

_TOKEN = re.compile(r"\s*(?:(?P<name>[A-Za-z0-9_.'\-]+(?:/[0-9]+)?)|(?P<punct>[()\[\],]))")


class _Cursor:
    def __init__(self, text, pos=0):
        self.text = text
        self.pos = pos

    def peek(self):
        m = _TOKEN.match(self.text, self.pos)
        if not m:
            return None
        return m.group("name") or m.group("punct")

    def next(self):
        m = _TOKEN.match(self.text, self.pos)
        if not m:
            raise ParseError(f"unexpected text {self.text[self.pos:self.pos + 10]!r}", pos=self.pos)
        self.pos = m.end()
        return m.group("name") or m.group("punct")

    def expect(self, tok):
        start = self.pos
        got = self.next()
        if got != tok:
            raise ParseError(f"expected {tok!r}, got {got!r}", pos=start)


def parse_rational(text: str) -> Fraction:
    """Exact rationals written ``p/q`` or as integers; decimals are rejected."""
    if not re.fullmatch(r"-?[0-9]+(/[0-9]+)?", text):
        raise ParseError(f"not a rational {text!r} (use p/q)")
    try:
        return Fraction(text)
    except ZeroDivisionError:
        raise ParseError(f"zero denominator in {text!r}") from None


def parse_lifting_at(cur: _Cursor):
    start = cur.pos
    name = cur.next()
    if name in ("bigbox", "bigdia"):
        return BigBox() if name == "bigbox" else BigDia()
    if name in ("dia", "box", "down", "up"):
        cur.expect("(")
        label = cur.next()
        cur.expect(")")
        return {"dia": Dia, "box": Box, "down": Down, "up": Up}[name](label)
    if name == "pge":
        cur.expect("(")
        label = cur.next()
        cur.expect(",")
        eps = parse_rational(cur.next())
        cur.expect(")")
        return PGe(label, eps)
    if name == "pos":
        cur.expect("(")
        skel = _parse_skeleton(cur)
        cur.expect(")")
        return PosBool(skel, _max_var(skel) + 1)
    raise ParseError(f"unknown lifting {name!r}", pos=start)


def _parse_skeleton(cur):
    tok = cur.peek()
    if tok in ("and", "or"):
        cur.next()
        cur.expect("(")
        items = [_parse_skeleton(cur)]
        while cur.peek() == ",":
            cur.next()
            items.append(_parse_skeleton(cur))
        cur.expect(")")
        return (SAnd if tok == "and" else SOr)(tuple(items))
    if tok == "top":
        cur.next()
        return STop()
    if tok == "bot":
        cur.next()
        return SBot()
    if tok is not None and re.fullmatch(r"_[0-9]+", tok):
        cur.next()
        return SVar(int(tok[1:]))
    lam = parse_lifting_at(cur)
    cur.expect("[")
    args = []
    if cur.peek() != "]":
        args.append(_parse_skeleton(cur))
        while cur.peek() == ",":
            cur.next()
            args.append(_parse_skeleton(cur))
    cur.expect("]")
    return SApp(lam, tuple(args))


def _max_var(s) -> int:
    if isinstance(s, SVar):
        return s.index
    if isinstance(s, (SAnd, SOr)):
        return max((_max_var(i) for i in s.items), default=-1)
    if isinstance(s, SApp):
        return max((_max_var(a) for a in s.args), default=-1)
    return -1


def parse_lifting(text: str):
    cur = _Cursor(text)
    lam = parse_lifting_at(cur)
    if cur.peek() is not None or cur.text[cur.pos:].strip():
        raise ParseError(f"trailing text after lifting in {text!r}", pos=cur.pos)
    return lam
