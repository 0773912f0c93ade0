"""Relational connectors: expression trees and their evaluation.

A connector ``L: F → G`` lifts a relation ``r: X ⇸ Y`` to a relation
``Lr: FX ⇸ GY``.  Expressions are built from the node classes below; before
evaluation they are *bound* to a source and target kind with :func:`bind`,
which fills in every intermediate kind.  :func:`connector_lift` then decides
``a (L r) b``.

Composites are evaluated in three tiers: registered closed forms, then a
bounded search over middle terms on the maximal boxes of ``r`` (restricted to
the supports of the outer terms), and finally an :class:`Intractable` error.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Iterable

from .caps import DEFAULT_CAPS, Caps
from .errors import CapExceeded, Intractable, KindMismatch
from .functors import (
    DET, DLTS, PLTS, Pair, PMap, FrozenMap, SUSP, SUSPIE, count_terms, enumerate_terms,
    is_susp, kind_str, plts, support,
)
from .liftings import (
    Box, Dia, Down, LambdaRel, PGe, PGeDual, arity, eval_lifting, lambda_dual,
)
from .relcore import FinSet, Rel, couniv_factorize, rel, rel_converse

EPS = "eps"


# --------------------------------------------------------------------------
# natural transformations

@dataclass(frozen=True)
class RelabelConv:
    """``S ↦ S·R°``: PLTS over R's source labels to PLTS over its targets."""
    R: Rel

    def dst_kind(self, src):
        return PLTS(tuple(self.R.dst))

    def apply(self, src, t):
        return frozenset((m, x) for l, x in t for m in self.R.succ(l) if l in self.R.src)


@dataclass(frozen=True)
class Relabel:
    """``T ↦ T·R``: PLTS over R's target labels to PLTS over its sources."""
    R: Rel

    def dst_kind(self, src):
        return PLTS(tuple(self.R.src))

    def apply(self, src, t):
        return frozenset((l, y) for m, y in t for l in self.R.pred(m) if m in self.R.dst)


@dataclass(frozen=True)
class Incl:
    """``(l, x) ↦ {(l, x)}``: deterministic steps into labelled successor sets."""

    def dst_kind(self, src):
        if not isinstance(src, DET):
            raise KindMismatch(f"inclusion needs DET, got {kind_str(src)}")
        return PLTS(src.labels)

    def apply(self, src, t):
        return frozenset((t,))


@dataclass(frozen=True)
class Proj1:
    def dst_kind(self, src):
        if not isinstance(src, Pair):
            raise KindMismatch(f"projection needs a product, got {kind_str(src)}")
        return src.first

    def apply(self, src, t):
        return t[0]


@dataclass(frozen=True)
class Proj2:
    def dst_kind(self, src):
        if not isinstance(src, Pair):
            raise KindMismatch(f"projection needs a product, got {kind_str(src)}")
        return src.second

    def apply(self, src, t):
        return t[1]


NAT_TYPES = (RelabelConv, Relabel, Incl, Proj1, Proj2)


def _nat_src_check(nat, kind):
    if isinstance(nat, (RelabelConv, Relabel)) and not isinstance(kind, PLTS):
        raise KindMismatch(f"{type(nat).__name__} needs PLTS, got {kind_str(kind)}")
    nat.dst_kind(kind)


# --------------------------------------------------------------------------
# expression nodes

@dataclass(frozen=True, kw_only=True)
class Connector:
    src: object = field(default=None, compare=False, repr=False)
    dst: object = field(default=None, compare=False, repr=False)

    @property
    def bound(self) -> bool:
        return self.src is not None and self.dst is not None


@dataclass(frozen=True)
class Kant(Connector):
    lam: LambdaRel


@dataclass(frozen=True)
class Id(Connector):
    pass


@dataclass(frozen=True)
class Comp(Connector):
    """``outer · inner``: apply ``inner`` first."""
    outer: Connector
    inner: Connector
    mid: object = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Conv(Connector):
    c: Connector


@dataclass(frozen=True)
class Meet(Connector):
    c1: Connector
    c2: Connector


@dataclass(frozen=True)
class Prod(Connector):
    c1: Connector
    c2: Connector


@dataclass(frozen=True)
class PullLeft(Connector):
    """``L • α``: ``a (L•α) r b`` iff ``α(a) (L r) b``."""
    c: Connector
    nat: object


@dataclass(frozen=True)
class PullRight(Connector):
    """``β° • L``: ``a (β°•L) r b`` iff ``a (L r) β(b)``."""
    nat: object
    c: Connector


@dataclass(frozen=True)
class KR(Connector):
    R: Rel


@dataclass(frozen=True)
class LR(Connector):
    R: Rel


@dataclass(frozen=True)
class LF(Connector):
    pass


@dataclass(frozen=True)
class LT(Connector):
    pass


@dataclass(frozen=True)
class IOCO(Connector):
    pass


@dataclass(frozen=True)
class Weak(Connector):
    tau: object


def converse(c: Connector) -> Connector:
    """``c˘`` with the involution applied syntactically."""
    if isinstance(c, Conv):
        inner = c.c
        return inner if not c.bound else replace(inner, src=c.dst, dst=c.src)
    return Conv(c, src=c.dst, dst=c.src)


def weak_labels(R_labels, tau) -> Rel:
    """``R̂ = {(l,l) | l≠τ} ∪ {(τ,τ), (τ,ε)}`` over ``A`` and ``A ∪ {ε}``."""
    labels = tuple(R_labels)
    target = labels + ((EPS,) if EPS not in labels else ())
    pairs = {(l, l) for l in labels} | {(tau, EPS)}
    return rel(labels, target, pairs)


def named_connector(name: str, *params, **kw) -> Connector:
    """Catalog entries built from the general constructors."""
    name = name.upper()
    if name == "ID":
        return Id()
    if name in ("KR", "LR"):
        (R,) = params
        return KR(R) if name == "KR" else LR(R)
    if name == "LF":
        return LF()
    if name == "LT":
        return PullLeft(LF(), Incl())
    if name == "IOCO":
        inputs, outputs = kw["inputs"], kw["outputs"]
        return Prod(
            Kant(LambdaRel((Dia(i), Dia(i)) for i in inputs)),
            Kant(LambdaRel([(Box(o), Box(o)) for o in outputs]
                           + [(Down(o), Down(o)) for o in outputs])),
        )
    if name == "WEAK":
        labels, tau = kw["labels"], kw.get("tau", params[0] if params else None)
        if tau not in labels:
            raise KindMismatch(f"internal label {tau!r} not among {labels}")
        return PullRight(Relabel(weak_labels(labels, tau)), LF())
    raise KeyError(f"unknown connector {name!r}")


# --------------------------------------------------------------------------
# kind inference and binding

def _labelled(kind):
    return isinstance(kind, (PLTS, DLTS, DET))


def _merge(k1, k2):
    if k1 is None:
        return k2
    if k2 is None or k1 == k2:
        return k1
    if type(k1) is type(k2) and _labelled(k1):
        labels = tuple(k1.labels) + tuple(l for l in k2.labels if l not in k1.labels)
        return type(k1)(labels)
    raise KindMismatch(f"conflicting kinds {kind_str(k1)} and {kind_str(k2)}")


def _kant_side(liftings, other):
    if any(isinstance(l, (PGe, PGeDual)) for l in liftings):
        return DLTS(other.labels) if _labelled(other) else None
    if _labelled(other):
        return type(other)(other.labels)
    return None


def infer_dst(c: Connector, src):
    """Best-effort target kind of ``c`` given its source kind (or ``None``)."""
    if c.dst is not None:
        return c.dst
    if isinstance(c, (Id, LF, Meet)) and not isinstance(c, Meet):
        return src
    if isinstance(c, Meet):
        return _merge(infer_dst(c.c1, src), infer_dst(c.c2, src))
    if isinstance(c, Kant):
        return _kant_side([m for _, m in c.lam], src)
    if isinstance(c, Comp):
        mid = c.mid or infer_dst(c.inner, src)
        return None if mid is None else infer_dst(c.outer, mid)
    if isinstance(c, Conv):
        return infer_src(c.c, src)
    if isinstance(c, Prod):
        if not isinstance(src, Pair):
            return None
        d1, d2 = infer_dst(c.c1, src.first), infer_dst(c.c2, src.second)
        return None if d1 is None or d2 is None else Pair(d1, d2)
    if isinstance(c, PullLeft):
        return infer_dst(c.c, c.nat.dst_kind(src))
    if isinstance(c, PullRight):
        return None
    if isinstance(c, (KR, LR)):
        return PLTS(tuple(c.R.dst))
    if isinstance(c, LT):
        return PLTS(src.labels) if isinstance(src, DET) else None
    if isinstance(c, IOCO):
        return SUSPIE(src.first.keys, src.second.keys) if is_susp(src) else None
    if isinstance(c, Weak):
        return PLTS(tuple(src.labels) + (EPS,)) if isinstance(src, PLTS) else None
    return None


def infer_src(c: Connector, dst):
    """Best-effort source kind of ``c`` given its target kind (or ``None``)."""
    if c.src is not None:
        return c.src
    if isinstance(c, (Id, LF)):
        return dst
    if isinstance(c, Meet):
        return _merge(infer_src(c.c1, dst), infer_src(c.c2, dst))
    if isinstance(c, Kant):
        return _kant_side([l for l, _ in c.lam], dst)
    if isinstance(c, Comp):
        mid = c.mid or infer_src(c.outer, dst)
        return None if mid is None else infer_src(c.inner, mid)
    if isinstance(c, Conv):
        return infer_dst(c.c, dst)
    if isinstance(c, Prod):
        if not isinstance(dst, Pair):
            return None
        s1, s2 = infer_src(c.c1, dst.first), infer_src(c.c2, dst.second)
        return None if s1 is None or s2 is None else Pair(s1, s2)
    if isinstance(c, PullLeft):
        return None
    if isinstance(c, PullRight):
        return infer_src(c.c, c.nat.dst_kind(dst))
    if isinstance(c, (KR, LR)):
        return PLTS(tuple(c.R.src))
    if isinstance(c, LT):
        return DET(dst.labels) if isinstance(dst, PLTS) and dst.labels else None
    if isinstance(c, IOCO):
        return SUSP(dst.first.keys, dst.second.keys) if is_susp(dst) else None
    if isinstance(c, Weak):
        if isinstance(dst, PLTS):
            return PLTS(tuple(l for l in dst.labels if l != EPS))
        return None
    return None


def _need(cond, c, src, dst):
    if not cond:
        raise KindMismatch(f"{type(c).__name__} cannot connect {kind_str(src)} to {kind_str(dst)}")


def bind(c: Connector, src, dst, caps: Caps = DEFAULT_CAPS) -> Connector:
    """Return ``c`` with every node annotated by its source and target kind."""
    if isinstance(c, Kant):
        c.lam.check(src, dst, caps)
        return replace(c, src=src, dst=dst)
    if isinstance(c, Id):
        _need(src == dst, c, src, dst)
    elif isinstance(c, Comp):
        mid = c.mid
        if mid is None:
            mid = _merge(infer_dst(c.inner, src), infer_src(c.outer, dst))
        if mid is None:
            raise KindMismatch("cannot infer the middle kind of a composite; pass mid=")
        return replace(c, outer=bind(c.outer, mid, dst, caps),
                       inner=bind(c.inner, src, mid, caps), mid=mid, src=src, dst=dst)
    elif isinstance(c, Conv):
        return replace(c, c=bind(c.c, dst, src, caps), src=src, dst=dst)
    elif isinstance(c, Meet):
        return replace(c, c1=bind(c.c1, src, dst, caps), c2=bind(c.c2, src, dst, caps),
                       src=src, dst=dst)
    elif isinstance(c, Prod):
        _need(isinstance(src, Pair) and isinstance(dst, Pair), c, src, dst)
        return replace(c, c1=bind(c.c1, src.first, dst.first, caps),
                       c2=bind(c.c2, src.second, dst.second, caps), src=src, dst=dst)
    elif isinstance(c, PullLeft):
        _nat_src_check(c.nat, src)
        return replace(c, c=bind(c.c, c.nat.dst_kind(src), dst, caps), src=src, dst=dst)
    elif isinstance(c, PullRight):
        _nat_src_check(c.nat, dst)
        return replace(c, c=bind(c.c, src, c.nat.dst_kind(dst), caps), src=src, dst=dst)
    elif isinstance(c, (KR, LR)):
        _need(isinstance(src, PLTS) and isinstance(dst, PLTS), c, src, dst)
    elif isinstance(c, LF):
        _need(isinstance(src, PLTS) and isinstance(dst, PLTS), c, src, dst)
    elif isinstance(c, LT):
        _need(isinstance(src, DET) and isinstance(dst, PLTS), c, src, dst)
    elif isinstance(c, IOCO):
        _need(is_susp(src) and is_susp(dst) and src.name == "SUSP" and dst.name == "SUSPIE"
              and src.first.keys == dst.first.keys and src.second.keys == dst.second.keys,
              c, src, dst)
    elif isinstance(c, Weak):
        _need(isinstance(src, PLTS) and isinstance(dst, PLTS) and c.tau in src.labels
              and EPS in dst.labels, c, src, dst)
    else:
        raise TypeError(f"not a connector: {c!r}")
    return replace(c, src=src, dst=dst)


# --------------------------------------------------------------------------
# closed forms

def egli_milner_lift(r: Rel, S, T) -> bool:
    """Forth and back: every step of one side is matched by the other."""
    for l, x in S:
        if not any(m == l and r.related(x, y) for m, y in T):
            return False
    for m, y in T:
        if not any(l == m and r.related(x, y) for l, x in S):
            return False
    return True


def forth_lift(r: Rel, S, T) -> bool:
    """``L_f``: every step of ``S`` is matched in ``T`` with the same label."""
    return all(any(m == l and r.related(x, y) for m, y in T) for l, x in S)


def kr_lift(R: Rel, r: Rel, S, T) -> bool:
    for l, x in S:
        if l not in R.src:
            continue
        for m in R.succ(l):
            if not any(m2 == m and r.related(x, y) for m2, y in T):
                return False
    return True


def lr_lift(R: Rel, r: Rel, S, T) -> bool:
    if not kr_lift(R, r, S, T):
        return False
    for m, y in T:
        if m not in R.dst:
            continue
        for l in R.pred(m):
            if not any(l2 == l and r.related(x, y) for l2, x in S):
                return False
    return True


def lt_lift(r: Rel, step, T) -> bool:
    l, x = step
    return any(m == l and r.related(x, y) for m, y in T)


def shared_step_lift(r: Rel, S, T) -> bool:
    """``L_t · L_t˘``: some step of ``S`` and some step of ``T`` agree up to ``r``."""
    return any(m == l and r.related(x, y) for l, x in S for m, y in T)


def ioco_lift(r: Rel, spec, impl) -> bool:
    d_in, d_out = spec
    t_in, t_out = impl
    for i, x in d_in.items():
        if not r.related(x, t_in[i]):
            return False
    for o, y in t_out.items():
        if o not in d_out or not r.related(d_out[o], y):
            return False
    return True


def ioco_compat_lift(r: Rel, spec1, spec2) -> bool:
    d_in, d_out = spec1
    e_in, e_out = spec2
    for i, x in d_in.items():
        if i in e_in and not r.related(x, e_in[i]):
            return False
    return any(o in e_out and r.related(x, e_out[o]) for o, x in d_out.items())


def weak_lift(tau, r: Rel, S, T) -> bool:
    """Forth clause against a saturated right term: a τ step may be answered
    by a τ⁺ or an ε (τ*) arrow, every other label by its own saturated arrow."""
    for l, x in S:
        answers = (l, EPS) if l == tau else (l,)
        if not any(m in answers and r.related(x, y) for m, y in T):
            return False
    return True


def lqlr_comp_lift(Q: Rel, R: Rel, r: Rel, S, U) -> bool:
    """``(L_Q · L_R) r`` via boxes of ``r``: ``R ⊆ A×B``, ``Q ⊆ B×C``."""
    xs = frozenset(x for _, x in S)
    zs = frozenset(z for _, z in U)
    boxes = _maximal_boxes(r.restrict(xs, zs))
    s_by_label = _by_label(S)
    u_by_label = _by_label(U)

    def left_ok(m, A):
        # (i): every R-predecessor label of m has an S-step into A
        return all(s_by_label.get(l, frozenset()) & A for l in R.pred(m))

    def right_ok(m, B):
        # (ii): every Q-successor label of m has a U-step into B
        return all(u_by_label.get(p, frozenset()) & B for p in Q.succ(m))

    for l, x in S:
        for m in R.succ(l) if l in R.src else ():
            if not any(x in A and left_ok(m, A) and right_ok(m, B) for A, B in boxes):
                return False
    for p, z in U:
        for m in Q.pred(p) if p in Q.dst else ():
            if not any(z in B and right_ok(m, B) and left_ok(m, A) for A, B in boxes):
                return False
    return True


def _by_label(S) -> dict:
    out = {}
    for l, x in S:
        out.setdefault(l, set()).add(x)
    return {l: frozenset(v) for l, v in out.items()}


def _maximal_boxes(r: Rel):
    return couniv_factorize(r, maximal=True).mid.elements


def coupling_lift(r: Rel, alpha, beta) -> bool:
    """Is there a coupling of ``alpha`` and ``beta`` supported on label-matched
    pairs ``((l,x),(l,y))`` with ``x r y``?  Decided by exact max flow."""
    left = list(alpha.items())
    right = list(beta.items())
    n, m = len(left), len(right)
    if sum(alpha.values()) != sum(beta.values()):
        return False
    source, sink = n + m, n + m + 1
    cap = {}
    adj = {v: [] for v in range(n + m + 2)}

    def edge(u, v, c):
        if (u, v) not in cap:
            adj[u].append(v)
            adj[v].append(u)
            cap[(u, v)] = Fraction(0)
            cap.setdefault((v, u), Fraction(0))
        cap[(u, v)] += c

    total = Fraction(0)
    for i, ((l, x), w) in enumerate(left):
        edge(source, i, w)
        total += w
    for j, ((m2, y), w) in enumerate(right):
        edge(n + j, sink, w)
    for i, ((l, x), _) in enumerate(left):
        for j, ((m2, y), _) in enumerate(right):
            if l == m2 and r.related(x, y):
                edge(i, n + j, total)
    return _max_flow(adj, cap, source, sink) == total


def _max_flow(adj, cap, s, t) -> Fraction:
    flow = Fraction(0)
    while True:
        parent = {s: None}
        queue = [s]
        for u in queue:
            for v in adj[u]:
                if v not in parent and cap[(u, v)] > 0:
                    parent[v] = u
                    queue.append(v)
        if t not in parent:
            return flow
        path = []
        v = t
        while parent[v] is not None:
            path.append((parent[v], v))
            v = parent[v]
        push = min(cap[e] for e in path)
        for u, v in path:
            cap[(u, v)] -= push
            cap[(v, u)] += push
        flow += push


def identity_lift(kind, r: Rel, a, b) -> bool:
    """Closed forms of the identity connector (the Barr extension)."""
    if isinstance(kind, PLTS):
        return egli_milner_lift(r, a, b)
    if isinstance(kind, DLTS):
        return coupling_lift(r, a, b)
    if isinstance(kind, DET):
        return a[0] == b[0] and r.related(a[1], b[1])
    if isinstance(kind, PMap):
        return a.keys() == b.keys() and all(r.related(a[k], b[k]) for k in a)
    if isinstance(kind, Pair):
        return identity_lift(kind.first, r, a[0], b[0]) and identity_lift(kind.second, r, a[1], b[1])
    raise KindMismatch(f"no identity connector for {kind_str(kind)}")


# --------------------------------------------------------------------------
# evaluation

def _subsets(elems):
    for k in range(len(elems) + 1):
        for combo in itertools.combinations(elems, k):
            yield frozenset(combo)


def _arg_tuples(elems, n):
    """Argument tuples of subsets, by total size then lexicographically."""
    subs = list(_subsets(elems))
    if n == 0:
        return [()]
    tuples = list(itertools.product(subs, repeat=n))
    pos = {s: i for i, s in enumerate(subs)}
    tuples.sort(key=lambda tup: (sum(len(s) for s in tup), [pos[s] for s in tup]))
    return tuples


def kant_witness(c: Kant, r: Rel, a, b, caps: Caps = DEFAULT_CAPS):
    """First ``(λ, μ, args)`` with ``a ∈ λ(args)`` but ``b ∉ μ(r[args])``, else ``None``.

    Arguments range over subsets of ``support(a)`` only; by naturality and
    monotonicity nothing outside the support can change the answer.
    """
    supp = r.src.sort(support(c.src, a))
    images = {}
    for lam, mu in c.lam:
        n = arity(lam, c.src)
        if n * len(supp) > caps.support_bits:
            raise Intractable(f"Kantorovich arguments for {lam}", n * len(supp), caps.support_bits)
        for args in _arg_tuples(supp, n):
            if not eval_lifting(lam, c.src, args, a):
                continue
            imgs = []
            for A in args:
                if A not in images:
                    images[A] = r.image(A)
                imgs.append(images[A])
            if not eval_lifting(mu, c.dst, imgs, b):
                return lam, mu, args
    return None


def _check_bound(c):
    if not c.bound:
        raise KindMismatch("connector is not bound to kinds; call bind(c, F, G) first")


def connector_lift(c: Connector, r: Rel, a, b, caps: Caps = DEFAULT_CAPS) -> bool:
    """Decide ``a (c r) b``."""
    _check_bound(c)
    if isinstance(c, Kant):
        return kant_witness(c, r, a, b, caps) is None
    if isinstance(c, Id):
        return identity_lift(c.src, r, a, b)
    if isinstance(c, Comp):
        return _comp_lift(c, r, a, b, caps)
    if isinstance(c, Conv):
        return connector_lift(c.c, rel_converse(r), b, a, caps)
    if isinstance(c, Meet):
        return connector_lift(c.c1, r, a, b, caps) and connector_lift(c.c2, r, a, b, caps)
    if isinstance(c, Prod):
        return (connector_lift(c.c1, r, a[0], b[0], caps)
                and connector_lift(c.c2, r, a[1], b[1], caps))
    if isinstance(c, PullLeft):
        return connector_lift(c.c, r, c.nat.apply(c.src, a), b, caps)
    if isinstance(c, PullRight):
        return connector_lift(c.c, r, a, c.nat.apply(c.dst, b), caps)
    if isinstance(c, KR):
        return kr_lift(c.R, r, a, b)
    if isinstance(c, LR):
        return lr_lift(c.R, r, a, b)
    if isinstance(c, LF):
        return forth_lift(r, a, b)
    if isinstance(c, LT):
        return lt_lift(r, a, b)
    if isinstance(c, IOCO):
        return ioco_lift(r, a, b)
    if isinstance(c, Weak):
        return weak_lift(c.tau, r, a, b)
    raise TypeError(f"not a connector: {c!r}")


def _as_lr(c):
    """``LR(R)`` or ``Conv(LR(R)) = LR(R°)`` as a label relation, else ``None``."""
    if isinstance(c, LR):
        return c.R
    if isinstance(c, Conv) and isinstance(c.c, LR):
        return rel_converse(c.c.R)
    return None


def closed_form(c: Comp):
    """A registered evaluator ``(r, a, b) -> bool`` for the composite, or ``None``."""
    outer, inner = c.outer, c.inner
    if isinstance(outer, Id):
        return lambda r, a, b, caps: connector_lift(inner, r, a, b, caps)
    if isinstance(inner, Id):
        return lambda r, a, b, caps: connector_lift(outer, r, a, b, caps)
    Q, R = _as_lr(outer), _as_lr(inner)
    if Q is not None and R is not None:
        return lambda r, a, b, caps: lqlr_comp_lift(Q, R, r, a, b)
    if isinstance(outer, LT) and isinstance(inner, Conv) and isinstance(inner.c, LT):
        return lambda r, a, b, caps: shared_step_lift(r, a, b)
    if isinstance(outer, Conv) and isinstance(outer.c, IOCO) and isinstance(inner, IOCO):
        return lambda r, a, b, caps: ioco_compat_lift(r, a, b)
    return None


def _comp_lift(c: Comp, r, a, b, caps):
    form = closed_form(c)
    if form is not None:
        return form(r, a, b, caps)
    return generic_comp_lift(c, r, a, b, caps)


def generic_comp_lift(c: Comp, r: Rel, a, b, caps: Caps = DEFAULT_CAPS) -> bool:
    """Search a middle term over the maximal boxes of ``r`` restricted to the
    supports of ``a`` and ``b``."""
    _check_bound(c)
    sa, sb = support(c.src, a), support(c.dst, b)
    if max(len(sa), len(sb)) > caps.support:
        raise Intractable("composite support", max(len(sa), len(sb)), caps.support)
    if isinstance(c.mid, DLTS):
        raise Intractable("composite through distributions (continuum of middle terms)", 0, 0)
    local = r.restrict(sa, sb)
    fac = couniv_factorize(local, maximal=True)
    count = count_terms(c.mid, len(fac.mid))
    if count > caps.middle_terms:
        raise Intractable("composite middle terms", count, caps.middle_terms)
    for m in enumerate_terms(c.mid, fac.mid, cap=caps.middle_terms):
        if connector_lift(c.inner, fac.t, a, m, caps) and connector_lift(c.outer, fac.s, m, b, caps):
            return True
    return False


def lifted_relation(c: Connector, r: Rel, left_terms: Iterable, right_terms: Iterable,
                    caps: Caps = DEFAULT_CAPS) -> set:
    """``{(a, b) | a (c r) b}`` over explicit term lists."""
    right_terms = list(right_terms)
    return {(a, b) for a in left_terms for b in right_terms if connector_lift(c, r, a, b, caps)}


# --------------------------------------------------------------------------
# weak transitions

def weak_saturate(C, tau):
    """Saturate a PLTS coalgebra: ``l`` arrows become ``τ* l τ*`` paths (so a
    saturated ``τ`` arrow is a ``τ⁺`` path) and a new label ``eps`` records
    ``τ*`` reachability."""
    from .functors import Coalgebra

    if not isinstance(C.kind, PLTS):
        raise KindMismatch(f"saturation needs PLTS, got {kind_str(C.kind)}")
    if tau not in C.kind.labels:
        raise KindMismatch(f"internal label {tau!r} not among {C.kind.labels}")
    if EPS in C.kind.labels:
        raise KindMismatch(f"label {EPS!r} is reserved for saturation")
    tau_succ = {x: [y for l, y in C(x) if l == tau] for x in C.states}
    closure = {}
    for x in C.states:
        seen = {x}
        todo = [x]
        while todo:
            for y in tau_succ[todo.pop()]:
                if y not in seen:
                    seen.add(y)
                    todo.append(y)
        closure[x] = frozenset(seen)
    trans = {}
    for x in C.states:
        steps = {(EPS, y) for y in closure[x]}
        for x1 in closure[x]:
            for l, x2 in C(x1):
                steps.update((l, y) for y in closure[x2])
        trans[x] = frozenset(steps)
    kind = PLTS(tuple(C.kind.labels) + (EPS,))
    return Coalgebra(kind, C.states, FrozenMap(trans))


def weak_tau(c: Connector):
    """The internal label when ``c`` is a weak-simulation connector, else ``None``."""
    if isinstance(c, Weak):
        return c.tau
    if isinstance(c, PullRight) and isinstance(c.nat, Relabel) and isinstance(c.c, LF):
        taus = [l for l, m in c.nat.R.pairs if m == EPS and l != EPS]
        if len(taus) == 1:
            return taus[0]
    return None
