"""Brute-force reference implementations.

Nothing here is fast.  Each function takes a different route from the
production code it is compared against: relation liftings are built from
their Barr construction, composites are found by searching middle terms on
the full box factorization (or over every small factorization), similarity
notions are recomputed from their textbook definitions, and logical
theories are enumerated semantically.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction

from .caps import DEFAULT_CAPS, Caps
from .connectors import (
    IOCO, KR, LF, LR, LT, Comp, Connector, Conv, Id, Kant, Meet, Prod, PullLeft, PullRight,
    Weak, bind, connector_lift,
)
from .errors import CapExceeded, Intractable, KindMismatch
from .functors import (
    DET, DLTS, PLTS, Coalgebra, FrozenMap, Pair, PMap, count_terms, enumerate_terms, fmap,
    support,
)
from .liftings import (
    BigBox, BigDia, Box, Dia, Down, LambdaRel, PGe, PGeDual, Up, arity, eval_lifting,
)
from .logic import BOT, TOP, Mod, conj, disj
from .relcore import FinSet, Rel, boxes, full_rel, rel_compose, rel_converse


# --------------------------------------------------------------------------
# Barr extension

def brute_barr(kind, r: Rel, denominator: int = 2, cap: int = DEFAULT_CAPS.terms) -> set:
    """``{(Fπ₁ w, Fπ₂ w) | w ∈ F(r)}``.

    ``F(r)`` is the set of terms over the pairs of ``r``.  Powerset terms are
    unions of single cells, so their images are accumulated cell by cell
    rather than materializing every subset; other kinds are enumerated
    outright (distributions on the ``1/denominator`` grid).
    """
    W = FinSet(list(r))
    if isinstance(kind, PLTS):
        images = {(frozenset(), frozenset())}
        for l in kind.labels:
            for x, y in W:
                images |= {(A | {(l, x)}, B | {(l, y)}) for A, B in images}
        return images
    pi1 = {w: w[0] for w in W}
    pi2 = {w: w[1] for w in W}
    return {(fmap(kind, pi1, w), fmap(kind, pi2, w))
            for w in enumerate_terms(kind, W, denominator, cap)}


def barr_related(kind, r: Rel, a, b) -> bool:
    """Is there a ``w ∈ F(r)`` projecting to ``a`` and ``b``?

    Powerset: the largest candidate over label-matched cells suffices.
    Distributions: search the grid given by the common denominator of the
    weights, which is exact by integrality of transportation polytopes.
    """
    if isinstance(kind, PLTS):
        w = {(l, (x, y)) for l, x in a for m, y in b if l == m and r.related(x, y)}
        return ({(l, p[0]) for l, p in w} == set(a)) and ({(l, p[1]) for l, p in w} == set(b))
    if isinstance(kind, DET):
        return a[0] == b[0] and r.related(a[1], b[1])
    if isinstance(kind, PMap):
        return set(a) == set(b) and all(r.related(a[k], b[k]) for k in a)
    if isinstance(kind, Pair):
        return barr_related(kind.first, r, a[0], b[0]) and barr_related(kind.second, r, a[1], b[1])
    if isinstance(kind, DLTS):
        den = 1
        for w in list(a.values()) + list(b.values()):
            den = den * w.denominator // math.gcd(den, w.denominator)
        cells = [(l, (x, y)) for (l, x) in a for (m, y) in b if l == m and r.related(x, y)]
        cells = list(dict.fromkeys(cells))
        target_a = {k: v * den for k, v in a.items()}
        target_b = {k: v * den for k, v in b.items()}
        for counts in _compositions(den, len(cells)):
            ma, mb = {}, {}
            for (l, (x, y)), c in zip(cells, counts):
                if c:
                    ma[(l, x)] = ma.get((l, x), 0) + c
                    mb[(l, y)] = mb.get((l, y), 0) + c
            if ma == target_a and mb == target_b:
                return True
        return False
    raise KindMismatch(f"no Barr extension for {kind!r}")


def _compositions(total, parts):
    if parts == 0:
        if total == 0:
            yield ()
        return
    for cut in itertools.combinations(range(total + parts - 1), parts - 1):
        prev = -1
        out = []
        for c in cut:
            out.append(c - prev - 1)
            prev = c
        out.append(total + parts - 2 - prev)
        yield tuple(out)


# --------------------------------------------------------------------------
# composites

def naive_kant(c: Kant, r: Rel, a, b) -> bool:
    """Kantorovich lifting with arguments ranging over *all* subsets of ``X``."""
    subs = list(r.src.subsets())
    for lam, mu in c.lam:
        n = arity(lam, c.src)
        for args in itertools.product(subs, repeat=n):
            if eval_lifting(lam, c.src, args, a) and \
                    not eval_lifting(mu, c.dst, [r.image(A) for A in args], b):
                return False
    return True


def brute_lift(c: Connector, r: Rel, a, b, bound: int = 4, caps: Caps = DEFAULT_CAPS) -> bool:
    """Evaluate a bound connector with every composite sent to :func:`brute_compose`."""
    if isinstance(c, Comp):
        return brute_compose(c.outer, c.inner, r, a, b, bound=bound, caps=caps)
    if isinstance(c, Conv):
        return brute_lift(c.c, rel_converse(r), b, a, bound, caps)
    if isinstance(c, Meet):
        return brute_lift(c.c1, r, a, b, bound, caps) and brute_lift(c.c2, r, a, b, bound, caps)
    if isinstance(c, Prod):
        return brute_lift(c.c1, r, a[0], b[0], bound, caps) and \
            brute_lift(c.c2, r, a[1], b[1], bound, caps)
    if isinstance(c, PullLeft):
        return brute_lift(c.c, r, c.nat.apply(c.src, a), b, bound, caps)
    if isinstance(c, PullRight):
        return brute_lift(c.c, r, a, c.nat.apply(c.dst, b), bound, caps)
    if isinstance(c, Kant):
        return naive_kant(c, r, a, b)
    if isinstance(c, Id):
        return barr_related(c.src, r, a, b)
    # label-relation builtins are definitions, not derived; reuse them
    return connector_lift(c, r, a, b, caps)


def _middle_terms(kind, Y: FinSet, bound, denominator, caps):
    """Terms over ``Y`` whose support has at most ``bound`` elements."""
    for k in range(min(bound, len(Y)) + 1):
        for sub in itertools.combinations(Y.elements, k):
            Y0 = FinSet(sub)
            n = count_terms(kind, k, denominator)
            if n > caps.middle_terms:
                raise Intractable("oracle middle terms", n, caps.middle_terms)
            for m in enumerate_terms(kind, Y0, denominator, caps.terms):
                if len(support(kind, m)) == k:
                    yield m


def brute_compose(L: Connector, K: Connector, r: Rel, a, b, bound: int = 4,
                  mode: str = "couniv", denominator: int = 2,
                  caps: Caps = DEFAULT_CAPS) -> bool:
    """``a ((L·K) r) b`` by search; ``K`` is applied first.

    ``mode="couniv"`` factors ``r`` (restricted to the supports) through
    *all* its boxes and tries every middle term of support at most
    ``bound``; a sub-factorization is enough because composites are
    monotone, so every hit is genuine.  ``mode="all"`` instead joins over
    every factorization ``r = s·t`` through ``Y = {0..k-1}``, ``k ≤ bound``.
    Both connectors must be bound.
    """
    if not (L.bound and K.bound):
        raise KindMismatch("brute_compose needs bound connectors")
    mid = K.dst
    if mode == "couniv":
        sa, sb = support(K.src, a), support(L.dst, b)
        local = r.restrict(sa, sb)
        Y = FinSet(boxes(local))
        t = Rel(local.src, Y, frozenset((x, y) for y in Y for x in y[0]))
        s = Rel(Y, local.dst, frozenset((y, z) for y in Y for z in y[1]))
        for m in _middle_terms(mid, Y, bound, denominator, caps):
            if brute_lift(K, t, a, m, bound, caps) and brute_lift(L, s, m, b, bound, caps):
                return True
        return False
    if mode == "all":
        X, Z = r.src, r.dst
        for k in range(bound + 1):
            Y = FinSet(range(k))
            terms = list(enumerate_terms(mid, Y, denominator, caps.terms))
            for t in _relations(X, Y):
                for s in _relations(Y, Z):
                    if rel_compose(s, t) != r:
                        continue
                    for m in terms:
                        if brute_lift(K, t, a, m, bound, caps) and brute_lift(L, s, m, b, bound, caps):
                            return True
        return False
    raise ValueError(f"unknown mode {mode!r}")


def _relations(X, Y):
    cells = list(itertools.product(X, Y))
    for mask in range(1 << len(cells)):
        yield Rel(X, Y, frozenset(c for i, c in enumerate(cells) if mask >> i & 1))


# --------------------------------------------------------------------------
# theory inclusion by semantic enumeration

class _Bits:
    """States of ``C ⊎ D`` as bit positions."""

    def __init__(self, C, D):
        self.C, self.D = C, D
        self.nodes = [(0, x) for x in C.states] + [(1, y) for y in D.states]
        self.pos = {n: i for i, n in enumerate(self.nodes)}
        self.full = (1 << len(self.nodes)) - 1

    def side_mask(self, side):
        return sum(1 << i for i, (s, _) in enumerate(self.nodes) if s == side)


def _naive_lift_mask(lam, kind, M, side, bits, arg_masks):
    """Bitmask of the ``side`` states whose successor term lies in ``λ(args)``."""
    out = 0
    for x in M.states:
        i = bits.pos[(side, x)]
        t = M(x)

        def inside(state, k=0):
            return arg_masks[k] >> bits.pos[(side, state)] & 1

        if isinstance(kind, PLTS) and isinstance(lam, Dia):
            ok = any(l == lam.label and inside(y) for l, y in t)
        elif isinstance(kind, PLTS) and isinstance(lam, Box):
            ok = all(inside(y) for l, y in t if l == lam.label)
        elif isinstance(kind, DLTS) and isinstance(lam, PGe):
            ok = sum((w for (l, y), w in t.items() if l == lam.label and inside(y)),
                     Fraction(0)) >= lam.eps
        elif isinstance(kind, DLTS) and isinstance(lam, PGeDual):
            ok = sum((w for (l, y), w in t.items() if l == lam.label and not inside(y)),
                     Fraction(0)) < lam.eps
        elif isinstance(kind, DLTS) and isinstance(lam, Dia):
            ok = any(l == lam.label and inside(y) for (l, y) in t)
        elif isinstance(kind, DLTS) and isinstance(lam, Box):
            ok = all(inside(y) for (l, y) in t if l == lam.label)
        else:
            sets = [frozenset(z for z in M.states if m >> bits.pos[(side, z)] & 1)
                    for m in arg_masks]
            ok = eval_lifting(lam, kind, sets, t)
        if ok:
            out |= 1 << i
    return out


def _upsets(ups, full):
    """All up-sets of the preorder whose principal up-sets are ``ups``."""
    seen = {0}
    todo = [0]
    while todo:
        A = todo.pop()
        for u in ups:
            B = A | u
            if B not in seen:
                seen.add(B)
                todo.append(B)
    return sorted(seen)


def _principal(family, n, full):
    ups = []
    for i in range(n):
        m = full
        for F in family:
            if F >> i & 1:
                m &= F
        ups.append(m)
    return ups


def formula_enum_theory(C: Coalgebra, D: Coalgebra, lam_rel: LambdaRel, depth: int | None = None,
                        with_formulas: bool = False, max_upsets: int = 1 << 16):
    """Theory inclusion ``{(x, y) | every formula true at x is true at y}``.

    Formulas of modal depth ``≤ k`` are handled by their extensions over
    ``C ⊎ D``.  Closing a family of extensions under ``∧``/``∨`` yields
    exactly the up-sets of the preorder it induces, so each level applies
    every modal pair to every up-set of the previous preorder.  The loop stops
    when the preorder no longer changes, or at ``depth`` (default
    ``|C|·|D|``, at least 1).

    With ``with_formulas=True`` also returns ``{depth: [formula, ...]}`` with
    one representative per distinct modal atom extension.
    """
    bits = _Bits(C, D)
    n = len(bits.nodes)
    if depth is None:
        depth = max(1, len(C.states) * len(D.states))
    atoms = {}            # extension mask -> representative formula
    ups = [bits.full] * n  # principal up-sets; the preorder of depth-0 formulas is total
    reps = {0: BOT, bits.full: TOP}
    by_depth = {0: [TOP, BOT]}
    for k in range(1, depth + 1):
        upsets = _upsets(ups, bits.full)
        if len(upsets) > max_upsets:
            raise CapExceeded("up-sets in theory enumeration", len(upsets), max_upsets)
        if with_formulas:
            up_reps = {A: _upset_formula(A, ups, atoms, n) for A in upsets}
        new = []
        for lam, mu in lam_rel:
            ar = arity(lam, C.kind)
            for args in itertools.product(upsets, repeat=ar):
                mask = (_naive_lift_mask(lam, C.kind, C, 0, bits, args)
                        | _naive_lift_mask(mu, D.kind, D, 1, bits, args))
                if mask not in atoms:
                    phi = Mod(lam, mu, [up_reps[A] for A in args]) if with_formulas else None
                    atoms[mask] = phi
                    new.append(phi)
        by_depth[k] = new
        new_ups = _principal(atoms.keys(), n, bits.full)
        if new_ups == ups:
            break
        ups = new_ups
    cpos = [bits.pos[(0, x)] for x in C.states]
    pairs = frozenset((x, y) for x, i in zip(C.states, cpos) for y in D.states
                      if ups[i] >> bits.pos[(1, y)] & 1)
    result = Rel(C.states, D.states, pairs)
    if with_formulas:
        return result, by_depth
    return result


def _upset_formula(A, ups, atoms, n):
    """``⋁_{u ∈ A} ⋀ {atoms containing u}`` as a formula."""
    if A == 0:
        return BOT
    disjuncts = []
    covered = 0
    for i in range(n):
        if A >> i & 1 and not covered >> i & 1:
            disjuncts.append(conj(phi for mask, phi in atoms.items() if mask >> i & 1))
            covered |= ups[i]
    return disj(disjuncts)


# --------------------------------------------------------------------------
# weak simulation, shared traces, ioco

def _tau_reach(C, tau):
    reach = {}
    for x in C.states:
        seen = [x]
        for y in seen:
            for l, z in C(y):
                if l == tau and z not in seen:
                    seen.append(z)
        reach[x] = set(seen)
    return reach


def weak_sim_oracle(C: Coalgebra, D: Coalgebra, tau) -> Rel:
    """Greatest weak simulation: ``x -l-> x'`` is answered by ``y =l̂=> y'``,
    where ``τ̂`` is any ``τ*`` path and ``l̂`` is ``τ* l τ*``."""
    reach = _tau_reach(D, tau)
    weak = {}
    for y in D.states:
        for l in C.kind.labels:
            if l == tau:
                weak[(y, l)] = set(reach[y])
            else:
                out = set()
                for y1 in reach[y]:
                    for m, y2 in D(y1):
                        if m == l:
                            out |= reach[y2]
                weak[(y, l)] = out
    R = {(x, y) for x in C.states for y in D.states}
    changed = True
    while changed:
        changed = False
        for x, y in sorted(R, key=str):
            if not all(any((x2, y2) in R for y2 in weak[(y, l)]) for l, x2 in C(x)):
                R.discard((x, y))
                changed = True
    return Rel(C.states, D.states, frozenset(R))


def shared_trace_oracle(C: Coalgebra, D: Coalgebra) -> Rel:
    """Pairs with a common infinite trace: nodes of the synchronized product
    that survive repeated deletion of dead ends."""
    edges = {}
    for x in C.states:
        for y in D.states:
            edges[(x, y)] = {(x2, y2) for l, x2 in C(x) for m, y2 in D(y) if l == m}
    alive = set(edges)
    while True:
        dead = {n for n in alive if not (edges[n] & alive)}
        if not dead:
            break
        alive -= dead
    return Rel(C.states, D.states, frozenset(alive))


def ioco_oracle(spec: Coalgebra, impl: Coalgebra, root=None) -> bool | Rel:
    """Coinductive ioco check between a suspension automaton and an
    input-enabled one.

    Without ``root`` returns the greatest conformance relation; with
    ``root = (s, i)`` returns whether that pair conforms.
    """
    pairs = {(s, i) for s in spec.states for i in impl.states}

    def obligations(s, i):
        s_in, s_out = spec(s)
        i_in, i_out = impl(i)
        for k, s2 in s_in.items():
            yield (s2, i_in[k])
        for o, i2 in i_out.items():
            if o not in s_out:
                yield None
            else:
                yield (s_out[o], i2)

    good = set(pairs)
    changed = True
    while changed:
        changed = False
        for p in list(good):
            if any(q is None or q not in good for q in obligations(*p)):
                good.discard(p)
                changed = True
    if root is not None:
        return tuple(root) in good
    return Rel(spec.states, impl.states, frozenset(good))
