"""Positive modal formulas over a relation ``Λ`` of lifting pairs.

A formula ``<λ,μ>(φ1, ..., φn)`` is read with ``λ`` on the left system and
with ``μ`` on the right system, so one formula speaks about both sides of a
Kantorovich simulation.  Surface syntax::

    T | F | (φ & ψ) | (φ | ψ) | <lift, lift>φ | <lift, lift>(φ1, ..., φn)
"""

from __future__ import annotations

import re

from .caps import DEFAULT_CAPS, Caps
from .connectors import Kant
from .errors import KindMismatch, ParseError, VerificationError
from .functors import Coalgebra, support
from .liftings import LambdaRel, _Cursor, arity, eval_lifting, parse_lifting_at

LEFT = "left"
RIGHT = "right"
SIMILAR = "similar"


class Formula:
    __slots__ = ("_hash",)

    def __eq__(self, other):
        return type(self) is type(other) and self._key() == other._key()

    def __hash__(self):
        return self._hash


class Top(Formula):
    __slots__ = ()

    def __init__(self):
        self._hash = hash("T")

    def _key(self):
        return ()

    def __str__(self):
        return "T"

    __repr__ = __str__


class Bot(Formula):
    __slots__ = ()

    def __init__(self):
        self._hash = hash("F")

    def _key(self):
        return ()

    def __str__(self):
        return "F"

    __repr__ = __str__


class And(Formula):
    __slots__ = ("left", "right")

    def __init__(self, left, right):
        self.left, self.right = left, right
        self._hash = hash(("&", left, right))

    def _key(self):
        return (self.left, self.right)

    def __str__(self):
        return f"({self.left} & {self.right})"

    __repr__ = __str__


class Or(Formula):
    __slots__ = ("left", "right")

    def __init__(self, left, right):
        self.left, self.right = left, right
        self._hash = hash(("|", left, right))

    def _key(self):
        return (self.left, self.right)

    def __str__(self):
        return f"({self.left} | {self.right})"

    __repr__ = __str__


class Mod(Formula):
    __slots__ = ("lam", "mu", "args")

    def __init__(self, lam, mu, args=()):
        self.lam, self.mu, self.args = lam, mu, tuple(args)
        self._hash = hash(("<>", lam, mu, self.args))

    def _key(self):
        return (self.lam, self.mu, self.args)

    @property
    def pair(self):
        return (self.lam, self.mu)

    def __str__(self):
        head = f"<{self.lam},{self.mu}>"
        if len(self.args) == 1:
            return head + str(self.args[0])
        return head + "(" + ", ".join(map(str, self.args)) + ")"

    __repr__ = __str__


TOP = Top()
BOT = Bot()


def conj(items) -> Formula:
    """Right-nested conjunction with ``T`` units dropped."""
    items = [f for f in items if not isinstance(f, Top)]
    if not items:
        return TOP
    if any(isinstance(f, Bot) for f in items):
        return BOT
    out = items[-1]
    for f in reversed(items[:-1]):
        out = And(f, out)
    return out


def disj(items) -> Formula:
    items = [f for f in items if not isinstance(f, Bot)]
    if not items:
        return BOT
    if any(isinstance(f, Top) for f in items):
        return TOP
    out = items[-1]
    for f in reversed(items[:-1]):
        out = Or(f, out)
    return out


def depth(phi: Formula) -> int:
    if isinstance(phi, (And, Or)):
        return max(depth(phi.left), depth(phi.right))
    if isinstance(phi, Mod):
        return 1 + max((depth(a) for a in phi.args), default=0)
    return 0


# --------------------------------------------------------------------------
# parsing

_PUNCT = re.compile(r"\s*(?:(?P<p>[<>&|(),])|(?P<w>[TF])(?![A-Za-z0-9_]))")


class _FormulaParser:
    def __init__(self, text, lam_rel, left_kind, right_kind):
        self.text = text
        self.pos = 0
        self.lam_rel = lam_rel
        self.kinds = (left_kind, right_kind)

    def _peek(self):
        m = _PUNCT.match(self.text, self.pos)
        return (m.group("p") or m.group("w")) if m else None

    def _next(self):
        m = _PUNCT.match(self.text, self.pos)
        if not m:
            raise ParseError(f"unexpected text {self.text[self.pos:self.pos + 12]!r}", pos=self.pos)
        self.pos = m.end()
        return m.group("p") or m.group("w")

    def _expect(self, tok):
        start = self.pos
        got = self._next()
        if got != tok:
            raise ParseError(f"expected {tok!r}, got {got!r}", pos=start)

    def _lifting(self):
        cur = _Cursor(self.text, self.pos)
        lam = parse_lifting_at(cur)
        self.pos = cur.pos
        return lam

    def formula(self):
        start = self.pos
        tok = self._next()
        if tok == "T":
            return TOP
        if tok == "F":
            return BOT
        if tok == "(":
            left = self.formula()
            op = self._next()
            if op not in ("&", "|"):
                raise ParseError(f"expected '&' or '|', got {op!r}", pos=self.pos)
            right = self.formula()
            self._expect(")")
            return And(left, right) if op == "&" else Or(left, right)
        if tok == "<":
            lam = self._lifting()
            self._expect(",")
            mu = self._lifting()
            self._expect(">")
            args = self._args()
            return self._resolve(lam, mu, args, start)
        raise ParseError(f"unexpected {tok!r}", pos=start)

    def _args(self):
        if self._peek() != "(":
            return [self.formula()]
        # either an argument list or a parenthesised binary formula
        save = self.pos
        self._next()
        if self._peek() == ")":
            self._next()
            return []
        first = self.formula()
        tok = self._peek()
        if tok in ("&", "|"):
            self.pos = save
            return [self.formula()]
        args = [first]
        while tok == ",":
            self._next()
            args.append(self.formula())
            tok = self._peek()
        self._expect(")")
        return args

    def _resolve(self, lam, mu, args, start):
        if self.lam_rel is not None and (lam, mu) not in self.lam_rel:
            raise ParseError(f"pair ({lam}, {mu}) not in Λ", pos=start)
        left_kind = self.kinds[0]
        if left_kind is not None:
            n = arity(lam, left_kind)
            if n != len(args):
                raise ParseError(f"<{lam},{mu}> takes {n} arguments, got {len(args)}", pos=start)
        return Mod(lam, mu, args)


def parse_formula(text: str, lam_rel: LambdaRel | None = None,
                  left_kind=None, right_kind=None) -> Formula:
    """Parse the surface grammar, resolving modal pairs against ``lam_rel``."""
    p = _FormulaParser(text, lam_rel, left_kind, right_kind)
    phi = p.formula()
    if text[p.pos:].strip():
        raise ParseError(f"trailing text {text[p.pos:p.pos + 12]!r}", pos=p.pos)
    return phi


# --------------------------------------------------------------------------
# model checking

def extension(phi: Formula, M: Coalgebra, side: str, memo: dict | None = None) -> frozenset:
    """``⟦φ⟧`` in ``M``, reading modal pairs on the given side."""
    if side not in (LEFT, RIGHT):
        raise ValueError(f"side must be {LEFT!r} or {RIGHT!r}")
    memo = {} if memo is None else memo
    return _ext(phi, M, side, memo)


def _ext(phi, M, side, memo):
    hit = memo.get(id(phi))
    if hit is not None:
        return hit[1]
    if isinstance(phi, Top):
        out = M.states.as_set
    elif isinstance(phi, Bot):
        out = frozenset()
    elif isinstance(phi, And):
        out = _ext(phi.left, M, side, memo) & _ext(phi.right, M, side, memo)
    elif isinstance(phi, Or):
        out = _ext(phi.left, M, side, memo) | _ext(phi.right, M, side, memo)
    elif isinstance(phi, Mod):
        lift = phi.lam if side == LEFT else phi.mu
        if arity(lift, M.kind) != len(phi.args):
            raise KindMismatch(f"{lift} has arity {arity(lift, M.kind)} on {M.kind}")
        args = [_ext(a, M, side, memo) for a in phi.args]
        out = frozenset(x for x in M.states if eval_lifting(lift, M.kind, args, M(x)))
    else:
        raise TypeError(f"not a formula: {phi!r}")
    # keep phi alive so its id stays unique for the lifetime of the memo
    memo[id(phi)] = (phi, out)
    return out


def eval_formula(phi: Formula, M: Coalgebra, side: str, x) -> bool:
    return x in extension(phi, M, side)


# --------------------------------------------------------------------------
# distinguishing formulas

def distinguishing_formula(C: Coalgebra, D: Coalgebra, lam_rel: LambdaRel, x, y,
                           caps: Caps = DEFAULT_CAPS, result=None):
    """A formula true at ``x`` in ``C`` and false at ``y`` in ``D``, or
    :data:`SIMILAR` when ``y`` simulates ``x``.

    Built from the removal log of the greatest simulation: the pair ``(x, y)``
    was dropped in some round because of a witness ``(λ, μ, A⃗)``; each ``A_i``
    becomes ``⋁_{x'∈A_i} ⋀ φ(x', y')`` over the successors ``y'`` of ``y``
    that were no longer related to ``x'`` in that round.
    """
    from .simulation import greatest_simulation

    if result is None:
        result = greatest_simulation(C, D, Kant(lam_rel), caps)
    if (x, y) in result.relation:
        return SIMILAR
    C, D = result.left, result.right
    removed = {e.pair: e for e in result.removal_log}
    memo = {}

    def related_at(k, x1, y1):
        e = removed.get((x1, y1))
        return e is None or e.round >= k

    def build(x1, y1):
        if (x1, y1) in memo:
            return memo[(x1, y1)]
        e = removed[(x1, y1)]
        lam, mu, args = e.witness
        succ = D.states.sort(support(D.kind, D(y1)))
        parts = []
        for A in args:
            disjuncts = []
            for x2 in C.states.sort(A):
                disjuncts.append(conj(build(x2, y2) for y2 in succ
                                      if not related_at(e.round, x2, y2)))
            parts.append(disj(disjuncts))
        phi = Mod(lam, mu, parts)
        memo[(x1, y1)] = phi
        return phi

    phi = build(x, y)
    if not eval_formula(phi, C, LEFT, x) or eval_formula(phi, D, RIGHT, y):
        raise VerificationError(f"synthesized formula {phi} does not separate {x} from {y}")
    return phi
