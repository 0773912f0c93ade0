"""Greatest simulations and bisimulations for a relational connector.

A relation ``r ⊆ C × D`` is an ``L``-simulation when ``γ(x) (L r) δ(y)``
for every ``(x, y) ∈ r``.  The greatest one is computed by Jacobi rounds
from the full relation: each round removes every pair that fails against the
relation as it stood at the start of the round.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

from .caps import DEFAULT_CAPS, Caps
from .connectors import (
    EPS, Connector, Kant, bind, connector_lift, kant_witness, weak_saturate, weak_tau,
)
from .errors import KindMismatch
from .functors import Coalgebra, count_terms, enumerate_terms, kind_str
from .relcore import FinSet, Rel, all_relations, full_rel, rel_converse


@dataclass(frozen=True)
class Removal:
    """One pair dropped from the candidate relation."""

    pair: tuple
    round: int
    clause: str = "forth"
    # Kantorovich witness: (λ, μ, argument subsets), if the top node is Kant
    witness: tuple | None = None

    def __str__(self):
        x, y = self.pair
        out = f"round {self.round}: ({x}, {y}) {self.clause}"
        if self.witness is not None:
            lam, mu, args = self.witness
            sets = ", ".join("{" + ", ".join(map(str, sorted(a, key=str))) + "}" for a in args)
            out += f" via ({lam}, {mu}) on [{sets}]"
        return out


@dataclass
class SimResult:
    relation: Rel
    removal_log: list = field(default_factory=list)
    rounds: int = 0
    connector: Connector | None = None
    left: Coalgebra | None = None
    right: Coalgebra | None = None

    def __contains__(self, pair):
        return pair in self.relation

    def log_text(self) -> str:
        return "".join(str(e) + "\n" for e in self.removal_log)


def prepare(L: Connector, C: Coalgebra, D: Coalgebra, caps: Caps = DEFAULT_CAPS):
    """Bind ``L`` to the systems' kinds, saturating ``D`` for weak connectors."""
    tau = weak_tau(L)
    if tau is not None and EPS not in D.kind.labels:
        D = weak_saturate(D, tau)
    if not L.bound:
        L = bind(L, C.kind, D.kind, caps)
    elif L.src != C.kind or L.dst != D.kind:
        raise KindMismatch(f"connector is bound to {kind_str(L.src)} -> {kind_str(L.dst)}, "
                           f"systems are {kind_str(C.kind)} and {kind_str(D.kind)}")
    return L, C, D


def _step_ok(L, r, C, D, x, y, caps):
    return connector_lift(L, r, C(x), D(y), caps)


def is_simulation(r: Rel, C: Coalgebra, D: Coalgebra, L: Connector, caps: Caps = DEFAULT_CAPS):
    """``None`` if ``r`` is an ``L``-simulation, else the first violating pair."""
    L, C, D = prepare(L, C, D, caps)
    for x, y in r:
        if not _step_ok(L, r, C, D, x, y, caps):
            return (x, y)
    return None


def _witness(L, r, C, D, x, y, caps):
    if isinstance(L, Kant):
        return kant_witness(L, r, C(x), D(y), caps)
    return None


def greatest_simulation(C: Coalgebra, D: Coalgebra, L: Connector,
                        caps: Caps = DEFAULT_CAPS) -> SimResult:
    L, C, D = prepare(L, C, D, caps)
    r = full_rel(C.states, D.states)
    log = []
    rounds = 0
    while True:
        rounds += 1
        bad = []
        for x, y in r:
            if isinstance(L, Kant):
                w = kant_witness(L, r, C(x), D(y), caps)
                if w is not None:
                    bad.append(Removal((x, y), rounds, "forth", w))
            elif not connector_lift(L, r, C(x), D(y), caps):
                bad.append(Removal((x, y), rounds, "forth"))
        if not bad:
            break
        log.extend(bad)
        dropped = {e.pair for e in bad}
        r = Rel(r.src, r.dst, r.pairs - dropped)
    return SimResult(r, log, rounds, L, C, D)


def greatest_bisimulation(C: Coalgebra, D: Coalgebra, L: Connector,
                          caps: Caps = DEFAULT_CAPS) -> SimResult:
    """Greatest ``r`` such that ``r`` and ``r°`` are both ``L``-simulations."""
    if C.kind != D.kind:
        raise KindMismatch(f"bisimulation needs one kind, got {kind_str(C.kind)} and {kind_str(D.kind)}")
    if not L.bound:
        L = bind(L, C.kind, C.kind, caps)
    r = full_rel(C.states, D.states)
    log = []
    rounds = 0
    while True:
        rounds += 1
        rc = rel_converse(r)
        bad = []
        for x, y in r:
            if not connector_lift(L, r, C(x), D(y), caps):
                bad.append(Removal((x, y), rounds, "forth", _witness(L, r, C, D, x, y, caps)))
            elif not connector_lift(L, rc, D(y), C(x), caps):
                bad.append(Removal((x, y), rounds, "back", _witness(L, rc, D, C, y, x, caps)))
        if not bad:
            break
        log.extend(bad)
        dropped = {e.pair for e in bad}
        r = Rel(r.src, r.dst, r.pairs - dropped)
    return SimResult(r, log, rounds, L, C, D)


def replay_log(result: SimResult, caps: Caps = DEFAULT_CAPS) -> bool:
    """Check that every logged removal fails against the relation of its round
    and that the final relation is what remains."""
    L, C, D = result.connector, result.left, result.right
    r = full_rel(C.states, D.states)
    by_round = {}
    for e in result.removal_log:
        by_round.setdefault(e.round, []).append(e)
    for k in sorted(by_round):
        for e in by_round[k]:
            x, y = e.pair
            if e.clause == "forth":
                ok = connector_lift(L, r, C(x), D(y), caps)
            else:
                ok = connector_lift(L, rel_converse(r), D(y), C(x), caps)
            if ok:
                return False
        r = Rel(r.src, r.dst, r.pairs - {e.pair for e in by_round[k]})
    return r == result.relation


def connector_leq_on(L: Connector, K: Connector, X: FinSet, Y: FinSet, src=None, dst=None,
                     budget: int = 200_000, seed: int = 0, caps: Caps = DEFAULT_CAPS):
    """Check ``L r ⊆ K r`` for relations ``r: X ⇸ Y``.

    Exhaustive over every relation and every pair of terms when the count fits
    ``budget``; otherwise ``budget`` seeded random samples.  Returns ``None``
    or a counterexample ``(r, a, b)``.
    """
    if not L.bound:
        L = bind(L, src, dst, caps)
    if not K.bound:
        K = bind(K, L.src, L.dst, caps)
    n_rel = 2 ** (len(X) * len(Y))
    n_a = count_terms(L.src, len(X))
    n_b = count_terms(L.dst, len(Y))
    if n_rel * n_a * n_b <= budget:
        left = list(enumerate_terms(L.src, X, cap=caps.terms))
        right = list(enumerate_terms(L.dst, Y, cap=caps.terms))
        for r in all_relations(X, Y):
            for a in left:
                for b in right:
                    if connector_lift(L, r, a, b, caps) and not connector_lift(K, r, a, b, caps):
                        return r, a, b
        return None
    rng = random.Random(seed)
    left = list(enumerate_terms(L.src, X, cap=caps.terms))
    right = list(enumerate_terms(L.dst, Y, cap=caps.terms))
    cells = list(itertools.product(X, Y))
    for _ in range(budget):
        r = Rel(X, Y, frozenset(c for c in cells if rng.random() < 0.5))
        a, b = rng.choice(left), rng.choice(right)
        if connector_lift(L, r, a, b, caps) and not connector_lift(K, r, a, b, caps):
            return r, a, b
    return None
