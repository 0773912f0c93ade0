"""A seeded battery of algebraic laws, run by ``relconn selftest``.

Each law group draws its own instances from a generator seeded by
``(seed, group name)``, so groups are independent of each other and the
report is identical for identical arguments.
"""

from __future__ import annotations

import random
import zlib
from fractions import Fraction

from .connectors import (
    IOCO, KR, LF, LR, LT, Comp, Conv, Id, Incl, Kant, Meet, PullLeft, Relabel, RelabelConv,
    Weak, bind, connector_lift, coupling_lift, egli_milner_lift,
)
from .functors import DET, DLTS, PLTS, SUSP, SUSPIE, enumerate_terms, fmap, support
from .ioformats import (
    parse_aut, parse_chc, parse_connector, parse_relation, serialize_aut, serialize_chc,
    serialize_connector, write_relation,
)
from .liftings import Box, Dia, LambdaRel, PGe, dual_lifting, eval_lifting, lambda_dual
from .logic import distinguishing_formula
from .oracle import (
    brute_barr, brute_compose, formula_enum_theory, ioco_oracle, shared_trace_oracle,
    weak_sim_oracle,
)
from .randgen import (
    random_label_rel, random_map, random_rel, random_system, random_term, states,
)
from .relcore import all_relations, rel_compose, rel_converse
from .simulation import greatest_bisimulation, greatest_simulation, is_simulation

LABELS = ("a", "b")


def _rng(seed, name):
    return random.Random(seed * 1_000_003 + zlib.crc32(name.encode()))


def _carriers(rng, max_states, limit=3):
    hi = max(1, min(max_states, limit))
    return states("x", rng.randint(1, hi)), states("y", rng.randint(1, hi))


class LawFailure(Exception):
    pass


def _check(cond, what):
    if not cond:
        raise LawFailure(what)


# --------------------------------------------------------------------------
# law groups; each takes (rng, cases, max_states) and raises LawFailure

def law_relcore(rng, cases, k):
    for _ in range(cases):
        X, Y = _carriers(rng, k)
        Z = states("z", rng.randint(1, max(1, min(k, 3))))
        r, s = random_rel(rng, X, Y), random_rel(rng, Y, Z)
        t = random_rel(rng, Z, X)
        _check(rel_compose(t, rel_compose(s, r)) == rel_compose(rel_compose(t, s), r),
               f"associativity fails for {r}, {s}, {t}")
        _check(rel_converse(rel_compose(s, r)) == rel_compose(rel_converse(r), rel_converse(s)),
               f"converse of a composite fails for {r}, {s}")


def law_functor(rng, cases, k):
    kinds = [PLTS(LABELS), DLTS(LABELS), DET(LABELS), SUSP(("i",), ("o",))]
    for _ in range(cases):
        kind = rng.choice(kinds)
        X, Y = _carriers(rng, k)
        Z = states("z", rng.randint(1, max(1, min(k, 3))))
        f, g = random_map(rng, X, Y), random_map(rng, Y, Z)
        t = random_term(rng, kind, X)
        gf = {x: g[f[x]] for x in X}
        _check(fmap(kind, gf, t) == fmap(kind, g, fmap(kind, f, t)), f"fmap composition on {t}")
        _check(fmap(kind, {x: x for x in X}, t) == t, f"fmap identity on {t}")
        _check(support(kind, fmap(kind, f, t)) == {f[x] for x in support(kind, t)},
               f"support naturality on {t}")


def law_nat_trans(rng, cases, k):
    for _ in range(cases):
        X, Y = _carriers(rng, k)
        f = random_map(rng, X, Y)
        R = random_label_rel(rng, LABELS, ("m", "n"))
        for nat, src in ((RelabelConv(R), PLTS(LABELS)), (Relabel(R), PLTS(("m", "n"))),
                         (Incl(), DET(LABELS))):
            t = random_term(rng, src, X)
            dst = nat.dst_kind(src)
            _check(nat.apply(src, fmap(src, f, t)) == fmap(dst, f, nat.apply(src, t)),
                   f"{type(nat).__name__} is not natural on {t}")


def law_liftings(rng, cases, k):
    kinds = [(PLTS(LABELS), [Dia("a"), Box("b")]),
             (DLTS(LABELS), [PGe("a", Fraction(1, 2)), Dia("b")])]
    for _ in range(cases):
        kind, lams = rng.choice(kinds)
        lam = rng.choice(lams)
        X, _ = _carriers(rng, k)
        t = random_term(rng, kind, X)
        A = frozenset(x for x in X if rng.random() < 0.5)
        B = A | frozenset(x for x in X if rng.random() < 0.5)
        _check(not eval_lifting(lam, kind, [A], t) or eval_lifting(lam, kind, [B], t),
               f"{lam} is not monotone at {t}")
        comp = frozenset(X) - A
        dual = dual_lifting(lam)
        _check(eval_lifting(dual, kind, [A], t) == (not eval_lifting(lam, kind, [comp], t)),
               f"dual of {lam} is not the complement conjugate at {t}")
        _check(dual_lifting(dual) == lam, f"dual of {lam} is not an involution")


def law_egli_milner_barr(rng, cases, k):
    kind = PLTS(("a",))
    for _ in range(max(1, cases // 4)):
        X, Y = _carriers(rng, k, 2)
        r = random_rel(rng, X, Y)
        barr = brute_barr(kind, r)
        for a in enumerate_terms(kind, X):
            for b in enumerate_terms(kind, Y):
                _check(egli_milner_lift(r, a, b) == ((a, b) in barr),
                       f"Egli-Milner differs from Barr at {r}, {a}, {b}")


def law_coupling_barr(rng, cases, k):
    kind = DLTS(("a",))
    for _ in range(max(1, cases // 4)):
        X, Y = _carriers(rng, k, 2)
        r = random_rel(rng, X, Y)
        barr = brute_barr(kind, r, denominator=4)
        for a in enumerate_terms(kind, X, denominator=4):
            for b in enumerate_terms(kind, Y, denominator=4):
                _check(coupling_lift(r, a, b) == ((a, b) in barr),
                       f"coupling differs from Barr at {r}, {a}, {b}")


def _catalog(R):
    A = PLTS(LABELS)
    return [
        (Id(), A, A),
        (KR(R), A, A),
        (LR(R), A, A),
        (LF(), A, A),
        (LT(), DET(LABELS), A),
        (Kant(LambdaRel([(Dia("a"), Dia("a")), (Box("b"), Box("b"))])), A, A),
        (Kant(LambdaRel([(Dia("a"), PGe("a", Fraction(1, 2)))])), A, DLTS(LABELS)),
        (Comp(LT(), Conv(LT())), A, A),
    ]


def law_monotone(rng, cases, k):
    for _ in range(cases):
        R = random_label_rel(rng, LABELS, LABELS)
        c, F, G = rng.choice(_catalog(R))
        c = bind(c, F, G)
        X, Y = _carriers(rng, k)
        r = random_rel(rng, X, Y)
        r2 = r.__class__(X, Y, r.pairs | random_rel(rng, X, Y).pairs)
        a, b = random_term(rng, F, X), random_term(rng, G, Y)
        _check(not connector_lift(c, r, a, b) or connector_lift(c, r2, a, b),
               f"{c} is not monotone at {r} ⊆ {r2}")


def law_natural(rng, cases, k):
    for _ in range(cases):
        R = random_label_rel(rng, LABELS, LABELS)
        c, F, G = rng.choice(_catalog(R))
        c = bind(c, F, G)
        X, Y = _carriers(rng, k)
        X2, Y2 = states("u", rng.randint(1, 3)), states("v", rng.randint(1, 3))
        f, g = random_map(rng, X2, X), random_map(rng, Y2, Y)
        r = random_rel(rng, X, Y)
        a, b = random_term(rng, F, X2), random_term(rng, G, Y2)
        pulled = r.__class__(X2, Y2, frozenset((x, y) for x in X2 for y in Y2
                                              if r.related(f[x], g[y])))
        _check(connector_lift(c, r, fmap(F, f, a), fmap(G, g, b)) == connector_lift(c, pulled, a, b),
               f"{c} is not natural at {r}")


def law_converse(rng, cases, k):
    A, Dk = PLTS(LABELS), DLTS(LABELS)
    lam = LambdaRel([(Dia("a"), PGe("a", Fraction(1, 2))), (Box("b"), PGe("b", Fraction(1)))])
    c = bind(Conv(Kant(lam)), Dk, A)
    d = bind(Kant(lambda_dual(lam).converse()), Dk, A)
    for _ in range(cases):
        X, Y = _carriers(rng, k)
        r = random_rel(rng, X, Y)
        a, b = random_term(rng, Dk, X), random_term(rng, A, Y)
        _check(connector_lift(c, r, a, b) == connector_lift(d, r, a, b),
               f"Kantorovich converse law fails at {r}, {a}, {b}")


def law_lr_factorized(rng, cases, k):
    A = PLTS(LABELS)
    for _ in range(cases):
        R = random_label_rel(rng, LABELS, LABELS)
        c = bind(LR(R), A, A)
        d = bind(Meet(KR(R), Conv(KR(rel_converse(R)))), A, A)
        X, Y = _carriers(rng, k)
        r = random_rel(rng, X, Y)
        a, b = random_term(rng, A, X), random_term(rng, A, Y)
        _check(connector_lift(c, r, a, b) == connector_lift(d, r, a, b),
               f"L_R differs from K_R ∩ K̆_R° at {R}, {r}")


def law_closed_forms(rng, cases, k):
    A, Mid, Cc = PLTS(LABELS), PLTS(("m",)), PLTS(("p", "q"))
    S = SUSP(("i",), ("o", "p"))
    for _ in range(cases):
        X, Y = _carriers(rng, k, 2)
        r = random_rel(rng, X, Y)
        R, Q = random_label_rel(rng, LABELS, ("m",)), random_label_rel(rng, ("m",), ("p", "q"))
        for c, F, G in ((Comp(LR(Q), LR(R)), A, Cc), (Comp(LT(), Conv(LT())), A, A),
                        (Comp(Conv(IOCO()), IOCO()), S, S)):
            c = bind(c, F, G)
            a, b = random_term(rng, F, X), random_term(rng, G, Y)
            _check(connector_lift(c, r, a, b) == brute_compose(c.outer, c.inner, r, a, b),
                   f"closed form for {serialize_connector(c)} differs from search at {r}, {a}, {b}")


def law_gsim_maximal(rng, cases, k):
    lam = LambdaRel([(Dia(l), Dia(l)) for l in LABELS])
    for _ in range(max(1, cases // 2)):
        C = random_system(rng, PLTS(LABELS), rng.randint(1, max(1, min(k, 2))), "s")
        D = random_system(rng, PLTS(LABELS), rng.randint(1, max(1, min(k, 2))), "t")
        L = Kant(lam)
        g = greatest_simulation(C, D, L).relation
        _check(is_simulation(g, C, D, L) is None, "greatest simulation is not a simulation")
        for r in all_relations(C.states, D.states):
            if is_simulation(r, C, D, L) is None:
                _check(r.issubset(g), f"simulation {r} not below the computed one {g}")


def law_expressive(rng, cases, k):
    fams = [LambdaRel([(Dia(l), Dia(l)) for l in LABELS]),
            LambdaRel([(Dia(l), Dia(l)) for l in LABELS] + [(Box(l), Box(l)) for l in LABELS]),
            LambdaRel([(Dia(l), PGe(l, Fraction(1, 2))) for l in LABELS])]
    for i in range(cases):
        lam = fams[i % 3]
        C = random_system(rng, PLTS(LABELS), rng.randint(1, max(1, min(k, 5))), "s")
        D = random_system(rng, DLTS(LABELS) if i % 3 == 2 else PLTS(LABELS),
                          rng.randint(1, max(1, min(k, 5))), "t")
        res = greatest_simulation(C, D, Kant(lam))
        _check(res.relation == formula_enum_theory(C, D, lam),
               "similarity differs from theory inclusion")
        for x in C.states:
            for y in D.states:
                if (x, y) not in res.relation:
                    distinguishing_formula(C, D, lam, x, y, result=res)


def law_weak(rng, cases, k):
    labels = ("t", "a", "b")
    for _ in range(cases):
        C = random_system(rng, PLTS(labels), rng.randint(1, max(1, min(k, 5))), "s", branching=2)
        D = random_system(rng, PLTS(labels), rng.randint(1, max(1, min(k, 5))), "u", branching=2)
        _check(greatest_simulation(C, D, Weak("t")).relation == weak_sim_oracle(C, D, "t"),
               "weak similarity differs from the direct fixpoint")


def law_shared_trace(rng, cases, k):
    for _ in range(cases):
        C = random_system(rng, PLTS(LABELS), rng.randint(1, max(1, min(k, 6))), "s", branching=2)
        D = random_system(rng, PLTS(LABELS), rng.randint(1, max(1, min(k, 6))), "t", branching=2)
        got = greatest_bisimulation(C, D, Comp(LT(), Conv(LT()))).relation
        _check(got == shared_trace_oracle(C, D), "shared-trace bisimilarity differs from the product graph")


def law_ioco(rng, cases, k):
    for _ in range(cases):
        spec = random_system(rng, SUSP(("i",), ("o", "p")), rng.randint(1, max(1, min(k, 4))), "s")
        impl = random_system(rng, SUSPIE(("i",), ("o", "p")), rng.randint(1, max(1, min(k, 4))), "t")
        _check(greatest_simulation(spec, impl, IOCO()).relation == ioco_oracle(spec, impl),
               "ioco similarity differs from the coinductive check")


def law_formats(rng, cases, k):
    kinds = [PLTS(LABELS), DLTS(LABELS), DET(LABELS), SUSP(("i",), ("o",)), SUSPIE(("i",), ("o",))]
    for _ in range(cases):
        kind = rng.choice(kinds)
        C = random_system(rng, kind, rng.randint(1, max(1, min(k, 5))))
        _check(parse_chc(serialize_chc(C)) == C, f"native format round trip fails for {C}")
        if isinstance(kind, PLTS):
            _check(parse_aut(serialize_aut(C), labels=kind.labels) == C, "aut round trip fails")
        r = random_rel(rng, C.states, C.states)
        _check(parse_relation(write_relation(r), C.states, C.states) == r, "relation round trip fails")
    for text in ("(comp (lr (rel (b c))) (lr (rel (a b))))",
                 "(kant ((dia a) (pge a 1/3)) ((pos (app (box a) (and _0 top))) (box a)))",
                 "(pull-left (lf) (incl))", "(conv (meet (id) (weak t)))"):
        c = parse_connector(text)
        _check(parse_connector(serialize_connector(c)) == c, f"connector round trip fails for {text}")


LAW_GROUPS = [
    ("relation algebra", law_relcore),
    ("functor laws", law_functor),
    ("natural transformations", law_nat_trans),
    ("lifting monotonicity and duality", law_liftings),
    ("Egli-Milner equals Barr", law_egli_milner_barr),
    ("coupling equals Barr", law_coupling_barr),
    ("connector monotonicity", law_monotone),
    ("connector naturality", law_natural),
    ("Kantorovich converse", law_converse),
    ("factorized L_R", law_lr_factorized),
    ("closed-form composites", law_closed_forms),
    ("greatest simulation is greatest", law_gsim_maximal),
    ("expressiveness and distinguishing formulas", law_expressive),
    ("weak simulation", law_weak),
    ("shared traces", law_shared_trace),
    ("ioco", law_ioco),
    ("format round trips", law_formats),
]


def run_selftest(seed: int = 0, cases: int = 20, max_states: int = 4, out=None) -> bool:
    """Run every law group; print one line per group; return overall success."""
    import sys

    out = out or sys.stdout
    print(f"selftest seed={seed} cases={cases} max-states={max_states}", file=out)
    ok = True
    for name, fn in LAW_GROUPS:
        try:
            fn(_rng(seed, name), cases, max_states)
            print(f"PASS  {name}", file=out)
        except LawFailure as e:
            ok = False
            print(f"FAIL  {name}: {e}", file=out)
    print(f"{len(LAW_GROUPS)} law groups, {'all passed' if ok else 'failures above'}", file=out)
    return ok
