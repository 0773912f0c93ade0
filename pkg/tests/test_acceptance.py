"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Every expected value comes from an oracle in ``relconn.oracle`` or from a
second, independently written route; nothing is hard-coded.
"""

import io
import itertools
import random
import time
from fractions import Fraction

from relconn.cli import main as cli_main
from relconn.connectors import (
    EPS, IOCO, KR, LF, LR, LT, Comp, Conv, Id, Incl, Kant, Meet, Prod, PullLeft, PullRight,
    Relabel, RelabelConv, Weak, bind, connector_lift, converse, coupling_lift, egli_milner_lift,
)
from relconn.functors import (
    DET, DLTS, PLTS, SUSP, SUSPIE, enumerate_terms, fmap, support,
)
from relconn.ioformats import (
    parse_aut, parse_chc, parse_connector, parse_relation, serialize_aut, serialize_chc,
    serialize_connector, write_relation,
)
from relconn.liftings import (
    BigBox, BigDia, Box, Dia, LambdaRel, PGe, PosBool, SAnd, SApp, SOr, STop, SVar,
    lambda_compose, lambda_dual,
)
from relconn.logic import LEFT, RIGHT, SIMILAR, distinguishing_formula, eval_formula, extension
from relconn.oracle import (
    brute_barr, brute_compose, brute_lift, formula_enum_theory, ioco_oracle,
    shared_trace_oracle, weak_sim_oracle,
)
from relconn.randgen import (
    random_label_rel, random_map, random_rel, random_system, random_term, states,
)
from relconn.relcore import FinSet, Rel, all_relations, boxes, rel, rel_compose, rel_converse
from relconn.selftest import run_selftest
from relconn.simulation import connector_leq_on, greatest_bisimulation, greatest_simulation

AB = ("a", "b")
HALF = Fraction(1, 2)


def carriers(rng, hi):
    return states("x", rng.randint(1, hi)), states("y", rng.randint(1, hi))


def grow(rng, r):
    return Rel(r.src, r.dst, r.pairs | random_rel(rng, r.src, r.dst).pairs)


def pullback(r, f, g, X2, Y2):
    """``g° · r · f`` for maps ``f: X2 → X`` and ``g: Y2 → Y``."""
    return Rel(X2, Y2, frozenset((x, y) for x in X2 for y in Y2 if r.related(f[x], g[y])))


# --------------------------------------------------------------------------
# 1

def test_c01_egli_milner_equals_barr(criterion):
    t0 = time.perf_counter()
    checked = mismatches = 0
    for labels in (("a",), AB):
        kind = PLTS(labels)
        for n, m in itertools.product((1, 2, 3), repeat=2):
            X, Y = states("x", n), states("y", m)
            left, right = list(enumerate_terms(kind, X)), list(enumerate_terms(kind, Y))
            for r in all_relations(X, Y):
                barr = brute_barr(kind, r)
                em = {(a, b) for a in left for b in right if egli_milner_lift(r, a, b)}
                checked += 1
                mismatches += em != barr
    elapsed = time.perf_counter() - t0
    ok = mismatches == 0 and elapsed < 60
    criterion(1, "Egli-Milner equals the Barr extension", ok,
              f"{checked} relations, {mismatches} mismatches, {elapsed:.1f}s")
    assert ok


# --------------------------------------------------------------------------
# 2

P2, D2, T2 = PLTS(AB), DLTS(AB), PLTS(("t", "a"))
S1, SIE1 = SUSP(("i",), ("o", "p")), SUSPIE(("i",), ("o", "p"))


def catalog(rng):
    R = random_label_rel(rng, AB, AB)
    Q = random_label_rel(rng, AB, AB)
    return [
        ("id/plts", Id(), P2, P2), ("id/dlts", Id(), D2, D2), ("id/det", Id(), DET(AB), DET(AB)),
        ("id/susp", Id(), S1, S1),
        ("kr", KR(R), P2, P2), ("lr", LR(R), P2, P2), ("lf", LF(), P2, P2),
        ("lt", LT(), DET(AB), P2), ("ioco", IOCO(), S1, SIE1),
        ("weak", Weak("t"), T2, PLTS(("t", "a", EPS))),
        ("kant", Kant(LambdaRel([(Dia("a"), Dia("a")), (Box("b"), Box("b"))])), P2, P2),
        ("kant/prob", Kant(LambdaRel([(Dia("a"), PGe("a", HALF)), (Box("b"), PGe("b", 1))])),
         P2, D2),
        ("kant/big", Kant(LambdaRel([(BigBox(), BigDia())])), P2, P2),
        ("kant/pos", Kant(LambdaRel([(PosBool(SOr((SApp(Dia("a"), (SVar(0),)),
                                                   SApp(Box("b"), (SAnd((SVar(0), STop())),)))), 1),
                                      Dia("a"))])), P2, P2),
        ("comp/shared", Comp(LT(), Conv(LT())), P2, P2),
        ("comp/lqlr", Comp(LR(Q), LR(R)), P2, P2),
        ("comp/compat", Comp(Conv(IOCO()), IOCO()), S1, S1),
        ("comp/generic", Comp(LF(), KR(R), mid=P2), P2, P2),
        ("conv", Conv(LT()), P2, DET(AB)), ("meet", Meet(KR(R), LF()), P2, P2),
        ("prod", Prod(Kant(LambdaRel([(Dia("i"), Dia("i"))])), Id()), S1,
         SUSP(("i",), ("o", "p"))),
        ("pull-left", PullLeft(LF(), Incl()), DET(AB), P2),
        ("pull-right", PullRight(Relabel(R), LF()), P2, P2),
        ("pull-left/relabel", PullLeft(Id(), RelabelConv(R)), P2, P2),
    ]


def random_lambda(rng):
    pool = [(Dia("a"), Dia("a")), (Dia("b"), Dia("b")), (Box("a"), Box("a")),
            (Box("b"), Box("a")), (Dia("a"), Dia("b")), (BigBox(), BigDia()),
            (BigBox(), BigBox())]
    return LambdaRel(rng.sample(pool, rng.randint(1, 3)))


def random_expr(rng, depth=3):
    """A random connector PLTS(a,b) → PLTS(a,b)."""
    R = random_label_rel(rng, AB, AB)
    leaves = [lambda: Id(), lambda: KR(R), lambda: LR(R), lambda: LF(),
              lambda: Kant(random_lambda(rng)), lambda: Comp(LT(), Conv(LT())),
              lambda: Comp(LR(random_label_rel(rng, AB, AB)), LR(R))]
    if depth == 0 or rng.random() < 0.3:
        return rng.choice(leaves)()
    op = rng.choice(["conv", "meet", "comp", "pull-left", "pull-right"])
    if op == "conv":
        return Conv(random_expr(rng, depth - 1))
    if op == "meet":
        return Meet(random_expr(rng, depth - 1), random_expr(rng, depth - 1))
    if op == "comp":
        # generic composites only between leaves, to keep the middle search small
        return Comp(rng.choice(leaves)(), rng.choice(leaves)(), mid=P2)
    if op == "pull-left":
        return PullLeft(random_expr(rng, depth - 1), RelabelConv(R))
    return PullRight(Relabel(R), random_expr(rng, depth - 1))


def axioms_hold(rng, c, F, G, trials, hi=3):
    """Monotonicity and pointwise naturality on random instances."""
    for _ in range(trials):
        X, Y = carriers(rng, hi)
        r = random_rel(rng, X, Y)
        r2 = grow(rng, r)
        a, b = random_term(rng, F, X), random_term(rng, G, Y)
        if connector_lift(c, r, a, b) and not connector_lift(c, r2, a, b):
            return f"not monotone at {r} ⊆ {r2}"
        X2, Y2 = states("u", rng.randint(1, hi)), states("v", rng.randint(1, hi))
        f, g = random_map(rng, X2, X), random_map(rng, Y2, Y)
        a2, b2 = random_term(rng, F, X2), random_term(rng, G, Y2)
        if connector_lift(c, r, fmap(F, f, a2), fmap(G, g, b2)) != \
                connector_lift(c, pullback(r, f, g, X2, Y2), a2, b2):
            return f"not natural at {r}"
    return None


def test_c02_connector_axioms(criterion):
    t0 = time.perf_counter()
    rng = random.Random(2)
    problems = []
    for name, c, F, G in catalog(rng):
        msg = axioms_hold(rng, bind(c, F, G), F, G, 150)
        if msg:
            problems.append(f"{name}: {msg}")
    for i in range(200):
        e = random_expr(rng)
        msg = axioms_hold(rng, bind(e, P2, P2), P2, P2, 12)
        if msg:
            problems.append(f"{serialize_connector(e)}: {msg}")
    elapsed = time.perf_counter() - t0
    ok = not problems and elapsed < 120
    criterion(2, "monotonicity and naturality of connectors", ok,
              f"{len(catalog(rng))} catalog nodes, 200 compound expressions, "
              f"{len(problems)} failures, {elapsed:.1f}s")
    assert ok, problems[:3]


# --------------------------------------------------------------------------
# 3

P1, DET1 = PLTS(("a",)), DET(("a",))
R11 = rel(["a"], ["a"], [("a", "a")])


def small_connectors():
    """(name, connector, F, G) on one-label kinds."""
    return [
        ("kr", KR(R11), P1, P1), ("kr-empty", KR(rel(["a"], ["a"])), P1, P1),
        ("lr", LR(R11), P1, P1), ("lt", LT(), DET1, P1),
        ("kant-dia", Kant(LambdaRel([(Dia("a"), Dia("a"))])), P1, P1),
        ("kant-box", Kant(LambdaRel([(Box("a"), Box("a")), (Dia("a"), Dia("a"))])), P1, P1),
        ("kant-prob", Kant(LambdaRel([(Dia("a"), PGe("a", HALF))])), P1, DLTS(("a",))),
    ]


def every_instance(F, G, hi=2):
    for n, m in itertools.product(range(1, hi + 1), repeat=2):
        X, Y = states("x", n), states("y", m)
        left, right = list(enumerate_terms(F, X)), list(enumerate_terms(G, Y))
        for r in all_relations(X, Y):
            for a in left:
                for b in right:
                    yield r, a, b


def test_c03_identity_and_associativity(criterion):
    checked = bad = 0
    for name, c, F, G in small_connectors():
        L = bind(c, F, G)
        id_f, id_g = bind(Id(), F, F), bind(Id(), G, G)
        for r, a, b in every_instance(F, G):
            want = connector_lift(L, r, a, b)
            checked += 1
            if brute_compose(L, id_f, r, a, b) != want:
                bad += 1
            # a distribution middle has no finite search space; only L·1_F applies
            if not isinstance(G, DLTS) and brute_compose(id_g, L, r, a, b) != want:
                bad += 1
    rng = random.Random(3)
    kd = Kant(LambdaRel([(Dia("a"), Dia("a"))]))
    triples = [  # (L, K, M) with kinds F -M-> G1 -K-> G2 -L-> H
        (KR(R11), LT(), Conv(LT()), P1, DET1, P1, P1, 40),
        (Conv(LT()), LT(), Conv(LT()), P1, DET1, P1, DET1, 40),
        (kd, LT(), Conv(LT()), P1, DET1, P1, P1, 40),
        (LT(), Conv(LT()), LT(), DET1, P1, DET1, P1, 40),
        (LR(R11), LR(R11), LR(R11), P1, P1, P1, P1, 6),
        (kd, KR(R11), LF(), P1, P1, P1, P1, 6),
    ]
    for L, K, M, F, G1, G2, H, n in triples:
        L, K, M = bind(L, G2, H), bind(K, G1, G2), bind(M, F, G1)
        LK, KM = bind(Comp(L, K, mid=G2), G1, H), bind(Comp(K, M, mid=G1), F, G2)
        for _ in range(n):
            X, Z = carriers(rng, 2)
            r = random_rel(rng, X, Z)
            a, b = random_term(rng, F, X), random_term(rng, H, Z)
            checked += 1
            if brute_compose(LK, M, r, a, b) != brute_compose(L, KM, r, a, b):
                bad += 1
    ok = bad == 0
    criterion(3, "identity laws and associativity under search composition", ok,
              f"{checked} instances, {bad} disagreements")
    assert ok


# --------------------------------------------------------------------------
# 4

def test_c04_converse_algebra(criterion):
    checked = bad = 0
    pairs = [  # (L, K, F, G1, H): K: F → G1, L: G1 → H
        (KR(R11), LT(), DET1, P1, P1), (LT(), Conv(LT()), P1, DET1, P1),
        (Conv(LT()), KR(R11), P1, P1, DET1),
        (Kant(LambdaRel([(Dia("a"), Dia("a"))])), LR(R11), P1, P1, P1),
    ]
    for L, K, F, G1, H in pairs:
        L, K = bind(L, G1, H), bind(K, F, G1)
        Kc, Lc = bind(converse(K), G1, F), bind(converse(L), H, G1)
        whole = bind(Conv(Comp(L, K, mid=G1)), H, F)
        for r, c, a in every_instance(H, F):
            checked += 1
            if brute_lift(whole, r, c, a) != brute_compose(Kc, Lc, r, c, a):
                bad += 1
    for name, c, F, G in small_connectors() + [("ioco", IOCO(), S1, SIE1)]:
        L = bind(c, F, G)
        twice = bind(Conv(Conv(c)), F, G)
        if converse(converse(c)) != c:
            bad += 1
        rng = random.Random(4)
        for _ in range(100):
            X, Y = carriers(rng, 2)
            r = random_rel(rng, X, Y)
            a, b = random_term(rng, F, X), random_term(rng, G, Y)
            checked += 1
            if connector_lift(twice, r, a, b) != connector_lift(L, r, a, b):
                bad += 1
    ok = bad == 0
    criterion(4, "converse of composites and involution", ok,
              f"{checked} instances, {bad} disagreements")
    assert ok


# --------------------------------------------------------------------------
# 5

def test_c05_kantorovich_laws(criterion):
    rng = random.Random(5)
    # (Λ, Θ) pairs chosen so that the composite holds on a good share of instances
    families = [
        ([(Dia("a"), Dia("a")), (Dia("b"), Dia("b")), (Dia("b"), Dia("a"))],
         [(Dia("a"), PGe("a", HALF)), (Dia("b"), PGe("b", Fraction(1, 4)))]),
        ([(Dia("a"), Dia("a")), (Box("b"), Box("b"))],
         [(Dia("a"), PGe("a", HALF)), (Box("b"), Box("b"))]),
        ([(Dia("a"), Dia("a")), (Dia("b"), Dia("a"))],
         [(Dia("a"), PGe("a", HALF)), (Dia("a"), Dia("b"))]),
    ]
    checked = bad = hits = skipped = 0
    for lam_pairs, theta_pairs in families:
        lam, theta = LambdaRel(lam_pairs), LambdaRel(theta_pairs)
        L_lam, L_theta = bind(Kant(lam), P2, P2), bind(Kant(theta), P2, D2)
        L_comp = bind(Kant(lambda_compose(theta, lam)), P2, D2)
        n = 0
        while n < 100:
            X, Z = carriers(rng, 3)
            r = random_rel(rng, X, Z, 0.7)
            a, b = random_term(rng, P2, X, branching=2), random_term(rng, D2, Z)
            # the search factors through every box; past 8 it is exponential
            if len(boxes(r.restrict(support(P2, a), support(D2, b)))) > 8:
                skipped += 1
                continue
            n += 1
            checked += 1
            if brute_compose(L_theta, L_lam, r, a, b, bound=3):
                hits += 1
                bad += not connector_lift(L_comp, r, a, b)
    theta = LambdaRel([(Dia("a"), PGe("a", HALF)), (Box("b"), PGe("b", 1)),
                       (Dia("a"), Dia("b"))])
    conv_cases = [
        (theta, P2, D2),
        (LambdaRel([(Dia("a"), Dia("a")), (BigBox(), BigDia())]), P2, P2),
        (LambdaRel([(Box("a"), PGe("b", Fraction(1, 3)))]), P2, D2),
    ]
    for lr_, F, G in conv_cases:
        lhs = bind(Conv(Kant(lr_)), G, F)
        rhs = bind(Kant(lambda_dual(lr_).converse()), G, F)
        for n, m in itertools.product((1, 2), repeat=2):
            X, Y = states("x", n), states("y", m)
            left = list(enumerate_terms(G, X, denominator=4))
            right = list(enumerate_terms(F, Y))
            for r in all_relations(X, Y):
                for a in left:
                    for b in right:
                        checked += 1
                        bad += connector_lift(lhs, r, a, b) != connector_lift(rhs, r, a, b)
        for _ in range(200):
            X, Y = states("x", 3), states("y", 3)
            r = random_rel(rng, X, Y)
            a, b = random_term(rng, G, X), random_term(rng, F, Y)
            checked += 1
            bad += connector_lift(lhs, r, a, b) != connector_lift(rhs, r, a, b)
    ok = bad == 0
    criterion(5, "Kantorovich composite bound and converse law", ok,
              f"{checked} instances, {hits} composites hold, {skipped} resampled, "
              f"{bad} violations")
    assert ok


# --------------------------------------------------------------------------
# 6

def kq_kr_batch(rng, mid_labels, hi, n, report):
    A, M, C = PLTS(AB), PLTS(mid_labels), PLTS(("p", "q"))
    for _ in range(n):
        R = random_label_rel(rng, AB, mid_labels)
        Q = random_label_rel(rng, mid_labels, ("p", "q"))
        kr, kq = bind(KR(R), A, M), bind(KR(Q), M, C)
        kqr = bind(KR(rel_compose(Q, R)), A, C)
        X, Z = carriers(rng, hi)
        r = random_rel(rng, X, Z)
        a, b = random_term(rng, A, X, branching=2), random_term(rng, C, Z, branching=2)
        comp = brute_compose(kq, kr, r, a, b)
        closed = connector_lift(kqr, r, a, b)
        hyp = Q.is_left_total() and R.is_right_total()
        report["n"] += 1
        report["hyp"] += hyp
        if comp and not closed:
            report["le"].append((R, Q, r, a, b))
        if closed and not comp:
            report["ge_hyp" if hyp else "ge_nohyp"].append((R, Q, r, a, b))


def test_c06_closed_form_composites(criterion):
    rng = random.Random(6)
    # K_Q · K_R against K_{Q·R}, both directions
    kq = {"n": 0, "hyp": 0, "le": [], "ge_hyp": [], "ge_nohyp": []}
    kq_kr_batch(rng, ("m",), 3, 100, kq)
    kq_kr_batch(rng, ("m", "n"), 2, 40, kq)
    # L_Q · L_R closed form
    lq_bad = 0
    A, M, C = PLTS(AB), PLTS(("m", "n")), PLTS(("p", "q"))
    for _ in range(120):
        R = random_label_rel(rng, AB, ("m", "n"))
        Q = random_label_rel(rng, ("m", "n"), ("p", "q"))
        c = bind(Comp(LR(Q), LR(R)), A, C)
        X, Z = carriers(rng, 3)
        r = random_rel(rng, X, Z)
        a, b = random_term(rng, A, X, branching=2), random_term(rng, C, Z, branching=2)
        lq_bad += connector_lift(c, r, a, b) != brute_compose(c.outer, c.inner, r, a, b)
    # ioco compatibility and shared steps
    io_bad = lt_bad = 0
    compat = bind(Comp(Conv(IOCO()), IOCO()), S1, S1)
    shared = bind(Comp(LT(), Conv(LT())), P2, P2)
    for _ in range(120):
        X, Z = carriers(rng, 3)
        r = random_rel(rng, X, Z)
        a, b = random_term(rng, S1, X), random_term(rng, S1, Z)
        io_bad += connector_lift(compat, r, a, b) != brute_compose(compat.outer, compat.inner, r, a, b)
        a, b = random_term(rng, P2, X), random_term(rng, P2, Z)
        lt_bad += connector_lift(shared, r, a, b) != brute_compose(shared.outer, shared.inner, r, a, b)
    detail = (f"K_Q·K_R ≤ K_QR: {len(kq['le'])} violations; ≥ with totality hypotheses: "
              f"{len(kq['ge_hyp'])}, without: {len(kq['ge_nohyp'])} "
              f"({kq['n']} instances, {kq['hyp']} satisfy the hypotheses); "
              f"L_Q·L_R {lq_bad}, ioco compat {io_bad}, shared step {lt_bad} mismatches")
    if kq["ge_nohyp"]:
        print("K_Q·K_R ≥ K_QR fails without the hypotheses, first case:", kq["ge_nohyp"][0])
    ok = not (kq["le"] or kq["ge_hyp"]) and lq_bad == io_bad == lt_bad == 0
    criterion(6, "closed-form composites match search composition", ok, detail)
    assert ok


# --------------------------------------------------------------------------
# 7, 8, 9 share one batch of instances

FAMILIES = [
    ("dia", LambdaRel([(Dia(l), Dia(l)) for l in AB]), P2),
    ("dia+box", LambdaRel([(Dia(l), Dia(l)) for l in AB] + [(Box(l), Box(l)) for l in AB]), P2),
    ("dia→pge", LambdaRel([(Dia(l), PGe(l, HALF)) for l in AB]), D2),
]
_BATCH = {}


def expressiveness_batch():
    if not _BATCH:
        rng = random.Random(7)
        out = []
        t0 = time.perf_counter()
        for i in range(100):
            name, lam, right = FAMILIES[i % 3]
            C = random_system(rng, P2, rng.randint(1, 6), "s", branching=3)
            D = random_system(rng, right, rng.randint(1, 6), "t", branching=3)
            res = greatest_simulation(C, D, Kant(lam))
            theory = formula_enum_theory(C, D, lam)
            out.append((name, lam, C, D, res, theory))
        _BATCH["items"] = out
        _BATCH["elapsed"] = time.perf_counter() - t0
    return _BATCH["items"], _BATCH["elapsed"]


def test_c07_expressiveness(criterion):
    items, elapsed = expressiveness_batch()
    bad = sum(res.relation != theory for _, _, _, _, res, theory in items)
    ok = bad == 0 and elapsed < 300
    criterion(7, "similarity equals theory inclusion", ok,
              f"{len(items)} instances, {bad} mismatches, {elapsed:.1f}s")
    assert ok


def test_c08_distinguishing_formulas(criterion):
    items, _ = expressiveness_batch()
    total = good = 0
    for _, lam, C, D, res, _ in items:
        for x in C.states:
            for y in D.states:
                if (x, y) in res.relation:
                    continue
                total += 1
                phi = distinguishing_formula(C, D, lam, x, y, result=res)
                if phi != SIMILAR and eval_formula(phi, C, LEFT, x) \
                        and not eval_formula(phi, D, RIGHT, y):
                    good += 1
    ok = good == total
    criterion(8, "distinguishing formulas separate every dissimilar pair", ok,
              f"{good}/{total} verified")
    assert ok


def test_c09_adequacy(criterion):
    items, _ = expressiveness_batch()
    formulas = checks = bad = 0
    for _, lam, C, D, res, _ in items:
        _, by_depth = formula_enum_theory(C, D, lam, depth=3, with_formulas=True)
        for phis in by_depth.values():
            for phi in phis:
                formulas += 1
                ec, ed = extension(phi, C, LEFT), extension(phi, D, RIGHT)
                for x, y in res.relation:
                    checks += 1
                    bad += x in ec and y not in ed
    ok = bad == 0
    criterion(9, "formulas of depth ≤ 3 are preserved along similarity", ok,
              f"{formulas} formulas, {checks} checks, {bad} violations")
    assert ok


# --------------------------------------------------------------------------
# 10

def test_c10_transfer_of_bisimilarity(criterion):
    rng = random.Random(10)
    implications = bad = 0
    B = ("m", "n")
    for _ in range(100):
        R = random_label_rel(rng, AB, B, right_total=True)
        C = random_system(rng, P2, rng.randint(1, 4), "c", branching=3)
        D = random_system(rng, PLTS(B), rng.randint(1, 4), "d", branching=3)
        sim = greatest_simulation(C, D, LR(R)).relation
        bis_c = greatest_bisimulation(C, C, Id()).relation
        bis_d = greatest_bisimulation(D, D, Id()).relation
        for (c, d), (c2, d2) in itertools.product(sim, repeat=2):
            if (c, c2) in bis_c:
                implications += 1
                bad += (d, d2) not in bis_d
    # L_R · L_R˘ ≤ id, exhaustively over every relation and every term pair
    leq_cases = 0
    leq_bad = []
    for A_labels, B_labels, hi in ((AB, ("m",), 3), (("a",), ("m",), 3), (AB, B, 2)):
        for R in all_relations(FinSet(A_labels), FinSet(B_labels)):
            if not R.is_right_total():
                continue
            G = PLTS(B_labels)
            L = bind(Comp(LR(R), Conv(LR(R))), G, G)
            for n, m in itertools.product(range(1, hi + 1), repeat=2):
                leq_cases += 1
                cex = connector_leq_on(L, bind(Id(), G, G), states("x", n), states("y", m),
                                       budget=10 ** 6)
                if cex is not None:
                    leq_bad.append((R, cex))
    ok = bad == 0 and not leq_bad
    criterion(10, "bisimilarity transfers along right-total relabelling", ok,
              f"{implications} implications, {bad} failures; L_R·L_R˘ ≤ id on "
              f"{leq_cases} (R, carrier) cases, {len(leq_bad)} counterexamples")
    assert ok


# --------------------------------------------------------------------------
# 11, 12

def test_c11_shared_traces(criterion):
    rng = random.Random(11)
    bad = 0
    for _ in range(50):
        C = random_system(rng, P2, rng.randint(1, 8), "s", branching=2)
        D = random_system(rng, P2, rng.randint(1, 8), "t", branching=2)
        got = greatest_bisimulation(C, D, Comp(LT(), Conv(LT()))).relation
        bad += got != shared_trace_oracle(C, D)
    ok = bad == 0
    criterion(11, "shared-trace bisimilarity equals the product-graph oracle", ok,
              f"50 instances, {bad} mismatches")
    assert ok


def test_c12_weak_simulation(criterion):
    rng = random.Random(12)
    bad = 0
    labels = ("t", "a", "b")
    for _ in range(50):
        C = random_system(rng, PLTS(labels), rng.randint(1, 6), "s", branching=3)
        D = random_system(rng, PLTS(labels), rng.randint(1, 6), "u", branching=3)
        bad += greatest_simulation(C, D, Weak("t")).relation != weak_sim_oracle(C, D, "t")
    ok = bad == 0
    criterion(12, "weak similarity equals the direct weak-simulation oracle", ok,
              f"50 instances, {bad} mismatches")
    assert ok


# --------------------------------------------------------------------------
# 13

def test_c13_ioco(criterion, tmp_path):
    rng = random.Random(13)
    verdicts = bad = 0
    for k in range(50):
        spec = random_system(rng, S1, rng.randint(1, 4), "s")
        impl = random_system(rng, SIE1, rng.randint(1, 4), "t")
        sp, ip = tmp_path / f"spec{k}.chc", tmp_path / f"impl{k}.chc"
        sp.write_text(serialize_chc(spec))
        ip.write_text(serialize_chc(impl))
        s, t = rng.choice(spec.states.elements), rng.choice(impl.states.elements)
        code = cli_main(["ioco", "--spec", str(sp), "--impl", str(ip), "--pair", s, t],
                        out=io.StringIO())
        verdicts += 1
        bad += code != (0 if ioco_oracle(spec, impl, root=(s, t)) else 1)
    compat = bind(Comp(Conv(IOCO()), IOCO()), S1, S1)
    compat_cases = compat_bad = 0
    for n, m in itertools.product((1, 2), repeat=2):
        X, Y = states("x", n), states("y", m)
        left, right = list(enumerate_terms(S1, X)), list(enumerate_terms(S1, Y))
        for r in all_relations(X, Y):
            for a in left[::3]:
                for b in right[::3]:
                    compat_cases += 1
                    compat_bad += connector_lift(compat, r, a, b) != \
                        brute_compose(compat.outer, compat.inner, r, a, b)
    ok = bad == 0 and compat_bad == 0
    criterion(13, "ioco verdicts and compatibility composite", ok,
              f"{verdicts} CLI verdicts, {bad} wrong; {compat_cases} compatibility cases, "
              f"{compat_bad} mismatches")
    assert ok


# --------------------------------------------------------------------------
# 14

def test_c14_coupling_equals_barr(criterion):
    checked = bad = 0
    for labels in (("a",), AB):
        kind = DLTS(labels)
        for n, m in itertools.product((1, 2), repeat=2):
            X, Y = states("x", n), states("y", m)
            left = list(enumerate_terms(kind, X, denominator=4))
            right = list(enumerate_terms(kind, Y, denominator=4))
            for r in all_relations(X, Y):
                barr = brute_barr(kind, r, denominator=4)
                for a in left:
                    for b in right:
                        checked += 1
                        bad += coupling_lift(r, a, b) != ((a, b) in barr)
    ok = bad == 0
    criterion(14, "coupling lifting equals exhaustive coupling search", ok,
              f"{checked} term pairs, {bad} mismatches")
    assert ok


# --------------------------------------------------------------------------
# 15

def test_c15_formats_and_determinism(criterion, tmp_path):
    rng = random.Random(15)
    problems = []
    kinds = [P2, D2, DET(AB), S1, SIE1]
    for _ in range(100):
        kind = rng.choice(kinds)
        C = random_system(rng, kind, rng.randint(1, 6))
        text = serialize_chc(C)
        if parse_chc(text) != C or serialize_chc(parse_chc(text)) != text:
            problems.append("chc")
        if kind == P2 and parse_aut(serialize_aut(C), labels=AB) != \
                parse_aut(serialize_aut(parse_aut(serialize_aut(C), labels=AB)), labels=AB):
            problems.append("aut")
        r = random_rel(rng, C.states, C.states)
        if parse_relation(write_relation(r), C.states, C.states) != r:
            problems.append("relation")
    for _ in range(50):
        e = random_expr(rng)
        if parse_connector(serialize_connector(e)) != e:
            problems.append(f"connector {serialize_connector(e)}")
    # a 100-state Aldebaran file
    lines = [f'({rng.randrange(100)},"l{rng.randrange(5)}",{rng.randrange(100)})'
             for _ in range(500)]
    aut = "des (0,500,100)\n" + "\n".join(lines) + "\n"
    t0 = time.perf_counter()
    big = parse_aut(aut)
    ingest = time.perf_counter() - t0
    if len(big.states) != 100 or ingest >= 1.0:
        problems.append(f"aut ingest {ingest:.2f}s")
    # byte-identical reruns
    left, right = tmp_path / "l.chc", tmp_path / "r.chc"
    conn = tmp_path / "c.sexp"
    left.write_text(serialize_chc(random_system(random.Random(1), P2, 6, "s")))
    right.write_text(serialize_chc(random_system(random.Random(2), P2, 6, "t")))
    conn.write_text("(kant ((dia a) (dia a)) ((box b) (box b)))")
    outs = []
    for _ in range(2):
        buf = io.StringIO()
        cli_main(["gsim", "--left", str(left), "--right", str(right), "--connector", str(conn)],
                 out=buf)
        st = io.StringIO()
        run_selftest(seed=9, cases=5, max_states=3, out=st)
        outs.append((buf.getvalue(), st.getvalue()))
    if outs[0] != outs[1]:
        problems.append("non-deterministic output")
    ok = not problems
    criterion(15, "format round trips, fast .aut ingest, deterministic reruns", ok,
              f"aut ingest {ingest * 1000:.0f}ms, {len(problems)} problems")
    assert ok, problems[:5]
