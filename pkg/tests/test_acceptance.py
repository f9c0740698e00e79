"""Acceptance criteria 1-10.

Each test records one PASS/FAIL line (shown in the terminal summary and with
``pytest -s``) and then asserts the criterion as stated.  Everything is exact.
"""

import time
from functools import lru_cache

import pytest

from cohocoring import algebroid as ab
from cohocoring import coring as cr
from cohocoring import cyclic as cy
from cohocoring import gallery
from cohocoring import homology as hm
from cohocoring.algebra import unit_map
from cohocoring.errors import (HaarViolation, HomotopyViolation, HypothesisViolation, IsoViolation,
                               WellDefinednessViolation)
from cohocoring.linalg import QQ, Matrix, rank

N = 4


def builders(name):
    """(label, thunk) for every cocyclic or cyclic builder that accepts the gallery object."""
    kind = gallery.kind_of(name)
    obj = gallery.get(name)
    if kind == "algebra":
        return [("algebra", lambda: cy.algebra_cyclic(obj, N))]
    if kind == "coalgebra":
        return [("coalgebra", lambda: cy.coalgebra_cocyclic(obj, N)), ("coring", lambda: cy.coring_cocyclic(obj, N))]
    if kind == "coring":
        return [("coring", lambda: cy.coring_cocyclic(obj, N))]
    if kind == "module-coring":
        return [("module-coring", lambda: cy.hopf_cocyclic(obj, N))]
    return [("connes-moscovici", lambda: cy.cm_cocyclic(obj, N))]


@lru_cache(maxsize=None)
def built(name):
    return [(label, f()) for label, f in builders(name)]


def dual(X):
    return cy.dualize(X) if X.kind == "cocyclic" else cy.codualize(X)


ALL_INPUTS = gallery.names() + gallery.module_coring_names()


# ---------------------------------------------------------------------------

def test_criterion_1_axiom_suite(record):
    names = ["sweedler:k->k", "sweedler:k->D", "sweedler:k->M2", "sweedler:k->kZ2",
             "conj-crossed:kZ2", "conj-crossed:kZ3", "conj-crossed:kS3"]
    t0 = time.perf_counter()
    failures = []
    for name in names:
        try:
            P = gallery._get.__wrapped__(name, QQ)     # fresh construction, not the cached object
            ab.check_algebroid(P)
            ab.check_para_hopf(P)
        except Exception as e:                          # noqa: BLE001 -- reported, then asserted
            failures.append((name, repr(e)))
    elapsed = time.perf_counter() - t0
    ok = not failures and elapsed < 60
    record(1, ok, "%d algebroids, bialgebroid and para-antipode axioms, %.1fs (< 60s)%s"
           % (len(names), elapsed, "" if not failures else "; failures %s" % failures))
    assert ok


@pytest.mark.slow
def test_criterion_2_identity_suite(record):
    failures, count = [], 0
    for name in ALL_INPUTS:
        for label, X in built(name):
            for Y in (X, dual(X)):
                rep = cy.verify_identities(Y)
                count += 1
                cyc = [r for r in rep["relations"] if r["relation"].startswith(("tau^", "t^"))]
                if not rep["passed"] or len(cyc) != Y.top + 1:
                    failures.append((name, label, Y.kind))
    record(2, not failures, "%d objects (builders and duals) over %d gallery inputs, N = %d%s"
           % (count, len(ALL_INPUTS), N, "" if not failures else "; failures %s" % failures))
    assert not failures


def test_criterion_3_lemma_suite(record):
    failures, modes = [], set()
    for name in gallery.module_coring_names():
        M = gallery.get(name)
        if not ab.check_lemma31(M)["passed"]:
            failures.append((name, "lemma31"))
        for n in range(1, 5):
            rep = ab.check_lemma32(M, n)
            modes.add(rep["mode"])
            if not rep["passed"]:
                failures.append((name, "lemma32", n))
    record(3, not failures, "%d module corings, lemma31 and lemma32 identities for n <= 4 (%s)%s"
           % (len(gallery.module_coring_names()), ", ".join(sorted(modes)),
              "" if not failures else "; failures %s" % failures))
    assert not failures


def test_criterion_4_sweedler_equivalence(record):
    rows, ok = [], True
    for name in ("k", "D", "M2"):
        A = gallery.make_algebra(name)
        t0 = time.perf_counter()
        Psi, Phi = cy.iso_sweedler(A, 3)
        cy.check_mutually_inverse(Psi, Phi)
        X = Psi.source
        Y = cy.dualize(cy.coring_cocyclic(cr.sweedler_coring(unit_map(A)), 3))
        tables = {}
        for label, Z in (("algebra", X), ("dual-sweedler-coring", Y), ("dual-self-action", Psi.target)):
            tables[label] = (tuple(hm.hochschild(Z).dims[:4]), tuple(hm.cyclic_invariant(Z).dims[:4]))
        elapsed = time.perf_counter() - t0
        same = len(set(tables.values())) == 1
        ok = ok and same and elapsed < 120
        rows.append("%s HH %s HC %s %.1fs" % (name, list(tables["algebra"][0]), list(tables["algebra"][1]), elapsed))
    record(4, ok, "; ".join(rows))
    assert ok


def test_criterion_5_cm_isomorphism(record):
    rows, ok = [], True
    for name in ("k", "kZ2", "sweedler:k->D"):
        Psi, Phi = cy.iso_cm(gallery.get(name), 3)
        cy.check_mutually_inverse(Psi, Phi)
        a, b = hm.cyclic_invariant(Psi.source).dims, hm.cyclic_invariant(Psi.target).dims
        ok = ok and a == b
        rows.append("%s HC %s" % (name, a))
    record(5, ok, "; ".join(rows))
    assert ok


def product_theta(P):
    """theta(a (x) x) = ax on the Sweedler bialgebroid of a commutative algebra."""
    A, d = P.base, P.base.dim
    return Matrix(QQ, d, d * d, [A.mul({h // d: QQ(1)}, {h % d: QQ(1)}) for h in range(d * d)])


def test_criterion_6_haar_instantiation(record):
    # part A: kZ2 with theta = coefficient of the identity
    P = gallery.get("kZ2")
    theta = Matrix.from_dense(QQ, [[1, 0]])
    rep_a = hm.verify_prop33(P, theta, N=5)
    part_a = ab.find_haar(P).theta == theta and rep_a["haar_normal"] and rep_a["passed"]
    # part B: D^e with theta(a (x) x) = ax
    E = gallery.get("sweedler:k->D")
    try:
        ab.check_haar(E, product_theta(E))
        theta_ok, why = True, ""
    except HaarViolation as e:
        theta_ok, why = False, "theta(a (x) x) = ax is not a Haar system (it is the counit), witness %s" % e.witness
    # the HC conclusion on D^e, with the normal Haar systems theta(a (x) x) = lambda(a) x
    lam_theta = Matrix(QQ, 2, 4, [{x: QQ([1, 0][a])} for a in range(2) for x in range(2)])
    rep_b = hm.verify_prop33(E, lam_theta, N=5)
    ok = part_a and theta_ok and rep_b["passed"]
    record(6, ok, "kZ2: HC %s vs ker dim %d %s; D^e: %s; HC %s vs ker dim %d with theta = lambda(a)x %s"
           % (rep_a["hc_dims"], rep_a["ker_alpha_minus_beta"], "ok" if part_a else "FAIL",
              why or "theta verified", rep_b["hc_dims"], rep_b["ker_alpha_minus_beta"],
              "ok" if rep_b["passed"] else "FAIL"))
    assert part_a and rep_b["passed"]
    assert theta_ok, why


def test_criterion_7_coseparable_chain(record):
    name = "sweedler-coring:k->M2"
    C = gallery.get(name)
    d = cr.split_extension_coseparator(C, gallery.trace_expectation(C.extra["sweedler_of"].target))
    cr.check_coseparator(C, d.delta)
    X = built(name)[0][1]
    cert = hm.coseparable_homotopy(X, d)
    hc = hm.cyclic_invariant(X).dims
    chain_ok = cert.degrees == [1, 2, 3] and all(hc[n] == 0 for n in range(1, len(hc), 2))
    normal, without = [], []
    for pname in gallery.para_hopf_names():
        P = gallery.get(pname)
        dd = cr.find_coseparating(P.coring, ab.self_module_coring(P))
        if dd is None:
            without.append(pname)
            continue
        hs = ab.haar_from_coseparator(P, dd)
        if ab.check_haar(P, hs.theta).normal:
            normal.append(pname)
    ok = chain_ok and normal and len(normal) + len(without) == len(gallery.para_hopf_names())
    record(7, ok, "k -> M2 trace: bh + hb = id in degrees %s, HC %s; normal Haar from coseparator on %d of %d "
           "para-Hopf algebroids (no coseparator: %s)"
           % (cert.degrees, hc, len(normal), len(gallery.para_hopf_names()), ", ".join(without) or "none"))
    assert ok


def test_criterion_8_trivial_coalgebra(record):
    X = cy.coalgebra_cocyclic(gallery.get("coalg:k"), 4)
    hh, hc = hm.hochschild(X).dims[:4], hm.cyclic_invariant(X).dims[:4]
    # by hand: every space is k and every coface is the identity, so b_n = sum_{i=0}^{n+1} (-1)^i
    # is 1 for n odd and 0 for n even; HH^n = dim ker b_n - rank b_(n-1)
    b = [(n % 2) for n in range(5)]
    by_hand = [(1 - b[n]) - (b[n - 1] if n else 0) for n in range(4)]
    ok = hh == by_hand == [1, 0, 0, 0] and hc == [1, 0, 1, 0]
    record(8, ok, "HH %s, HC %s" % (hh, hc))
    assert ok


@pytest.mark.slow
def test_criterion_9_cross_method(record):
    failures, count = [], 0
    for name in ALL_INPUTS:
        for label, X in built(name):
            a, b = hm.cyclic_invariant(X).dims, hm.cyclic_bicomplex(X).dims
            count += 1
            if a != b:
                failures.append((name, label, a, b))
    record(9, not failures, "%d objects, invariant and bicomplex HC agree in every degree%s"
           % (count, "" if not failures else "; failures %s" % failures))
    assert not failures


def test_criterion_10_designed_errors(record):
    def well_defined():
        ab.sweedler_square_module_coring(gallery.get("sweedler:k->D"))

    def hypothesis():
        Hf, M = ab.conjugation_example(ab.hopf_group_algebra(QQ, gallery._group("S3")))
        trivial = [{(a, 0): QQ(1)} for a in range(Hf.dim)]
        ab.crossed_product_para_hopf(Hf, ab.ModuleComoduleAlgebra(M.algebra, M.action, trivial))

    def haar():
        ab.check_haar(gallery.get("kZ2"), Matrix.from_dense(QQ, [[1, 1]]))

    def iso():
        Psi, Phi = cy.iso_cm(gallery.get("kZ2"), 3)
        maps = list(Psi.maps)
        maps[1] = maps[1].scale(QQ(2))
        cy.CyclicMorphism(Psi.source, Psi.target, maps, "2Psi").certify()

    def homotopy():
        C = gallery.get("matrix-coring:2xk")
        d = cr.find_coseparating(C)
        d.delta = d.delta.scale(QQ(2))
        hm.coseparable_homotopy(cy.coring_cocyclic(C, 3), d)

    cases = [(WellDefinednessViolation, well_defined), (HypothesisViolation, hypothesis),
             (HaarViolation, haar), (IsoViolation, iso), (HomotopyViolation, homotopy)]
    seen = []
    for exc, fixture in cases:
        try:
            fixture()
            seen.append((exc.__name__, False))
        except exc as e:
            seen.append((exc.__name__, bool(e.witness)))
    ok = all(w for _, w in seen)
    record(10, ok, ", ".join("%s %s" % (n, "with witness" if w else "MISSING") for n, w in seen))
    assert ok
