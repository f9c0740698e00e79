import pytest

from cohocoring import algebra as alg
from cohocoring import algebroid as ab
from cohocoring import cyclic as cy
from cohocoring import gallery
from cohocoring.errors import BaseNotField, IdentityViolation, IsoViolation
from cohocoring.linalg import QQ, Matrix


# ---------------------------------------------------------------------------
# direct-formula oracle for the cocyclic module of a coring

def _add(out, key, c):
    out[key] = out.get(key, 0) + c


def oracle_coface(C, n, i, key):
    """delta_i on a basis representative, straight from the displayed formulas."""
    out = {}
    if n == 0:
        c, r = key
        for (a, b), x in C.delta_keys(c).items():
            if i == 0:      # c' (x) c'' r
                for bb, y in C.carrier.right_action[r].columns[b].items():
                    _add(out, (a, bb), x * y)
            else:           # c'' (x) r c'
                for aa, y in C.carrier.left_action[r].columns[a].items():
                    _add(out, (b, aa), x * y)
        return out
    if i <= n:
        for (a, b), x in C.delta_keys(key[i]).items():
            _add(out, key[:i] + (a, b) + key[i + 1:], x)
    else:
        for (a, b), x in C.delta_keys(key[0]).items():
            _add(out, (b,) + key[1:] + (a,), x)
    return out


def oracle_codeg(C, n, j, key):
    out = {}
    e = C.eps(key[j + 1])
    if n == 1:
        for r, x in e.items():
            _add(out, (key[0], r), x)
        return out
    for r, x in e.items():
        for cj, y in C.carrier.right_action[r].columns[key[j]].items():
            _add(out, key[:j] + (cj,) + key[j + 2:], x * y)
    return out


def oracle_tau(C, n, key):
    if n == 0:
        return {key: QQ(1)}
    return {key[1:] + key[:1]: QQ(1)}


def oracle_matrix(X, n, m, f):
    src, tgt = X.spaces[n], X.spaces[m]
    return Matrix(QQ, tgt.dim, src.dim, [tgt.project_vec(f(k)) for k in src.basis])


@pytest.mark.parametrize("name", ["coalg:kZ2", "matrix-coring:2xk", "trivial-coring:D",
                                  "sweedler-coring:k->D", "matrix-coring:2xD"])
def test_coring_cocyclic_matches_direct_formulas(name):
    C = gallery.get(name)
    X = cy.coring_cocyclic(C, 3)
    for n in range(X.top):
        for i in range(n + 2):
            assert X.cofaces[n][i] == oracle_matrix(X, n, n + 1, lambda k: oracle_coface(C, n, i, k)), (n, i)
    for n in range(1, X.top + 1):
        for j in range(n):
            assert X.codegs[n][j] == oracle_matrix(X, n, n - 1, lambda k: oracle_codeg(C, n, j, k)), (n, j)
    for n in range(1, X.top + 1):
        assert X.tau[n] == oracle_matrix(X, n, n, lambda k: oracle_tau(C, n, k)), n


@pytest.mark.parametrize("name", ["coalg:kZ3", "matrix-coring:2xk"])
def test_coalgebra_and_coring_builders_agree(name):
    C = gallery.get(name)
    X, Y = cy.coalgebra_cocyclic(C, 3), cy.coring_cocyclic(C, 3)
    assert X.dims == Y.dims
    for n in range(X.top):
        assert X.cofaces[n] == Y.cofaces[n]
    for n in range(X.top + 1):
        assert X.tau[n] == Y.tau[n]


def test_coalgebra_builder_needs_field_base():
    with pytest.raises(BaseNotField):
        cy.coalgebra_cocyclic(gallery.get("trivial-coring:D"), 3)


def test_hopf_cocyclic_of_enveloping_action_is_coring_cocyclic():
    C = gallery.get("sweedler-coring:k->D")
    X = cy.coring_cocyclic(C, 3)
    Y = cy.hopf_cocyclic(ab.enveloping_action_module(C), 3)
    assert X.dims == Y.dims
    assert all(X.cofaces[n] == Y.cofaces[n] for n in range(X.top))
    assert all(X.tau[n] == Y.tau[n] for n in range(X.top + 1))


# ---------------------------------------------------------------------------
# identities and their failure modes

@pytest.mark.parametrize("build", [
    lambda: cy.coalgebra_cocyclic(gallery.get("coalg:kZ2"), 4),
    lambda: cy.coring_cocyclic(gallery.get("sweedler-coring:k->D"), 3),
    lambda: cy.hopf_cocyclic(gallery.get("self:conj-crossed:kZ2"), 3),
    lambda: cy.cm_cocyclic(gallery.get("sweedler:k->D"), 3),
    lambda: cy.algebra_cyclic(gallery.make_algebra("D"), 4),
])
def test_identities_and_dual(build):
    X = build()
    assert cy.verify_identities(X)["passed"]
    if X.kind == "cocyclic":
        Y = cy.dualize(X)
        assert cy.verify_identities(Y)["passed"]
        tau_cycle = [r for r in cy.verify_identities(Y)["relations"] if r["relation"].startswith("t^")]
        assert tau_cycle and all(r["passed"] for r in tau_cycle)


def test_perturbed_tau_breaks_exactly_the_tau_relations():
    X = cy.coalgebra_cocyclic(gallery.get("coalg:kZ2"), 4)
    X.tau[2] = X.tau[2].scale(QQ(2))
    rep = cy.verify_identities(X)
    bad = [r for r in rep["relations"] if not r["passed"]]
    assert bad and not rep["passed"]
    assert all("tau" in r["relation"] for r in bad)
    assert {r["degree"] for r in bad} <= {1, 2, 3}
    assert all(r.get("witness") for r in bad)


def test_builder_refuses_broken_operators():
    X = cy.coalgebra_cocyclic(gallery.get("coalg:kZ2"), 3)
    tau = list(X.tau)
    tau[1] = Matrix.identity(QQ, X.spaces[1].dim)
    with pytest.raises(IdentityViolation):
        cy._build_cocyclic(QQ, X.N, X.spaces, lambda n, i: X.cofaces[n][i], lambda n, j: X.codegs[n][j],
                           lambda n: tau[n], "broken")


def test_dualize_codualize_round_trip():
    X = cy.coring_cocyclic(gallery.get("sweedler-coring:k->D"), 3)
    Z = cy.codualize(cy.dualize(X))
    assert Z.dims == X.dims
    assert all(Z.tau[n] == X.tau[n] for n in range(X.top + 1))
    assert all(Z.cofaces[n] == X.cofaces[n] for n in range(X.top))
    assert all(Z.codegs[n] == X.codegs[n] for n in range(1, X.top + 1))


def test_dual_of_trivial_coalgebra_is_trivial():
    Y = cy.dualize(cy.coalgebra_cocyclic(gallery.get("coalg:k"), 4))
    assert all(t == Matrix.identity(QQ, 1) for t in Y.t)


@pytest.mark.parametrize("name", ["self:sweedler:k->D", "self:conj-crossed:kZ2", "env:sweedler-coring:k->D"])
def test_dual_faces_match_explicit_table(name):
    Y = cy.dualize(cy.hopf_cocyclic(gallery.get(name), 3))
    rep = cy.compare_dual_table(Y)
    assert rep["all_agree"] and len(rep["compared"]) == sum(n + 1 for n in range(1, Y.top + 1))


# ---------------------------------------------------------------------------
# isomorphisms

def test_iso_sweedler_dual_numbers():
    Psi, Phi = cy.iso_sweedler(gallery.make_algebra("D"), 3)
    assert not Psi.commutation_failures() and not Phi.commutation_failures()
    assert all(c.exhaustive for c in Psi.certificates)


@pytest.mark.parametrize("name", ["k", "kZ2", "sweedler:k->D", "conj-crossed:kZ2"])
def test_iso_cm(name):
    Psi, Phi = cy.iso_cm(gallery.get(name), 3)
    cy.check_mutually_inverse(Psi, Phi)


def test_corrupted_morphism_is_rejected():
    Psi, Phi = cy.iso_cm(gallery.get("kZ2"), 3)
    maps = list(Psi.maps)
    maps[1] = maps[1].scale(QQ(2))
    with pytest.raises(IsoViolation) as e:
        cy.CyclicMorphism(Psi.source, Psi.target, maps, "2Psi").certify()
    assert e.value.witness["degree"] in (0, 1, 2)
    with pytest.raises(IsoViolation):
        cy.check_mutually_inverse(cy.CyclicMorphism(Psi.source, Psi.target, maps, "2Psi"), Phi)


def test_algebra_cyclic_dims():
    X = cy.algebra_cyclic(alg.matrix_algebra(QQ, 2), 3)
    assert X.dims == [4, 16, 64, 256, 1024]
