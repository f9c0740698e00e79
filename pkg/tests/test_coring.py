import pytest

from cohocoring import algebra as alg
from cohocoring import coring as cr
from cohocoring import gallery
from cohocoring.errors import CoassocViolation, CoseparabilityCheckFailed, CounitViolation, NotSplitting
from cohocoring.linalg import QQ, Matrix


@pytest.mark.parametrize("name", gallery.coring_names())
def test_gallery_corings_pass(name):
    C = gallery.get(name)
    alg.check_bimodule(C.carrier)
    cr.check_coring(C)


def test_dimensions():
    # Sweedler coring A (x)_k A has dim(A)^2; the n x n matrix coring over R has n^2 dim(R)
    assert gallery.get("sweedler-coring:k->M2").dim == 16
    assert gallery.get("sweedler-coring:k->D").dim == 4
    assert gallery.get("matrix-coring:2xD").dim == 8
    assert gallery.get("trivial-coring:D").dim == 2


def test_group_coalgebra_is_grouplike():
    C = gallery.get("coalg:kS3")
    for i in range(C.dim):
        assert C.delta_keys(i) == {(i, i): QQ(1)}
        assert C.eps(i) == {0: QQ(1)}


def test_constructions_stay_corings():
    C = gallery.get("sweedler-coring:k->D")
    cr.check_coring(cr.cop_coring(C))
    T = cr.tensor_coring(gallery.get("coalg:kZ2"), gallery.get("coalg:kZ2"))
    cr.check_coring(T)
    assert T.dim == 4
    cr.check_coring(cr.enveloping_coring(gallery.get("trivial-coring:D")))


def test_corrupted_coproduct_is_caught():
    C = gallery.get("coalg:kZ2")
    # Delta(g) = g (x) 1 breaks the counit law
    with pytest.raises((CoassocViolation, CounitViolation)) as e:
        cr.coalgebra_coring(QQ, [{(0, 0): 1}, {(1, 0): 1}], [1, 1], name="bad")
    assert e.value.witness
    assert cr.check_coring(C) is C


def test_trace_coseparator_for_m2():
    C = gallery.get("sweedler-coring:k->M2")
    d = gallery.coseparator_for("sweedler-coring:k->M2")
    cr.check_coseparator(C, d.delta)
    assert d.diagnostics["E"]


def test_perturbed_coseparator_fails():
    C = gallery.get("sweedler-coring:k->M2")
    d = gallery.coseparator_for("sweedler-coring:k->M2")
    with pytest.raises(CoseparabilityCheckFailed) as e:
        cr.check_coseparator(C, d.delta.scale(QQ(2)))     # delta Delta = 2 eps
    assert e.value.witness["condition"] == "delta o Delta = eps"


def test_non_splitting_expectation():
    C = gallery.get("sweedler-coring:k->M2")
    # the (1,1) entry is not a trace but still a k-linear retraction of k -> M2
    E = Matrix(QQ, 1, 4, [{0: QQ(1)}, {}, {}, {}])
    cr.split_extension_coseparator(C, E)
    with pytest.raises(NotSplitting):
        cr.split_extension_coseparator(C, Matrix(QQ, 1, 4, [{0: QQ(2)}, {}, {}, {}]))


def test_find_coseparating():
    for name in ("trivial-coring:D", "coalg:kZ3", "matrix-coring:2xk", "sweedler-coring:k->kZ2"):
        C = gallery.get(name)
        d = cr.find_coseparating(C)
        assert d is not None, name
        cr.check_coseparator(C, d.delta)
