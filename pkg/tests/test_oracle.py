import pytest
from mpmath import mp

from heckeconv.errors import DomainError, PoleError
from heckeconv.oracle import (
    estermann_direct, estermann_eval, estermann_fe_residual, estermann_residue_probe, mellin_2f1_residual,
    mellin_bessel_residual, petersson_residual, petersson_residuals, ramanujan_residual,
)
from heckeconv.mpcore.context import precision
from heckeconv.mpcore.zeta import riemann_zeta

from conftest import close


def test_petersson_empty_space():
    # with no cusp forms the Kloosterman sum equals -eps * delta
    recs = petersson_residuals(8, [(1, 1), (1, 2), (2, 3)], L=2000)
    for rec in recs:
        assert rec.passes(mp.mpf("1e-12"))
    assert recs[0].right == -1 and recs[1].right == 0


def test_petersson_weight_12():
    with precision(30):
        recs = petersson_residuals(12, [(1, 1), (2, 3), (3, 3)], L=5000)
    for rec in recs:
        assert rec.abs_residual < mp.mpf("1e-15")


def test_petersson_single_pair_and_guard():
    with precision(30):
        assert petersson_residual(1, 2, 16, L=2000).passes(mp.mpf("1e-12"))
    with pytest.raises(DomainError):
        petersson_residuals(12, [(1, 1)], L=100)


def test_estermann_trivial_modulus_is_zeta_product():
    s, a = mp.mpf("2.5"), mp.mpf("0.5")
    assert close(estermann_eval(s, 1, 1, a), riemann_zeta(s) * riemann_zeta(s - a), mp.mpf(10) ** -45)


@pytest.mark.parametrize("v,ell", [(1, 3), (2, 5), (5, 12)])
def test_estermann_matches_dirichlet_series(v, ell):
    s = mp.mpf(7)
    # sigma_0(n) n^-7 beyond 3000 is below 1e-18
    assert abs(estermann_eval(s, v, ell, 0) - estermann_direct(s, v, ell, 0, terms=3000)) < mp.mpf(10) ** -17


@pytest.mark.parametrize("s,v,ell,a", [("0.3+2i", 1, 4, "0.25"), ("-1.7", 3, 7, "1.5"), ("2+0.5i", 1, 1, "0.7")])
def test_estermann_functional_equation(s, v, ell, a):
    assert estermann_fe_residual(s, v, ell, a).passes(mp.mpf("1e-18"), relative=True)


def test_estermann_pole_and_coprimality():
    with pytest.raises(PoleError):
        estermann_eval(1, 1, 3, "0.5")
    with pytest.raises(DomainError):
        estermann_eval(2, 2, 4, "0.5")


@pytest.mark.parametrize("pole", ["1", "1+a"])
def test_estermann_residues(pole):
    assert estermann_residue_probe(pole, 2, 5, "0.5").passes(mp.mpf("1e-6"), relative=True)


def test_ramanujan_expansion():
    rec = ramanujan_residual(3, 6, 10_000)
    assert rec.passes(mp.mpf("1e-12"))
    assert rec.truncation["tail_bound"] < mp.mpf("1e-10")


def test_ramanujan_truncation_error_decays():
    coarse = ramanujan_residual(2, 12, 1000).abs_residual
    fine = ramanujan_residual(2, 12, 8000).abs_residual
    assert fine < coarse / 10


def test_ramanujan_needs_positive_index():
    with pytest.raises(DomainError):
        ramanujan_residual(0, 6, 100)


@pytest.mark.parametrize("pt", [(3, 5, 2, 12, 1), (1, 3, 1, "0.7", "0.4")])
def test_mellin_bessel(pt):
    assert mellin_bessel_residual(*pt).passes(mp.mpf("1e-10"))


@pytest.mark.parametrize("pt", [(1, 3, 1, 1, 2, "0.7"), ("i", "i", "3-i", 1, 2, "0.7")])
def test_mellin_2f1(pt):
    assert mellin_2f1_residual(*pt).passes(mp.mpf("1e-10"))


def test_mellin_rejects_contour_outside_strip():
    with pytest.raises(DomainError):
        mellin_bessel_residual(1, 3, 1, 5, 3)
    with pytest.raises(DomainError):
        mellin_2f1_residual(1, 3, 1, 1, 2, 5)
