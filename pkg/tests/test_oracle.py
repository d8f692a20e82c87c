import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sopq.errors import ConvergenceError, DomainError, ParityError
from sopq.oracle import (
    BasisLabel,
    QuadratureConfig,
    expansion_residual,
    gram_matrix,
    quad_assoc,
    quad_assoc_labels,
    quad_zonal,
)
from sopq.orthopoly import Signature
from sopq.sfcore import AssocIndex, RepParam, assoc_series, zonal_series

from conftest import rel

Z_32 = 0.920238251584423899361846855391
P_33_11 = complex(0.0269361692728500012222232316159, -0.0230881450910142867619056270993)


def test_config_validation():
    with pytest.raises(DomainError):
        QuadratureConfig(nodes_x=0)
    with pytest.raises(DomainError):
        QuadratureConfig(scheme="simpson")
    with pytest.raises(DomainError):
        quad_zonal(Signature(3, 3), RepParam(-1), 0.3, QuadratureConfig(scheme="trapezoid_periodic"))


@pytest.mark.parametrize("sig", [Signature(3, 3), Signature(3, 2), Signature(2, 2), Signature(4, 1)])
def test_quad_zonal_trivial(sig):
    assert quad_zonal(sig, RepParam(-1.3 + 2j), 0.0) == 1
    assert quad_zonal(sig, RepParam(0), 0.9) == 1


def test_quad_zonal_reference():
    assert rel(quad_zonal(Signature(3, 2), RepParam(-1.5 + 2j), 0.4), Z_32) <= 1e-13


def test_quad_zonal_parity():
    with pytest.raises(ParityError):
        quad_zonal(Signature(3, 2), RepParam(-1, 1), 0.4)


def test_node_doubling_failure_is_reported():
    with pytest.raises(ConvergenceError):
        quad_zonal(Signature(3, 3), RepParam(-2 + 5j), 1.2, QuadratureConfig(nodes_x=8, nodes_y=8))


def test_gauss_on_circle_agrees_with_trapezoid():
    sig, rep = Signature(3, 2), RepParam(-1.5 + 2j)
    gl = quad_zonal(sig, rep, 0.4, QuadratureConfig(scheme="gauss_legendre_angle"))
    assert rel(gl, quad_zonal(sig, rep, 0.4)) <= 1e-12


@pytest.mark.parametrize("sig", [Signature(3, 3), Signature(5, 2), Signature(2, 2), Signature(4, 3)])
@pytest.mark.parametrize("sigma", [-2.0, 1.5 + 1j, -3.5 - 2j])
def test_quad_zonal_matches_series(sig, sigma):
    for a in (0.2, 0.8):
        assert rel(quad_zonal(sig, RepParam(sigma), a), zonal_series(sig, RepParam(sigma), a).value) <= 1e-10


def test_quad_zonal_beyond_series_domain():
    # the oracle has no convergence restriction; the series needs the guard lifted
    sig, rep = Signature(4, 3), RepParam(-2.5 + 1j)
    q = quad_zonal(sig, rep, 1.2)
    s = zonal_series(sig, rep, 1.2, max_t2=0.95)
    assert s.converged and rel(q, s.value) <= 1e-8


def test_quad_assoc_reference():
    assert rel(quad_assoc(Signature(3, 3), RepParam(-2 + 1j), AssocIndex(0, 1, 1), 0.3), P_33_11) <= 1e-12


@pytest.mark.parametrize("sig", [Signature(3, 3), Signature(4, 2), Signature(2, 2)])
def test_quad_assoc_mixed_parity_vanishes(sig):
    assert abs(quad_assoc_labels(sig, -1.7 + 0.5j, 1, 2, 0.5)) <= 1e-14
    assert abs(quad_assoc_labels(sig, -1.7 + 0.5j, 2, 3, 0.5)) <= 1e-14


@pytest.mark.parametrize("sig", [Signature(3, 3), Signature(3, 2), Signature(2, 2)])
def test_quad_assoc_alpha_zero(sig):
    assert abs(quad_assoc(sig, RepParam(-2.0), AssocIndex(0, 1, 0), 0.0)) <= 1e-14
    assert abs(quad_assoc(sig, RepParam(-2.0), AssocIndex(1, 1, 1), 0.0)) <= 1e-14


def test_quad_assoc_trivial_labels_proportional_to_zonal():
    sig, rep = Signature(4, 3), RepParam(-2.0 + 0.5j)
    ratios = [quad_assoc(sig, rep, AssocIndex(0, 0, 0), a) / quad_zonal(sig, rep, a) for a in (0.3, 0.9)]
    assert abs(ratios[0] - ratios[1]) <= 1e-8


@pytest.mark.parametrize("lam", [1, 2, 3])
def test_negative_fourier_label(lam):
    sig = Signature(3, 2)
    mu = lam % 2
    a = quad_assoc_labels(sig, -1.5 + 1j, lam, mu, 0.4)
    b = quad_assoc_labels(sig, -1.5 + 1j, -lam, mu, 0.4)
    assert abs(a - b) <= 1e-14 * max(1.0, abs(a))


@settings(max_examples=15)
@given(
    st.sampled_from([Signature(3, 3), Signature(4, 3), Signature(3, 2), Signature(2, 2), Signature(2, 4)]),
    st.builds(complex, st.floats(-5, 3), st.floats(-4, 4)),
    st.builds(AssocIndex, st.integers(0, 1), st.integers(0, 3), st.integers(0, 3)),
    st.floats(0.05, 0.8),
)
def test_quad_assoc_matches_series(sig, sigma, idx, a):
    rep = RepParam(sigma)
    q = quad_assoc(sig, rep, idx, a)
    s = assoc_series(sig, rep, idx, a).value
    assert abs(q - s) <= 1e-9 * max(abs(s), 1e-6)


# ---------------------------------------------------------------- Gram matrices


def test_gram_single_label():
    G = gram_matrix(Signature(3, 3), [BasisLabel(0, 0)])
    assert G.shape == (1, 1) and abs(G[0, 0] - 1) <= 1e-12


def test_gram_two_labels():
    G = gram_matrix(Signature(4, 3), [BasisLabel(1, 1), BasisLabel(3, 1)])
    assert abs(G[0, 1]) <= 1e-10
    assert np.allclose(np.diag(G), 1, rtol=1e-12)


def test_gram_fourier_exact():
    labels = [BasisLabel(l, m) for l in range(-3, 4) for m in range(-3, 4) if (l + m) % 2 == 0]
    G = gram_matrix(Signature(2, 2), labels)
    assert np.max(np.abs(G - np.eye(len(labels)))) <= 1e-12


@pytest.mark.parametrize(
    "sig, labels",
    [
        (Signature(4, 3), [BasisLabel(2, 2, 1, 1), BasisLabel(3, 2, 1, 1), BasisLabel(2, 3, 1, 1), BasisLabel(2, 2, 0, 0)]),
        (Signature(5, 2), [BasisLabel(0, 3, 0, 2), BasisLabel(1, 3, 0, 2), BasisLabel(0, 4, 0, 2), BasisLabel(0, 3, 0, 1)]),
        (Signature(6, 5), [BasisLabel(l, m) for l in range(3) for m in range(3)]),
    ],
)
def test_gram_towers(sig, labels):
    G = gram_matrix(sig, labels)
    assert np.max(np.abs(G - np.eye(len(labels)))) <= 1e-10


def test_gram_domain():
    with pytest.raises(DomainError):
        gram_matrix(Signature(2, 3), [BasisLabel(0, 0)])
    with pytest.raises(DomainError):
        gram_matrix(Signature(3, 3), [BasisLabel(1, 0, 2, 0)])


# ---------------------------------------------------------------- expansions


def angle_samples(sig, n=24, seed=3):
    rng = np.random.default_rng(seed)
    hi_phi = 2 * math.pi if sig.q == 2 else math.pi
    hi_chi = 2 * math.pi if sig.p == 2 else math.pi
    return np.column_stack([rng.uniform(0, hi_phi, n), rng.uniform(0, hi_chi, n)])


@pytest.mark.parametrize("sig", [Signature(3, 3), Signature(3, 2), Signature(2, 2)])
def test_expansion_trivial(sig):
    pts = angle_samples(sig)
    # the (0, 0) term alone reproduces Theta^0 = 1 and Theta(alpha=0) = 1, up to roundoff
    assert expansion_residual(sig, RepParam(0), 0.7, 0, pts) <= 1e-14
    assert expansion_residual(sig, RepParam(3.0), 0.0, 0, pts) <= 1e-14


@pytest.mark.parametrize("sig", [Signature(4, 3), Signature(3, 2), Signature(2, 2)])
def test_expansion_converges(sig):
    pts = angle_samples(sig)
    res = [expansion_residual(sig, RepParam(2.5 + 1j), 0.3, n, pts) for n in (2, 4, 8, 16)]
    assert all(b < a for a, b in zip(res, res[1:]))
    assert res[-1] <= 1e-12


def test_expansion_n8_beats_n4():
    pts = angle_samples(Signature(2, 2))
    r4 = expansion_residual(Signature(2, 2), RepParam(4), 0.3, 4, pts)
    r8 = expansion_residual(Signature(2, 2), RepParam(4), 0.3, 8, pts)
    assert r8 <= r4


def test_expansion_precondition():
    with pytest.raises(DomainError):
        expansion_residual(Signature(3, 3), RepParam(1.0), 0.3, 4, [(0.1, 0.2)])
