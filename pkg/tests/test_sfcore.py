import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from sopq.errors import DomainError, ParityError
from sopq.hyper import horn_validate
from sopq.orthopoly import Signature
from sopq.scalar import pochhammer
from sopq.sfcore import (
    AssocIndex,
    RepParam,
    assoc_horn,
    assoc_horn_spec,
    assoc_prefactor,
    assoc_series,
    check_rapidity,
    symmetry_check,
    theta,
    theta_angular,
    theta_power_expansion,
    unitary_pair_check,
    zonal_horn,
    zonal_horn_spec,
    zonal_series,
)

from conftest import rel

# mpmath.quad at 30 digits of the normalised zonal and associated integrals, frozen
Z_32 = 0.920238251584423899361846855391
P_33_11 = complex(0.0269361692728500012222232316159, -0.0230881450910142867619056270993)

signatures = st.tuples(st.integers(2, 6), st.integers(2, 6)).map(lambda t: Signature(*t))
sigmas = st.builds(complex, st.floats(-8, 6), st.floats(-6, 6))
alphas = st.floats(0.0, 0.8)
indices = st.builds(AssocIndex, st.integers(0, 1), st.integers(0, 4), st.integers(0, 4))


# ---------------------------------------------------------------- Theta


def test_theta_trivial():
    assert theta(0.0, 0.3, -0.8) == 1.0
    assert theta(1.7, 0.0, 0.0) == 1.0


def test_theta_two_forms_example():
    x, y = 0.3, -0.7
    angular = theta_angular(0.5, math.acos(y), math.acos(x))
    assert theta(0.5, x, y) == pytest.approx(angular, rel=1e-14)


def test_theta_two_forms_grid():
    rng = np.random.default_rng(7)
    phi, chi, a = rng.uniform(0, math.pi, 500), rng.uniform(0, math.pi, 500), rng.uniform(0, 2, 500)
    for k in range(500):
        lhs = theta(a[k], math.cos(chi[k]), math.cos(phi[k]))
        assert abs(lhs - theta_angular(a[k], phi[k], chi[k])) <= 1e-13 * max(1.0, lhs)


@given(st.floats(0, 3), st.floats(-1, 1), st.floats(-1, 1))
def test_theta_positive(a, x, y):
    assert theta(a, x, y) > 0


def test_theta_domain():
    with pytest.raises(DomainError):
        theta(0.3, 1.2, 0.0)


@pytest.mark.parametrize("sigma", [-2.0, 1.5 - 0.5j, -4.3 + 2j])
@pytest.mark.parametrize("x, y", [(0.3, -0.6), (0.9, 0.8), (-1.0, 0.2)])
def test_theta_power_expansion(sigma, x, y):
    got = theta_power_expansion(sigma, 0.3, x, y, max_l=60)
    assert rel(got, theta(0.3, x, y) ** (sigma / 2)) <= 1e-12


# ---------------------------------------------------------------- types


def test_rep_param():
    sig = Signature(4, 3)
    rep = RepParam(-2.5 + 1j)
    assert rep.is_unitary(sig)
    assert not RepParam(-2.0).is_unitary(sig)
    assert rep.partner(sig).sigma == -2.5 - 1j
    with pytest.raises(DomainError):
        RepParam(1.0, 2)
    with pytest.raises(DomainError):
        RepParam(complex("nan"))


def test_assoc_index_labels():
    idx = AssocIndex(1, 2, 0)
    assert (idx.lam, idx.mu) == (1, 5)
    assert AssocIndex.from_labels(1, 5) == idx
    assert (idx.lam + idx.mu) % 2 == 0
    with pytest.raises(ParityError):
        AssocIndex.from_labels(1, 2)
    with pytest.raises(DomainError):
        AssocIndex(2, 0, 0)
    with pytest.raises(DomainError):
        AssocIndex(0, -1, 0)


def test_rapidity_guard():
    assert check_rapidity(0.8) == pytest.approx(math.tanh(0.8) ** 2)
    with pytest.raises(DomainError):
        check_rapidity(1.0)
    assert check_rapidity(1.0, max_t2=0.9) < 0.9
    for bad in (-0.1, math.inf):
        with pytest.raises(DomainError):
            check_rapidity(bad)
    with pytest.raises(DomainError):
        check_rapidity(0.1, max_t2=1.0)


# ---------------------------------------------------------------- zonal


@pytest.mark.parametrize("p", range(2, 7))
@pytest.mark.parametrize("q", range(1, 7))
def test_zonal_sigma_zero(p, q):
    sig = Signature(p, q)
    for a in np.linspace(0, 0.8, 9):
        assert abs(zonal_series(sig, RepParam(0), a).value - 1) <= 1e-12


@given(signatures, sigmas)
def test_zonal_alpha_zero_exact(sig, sigma):
    res = zonal_series(sig, RepParam(sigma), 0.0)
    assert res.value == 1 and res.converged and res.tail_estimate == 0
    assert zonal_horn(sig, RepParam(sigma), 0.0).value == 1


def test_zonal_reference_value():
    res = zonal_series(Signature(3, 2), RepParam(-1.5 + 2j), 0.4)
    assert res.converged and res.tail_estimate <= 1e-14
    assert rel(res.value, Z_32) <= 1e-13


def test_zonal_parity():
    with pytest.raises(ParityError):
        zonal_series(Signature(3, 2), RepParam(-1, 1), 0.3)


def test_zonal_guard_and_override():
    sig, rep = Signature(3, 2), RepParam(-1.5 + 2j)
    with pytest.raises(DomainError):
        zonal_series(sig, rep, 1.0)
    res = zonal_series(sig, rep, 1.0, max_t2=0.9)
    assert res.converged


def test_zonal_reports_truncation():
    res = zonal_series(Signature(3, 2), RepParam(-5.5 + 3j), 0.8, max_l=5)
    assert not res.converged
    assert res.tail_estimate > 1e-14


@pytest.mark.parametrize("form", ["standard", "transformed"])
def test_zonal_horn_matches_series(form):
    sig, rep = Signature(4, 3), RepParam(-2.5)
    assert rel(zonal_horn(sig, rep, 0.3, form=form).value, zonal_series(sig, rep, 0.3).value) <= 1e-9
    assert horn_validate(zonal_horn_spec(sig, rep.sigma, 0.09, form))


@given(signatures, sigmas, st.floats(0.01, 0.8))
def test_zonal_horn_cross_path(sig, sigma, a):
    rep = RepParam(sigma)
    s = zonal_series(sig, rep, a).value
    assert rel(zonal_horn(sig, rep, a).value, s) <= 1e-8
    assert rel(zonal_horn(sig, rep, a, form="transformed").value, s) <= 1e-8


def test_zonal_horn_sigma_zero():
    for a in (0.1, 0.5, 0.8):
        assert abs(zonal_horn(Signature(5, 3), RepParam(0), a).value - 1) <= 1e-12


@given(st.integers(2, 6), st.floats(-6, 4), alphas)
def test_zonal_real_for_real_sigma(p, sigma, a):
    assert abs(zonal_series(Signature(p, 2), RepParam(sigma), a).value.imag) <= 1e-14


@pytest.mark.parametrize("sig", [Signature(3, 2), Signature(4, 3), Signature(5, 5), Signature(2, 2)])
def test_unitary_pair_on_line(sig):
    real_point = RepParam(sig.unitary_re_sigma)
    assert unitary_pair_check(sig, real_point, 0.4) <= 1e-14
    assert unitary_pair_check(sig, RepParam(sig.unitary_re_sigma + 2j), 0.4) <= 1e-9


@pytest.mark.parametrize("sig", [Signature(3, 2), Signature(4, 4)])
def test_unitary_pair_off_line_is_reported(sig):
    gap = unitary_pair_check(sig, RepParam(0), 0.5)
    assert gap == pytest.approx(abs(1 - zonal_series(sig, RepParam(2 - sig.p - sig.q), 0.5).value))


@pytest.mark.parametrize(
    "sig, sigma, a, idx",
    [
        (Signature(4, 3), -2.5 + 2j, 0.8, AssocIndex(0, 0, 0)),
        (Signature(3, 2), -4.0, 0.6, AssocIndex(1, 2, 1)),
        (Signature(5, 5), 1.5 - 3j, 0.8, AssocIndex(0, 3, 0)),
    ],
)
def test_monotone_tail(sig, sigma, a, idx):
    # F2(l, l) has isolated near-zeros, so single ratios can exceed 1; the bound is on the envelope
    from sopq.hyper import UnitF2

    s, r, nu = idx.s, idx.r, idx.nu
    f2 = UnitF2(s + r + nu - sigma / 2, 2 * s + nu + sig.p / 2, 2 * r + nu + sig.q / 2)
    t2 = math.tanh(a) ** 2
    l0 = max(s, r)
    mags = []
    coef = math.factorial(l0) / (math.factorial(l0 - s) * math.factorial(l0 - r)) * float(pochhammer(nu + 0.5, l0).real)
    for l in range(l0, l0 + 120):
        mags.append(abs(coef * f2(l - s, l - r)) * t2**l)
        coef *= (l + 1) * (nu + 0.5 + l) / ((l + 1 - s) * (l + 1 - r))
    rho = (1 + t2) / 2
    start = 5
    for k in range(start, len(mags)):
        assert mags[k] <= mags[start] * rho ** (k - start) * 10


# ---------------------------------------------------------------- associated


def test_assoc_reference_value():
    res = assoc_series(Signature(3, 3), RepParam(-2 + 1j), AssocIndex(0, 1, 1), 0.3)
    assert rel(res.value, P_33_11) <= 1e-12


@given(signatures, sigmas, indices.filter(lambda i: not i.is_zonal))
def test_assoc_alpha_zero(sig, sigma, idx):
    assert abs(assoc_series(sig, RepParam(sigma), idx, 0.0).value) <= 1e-12
    assert abs(assoc_horn(sig, RepParam(sigma), idx, 0.0).value) <= 1e-12


@pytest.mark.parametrize("sig", [Signature(3, 3), Signature(4, 2), Signature(2, 2)])
def test_assoc_trivial_labels_match_zonal(sig):
    rep = RepParam(-1.7 + 0.6j)
    ratios = [
        assoc_series(sig, rep, AssocIndex(0, 0, 0), a).value / zonal_series(sig, rep, a).value for a in (0.2, 0.6)
    ]
    assert abs(ratios[0] - ratios[1]) <= 1e-12
    assert abs(ratios[0] - 1) <= 1e-12


@given(signatures, st.floats(-6, 4), indices, st.floats(0.05, 0.8))
def test_assoc_real_for_real_sigma(sig, sigma, idx, a):
    val = assoc_series(sig, RepParam(sigma), idx, a).value
    assert abs(val.imag) <= 1e-12 * max(1.0, abs(val))


@given(signatures, sigmas, indices, st.floats(0.05, 0.8))
def test_assoc_horn_cross_path(sig, sigma, idx, a):
    rep = RepParam(sigma)
    s = assoc_series(sig, rep, idx, a).value
    assert rel(assoc_horn(sig, rep, idx, a).value, s) <= 1e-8
    assert rel(assoc_horn(sig, rep, idx, a, form="transformed").value, s) <= 1e-8


def test_assoc_horn_requires_s_ge_r():
    with pytest.raises(DomainError):
        assoc_horn_spec(Signature(3, 3), -2.0, AssocIndex(0, 0, 1), 0.1)


def test_assoc_horn_swap_rule():
    rep, idx = RepParam(-2 + 1j), AssocIndex(1, 0, 2)
    lhs = assoc_horn(Signature(3, 2), rep, idx, 0.3).value
    rhs = assoc_horn(Signature(2, 3), rep, idx.swapped(), 0.3).value
    assert lhs == rhs


def test_assoc_sigma_zero_vanishes():
    # Theta^0 = 1 is orthogonal to every non-constant basis element
    assert assoc_series(Signature(4, 3), RepParam(0), AssocIndex(0, 1, 0), 0.5).value == 0


def test_assoc_domain():
    with pytest.raises(DomainError):
        assoc_series(Signature(3, 1), RepParam(-1), AssocIndex(0, 1, 0), 0.3)
    with pytest.raises(ParityError):
        assoc_series(Signature(3, 3), RepParam(-1, 1), AssocIndex(0, 1, 0), 0.3)


@pytest.mark.parametrize(
    "p, q, idx, sigma, a",
    [
        (4, 3, AssocIndex(0, 2, 1), -3.0, 0.3),
        (3, 2, AssocIndex(1, 0, 1), -2 + 1j, 0.2),
        (5, 2, AssocIndex(1, 3, 2), -1.1 - 0.4j, 0.7),
    ],
)
def test_symmetry_examples(p, q, idx, sigma, a):
    assert symmetry_check(Signature(p, q), RepParam(sigma), idx, a) <= 1e-10


def test_symmetry_same_call_is_zero():
    assert symmetry_check(Signature(3, 3), RepParam(-1.3 + 2j), AssocIndex(1, 2, 2), 0.4) == 0


@given(signatures, sigmas, indices, st.floats(0.05, 0.8))
def test_symmetry_property(sig, sigma, idx, a):
    assert symmetry_check(sig, RepParam(sigma), idx, a) <= 1e-10


def product_form_constant(p, q, sigma, idx):
    """Gamma-product form of the associated prefactor, p, q >= 3.

    The power of two is 2^{3 - nu - (p+q)/2} and the sign (-1)^{s+r}.
    """
    s, r, nu = idx.s, idx.r, idx.nu
    mu, lam = 2 * s + nu, 2 * r + nu
    lg = math.lgamma
    a1 = (
        2 ** (3 - nu - (p + q) / 2)
        * pochhammer(-sigma / 2, s + r + nu)
        * math.exp(
            0.5 * (math.log(math.pi) + lg(mu + p - 1) + lg(lam + q - 1) + lg(p / 2) + lg(q / 2)
                   - lg(mu + 1) - lg(lam + 1) - lg((p - 1) / 2) - lg((q - 1) / 2))
            - lg(mu + p / 2) - lg(lam + q / 2)
        )
    )
    a2 = math.sqrt((mu + (p - 2) / 2) * (lam + (q - 2) / 2) / ((mu + p - 2) * (lam + q - 2)))
    return (-1) ** (s + r) * a1 * a2


@given(st.integers(3, 8), st.integers(3, 8), sigmas, indices)
def test_prefactor_product_form(p, q, sigma, idx):
    ours = assoc_prefactor(Signature(p, q), sigma, idx)
    theirs = product_form_constant(p, q, sigma, idx)
    assert abs(ours - theirs) <= 1e-12 * max(abs(ours), 1e-300)
