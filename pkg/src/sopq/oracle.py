"""Quadrature ground truth for the series in :mod:`sopq.sfcore`.

Everything is integrated in the angles (phi, chi) of the two spheres,
phi on the q-side (y = cos phi) and chi on the p-side (x = cos chi).  A sphere
direction of dimension d contributes:

* d >= 3: Gauss-Legendre on [0, pi] with weight sin^{d-2};
* d = 2: the trapezoid rule on [0, 2 pi), spectrally accurate for periodic integrands;
* d = 1: the two points {0, pi}, i.e. the measure y = +-1 of the zero-sphere.

Each integral is recomputed with doubled node counts and the two results
must agree, otherwise ConvergenceError is raised.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Sequence

import numpy as np

from .errors import ConvergenceError, DomainError
from .orthopoly import (
    Signature,
    assoc_coeff,
    basis_norm_general,
    basis_norm_q2,
    gegenbauer,
    pair_coeff,
)
from .sfcore import AssocIndex, RepParam, assoc_series, theta_angular
from .scalar import log_gamma

__all__ = [
    "QuadratureConfig",
    "BasisLabel",
    "quad_zonal",
    "quad_assoc",
    "quad_assoc_labels",
    "gram_matrix",
    "expansion_residual",
]

SCHEMES = ("auto", "gauss_legendre_angle", "trapezoid_periodic")


@dataclass(frozen=True)
class QuadratureConfig:
    """Node counts per direction (x: p-side, y: q-side) and the rule family."""

    nodes_x: int = 96
    nodes_y: int = 96
    scheme: str = "auto"
    check: bool = True
    rtol: float = 1e-9

    def __post_init__(self):
        if self.nodes_x < 1 or self.nodes_y < 1:
            raise DomainError("node counts must be positive")
        if self.scheme not in SCHEMES:
            raise DomainError(f"unknown quadrature scheme {self.scheme!r}")
        if not self.rtol > 0:
            raise DomainError("rtol must be positive")


@dataclass(frozen=True)
class BasisLabel:
    """Canonical basis label; l and m index the tower on the small spheres."""

    lam: int
    mu: int
    l: int = 0
    m: int = 0


@lru_cache(maxsize=64)
def _gauss_legendre(n: int):
    return np.polynomial.legendre.leggauss(n)


def _direction_rule(d: int, n: int, scheme: str):
    """Angles and raw weights of the invariant measure along one direction."""
    if d == 1:
        return np.array([0.0, math.pi]), np.array([1.0, 1.0])
    if d == 2 and scheme in ("auto", "trapezoid_periodic"):
        return 2 * math.pi * np.arange(n) / n, np.full(n, 2 * math.pi / n)
    if scheme == "trapezoid_periodic":
        raise DomainError("trapezoid_periodic applies only to periodic (circle) directions")
    nodes, weights = _gauss_legendre(n)
    if d == 2:
        return math.pi * (nodes + 1), math.pi * weights
    angles = 0.5 * math.pi * (nodes + 1)
    return angles, 0.5 * math.pi * weights * np.sin(angles) ** (d - 2)


def _theta_power(sigma: complex, alpha: float, phi, chi) -> np.ndarray:
    th = theta_angular(alpha, phi, chi)
    return np.exp(0.5 * complex(sigma) * np.log(th))


def _checked(evaluate: Callable[[int, int], tuple[complex, float]], cfg: QuadratureConfig) -> complex:
    value, scale = evaluate(cfg.nodes_x, cfg.nodes_y)
    if not cfg.check:
        return value
    fine, scale = evaluate(2 * cfg.nodes_x, 2 * cfg.nodes_y)
    if not abs(fine - value) <= cfg.rtol * abs(fine) + 1e-14 * scale:
        raise ConvergenceError(
            f"quadrature not converged: {value!r} vs {fine!r} after doubling the nodes"
        )
    return fine


def _grid(sig: Signature, cfg: QuadratureConfig, nx: int, ny: int):
    phi, w_phi = _direction_rule(sig.q, ny, cfg.scheme)
    chi, w_chi = _direction_rule(sig.p, nx, cfg.scheme)
    return phi, w_phi, chi, w_chi


def _weighted(values: np.ndarray, w_phi: np.ndarray, w_chi: np.ndarray) -> tuple[complex, float]:
    # values[i, j] at (phi_i, chi_j); fixed summation order keeps runs bitwise reproducible.
    value = complex(w_phi @ values @ w_chi)
    scale = float(w_phi @ np.abs(values) @ w_chi)
    return value, scale


def quad_zonal(sig: Signature, rep: RepParam, alpha: float, cfg: QuadratureConfig | None = None) -> complex:
    """E[Theta^{sigma/2}] under the normalised invariant measure of the two spheres."""
    rep.require_even()
    cfg = cfg or QuadratureConfig()
    alpha = float(alpha)
    if not (math.isfinite(alpha) and alpha >= 0):
        raise DomainError(f"rapidity must be finite and non-negative, got {alpha!r}")
    if alpha == 0 or rep.sigma == 0:
        return 1.0 + 0j

    def evaluate(nx, ny):
        phi, w_phi, chi, w_chi = _grid(sig, cfg, nx, ny)
        w_phi, w_chi = w_phi / w_phi.sum(), w_chi / w_chi.sum()
        vals = _theta_power(rep.sigma, alpha, phi[:, None], chi[None, :])
        return _weighted(vals, w_phi, w_chi)

    return _checked(evaluate, cfg)


def _sphere_mode(d: int, n: int, angles: np.ndarray, conj: bool) -> np.ndarray:
    """Basis factor of label n along one direction, unnormalised."""
    if d == 2:
        return np.exp((-1j if conj else 1j) * n * angles)
    if n < 0:
        raise DomainError(f"Gegenbauer labels must be non-negative, got {n}")
    return gegenbauer(n, (d - 2) / 2, np.cos(angles))


def _assoc_constant(sig: Signature, lam: int, mu: int) -> float:
    p, q = sig.p, sig.q
    if p >= 3 and q >= 3:
        return pair_coeff(p, q, lam, mu)
    if p >= 3:
        return assoc_coeff(p, mu)
    if q >= 3:
        return assoc_coeff(q, lam)
    return 1 / (4 * math.pi**2)


def quad_assoc_labels(
    sig: Signature,
    sigma: complex,
    lam: int,
    mu: int,
    alpha: float,
    cfg: QuadratureConfig | None = None,
) -> complex:
    """Associated-function integral for labels (lam, mu).

    Labels on a circle direction may be negative (Fourier modes); mixed
    parity labels are allowed and integrate to zero.
    """
    sig.require_assoc()
    cfg = cfg or QuadratureConfig()
    const = _assoc_constant(sig, abs(lam) if sig.q == 2 else lam, abs(mu) if sig.p == 2 else mu)

    def evaluate(nx, ny):
        phi, w_phi, chi, w_chi = _grid(sig, cfg, nx, ny)
        vals = _theta_power(sigma, alpha, phi[:, None], chi[None, :])
        vals = vals * _sphere_mode(sig.q, lam, phi, conj=True)[:, None]
        vals = vals * _sphere_mode(sig.p, mu, chi, conj=True)[None, :]
        value, scale = _weighted(vals, w_phi, w_chi)
        return const * value, const * scale

    return _checked(evaluate, cfg)


def quad_assoc(
    sig: Signature,
    rep: RepParam,
    idx: AssocIndex,
    alpha: float,
    cfg: QuadratureConfig | None = None,
) -> complex:
    """Quadrature value of the associated function with labels (idx.lam, idx.mu)."""
    rep.require_even()
    return quad_assoc_labels(sig, rep.sigma, idx.lam, idx.mu, alpha, cfg)


def _basis_factor(sig: Signature, lab: BasisLabel, phi: np.ndarray, chi: np.ndarray):
    """Normalisation constant and the two angular factors of one basis element."""
    p, q = sig.p, sig.q
    if p >= 3 and q >= 3:
        const = basis_norm_general(sig, lab.lam, lab.l, lab.mu, lab.m)
    elif p >= 3 and q == 2:
        const = basis_norm_q2(p, lab.mu, lab.m)
    elif p == 2 and q == 2:
        const = 1 / (2 * math.pi)
    else:
        raise DomainError(f"canonical basis is defined for p >= q >= 2, got ({p}, {q})")

    def factor(d, n, k, ang):
        if d == 2:
            if k:
                raise DomainError("circle directions carry no tower index")
            return np.exp(1j * n * ang)
        if not n >= k >= 0:
            raise DomainError(f"need label >= tower index >= 0, got ({n}, {k})")
        return gegenbauer(n - k, k + (d - 2) / 2, np.cos(ang)) * np.sin(ang) ** k

    return const, factor(q, lab.lam, lab.l, phi), factor(p, lab.mu, lab.m, chi)


def gram_matrix(
    sig: Signature,
    labels: Sequence[BasisLabel],
    cfg: QuadratureConfig | None = None,
) -> np.ndarray:
    """Pairwise scalar products of canonical basis elements.

    The small-sphere harmonics are taken unit-normalised, so elements with
    different tower indices (l, m) are orthogonal by construction.
    """
    cfg = cfg or QuadratureConfig()
    labels = list(labels)
    n = len(labels)

    def entry(i, j):
        a, b = labels[i], labels[j]

        def evaluate(nx, ny):
            phi, w_phi, chi, w_chi = _grid(sig, cfg, nx, ny)
            ca, fa_phi, fa_chi = _basis_factor(sig, a, phi, chi)
            cb, fb_phi, fb_chi = _basis_factor(sig, b, phi, chi)
            along_phi = complex(np.sum(w_phi * fa_phi * np.conj(fb_phi)))
            along_chi = complex(np.sum(w_chi * fa_chi * np.conj(fb_chi)))
            scale = float(np.sum(w_phi * np.abs(fa_phi * fb_phi)) * np.sum(w_chi * np.abs(fa_chi * fb_chi)))
            return ca * cb * along_phi * along_chi, ca * cb * scale

        return _checked(evaluate, cfg)

    out = np.zeros((n, n), dtype=complex)
    for i in range(n):
        for j in range(i, n):
            if (labels[i].l, labels[i].m) != (labels[j].l, labels[j].m):
                continue
            out[i, j] = entry(i, j)
            out[j, i] = np.conj(out[i, j])
    return out


def _expansion_prefactor(sig: Signature) -> float:
    p, q = sig.p, sig.q
    lg = lambda z: log_gamma(z).real  # noqa: E731
    if p >= 3 and q >= 3:
        return math.pi * math.exp(lg((p - 1) / 2) + lg((q - 1) / 2) - lg(p / 2) - lg(q / 2))
    if p >= 3 and q == 2:
        return 2 * math.pi**1.5 * math.exp(lg((p - 1) / 2) - lg(p / 2))
    if p == 2 and q == 2:
        return 1.0
    raise DomainError(f"expansions are stated for p >= q >= 2, got ({p}, {q})")


def expansion_residual(
    sig: Signature,
    rep: RepParam,
    alpha: float,
    N: int,
    samples: Sequence[tuple[float, float]],
    tol: float = 1e-14,
) -> float:
    """Max pointwise gap between Theta^{sigma/2} and its truncated expansion.

    ``samples`` are angle pairs (phi, chi).  The partial sum keeps labels with
    |lam|, |mu| <= N and lam + mu even, with coefficients from ``assoc_series``.
    Pointwise convergence needs a smooth kernel, so Re sigma >= 2 is required
    unless sigma = 0.
    """
    rep.require_even()
    if N < 0:
        raise DomainError("N must be non-negative")
    if rep.sigma != 0 and rep.sigma.real < 2:
        raise DomainError("pointwise expansion residuals need Re sigma >= 2 (or sigma = 0)")
    pref = _expansion_prefactor(sig)
    p, q = sig.p, sig.q
    pts = np.asarray(samples, dtype=float).reshape(-1, 2)
    phi, chi = pts[:, 0], pts[:, 1]
    exact = _theta_power(rep.sigma, alpha, phi, chi)

    coeffs: dict[tuple[int, int], complex] = {}

    def coeff(lam: int, mu: int) -> complex:
        key = (abs(lam), abs(mu))
        if key not in coeffs:
            idx = AssocIndex.from_labels(*key)
            coeffs[key] = assoc_series(sig, rep, idx, alpha, tol=tol).value
        return coeffs[key]

    lam_range = range(-N, N + 1) if q == 2 else range(N + 1)
    mu_range = range(-N, N + 1) if p == 2 else range(N + 1)
    partial = np.zeros(len(pts), dtype=complex)
    for lam in lam_range:
        along_phi = _sphere_mode(q, lam, phi, conj=False)
        for mu in mu_range:
            if (lam + mu) % 2:
                continue
            c = coeff(lam, mu)
            if p >= 3 and q >= 3:
                c *= pair_coeff(p, q, lam, mu)
            elif p >= 3:
                c *= assoc_coeff(p, mu)
            partial += c * along_phi * _sphere_mode(p, mu, chi, conj=False)
    return float(np.max(np.abs(exact - pref * partial)))
