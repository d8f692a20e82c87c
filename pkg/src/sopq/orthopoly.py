"""Gegenbauer polynomials and the normalisation constants of the canonical basis.

The canonical basis of the most degenerate representations lives on the
product of two spheres.  For a sphere direction of dimension ``d >= 3`` the
basis factor along the polar angle is a Gegenbauer polynomial
``C_n^{(d-2)/2}(cos t)``; for ``d = 2`` it is a plain exponential and no
Gegenbauer polynomial is involved.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .scalar import log_gamma

__all__ = [
    "Signature",
    "GegenbauerOrder",
    "gegenbauer",
    "basis_norm_general",
    "basis_norm_q2",
    "assoc_coeff",
    "pair_coeff",
]


@dataclass(frozen=True)
class Signature:
    """Indices (p, q) of SO(p, q).

    The usual ordering is p >= q, but every formula in this package is
    symmetric under (p, q) -> (q, p) together with the matching swap of the
    basis labels, so the ordering is not enforced here.  q = 1 is accepted for
    zonal functions only.
    """

    p: int
    q: int

    def __post_init__(self):
        for name in ("p", "q"):
            v = getattr(self, name)
            if int(v) != v:
                raise DomainError(f"{name} must be an integer, got {v!r}")
        if min(self.p, self.q) < 1 or max(self.p, self.q) < 2:
            raise DomainError(f"invalid signature (p, q) = ({self.p}, {self.q})")

    @property
    def unitary_re_sigma(self) -> float:
        """Re(sigma) on the principal unitary line."""
        return -(self.p + self.q - 2) / 2

    def swapped(self) -> "Signature":
        return Signature(self.q, self.p)

    def require_assoc(self):
        if min(self.p, self.q) < 2:
            raise DomainError(
                f"associated functions need p, q >= 2, got ({self.p}, {self.q})"
            )


@dataclass(frozen=True)
class GegenbauerOrder:
    n: int
    lam: float

    def __post_init__(self):
        if self.n < 0 or int(self.n) != self.n:
            raise DomainError(f"degree must be a non-negative integer, got {self.n!r}")
        if not self.lam > -0.5 or self.lam == 0:
            raise DomainError(f"Gegenbauer parameter must be > -1/2 and nonzero, got {self.lam!r}")

    def __call__(self, x):
        return gegenbauer(self.n, self.lam, x)


def gegenbauer(n: int, lam: float, x):
    """C_n^lam(x) by upward three-term recurrence; ``x`` may be an array."""
    GegenbauerOrder(n, lam)
    x_arr = np.asarray(x, dtype=float)
    if np.any(np.abs(x_arr) > 1.0):
        raise DomainError("Gegenbauer argument outside [-1, 1]")
    prev = np.ones_like(x_arr)
    if n == 0:
        return prev if x_arr.ndim else float(prev)
    cur = 2.0 * lam * x_arr
    for k in range(2, n + 1):
        prev, cur = cur, (2.0 * (k + lam - 1) * x_arr * cur - (k + 2 * lam - 2) * prev) / k
    return cur if x_arr.ndim else float(cur)


def _lgamma(x: float) -> float:
    return log_gamma(x).real


def basis_norm_general(sig: Signature, lam: int, l: int, mu: int, m: int) -> float:
    """Normalisation multiplier of the canonical basis for p >= q >= 3.

    Multiplies C_{lam-l}^{l+(q-2)/2}(cos phi) sin^l(phi) C_{mu-m}^{m+(p-2)/2}(cos chi) sin^m(chi)
    times unit-norm harmonics on the two small spheres.
    """
    p, q = sig.p, sig.q
    if q < 3 or p < 3:
        raise DomainError("basis_norm_general needs p, q >= 3")
    if not (lam >= l >= 0 and mu >= m >= 0):
        raise DomainError(f"need lam >= l >= 0 and mu >= m >= 0, got {(lam, l, mu, m)}")
    log_val = (
        _lgamma(l + (q - 2) / 2)
        + _lgamma(m + (p - 2) / 2)
        - (4 - l - m - (p + q) / 2) * math.log(2.0)
        - math.log(math.pi)
        + 0.5
        * (
            _lgamma(lam - l + 1)
            + _lgamma(mu - m + 1)
            + math.log(2 * lam + q - 2)
            + math.log(2 * mu + p - 2)
            - _lgamma(lam + l + q - 2)
            - _lgamma(mu + m + p - 2)
        )
    )
    return math.exp(log_val)


def basis_norm_q2(p: int, mu: int, m: int) -> float:
    """Normalisation multiplier of the q = 2 canonical basis (exponential in phi)."""
    if p < 3:
        raise DomainError("basis_norm_q2 needs p >= 3")
    if not mu >= m >= 0:
        raise DomainError(f"need mu >= m >= 0, got {(mu, m)}")
    log_val = (
        _lgamma(m + (p - 2) / 2)
        - math.log(math.pi)
        + 0.5
        * (
            (p + 2 * m - 5) * math.log(2.0)
            + _lgamma(mu - m + 1)
            + math.log(2 * mu + p - 2)
            - _lgamma(mu + m + p - 2)
        )
    )
    return math.exp(log_val)


def assoc_coeff(p: int, mu: int) -> float:
    """Constant a^p_mu entering the associated-function integrals."""
    if p < 3:
        raise DomainError("assoc_coeff needs p >= 3")
    if mu < 0:
        raise DomainError(f"mu must be non-negative, got {mu}")
    log_val = _lgamma((p - 2) / 2) + 0.5 * (
        (p - 6) * math.log(2.0)
        + _lgamma(mu + 1)
        + math.log(2 * mu + p - 2)
        + _lgamma(p / 2)
        - _lgamma(mu + p - 2)
        - _lgamma((p - 1) / 2)
        - 3.5 * math.log(math.pi)
    )
    return math.exp(log_val)


def pair_coeff(p: int, q: int, lam: int, mu: int) -> float:
    """a^{pq}_{lam mu} = 4 pi^2 a^p_mu a^q_lam."""
    return 4 * math.pi**2 * assoc_coeff(p, mu) * assoc_coeff(q, lam)
