"""Zonal and associated spherical functions of SO(p, q).

The functions are matrix elements of the hyperbolic rotation by ``alpha`` in
the (k_1, k_{q+1}) plane, taken in the most degenerate principal-series
representation of degree ``sigma`` and parity 0:

* the zonal function Z_sigma(alpha), between two copies of the vector fixed
  by SO(p) x SO(q), with Z_sigma(0) = 1;
* the associated function P_{sigma, lam, mu}(alpha) between the fixed vector
  and the canonical basis vector with labels lam = nu + 2r (the q-sphere) and
  mu = nu + 2s (the p-sphere).

Both are evaluated as power series in th^2(alpha).  The zonal series is

    Z = (1/ch a) sum_l (1/2)_l / l! F2(-sigma/2, -l, -l; p/2, q/2; 1, 1) th^{2l} a

The same functions have compact two-variable Horn forms, evaluated at
(th^2 a, th^2 a) by ``zonal_horn`` and ``assoc_horn`` as an independent route.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, ParityError
from .hyper import (
    HornSeriesSpec,
    SeriesResult,
    TailTracker,
    UnitF2,
    horn_eval,
    layout_to_spec,
)
from .orthopoly import Signature
from .scalar import pochhammer

__all__ = [
    "RepParam",
    "AssocIndex",
    "DEFAULT_MAX_T2",
    "check_rapidity",
    "theta",
    "theta_angular",
    "theta_power_expansion",
    "zonal_series",
    "zonal_horn",
    "zonal_horn_spec",
    "zonal_symbols",
    "ZONAL_LAYOUT",
    "ZONAL_LAYOUT_TRANSFORMED",
    "ASSOC_LAYOUT_TRANSFORMED",
    "assoc_prefactor",
    "assoc_series",
    "assoc_horn",
    "assoc_horn_spec",
    "assoc_symbols",
    "ASSOC_LAYOUT",
    "symmetry_check",
    "unitary_pair_check",
]

# th^2(alpha) <= 0.49 sits strictly inside ch(2 alpha) < 3, i.e. th^2 < 1/2.
DEFAULT_MAX_T2 = 0.49


@dataclass(frozen=True)
class RepParam:
    """Degree sigma (any complex number) and parity epsilon of a representation."""

    sigma: complex
    epsilon: int = 0

    def __post_init__(self):
        object.__setattr__(self, "sigma", complex(self.sigma))
        if self.epsilon not in (0, 1):
            raise DomainError(f"parity must be 0 or 1, got {self.epsilon!r}")
        if not (math.isfinite(self.sigma.real) and math.isfinite(self.sigma.imag)):
            raise DomainError("sigma must be finite")

    def is_unitary(self, sig: Signature, atol: float = 1e-12) -> bool:
        """True on the principal line Re sigma = -(p+q-2)/2."""
        return abs(self.sigma.real - sig.unitary_re_sigma) <= atol

    def partner(self, sig: Signature) -> "RepParam":
        """The equivalent representation (2 - p - q - sigma, epsilon)."""
        return RepParam(2 - sig.p - sig.q - self.sigma, self.epsilon)

    def require_even(self):
        if self.epsilon != 0:
            raise ParityError("zonal and associated functions exist only for epsilon = 0")


@dataclass(frozen=True)
class AssocIndex:
    """Labels lam = nu + 2r (q-sphere) and mu = nu + 2s (p-sphere)."""

    nu: int
    s: int
    r: int

    def __post_init__(self):
        if self.nu not in (0, 1):
            raise DomainError(f"nu must be 0 or 1, got {self.nu!r}")
        if self.s < 0 or self.r < 0 or int(self.s) != self.s or int(self.r) != self.r:
            raise DomainError("s and r must be non-negative integers")

    @property
    def lam(self) -> int:
        return self.nu + 2 * self.r

    @property
    def mu(self) -> int:
        return self.nu + 2 * self.s

    @classmethod
    def from_labels(cls, lam: int, mu: int) -> "AssocIndex":
        if lam < 0 or mu < 0:
            raise DomainError("labels must be non-negative")
        if (lam + mu) % 2:
            raise ParityError(f"lam + mu must be even, got {lam} + {mu}")
        nu = lam % 2
        return cls(nu, (mu - nu) // 2, (lam - nu) // 2)

    def swapped(self) -> "AssocIndex":
        return AssocIndex(self.nu, self.r, self.s)

    @property
    def is_zonal(self) -> bool:
        return self.nu == 0 and self.s == 0 and self.r == 0


def check_rapidity(alpha: float, max_t2: float = DEFAULT_MAX_T2) -> float:
    """Validate alpha for the series path and return th^2(alpha)."""
    alpha = float(alpha)
    if not math.isfinite(alpha) or alpha < 0:
        raise DomainError(f"rapidity must be a finite non-negative number, got {alpha!r}")
    if not 0 < max_t2 < 1:
        raise DomainError(f"max_t2 must lie in (0, 1), got {max_t2!r}")
    t2 = math.tanh(alpha) ** 2
    if t2 > max_t2:
        raise DomainError(
            f"th^2(alpha) = {t2:.6g} exceeds the series limit {max_t2:g} "
            f"(ch 2alpha = {math.cosh(2 * alpha):.6g})"
        )
    return t2


# ---------------------------------------------------------------------------
# Theta kernel
# ---------------------------------------------------------------------------


def theta(alpha: float, x, y):
    """1 + (x^2 + y^2) sh^2 a - 2 x y sh a ch a, with x = cos chi, y = cos phi."""
    x_arr = np.asarray(x, dtype=float)
    y_arr = np.asarray(y, dtype=float)
    if np.any(np.abs(x_arr) > 1) or np.any(np.abs(y_arr) > 1):
        raise DomainError("theta needs |x|, |y| <= 1")
    sh, ch = math.sinh(alpha), math.cosh(alpha)
    out = 1.0 + (x_arr * x_arr + y_arr * y_arr) * sh * sh - 2.0 * x_arr * y_arr * sh * ch
    return out if out.ndim else float(out)


def theta_angular(alpha: float, phi, chi):
    """(cos phi ch a - cos chi sh a)^2 + sin^2 phi."""
    phi = np.asarray(phi, dtype=float)
    chi = np.asarray(chi, dtype=float)
    out = (np.cos(phi) * math.cosh(alpha) - np.cos(chi) * math.sinh(alpha)) ** 2 + np.sin(phi) ** 2
    return out if out.ndim else float(out)


def theta_power_expansion(sigma: complex, alpha: float, x: float, y: float, max_l: int = 200) -> complex:
    """Theta^{sigma/2} from its Appell-F2 Taylor expansion in th(alpha).

    Sums the even (nu = 0) and odd (nu = 1, carrying -sigma x y th a) parts
    up to ``max_l``; meant for small alpha and as a check on the kernel.
    """
    from .hyper import appell_f2_terminating

    sigma = complex(sigma)
    t = math.tanh(alpha)
    total = 0j
    for nu in (0, 1):
        lead = (-sigma * x * y * t) ** nu
        coef = 1.0
        acc = 0j
        for l in range(max_l + 1):
            f2 = appell_f2_terminating(nu - sigma / 2, l, l, nu + 0.5, nu + 0.5, x * x, y * y, method="direct")
            acc += coef * f2 * t ** (2 * l)
            coef *= (nu + 0.5 + l) / (l + 1)
        total += lead * acc
    return total / math.cosh(alpha)


# ---------------------------------------------------------------------------
# Zonal functions
# ---------------------------------------------------------------------------


def _trivial(value: complex) -> SeriesResult:
    return SeriesResult(value=complex(value), terms_used=1, tail_estimate=0.0, converged=True)


def zonal_series(
    sig: Signature,
    rep: RepParam,
    alpha: float,
    tol: float = 1e-14,
    max_l: int = 4000,
    max_t2: float = DEFAULT_MAX_T2,
) -> SeriesResult:
    """Zonal function from the l-series with terminating F2 coefficients."""
    rep.require_even()
    t2 = check_rapidity(alpha, max_t2)
    if alpha == 0:
        return _trivial(1.0)
    f2 = UnitF2(-rep.sigma / 2, sig.p / 2, sig.q / 2)
    tracker = TailTracker(tol)
    terms = []
    coef = 1.0
    power = 1.0
    running = 0j
    converged = False
    for l in range(max_l + 1):
        term = coef * power * f2(l, l)
        terms.append(term)
        running += term
        if tracker.push(abs(term), abs(running)):
            converged = True
            break
        coef *= (0.5 + l) / (l + 1)
        power *= t2
    total = complex(math.fsum(z.real for z in terms), math.fsum(z.imag for z in terms))
    return SeriesResult(
        value=total / math.cosh(alpha),
        terms_used=len(terms),
        tail_estimate=tracker.relative_tail(abs(total)),
        converged=converged,
    )


# Row layouts of the zonal Horn series.  "standard": 5F3 over
# 1/2, 1 | -sigma/2 | (q+sigma)/2, (p+sigma)/2 over p/2, q/2 | 1;
# "transformed": an equivalent 4F2 found by the same layout search.
ZONAL_LAYOUT = (
    ((1, 1), (1, 1), (1, 0), (0, 1), (0, 1)),
    ((1, 1), (1, 1), (0, 1)),
)
ZONAL_LAYOUT_TRANSFORMED = (
    ((1, 1), (1, 0), (1, 0), (0, 1)),  # 1/2, -sigma/2, (2-q-sigma)/2, (q+sigma)/2
    ((1, 1), (1, 0)),  # q/2, p/2
)
FORMS = ("standard", "transformed")


def zonal_symbols(p: float, q: float, sigma: complex, form: str = "standard"):
    """Numerator and denominator parameters of the zonal Horn series, in layout order."""
    sigma = complex(sigma)
    if form == "standard":
        return [0.5, 1.0, -sigma / 2, (q + sigma) / 2, (p + sigma) / 2], [p / 2, q / 2, 1.0]
    if form == "transformed":
        return [0.5, -sigma / 2, (2 - q - sigma) / 2, (q + sigma) / 2], [q / 2, p / 2]
    raise ValueError(f"unknown form {form!r}")


def _layout(form: str, standard, transformed):
    if form not in FORMS:
        raise ValueError(f"unknown form {form!r}")
    return standard if form == "standard" else transformed


def zonal_horn_spec(sig: Signature, sigma: complex, x: complex, form: str = "standard") -> HornSeriesSpec:
    num, den = zonal_symbols(sig.p, sig.q, sigma, form)
    return layout_to_spec(*_layout(form, ZONAL_LAYOUT, ZONAL_LAYOUT_TRANSFORMED), num, den, (x, x))


def zonal_horn(
    sig: Signature,
    rep: RepParam,
    alpha: float,
    tol: float = 1e-14,
    max_t2: float = DEFAULT_MAX_T2,
    max_terms: int = 2000,
    form: str = "standard",
) -> SeriesResult:
    """Zonal function from the compact two-variable Horn form at (th^2 a, th^2 a)."""
    rep.require_even()
    t2 = check_rapidity(alpha, max_t2)
    if alpha == 0:
        return _trivial(1.0)
    res = horn_eval(zonal_horn_spec(sig, rep.sigma, t2, form), tol=tol, max_terms=max_terms)
    return SeriesResult(res.value / math.cosh(alpha), res.terms_used, res.tail_estimate, res.converged)


# ---------------------------------------------------------------------------
# Associated functions
# ---------------------------------------------------------------------------


def _sphere_factor(d: int, n: int) -> float:
    """Normalisation carried by one sphere direction of dimension d.

    d >= 3: Gegenbauer label n on the unit-normalised basis;
    d = 2: exponential basis e^{i n phi}, whose value is 1/n!.
    """
    if d == 2:
        return math.exp(-math.lgamma(n + 1))
    if d < 2:
        raise DomainError("associated functions need sphere dimension >= 2")
    log_k = 0.5 * (
        math.log(2 * n + d - 2)
        + math.lgamma(n + d - 2)
        + (2 - d) * math.log(2.0)
        + 0.5 * math.log(math.pi)
        + math.lgamma(d / 2)
        - math.lgamma(n + 1)
        - math.lgamma((d - 1) / 2)
    ) - math.lgamma(n + d / 2)
    return math.exp(log_k)


def assoc_prefactor(sig: Signature, sigma: complex, idx: AssocIndex) -> complex:
    """(-1)^{s+r} 2^{-nu} (-sigma/2)_{s+r+nu} times the two sphere factors.

    Equals 1 at s = r = nu = 0, so that the associated function with trivial
    labels is the zonal function.
    """
    sign = -1.0 if (idx.s + idx.r) % 2 else 1.0
    poch = pochhammer(-complex(sigma) / 2, idx.s + idx.r + idx.nu)
    return sign * 0.5**idx.nu * poch * _sphere_factor(sig.p, idx.mu) * _sphere_factor(sig.q, idx.lam)


def assoc_series(
    sig: Signature,
    rep: RepParam,
    idx: AssocIndex,
    alpha: float,
    tol: float = 1e-14,
    max_l: int = 4000,
    max_t2: float = DEFAULT_MAX_T2,
) -> SeriesResult:
    """Associated function from the l-series

        pref / ch a * sum_{l >= max(s, r)} l! (nu+1/2)_l / ((l-s)! (l-r)!)
            * F2(s+r+nu-sigma/2, s-l, r-l; 2s+nu+p/2, 2r+nu+q/2; 1, 1) th^{2l+nu} a
    """
    sig.require_assoc()
    rep.require_even()
    t2 = check_rapidity(alpha, max_t2)
    pref = assoc_prefactor(sig, rep.sigma, idx)
    if pref == 0:
        return _trivial(0.0)
    if alpha == 0:
        return _trivial(pref if idx.is_zonal else 0.0)
    s, r, nu = idx.s, idx.r, idx.nu
    p, q = sig.p, sig.q
    f2 = UnitF2(s + r + nu - rep.sigma / 2, 2 * s + nu + p / 2, 2 * r + nu + q / 2)
    l0 = max(s, r)
    coef = math.exp(
        math.lgamma(l0 + 1)
        + math.lgamma(nu + 0.5 + l0)
        - math.lgamma(nu + 0.5)
        - math.lgamma(l0 - s + 1)
        - math.lgamma(l0 - r + 1)
    )
    t = math.tanh(alpha)
    power = t ** (2 * l0 + nu)
    tracker = TailTracker(tol)
    terms = []
    running = 0j
    converged = False
    for l in range(l0, l0 + max_l + 1):
        term = coef * power * f2(l - s, l - r)
        terms.append(term)
        running += term
        if tracker.push(abs(term), abs(running)):
            converged = True
            break
        coef *= (l + 1) * (nu + 0.5 + l) / ((l + 1 - s) * (l + 1 - r))
        power *= t2
    total = complex(math.fsum(z.real for z in terms), math.fsum(z.imag for z in terms))
    return SeriesResult(
        value=pref * total / math.cosh(alpha),
        terms_used=len(terms),
        tail_estimate=tracker.relative_tail(abs(total)),
        converged=converged,
    )


# Row layouts of the associated Horn series for s >= r (parameters in symbol order).
ASSOC_LAYOUT = (
    # s+1, s+nu+1/2 | s+r+nu-sigma/2 | (q+sigma)/2, s-r+(p+sigma)/2
    ((1, 1), (1, 1), (1, 0), (0, 1), (0, 1)),
    # 2s+nu+p/2, s+r+nu+q/2 | 1+s-r
    ((1, 1), (1, 1), (0, 1)),
)
ASSOC_LAYOUT_TRANSFORMED = (
    # s+1, s+nu+1/2 | s+r+nu-sigma/2, 1+s-r-(q+sigma)/2 | (q+sigma)/2
    ((1, 1), (1, 1), (1, 0), (1, 0), (0, 1)),
    # s-r+1, s+r+nu+q/2 | 2s+nu+p/2
    ((1, 1), (1, 1), (1, 0)),
)


def assoc_symbols(p: float, q: float, sigma: complex, idx: AssocIndex, form: str = "standard"):
    """Parameters of the associated Horn series (s >= r), in layout order.

    Both forms reduce to the corresponding zonal forms at s = r = nu = 0.
    """
    sigma = complex(sigma)
    s, r, nu = idx.s, idx.r, idx.nu
    if form == "standard":
        num = [s + 1, s + nu + 0.5, s + r + nu - sigma / 2, (q + sigma) / 2, s - r + (p + sigma) / 2]
        den = [2 * s + nu + p / 2, s + r + nu + q / 2, 1 + s - r]
        return num, den
    if form == "transformed":
        num = [s + 1, s + nu + 0.5, s + r + nu - sigma / 2, 1 + s - r - (q + sigma) / 2, (q + sigma) / 2]
        den = [s - r + 1, s + r + nu + q / 2, 2 * s + nu + p / 2]
        return num, den
    raise ValueError(f"unknown form {form!r}")


def assoc_horn_spec(
    sig: Signature, sigma: complex, idx: AssocIndex, x: complex, form: str = "standard"
) -> HornSeriesSpec:
    if idx.s < idx.r:
        raise DomainError("the Horn form is stated for s >= r; swap (p, q, s, r) first")
    num, den = assoc_symbols(sig.p, sig.q, sigma, idx, form)
    return layout_to_spec(*_layout(form, ASSOC_LAYOUT, ASSOC_LAYOUT_TRANSFORMED), num, den, (x, x))


def _assoc_horn_scale(sig: Signature, sigma: complex, idx: AssocIndex) -> complex:
    """s! (nu+1/2)_s ((q+sigma)/2 + r - s)_{s-r} / ((s-r)! (2r+nu+q/2)_{s-r}).

    Both Horn series equal 1 at zero argument, so this is the leading l = s
    term of the l-series without its power of th(alpha).
    """
    s, r, nu = idx.s, idx.r, idx.nu
    d = s - r
    head = math.exp(math.lgamma(s + 1) + math.lgamma(nu + 0.5 + s) - math.lgamma(nu + 0.5) - math.lgamma(d + 1))
    return head * pochhammer((sig.q + complex(sigma)) / 2 + r - s, d) / pochhammer(2 * r + nu + sig.q / 2, d)


def assoc_horn(
    sig: Signature,
    rep: RepParam,
    idx: AssocIndex,
    alpha: float,
    tol: float = 1e-14,
    max_t2: float = DEFAULT_MAX_T2,
    max_terms: int = 2000,
    form: str = "standard",
) -> SeriesResult:
    """Associated function from the Horn form; s < r goes through (p,q,s,r) -> (q,p,r,s)."""
    sig.require_assoc()
    rep.require_even()
    t2 = check_rapidity(alpha, max_t2)
    if idx.s < idx.r:
        sig, idx = sig.swapped(), idx.swapped()
    pref = assoc_prefactor(sig, rep.sigma, idx)
    if pref == 0:
        return _trivial(0.0)
    if alpha == 0:
        return _trivial(pref if idx.is_zonal else 0.0)
    scale = pref * _assoc_horn_scale(sig, rep.sigma, idx)
    if scale == 0:
        return _trivial(0.0)
    res = horn_eval(assoc_horn_spec(sig, rep.sigma, idx, t2, form), tol=tol, max_terms=max_terms)
    lead = math.tanh(alpha) ** (2 * idx.s + idx.nu) / math.cosh(alpha)
    return SeriesResult(scale * lead * res.value, res.terms_used, res.tail_estimate, res.converged)


# ---------------------------------------------------------------------------
# Consistency checks
# ---------------------------------------------------------------------------


def _rel_diff(a: complex, b: complex) -> float:
    scale = max(abs(a), abs(b))
    return 0.0 if scale == 0 else abs(a - b) / scale


def symmetry_check(sig: Signature, rep: RepParam, idx: AssocIndex, alpha: float, **kw) -> float:
    """Relative gap between P^{pq}_{s r} and P^{qp}_{r s}, both from the l-series."""
    a = assoc_series(sig, rep, idx, alpha, **kw).value
    b = assoc_series(sig.swapped(), rep, idx.swapped(), alpha, **kw).value
    return _rel_diff(a, b)


def unitary_pair_check(sig: Signature, rep: RepParam, alpha: float, **kw) -> float:
    """|Z_sigma(alpha) - Z_{2-p-q-sigma}(alpha)| via the zonal series.

    On the principal line the partner degree is conj(sigma), so this is
    |2 Im Z| and doubles as a realness test.
    """
    a = zonal_series(sig, rep, alpha, **kw).value
    b = zonal_series(sig, rep.partner(sig), alpha, **kw).value
    return abs(a - b)
