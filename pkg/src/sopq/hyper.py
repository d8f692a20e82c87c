"""Hypergeometric engines.

* terminating Appell F2 double sums, with an exact Chu-Vandermonde reduction
  at unit arguments (the only place the spherical-function series use them);
* a two-variable Horn series evaluator driven by Pochhammer term ratios;
* an enumerator that recovers the row layout of a Horn series from its
  parameter symbols and a reference function.

Horn series in two variables are written as

    sum_{n1, n2} prod_num (a, u . n) / prod_den (b, v . n) * X1^n1 / n1! * X2^n2 / n2!

where every parameter group carries an integer row ``u`` (or ``v``).  A series
is *balanced* when, for each variable j, sum_num u_j = sum_den v_j + 1.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from .errors import ConvergenceError, DomainError, PoleError, ReconstructionError
from .scalar import is_nonpositive_integer

__all__ = [
    "HornParamGroup",
    "HornSeriesSpec",
    "SeriesResult",
    "appell_f2_terminating",
    "UnitF2",
    "horn_validate",
    "horn_eval",
    "layout_to_spec",
    "reconstruct_horn_layout",
    "require_unique_layout",
    "TailTracker",
]

ROWS = ((1, 0), (0, 1), (1, 1))


@dataclass(frozen=True)
class HornParamGroup:
    row: tuple[int, int]
    params: tuple[complex, ...]

    def __post_init__(self):
        row = tuple(int(u) for u in self.row)
        if len(row) != 2 or min(row) < 0:
            raise DomainError(f"rows must be two non-negative integers, got {self.row!r}")
        object.__setattr__(self, "row", row)
        object.__setattr__(self, "params", tuple(complex(a) for a in self.params))


@dataclass(frozen=True)
class HornSeriesSpec:
    numerator: tuple[HornParamGroup, ...]
    denominator: tuple[HornParamGroup, ...]
    args: tuple[complex, complex]

    def __post_init__(self):
        object.__setattr__(self, "numerator", tuple(self.numerator))
        object.__setattr__(self, "denominator", tuple(self.denominator))
        if len(self.args) != 2:
            raise DomainError("only two-variable Horn series are supported")
        object.__setattr__(self, "args", (complex(self.args[0]), complex(self.args[1])))

    def with_args(self, x1: complex, x2: complex) -> "HornSeriesSpec":
        return HornSeriesSpec(self.numerator, self.denominator, (x1, x2))


@dataclass(frozen=True)
class SeriesResult:
    """Value of a truncated series.

    ``tail_estimate`` is the estimated size of the omitted tail relative to
    ``|value|`` (absolute when the value is zero).
    """

    value: complex
    terms_used: int
    tail_estimate: float
    converged: bool
    meta: dict = field(default_factory=dict, compare=False, repr=False)


class TailTracker:
    """Stopping rule for series whose terms eventually decay geometrically.

    A series is declared converged once ``patience`` consecutive blocks are
    below ``tol`` relative to the running sum and a geometric extrapolation of
    the last blocks stays below ``tol`` as well.
    """

    def __init__(self, tol: float, patience: int = 3):
        self.tol = tol
        self.patience = patience
        self.mags: list[float] = []
        self.tail = math.inf

    def push(self, block_mag: float, total_mag: float) -> bool:
        self.mags.append(block_mag)
        if len(self.mags) < self.patience + 1:
            return False
        recent = self.mags[-self.patience:]
        scale = total_mag if total_mag > 0 else 1.0
        if any(m > self.tol * scale for m in recent):
            return False
        last, before = self.mags[-1], self.mags[-2]
        if last == 0.0:
            self.tail = 0.0 if before == 0.0 else last
        elif before == 0.0:
            return False
        else:
            rho = max(last / before, self.mags[-2] / self.mags[-3] if self.mags[-3] else 0.0)
            if rho >= 1.0:
                return False
            self.tail = last * rho / (1.0 - rho)
        if total_mag > 0:
            self.tail /= total_mag
        return self.tail <= self.tol

    def relative_tail(self, total_mag: float) -> float:
        if math.isfinite(self.tail):
            return self.tail
        if not self.mags:
            return math.inf
        return self.mags[-1] / total_mag if total_mag > 0 else self.mags[-1]


def _csum(values: Iterable[complex]) -> complex:
    vals = list(values)
    return complex(math.fsum(v.real for v in vals), math.fsum(v.imag for v in vals))


# ---------------------------------------------------------------------------
# Appell F2
# ---------------------------------------------------------------------------


class UnitF2:
    """F2(a, -l1, -l2; b1, b2; 1, 1) for fixed (a, b1, b2) and many (l1, l2).

    The inner sum over the longer index is closed by Chu-Vandermonde,
    2F1(c, -n; b; 1) = (b - c)_n / (b)_n.  After splitting the resulting
    Pochhammer symbol every remaining term has a fixed sign pattern, so the
    single sum carries none of the cancellation of the raw double sum.
    """

    def __init__(self, a: complex, b1: complex, b2: complex):
        self.a = complex(a)
        self.b = {1: complex(b1), 2: complex(b2)}
        for b in self.b.values():
            if is_nonpositive_integer(b):
                raise PoleError(f"denominator parameter {b} is a non-positive integer")
        # ratios (b_j - a)_k / (b_j)_k, grown on demand
        self._ratio = {1: [1.0 + 0j], 2: [1.0 + 0j]}

    def _g(self, j: int, k: int) -> complex:
        seq = self._ratio[j]
        b = self.b[j]
        while len(seq) <= k:
            i = len(seq) - 1
            seq.append(seq[-1] * (b - self.a + i) / (b + i))
        return seq[k]

    def __call__(self, l1: int, l2: int) -> complex:
        if l1 < 0 or l2 < 0:
            raise DomainError("termination indices must be non-negative")
        if l1 <= l2:
            j_in, l_out, l_in = 2, l1, l2
        else:
            j_in, l_out, l_in = 1, l2, l1
        b_out, b_in = self.b[3 - j_in], self.b[j_in]
        a = self.a
        coef = 1.0 + 0j
        terms = []
        for m in range(l_out + 1):
            terms.append(coef * self._g(j_in, l_in - m))
            if m == l_out:
                break
            num = (l_out - m) * (a + m) * (1 + a - b_in + m)
            if num == 0:
                break
            den = (m + 1) * (b_out + m) * (b_in + l_in - m - 1)
            if den == 0:
                raise PoleError("denominator Pochhammer vanishes in F2")
            coef *= num / den
        return _csum(terms)


def appell_f2_terminating(
    a: complex,
    l1: int,
    l2: int,
    b1: complex,
    b2: complex,
    x: complex,
    y: complex,
    method: str = "auto",
) -> complex:
    """Terminating Appell F2(a, -l1, -l2; b1, b2; x, y).

    ``method="direct"`` always sums the (l1+1) x (l2+1) double sum;
    ``"unit"`` (chosen automatically at x = y = 1) uses the reduction in
    :class:`UnitF2`.
    """
    if l1 < 0 or l2 < 0 or int(l1) != l1 or int(l2) != l2:
        raise DomainError("termination indices must be non-negative integers")
    unit = complex(x) == 1 and complex(y) == 1
    if method == "unit" or (method == "auto" and unit):
        if not unit:
            raise DomainError("the unit-argument reduction needs x = y = 1")
        return UnitF2(a, b1, b2)(l1, l2)
    if method not in ("auto", "direct"):
        raise ValueError(f"unknown method {method!r}")
    a, b1, b2, x, y = (complex(v) for v in (a, b1, b2, x, y))
    terms = []
    row_head = 1.0 + 0j
    for m in range(l1 + 1):
        term = row_head
        for n in range(l2 + 1):
            terms.append(term)
            if n == l2 or term == 0:
                break
            den = (b2 + n) * (n + 1)
            if den == 0:
                raise PoleError("denominator Pochhammer vanishes in F2")
            term *= (a + m + n) * (n - l2) * y / den
        if m == l1:
            break
        den = (b1 + m) * (m + 1)
        if den == 0:
            if row_head != 0:
                raise PoleError("denominator Pochhammer vanishes in F2")
            break
        row_head *= (a + m) * (m - l1) * x / den
    return _csum(terms)


# ---------------------------------------------------------------------------
# Horn series
# ---------------------------------------------------------------------------


def horn_validate(spec: HornSeriesSpec) -> bool:
    """True iff the per-variable balance sum u_j = sum v_j + 1 holds."""
    for j in (0, 1):
        up = sum(g.row[j] * len(g.params) for g in spec.numerator)
        down = sum(g.row[j] * len(g.params) for g in spec.denominator)
        if up != down + 1:
            return False
    return True


def _step_factor(spec: HornSeriesSpec, n: tuple[int, int], j: int) -> tuple[complex, complex]:
    """Numerator and denominator of term(n + e_j) / term(n)."""
    num = spec.args[j]
    den = complex(n[j] + 1)
    for g in spec.numerator:
        u = g.row[j]
        if u:
            base = g.row[0] * n[0] + g.row[1] * n[1]
            for a in g.params:
                for i in range(u):
                    num *= a + base + i
    for g in spec.denominator:
        v = g.row[j]
        if v:
            base = g.row[0] * n[0] + g.row[1] * n[1]
            for b in g.params:
                for i in range(v):
                    den *= b + base + i
    return num, den


def _advance(spec, term, n, j):
    if term == 0:
        return 0j
    num, den = _step_factor(spec, n, j)
    if den == 0:
        if num == 0:
            return 0j
        raise PoleError(f"denominator Pochhammer vanishes at n = {n}")
    return term * num / den


def _burn_in(spec: HornSeriesSpec) -> int:
    weight = 0.0
    for g in spec.numerator + spec.denominator:
        weight += sum(abs(a) for a in g.params) * sum(g.row)
    return 5 + int(math.ceil(weight))


def _asymptotic_ratio(mags: list[float]) -> float:
    """Limit rho of the shell ratio, fitted as r_N = rho (1 + k/N) to the last two ratios.

    Polynomial prefactors make shells of a convergent series grow for a while
    (e.g. (N+1) x^N with x close to 1); the fit separates that from true growth.
    """
    n = len(mags) - 1
    if n < 3 or mags[-3] == 0 or mags[-2] == 0:
        return math.inf
    r_now, r_before = mags[-1] / mags[-2], mags[-2] / mags[-3]
    rho_k = (r_before - r_now) / (1 / (n - 1) - 1 / n)
    return r_now - rho_k / n


def horn_eval(spec: HornSeriesSpec, tol: float = 1e-13, max_terms: int = 2000) -> SeriesResult:
    """Sum a balanced two-variable Horn series shell by shell.

    Shell N collects the terms with n1 + n2 = N; ``max_terms`` bounds the
    number of shells.  Terms are generated by ratio recurrences, so exact
    zeros of numerator Pochhammer symbols terminate the series exactly.
    """
    if not horn_validate(spec):
        raise DomainError("Horn series is not balanced")
    if tol <= 0:
        raise ValueError("tol must be positive")
    shell = [1.0 + 0j]
    parts = [1.0 + 0j]
    tracker = TailTracker(tol, patience=2)
    tracker.mags.append(1.0)
    burn_in = _burn_in(spec)
    growth = 0
    terms_used = 1
    converged = False
    total = 1.0 + 0j
    for big_n in range(1, max_terms + 1):
        new = [_advance(spec, shell[n1], (n1, big_n - 1 - n1), 1) for n1 in range(big_n)]
        new.append(_advance(spec, shell[-1], (big_n - 1, 0), 0))
        terms_used += len(new)
        mag = math.fsum(abs(t) for t in new)
        prev_mag = tracker.mags[-1]
        parts.append(_csum(new))
        total = _csum(parts)
        shell = new
        if mag > prev_mag and big_n > burn_in and _asymptotic_ratio(tracker.mags + [mag]) >= 1.0:
            growth += 1
            if growth >= 3:
                raise ConvergenceError(
                    f"Horn series terms grow for 3 consecutive diagonals (N = {big_n})"
                )
        else:
            growth = 0
        if tracker.push(mag, abs(total)):
            converged = True
            break
    return SeriesResult(
        value=total,
        terms_used=terms_used,
        tail_estimate=tracker.relative_tail(abs(total)),
        converged=converged,
    )


def layout_to_spec(
    num_rows: Sequence[tuple[int, int]],
    den_rows: Sequence[tuple[int, int]],
    num_params: Sequence[complex],
    den_params: Sequence[complex],
    args: tuple[complex, complex],
) -> HornSeriesSpec:
    """Group parameters sharing a row into one HornParamGroup (rows sorted)."""

    def group(rows, params):
        buckets: dict[tuple[int, int], list[complex]] = {}
        for row, a in zip(rows, params):
            buckets.setdefault(tuple(row), []).append(a)
        return tuple(HornParamGroup(row, tuple(ps)) for row, ps in sorted(buckets.items()))

    return HornSeriesSpec(group(num_rows, num_params), group(den_rows, den_params), args)


def _balanced(num_rows, den_rows) -> bool:
    return all(
        sum(u[j] for u in num_rows) == sum(v[j] for v in den_rows) + 1 for j in (0, 1)
    )


def _swap_key(num_rows, den_rows):
    flip = lambda rows: tuple((r[1], r[0]) for r in rows)  # noqa: E731
    return min((tuple(num_rows), tuple(den_rows)), (flip(num_rows), flip(den_rows)))


def reconstruct_horn_layout(
    probes: Sequence[tuple[Sequence[complex], Sequence[complex], complex, complex]],
    tol: float = 1e-9,
    rows: Sequence[tuple[int, int]] = ROWS,
) -> list[tuple[tuple[tuple[int, int], ...], tuple[tuple[int, int], ...]]]:
    """Find every balanced row layout reproducing a reference function.

    Each probe is ``(num_params, den_params, X, reference)``: the parameter
    symbols evaluated at one probe point, the common argument X (the series
    is evaluated at (X, X)) and the reference value.  Layouts differing only
    by exchanging the two variables are reported once.
    """
    if not probes:
        raise ValueError("need at least one probe")
    n_num, n_den = len(probes[0][0]), len(probes[0][1])
    found = {}
    for num_rows in itertools.product(rows, repeat=n_num):
        for den_rows in itertools.product(rows, repeat=n_den):
            if not _balanced(num_rows, den_rows):
                continue
            key = _swap_key(num_rows, den_rows)
            if key in found:
                continue
            ok = True
            for num_params, den_params, x, ref in probes:
                spec = layout_to_spec(num_rows, den_rows, num_params, den_params, (x, x))
                try:
                    res = horn_eval(spec, tol=tol * 1e-3, max_terms=400)
                except (ConvergenceError, PoleError, OverflowError, ZeroDivisionError):
                    ok = False
                    break
                if not (res.converged and abs(res.value - ref) <= tol * max(abs(ref), 1e-300)):
                    ok = False
                    break
            if ok:
                found[key] = (tuple(num_rows), tuple(den_rows))
    return list(found.values())


def require_unique_layout(layouts, what: str = "series"):
    if len(layouts) != 1:
        raise ReconstructionError(
            f"{len(layouts)} balanced Horn layouts reproduce the {what}; expected exactly one"
        )
    return layouts[0]
