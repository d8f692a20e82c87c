"""Complex gamma-function kernel: log-gamma, Pochhammer symbols, gamma ratios.

Everything here operates on plain Python ``complex`` values.  ``log_gamma``
delegates to :func:`scipy.special.loggamma` (principal branch) and only adds
the pole handling the rest of the package relies on.
"""

from __future__ import annotations

import cmath
import math
from typing import Iterable

from scipy import special

from .errors import PoleError

__all__ = ["log_gamma", "pochhammer", "gamma_ratio", "is_nonpositive_integer"]

# Products up to this length keep integer zeros exact; longer ones go through log-gamma.
PRODUCT_THRESHOLD = 64


def is_nonpositive_integer(z: complex) -> bool:
    z = complex(z)
    return z.imag == 0.0 and z.real <= 0.0 and z.real == math.floor(z.real)


def log_gamma(z: complex) -> complex:
    """Principal branch of ln Gamma(z).

    Raises PoleError at z = 0, -1, -2, ...
    """
    z = complex(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise ValueError(f"non-finite argument {z!r}")
    if is_nonpositive_integer(z):
        raise PoleError(f"Gamma has a pole at z = {z.real:g}")
    return complex(special.loggamma(z))


def pochhammer(a: complex, n: int) -> complex:
    """Rising factorial (a)_n = a (a+1) ... (a+n-1), with (a)_0 = 1."""
    if n < 0 or int(n) != n:
        raise ValueError(f"Pochhammer index must be a non-negative integer, got {n!r}")
    n = int(n)
    a = complex(a)
    if n <= PRODUCT_THRESHOLD:
        result = 1.0 + 0.0j
        for k in range(n):
            result *= a + k
        return result
    if is_nonpositive_integer(a):
        m = int(-a.real)
        if m < n:
            return 0.0j
        # a + n - 1 <= 0 as well: reflect onto positive arguments.
        return (-1) ** n * pochhammer(1 - a - n, n)
    return cmath.exp(log_gamma(a + n) - log_gamma(a))


def _integer_gap(a: complex, b: complex) -> int | None:
    d = complex(a) - complex(b)
    if d.imag == 0 and d.real == round(d.real) and abs(d.real) <= PRODUCT_THRESHOLD:
        return int(d.real)
    return None


def gamma_ratio(num: Iterable[complex], den: Iterable[complex]) -> complex:
    """prod Gamma(num) / prod Gamma(den), evaluated in logarithms.

    Safe for ratios whose individual gammas overflow, e.g.
    Gamma(150.5) / Gamma(149.5) = 149.5.  Numerator and denominator arguments
    that differ by a small integer are paired and reduced to a Pochhammer
    product, which avoids cancelling two large log-gammas.
    """
    num = [complex(z) for z in num]
    den = [complex(z) for z in den]
    for z in den:
        if is_nonpositive_integer(z):
            raise PoleError(f"Gamma has a pole at z = {z.real:g}")
    factor = 1.0 + 0.0j
    rest_num = []
    for a in num:
        for j, b in enumerate(den):
            n = _integer_gap(a, b)
            if n is not None and not is_nonpositive_integer(a):
                factor *= pochhammer(b, n) if n >= 0 else 1 / pochhammer(a, -n)
                del den[j]
                break
        else:
            rest_num.append(a)
    total = 0.0j
    for z in rest_num:
        total += log_gamma(z)
    for z in den:
        total -= log_gamma(z)
    return factor * cmath.exp(total)
