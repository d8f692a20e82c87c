"""Numerical evidence for the formula corrections listed in ERRATA.md.

Each ``*_rows`` function returns the evidence grid for one correction; the
acceptance suite imports them and re-checks the claims.  Run the script to
print all grids as markdown tables:

    python scripts/errata_evidence.py
"""

from __future__ import annotations

import math

import numpy as np

from sopq.hyper import horn_eval, horn_validate, layout_to_spec, reconstruct_horn_layout
from sopq.oracle import BasisLabel, gram_matrix, quad_assoc, quad_zonal
from sopq.orthopoly import Signature
from sopq.scalar import pochhammer
from sopq.sfcore import (
    ASSOC_LAYOUT,
    ZONAL_LAYOUT,
    AssocIndex,
    RepParam,
    _assoc_horn_scale,
    assoc_prefactor,
    assoc_series,
    assoc_symbols,
    zonal_series,
    zonal_symbols,
)


def rel(a: complex, b: complex) -> float:
    scale = max(abs(a), abs(b))
    return 0.0 if scale == 0 else abs(a - b) / scale


ZONAL_POINTS = [
    ((3, 2), -1.5 + 2j, 0.4),
    ((4, 3), -2.5, 0.3),
    ((5, 5), -4 + 1j, 0.6),
    ((2, 2), -2.0, 0.5),
    ((3, 3), 1.5, 0.7),
    ((5, 2), -0.8 - 1.2j, 0.8),
]


def zonal_sign_rows():
    """F2 first parameter -sigma/2 (adopted) against +sigma/2."""
    out = []
    for (p, q), sigma, a in ZONAL_POINTS:
        sig = Signature(p, q)
        ref = quad_zonal(sig, RepParam(sigma), a)
        minus = zonal_series(sig, RepParam(sigma), a).value
        plus = zonal_series(sig, RepParam(-sigma), a).value  # F2(+sigma/2, ...)
        out.append(dict(p=p, q=q, sigma=sigma, alpha=a, rel_minus=rel(minus, ref), rel_plus=rel(plus, ref)))
    return out


def _q2_quad(p: int, sigma: complex, a: float, extra: int, n: int = 160):
    """Normalised q = 2 integral with x-weight (1-x^2)^{(p-3+extra)/2}, and the
    value at alpha = 0 of the same integral under Gamma(p/2)/(pi^{3/2} Gamma((p-1)/2))."""
    nodes, weights = np.polynomial.legendre.leggauss(n)
    chi = 0.5 * math.pi * (nodes + 1)
    w_chi = 0.5 * math.pi * weights * np.sin(chi) ** (p - 2 + extra)
    phi = 2 * math.pi * np.arange(n) / n
    w_phi = np.full(n, 2 * math.pi / n)
    th = (np.cos(phi)[:, None] * math.cosh(a) - np.cos(chi)[None, :] * math.sinh(a)) ** 2 + np.sin(phi)[:, None] ** 2
    vals = np.exp(0.5 * sigma * np.log(th))
    mass = w_phi.sum() * w_chi.sum()
    const = math.gamma(p / 2) / (math.pi**1.5 * math.gamma((p - 1) / 2))
    return complex(w_phi @ vals @ w_chi) / mass, const * mass


def q2_weight_rows():
    """x-weight exponent (p-3)/2 (adopted) against (p-2)/2, and the alpha = 0 value of the prefactor."""
    out = []
    for p, sigma, a in [(3, -1.5 + 2j, 0.4), (4, -2.0, 0.6), (5, -2.5 + 1j, 0.8), (6, 1.0, 0.5)]:
        series = zonal_series(Signature(p, 2), RepParam(sigma), a).value
        adopted, z0_adopted = _q2_quad(p, sigma, a, 0)
        variant, z0_variant = _q2_quad(p, sigma, a, 1)
        out.append(dict(p=p, sigma=sigma, alpha=a, rel_adopted=rel(adopted, series), rel_variant=rel(variant, series),
                        z0_adopted=z0_adopted, z0_variant=z0_variant))
    return out


# zonal Horn rows with the denominator 1 on the row of -sigma/2
ZONAL_VARIANT_ROWS = (((1, 1), (1, 1), (0, 1), (1, 0), (1, 0)), ((1, 1), (1, 1), (0, 1)))

ASSOC_POINTS = [
    ((3, 3), -2.0 + 1j, AssocIndex(0, 1, 1), 0.3),
    ((4, 3), -3.0, AssocIndex(0, 2, 1), 0.4),
    ((3, 2), -1.5 + 1j, AssocIndex(1, 2, 0), 0.5),
    ((4, 3), -1.2 + 0.3j, AssocIndex(1, 2, 1), 0.6),
    ((5, 2), -2.2, AssocIndex(1, 1, 0), 0.7),
]


def _assoc_reference(sig, sigma, idx, a):
    """Horn-series value implied by the l-series (the Horn series is 1 at zero argument)."""
    val = assoc_series(sig, RepParam(sigma), idx, a).value
    lead = math.tanh(a) ** (2 * idx.s + idx.nu) / math.cosh(a)
    return val / (assoc_prefactor(sig, sigma, idx) * _assoc_horn_scale(sig, sigma, idx) * lead)


def _assoc_symbols_without_nu(p, q, sigma, idx):
    num, den = assoc_symbols(p, q, sigma, idx)
    den[1] -= idx.nu
    return num, den


def horn_rows():
    """Balance and agreement of the adopted Horn layouts against the variants."""
    out = []
    num, den = zonal_symbols(3, 2, -2.0)
    out.append(dict(case="zonal rows, variant", balanced=horn_validate(layout_to_spec(*ZONAL_VARIANT_ROWS, num, den, (0.1, 0.1))), max_rel=math.nan))
    worst = 0.0
    for (p, q), sigma, a in ZONAL_POINTS:
        t2 = math.tanh(a) ** 2
        num, den = zonal_symbols(p, q, sigma)
        spec = layout_to_spec(*ZONAL_LAYOUT, num, den, (t2, t2))
        worst = max(worst, rel(horn_eval(spec, tol=1e-15).value / math.cosh(a), zonal_series(Signature(p, q), RepParam(sigma), a).value))
    out.append(dict(case="zonal rows, adopted", balanced=True, max_rel=worst))
    for label, symbols in [("assoc, denominator s+r+q/2", _assoc_symbols_without_nu), ("assoc, denominator s+r+nu+q/2", assoc_symbols)]:
        worst = 0.0
        for (p, q), sigma, idx, a in ASSOC_POINTS:
            sig = Signature(p, q)
            t2 = math.tanh(a) ** 2
            spec = layout_to_spec(*ASSOC_LAYOUT, *symbols(p, q, sigma, idx), (t2, t2))
            worst = max(worst, rel(horn_eval(spec, tol=1e-15).value, _assoc_reference(sig, sigma, idx, a)))
        out.append(dict(case=label, balanced=True, max_rel=worst))
    return out


def assoc_layout_search_counts():
    """Number of balanced layouts reproducing the associated series, per symbol set."""
    counts = {}
    for label, symbols in [("without nu", _assoc_symbols_without_nu), ("with nu", assoc_symbols)]:
        probes = []
        for (p, q), sigma, idx, a in ASSOC_POINTS[:3]:
            num, den = symbols(p, q, sigma, idx)
            probes.append((num, den, math.tanh(a) ** 2, _assoc_reference(Signature(p, q), sigma, idx, a)))
        counts[label] = len(reconstruct_horn_layout(probes))
    return counts


def gram_rows():
    """Orthonormality of the basis with the normalisation constants used in the package."""
    out = []
    for p, q, lmax in [(3, 3, 4), (4, 3, 4), (5, 4, 3), (3, 2, 4), (5, 2, 3), (2, 2, 4)]:
        sig = Signature(p, q)
        lams = range(-lmax, lmax + 1) if q == 2 else range(lmax + 1)
        mus = range(-lmax, lmax + 1) if p == 2 else range(lmax + 1)
        labels = [BasisLabel(l, m) for l in lams for m in mus]
        G = gram_matrix(sig, labels)
        off = float(np.max(np.abs(G - np.diag(np.diag(G)))))
        diag = float(np.max(np.abs(np.diag(G) - 1)))
        out.append(dict(p=p, q=q, labels=len(labels), max_off=off, max_diag=diag))
    return out


def assoc_constant_rows():
    """Series (with the sphere factors) against quadrature (with the integral constants)."""
    out = []
    for (p, q), sigma, idx, a in ASSOC_POINTS + [((5, 4), -3.5 + 0.5j, AssocIndex(1, 2, 1), 0.4)]:
        sig = Signature(p, q)
        s = assoc_series(sig, RepParam(sigma), idx, a).value
        qd = quad_assoc(sig, RepParam(sigma), idx, a)
        out.append(dict(p=p, q=q, lam=idx.lam, mu=idx.mu, alpha=a, rel=rel(s, qd)))
    return out


def product_form(p, q, sigma, idx, two_power, sign_power):
    """Gamma-product form of the associated prefactor with a chosen power of two and sign."""
    s, r, nu = idx.s, idx.r, idx.nu
    mu, lam = 2 * s + nu, 2 * r + nu
    lg = math.lgamma
    a1 = 2**two_power * pochhammer(-sigma / 2, s + r + nu) * math.exp(
        0.5 * (math.log(math.pi) + lg(mu + p - 1) + lg(lam + q - 1) + lg(p / 2) + lg(q / 2)
               - lg(mu + 1) - lg(lam + 1) - lg((p - 1) / 2) - lg((q - 1) / 2))
        - lg(mu + p / 2) - lg(lam + q / 2)
    )
    a2 = math.sqrt((mu + (p - 2) / 2) * (lam + (q - 2) / 2) / ((mu + p - 2) * (lam + q - 2)))
    return (-1) ** sign_power * a1 * a2


def prefactor_rows():
    """Ratio of the package prefactor to the product form with 2^{nu - 3(p+q)/2} and (-1)^{s+r+nu}."""
    out = []
    sigma = -1.3 + 0.4j
    for p, q in [(3, 3), (4, 3), (5, 4), (6, 5)]:
        for idx in [AssocIndex(0, 0, 0), AssocIndex(1, 0, 0), AssocIndex(0, 2, 1), AssocIndex(1, 2, 1)]:
            ours = assoc_prefactor(Signature(p, q), sigma, idx)
            variant = product_form(p, q, sigma, idx, idx.nu - 3 * (p + q) / 2, idx.s + idx.r + idx.nu)
            adopted = product_form(p, q, sigma, idx, 3 - idx.nu - (p + q) / 2, idx.s + idx.r)
            ratio = ours / variant
            out.append(dict(p=p, q=q, nu=idx.nu, s=idx.s, r=idx.r, log2_ratio=math.log2(abs(ratio)),
                            sign=int(round(ratio.real / abs(ratio))), rel_adopted=rel(ours, adopted)))
    return out


def _table(rows):
    keys = list(rows[0])
    lines = ["| " + " | ".join(keys) + " |", "|" + "---|" * len(keys)]
    for r in rows:
        cells = []
        for k in keys:
            v = r[k]
            if isinstance(v, float):
                cells.append(f"{v:.3e}" if (v and (abs(v) < 1e-3 or abs(v) >= 1e4)) else f"{v:.6g}")
            else:
                cells.append(str(v))
        lines.append("| " + " | ".join(cells) + " |")
    return "\n".join(lines)


def main():
    sections = [
        ("Zonal series sign", zonal_sign_rows()),
        ("q = 2 zonal weight and prefactor", q2_weight_rows()),
        ("Horn layouts", horn_rows()),
        ("Basis normalisation (Gram matrices)", gram_rows()),
        ("Associated integral constants", assoc_constant_rows()),
        ("Associated prefactor", prefactor_rows()),
    ]
    for title, rows in sections:
        print(f"### {title}\n")
        print(_table(rows))
        print()
    print("### Layout search counts\n")
    for k, v in assoc_layout_search_counts().items():
        print(f"- associated symbols {k}: {v} layout(s)")


if __name__ == "__main__":
    main()
