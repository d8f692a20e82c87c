"""Command-line front end.

Subcommands: ``zonal``, ``assoc``, ``verify``, ``scan``, ``gram``, ``expand``.
Tables go to stdout (or ``--out``) as CSV or JSON with 17 significant digits;
summaries and diagnostics go to stderr.

Exit status: 0 success, 2 usage, 3 domain, 4 convergence, 5 verification failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .errors import ConvergenceError, DomainError
from .oracle import BasisLabel, QuadratureConfig, expansion_residual, gram_matrix, quad_assoc, quad_zonal
from .orthopoly import Signature
from .sfcore import (
    DEFAULT_MAX_T2,
    AssocIndex,
    RepParam,
    assoc_horn,
    assoc_series,
    zonal_horn,
    zonal_series,
)

EXIT_OK, EXIT_USAGE, EXIT_DOMAIN, EXIT_CONVERGENCE, EXIT_FAIL = 0, 2, 3, 4, 5

COLUMNS = ["p", "q", "sigma_re", "sigma_im", "nu", "s", "r", "alpha", "method", "value_re", "value_im", "terms", "tail"]
METHODS = ("series", "horn", "quadrature")


def default_tol() -> float:
    return float(os.environ.get("SOPQ_TOL", "1e-13"))


def default_nodes() -> int:
    return int(os.environ.get("SOPQ_NODES", "96"))


def fmt(x) -> str:
    if isinstance(x, float):
        return format(x + 0.0, ".17g")  # + 0.0 folds -0.0 into 0
    return str(x)


def parse_complex(text: str) -> complex:
    """Accept ``a+bi``, ``a-bi``, ``bi``, ``a`` (``j`` works too)."""
    try:
        return complex(text.strip().replace(" ", "").replace("i", "j"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a complex number: {text!r}") from None


def parse_grid(text: str) -> list[float]:
    """``x``, ``x1,x2,...`` or an inclusive range ``start:stop:step``."""
    try:
        if ":" in text:
            start, stop, step = (float(v) for v in text.split(":"))
            if step <= 0 or stop < start:
                raise ValueError
            count = int(math.floor((stop - start) / step + 1e-9)) + 1
            return [round(start + k * step, 12) for k in range(count)]
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad grid {text!r}; use x, x1,x2 or start:stop:step") from None


@dataclass
class RunConfig:
    command: str
    sig: Signature
    sigma: complex = 0j
    epsilon: int = 0
    idx: AssocIndex | None = None
    alpha_grid: list[float] = field(default_factory=list)
    tol: float = 1e-13
    output_format: str = "csv"
    quadrature: QuadratureConfig = field(default_factory=QuadratureConfig)
    method: str = "series"
    max_t2: float = DEFAULT_MAX_T2
    jobs: int = 1
    series_tol: float = 1e-13


def _evaluate(cfg: RunConfig, sigma: complex, alpha: float, method: str) -> dict:
    rep = RepParam(sigma, cfg.epsilon)
    if method == "quadrature":
        value = quad_zonal(cfg.sig, rep, alpha, cfg.quadrature) if cfg.idx is None else quad_assoc(
            cfg.sig, rep, cfg.idx, alpha, cfg.quadrature
        )
        terms, tail, ok = 0, 0.0, True
    else:
        kw = dict(tol=cfg.series_tol, max_t2=cfg.max_t2)
        if cfg.idx is None:
            res = (zonal_series if method == "series" else zonal_horn)(cfg.sig, rep, alpha, **kw)
        else:
            res = (assoc_series if method == "series" else assoc_horn)(cfg.sig, rep, cfg.idx, alpha, **kw)
        value, terms, tail, ok = res.value, res.terms_used, res.tail_estimate, res.converged
    idx = cfg.idx or AssocIndex(0, 0, 0)
    row = dict(
        p=cfg.sig.p, q=cfg.sig.q, sigma_re=sigma.real, sigma_im=sigma.imag,
        nu=idx.nu, s=idx.s, r=idx.r, alpha=float(alpha), method=method,
        value_re=complex(value).real, value_im=complex(value).imag, terms=terms, tail=float(tail),
    )
    return {"row": row, "converged": ok}


def _map(cfg: RunConfig, fn, items):
    if cfg.jobs > 1:
        with ThreadPoolExecutor(max_workers=cfg.jobs) as pool:
            return list(pool.map(fn, items))
    return [fn(it) for it in items]


def render(rows: list[dict], columns: list[str], output_format: str) -> str:
    if output_format == "json":
        # json writes floats with repr, the shortest string that round-trips the double
        data = [{k: (r[k] + 0.0 if isinstance(r[k], float) else r[k]) for k in columns} for r in rows]
        return json.dumps(data, indent=1) + "\n"
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for r in rows:
        writer.writerow([fmt(r[k]) for k in columns])
    return buf.getvalue()


def _cmd_values(cfg: RunConfig, sigmas: list[complex]) -> tuple[list[dict], int]:
    points = [(s, a) for s in sigmas for a in cfg.alpha_grid]
    results = _map(cfg, lambda pt: _evaluate(cfg, pt[0], pt[1], cfg.method), points)
    status = EXIT_OK if all(r["converged"] for r in results) else EXIT_CONVERGENCE
    if status:
        print("warning: some points did not converge", file=sys.stderr)
    return [r["row"] for r in results], status


def _cmd_verify(cfg: RunConfig) -> tuple[list[dict], int]:
    def triple(alpha):
        return [_evaluate(cfg, cfg.sigma, alpha, m) for m in METHODS]

    results = _map(cfg, triple, cfg.alpha_grid)
    rows, worst = [], 0.0
    all_converged = True
    for trip in results:
        vals = [complex(t["row"]["value_re"], t["row"]["value_im"]) for t in trip]
        scale = max(abs(v) for v in vals)
        dev = 0.0 if scale == 0 else max(abs(a - b) for a in vals for b in vals) / scale
        worst = max(worst, dev)
        all_converged &= all(t["converged"] for t in trip)
        rows.extend(t["row"] for t in trip)
    passed = worst <= cfg.tol and all_converged
    print(f"verify: max relative deviation {worst:.3e}, tol {cfg.tol:.1e}: {'PASS' if passed else 'FAIL'}", file=sys.stderr)
    return rows, EXIT_OK if passed else EXIT_FAIL


def _cmd_gram(cfg: RunConfig, lmax: int) -> tuple[list[dict], int]:
    p, q = cfg.sig.p, cfg.sig.q
    lam_range = range(-lmax, lmax + 1) if q == 2 else range(lmax + 1)
    mu_range = range(-lmax, lmax + 1) if p == 2 else range(lmax + 1)
    labels = [BasisLabel(l, m) for l in lam_range for m in mu_range]
    G = gram_matrix(cfg.sig, labels, cfg.quadrature)
    rows = []
    for i, a in enumerate(labels):
        for j, b in enumerate(labels):
            rows.append(dict(i=i, j=j, lam_i=a.lam, mu_i=a.mu, lam_j=b.lam, mu_j=b.mu,
                             value_re=float(G[i, j].real), value_im=float(G[i, j].imag)))
    off = float(np.max(np.abs(G - np.diag(np.diag(G))))) if len(labels) > 1 else 0.0
    diag = float(np.max(np.abs(np.diag(G) - 1)))
    print(f"gram: {len(labels)} labels, max off-diagonal {off:.3e}, max diagonal error {diag:.3e}", file=sys.stderr)
    return rows, EXIT_OK


def _cmd_expand(cfg: RunConfig, orders: list[int], n_samples: int, seed: int) -> tuple[list[dict], int]:
    rng = np.random.default_rng(seed)
    phi_hi = 2 * math.pi if cfg.sig.q == 2 else math.pi
    chi_hi = 2 * math.pi if cfg.sig.p == 2 else math.pi
    samples = np.column_stack([rng.uniform(0, phi_hi, n_samples), rng.uniform(0, chi_hi, n_samples)])
    rep = RepParam(cfg.sigma, cfg.epsilon)
    rows = []
    for alpha in cfg.alpha_grid:
        for n in orders:
            res = expansion_residual(cfg.sig, rep, alpha, n, samples, tol=cfg.tol)
            rows.append(dict(p=cfg.sig.p, q=cfg.sig.q, sigma_re=cfg.sigma.real, sigma_im=cfg.sigma.imag,
                             alpha=float(alpha), N=n, residual=res))
    return rows, EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sopq", description="Spherical functions of SO(p,q).")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp, sigma_required=True, alpha_default=None):
        sp.add_argument("--p", type=int, required=True)
        sp.add_argument("--q", type=int, required=True)
        if sigma_required is not None:
            sp.add_argument("--sigma", type=parse_complex, required=sigma_required, default=0j)
        sp.add_argument("--epsilon", type=int, default=0, choices=(0, 1))
        sp.add_argument("--alpha", type=parse_grid, required=alpha_default is None, default=alpha_default)
        sp.add_argument("--tol", type=float, default=None)
        sp.add_argument("--nodes", type=int, default=None, help="quadrature nodes per direction")
        sp.add_argument("--max-t2", type=float, default=DEFAULT_MAX_T2, help="series guard on th^2(alpha)")
        sp.add_argument("--format", choices=("csv", "json"), default="csv")
        sp.add_argument("--out", default=None)
        sp.add_argument("--jobs", type=int, default=1)

    def index(sp, required):
        for name in ("nu", "s", "r"):
            sp.add_argument(f"--{name}", type=int, required=required, default=None)

    sp = sub.add_parser("zonal", help="zonal function Z_sigma(alpha)")
    common(sp)
    sp.add_argument("--method", choices=METHODS, default="series")

    sp = sub.add_parser("assoc", help="associated function for labels (nu, s, r)")
    common(sp)
    index(sp, True)
    sp.add_argument("--method", choices=METHODS, default="series")

    sp = sub.add_parser("verify", help="series vs Horn vs quadrature")
    common(sp)
    index(sp, False)

    sp = sub.add_parser("scan", help="sweep a sigma and alpha grid")
    common(sp, sigma_required=None)
    index(sp, False)
    sp.add_argument("--sigma-re", type=parse_grid, required=True)
    sp.add_argument("--sigma-im", type=parse_grid, default=[0.0])
    sp.add_argument("--method", choices=METHODS, default="series")

    sp = sub.add_parser("gram", help="Gram matrix of the canonical basis")
    common(sp, sigma_required=None, alpha_default=[0.0])
    sp.add_argument("--lmax", type=int, default=4)

    sp = sub.add_parser("expand", help="expansion residual against the truncation order")
    common(sp)
    sp.add_argument("--orders", type=lambda s: [int(v) for v in s.split(",")], default=[4, 8, 16])
    sp.add_argument("--samples", type=int, default=32)
    sp.add_argument("--seed", type=int, default=0)
    return parser


def config_from_args(args) -> RunConfig:
    sig = Signature(args.p, args.q)
    idx = None
    if getattr(args, "nu", None) is not None or getattr(args, "s", None) is not None or getattr(args, "r", None) is not None:
        idx = AssocIndex(args.nu or 0, args.s or 0, args.r or 0)
    tol = args.tol if args.tol is not None else (1e-8 if args.command == "verify" else default_tol())
    if not tol > 0:
        raise DomainError("tol must be positive")
    nodes = args.nodes or default_nodes()
    if not args.alpha:
        raise DomainError("alpha grid must be non-empty")
    return RunConfig(
        command=args.command,
        sig=sig,
        sigma=getattr(args, "sigma", 0j),
        epsilon=args.epsilon,
        idx=idx,
        alpha_grid=args.alpha,
        tol=tol,
        output_format=args.format,
        quadrature=QuadratureConfig(nodes_x=nodes, nodes_y=nodes),
        method=getattr(args, "method", "series"),
        max_t2=args.max_t2,
        jobs=max(1, args.jobs),
        series_tol=default_tol() if args.command == "verify" else tol,
    )


def run(args) -> int:
    cfg = config_from_args(args)
    columns = COLUMNS
    if cfg.command in ("zonal", "assoc"):
        rows, status = _cmd_values(cfg, [cfg.sigma])
    elif cfg.command == "scan":
        sigmas = [complex(re, im) for re in args.sigma_re for im in args.sigma_im]
        rows, status = _cmd_values(cfg, sigmas)
    elif cfg.command == "verify":
        rows, status = _cmd_verify(cfg)
    elif cfg.command == "gram":
        rows, status = _cmd_gram(cfg, args.lmax)
        columns = ["i", "j", "lam_i", "mu_i", "lam_j", "mu_j", "value_re", "value_im"]
    else:
        rows, status = _cmd_expand(cfg, args.orders, args.samples, args.seed)
        columns = ["p", "q", "sigma_re", "sigma_im", "alpha", "N", "residual"]
    text = render(rows, columns, cfg.output_format)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return status


# Flags whose values may start with "-" (argparse would read "-1.5+2i" as an option).
SIGNED_FLAGS = ("--sigma", "--sigma-re", "--sigma-im", "--alpha")


def _join_signed(argv: list[str]) -> list[str]:
    out: list[str] = []
    it = iter(argv)
    for tok in it:
        if tok in SIGNED_FLAGS:
            nxt = next(it, None)
            out.append(tok if nxt is None else f"{tok}={nxt}")
        else:
            out.append(tok)
    return out


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        args = parser.parse_args(_join_signed(argv))
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return run(args)
    except DomainError as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except ConvergenceError as exc:
        print(f"convergence error: {exc}", file=sys.stderr)
        return EXIT_CONVERGENCE


if __name__ == "__main__":
    sys.exit(main())
