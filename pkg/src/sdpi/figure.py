"""BSC contraction curves: chi-square, order-2 Renyi and TV against the flip probability.

All three curves are closed forms at the uniform input law; the order-2
curve is cross-checked against the face search at eleven sentinel points.
"""
from dataclasses import dataclass

import numpy as np

from .contraction import SearchConfig, eta2_boundary, eta2_bsc_sup
from .io import fmt
from .probability import AdmissiblePair, Channel, Distribution

SENTINELS = tuple(k / 10 for k in range(11))
SENTINEL_TOL = 1e-6
ORDER_TOL = 1e-15
CSV_HEADER = "eps,eta_chi2,eta_2,eta_tv"
LABELS = ("η_χ²(BSC(ε))", "η₂(BSC(ε))", "η_TV(BSC(ε))")
COLORS = ("#1f77b4", "#d62728", "#2ca02c")


class FigureCheckError(RuntimeError):
    """A curve failed its cross-check; indicates an estimator bug."""


@dataclass(frozen=True)
class FigureRow:
    eps: float
    eta_chi2: float
    eta_2: float
    eta_tv: float


def bsc_row(eps):
    return FigureRow(eps, (1.0 - 2.0 * eps) ** 2, eta2_bsc_sup(eps), abs(1.0 - 2.0 * eps))


def check_sentinels(cfg=None):
    """Compare the closed-form order-2 curve with the face search; return the worst gap."""
    worst = 0.0
    for eps in SENTINELS:
        pair = AdmissiblePair(Distribution([0.5, 0.5]), Channel.bsc(eps))
        got = eta2_boundary(pair, cfg or SearchConfig()).value
        gap = abs(got - eta2_bsc_sup(eps))
        if gap > SENTINEL_TOL:
            raise FigureCheckError(f"face search gives {got!r} at eps={eps}, closed form {eta2_bsc_sup(eps)!r}")
        worst = max(worst, gap)
    return worst


def figure_curves(grid_points, check=True):
    """Rows at ``eps = i / (grid_points - 1)``.

    Raises FigureCheckError if the ordering chi2 <= eta_2 <= TV fails on a
    row or a sentinel disagrees with the face search.
    """
    if grid_points < 2:
        raise ValueError("need at least 2 grid points")
    rows = [bsc_row(i / (grid_points - 1)) for i in range(grid_points)]
    for r in rows:
        if not (r.eta_chi2 <= r.eta_2 + ORDER_TOL and r.eta_2 <= r.eta_tv + ORDER_TOL):
            raise FigureCheckError(f"curve ordering violated at eps={r.eps!r}")
    if check:
        check_sentinels()
    return rows


def to_csv(rows):
    lines = [CSV_HEADER]
    lines.extend(",".join(fmt(x) for x in (r.eps, r.eta_chi2, r.eta_2, r.eta_tv)) for r in rows)
    return "\n".join(lines) + "\n"


def to_svg(rows, width=640, height=420):
    left, right, top, bottom = 60, 180, 20, 50
    pw, ph = width - left - right, height - top - bottom

    def xy(x, y):
        return f"{left + x * pw:.3f},{top + (1.0 - y) * ph:.3f}"

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="12">',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>',
        f'<rect x="{left}" y="{top}" width="{pw}" height="{ph}" fill="none" stroke="black"/>',
    ]
    for t in np.linspace(0.0, 1.0, 6):
        x = left + t * pw
        y = top + (1.0 - t) * ph
        out.append(f'<line x1="{x:.3f}" y1="{top + ph}" x2="{x:.3f}" y2="{top + ph + 5}" stroke="black"/>')
        out.append(f'<text x="{x:.3f}" y="{top + ph + 18}" text-anchor="middle">{t:.1f}</text>')
        out.append(f'<line x1="{left - 5}" y1="{y:.3f}" x2="{left}" y2="{y:.3f}" stroke="black"/>')
        out.append(f'<text x="{left - 8}" y="{y + 4:.3f}" text-anchor="end">{t:.1f}</text>')
    out.append(f'<text x="{left + pw / 2:.1f}" y="{height - 10}" text-anchor="middle">ε</text>')
    series = (
        [r.eta_chi2 for r in rows],
        [r.eta_2 for r in rows],
        [r.eta_tv for r in rows],
    )
    for k, (ys, label, color) in enumerate(zip(series, LABELS, COLORS)):
        pts = " ".join(xy(r.eps, y) for r, y in zip(rows, ys))
        out.append(f'<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{pts}"/>')
        ly = top + 20 + 20 * k
        out.append(f'<line x1="{left + pw + 15}" y1="{ly}" x2="{left + pw + 40}" y2="{ly}" '
                   f'stroke="{color}" stroke-width="1.5"/>')
        out.append(f'<text x="{left + pw + 45}" y="{ly + 4}">{label}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"

