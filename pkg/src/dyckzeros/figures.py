"""Static SVG figures of zeros, approximations and the limacon.

Each figure is rebuilt from freshly computed data.  Axis windows follow
the published plots so the two can be overlaid.  Output is byte-stable:
the SVG id salt is fixed and no date is embedded.
"""

from __future__ import annotations

import io
import math

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from . import asymptotics as asy  # noqa: E402
from .exactpf import partition_polynomial  # noqa: E402
from .rootfind import find_zeros, polish_zero  # noqa: E402
from .singularity import Lobe, limacon_limit, limacon_point  # noqa: E402

__all__ = ["FIGURES", "render", "scatter_svg", "leading_zero_series", "sixth_zero_series"]

FIGURES = ("2", "3", "4", "5L", "5R", "6", "7")

# real and imaginary windows
WINDOWS = {
    "2": ((-5.0, 3.0), (-3.0, 3.0)),
    "3": ((-40 / 7, 5.0), (-5.0, 5.0)),
    "4": ((-40 / 7, 5.0), (-5.0, 5.0)),
    "5L": ((-4.0, 4.0), (-4.0, 4.0)),
    "5R": ((-5.0, 4.0), (-5.0, 5.0)),
    "6": ((-2.5, 3.5), (-0.5, 4.5)),
    "7": ((-2.5, 3.5), (-0.5, 4.0)),
}

# below this the full solver is cheap; above it Newton polish from a good seed
_FULL_SOLVE_MAX_N = 40

_RC = {
    "svg.hashsalt": "dyckzeros",
    "svg.fonttype": "none",
    "font.size": 9,
}


def _curve(samples: int = 720) -> tuple[list[float], list[float], list[float], list[float]]:
    ox, oy, ix, iy = [], [], [], []
    for j in range(samples + 1):
        phi = (2 * math.pi * j / samples) % (2 * math.pi)
        pt = limacon_point(phi)
        if pt.lobe is Lobe.OUTER:
            ox.append(pt.point.real)
            oy.append(pt.point.imag)
        else:
            ix.append(pt.point.real)
            iy.append(pt.point.imag)
    return ox, oy, ix, iy


def _new(fig_id: str, title: str):
    fig, ax = plt.subplots(figsize=(6, 5))
    (x0, x1), (y0, y1) = WINDOWS[fig_id]
    ax.set_xlim(x0, x1)
    ax.set_ylim(y0, y1)
    ax.set_aspect("equal")
    ax.axhline(0, color="0.6", lw=0.5)
    ax.axvline(0, color="0.6", lw=0.5)
    ax.set_xlabel("Re a")
    ax.set_ylabel("Im a")
    ax.set_title(title)
    return fig, ax


def _limacon(ax, inner: bool = True) -> None:
    ox, oy, ix, iy = _curve()
    ax.plot(ox, oy, color="black", lw=0.8)
    if inner:
        ax.plot(ix, iy, color="tab:blue", lw=0.8)


def _dots(ax, zs, **kw) -> None:
    zs = list(zs)
    if zs:
        ax.scatter([z.real for z in zs], [z.imag for z in zs], **kw)


def _exact(ax, zs, color) -> None:
    _dots(ax, zs, s=10, color=color, marker="o")


def _approx(ax, zs, color, marker="o") -> None:
    if marker == "o":
        _dots(ax, zs, s=18, facecolors="none", edgecolors=color, marker=marker, linewidths=0.7)
    else:
        _dots(ax, zs, s=18, color=color, marker=marker, linewidths=0.7)


def _to_svg(fig) -> bytes:
    buf = io.BytesIO()
    fig.savefig(buf, format="svg", metadata={"Date": None})
    plt.close(fig)
    return buf.getvalue()


def _beta_solutions(n: int, beta) -> list[complex]:
    out = []
    for k in range(n):
        seed = asy.a_double_prime(k, n, asy.Branch.PLUS).value
        try:
            out.append(asy.refine_zero_beta(k, n, beta, seed).value)
        except (asy.DriftedBranch, asy.NonConvergence, ZeroDivisionError):
            continue
    return out


def leading_zero_series(ns) -> list[tuple[int, complex]]:
    """Exact zero of smallest non-negative argument, skipping the trivial one."""
    out = []
    for n in ns:
        if n < 2:
            continue
        poly = partition_polynomial(n)
        if n <= _FULL_SOLVE_MAX_N:
            zs = [complex(z) for z in find_zeros(poly).zeros if z.imag >= 0]
            out.append((n, min(zs, key=lambda z: math.atan2(z.imag, z.real))))
        else:
            seed = complex(asy.leading_zero_prediction(n, 2))
            out.append((n, complex(polish_zero(poly, seed)[0])))
    return out


def sixth_zero_series(ns) -> list[tuple[int, complex, complex]]:
    """(n, exact zero, a''_+) with k = floor(n/6); the zero is polished from a''_+."""
    out = []
    for n in ns:
        approx = asy.a_double_prime(n // 6, n, asy.Branch.PLUS).value
        poly = partition_polynomial(n)
        if n <= _FULL_SOLVE_MAX_N:
            exact = min((complex(z) for z in find_zeros(poly).zeros), key=lambda z: abs(z - approx))
        else:
            exact = complex(polish_zero(poly, approx)[0])
        out.append((n, exact, approx))
    return out


def _fig2():
    fig, ax = _new("2", "limacon |(a-1)/a^2| = 1/4")
    _limacon(ax)
    return fig


def _fig3():
    fig, ax = _new("3", "exact zeros and beta = 4 solutions, n = 8, 16, 32, 64")
    _limacon(ax)
    for n, color in zip((8, 16, 32, 64), ("tab:cyan", "tab:orange", "tab:red", "tab:blue")):
        _exact(ax, find_zeros(partition_polynomial(n)).as_complex(), color)
        _approx(ax, _beta_solutions(n, 4), color)
    return fig


def _fig4():
    fig, ax = _new("4", "beta in {4, -4, 4i, -4i}, n = 16, 32, 64")
    _limacon(ax)
    for n, color in zip((16, 32, 64), ("tab:orange", "tab:red", "tab:blue")):
        _exact(ax, find_zeros(partition_polynomial(n)).as_complex(), color)
        for beta in (4, -4, 4j, -4j):
            _approx(ax, _beta_solutions(n, beta), color)
    return fig


def _fig5_left():
    fig, ax = _new("5L", "a''+ (circles) and a''- (crosses), n = 16, 32")
    for n, color in zip((16, 32), ("tab:orange", "tab:red")):
        _exact(ax, find_zeros(partition_polynomial(n)).as_complex(), color)
        _approx(ax, [asy.a_double_prime(k, n, asy.Branch.PLUS).value for k in range(n)], color)
        _approx(ax, [asy.a_double_prime(k, n, asy.Branch.MINUS).value for k in range(n)], color, "x")
    return fig


def _fig5_right():
    fig, ax = _new("5R", "a''+ for n = 16 ... 1024")
    _limacon(ax, inner=False)
    colors = ("tab:orange", "gold", "tab:red", "maroon", "tab:brown", "royalblue", "tab:blue")
    for i, color in enumerate(colors):
        n = 16 * 2**i
        pts = [asy.a_double_prime(k, n, asy.Branch.PLUS).value for k in range(n)]
        _dots(ax, pts, s=2, color=color)
    return fig


def _fig6():
    fig, ax = _new("6", "k = floor(n/6), 10 <= n <= 150")
    _limacon(ax, inner=False)
    series = sixth_zero_series(range(10, 151))
    _exact(ax, [e for _, e, _ in series], "tab:red")
    _approx(ax, [a for _, _, a in series], "tab:blue")
    target = limacon_limit(1 / 6)
    ax.scatter([target.real], [target.imag], s=60, color="tab:red")
    return fig


def _fig7():
    fig, ax = _new("7", "leading zeros and 2 + c1/sqrt(n) + c2/n")
    _exact(ax, [z for _, z in leading_zero_series(range(1, 151))], "tab:red")
    _approx(ax, [complex(asy.leading_zero_prediction(n, 2)) for n in range(6, 151)], "tab:red")
    return fig


_BUILDERS = {
    "2": _fig2,
    "3": _fig3,
    "4": _fig4,
    "5L": _fig5_left,
    "5R": _fig5_right,
    "6": _fig6,
    "7": _fig7,
}


def render(fig_id: str) -> bytes:
    """SVG bytes for one of ``FIGURES``."""
    key = str(fig_id).upper()
    if key not in _BUILDERS:
        raise ValueError(f"unknown figure {fig_id!r}; choose from {', '.join(FIGURES)}")
    with plt.rc_context(_RC):
        return _to_svg(_BUILDERS[key]())


def scatter_svg(points, title: str = "", curve: bool = True, window=None) -> bytes:
    """Generic scatter of complex points, optionally over the limacon."""
    with plt.rc_context(_RC):
        fig, ax = plt.subplots(figsize=(6, 5))
        ax.set_aspect("equal")
        ax.axhline(0, color="0.6", lw=0.5)
        ax.axvline(0, color="0.6", lw=0.5)
        if window:
            (x0, x1), (y0, y1) = window
            ax.set_xlim(x0, x1)
            ax.set_ylim(y0, y1)
        if curve:
            _limacon(ax)
        _exact(ax, points, "tab:red")
        ax.set_title(title)
        return _to_svg(fig)
