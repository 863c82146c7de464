"""Singularity structure of the generating function in the complex a-plane.

D(t, a) = 2 / (2 - a(1 - sqrt(1 - 4t))) has a square-root singularity at
t = 1/4 and, when |a - 1| >= 1, a simple pole at t = (a - 1)/a**2.  Which
one is closest to the origin switches across the outer lobe of the
limacon |(a - 1)/a**2| = 1/4.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass

__all__ = [
    "Branch",
    "Lobe",
    "SingularityClassification",
    "LimaconPoint",
    "classify",
    "complex_free_energy",
    "limacon_point",
    "limacon_limit",
    "limacon_modulus",
    "a_plus",
    "A_of",
    "distance_to_outer_lobe",
    "distance_to_inner_lobe",
    "sample_limacon",
    "OUTER_WINDOW",
]

SQRT2 = math.sqrt(2.0)
OUTER_WINDOW = (math.pi / 4, 7 * math.pi / 4)


class Branch(enum.Enum):
    SQUARE_ROOT = "SquareRoot"
    SIMPLE_POLE = "SimplePole"
    COALESCED = "Coalesced"


class Lobe(enum.Enum):
    OUTER = "Outer"
    INNER = "Inner"


@dataclass(frozen=True)
class SingularityClassification:
    a: complex
    t_c: complex
    branch: Branch


@dataclass(frozen=True)
class LimaconPoint:
    phi: float
    point: complex
    lobe: Lobe


def limacon_modulus(a: complex) -> float:
    """|(a - 1)/a**2|; equals 1/4 on the limacon."""
    return abs((a - 1) / (a * a))


def classify(a: complex) -> SingularityClassification:
    a = complex(a)
    if a == 0:
        raise ValueError("a = 0 has no dominant singularity (D(t, 0) = 1)")
    if a == 2:
        return SingularityClassification(a, 0.25 + 0j, Branch.COALESCED)
    pole = (a - 1) / (a * a)
    if abs(a - 1) >= 1 and abs(pole) < 0.25:
        return SingularityClassification(a, pole, Branch.SIMPLE_POLE)
    return SingularityClassification(a, 0.25 + 0j, Branch.SQUARE_ROOT)


def complex_free_energy(a: complex) -> complex:
    """-log t_c(a) with the principal logarithm."""
    return -cmath.log(classify(a).t_c)


def _lobe(phi: float) -> Lobe:
    lo, hi = OUTER_WINDOW
    return Lobe.OUTER if lo <= phi < hi else Lobe.INNER


def limacon_point(phi: float) -> LimaconPoint:
    if not 0 <= phi < 2 * math.pi:
        raise ValueError(f"phi must lie in [0, 2pi), got {phi}")
    c = math.cos(phi)
    r = 2 * SQRT2 - 4 * c
    return LimaconPoint(phi, complex(2 + r * c, r * math.sin(phi)), _lobe(phi))


def limacon_limit(rho: float) -> complex:
    """Limit of a''_+ along k = floor(rho*n); traces the outer lobe for rho in (0, 1).

    The factor multiplying the second square root is the principal root of
    e^{2 rho pi i}, as in a''_+ itself.  For rho <= 1/2 that is e^{rho pi i};
    past 1/2 it flips sign, which keeps the point on the outer lobe.
    """
    if not 0 < rho < 1:
        raise ValueError(f"rho must lie in (0, 1), got {rho}")
    s = cmath.exp(2j * math.pi * rho)
    return 2 * s + 2 * cmath.sqrt(s) * cmath.sqrt(s - 1)


def A_of(a: complex) -> complex:
    return a * a / (a - 1)


def a_plus(A: complex) -> complex:
    """Root of a**2/(a - 1) = A that lands on the outer lobe when |A| = 4.

    Principal square roots; the A-plane is cut along the positive real axis.
    """
    A = complex(A)
    if A == 0:
        raise ValueError("A = 0 has no finite pre-image")
    return 0.5 * (A + cmath.sqrt(A) * cmath.sqrt(A - 4))


def _golden(f, lo: float, hi: float, tol: float = 1e-10) -> tuple[float, float]:
    inv = (math.sqrt(5) - 1) / 2
    a, b = lo, hi
    c = b - inv * (b - a)
    d = a + inv * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - inv * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + inv * (b - a)
            fd = f(d)
    x = 0.5 * (a + b)
    return x, f(x)


def _curve(phi: float) -> complex:
    c = math.cos(phi)
    r = 2 * SQRT2 - 4 * c
    return complex(2 + r * c, r * math.sin(phi))


def _distance(z: complex, lo: float, hi: float, samples: int) -> float:
    z = complex(z)
    step = (hi - lo) / samples
    grid = [lo + i * step for i in range(samples + 1)]
    dists = [abs(z - _curve(p)) for p in grid]
    i = min(range(len(dists)), key=dists.__getitem__)
    left = grid[max(i - 1, 0)]
    right = grid[min(i + 1, samples)]
    _, best = _golden(lambda p: abs(z - _curve(p)), left, right)
    return min(best, dists[i])


def distance_to_outer_lobe(z: complex, samples: int = 2048) -> float:
    """Euclidean distance from z to the outer lobe (sampling plus golden-section)."""
    return _distance(z, *OUTER_WINDOW, samples)


def distance_to_inner_lobe(z: complex, samples: int = 2048) -> float:
    # inner lobe is phi in (-pi/4, pi/4) once wrapped
    return _distance(z, -math.pi / 4, math.pi / 4, samples)


def sample_limacon(samples: int) -> list[LimaconPoint]:
    """``samples`` points on each lobe.

    The outer lobe starts at the meeting point phi = pi/4 (a = 2) and, for
    even ``samples``, passes through phi = pi (a = -2 - 2*sqrt(2)).
    """
    if samples < 1:
        raise ValueError("need at least one sample per lobe")
    lo, hi = OUTER_WINDOW
    outer = [lo + j * (hi - lo) / samples for j in range(samples)]
    inner = [(hi + j * (2 * math.pi - (hi - lo)) / samples) % (2 * math.pi) for j in range(samples)]
    return [limacon_point(p) for p in outer + inner]
