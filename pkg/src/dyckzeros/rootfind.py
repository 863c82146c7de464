"""All complex zeros of D_{2n}(a) at certified multiprecision.

The trivial zero a = 0 is divided out exactly, the remaining n - 1 zeros
are found together by Aberth-Ehrlich iteration in Gauss-Seidel order, and
every zero is then checked against a scaled residual bound.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import gmpy2
from gmpy2 import mpc, mpfr

from .exactpf import PartitionPolynomial

__all__ = [
    "PrecisionPolicy",
    "ZeroSet",
    "NonConvergence",
    "NoComplexZero",
    "find_zeros",
    "leading_zero",
    "kth_zero_by_argument",
    "upper_zeros",
    "scaled_residual",
    "zeros_csv_rows",
    "polish_zero",
]


class NonConvergence(RuntimeError):
    def __init__(self, iterations: int, worst_residual: float):
        super().__init__(
            f"no convergence after {iterations} sweeps (worst scaled residual {worst_residual:.3e})"
        )
        self.iterations = iterations
        self.worst_residual = worst_residual


class NoComplexZero(ValueError):
    pass


@dataclass(frozen=True)
class PrecisionPolicy:
    base_bits: int = 128
    per_n_bits: float = 2.5

    def bits_for(self, n: int) -> int:
        return max(self.base_bits, math.ceil(self.per_n_bits * n) + self.base_bits)

    def doubled(self) -> "PrecisionPolicy":
        return PrecisionPolicy(2 * self.base_bits, 2 * self.per_n_bits)


@dataclass(frozen=True)
class ZeroSet:
    """Zeros of one D_{2n}, sorted by principal argument then modulus.

    ``zeros`` holds the n - 1 non-trivial zeros; the trivial zero at the
    origin is kept apart in ``trivial``.
    """

    n: int
    zeros: tuple[mpc, ...]
    residuals: tuple[float, ...]
    precision_bits: int
    trivial: mpc = field(default_factory=lambda: mpc(0))
    sweeps: int = 0

    @property
    def all_zeros(self) -> tuple[mpc, ...]:
        return (self.trivial,) + self.zeros

    def as_complex(self) -> list[complex]:
        return [complex(z) for z in self.zeros]

    @property
    def bound(self) -> mpfr:
        return mpfr(2) ** (-self.precision_bits / 2)


def _arg_key(z: mpc):
    return (float(gmpy2.phase(z)) if z != 0 else 0.0, float(abs(z)))


def scaled_residual(coeffs, z: mpc) -> mpfr:
    """|p(z)| / (max|c| * max(1, |z|)**deg)."""
    acc = mpc(coeffs[-1])
    for c in reversed(coeffs[:-1]):
        acc = acc * z + c
    deg = len(coeffs) - 1
    norm = mpfr(max(abs(c) for c in coeffs))
    return abs(acc) / (norm * max(mpfr(1), abs(z)) ** deg)


def _initial_guesses(coeffs, deg: int) -> list[mpc]:
    radius = (1 + float(max(abs(c) for c in coeffs))) ** (1.0 / deg)
    offset = 0.4 / deg + 0.1
    return [mpc(radius * cmath.exp(1j * (2 * math.pi * k / deg + offset))) for k in range(deg)]


def _aberth(coeffs, bits: int, max_sweeps: int) -> tuple[list[mpc], int]:
    deg = len(coeffs) - 1
    cs = [mpc(c) for c in coeffs]
    ds = [mpc(k * coeffs[k]) for k in range(1, deg + 1)]
    mags = [mpfr(abs(c)) for c in coeffs]
    # backward error |p(z)| / sum|c_k||z|^k; much stricter than the reported residual
    target = mpfr(2) ** (-(3 * bits) // 4)
    z = _initial_guesses(coeffs, deg)
    backward = [mpfr("inf")] * deg
    settled = 0
    for sweep in range(1, max_sweeps + 1):
        for i in range(deg):
            zi = z[i]
            az = abs(zi)
            p = cs[deg]
            scale = mags[deg]
            for k in range(deg - 1, -1, -1):
                p = p * zi + cs[k]
                scale = scale * az + mags[k]
            dp = ds[deg - 1]
            for c in reversed(ds[: deg - 1]):
                dp = dp * zi + c
            backward[i] = abs(p) / scale
            if p == 0:
                continue
            ratio = p / dp
            repel = mpc(0)
            for j in range(deg):
                if j != i:
                    repel += 1 / (zi - z[j])
            z[i] = zi - ratio / (1 - ratio * repel)
        if max(backward) <= target:
            settled += 1
            if settled >= 2:
                return z, sweep
    raise NonConvergence(max_sweeps, float(max(backward)))


def _symmetrize(roots: list[mpc], tol: mpfr) -> list[mpc]:
    """Snap near-real zeros onto the axis and average conjugate pairs."""
    real, upper, lower = [], [], []
    for r in roots:
        if abs(r.imag) <= tol * max(mpfr(1), abs(r)):
            real.append(mpc(r.real, 0))
        elif r.imag > 0:
            upper.append(r)
        else:
            lower.append(r)
    if len(upper) != len(lower):
        raise NonConvergence(0, float("nan"))
    out = list(real)
    remaining = list(lower)
    for u in upper:
        j = min(range(len(remaining)), key=lambda k: abs(remaining[k].conjugate() - u))
        mate = remaining.pop(j)
        if abs(mate.conjugate() - u) > tol * max(mpfr(1), abs(u)):
            raise NonConvergence(0, float(abs(mate.conjugate() - u)))
        avg = (u + mate.conjugate()) / 2
        out.append(avg)
        out.append(avg.conjugate())
    return out


def find_zeros(
    poly: PartitionPolynomial,
    policy: PrecisionPolicy | None = None,
    max_sweeps: int | None = None,
) -> ZeroSet:
    """Certified zeros of ``poly`` at the precision ``policy`` dictates.

    Raises NonConvergence if the scaled residual bound 2**(-bits/2) is not
    reached within the sweep cap; retrying with a larger policy usually helps.
    """
    n = poly.n
    if n < 1:
        raise ValueError("D_0 = 1 has no zeros")
    policy = policy or PrecisionPolicy()
    bits = policy.bits_for(n)
    coeffs = poly.coeffs
    if coeffs[0] != 0:
        raise ValueError("expected a vanishing constant term")
    reduced = coeffs[1:]
    with gmpy2.context(gmpy2.get_context(), precision=bits):
        if len(reduced) == 1:
            roots, sweeps = [], 0
        else:
            roots, sweeps = _aberth(reduced, bits, max_sweeps or 200 + 2 * n)
        bound = mpfr(2) ** (-bits / 2)
        roots = _symmetrize(roots, bound)
        roots.sort(key=_arg_key)
        residuals = [scaled_residual(coeffs, r) for r in roots]
        worst = max(residuals, default=mpfr(0))
        if worst > bound:
            raise NonConvergence(sweeps, float(worst))
    return ZeroSet(
        n=n,
        zeros=tuple(roots),
        residuals=tuple(float(r) for r in residuals),
        precision_bits=bits,
        trivial=mpc(0),
        sweeps=sweeps,
    )


def polish_zero(
    poly: PartitionPolynomial,
    seed,
    policy: PrecisionPolicy | None = None,
    max_iter: int = 200,
) -> tuple[mpc, float]:
    """Newton iteration on the exact polynomial from ``seed``.

    Returns the zero and its scaled residual.  Cheaper than ``find_zeros``
    when a single zero is wanted and a good seed is known, but it does not
    say which zero was found.
    """
    policy = policy or PrecisionPolicy()
    bits = policy.bits_for(poly.n)
    coeffs = poly.coeffs
    ds = [k * coeffs[k] for k in range(1, len(coeffs))]
    with gmpy2.context(gmpy2.get_context(), precision=bits):
        z = mpc(complex(seed))
        tol = mpfr(2) ** (-bits // 2)
        bound = mpfr(2) ** (-bits / 2)
        for it in range(1, max_iter + 1):
            p = mpc(coeffs[-1])
            for c in reversed(coeffs[:-1]):
                p = p * z + c
            dp = mpc(ds[-1])
            for c in reversed(ds[:-1]):
                dp = dp * z + c
            if dp == 0:
                break
            step = p / dp
            z -= step
            if abs(step) <= tol * max(mpfr(1), abs(z)):
                res = scaled_residual(coeffs, z)
                if res <= bound:
                    return z, float(res)
                break
        raise NonConvergence(it, float(scaled_residual(coeffs, z)))


def upper_zeros(zs: ZeroSet) -> list[mpc]:
    """Zeros with argument strictly inside (0, pi), by ascending argument."""
    return [z for z in zs.zeros if z.imag > 0]


def leading_zero(zs: ZeroSet) -> mpc:
    upper = upper_zeros(zs)
    if not upper:
        raise NoComplexZero(f"D_{2 * zs.n} has only real zeros")
    return upper[0]


def kth_zero_by_argument(zs: ZeroSet, k: int) -> mpc:
    upper = upper_zeros(zs)
    if not 1 <= k <= len(upper):
        raise IndexError(f"k={k} out of range; D_{2 * zs.n} has {len(upper)} upper zeros")
    return upper[k - 1]


def _fmt(x: mpfr, digits: int = 25) -> str:
    return gmpy2.mpfr(x).__format__(f".{digits}g") if x != 0 else "0"


def zeros_csv_rows(zs: ZeroSet, digits: int = 25) -> list[list[str]]:
    """Rows ``n, index, re, im, residual`` including the trivial zero, by argument."""
    entries = [(zs.trivial, 0.0)] + list(zip(zs.zeros, zs.residuals))
    entries.sort(key=lambda e: _arg_key(e[0]))
    rows = []
    for idx, (z, r) in enumerate(entries):
        rows.append([str(zs.n), str(idx), _fmt(z.real, digits), _fmt(z.imag, digits), f"{r:.3e}"])
    return rows
