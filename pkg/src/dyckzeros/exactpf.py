"""Exact partition function of adsorbing Dyck paths.

D_{2n}(a) is the generating polynomial of Dyck paths of length 2n by
number of visits to the axis (the starting vertex does not count).  It is
built here by three independent routes:

* the closed sum over (a - 1)^l with binomial weights,
* the first-return convolution recurrence,
* a brute dynamic program over (step, height, visits).

All three use exact integers.  ``evaluate`` lifts a polynomial to a
complex binary float of requested precision.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import gmpy2
from gmpy2 import mpc, mpfr

__all__ = [
    "VisitDistribution",
    "PartitionPolynomial",
    "catalan",
    "partition_polynomial",
    "partition_polynomial_recurrence",
    "visit_counts_dp",
    "evaluate",
    "evaluate_exact",
    "free_energy_real",
    "format_polynomial",
    "parse_polynomial",
]

DP_LIMIT = 200


@dataclass(frozen=True)
class VisitDistribution:
    n: int
    counts: tuple[int, ...]

    @property
    def total(self) -> int:
        return sum(self.counts)


@dataclass(frozen=True)
class PartitionPolynomial:
    """Coefficients of D_{2n}(a); ``coeffs[v]`` multiplies a**v."""

    n: int
    coeffs: tuple[int, ...]

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, a):
        return evaluate_exact(self, a)


def catalan(n: int) -> int:
    if n < 0:
        raise ValueError(f"catalan needs n >= 0, got {n}")
    return math.comb(2 * n, n) // (n + 1)


def _check_n(n: int) -> None:
    if not isinstance(n, int) or n < 0:
        raise ValueError(f"half-length must be a non-negative integer, got {n!r}")


@lru_cache(maxsize=256)
def partition_polynomial(n: int) -> PartitionPolynomial:
    """Expand sum_l (2l+1)/(n+l+1) * C(2n, n+l) * (a-1)^l in powers of a."""
    _check_n(n)
    shifted = []
    for ell in range(n + 1):
        q, r = divmod((2 * ell + 1) * math.comb(2 * n, n + ell), n + ell + 1)
        if r:
            raise ArithmeticError(
                f"non-integral prefactor at n={n}, l={ell} (remainder {r})"
            )
        shifted.append(q)
    # Horner in x = a - 1; each step multiplies the running polynomial by (a - 1)
    coeffs = [shifted[n]]
    for ell in range(n - 1, -1, -1):
        nxt = [0] * (len(coeffs) + 1)
        for v, c in enumerate(coeffs):
            nxt[v + 1] += c
            nxt[v] -= c
        nxt[0] += shifted[ell]
        coeffs = nxt
    return PartitionPolynomial(n, tuple(coeffs))


@lru_cache(maxsize=8)
def _recurrence_table(n: int) -> tuple[tuple[int, ...], ...]:
    cat = [catalan(j) for j in range(n)]
    table: list[list[int]] = [[1]]
    for m in range(1, n + 1):
        acc = [0] * (m + 1)
        for j in range(1, m + 1):
            weight = cat[j - 1]
            for v, c in enumerate(table[m - j]):
                acc[v + 1] += weight * c
        table.append(acc)
    return tuple(tuple(row) for row in table)


def partition_polynomial_recurrence(n: int) -> PartitionPolynomial:
    """First-return decomposition: D_{2m} = sum_j a * C_{j-1} * D_{2(m-j)}."""
    _check_n(n)
    return PartitionPolynomial(n, _recurrence_table(n)[n])


def visit_counts_dp(n: int) -> VisitDistribution:
    """Count Dyck paths of length 2n by visits with a (height, visits) DP."""
    _check_n(n)
    if n > DP_LIMIT:
        raise ValueError(f"visit_counts_dp is capped at n <= {DP_LIMIT}")
    # state[h][v] = number of prefixes ending at height h with v visits
    state = [[0] * (n + 1) for _ in range(n + 1)]
    state[0][0] = 1
    for step in range(2 * n):
        new = [[0] * (n + 1) for _ in range(n + 1)]
        remaining = 2 * n - step - 1
        for h in range(n + 1):
            row = state[h]
            if not any(row):
                continue
            if h + 1 <= min(n, remaining):
                up = new[h + 1]
                for v, c in enumerate(row):
                    if c:
                        up[v] += c
            if h >= 1:
                if h == 1:
                    down = new[0]
                    for v, c in enumerate(row):
                        if c:
                            down[v + 1] += c
                else:
                    down = new[h - 1]
                    for v, c in enumerate(row):
                        if c:
                            down[v] += c
        state = new
    return VisitDistribution(n, tuple(state[0]))


def _as_mpc(a, bits: int) -> mpc:
    if isinstance(a, mpc):
        return mpc(a, precision=bits)
    if hasattr(a, "_mpc_") or hasattr(a, "_mpf_"):
        # mpmath values: go through exact dyadic components
        import mpmath

        z = mpmath.mpc(a)
        return mpc(
            _mpf_to_mpfr(z.real, bits), _mpf_to_mpfr(z.imag, bits), precision=bits
        )
    z = complex(a)
    return mpc(z, precision=bits)


def _mpf_to_mpfr(x, bits: int) -> mpfr:
    sign, man, exp, _ = x._mpf_
    if not man:
        return mpfr(0, bits)
    with gmpy2.context(gmpy2.get_context(), precision=max(bits, int(man).bit_length())):
        val = mpfr(int(man)) * mpfr(2) ** exp
    return mpfr(-val if sign else val, bits)


def _horner(coeffs, z: mpc, bits: int) -> tuple[mpc, mpfr]:
    """Return p(z) and a running rounding-error bound at ``bits`` precision."""
    with gmpy2.context(gmpy2.get_context(), precision=bits):
        az = abs(z)
        acc = mpc(coeffs[-1])
        mag = mpfr(abs(acc))
        for c in reversed(coeffs[:-1]):
            acc = acc * z + c
            mag = mag * az + abs(acc)
        u = mpfr(2) ** (1 - bits)
        return acc, 8 * u * mag


def _dyadic_parts(x: mpfr) -> tuple[int, int]:
    man, exp = x.as_mantissa_exp()
    return int(man), int(exp)


def _exact_numerators(poly: PartitionPolynomial, z: mpc) -> tuple[int, int, int]:
    """Integers (re, im, s) with poly(z) = (re + i*im) / 2**s, exactly."""
    (xr, er), (xi, ei) = _dyadic_parts(z.real), _dyadic_parts(z.imag)
    s = max(-er, -ei, 0)
    X = xr << (er + s)
    Y = xi << (ei + s)
    d = poly.degree
    re, im = poly.coeffs[-1], 0
    for k, c in enumerate(reversed(poly.coeffs[:-1]), start=1):
        re, im = re * X - im * Y + (c << (s * k)), re * Y + im * X
    return re, im, s * d


def evaluate_exact(poly: PartitionPolynomial, a):
    """Exact value of the polynomial.

    Integers and Fractions give a value of the same kind.  Floats and
    multiprecision complex values are binary rationals, so the exact value
    comes back as a ``(re, im)`` pair of Fractions.
    """
    from fractions import Fraction

    if isinstance(a, (int, Fraction)):
        acc = a * 0
        for c in reversed(poly.coeffs):
            acc = acc * a + c
        return acc
    z = _as_mpc(a, 64) if isinstance(a, (float, complex)) else _as_mpc_exact(a)
    re, im, s = _exact_numerators(poly, z)
    den = 1 << s
    return Fraction(re, den), Fraction(im, den)


def _as_mpc_exact(a) -> mpc:
    if isinstance(a, mpc):
        return a
    import mpmath

    z = mpmath.mpc(a)
    bits = max(53, z.real._mpf_[3], z.imag._mpf_[3])
    return _as_mpc(z, bits)


def evaluate(poly: PartitionPolynomial, a, bits: int = 128) -> mpc:
    """Evaluate at ``a`` and round the result to ``bits`` of precision.

    Horner is run with guard bits and a running error bound; the guard is
    widened until the bound certifies the rounded result.  Exact zeros, where
    no relative bound exists, fall back to exact dyadic arithmetic.
    """
    if bits < 64:
        raise ValueError("precision must be at least 64 bits")
    z = _as_mpc_exact(a)
    coeffs = poly.coeffs
    guard = 32 + poly.degree.bit_length()
    while guard <= 4 * bits + 4 * poly.degree:
        acc, err = _horner(coeffs, z, bits + guard)
        if acc != 0 and err <= abs(acc) * mpfr(2) ** (-bits - 2):
            return mpc(acc, precision=bits)
        guard *= 2
    re, im, s = _exact_numerators(poly, z)
    with gmpy2.context(gmpy2.get_context(), precision=bits):
        return mpc(
            mpfr(gmpy2.mpq(re, 1 << s), bits),
            mpfr(gmpy2.mpq(im, 1 << s), bits),
            precision=bits,
        )


def free_energy_real(a: float) -> float:
    """Limiting free energy for real positive weight a."""
    if a <= 0:
        raise ValueError(f"free energy is defined for a > 0, got {a}")
    if a <= 2:
        return math.log(2.0)
    return math.log(a) - 0.5 * math.log(a - 1)


def format_polynomial(poly: PartitionPolynomial) -> str:
    lines = [f"n={poly.n}"]
    lines.extend(str(c) for c in poly.coeffs)
    return "\n".join(lines) + "\n"


def parse_polynomial(text: str) -> PartitionPolynomial:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("n="):
        raise ValueError("polynomial file must start with an 'n=<n>' header")
    n = int(lines[0][2:])
    coeffs = tuple(int(ln) for ln in lines[1:])
    if len(coeffs) != n + 1:
        raise ValueError(f"expected {n + 1} coefficients, found {len(coeffs)}")
    return PartitionPolynomial(n, coeffs)
