"""Complex error function by two independent routes.

``erf_series`` sums the Maclaurin series; ``erf_cfrac`` uses continued
fractions (Laplace's fraction for erfc well inside the right half-plane,
the Kummer-type fraction for erf elsewhere).  ``erf_complex`` picks the
cheaper route for each argument.  All of them work in the first quadrant
and reflect, so oddness and conjugate symmetry hold exactly.

Arguments and results are mpmath numbers; the inner loops run on MPC.
"""

from __future__ import annotations

import gmpy2
import mpmath as mp
from gmpy2 import mpc, mpfr

__all__ = ["erf_complex", "erf_series", "erf_cfrac", "ENVELOPE"]

ENVELOPE = 12.0
SERIES_RADIUS = 4.0
_LAPLACE_MIN_RE = 1.0


def _to_gmp(x: mp.mpf, bits: int) -> mpfr:
    sign, man, exp, _ = x._mpf_
    if not man:
        return mpfr(0, bits)
    val = mpfr(gmpy2.mpz(man), bits) * mpfr(2) ** exp
    return -val if sign else val


def _to_mp(x: mpfr) -> mp.mpf:
    if x == 0:
        return mp.mpf(0)
    man, exp = x.as_mantissa_exp()
    return mp.mpf((int(man), int(exp)))


def _reflect(core):
    def wrapped(z, dps: int | None = None):
        z = mp.mpc(z)
        if abs(z) > ENVELOPE:
            raise ValueError(
                f"|z| = {float(abs(z)):.3g} outside the accuracy envelope |z| <= {ENVELOPE}"
            )
        bits = int(3.33 * (dps or mp.mp.dps)) + 8
        neg = z.real < 0
        if neg:
            z = -z
        conj = z.imag < 0
        if conj:
            z = mp.conj(z)
        # guard bits: the largest series term is about exp(|z|^2)
        work = bits + int(float(abs(z)) ** 2 * 1.4427) + 24
        with gmpy2.context(gmpy2.get_context(), precision=work):
            w = core(mpc(_to_gmp(z.real, work), _to_gmp(z.imag, work)))
            re, im = _to_mp(w.real), _to_mp(w.imag)
        w = mp.mpc(re, im)
        if conj:
            w = mp.conj(w)
        if neg:
            w = -w
        return +w

    wrapped.__name__ = core.__name__.lstrip("_")
    wrapped.__doc__ = core.__doc__
    return wrapped


def _eps() -> mpfr:
    return mpfr(2) ** (1 - gmpy2.get_context().precision)


def _sqrt_pi() -> mpfr:
    return gmpy2.sqrt(gmpy2.const_pi())


def _series(z: mpc) -> mpc:
    """Maclaurin series 2/sqrt(pi) * sum (-1)^k z^(2k+1) / (k! (2k+1))."""
    z2 = z * z
    term = z
    total = z
    k = 0
    eps = _eps()
    while True:
        k += 1
        term = -term * z2 / k
        piece = term / (2 * k + 1)
        total += piece
        if k > 2 and abs(piece) <= eps * abs(total):
            break
    return 2 / _sqrt_pi() * total


def _lentz(b0, terms, limit: int = 20000) -> mpc:
    tiny = mpfr(2) ** (-4 * gmpy2.get_context().precision)
    eps = _eps()
    f = mpc(b0) if b0 != 0 else mpc(tiny)
    C, D = f, mpc(0)
    for _, (a, b) in zip(range(limit), terms):
        D = b + a * D
        D = 1 / (D if D != 0 else mpc(tiny))
        C = b + a / C
        if C == 0:
            C = mpc(tiny)
        delta = C * D
        f *= delta
        if abs(delta - 1) < eps:
            return f
    raise ArithmeticError("continued fraction did not converge")


def _erfc_laplace(z: mpc) -> mpc:
    def terms():
        k = 1
        while True:
            yield mpfr(k) / 2, z
            k += 1

    return gmpy2.exp(-z * z) / (_sqrt_pi() * _lentz(z, terms()))


def _erf_kummer(z: mpc) -> mpc:
    z2 = z * z

    def terms():
        k = 1
        while True:
            yield (-1) ** k * 2 * k * z2, mpfr(2 * k + 1)
            k += 1

    return 2 * z * gmpy2.exp(-z2) / (_sqrt_pi() * _lentz(mpfr(1), terms()))


def _laplace_ok(z: mpc) -> bool:
    return abs(z) >= SERIES_RADIUS and z.real >= _LAPLACE_MIN_RE


def _cfrac(z: mpc) -> mpc:
    """Continued-fraction route."""
    if z == 0:
        return mpc(0)
    if _laplace_ok(z):
        return 1 - _erfc_laplace(z)
    return _erf_kummer(z)


def _auto(z: mpc) -> mpc:
    """Series inside |z| <= 4 and near the imaginary axis, Laplace fraction elsewhere."""
    if _laplace_ok(z):
        return 1 - _erfc_laplace(z)
    return _series(z)


erf_series = _reflect(_series)
erf_cfrac = _reflect(_cfrac)
erf_complex = _reflect(_auto)
