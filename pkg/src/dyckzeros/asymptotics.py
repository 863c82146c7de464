"""Asymptotic pieces of D_{2n}(a) and closed-form approximations to its zeros.

Away from a = 2 the partition function splits into the square-root part
r_n(a) and the pole part p_n(a).  Balancing the two gives the zero
equation

    a^2 = 4 (a - 1) sigma_{k,n} h_n X(a)^{1/n},
    X(a) = a (a - 1)/(a - 2)^3 + (a - 1) beta / (n (a - 2)),

whose approximate solutions a'_+- and a''_+- are closed forms in
sigma_{k,n} = exp((2k+1) pi i / n).  Near a = 2 the leading zeros follow
a = 2 + c1/sqrt(n) + c2/n with c1 a root of F(c) = 2 + c sqrt(pi)
exp(c^2/4)(1 + erf(c/2)).

Values are mpmath numbers at the ambient working precision.
"""

from __future__ import annotations

import enum
import threading
from dataclasses import dataclass

import mpmath as mp

from .erf import erf_complex

__all__ = [
    "Branch",
    "Method",
    "ApproxZero",
    "LeadingZeroConstants",
    "NonConvergence",
    "DriftedBranch",
    "Degenerate",
    "sigma",
    "h",
    "H",
    "r0",
    "r1",
    "p",
    "d0",
    "a_prime",
    "a_double_prime",
    "zero_equation",
    "refine_zero_beta",
    "beta1_leading",
    "erf_complex",
    "F",
    "F_improved",
    "F_correction",
    "solve_leading_constants",
    "leading_zero_prediction",
    "C1_SEED",
    "C1_NEXT_SEED",
]

C1_SEED = mp.mpc(2.5, 5)
C1_NEXT_SEED = mp.mpc(4, 6.3)


class Branch(enum.Enum):
    PLUS = "Plus"
    MINUS = "Minus"

    @property
    def sign(self) -> int:
        return 1 if self is Branch.PLUS else -1


class Method(enum.Enum):
    A_PRIME = "APrime"
    A_DOUBLE_PRIME = "ADoublePrime"
    BETA_REFINED = "BetaRefined"


class NonConvergence(RuntimeError):
    pass


class DriftedBranch(RuntimeError):
    pass


class Degenerate(ValueError):
    pass


@dataclass(frozen=True)
class ApproxZero:
    n: int
    k: int
    branch: Branch
    method: Method
    beta: complex
    value: complex


@dataclass(frozen=True)
class LeadingZeroConstants:
    c1: mp.mpc
    c2: mp.mpc
    c1_next: mp.mpc


def _branch(b) -> Branch:
    if isinstance(b, Branch):
        return b
    if b in (1, "+", "plus", "Plus"):
        return Branch.PLUS
    if b in (-1, "-", "minus", "Minus"):
        return Branch.MINUS
    raise ValueError(f"unknown branch {b!r}")


def sigma(k: int, n: int) -> mp.mpc:
    """exp((2k + 1) pi i / n)."""
    if n < 1:
        raise ValueError("n must be positive")
    return mp.expjpi(mp.mpf(2 * k + 1) / n)


def h(n: int) -> mp.mpf:
    """(pi n^3)^(-1/(2n)); in (0, 1) and tends to 1."""
    if n < 1:
        raise ValueError("n must be positive")
    n = mp.mpf(n)
    return mp.exp(-(mp.log(mp.pi) + 3 * mp.log(n)) / (2 * n))


def H(n: int, a) -> mp.mpc:
    """(a (a - 1)/(a - 2)^3)^(1/n), principal branch."""
    a = mp.mpc(a)
    return mp.exp(mp.log(a * (a - 1) / (a - 2) ** 3) / n)


def _check_not_two(a) -> mp.mpc:
    a = mp.mpc(a)
    if a == 2:
        raise ZeroDivisionError("pole at a = 2")
    return a


def _log_scale(n: int):
    # log(4^n / sqrt(pi n^3))
    n = mp.mpf(n)
    return n * mp.log(4) - (mp.log(mp.pi) + 3 * mp.log(n)) / 2


def r0(n: int, a) -> mp.mpc:
    """Leading square-root contribution a/(a-2)^2 * 4^n / sqrt(pi n^3)."""
    a = _check_not_two(a)
    return a / (a - 2) ** 2 * mp.exp(_log_scale(n))


def r1(n: int, a) -> mp.mpc:
    a = _check_not_two(a)
    return r0(n, a) * (1 - 3 * a**2 / (2 * (a - 2) ** 2 * n))


def p(n: int, a) -> mp.mpc:
    """Pole contribution (a-2)/(a-1) * (a^2/(a-1))^n."""
    a = mp.mpc(a)
    if a == 1:
        raise ZeroDivisionError("pole at a = 1")
    if a == 2:
        return mp.mpc(0)
    return (a - 2) / (a - 1) * mp.exp(n * mp.log(a * a / (a - 1)))


def d0(n: int, a) -> mp.mpc:
    return p(n, a) + r0(n, a)


def _sqrt_pair(s):
    return mp.sqrt(s) * mp.sqrt(s - 1)


def a_prime(k: int, n: int, branch=Branch.PLUS) -> ApproxZero:
    """Roots of the reduced quadratic a^2 = 4 (a - 1) sigma h."""
    if n < 2:
        raise ValueError("n must be at least 2")
    br = _branch(branch)
    sh = sigma(k, n) * h(n)
    value = 2 * sh + br.sign * 2 * _sqrt_pair(sh)
    return ApproxZero(n, k, br, Method.A_PRIME, 0j, complex(value))


def a_double_prime(k: int, n: int, branch=Branch.PLUS) -> ApproxZero:
    """Closed form a''_+- with the first-order H_n correction.

    The sign inside the final logarithm is + for both branches.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    br = _branch(branch)
    pm = br.sign
    s = sigma(k, n)
    if s == 1 or mp.almosteq(s, 1, rel_eps=mp.mpf(10) ** (-mp.mp.dps + 2)):
        raise Degenerate(k)
    root = _sqrt_pair(s)
    base = 2 * s + pm * 2 * root
    lead = mp.mpf(3) / 2 * mp.log(n) + 2 * mp.log(2) + mp.log(mp.pi) / 2
    shape = mp.sqrt(s) * (2 * s + pm * 2 * root - 1) / mp.sqrt(s - 1)
    inner = (s + root) * (2 * s + 2 * root - 1) / (s + root - 1) ** 3
    value = base - pm * lead * shape / n + pm * shape * mp.log(inner) / n
    return ApproxZero(n, k, br, Method.A_DOUBLE_PRIME, 0j, complex(value))


def _bracket(a, n: int, beta):
    return a * (a - 1) / (a - 2) ** 3 + (a - 1) * beta / (n * (a - 2))


def zero_equation(a, k: int, n: int, beta=0, center_arg=None) -> mp.mpc:
    """G(a) = a^2 - 4(a-1) sigma_{k,n} h_n X(a)^{1/n}; zero at solutions.

    X^{1/n} uses the principal logarithm unless ``center_arg`` is given, in
    which case arg X is taken within pi of ``center_arg``.
    """
    a = mp.mpc(a)
    X = _bracket(a, n, mp.mpc(beta))
    return a * a - 4 * (a - 1) * sigma(k, n) * h(n) * mp.exp(_log_near(X, center_arg) / n)


def _log_near(X, center_arg):
    if center_arg is None:
        return mp.log(X)
    theta = mp.arg(X)
    theta += 2 * mp.pi * mp.nint((center_arg - theta) / (2 * mp.pi))
    return mp.log(abs(X)) + 1j * theta


def refine_zero_beta(
    k: int,
    n: int,
    beta,
    seed,
    max_iter: int = 100,
    tol: float = 1e-12,
    branch=Branch.PLUS,
) -> ApproxZero:
    """Newton iteration on ``zero_equation`` from ``seed``.

    Converged after two consecutive steps no larger than ``tol``.  The 1/n-th
    power follows the sector of the seed: arg X(a) is continued from its
    principal value at the seed instead of being cut at -pi.  If an iterate
    carries arg X more than pi away from the seed's value it has left that
    sector, and DriftedBranch is raised.  ``branch`` only labels the result
    with the closed form the seed came from.
    """
    br = _branch(branch)
    beta = mp.mpc(beta)
    a = mp.mpc(seed)
    if a == 2 or a == 1:
        raise ValueError("seed must avoid a = 1 and a = 2")
    center = mp.arg(_bracket(a, n, beta))
    G = lambda x: zero_equation(x, k, n, beta, center)
    small = 0
    for _ in range(max_iter):
        g = G(a)
        dg = mp.diff(G, a)
        step = g / dg
        a = a - step
        drift = mp.arg(_bracket(a, n, beta)) - center
        drift -= 2 * mp.pi * mp.nint(drift / (2 * mp.pi))
        if abs(drift) >= mp.pi * (1 - mp.mpf(10) ** -6):
            raise DriftedBranch(f"k={k}, n={n}: iterate left the seed's sector")
        small = small + 1 if abs(step) <= tol else 0
        if small >= 2:
            return ApproxZero(n, k, br, Method.BETA_REFINED, complex(beta), complex(a))
    raise NonConvergence(f"k={k}, n={n}, beta={complex(beta)}: no convergence in {max_iter} steps")


def beta1_leading(a) -> mp.mpc:
    """Leading order of beta_{1,n}(a): 3 a^3 / (2 (a - 2)^4)."""
    a = _check_not_two(a)
    return 3 * a**3 / (2 * (a - 2) ** 4)


def _gauss_term(c):
    # sqrt(pi) (1 + erf(c/2)) exp(c^2/4)
    return mp.sqrt(mp.pi) * (1 + erf_complex(c / 2)) * mp.exp(c * c / 4)


def F(c) -> mp.mpc:
    """Scaled D_{2n}(2 + c/sqrt(n)) at leading order; zeros give the leading zeros."""
    c = mp.mpc(c)
    return 2 + c * _gauss_term(c)


def F_correction(c) -> mp.mpc:
    """Coefficient of 1/sqrt(n) in the improved formula."""
    c = mp.mpc(c)
    return -c / 4 * (2 * (2 + c * c) + c * (4 + c * c) * _gauss_term(c))


def F_improved(c, n: int) -> mp.mpc:
    return F(c) + F_correction(c) / mp.sqrt(n)


def _F_prime(c):
    # d/dc [c g(c)] with g = sqrt(pi)(1 + erf(c/2)) e^{c^2/4}; g' = 1 + c g / 2
    g = _gauss_term(c)
    return g + c * (1 + c * g / 2)


def _root_of_F(seed, tol, max_iter: int = 60):
    """Root of F selected by the seed's winding index.

    F = A + B with A = 2 sqrt(pi) c e^{c^2/4} and B slowly varying, so roots
    solve log A - log(-B) = 2 pi i m.  log A is taken as
    log(2 sqrt(pi)) + log c + c^2/4, which has no cut in the upper half-plane;
    m is fixed at the seed.  This is far less fragile than Newton on F, whose
    exponential growth throws iterates out of the erf envelope.
    """

    def parts(c):
        A = 2 * mp.sqrt(mp.pi) * c * mp.exp(c * c / 4)
        B = F(c) - A
        phi = mp.log(2 * mp.sqrt(mp.pi)) + mp.log(c) + c * c / 4 - mp.log(-B)
        dA = A * (1 / c + c / 2)
        dphi = 1 / c + c / 2 - (_F_prime(c) - dA) / B
        return phi, dphi

    c = mp.mpc(seed)
    if c.imag <= 0:
        raise ValueError("seed must lie in the upper half-plane")
    m = mp.nint(parts(c)[0].imag / (2 * mp.pi))
    for _ in range(max_iter):
        phi, dphi = parts(c)
        step = (phi - 2j * mp.pi * m) / dphi
        c -= step
        if abs(step) <= tol * max(1, abs(c)):
            return c
    raise NonConvergence(f"root of F not found from seed {complex(seed)}")


_constants: LeadingZeroConstants | None = None
_constants_lock = threading.Lock()


def solve_leading_constants(
    seed1=C1_SEED, seed2=C1_NEXT_SEED, dps: int = 30
) -> LeadingZeroConstants:
    """c1, c1_next roots of F and the second-order coefficient c2.

    c2 removes the 1/sqrt(n) remainder of the improved formula at c1:
    F(c1 + c2/sqrt(n)) + F_correction(c1)/sqrt(n) = O(1/n), so
    c2 = -F_correction(c1) / F'(c1).  Results at the default seeds are cached.
    """
    global _constants
    default = seed1 is C1_SEED and seed2 is C1_NEXT_SEED and dps == 30
    if default and _constants is not None:
        return _constants
    with _constants_lock if default else _NullLock():
        if default and _constants is not None:
            return _constants
        with mp.workdps(dps):
            tol = mp.mpf(10) ** (-dps + 5)
            c1 = _root_of_F(seed1, tol)
            c1_next = _root_of_F(seed2, tol)
            c2 = -F_correction(c1) / _F_prime(c1)
        result = LeadingZeroConstants(c1=c1, c2=c2, c1_next=c1_next)
        if default:
            _constants = result
        return result


class _NullLock:
    def __enter__(self):
        return self

    def __exit__(self, *exc):
        return False


def leading_zero_prediction(n: int, order: int = 2) -> mp.mpc:
    """2 + c1/sqrt(n) (order 1) or 2 + c1/sqrt(n) + c2/n (order 2)."""
    if n < 1:
        raise ValueError("n must be positive")
    consts = solve_leading_constants()
    value = 2 + consts.c1 / mp.sqrt(n)
    if order == 2:
        value += consts.c2 / n
    elif order != 1:
        raise ValueError("order must be 1 or 2")
    return value
