import math
from fractions import Fraction

import gmpy2
import pytest
from gmpy2 import mpc
from hypothesis import given, settings
from hypothesis import strategies as st

from dyckzeros.exactpf import (
    DP_LIMIT,
    PartitionPolynomial,
    catalan,
    evaluate,
    evaluate_exact,
    format_polynomial,
    free_energy_real,
    parse_polynomial,
    partition_polynomial,
    partition_polynomial_recurrence,
    visit_counts_dp,
)


def brute_force_visits(n: int) -> list[int]:
    """Enumerate every up/down word of length 2n; independent of all library routes."""
    counts = [0] * (n + 1)
    for mask in range(1 << (2 * n)):
        h = v = 0
        ok = True
        for i in range(2 * n):
            h += 1 if mask >> i & 1 else -1
            if h < 0:
                ok = False
                break
            v += h == 0
        if ok and h == 0:
            counts[v] += 1
    return counts


@pytest.mark.parametrize("n, expected", [(0, 1), (1, 1), (3, 5), (10, 16796)])
def test_catalan_values(n, expected):
    assert catalan(n) == expected


def test_catalan_rejects_negative():
    with pytest.raises(ValueError):
        catalan(-1)


@pytest.mark.parametrize(
    "n, coeffs",
    [(0, (1,)), (1, (0, 1)), (2, (0, 1, 1)), (3, (0, 2, 2, 1))],
)
def test_small_polynomials_all_routes(n, coeffs):
    assert partition_polynomial(n).coeffs == coeffs
    assert partition_polynomial_recurrence(n).coeffs == coeffs
    assert visit_counts_dp(n).counts == coeffs


@pytest.mark.parametrize("n", range(0, 8))
def test_brute_force_enumeration(n):
    assert list(partition_polynomial(n).coeffs) == brute_force_visits(n)


def test_closed_sum_matches_recurrence_up_to_64():
    for n in range(65):
        assert partition_polynomial(n) == partition_polynomial_recurrence(n)


def test_closed_sum_matches_dp_up_to_24():
    for n in range(25):
        assert partition_polynomial(n).coeffs == visit_counts_dp(n).counts


def test_dp_cap():
    with pytest.raises(ValueError):
        visit_counts_dp(DP_LIMIT + 1)


@pytest.mark.parametrize("bad", [-1, 2.5, "3"])
def test_rejects_bad_half_length(bad):
    with pytest.raises(ValueError):
        partition_polynomial(bad)


@given(st.integers(min_value=1, max_value=80))
@settings(max_examples=40, deadline=None)
def test_polynomial_invariants(n):
    p = partition_polynomial(n)
    assert p.degree == n
    assert p.coeffs[0] == 0
    assert p.coeffs[-1] == 1
    assert all(c >= 0 for c in p.coeffs)
    assert sum(p.coeffs) == catalan(n)
    assert p(1) == catalan(n)


@given(st.integers(min_value=1, max_value=24))
@settings(max_examples=15, deadline=None)
def test_visit_distribution_invariants(n):
    d = visit_counts_dp(n)
    assert d.counts[0] == 0
    assert d.counts[n] == 1
    assert d.total == catalan(n)


def test_central_binomial_at_two():
    # every path weighted 2^visits sums to C(2n, n)
    for n in range(1, 40):
        assert partition_polynomial(n)(2) == math.comb(2 * n, n)


def test_evaluate_exact_kinds():
    p = partition_polynomial(2)
    assert p(1) == 2
    assert p(-1) == 0
    assert p(Fraction(1, 2)) == Fraction(3, 4)
    re, im = evaluate_exact(p, 1j)
    assert (re, im) == (Fraction(-1), Fraction(1))


def test_evaluate_examples():
    assert evaluate(partition_polynomial(2), 1) == 2
    assert evaluate(partition_polynomial(2), -1) == 0
    val = evaluate(partition_polynomial(8), 2, bits=128)
    assert val == mpc(partition_polynomial(8)(2))
    assert int(val.real) == 12870


def test_evaluate_rejects_low_precision():
    with pytest.raises(ValueError):
        evaluate(partition_polynomial(3), 1, bits=32)


@given(
    st.integers(min_value=2, max_value=60),
    st.floats(min_value=-6, max_value=6, allow_nan=False),
    st.floats(min_value=-6, max_value=6, allow_nan=False),
    st.sampled_from([64, 128, 300]),
)
@settings(max_examples=60, deadline=None)
def test_evaluate_within_four_ulp(n, x, y, bits):
    p = partition_polynomial(n)
    z = complex(x, y)
    got = evaluate(p, z, bits=bits)
    re, im = evaluate_exact(p, z)
    with gmpy2.context(gmpy2.get_context(), precision=bits + 200):
        exact = mpc(gmpy2.mpq(re.numerator, re.denominator), gmpy2.mpq(im.numerator, im.denominator))
        err = abs(mpc(got) - exact)
        assert err <= 4 * gmpy2.mpfr(2) ** (1 - bits) * abs(exact)


def test_evaluate_accepts_mpmath():
    import mpmath

    p = partition_polynomial(3)
    got = evaluate(p, mpmath.mpc(-1, 1))
    assert got == 0


@pytest.mark.parametrize(
    "a, expected",
    [(1, math.log(2)), (2, math.log(2)), (4, math.log(4) - 0.5 * math.log(3)), (0.3, math.log(2))],
)
def test_free_energy_real(a, expected):
    assert free_energy_real(a) == pytest.approx(expected, rel=1e-15)


def test_free_energy_continuous_at_two():
    assert free_energy_real(2 + 1e-12) == pytest.approx(math.log(2), abs=1e-11)


def test_free_energy_domain():
    with pytest.raises(ValueError):
        free_energy_real(0)


@given(st.integers(min_value=0, max_value=50))
@settings(max_examples=20, deadline=None)
def test_serialization_round_trip(n):
    p = partition_polynomial(n)
    text = format_polynomial(p)
    assert text.splitlines()[0] == f"n={n}"
    assert parse_polynomial(text) == p


def test_parse_rejects_malformed():
    with pytest.raises(ValueError):
        parse_polynomial("0\n1\n")
    with pytest.raises(ValueError):
        parse_polynomial("n=3\n0\n1\n")


def test_polynomial_dataclass_is_frozen():
    p = PartitionPolynomial(1, (0, 1))
    with pytest.raises(AttributeError):
        p.n = 2
