"""Shared, cached computations for the test suite."""

from __future__ import annotations

from functools import lru_cache

from dyckzeros.exactpf import partition_polynomial
from dyckzeros.rootfind import PrecisionPolicy, ZeroSet, find_zeros


@lru_cache(maxsize=None)
def zero_set(n: int, bits: int | None = None) -> ZeroSet:
    policy = PrecisionPolicy(base_bits=bits, per_n_bits=0) if bits else PrecisionPolicy()
    return find_zeros(partition_polynomial(n), policy)


def zeros(n: int) -> list[complex]:
    return zero_set(n).as_complex()


def nearest(points, z: complex) -> tuple[int, float]:
    pts = list(points)
    j = min(range(len(pts)), key=lambda i: abs(pts[i] - z))
    return j, abs(pts[j] - z)
