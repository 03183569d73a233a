"""Exact number-theoretic primitives.

Everything in this module is integer arithmetic with no rounding:
prime factorization by deterministic trial division, the Möbius
function, divisor enumeration, square-free cofactor divisors, exact
prime-power valuations, and a generalized binomial coefficient that
accepts negative upper arguments.  These are the building blocks for
the divisor-indexed transforms and congruence checks in the rest of
the package.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import isqrt

import gmpy2

__all__ = [
    "Factorization",
    "factorize",
    "is_prime",
    "omega",
    "mobius",
    "divisors",
    "squarefree_cofactor_divisors",
    "binomial",
    "prime_power_split",
]


def _sieve(limit: int) -> tuple[int, ...]:
    flags = bytearray([1]) * (limit + 1)
    flags[0] = flags[1] = 0
    for p in range(2, isqrt(limit) + 1):
        if flags[p]:
            flags[p * p :: p] = bytes(len(flags[p * p :: p]))
    return tuple(i for i, f in enumerate(flags) if f)


_SIEVE_LIMIT = 1000
_SMALL_PRIMES = _sieve(_SIEVE_LIMIT)


@dataclass(frozen=True)
class Factorization:
    """Prime-exponent decomposition of a positive integer.

    ``factors`` holds (prime, exponent) pairs with strictly increasing
    primes and exponents >= 1; the empty tuple encodes 1.
    """

    base: int
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        if self.base < 1:
            raise ValueError("positive integer required")
        product = 1
        previous = 0
        for prime, exponent in self.factors:
            if prime <= previous:
                raise ValueError("primes must be strictly increasing")
            if exponent < 1:
                raise ValueError("exponents must be positive")
            previous = prime
            product *= prime**exponent
        if product != self.base:
            raise ValueError("factors do not multiply back to base")


@lru_cache(maxsize=None)
def factorize(n: int) -> Factorization:
    """Factor a positive integer by trial division.

    Deterministic: small primes come from a fixed sieve, larger trial
    divisors are enumerated in increasing order.  Intended for the
    sizes this package works at (well below 10**12).
    """
    if n < 1:
        raise ValueError("positive integer required")
    m = n
    factors = []
    for p in _SMALL_PRIMES:
        if p * p > m:
            break
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            factors.append((p, e))
    d = _SIEVE_LIMIT + 1 if _SIEVE_LIMIT % 2 == 0 else _SIEVE_LIMIT + 2
    while d * d <= m:
        if m % d == 0:
            e = 0
            while m % d == 0:
                m //= d
                e += 1
            factors.append((d, e))
        d += 2
    if m > 1:
        factors.append((m, 1))
    return Factorization(n, tuple(factors))


def is_prime(n: int) -> bool:
    """True when n is prime (trial division; fine for small n)."""
    return n >= 2 and factorize(n).factors == ((n, 1),)


def omega(n: int) -> int:
    """Number of distinct primes dividing n (omega(1) = 0)."""
    return len(factorize(n).factors)


def mobius(n: int) -> int:
    """Möbius function: (-1)**omega(n) when n is square-free, else 0."""
    factors = factorize(n).factors
    if any(e > 1 for _, e in factors):
        return 0
    return -1 if len(factors) % 2 else 1


def divisors(n: int) -> list[int]:
    """All positive divisors of n in ascending order."""
    divs = [1]
    for p, e in factorize(n).factors:
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)


def squarefree_cofactor_divisors(n: int) -> list[int]:
    """Divisors k of n whose cofactor n/k is square-free, ascending.

    A prime p with exponent e in n must appear in k with exponent e-1
    or e, so the set has exactly 2**omega(n) elements.
    """
    ks = [1]
    for p, e in factorize(n).factors:
        ks = [k * p**j for k in ks for j in (e - 1, e)]
    return sorted(ks)


def binomial(n: int, k: int) -> int:
    """Generalized binomial coefficient n*(n-1)*...*(n-k+1) / k!.

    Defined for every integer n and k >= 0 via the falling factorial;
    the result is always an exact integer, and binomial(n, 0) = 1.
    For 0 <= n < k the product contains zero, so the value is 0.
    """
    if k < 0:
        raise ValueError("lower index must be nonnegative")
    return int(gmpy2.bincoef(n, k))


def prime_power_split(n: int, p: int) -> tuple[int, int]:
    """Exact p-power valuation of n: (alpha, m) with n = p**alpha * m, p ∤ m."""
    if n < 1:
        raise ValueError("positive integer required")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    alpha, m = 0, n
    while m % p == 0:
        m //= p
        alpha += 1
    return alpha, m
