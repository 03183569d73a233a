"""Binomial congruences behind the integrality of the transformation matrix.

Each off-diagonal entry of the transformation matrix is an integer
because its numerator, a signed sum of binomials over the square-free
cofactor divisors of s/t, is divisible by p**(2*alpha) for every prime
power p**alpha exactly dividing s/t.  The sum regroups into pairs
{p**(alpha-1)*l, p**alpha*l}, and each pair vanishes modulo
p**(2*alpha) by one of two binomial descent congruences: a prime-power
descent valid except at p = 2 with alpha = 1, and a mod-4 descent with
an alternating sign covering that remaining case.  This module turns
those steps into checks that report both residues, never just a bool.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from .arith import (
    binomial,
    factorize,
    is_prime,
    omega,
    prime_power_split,
    squarefree_cofactor_divisors,
)

__all__ = [
    "CheckKind",
    "CongruenceCase",
    "CongruenceReport",
    "check_prime_power_descent",
    "check_mod_four_descent",
    "regroup_pairs",
    "pair_sum",
    "verify_divisibility",
    "entry_integrality_via_congruence",
    "prime_power_grid",
    "mod_four_grid",
]


class CheckKind(Enum):
    PRIME_POWER_DESCENT = "prime-power-descent"
    MOD_FOUR_DESCENT = "mod-four-descent"
    PAIR_SUM_DIVISIBILITY = "pair-sum-divisibility"
    ENTRY_INTEGRALITY = "entry-integrality"


@dataclass(frozen=True)
class CongruenceCase:
    """One verified congruence: lhs ≡ rhs (mod modulus), evaluated exactly.

    ``parameters`` names the instantiating integers, and lhs/rhs are
    stored in full (not reduced) so a failure is reproducible from the
    record alone.
    """

    parameters: dict[str, int]
    lhs: int
    rhs: int
    modulus: int
    holds: bool = field(init=False)

    def __post_init__(self) -> None:
        if self.modulus < 1:
            raise ValueError("modulus must be positive")
        object.__setattr__(self, "holds", (self.lhs - self.rhs) % self.modulus == 0)


@dataclass
class CongruenceReport:
    """Aggregate of one exhaustive grid of congruence cases."""

    check: CheckKind
    grid: str
    total_cases: int
    failures: list[CongruenceCase]

    @property
    def passed(self) -> bool:
        return not self.failures


def check_prime_power_descent(p: int, alpha: int, a: int, b: int) -> CongruenceCase:
    """Binomial descent congruence at the prime power p**alpha.

    binomial(p**alpha * a - 1, p**alpha * b - 1)
        ≡ binomial(p**(alpha-1) * a - 1, p**(alpha-1) * b - 1)
        (mod p**(2*alpha))

    for positive a, b, alpha, excluding p = 2 with alpha = 1 (where
    the congruence fails in general; use check_mod_four_descent).
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if alpha < 1 or a < 1 or b < 1:
        raise ValueError("alpha, a and b must be positive")
    if p == 2 and alpha == 1:
        raise ValueError("p = 2 with alpha = 1 needs check_mod_four_descent")
    lhs = binomial(p**alpha * a - 1, p**alpha * b - 1)
    rhs = binomial(p ** (alpha - 1) * a - 1, p ** (alpha - 1) * b - 1)
    return CongruenceCase({"p": p, "alpha": alpha, "a": a, "b": b}, lhs, rhs, p ** (2 * alpha))


def check_mod_four_descent(k: int, a: int) -> CongruenceCase:
    """Halving descent modulo 4 for odd k.

    binomial(2*k*a - 1, 2*k - 1) ≡ (-1)**(a+1) * binomial(k*a - 1, k - 1)
    (mod 4), for odd k >= 1 and a >= 1.
    """
    if k < 1 or k % 2 == 0:
        raise ValueError("k must be odd and positive")
    if a < 1:
        raise ValueError("a must be positive")
    lhs = binomial(2 * k * a - 1, 2 * k - 1)
    rhs = binomial(k * a - 1, k - 1)
    if a % 2 == 0:
        rhs = -rhs
    return CongruenceCase({"k": k, "a": a}, lhs, rhs, 4)


def _ratio_and_valuation(s: int, t: int, p: int) -> tuple[int, int, int]:
    """Validate t | s and p | s/t; return (ratio, alpha, cofactor)."""
    if s < 1 or t < 1:
        raise ValueError("s and t must be positive")
    if s % t:
        raise ValueError(f"{t} does not divide {s}")
    ratio = s // t
    alpha, cofactor = prime_power_split(ratio, p)
    if alpha < 1:
        raise ValueError(f"{p} does not divide {s}/{t} = {ratio}")
    return ratio, alpha, cofactor


def regroup_pairs(s: int, t: int, w: int, p: int) -> list[tuple[int, tuple[int, int]]]:
    """Partition the square-free cofactor divisors of s/t by the prime p.

    With p**alpha exactly dividing s/t, every k with square-free
    cofactor is p**(alpha-1)*l or p**alpha*l for a unique l ranging
    over the square-free cofactor divisors of s/(p**alpha * t).
    Returns (l, (p**(alpha-1)*l, p**alpha*l)) triples, ascending in l.
    """
    if w < 1:
        raise ValueError("w must be positive")
    ratio, alpha, _ = _ratio_and_valuation(s, t, p)
    if ratio == 1:
        raise ValueError("s must differ from t")
    return [
        (l, (p ** (alpha - 1) * l, p**alpha * l))
        for l in squarefree_cofactor_divisors(ratio // p**alpha)
    ]


def pair_sum(s: int, t: int, w: int, p: int, l: int) -> int:
    """Signed two-term binomial sum over one regrouped pair.

    For k in {p**(alpha-1)*l, p**alpha*l}, sums
    (-1)**omega(s/(k*t)) * (-1)**(k*t*w) * binomial(k*(t*w-1)-1, k-1).
    Always an exact integer; divisible by p**(2*alpha) whenever
    t*w >= 2.
    """
    if w < 1:
        raise ValueError("w must be positive")
    if t * w < 2:
        raise ValueError("t*w must be at least 2")
    ratio, alpha, _ = _ratio_and_valuation(s, t, p)
    cofactor = ratio // p**alpha
    if l < 1 or cofactor % l:
        raise ValueError(f"{l} does not divide {cofactor}")
    if any(e > 1 for _, e in factorize(cofactor // l).factors):
        raise ValueError(f"cofactor {cofactor}/{l} is not square-free")
    total = 0
    for k in (p ** (alpha - 1) * l, p**alpha * l):
        term = binomial(k * (t * w - 1) - 1, k - 1)
        if omega(s // (k * t)) % 2:
            term = -term
        if (k * t * w) % 2:
            term = -term
        total += term
    return total


def verify_divisibility(s: int, t: int, w: int) -> CongruenceReport:
    """Check every regrouped pair sum of the (s, t) entry numerator.

    For each prime power p**alpha exactly dividing s/t and each l in
    the square-free cofactor divisors of s/(p**alpha * t), the pair
    sum must vanish modulo p**(2*alpha).  Together these force the
    entry numerator to be divisible by (s/t)**2.
    """
    if t * w < 2:
        raise ValueError("t*w must be at least 2")
    if s < 1 or t < 1 or s % t or s == t:
        raise ValueError("t must properly divide s")
    ratio = s // t
    cases = []
    for p, alpha in factorize(ratio).factors:
        for l, _pair in regroup_pairs(s, t, w, p):
            cases.append(
                CongruenceCase(
                    {"s": s, "t": t, "w": w, "p": p, "alpha": alpha, "l": l},
                    pair_sum(s, t, w, p, l),
                    0,
                    p ** (2 * alpha),
                )
            )
    return CongruenceReport(
        CheckKind.PAIR_SUM_DIVISIBILITY,
        f"s={s}, t={t}, w={w}, primes of s/t={ratio}",
        len(cases),
        [c for c in cases if not c.holds],
    )


def entry_integrality_via_congruence(s: int, t: int, w: int) -> bool:
    """Integrality of the (s, t) transformation entry, proved arithmetically.

    True when every pair-sum divisibility holds (trivially true on the
    diagonal).  Must agree with the direct denominator-is-one test on
    the closed-form entry.
    """
    if s < 1 or t < 1 or s % t:
        raise ValueError(f"{t} does not divide {s}")
    if t * w < 2:
        raise ValueError("t*w must be at least 2")
    if s == t:
        return True
    return verify_divisibility(s, t, w).passed


def prime_power_grid(
    primes: tuple[int, ...], alpha_max: int, a_max: int, b_max: int
) -> CongruenceReport:
    """Exhaustive prime-power descent grid.

    Runs check_prime_power_descent over all listed primes, 1 <= alpha
    <= alpha_max (starting at 2 for p = 2), and 1 <= a, b <= a_max,
    b_max.
    """
    failures = []
    total = 0
    for p in primes:
        for alpha in range(2 if p == 2 else 1, alpha_max + 1):
            for a in range(1, a_max + 1):
                for b in range(1, b_max + 1):
                    case = check_prime_power_descent(p, alpha, a, b)
                    total += 1
                    if not case.holds:
                        failures.append(case)
    grid = f"p in {sorted(primes)}, alpha <= {alpha_max} (>= 2 at p=2), a <= {a_max}, b <= {b_max}"
    return CongruenceReport(CheckKind.PRIME_POWER_DESCENT, grid, total, failures)


def mod_four_grid(k_max: int, a_max: int) -> CongruenceReport:
    """Exhaustive mod-4 descent grid over odd k <= k_max and a <= a_max."""
    failures = []
    total = 0
    for k in range(1, k_max + 1, 2):
        for a in range(1, a_max + 1):
            case = check_mod_four_descent(k, a)
            total += 1
            if not case.holds:
                failures.append(case)
    grid = f"odd k <= {k_max}, a <= {a_max}"
    return CongruenceReport(CheckKind.MOD_FOUR_DESCENT, grid, total, failures)
