"""Divisor-sum functions, the tau function, and lattice-count oracles.

The divisor sums carry the n = 0 boundary conventions that make the
convolution identities hold at every index; series constructors never use
those conventions (their constant terms are hard-coded).  The enumeration
oracles are deliberately independent of all series code.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .scalars import bernoulli

__all__ = [
    "ArithTable",
    "divisors",
    "sigma",
    "sigma_star",
    "sigma_sharp",
    "tau_table",
    "r_count",
    "r_oracle",
    "delta8_oracle",
    "primes_up_to",
]


@dataclass(frozen=True)
class ArithTable:
    """Values of one arithmetic function for n = 0..N."""

    kind: str
    values: tuple[Fraction, ...]

    def __getitem__(self, n: int) -> Fraction:
        return self.values[n]

    def __len__(self) -> int:
        return len(self.values)


def divisors(n: int) -> list[int]:
    """Positive divisors of n >= 1, ascending, by trial division."""
    if n < 1:
        raise ValueError("divisors are defined for n >= 1")
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def sigma(s: int, n: int) -> Fraction:
    """Divisor power sum sigma_s(n) for odd s = 2k-1.

    The boundary value sigma_s(0) = -B_{2k}/(4k) absorbs constant terms in
    the convolution identities.
    """
    if s < 1 or s % 2 == 0:
        raise ValueError("s must be an odd positive integer")
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        k = (s + 1) // 2
        return -bernoulli(2 * k) / (4 * k)
    return Fraction(sum(d**s for d in divisors(n)))


def sigma_star(s: int, n: int) -> Fraction:
    """Signed divisor sum -sum_{d|n} (-1)^d d^s for odd s = 2k-1.

    Odd divisors count positively, even divisors negatively.  The boundary
    value at n = 0 is the reciprocal of -(1/(1-2^(2k))) * 4k/B_{2k}.
    """
    if s < 1 or s % 2 == 0:
        raise ValueError("s must be an odd positive integer")
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        k = (s + 1) // 2
        norm = Fraction(-1, 1 - 2 ** (2 * k)) * Fraction(4 * k) / bernoulli(2 * k)
        return 1 / norm
    return Fraction(sum(d**s if d % 2 else -(d**s) for d in divisors(n)))


def sigma_sharp(n: int) -> int:
    """Sum of the odd divisors of n >= 1."""
    return sum(d for d in divisors(n) if d % 2)


def tau_table(N: int) -> ArithTable:
    """Coefficients of the weight-12 discriminant cusp form, tau(0..N).

    The eta-product expansion of q prod (1-q^n)^24 is the table of record;
    it is cross-checked against the two Eisenstein routes by the series
    catalog, which raises CrossCheckMismatch on any disagreement.
    """
    if N < 1:
        raise ValueError("N must be positive")
    from .catalog import discriminant

    delta = discriminant(N)
    return ArithTable("tau", delta.coeffs)


def r_count(s: int, N: int) -> ArithTable:
    """Representation counts r_s(0..N): coefficients of the s-th theta power."""
    if s < 1:
        raise ValueError("s must be positive")
    from .catalog import theta3

    series = theta3(N) ** s
    return ArithTable(f"r{s}", series.coeffs)


@lru_cache(maxsize=None)
def r_oracle(s: int, n: int) -> int:
    """Number of integer s-tuples with m_1^2 + ... + m_s^2 = n.

    Bounded recursive enumeration over the last coordinate; independent of
    the theta-series route it validates.
    """
    if s == 0:
        return 1 if n == 0 else 0
    total = 0
    m = 0
    while m * m <= n:
        ways = r_oracle(s - 1, n - m * m)
        total += ways if m == 0 else 2 * ways
        m += 1
    return total


@lru_cache(maxsize=None)
def _triangular_tuples(slots: int, n: int) -> int:
    if slots == 0:
        return 1 if n == 0 else 0
    total = 0
    k = 0
    while (t := k * (k + 1) // 2) <= n:
        total += _triangular_tuples(slots - 1, n - t)
        k += 1
    return total


def delta8_oracle(n: int) -> int:
    """Ordered 8-tuples of triangular numbers 0, 1, 3, 6, ... summing to n."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return _triangular_tuples(8, n)


def primes_up_to(n: int) -> list[int]:
    """Primes <= n by a byte sieve."""
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    p = 2
    while p * p <= n:
        if sieve[p]:
            sieve[p * p :: p] = bytearray(len(sieve[p * p :: p]))
        p += 1
    return [i for i, flag in enumerate(sieve) if flag]
