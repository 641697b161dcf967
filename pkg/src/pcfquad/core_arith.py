"""Exact integer helpers: square roots, squareness, and two Diophantine solvers.

The solvers cover exactly the two equations that parametrize the exceptional
coefficients of the quadratic families:

* ``2 r**2 - t**2 == 2`` (a Pell equation, solved by the unit ``3 + 2*sqrt(2)``)
* ``2 p**4 - 1 == t**2`` (a Ljunggren equation, brute-forced up to a bound)
"""

from __future__ import annotations

import math
from typing import NamedTuple

from .errors import DomainError

__all__ = [
    "PellSolution",
    "integer_sqrt",
    "integer_fourth_root",
    "is_perfect_square",
    "is_prime",
    "ljunggren_solutions",
    "pell_solutions",
    "primes_up_to",
]


class PellSolution(NamedTuple):
    """A canonical solution of ``2 r**2 - t**2 == 2`` with ``r >= 1``, ``t >= 0``."""

    r: int
    t: int

    def check(self) -> bool:
        return 2 * self.r * self.r - self.t * self.t == 2


def integer_sqrt(n: int) -> int:
    """Largest ``s`` with ``s*s <= n``."""
    if n < 0:
        raise DomainError(f"integer_sqrt of negative number {n}")
    return math.isqrt(n)


def is_perfect_square(n: int) -> int | None:
    """Return the nonnegative root of ``n`` if ``n`` is a perfect square, else None."""
    if n < 0:
        return None
    s = math.isqrt(n)
    return s if s * s == n else None


def integer_fourth_root(n: int) -> int | None:
    """Nonnegative ``u`` with ``u**4 == n``, or None."""
    s = is_perfect_square(n)
    if s is None:
        return None
    return is_perfect_square(s)


def pell_solutions(r_bound: int) -> list[PellSolution]:
    """All canonical solutions of ``2 r**2 - t**2 == 2`` with ``r <= r_bound``.

    Generated from the seed ``(1, 0)`` by ``(r, t) -> (3r + 2t, 4r + 3t)``,
    which is multiplication of ``t + r*sqrt(2)`` by ``3 + 2*sqrt(2)``.

    >>> pell_solutions(100)
    [PellSolution(r=1, t=0), PellSolution(r=3, t=4), PellSolution(r=17, t=24), PellSolution(r=99, t=140)]
    """
    if r_bound < 1:
        raise DomainError(f"r_bound must be positive, got {r_bound}")
    out = []
    r, t = 1, 0
    while r <= r_bound:
        out.append(PellSolution(r, t))
        r, t = 3 * r + 2 * t, 4 * r + 3 * t
    return out


def ljunggren_solutions(p_bound: int) -> list[int]:
    """Every ``1 <= p <= p_bound`` for which ``2 p**4 - 1`` is a perfect square.

    Exhaustive; the known answer for any bound >= 13 is ``[1, 13]``.
    """
    if p_bound < 1:
        raise DomainError(f"p_bound must be positive, got {p_bound}")
    return [p for p in range(1, p_bound + 1) if is_perfect_square(2 * p**4 - 1) is not None]


def primes_up_to(n: int) -> list[int]:
    """Primes ``<= n`` by the sieve of Eratosthenes."""
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, math.isqrt(n) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, n + 1, i)))
    return [i for i, flag in enumerate(sieve) if flag]


def is_prime(n: int) -> bool:
    # Deterministic Miller-Rabin; these bases are exact below 3.3e24.
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
    for q in small:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for base in small:
        x = pow(base, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True
