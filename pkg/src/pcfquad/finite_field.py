"""Polynomials over prime fields: factorization, irreducibility, type strings.

Two independent routes to irreducibility live here and are kept apart on
purpose:

* the *factorization oracle* (:func:`factor`, :func:`is_irreducible`,
  :func:`batch_is_irreducible`), which works on the explicit coefficients of
  ``f^n mod p`` and knows nothing about orbits;
* the *orbit criterion* (:func:`type_string`, :func:`first_reducible_iterate`,
  :func:`ff_stability_data`), which only looks at squareness of post-critical
  values.

Only odd primes are supported. Polynomials are coefficient tuples, constant
term first; the internal helpers work on plain lists.
"""

from __future__ import annotations

import enum
import hashlib
import random
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np

from .core_arith import is_prime
from .errors import DomainError
from .quad_poly import IntPolynomial, MonicQuadratic, forward_orbit

__all__ = [
    "Factorization",
    "FFStabilityData",
    "FpPolynomial",
    "Squareness",
    "TypeString",
    "batch_is_irreducible",
    "check_odd_prime",
    "factor",
    "ff_stability_data",
    "first_reducible_iterate",
    "is_irreducible",
    "is_nonsquare",
    "quadratic_irreducible",
    "iterate_mod",
    "orbit_mod",
    "squareness",
    "type_string",
]


def check_odd_prime(p: int) -> None:
    if p == 2:
        raise DomainError("characteristic 2 is not supported; p must be an odd prime")
    if not is_prime(p):
        raise DomainError(f"{p} is not an odd prime")


# ---------------------------------------------------------------------------
# List arithmetic in F_p[x]
# ---------------------------------------------------------------------------


def _strip(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _sub(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    n = max(len(a), len(b))
    return _strip([((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)])


def _mul(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _strip([c % p for c in out])


def _monic(a: Sequence[int], p: int) -> list[int]:
    inv = pow(a[-1], -1, p)
    return [c * inv % p for c in a]


def _divmod(a: Sequence[int], b: Sequence[int], p: int) -> tuple[list[int], list[int]]:
    r = list(a)
    db = len(b) - 1
    if len(r) - 1 < db:
        return [], _strip(r)
    inv = pow(b[-1], -1, p)
    q = [0] * (len(r) - db)
    for k in range(len(r) - 1, db - 1, -1):
        c = r[k] * inv % p
        if c:
            q[k - db] = c
            for j in range(db + 1):
                r[k - db + j] = (r[k - db + j] - c * b[j]) % p
    return _strip(q), _strip(r[:db])


def _mod(a: Sequence[int], m: Sequence[int], p: int) -> list[int]:
    # m monic.
    r = [c % p for c in a]
    dm = len(m) - 1
    for k in range(len(r) - 1, dm - 1, -1):
        c = r[k]
        if c:
            base = k - dm
            for j in range(dm):
                r[base + j] = (r[base + j] - c * m[j]) % p
    return _strip(r[:dm] if len(r) > dm else r)


def _mulmod(a: Sequence[int], b: Sequence[int], m: Sequence[int], p: int) -> list[int]:
    return _mod(_mul(a, b, p), m, p)


def _powmod(a: Sequence[int], e: int, m: Sequence[int], p: int) -> list[int]:
    result = [1]
    base = _mod(a, m, p)
    while e:
        if e & 1:
            result = _mulmod(result, base, m, p)
        e >>= 1
        if e:
            base = _mulmod(base, base, m, p)
    return result


def _gcd(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    a, b = _strip(list(a)), _strip(list(b))
    while b:
        a, b = b, _divmod(a, b, p)[1]
    return _monic(a, p) if a else []


def _deriv(a: Sequence[int], p: int) -> list[int]:
    return _strip([i * a[i] % p for i in range(1, len(a))])


def _frobenius_matrix(m: Sequence[int], p: int) -> list[list[int]]:
    # Row i holds x^(i*p) mod m; m monic of degree n >= 1.
    n = len(m) - 1
    xp = _powmod([0, 1], p, m, p)
    rows = [[1]]
    for _ in range(1, n):
        rows.append(_mulmod(rows[-1], xp, m, p))
    return rows


def _frobenius(v: Sequence[int], rows: list[list[int]], n: int, p: int) -> list[int]:
    # v(x)^p = v(x^p) for v over F_p.
    out = [0] * n
    for i, c in enumerate(v):
        if c:
            for j, r in enumerate(rows[i]):
                out[j] += c * r
    return _strip([c % p for c in out])


# ---------------------------------------------------------------------------
# Public polynomial type
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FpPolynomial:
    """Polynomial over F_p, coefficients reduced into ``[0, p)``, constant first."""

    p: int
    coeffs: tuple[int, ...]

    def __init__(self, p: int, coeffs: Iterable[int]):
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "coeffs", tuple(_strip([int(c) % p for c in coeffs])))

    @classmethod
    def from_int(cls, poly: IntPolynomial | MonicQuadratic, p: int) -> FpPolynomial:
        if isinstance(poly, MonicQuadratic):
            poly = poly.as_polynomial()
        return cls(p, poly.coeffs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def monic(self) -> FpPolynomial:
        return FpPolynomial(self.p, _monic(self.coeffs, self.p))

    def __call__(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc * x + c) % self.p
        return acc

    def __mul__(self, other: FpPolynomial) -> FpPolynomial:
        return FpPolynomial(self.p, _mul(self.coeffs, other.coeffs, self.p))

    def __pow__(self, e: int) -> FpPolynomial:
        out = FpPolynomial(self.p, [1])
        for _ in range(e):
            out = out * self
        return out


# ---------------------------------------------------------------------------
# Factorization oracle
# ---------------------------------------------------------------------------


def _pth_root(a: Sequence[int], p: int) -> list[int]:
    return [a[i] for i in range(0, len(a), p)]


def _squarefree(f: list[int], p: int) -> list[tuple[list[int], int]]:
    # Monic f; returns squarefree, pairwise coprime parts with multiplicities.
    out: list[tuple[list[int], int]] = []
    df = _deriv(f, p)
    if not df:
        return [(g, m * p) for g, m in _squarefree(_pth_root(f, p), p)]
    c = _gcd(f, df, p)
    w = _divmod(f, c, p)[0]
    i = 1
    while len(w) > 1:
        y = _gcd(w, c, p)
        fac = _divmod(w, y, p)[0]
        if len(fac) > 1:
            out.append((_monic(fac, p), i))
        w = y
        c = _divmod(c, y, p)[0]
        i += 1
    if len(c) > 1:
        out.extend((g, m * p) for g, m in _squarefree(_pth_root(c, p), p))
    return out


def _distinct_degree(f: list[int], p: int) -> list[tuple[list[int], int]]:
    out = []
    rest = f
    rows = _frobenius_matrix(rest, p)
    h = [0, 1]
    d = 0
    while len(rest) - 1 >= 2 * (d + 1):
        d += 1
        h = _frobenius(h, rows, len(rest) - 1, p)
        g = _gcd(rest, _sub(h, [0, 1], p), p)
        if len(g) > 1:
            out.append((g, d))
            rest = _divmod(rest, g, p)[0]
            if len(rest) > 1:
                rows = _frobenius_matrix(rest, p)
                h = _mod(h, rest, p)
    if len(rest) > 1:
        out.append((rest, len(rest) - 1))
    return out


def _equal_degree(g: list[int], d: int, p: int, rng: random.Random) -> list[list[int]]:
    n = len(g) - 1
    if n == d:
        return [g]
    rows = _frobenius_matrix(g, p)
    while True:
        r = _strip([rng.randrange(p) for _ in range(n)])
        if len(r) < 2:
            continue
        # r^((p^d - 1)/2) = (r * r^p * ... * r^(p^(d-1)))^((p-1)/2)
        norm, conj = r, r
        for _ in range(d - 1):
            conj = _frobenius(conj, rows, n, p)
            norm = _mulmod(norm, conj, g, p)
        u = _powmod(norm, (p - 1) // 2, g, p)
        s = _gcd(g, _sub(u, [1], p), p)
        if 1 < len(s) < len(g):
            t = _monic(_divmod(g, s, p)[0], p)
            return _equal_degree(s, d, p, rng) + _equal_degree(t, d, p, rng)


def _seed(p: int, coeffs: Sequence[int]) -> int:
    digest = hashlib.sha256(f"{p}:{','.join(map(str, coeffs))}".encode()).digest()
    return int.from_bytes(digest[:8], "big")


@dataclass(frozen=True)
class Factorization:
    """``lead * prod(g**m for g, m in factors)``, factors monic irreducible."""

    p: int
    lead: int
    factors: tuple[tuple[FpPolynomial, int], ...]

    def expand(self) -> FpPolynomial:
        out = FpPolynomial(self.p, [self.lead])
        for g, m in self.factors:
            out = out * g**m
        return out

    @property
    def degrees(self) -> list[int]:
        return sorted(g.degree for g, m in self.factors for _ in range(m))

    def is_trivial(self) -> bool:
        """True when the input was irreducible."""
        return len(self.factors) == 1 and self.factors[0][1] == 1

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "lead": self.lead,
            "factors": [{"coeffs": list(g.coeffs), "mult": m} for g, m in self.factors],
        }

    @classmethod
    def from_json(cls, data: dict) -> Factorization:
        p = data["p"]
        return cls(
            p,
            data.get("lead", 1),
            tuple((FpPolynomial(p, f["coeffs"]), f["mult"]) for f in data["factors"]),
        )


def factor(poly: FpPolynomial) -> Factorization:
    """Complete factorization over F_p: square-free, distinct-degree, then
    Cantor-Zassenhaus equal-degree splitting.

    Splitting is randomized with a generator seeded from ``(p, coeffs)``, so
    output is reproducible.
    """
    p = poly.p
    check_odd_prime(p)
    if poly.is_zero():
        raise DomainError("cannot factor the zero polynomial")
    lead = poly.coeffs[-1]
    f = _monic(poly.coeffs, p)
    rng = random.Random(_seed(p, poly.coeffs))
    found: list[tuple[list[int], int]] = []
    if len(f) > 1:
        for part, mult in _squarefree(f, p):
            for block, d in _distinct_degree(part, p):
                found.extend((g, mult) for g in _equal_degree(block, d, p, rng))
    found.sort(key=lambda gm: (len(gm[0]), gm[0][::-1], gm[1]))
    return Factorization(p, lead, tuple((FpPolynomial(p, g), m) for g, m in found))


def _prime_divisors(n: int) -> list[int]:
    out, q = [], 2
    while q * q <= n:
        if n % q == 0:
            out.append(q)
            while n % q == 0:
                n //= q
        q += 1
    if n > 1:
        out.append(n)
    return out


def is_irreducible(poly: FpPolynomial) -> bool:
    """Rabin's test: ``x^(p^n) = x mod f`` and ``gcd(x^(p^(n/q)) - x, f) = 1``
    for every prime ``q | n``."""
    p = poly.p
    check_odd_prime(p)
    n = poly.degree
    if n < 1:
        raise DomainError("irreducibility is undefined for constants")
    if n == 1:
        return True
    f = _monic(poly.coeffs, p)
    rows = _frobenius_matrix(f, p)
    wanted = {n // q for q in _prime_divisors(n)}
    h = [0, 1]
    for k in range(1, n + 1):
        h = _frobenius(h, rows, n, p)
        if k in wanted and len(_gcd(f, _sub(h, [0, 1], p), p)) > 1:
            return False
    return _sub(h, [0, 1], p) == []


def iterate_mod(f: MonicQuadratic, n: int, p: int) -> FpPolynomial:
    """``f^n mod p`` built directly in F_p[x]."""
    lin, con = f.lin % p, f.con % p
    cur = [0, 1]
    for _ in range(n):
        sq = _mul(cur, cur, p)
        lin_part = [lin * c for c in cur] + [0] * (len(sq) - len(cur))
        out = [s + l for s, l in zip(sq, lin_part)]
        out[0] += con
        cur = _strip([c % p for c in out])
    return FpPolynomial(p, cur)


# ---------------------------------------------------------------------------
# Batched Rabin test (numpy) for sweeps over many moduli of equal degree
# ---------------------------------------------------------------------------


def _batch_mulmod(a: np.ndarray, b: np.ndarray, low: np.ndarray, p: int) -> np.ndarray:
    # a, b: (M, n) residues; low: (M, n) non-leading coefficients of monic moduli.
    m, n = a.shape
    prod = np.zeros((m, 2 * n - 1), dtype=np.int64)
    for i in range(n):
        prod[:, i : i + n] += a[:, i : i + 1] * b
    prod %= p
    for k in range(2 * n - 2, n - 1, -1):
        c = prod[:, k] % p
        prod[:, k - n : k] -= c[:, None] * low
    return prod[:, :n] % p


def batch_is_irreducible(moduli: np.ndarray, p: int) -> np.ndarray:
    """Vectorized Rabin test for a stack of monic polynomials of equal degree.

    ``moduli`` has shape ``(M, n + 1)`` with constant term first and every
    leading entry equal to 1. Returns a boolean array of length ``M``.
    """
    check_odd_prime(p)
    moduli = np.asarray(moduli, dtype=np.int64) % p
    m, n1 = moduli.shape
    n = n1 - 1
    if m == 0:
        return np.zeros(0, dtype=bool)
    if n < 1 or np.any(moduli[:, -1] != 1):
        raise DomainError("batch_is_irreducible needs monic moduli of degree >= 1")
    if n == 1:
        return np.ones(m, dtype=bool)
    low = moduli[:, :n]
    x = np.zeros((m, n), dtype=np.int64)
    x[:, 1] = 1
    # x^p mod f, then the Frobenius matrix rows x^(i p).
    xp = np.zeros((m, n), dtype=np.int64)
    xp[:, 0] = 1
    base, e = x.copy(), p
    while e:
        if e & 1:
            xp = _batch_mulmod(xp, base, low, p)
        e >>= 1
        if e:
            base = _batch_mulmod(base, base, low, p)
    frob = np.zeros((m, n, n), dtype=np.int64)
    frob[:, 0, 0] = 1
    for i in range(1, n):
        frob[:, i, :] = _batch_mulmod(frob[:, i - 1, :], xp, low, p)
    wanted = {n // q for q in _prime_divisors(n)}
    h = x
    checks: dict[int, np.ndarray] = {}
    for k in range(1, n + 1):
        h = np.einsum("mi,mij->mj", h, frob) % p
        if k in wanted:
            checks[k] = h - x
    ok = np.all((h - x) % p == 0, axis=1)
    for idx in np.flatnonzero(ok):
        f = [int(c) for c in moduli[idx]]
        for diff in checks.values():
            if len(_gcd(f, _strip([int(c) % p for c in diff[idx]]), p)) > 1:
                ok[idx] = False
                break
    return ok


# ---------------------------------------------------------------------------
# Squareness, orbits and type strings
# ---------------------------------------------------------------------------


class Squareness(str, enum.Enum):
    SQUARE = "square"
    NONSQUARE = "nonsquare"
    ZERO = "zero"


def squareness(x: int, p: int) -> Squareness:
    """Euler's criterion. Zero is reported as ZERO, never as SQUARE."""
    check_odd_prime(p)
    x %= p
    if x == 0:
        return Squareness.ZERO
    return Squareness.SQUARE if pow(x, (p - 1) // 2, p) == 1 else Squareness.NONSQUARE


def is_nonsquare(x: int, p: int) -> bool:
    """Hot-loop variant of :func:`squareness`; no primality check."""
    x %= p
    return x != 0 and pow(x, (p - 1) // 2, p) == p - 1


def orbit_mod(f: MonicQuadratic, p: int) -> tuple[list[int], int, int]:
    """Post-critical orbit of ``f mod p``: ``(orbit, t_f, c)``."""
    lin, con = f.lin % p, f.con % p
    c = (-lin * pow(2, -1, p)) % p
    orbit, tail = forward_orbit(lambda v: (v * v + lin * v + con) % p, c)
    return orbit, tail, c


def quadratic_irreducible(f: MonicQuadratic, p: int) -> bool:
    """Discriminant test for ``f mod p`` (no primality check)."""
    return is_nonsquare(f.lin * f.lin - 4 * f.con, p)


@dataclass(frozen=True)
class TypeString:
    """The ``s``/``n`` word of ``g`` along the post-critical orbit of ``f`` mod ``p``.

    A zero value ``g(beta) = 0`` is recorded as ``s`` and its 1-based position
    listed in ``zero_positions``. ``g_irreducible`` records whether the
    standing hypothesis "g irreducible mod p" held.
    """

    entries: str
    p: int
    orbit: tuple[int, ...]
    values: tuple[int, ...]
    zero_positions: tuple[int, ...]
    g_irreducible: bool

    def __str__(self) -> str:
        return self.entries

    def __len__(self) -> int:
        return len(self.entries)

    def all_n(self) -> bool:
        return set(self.entries) == {"n"}

    def to_dict(self) -> dict:
        return {
            "type": self.entries,
            "p": self.p,
            "orbit": list(self.orbit),
            "values": list(self.values),
            "zero_positions": list(self.zero_positions),
            "g_irreducible": self.g_irreducible,
        }


def type_string(g: MonicQuadratic, f: MonicQuadratic, p: int) -> TypeString:
    """Type of ``g`` with respect to the post-critical orbit of ``f`` over F_p.

    >>> str(type_string(MonicQuadratic(2, -1), MonicQuadratic(0, -2), 5))
    'sn'
    """
    check_odd_prime(p)
    orbit, _, _ = orbit_mod(f, p)
    values = tuple(g(b) % p for b in orbit)
    entries = "".join("n" if is_nonsquare(v, p) else "s" for v in values)
    zeros = tuple(i + 1 for i, v in enumerate(values) if v == 0)
    return TypeString(entries, p, tuple(orbit), values, zeros, quadratic_irreducible(g, p))


def first_reducible_iterate(f: MonicQuadratic, p: int, n_max: int) -> int | None:
    """Smallest ``n <= n_max`` with ``f^n`` reducible mod ``p``, read off the type string.

    ``f`` reducible gives 1; otherwise the first ``s`` at entry ``i`` gives
    ``i + 1``; an all-``n`` type gives None.
    """
    check_odd_prime(p)
    if n_max < 1:
        return None
    if not quadratic_irreducible(f, p):
        return 1
    ts = type_string(f, f, p)
    i = ts.entries.find("s")
    if i < 0 or i + 2 > n_max:
        return None
    return i + 2


@dataclass(frozen=True)
class FFStabilityData:
    """Orbit data deciding stability of ``f`` over F_p.

    ``witness_values`` is ``[-f(c), f^2(c), ..., f^(o_f+1)(c)]``; ``f`` is
    stable iff all of them are non-squares. ``first_reducible`` is the
    smallest ``n`` whose value is not a non-square (None when stable).
    """

    p: int
    o_f: int
    t_f: int
    required_iterate: int
    stable: bool
    witness_values: tuple[int, ...]
    first_reducible: int | None

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "o_f": self.o_f,
            "t_f": self.t_f,
            "required_iterate": self.required_iterate,
            "stable": self.stable,
            "witness_values": list(self.witness_values),
            "first_reducible": self.first_reducible,
        }


def ff_stability_data(
    f: MonicQuadratic,
    p: int,
    nonsquare_test: Callable[[int, int], bool] | None = None,
) -> FFStabilityData:
    """Stability data of ``f mod p``.

    ``nonsquare_test(x, p)`` may replace :func:`is_nonsquare` to inject faults when testing
    harnesses built on top of this function.
    """
    check_odd_prime(p)
    nonsq = nonsquare_test or is_nonsquare
    orbit, tail, _ = orbit_mod(f, p)
    o = len(orbit)
    values = [(-orbit[0]) % p] + orbit[1:] + [orbit[tail]]
    first = next((i + 1 for i, v in enumerate(values) if not nonsq(v, p)), None)
    return FFStabilityData(
        p=p,
        o_f=o,
        t_f=tail,
        required_iterate=o + 1 if tail == 0 else o,
        stable=first is None,
        witness_values=tuple(values),
        first_reducible=first,
    )
