"""Monic integer quadratics, their iterates, and post-critical orbits.

Every monic PCF quadratic over the integers is one of

    F_a(x) = (x + a)**2 - a
    G_a(x) = (x + a)**2 - a - 1
    H_a(x) = (x + a)**2 - a - 2

and :func:`detect_pcf_form` recovers the family and shift ``a``.
:func:`critical_orbit` decides post-critical finiteness independently, by
iterating the critical point until it cycles or provably escapes.
"""

from __future__ import annotations

import enum
import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Hashable, Iterable, Sequence, TypeVar

from .errors import DomainError, ResourceError

__all__ = [
    "DEFAULT_ITERATE_CAP",
    "Family",
    "IntPolynomial",
    "MonicQuadratic",
    "NotPCF",
    "OrbitInfo",
    "PCFForm",
    "critical_orbit",
    "detect_pcf_form",
    "forward_orbit",
    "iterate",
    "iterate_cap",
]

DEFAULT_ITERATE_CAP = 12

T = TypeVar("T", bound=Hashable)


def iterate_cap() -> int:
    """Iterate depth cap; ``PCF_ITERATE_CAP`` in the environment overrides the default."""
    raw = os.environ.get("PCF_ITERATE_CAP")
    if raw is None:
        return DEFAULT_ITERATE_CAP
    try:
        cap = int(raw)
    except ValueError:
        raise DomainError(f"PCF_ITERATE_CAP must be an integer, got {raw!r}") from None
    if cap < 0:
        raise DomainError(f"PCF_ITERATE_CAP must be nonnegative, got {cap}")
    return cap


# ---------------------------------------------------------------------------
# Integer polynomials
# ---------------------------------------------------------------------------


def _trim(coeffs: Iterable[int]) -> tuple[int, ...]:
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _kronecker_mul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    # Pack both polynomials into big integers at a byte-aligned radix wide
    # enough for every product coefficient, multiply once, unpack.
    bound = min(len(a), len(b)) * max(map(abs, a)) * max(map(abs, b))
    nbytes = (bound.bit_length() + 2 + 7) // 8
    shift = 8 * nbytes
    half = 1 << (shift - 1)

    def pack(c: Sequence[int]) -> int:
        return sum(x << (shift * i) for i, x in enumerate(c))

    n = len(a) + len(b) - 1
    # Offsetting every digit by ``half`` keeps all digits nonnegative.
    offset = sum(half << (shift * i) for i in range(n))
    raw = (pack(a) * pack(b) + offset).to_bytes(n * nbytes, "little")
    return [int.from_bytes(raw[i * nbytes : (i + 1) * nbytes], "little") - half for i in range(n)]


@dataclass(frozen=True)
class IntPolynomial:
    """Polynomial with integer coefficients, constant term first.

    The zero polynomial has ``coeffs == ()`` and degree ``-1``.
    """

    coeffs: tuple[int, ...]

    def __init__(self, coeffs: Iterable[int] = ()):
        object.__setattr__(self, "coeffs", _trim(int(c) for c in coeffs))

    @classmethod
    def x(cls) -> IntPolynomial:
        return cls((0, 1))

    @classmethod
    def constant(cls, c: int) -> IntPolynomial:
        return cls((c,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_monic(self) -> bool:
        return self.leading == 1

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __add__(self, other: IntPolynomial) -> IntPolynomial:
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return IntPolynomial(x + (b[i] if i < len(b) else 0) for i, x in enumerate(a))

    def __neg__(self) -> IntPolynomial:
        return IntPolynomial(-c for c in self.coeffs)

    def __sub__(self, other: IntPolynomial) -> IntPolynomial:
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return IntPolynomial(c * other for c in self.coeffs)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return IntPolynomial()
        if min(len(a), len(b)) < 8:
            out = [0] * (len(a) + len(b) - 1)
            for i, x in enumerate(a):
                if x:
                    for j, y in enumerate(b):
                        out[i + j] += x * y
            return IntPolynomial(out)
        return IntPolynomial(_kronecker_mul(a, b))

    __rmul__ = __mul__

    def compose(self, inner: IntPolynomial) -> IntPolynomial:
        """``self(inner(x))`` by Horner's rule."""
        acc = IntPolynomial()
        for c in reversed(self.coeffs):
            acc = acc * inner + IntPolynomial.constant(c)
        return acc

    def taylor_shift(self, s: int) -> IntPolynomial:
        """``self(x + s)``."""
        c = list(self.coeffs)
        n = len(c)
        for i in range(n - 1):
            for j in range(n - 2, i - 1, -1):
                c[j] += s * c[j + 1]
        return IntPolynomial(c)

    def reflect(self) -> IntPolynomial:
        """``self(-x)``."""
        return IntPolynomial(c if i % 2 == 0 else -c for i, c in enumerate(self.coeffs))

    def to_json(self) -> list[str]:
        return [str(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, data: Sequence[str]) -> IntPolynomial:
        return cls(int(s) for s in data)

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            mag = abs(c)
            body = f"{mag}" if (mag != 1 or i == 0) else ""
            body = f"{body}*{mono}" if body and mono else (body or mono)
            sign = "-" if c < 0 else "+"
            terms.append((sign, body))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out


# ---------------------------------------------------------------------------
# Monic quadratics and normal forms
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MonicQuadratic:
    """``x**2 + lin*x + con``."""

    lin: int
    con: int

    def __call__(self, x):
        return x * x + self.lin * x + self.con

    @property
    def critical_point(self) -> Fraction:
        return Fraction(-self.lin, 2)

    @property
    def discriminant(self) -> int:
        return self.lin * self.lin - 4 * self.con

    def as_polynomial(self) -> IntPolynomial:
        return IntPolynomial((self.con, self.lin, 1))

    def __str__(self) -> str:
        return str(self.as_polynomial())


class Family(str, enum.Enum):
    """The three PCF families; the value is the constant offset ``k`` tag."""

    F = "F"
    G = "G"
    H = "H"

    @property
    def offset(self) -> int:
        return {"F": 0, "G": 1, "H": 2}[self.value]


@dataclass(frozen=True)
class PCFForm:
    """``(x + shift)**2 - shift - family.offset``."""

    family: Family
    shift: int

    def __post_init__(self):
        object.__setattr__(self, "family", Family(self.family))

    @property
    def a(self) -> int:
        return self.shift

    def polynomial(self) -> MonicQuadratic:
        a = self.shift
        return MonicQuadratic(2 * a, a * a - a - self.family.offset)

    def __str__(self) -> str:
        return f"{self.family.value}_{self.shift}"


def detect_pcf_form(f: MonicQuadratic) -> PCFForm | None:
    """Return the normal form of ``f`` if it lies in one of the three families."""
    if f.lin % 2:
        return None
    a = f.lin // 2
    k = a * a - a - f.con
    if k not in (0, 1, 2):
        return None
    return PCFForm(Family("FGH"[k]), a)


# ---------------------------------------------------------------------------
# Orbits
# ---------------------------------------------------------------------------


def forward_orbit(
    step: Callable[[T], T],
    start: T,
    escaped: Callable[[T], bool] | None = None,
) -> tuple[list[T], int] | tuple[None, int]:
    """Iterate ``step`` from ``start`` and record ``[step(start), step^2(start), ...]``.

    Returns ``(orbit, tail)`` once a value repeats, where ``orbit[tail]`` is
    where the cycle re-enters. If ``escaped`` flags a value first, returns
    ``(None, index)`` with the 1-based iteration index of that value.
    """
    seen: dict[T, int] = {}
    orbit: list[T] = []
    v = start
    while True:
        v = step(v)
        if v in seen:
            return orbit, seen[v]
        if escaped is not None and escaped(v):
            return None, len(orbit) + 1
        seen[v] = len(orbit)
        orbit.append(v)


@dataclass(frozen=True)
class OrbitInfo:
    """Post-critical orbit ``[f(c), f^2(c), ...]`` with duplicates dropped."""

    orbit: tuple[int, ...]
    t_f: int

    @property
    def o_f(self) -> int:
        return len(self.orbit)

    @property
    def cycle_length(self) -> int:
        return self.o_f - self.t_f

    @property
    def tail(self) -> tuple[int, ...]:
        return self.orbit[: self.t_f]

    @property
    def cycle(self) -> tuple[int, ...]:
        return self.orbit[self.t_f :]

    def to_dict(self) -> dict:
        return {
            "pcf": True,
            "orbit": [str(v) for v in self.orbit],
            "o_f": self.o_f,
            "t_f": self.t_f,
            "cycle_length": self.cycle_length,
        }


@dataclass(frozen=True)
class NotPCF:
    """Certificate that the critical orbit is infinite.

    ``reason`` is ``"odd_linear"`` when the critical point is a half-integer
    (denominators square at every step) or ``"escaped"`` when an orbit value
    reached the escape bound, past which ``|f(x)| > |x|`` forever.
    """

    reason: str
    escape_index: int | None = None
    escape_value: int | None = None

    def to_dict(self) -> dict:
        return {
            "pcf": False,
            "reason": self.reason,
            "escape_index": self.escape_index,
            "escape_value": None if self.escape_value is None else str(self.escape_value),
        }


def escape_bound(f: MonicQuadratic) -> int:
    return abs(f.lin) + abs(f.con) + 2


def critical_orbit(f: MonicQuadratic, bound: int | None = None) -> OrbitInfo | NotPCF:
    """Post-critical orbit of ``f`` or a certificate that it is infinite.

    ``bound`` overrides the escape bound; it must be at least the default
    ``|lin| + |con| + 2`` for the escape certificate to be valid.
    """
    if f.lin % 2:
        return NotPCF("odd_linear")
    b = escape_bound(f)
    if bound is not None:
        if bound < b:
            raise DomainError(f"escape bound {bound} below the safe minimum {b}")
        b = bound
    orbit, idx = forward_orbit(f, -f.lin // 2, lambda v: abs(v) >= b)
    if orbit is None:
        v = -f.lin // 2
        for _ in range(idx):
            v = f(v)
        return NotPCF("escaped", idx, v)
    return OrbitInfo(tuple(orbit), idx)


def iterate(f: MonicQuadratic, n: int, cap: int | None = None) -> IntPolynomial:
    """Exact coefficients of the ``n``-th iterate ``f^n`` (``f^0 = x``)."""
    if n < 0:
        raise DomainError(f"iterate index must be nonnegative, got {n}")
    cap = iterate_cap() if cap is None else cap
    if n > cap:
        raise ResourceError(f"iterate {n} exceeds the iterate cap {cap} (degree {2**cap})")
    p = IntPolynomial.x()
    lin, con = IntPolynomial.constant(f.lin), IntPolynomial.constant(f.con)
    for _ in range(n):
        # f(p) = p*(p + lin) + con
        p = p * (p + lin) + con
    return p
