"""Stability over the rationals for the PCF families F_a, G_a, H_a.

An irreducible ``f`` in one of the families is stable unless its shift ``a``
lies on an explicit exceptional curve:

    F_a:  a = -4 u**4                 (f^2 reducible)
    H_a:  a = 2 - (2 v**2 - 2)**2     (f^2 reducible)
    G_a:  a = -(2 p**2 - 1)**2        (f^2 reducible)
          a = -4 s**4 - 1, s = r(r + t) or r(r - t),
              2 r**2 - t**2 = 2       (f^3 reducible)

Three further G shifts ``a = -m**2, m in {9, 9801, 332929}`` are believed
stable but unproven; they get a separate ``CONJECTURALLY_STABLE`` verdict.

Every reducibility claim carries a :class:`FactorWitness`, an explicit monic
``h`` with ``f^n(x) = h(x + a) * h(-(x + a))``, checked by multiplication.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .core_arith import (
    PellSolution,
    integer_fourth_root,
    integer_sqrt,
    is_perfect_square,
    pell_solutions,
)
from .errors import DomainError, InconsistencyError
from .quad_poly import (
    Family,
    IntPolynomial,
    MonicQuadratic,
    OrbitInfo,
    PCFForm,
    iterate,
)

__all__ = [
    "AMInvariants",
    "BaseCheck",
    "CONJECTURAL_SET",
    "ExceptionParameters",
    "FactorWitness",
    "Lemma24Report",
    "RequiredIterate",
    "StabilityStatus",
    "StabilityVerdict",
    "am_invariants",
    "base_reducibility_check",
    "exception_parameters",
    "exceptional_shifts",
    "factor_witness",
    "g_sequence",
    "lemma24_chain",
    "required_iterate",
    "rigidity_index",
    "stability_verdict",
]

CONJECTURAL_SET = (9, 9801, 332929)


# ---------------------------------------------------------------------------
# Invariants
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AMInvariants:
    """Discriminant ``d_f``, ``delta_f = -d_f + 2 lin`` and their quarters."""

    d_f: int
    delta_f: int

    @property
    def d_0(self) -> Fraction:
        return Fraction(self.d_f, 4)

    @property
    def delta_0(self) -> Fraction:
        return Fraction(self.delta_f, 4)


def am_invariants(f: MonicQuadratic, form: PCFForm | None = None) -> AMInvariants:
    d = f.lin * f.lin - 4 * f.con
    inv = AMInvariants(d, -d + 2 * f.lin)
    if form is not None:
        a = form.shift
        expected = {
            Family.F: (4 * a, 0),
            Family.G: (4 * a + 4, -4),
            Family.H: (4 * a + 8, -8),
        }[form.family]
        if (inv.d_f, inv.delta_f) != expected:
            raise InconsistencyError(f"{f} does not match normal form {form}")
    return inv


def g_sequence(delta_0, length: int) -> list[Fraction]:
    """``g_0 = -delta_0``, ``g_(r+1) = g_r**2 + delta_0``."""
    if length < 1:
        raise DomainError(f"length must be positive, got {length}")
    d = Fraction(delta_0)
    out = [-d]
    while len(out) < length:
        out.append(out[-1] ** 2 + d)
    return out


def rigidity_index(family: Family) -> int:
    return 3 if Family(family) is Family.G else 2


# ---------------------------------------------------------------------------
# Exceptional parameters
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ExceptionParameters:
    """Where ``a`` sits on an exceptional curve.

    ``kind`` is one of ``"F"`` (``u``), ``"H"`` (``v``), ``"G2"`` (``p``) or
    ``"G3"`` (Pell ``r, t``, ``sign`` and ``s = |r (r + sign t)|``).
    ``iterate`` is the first reducible iterate.
    """

    kind: str
    iterate: int
    params: tuple[tuple[str, int], ...]

    def __getitem__(self, key: str) -> int:
        return dict(self.params)[key]

    def to_dict(self) -> dict:
        return {"kind": self.kind, "iterate": self.iterate, **{k: str(v) for k, v in self.params}}


def _g3_from_s(s: int) -> ExceptionParameters | None:
    for sol in pell_solutions(max(s, 1)):
        r, t = sol
        if r * (r + t) == s:
            return ExceptionParameters("G3", 3, (("r", r), ("t", t), ("sign", 1), ("s", s)))
        if abs(r * (r - t)) == s:
            return ExceptionParameters("G3", 3, (("r", r), ("t", t), ("sign", -1), ("s", s)))
    return None


def exception_parameters(form: PCFForm) -> ExceptionParameters | None:
    """Locate ``a`` on its family's exceptional curve by root extraction."""
    a = form.shift
    if form.family is Family.F:
        if a <= 0 and a % 4 == 0:
            u = integer_fourth_root(-a // 4)
            if u is not None:
                return ExceptionParameters("F", 2, (("u", u),))
        return None
    if form.family is Family.H:
        w = is_perfect_square(2 - a)
        if w is None:
            return None
        for num in (w + 2, 2 - w):
            if num >= 0 and num % 2 == 0:
                v = is_perfect_square(num // 2)
                if v is not None:
                    return ExceptionParameters("H", 2, (("v", v),))
        return None
    # Family G.
    q = is_perfect_square(-a)
    if q is not None and q % 2 == 1:
        p = is_perfect_square((q + 1) // 2)
        if p is not None:
            return ExceptionParameters("G2", 2, (("p", p),))
    m = -a - 1
    if m > 0 and m % 4 == 0:
        s = integer_fourth_root(m // 4)
        if s is not None:
            return _g3_from_s(s)
    return None


def exceptional_shifts(family: Family, bound: int) -> list[tuple[int, ExceptionParameters]]:
    """Every exceptional shift ``a`` of ``family`` with ``|a| <= bound``, generated
    forward from the parametrizations and sorted by ``a``."""
    family = Family(family)
    found: dict[int, ExceptionParameters] = {}
    if family is Family.F:
        u = 0
        while 4 * u**4 <= bound:
            found[-4 * u**4] = ExceptionParameters("F", 2, (("u", u),))
            u += 1
    elif family is Family.H:
        v = 0
        while (2 * v * v - 2) ** 2 - 2 <= bound:
            a = 2 - (2 * v * v - 2) ** 2
            found.setdefault(a, ExceptionParameters("H", 2, (("v", v),)))
            v += 1
    else:
        p = 0
        while (2 * p * p - 1) ** 2 <= bound:
            a = -((2 * p * p - 1) ** 2)
            found.setdefault(a, ExceptionParameters("G2", 2, (("p", p),)))
            p += 1
        for r, t in pell_solutions(max(1, integer_sqrt(bound))):
            for sign in (1, -1):
                s = abs(r * (r + sign * t))
                a = -4 * s**4 - 1
                if -a <= bound:
                    found.setdefault(
                        a, ExceptionParameters("G3", 3, (("r", r), ("t", t), ("sign", sign), ("s", s)))
                    )
    return sorted(found.items())


# ---------------------------------------------------------------------------
# Witnesses
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FactorWitness:
    """``f^n(x) = h(x + shift) * h(-(x + shift))`` with ``h`` monic of degree ``2^(n-1)``.

    ``convention`` names the second factor that reproduced ``f^n``:
    ``"h(-(x+a))"`` normally, ``"h(-(x-a))"`` if only the alternative works.
    """

    n: int
    h: IntPolynomial
    shift: int
    convention: str = "h(-(x+a))"

    def factors(self) -> tuple[IntPolynomial, IntPolynomial]:
        a = self.shift
        first = self.h.taylor_shift(a)
        if self.convention == "h(-(x+a))":
            second = self.h.reflect().taylor_shift(a)
        else:
            second = self.h.reflect().taylor_shift(-a)
        return first, second

    def expand(self) -> IntPolynomial:
        first, second = self.factors()
        return first * second

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "h": self.h.to_json(),
            "shift": str(self.shift),
            "convention": self.convention,
        }


def _witness_h(form: PCFForm, exc: ExceptionParameters) -> IntPolynomial:
    if exc.kind == "F":
        u = exc["u"]
        return IntPolynomial((2 * u * u, 2 * u, 1))
    if exc.kind == "H":
        v = exc["v"]
        return IntPolynomial((2 * v * v - 2, 2 * v, 1))
    if exc.kind == "G2":
        p = exc["p"]
        return IntPolynomial((2 * p * p - 1, 2 * p, 1))
    # Quartic y^4 + k y^3 + l y^2 + m y + n with k = 2r, l = 2r^2 - 2, and m a
    # root of 8m^2 - 16 r D m + D^3 - 16 D = 0, D = 4r^2 - 4; then n = m^2 / D.
    r, t, sign = exc["r"], exc["t"], exc["sign"]
    k, l = 2 * r, 2 * r * r - 2
    d = 4 * r * r - 4
    if d == 0:
        m, n = 0, 2
    else:
        disc = (16 * r * d) ** 2 - 32 * (d**3 - 16 * d)
        root = is_perfect_square(disc)
        if root is None or (16 * r * d + sign * root) % 16:
            raise InconsistencyError(f"no integral root m for Pell pair ({r}, {t})")
        m = (16 * r * d + sign * root) // 16
        if (m * m) % d:
            raise InconsistencyError(f"m^2 not divisible by 4r^2 - 4 for ({r}, {t})")
        n = m * m // d
    if -(n * n + 1) != form.shift:
        raise InconsistencyError(f"Pell witness gives a = {-(n * n + 1)}, expected {form.shift}")
    return IntPolynomial((n, m, l, k, 1))


def factor_witness(form: PCFForm) -> FactorWitness:
    """Explicit factorization of the first reducible iterate of an exceptional form.

    Raises DomainError if ``form`` is not exceptional and InconsistencyError
    if the constructed factors fail to multiply back to ``f^n``.
    """
    exc = exception_parameters(form)
    if exc is None:
        raise DomainError(f"{form} is not on an exceptional curve")
    h = _witness_h(form, exc)
    target = iterate(form.polynomial(), exc.iterate)
    for convention in ("h(-(x+a))", "h(-(x-a))"):
        w = FactorWitness(exc.iterate, h, form.shift, convention)
        if w.expand() == target:
            return w
    raise InconsistencyError(f"witness for {form} does not reproduce f^{exc.iterate}")


# ---------------------------------------------------------------------------
# Verdicts
# ---------------------------------------------------------------------------


class StabilityStatus(str, enum.Enum):
    STABLE = "Stable"
    REDUCIBLE_AT = "ReducibleAt"
    CONJECTURALLY_STABLE = "ConjecturallyStable"
    BASE_REDUCIBLE = "BaseReducible"


@dataclass(frozen=True)
class StabilityVerdict:
    form: PCFForm
    status: StabilityStatus
    rigidity_index: int
    reducible_at: int | None = None
    witness: FactorWitness | None = None
    exception: ExceptionParameters | None = None
    conjecture_m: int | None = None

    @property
    def conjectural(self) -> bool:
        return self.status is StabilityStatus.CONJECTURALLY_STABLE

    @property
    def stable(self) -> bool:
        """Stable or conjecturally stable."""
        return self.status in (StabilityStatus.STABLE, StabilityStatus.CONJECTURALLY_STABLE)

    def to_dict(self) -> dict:
        return {
            "family": self.form.family.value,
            "a": str(self.form.shift),
            "status": self.status.value,
            "rigidity_index": self.rigidity_index,
            "reducible_at": self.reducible_at,
            "exception": None if self.exception is None else self.exception.to_dict(),
            "witness": None if self.witness is None else self.witness.to_dict(),
            "conjecture_m": self.conjecture_m,
            "conjectural": self.conjectural,
        }


def stability_verdict(form: PCFForm) -> StabilityVerdict:
    ri = rigidity_index(form.family)
    f = form.polynomial()
    if is_perfect_square(am_invariants(f, form).d_f) is not None:
        return StabilityVerdict(form, StabilityStatus.BASE_REDUCIBLE, ri, reducible_at=1)
    if form.family is Family.G:
        m = is_perfect_square(-form.shift)
        if m in CONJECTURAL_SET:
            return StabilityVerdict(form, StabilityStatus.CONJECTURALLY_STABLE, ri, conjecture_m=m)
    exc = exception_parameters(form)
    if exc is None:
        return StabilityVerdict(form, StabilityStatus.STABLE, ri)
    w = factor_witness(form)
    return StabilityVerdict(form, StabilityStatus.REDUCIBLE_AT, ri, exc.iterate, w, exc)


@dataclass(frozen=True)
class Lemma24Report:
    base_irreducible: bool
    nonsquare_from_2: bool

    @property
    def certified_stable(self) -> bool:
        return self.base_irreducible and self.nonsquare_from_2

    def to_dict(self) -> dict:
        return {
            "base_irreducible": self.base_irreducible,
            "nonsquare_from_2": self.nonsquare_from_2,
            "certified_stable": self.certified_stable,
        }


def lemma24_chain(f: MonicQuadratic, orbit: OrbitInfo) -> Lemma24Report:
    """Sufficient condition for stability over Q: ``f`` irreducible and no
    ``f^n(c)``, ``n >= 2``, is a perfect square.

    The values ``f^n(c)`` for ``n >= 2`` are ``orbit[1:]`` plus ``orbit[t_f]``.
    """
    later = set(orbit.orbit[1:]) | {orbit.orbit[orbit.t_f]}
    return Lemma24Report(
        base_irreducible=is_perfect_square(f.discriminant) is None,
        nonsquare_from_2=all(is_perfect_square(v) is None for v in later),
    )


@dataclass(frozen=True)
class BaseCheck:
    passes: bool
    a_r: int | None = None
    b_r: int | None = None

    def to_dict(self) -> dict:
        return {
            "passes": self.passes,
            "a_r": None if self.a_r is None else str(self.a_r),
            "b_r": None if self.b_r is None else str(self.b_r),
        }


def base_reducibility_check(form: PCFForm | MonicQuadratic, n: int) -> BaseCheck:
    """Rational-level necessary condition for ``f^(n+1)`` to be reducible given
    ``f^n`` irreducible: integers ``a, b`` with ``g_(n-1)**2 - b**2 = d_0`` and
    ``a**2 = (g_(n-1) + b) / 2``.

    Failure certifies ``f^(n+1)`` irreducible; for ``n == 1`` passing is also
    sufficient for ``f^2`` to be reducible.
    """
    if n < 1:
        raise DomainError(f"n must be positive, got {n}")
    f = form.polynomial() if isinstance(form, PCFForm) else form
    inv = am_invariants(f)
    g = g_sequence(inv.delta_0, n)[-1]
    d0 = inv.d_0
    if g.denominator != 1 or d0.denominator != 1:
        raise DomainError(f"{f} has non-integral invariants (odd linear coefficient)")
    g, d0 = int(g), int(d0)
    b = is_perfect_square(g * g - d0)
    if b is None:
        return BaseCheck(False)
    for bb in (b, -b):
        if (g + bb) % 2 == 0:
            ar = is_perfect_square((g + bb) // 2)
            if ar is not None:
                return BaseCheck(True, ar, bb)
    return BaseCheck(False)


@dataclass(frozen=True)
class RequiredIterate:
    """Iterate whose irreducibility decides stability: ``o_f + 1`` for
    ``t_f = 0``, else ``o_f``. ``proven`` holds for ``t_f = 1``; the rest is
    conjectural in general."""

    value: int
    proven: bool

    def __int__(self) -> int:
        return self.value


def required_iterate(orbit: OrbitInfo) -> RequiredIterate:
    if orbit.t_f == 0:
        return RequiredIterate(orbit.o_f + 1, False)
    return RequiredIterate(orbit.o_f, orbit.t_f == 1)
