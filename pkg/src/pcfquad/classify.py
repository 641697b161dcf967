"""Which monic PCF quadratics are stable yet have large iterates reducible mod every prime.

A PCF ``f`` qualifies iff it is irreducible, stable, and *special*: no odd
prime makes ``f mod p`` irreducible with an all-``n`` type string. Special
polynomials come in five shapes:

    1) (x - b^2)^2 + b^2          F, a = -b^2
    2) (x + b^2)^2 - b^2 - 1      G, a =  b^2
    3) (x - b^2)^2 + b^2 - 1      G, a = -b^2
    4) (x - b^2 - 1)^2 + b^2      G, a = -b^2 - 1
    5) (x + 2 - b^2)^2 + b^2 - 4  H, a = 2 - b^2

For qualifying ``f`` every iterate ``f^n`` with ``n >= o_f + 1`` is reducible
modulo every prime.
"""

from __future__ import annotations

import csv
import enum
import io
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable

import numpy as np

from .core_arith import is_perfect_square, primes_up_to
from .errors import DomainError, InconsistencyError, ResourceError
from .finite_field import (
    quadratic_irreducible,
    batch_is_irreducible,
    factor,
    ff_stability_data,
    first_reducible_iterate,
    iterate_mod,
    type_string,
)
from .quad_poly import (
    Family,
    MonicQuadratic,
    NotPCF,
    OrbitInfo,
    PCFForm,
    critical_orbit,
    detect_pcf_form,
    iterate_cap,
)
from .stability import StabilityStatus, StabilityVerdict, stability_verdict

__all__ = [
    "CSV_COLUMNS",
    "ClassificationVerdict",
    "Counterexample",
    "ModpReport",
    "Reason",
    "RigidityReport",
    "SpecialForm",
    "classify_theorem_1_1",
    "empirical_modp_check",
    "find_all_n_prime",
    "rigidity_sweep",
    "scan",
    "special_form_polynomial",
    "special_type_form",
    "special_type_forms",
    "verdicts_to_csv",
    "verdicts_to_json",
    "verify_ff_rigidity",
]


# ---------------------------------------------------------------------------
# Special forms
# ---------------------------------------------------------------------------


@dataclass(frozen=True, order=True)
class SpecialForm:
    form_index: int
    b: int

    def to_dict(self) -> dict:
        return {"form_index": self.form_index, "b": str(self.b)}


def special_form_polynomial(form_index: int, b: int) -> PCFForm:
    """The normal form of special shape ``form_index`` with parameter ``b``."""
    sq = b * b
    shifts = {1: (Family.F, -sq), 2: (Family.G, sq), 3: (Family.G, -sq), 4: (Family.G, -sq - 1), 5: (Family.H, 2 - sq)}
    fam, a = shifts[form_index]
    return PCFForm(fam, a)


def special_type_forms(form: PCFForm) -> list[SpecialForm]:
    """All special shapes matching ``form``, smallest index first."""
    a = form.shift
    out = []
    if form.family is Family.F:
        b = is_perfect_square(-a)
        if b is not None:
            out.append(SpecialForm(1, b))
    elif form.family is Family.G:
        for idx, n in ((2, a), (3, -a), (4, -a - 1)):
            b = is_perfect_square(n)
            if b is not None:
                out.append(SpecialForm(idx, b))
    else:
        b = is_perfect_square(2 - a)
        if b is not None:
            out.append(SpecialForm(5, b))
    return out


def special_type_form(form: PCFForm) -> SpecialForm | None:
    forms = special_type_forms(form)
    return forms[0] if forms else None


def find_all_n_prime(f: MonicQuadratic, p_bound: int) -> int | None:
    """Smallest odd ``p <= p_bound`` with ``f mod p`` irreducible of type ``n...n``."""
    for p in primes_up_to(p_bound):
        if p == 2 or not quadratic_irreducible(f, p):
            continue
        if type_string(f, f, p).all_n():
            return p
    return None


# ---------------------------------------------------------------------------
# Classification
# ---------------------------------------------------------------------------


class Reason(str, enum.Enum):
    NOT_PCF = "NotMonicPCF"
    BASE_REDUCIBLE = "BaseReducible"
    NOT_SPECIAL = "NotSpecialType"
    UNSTABLE = "Unstable"
    QUALIFIES = "Qualifies"
    QUALIFIES_CONJECTURAL = "QualifiesConjecturally"


CSV_COLUMNS = (
    "family",
    "a",
    "pcf",
    "base_irreducible",
    "special_form",
    "b",
    "stability_status",
    "qualifies",
    "N",
    "conjecture_dependent",
)


@dataclass(frozen=True)
class ClassificationVerdict:
    """Outcome of the classification for one polynomial.

    ``N`` is the mod-every-prime threshold ``o_f + 1``, set whenever ``f`` is
    irreducible and special. ``conjecture_dependent`` marks verdicts that rest
    on the unproven stability of the three excluded ``G`` shifts.
    """

    f: MonicQuadratic
    reason: Reason
    form: PCFForm | None = None
    orbit: OrbitInfo | NotPCF | None = None
    base_irreducible: bool | None = None
    special: SpecialForm | None = None
    all_special: tuple[SpecialForm, ...] = ()
    stability: StabilityVerdict | None = None
    N: int | None = None
    nonspecial_prime: int | None = None

    @property
    def qualifies(self) -> bool:
        return self.reason in (Reason.QUALIFIES, Reason.QUALIFIES_CONJECTURAL)

    @property
    def conjecture_dependent(self) -> bool:
        return self.stability is not None and self.stability.conjectural

    def row(self) -> dict:
        return {
            "family": self.form.family.value if self.form else "",
            "a": str(self.form.shift) if self.form else "",
            "pcf": self.form is not None,
            "base_irreducible": self.base_irreducible,
            "special_form": self.special.form_index if self.special else None,
            "b": str(self.special.b) if self.special else None,
            "stability_status": self.stability.status.value if self.stability else None,
            "qualifies": self.qualifies,
            "N": self.N,
            "conjecture_dependent": self.conjecture_dependent,
        }

    def to_dict(self) -> dict:
        out = self.row()
        out.update(
            {
                "lin": str(self.f.lin),
                "con": str(self.f.con),
                "reason": self.reason.value,
                "all_special": [s.to_dict() for s in self.all_special],
                "orbit": None if self.orbit is None else self.orbit.to_dict(),
                "stability": None if self.stability is None else self.stability.to_dict(),
                "nonspecial_prime": self.nonspecial_prime,
            }
        )
        return out


def classify_theorem_1_1(f: MonicQuadratic | PCFForm, witness_bound: int = 10_000) -> ClassificationVerdict:
    """Classify ``f``.

    ``witness_bound`` limits the search for an all-``n`` prime attached to
    non-special verdicts (the search result is informative only).
    """
    if isinstance(f, PCFForm):
        f = f.polynomial()
    form = detect_pcf_form(f)
    orbit = critical_orbit(f)
    if (form is None) != isinstance(orbit, NotPCF):
        raise InconsistencyError(f"normal form and critical orbit disagree on {f}")
    if form is None:
        return ClassificationVerdict(f, Reason.NOT_PCF, orbit=orbit)
    stab = stability_verdict(form)
    if stab.status is StabilityStatus.BASE_REDUCIBLE:
        return ClassificationVerdict(f, Reason.BASE_REDUCIBLE, form, orbit, False, stability=stab)
    forms = tuple(special_type_forms(form))
    if not forms:
        return ClassificationVerdict(
            f,
            Reason.NOT_SPECIAL,
            form,
            orbit,
            True,
            stability=stab,
            nonspecial_prime=find_all_n_prime(f, witness_bound),
        )
    n_threshold = orbit.o_f + 1
    if stab.status is StabilityStatus.REDUCIBLE_AT:
        reason = Reason.UNSTABLE
    elif stab.status is StabilityStatus.CONJECTURALLY_STABLE:
        reason = Reason.QUALIFIES_CONJECTURAL
    else:
        reason = Reason.QUALIFIES
    return ClassificationVerdict(f, reason, form, orbit, True, forms[0], forms, stab, n_threshold)


def _classify_shift(args: tuple[str, int]) -> ClassificationVerdict:
    fam, a = args
    return classify_theorem_1_1(PCFForm(Family(fam), a))


def scan(family: Family | str, a_from: int, a_to: int, jobs: int = 1) -> list[ClassificationVerdict]:
    """Classify ``family`` at every shift in ``[a_from, a_to]``, ordered by ``a``."""
    if a_from > a_to:
        raise DomainError(f"empty range: a_from {a_from} > a_to {a_to}")
    fam = Family(family).value
    work = [(fam, a) for a in range(a_from, a_to + 1)]
    if jobs <= 1:
        return [_classify_shift(w) for w in work]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_classify_shift, work, chunksize=64))


def verdicts_to_csv(verdicts: Iterable[ClassificationVerdict]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for v in verdicts:
        writer.writerow({k: ("" if x is None else x) for k, x in v.row().items()})
    return buf.getvalue()


def verdicts_to_json(verdicts: Iterable[ClassificationVerdict]) -> str:
    return json.dumps([v.row() for v in verdicts], indent=2)


# ---------------------------------------------------------------------------
# Empirical mod-p evidence
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PrimeRecord:
    p: int
    f_irreducible: bool
    type: str | None
    first_reducible: int | None
    factor_degrees: dict[int, list[int]]

    def reducible(self, n: int) -> bool:
        return len(self.factor_degrees[n]) > 1

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "f_irreducible": self.f_irreducible,
            "type": self.type,
            "first_reducible": self.first_reducible,
            "factor_degrees": {str(n): d for n, d in self.factor_degrees.items()},
        }


@dataclass(frozen=True)
class ModpReport:
    """Per-prime factorization evidence for ``f^n``, ``n_from <= n <= n_to``.

    ``all_n_primes`` lists odd primes where ``f mod p`` is irreducible (by
    factorization) with an all-``n`` type; empty means no obstruction to
    being special was seen. ``irreducible_at`` lists ``(p, n)`` pairs with
    ``f^n mod p`` irreducible. ``mod2_reducible`` covers ``p = 2``.
    """

    f: MonicQuadratic
    n_from: int
    n_to: int
    records: tuple[PrimeRecord, ...]
    mod2_reducible: dict[int, bool]

    @property
    def all_n_primes(self) -> list[int]:
        return [r.p for r in self.records if r.f_irreducible and r.type is not None and set(r.type) == {"n"}]

    @property
    def irreducible_at(self) -> list[tuple[int, int]]:
        out = [(r.p, n) for r in self.records for n in r.factor_degrees if not r.reducible(n)]
        out += [(2, n) for n, red in self.mod2_reducible.items() if not red]
        return sorted(out)

    @property
    def reducible_everywhere(self) -> bool:
        return not self.irreducible_at

    def to_dict(self) -> dict:
        return {
            "lin": str(self.f.lin),
            "con": str(self.f.con),
            "n_from": self.n_from,
            "n_to": self.n_to,
            "primes_checked": len(self.records) + 1,
            "all_n_primes": self.all_n_primes,
            "irreducible_at": [list(x) for x in self.irreducible_at],
            "reducible_everywhere": self.reducible_everywhere,
            "mod2_reducible": {str(n): v for n, v in self.mod2_reducible.items()},
            "records": [r.to_dict() for r in self.records],
        }


def _mod2_has_root(f: MonicQuadratic, n: int) -> bool:
    def ev(x: int) -> int:
        for _ in range(n):
            x = (x * x + f.lin * x + f.con) % 2
        return x

    return ev(0) == 0 or ev(1) == 0


def empirical_modp_check(f: MonicQuadratic, prime_bound: int, n_from: int, n_to: int) -> ModpReport:
    """Factor ``f^n mod p`` for every prime ``p <= prime_bound`` and ``n`` in range.

    For ``p = 2`` a root in F_2 is taken as the reducibility certificate (every
    PCF quadratic is ``x^2`` or ``(x+1)^2`` mod 2, so a root always exists).
    """
    cap = iterate_cap()
    if n_to > cap:
        raise ResourceError(f"iterate {n_to} exceeds the iterate cap {cap}")
    records = []
    for p in primes_up_to(prime_bound):
        if p == 2:
            continue
        f_irr = factor(iterate_mod(f, 1, p)).is_trivial()
        ts = type_string(f, f, p)
        degs = {n: factor(iterate_mod(f, n, p)).degrees for n in range(n_from, n_to + 1)}
        first = first_reducible_iterate(f, p, len(ts) + 1)
        records.append(PrimeRecord(p, f_irr, ts.entries, first, degs))
    mod2 = {n: _mod2_has_root(f, n) for n in range(n_from, n_to + 1)}
    return ModpReport(f, n_from, n_to, tuple(records), mod2)


# ---------------------------------------------------------------------------
# Finite-field rigidity sweep
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Counterexample:
    """``f = x^2 + lin x + con`` over F_p where the orbit criterion (``expected``
    stability) and the factorization oracle (``got``: ``f^R`` irreducible,
    ``R`` the required iterate) disagree."""

    p: int
    lin: int
    con: int
    required_iterate: int
    expected: bool
    got: bool

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "lin": self.lin,
            "con": self.con,
            "required_iterate": self.required_iterate,
            "expected": self.expected,
            "got": self.got,
        }


@dataclass
class RigidityReport:
    """Tallies of a sweep.

    ``oracle_decided`` counts polynomials where the oracle settled
    irreducibility of ``f^R``; the rest had ``R`` beyond the oracle degree
    cap with every tested level irreducible (``undecided``).
    ``level_mismatches`` lists ``(p, lin, con, criterion_level, oracle_level)``
    where the first reducible iterate differs between the two routes.
    """

    p_bound: int
    max_oracle_iterate: int
    checked: int = 0
    oracle_decided: int = 0
    undecided: int = 0
    counterexamples: list[Counterexample] = field(default_factory=list)
    level_mismatches: list[tuple[int, int, int, int | None, int | None]] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "p_bound": self.p_bound,
            "max_oracle_iterate": self.max_oracle_iterate,
            "checked": self.checked,
            "oracle_decided": self.oracle_decided,
            "undecided": self.undecided,
            "counterexamples": [c.to_dict() for c in self.counterexamples],
            "level_mismatches": [list(m) for m in self.level_mismatches],
        }


def _batch_iterates(lin: np.ndarray, con: np.ndarray, n: int, p: int) -> np.ndarray:
    # Coefficient rows of f^n mod p for a stack of quadratics.
    m = len(lin)
    cur = np.zeros((m, 2), dtype=np.int64)
    cur[:, 1] = 1
    for _ in range(n):
        d = cur.shape[1]
        sq = np.zeros((m, 2 * d - 1), dtype=np.int64)
        for i in range(d):
            sq[:, i : i + d] += cur[:, i : i + 1] * cur
        sq[:, :d] += lin[:, None] * cur
        sq[:, 0] += con
        cur = sq % p
    return cur


def _sweep_prime(
    p: int,
    max_level: int,
    report: RigidityReport,
    nonsquare_test: Callable[[int, int], bool] | None,
) -> None:
    polys = [(b, e) for b in range(p) for e in range(p)]
    data = [ff_stability_data(MonicQuadratic(b, e), p, nonsquare_test) for b, e in polys]
    req = np.array([d.required_iterate for d in data])
    lin = np.array([b for b, _ in polys], dtype=np.int64)
    con = np.array([e for _, e in polys], dtype=np.int64)
    # Oracle: first n <= min(R, max_level) with f^n reducible, by Rabin's test
    # on the explicit coefficients of f^n mod p.
    oracle_first = np.zeros(len(polys), dtype=np.int64)  # 0 = none found
    active = np.ones(len(polys), dtype=bool)
    for n in range(1, max_level + 1):
        active &= req >= n
        idx = np.flatnonzero(active)
        if idx.size == 0:
            break
        irr = batch_is_irreducible(_batch_iterates(lin[idx], con[idx], n, p), p)
        red = idx[~irr]
        oracle_first[red] = n
        active[red] = False
    for i, d in enumerate(data):
        b, e = polys[i]
        report.checked += 1
        r = d.required_iterate
        if oracle_first[i]:
            got = False  # f^j reducible and j <= R, so f^R = f^j(f^(R-j)) is reducible
        elif r <= max_level:
            got = True
        else:
            report.undecided += 1
            if d.first_reducible is not None and d.first_reducible <= max_level:
                report.level_mismatches.append((p, b, e, d.first_reducible, None))
            continue
        report.oracle_decided += 1
        if got != d.stable:
            report.counterexamples.append(Counterexample(p, b, e, r, d.stable, got))
        oracle_level = int(oracle_first[i]) or None
        crit_level = d.first_reducible if d.first_reducible is not None and d.first_reducible <= r else None
        if oracle_level != crit_level:
            report.level_mismatches.append((p, b, e, crit_level, oracle_level))


def rigidity_sweep(
    p_bound: int,
    max_oracle_degree: int = 64,
    nonsquare_test: Callable[[int, int], bool] | None = None,
) -> RigidityReport:
    """Check, for every monic quadratic over every F_p with ``3 <= p <= p_bound``,
    that ``f`` is stable exactly when ``f^R`` is irreducible, ``R`` being
    ``o_f + 1`` if ``t_f = 0`` and ``o_f`` otherwise.

    Stability comes from :func:`ff_stability_data`; irreducibility of ``f^R``
    from the batched Rabin test on ``f^n mod p`` for ``2^n <= max_oracle_degree``.
    """
    if p_bound < 3:
        raise DomainError(f"p_bound must be at least 3, got {p_bound}")
    max_level = max(1, max_oracle_degree.bit_length() - 1)
    report = RigidityReport(p_bound, max_level)
    for p in primes_up_to(p_bound):
        if p > 2:
            _sweep_prime(p, max_level, report, nonsquare_test)
    return report


def verify_ff_rigidity(
    p_bound: int,
    max_oracle_degree: int = 64,
    nonsquare_test: Callable[[int, int], bool] | None = None,
) -> list[Counterexample]:
    """Counterexamples found by :func:`rigidity_sweep`; expected empty."""
    return rigidity_sweep(p_bound, max_oracle_degree, nonsquare_test).counterexamples

