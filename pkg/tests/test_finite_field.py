import random

import numpy as np
import pytest
import sympy
from hypothesis import given, settings, strategies as st

from pcfquad import (
    DomainError,
    Factorization,
    FpPolynomial,
    MonicQuadratic,
    Squareness,
    factor,
    ff_stability_data,
    is_irreducible,
    iterate,
    iterate_mod,
    squareness,
    type_string,
)
from pcfquad.finite_field import batch_is_irreducible, first_reducible_iterate, orbit_mod

SMALL_PRIMES = [3, 5, 7, 11, 13, 17, 19, 23, 101, 997]

polys = st.builds(
    lambda p, c: FpPolynomial(p, c + [1]),
    st.sampled_from(SMALL_PRIMES),
    st.lists(st.integers(0, 10**6), min_size=1, max_size=16),
)


@given(polys)
@settings(max_examples=150, deadline=None)
def test_factor_roundtrip_and_irreducible_factors(f):
    fac = factor(f)
    assert fac.expand() == f
    assert all(is_irreducible(g) and g.coeffs[-1] == 1 for g, _ in fac.factors)
    assert fac.is_trivial() == is_irreducible(f)


@given(polys)
@settings(max_examples=60, deadline=None)
def test_factor_degrees_match_sympy(f):
    x = sympy.Symbol("x")
    _, fl = sympy.Poly(list(reversed(f.coeffs)), x, modulus=f.p).factor_list()
    expected = sorted(g.degree() for g, e in fl for _ in range(e))
    assert factor(f).degrees == expected


def test_factor_is_deterministic():
    f = iterate_mod(MonicQuadratic(0, -2), 4, 7)
    assert factor(f) == factor(FpPolynomial(7, f.coeffs))


def test_factorization_json_roundtrip():
    fac = factor(FpPolynomial(5, [4, 0, 0, 0, 3]))
    assert Factorization.from_json(fac.to_json()) == fac
    assert fac.lead == 3


def test_domain_errors():
    with pytest.raises(DomainError):
        factor(FpPolynomial(5, [0]))
    with pytest.raises(DomainError):
        is_irreducible(FpPolynomial(5, [3]))
    for bad in (2, 9, 1, -3):
        with pytest.raises(DomainError):
            factor(FpPolynomial(bad, [1, 1]))
        with pytest.raises(DomainError):
            squareness(1, bad)


@pytest.mark.parametrize("p", [3, 7, 13, 31])
@pytest.mark.parametrize("deg", [2, 4, 8, 16])
def test_batch_matches_scalar(p, deg):
    rng = random.Random(p * 100 + deg)
    rows = np.array([[rng.randrange(p) for _ in range(deg)] + [1] for _ in range(40)])
    got = batch_is_irreducible(rows, p)
    assert list(got) == [is_irreducible(FpPolynomial(p, r)) for r in rows.tolist()]


def test_batch_rejects_non_monic():
    with pytest.raises(DomainError):
        batch_is_irreducible(np.array([[1, 2, 3]]), 5)
    assert batch_is_irreducible(np.zeros((0, 3), dtype=np.int64), 5).shape == (0,)


@pytest.mark.parametrize("p", [3, 5, 7, 11, 13, 29])
def test_squareness_against_enumeration(p):
    squares = {x * x % p for x in range(1, p)}
    for x in range(-p, 2 * p):
        s = squareness(x, p)
        if x % p == 0:
            assert s is Squareness.ZERO
        else:
            assert (s is Squareness.SQUARE) == (x % p in squares)


def test_iterate_mod_matches_integer_iterate():
    f = MonicQuadratic(-6, 11)
    for p in (3, 5, 11):
        for n in range(5):
            assert iterate_mod(f, n, p) == FpPolynomial(p, iterate(f, n).coeffs)


def test_type_string_example():
    ts = type_string(MonicQuadratic(2, -1), MonicQuadratic(0, -2), 5)
    assert str(ts) == "sn" and len(ts) == 2
    assert ts.orbit == (3, 2) and ts.values == (4, 2)
    assert ts.g_irreducible is True and not ts.all_n()


def test_type_string_zero_positions():
    # g = x^2 - 4 vanishes at 2 = orbit point of x^2 - 2.
    ts = type_string(MonicQuadratic(0, -4), MonicQuadratic(0, -2), 7)
    assert 2 in ts.orbit
    assert ts.zero_positions and all(ts.entries[i - 1] == "s" for i in ts.zero_positions)
    assert ts.g_irreducible is False


def test_orbit_mod_tail():
    orbit, tail, c = orbit_mod(MonicQuadratic(0, -2), 7)
    assert c == 0 and orbit == [5, 2] and tail == 1


@pytest.mark.parametrize("p", [3, 5, 7])
def test_first_reducible_matches_factorization(p):
    for lin in range(p):
        for con in range(p):
            f = MonicQuadratic(lin, con)
            direct = next((n for n in range(1, 5) if not factor(iterate_mod(f, n, p)).is_trivial()), None)
            assert first_reducible_iterate(f, p, 4) == direct


@pytest.mark.parametrize("p", [3, 5, 7, 11, 13])
def test_ff_stability_against_direct_factorization(p):
    for lin in range(p):
        for con in range(p):
            d = ff_stability_data(MonicQuadratic(lin, con), p)
            if d.required_iterate > 5:
                continue
            irreducible = factor(iterate_mod(MonicQuadratic(lin, con), d.required_iterate, p)).is_trivial()
            assert d.stable == irreducible, (p, lin, con)
            assert d.required_iterate == (d.o_f + 1 if d.t_f == 0 else d.o_f)


def test_ff_stability_injected_test_function():
    always_nonsquare = lambda x, p: True
    d = ff_stability_data(MonicQuadratic(0, 0), 5, always_nonsquare)
    assert d.stable and d.first_reducible is None
    assert not ff_stability_data(MonicQuadratic(0, 0), 5).stable
