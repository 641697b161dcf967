import pytest
from hypothesis import given, settings, strategies as st

from pcfquad import (
    DomainError,
    Family,
    IntPolynomial,
    MonicQuadratic,
    NotPCF,
    OrbitInfo,
    PCFForm,
    ResourceError,
    critical_orbit,
    detect_pcf_form,
    iterate,
)
from pcfquad.quad_poly import DEFAULT_ITERATE_CAP, forward_orbit, iterate_cap

coeff_lists = st.lists(st.integers(min_value=-(10**30), max_value=10**30), min_size=1, max_size=24)


def _schoolbook(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return IntPolynomial(out)


@given(coeff_lists, coeff_lists)
def test_multiplication_matches_schoolbook(a, b):
    assert IntPolynomial(a) * IntPolynomial(b) == _schoolbook(a, b)


@given(coeff_lists, st.integers(-50, 50), st.integers(-20, 20))
def test_shift_and_reflect_by_evaluation(c, s, x):
    p = IntPolynomial(c)
    assert p.taylor_shift(s)(x) == p(x + s)
    assert p.reflect()(x) == p(-x)


@given(coeff_lists, coeff_lists, st.integers(-10, 10))
@settings(max_examples=50)
def test_compose_by_evaluation(a, b, x):
    p, q = IntPolynomial(a[:6]), IntPolynomial(b[:6])
    assert p.compose(q)(x) == p(q(x))


def test_polynomial_basics():
    p = IntPolynomial([1, 0, -3, 0, 0])
    assert p.coeffs == (1, 0, -3) and p.degree == 2 and p.leading == -3
    assert IntPolynomial().degree == -1 and str(IntPolynomial()) == "0"
    assert str(IntPolynomial([2, -1, 0, 1])) == "x^3 - x + 2"
    assert IntPolynomial.from_json(p.to_json()) == p
    assert p.to_json() == ["1", "0", "-3"]


@pytest.mark.parametrize("fam", list(Family))
@pytest.mark.parametrize("a", [-100, -5, 0, 1, 7, 10**12])
def test_detect_pcf_form_roundtrip(fam, a):
    form = PCFForm(fam, a)
    assert detect_pcf_form(form.polynomial()) == form


def test_detect_rejects():
    assert detect_pcf_form(MonicQuadratic(1, 0)) is None
    assert detect_pcf_form(MonicQuadratic(0, 1)) is None  # x^2 + 1, k = -1


def test_example_orbit_x2_minus_2():
    o = critical_orbit(MonicQuadratic(0, -2))
    assert isinstance(o, OrbitInfo)
    assert o.orbit == (-2, 2) and o.o_f == 2 and o.t_f == 1
    assert o.tail == (-2,) and o.cycle == (2,) and o.cycle_length == 1


@pytest.mark.parametrize("a", range(-30, 31))
def test_family_orbits_closed_form(a):
    assert critical_orbit(PCFForm(Family.F, a).polynomial()) == OrbitInfo((-a,), 0)
    assert critical_orbit(PCFForm(Family.G, a).polynomial()) == OrbitInfo((-a - 1, -a), 0)
    assert critical_orbit(PCFForm(Family.H, a).polynomial()) == OrbitInfo((-a - 2, 2 - a), 1)


def test_pcf_iff_family_on_grid():
    # Orbit detection and the normal-form test are independent routes.
    for lin in range(-40, 41):
        for con in range(-40, 41):
            f = MonicQuadratic(lin, con)
            assert isinstance(critical_orbit(f), NotPCF) == (detect_pcf_form(f) is None)


def test_not_pcf_certificates():
    assert critical_orbit(MonicQuadratic(3, 1)).reason == "odd_linear"
    esc = critical_orbit(MonicQuadratic(0, 1))
    assert esc.reason == "escaped" and abs(esc.escape_value) >= 3
    assert esc.to_dict()["pcf"] is False


def test_escape_bound_validation():
    with pytest.raises(DomainError):
        critical_orbit(MonicQuadratic(0, 10), bound=3)
    assert critical_orbit(MonicQuadratic(0, -2), bound=1000).orbit == (-2, 2)


def test_forward_orbit_generic():
    # 0 -> 1 -> 2 -> 5 -> 26 % 7 = 5
    assert forward_orbit(lambda v: (v * v + 1) % 7, 0) == ([1, 2, 5], 2)
    assert forward_orbit(lambda v: v + 1, 0, lambda v: v > 3) == (None, 4)


@pytest.mark.parametrize("lin,con", [(0, -2), (2, -1), (-6, 12), (4, 1)])
def test_iterate_by_evaluation(lin, con):
    f = MonicQuadratic(lin, con)
    assert iterate(f, 0) == IntPolynomial.x()
    for n in range(1, 6):
        p = iterate(f, n)
        assert p.degree == 2**n and p.is_monic()
        for x in range(-4, 5):
            v = x
            for _ in range(n):
                v = f(v)
            assert p(x) == v


def test_iterate_cap(monkeypatch):
    f = MonicQuadratic(0, -2)
    with pytest.raises(ResourceError, match=str(DEFAULT_ITERATE_CAP)):
        iterate(f, DEFAULT_ITERATE_CAP + 1)
    monkeypatch.setenv("PCF_ITERATE_CAP", "3")
    assert iterate_cap() == 3
    with pytest.raises(ResourceError, match="cap 3"):
        iterate(f, 4)
    monkeypatch.setenv("PCF_ITERATE_CAP", "many")
    with pytest.raises(DomainError):
        iterate_cap()
    with pytest.raises(DomainError):
        iterate(f, -1, cap=5)
