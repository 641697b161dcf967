import sympy

from pcfquad import IntPolynomial

_X = sympy.Symbol("x")

# Lines collected by test_acceptance and echoed after the run.
ACCEPTANCE_LINES: list[str] = []


def sympy_factor_degrees(poly: IntPolynomial) -> list[int]:
    """Degrees of the irreducible factors of ``poly`` over Q, with multiplicity."""
    _, factors = sympy.Poly(list(reversed(poly.coeffs)), _X).factor_list()
    return sorted(g.degree() for g, e in factors for _ in range(e))


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
