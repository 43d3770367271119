from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from plq.cases import CaseSpec
from plq.exppoly import ONE

settings.register_profile(
    "plq", max_examples=25, deadline=None, derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("plq")


def small_rationals(nonzero=False, bound=3, denom=4):
    s = st.fractions(min_value=-bound, max_value=bound, max_denominator=denom)
    return s.filter(lambda f: f != 0) if nonzero else s


@st.composite
def skew_matrices(draw, n):
    J = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            v = draw(small_rationals())
            J[i][j], J[j][i] = v, -v
    return J


def to_sympy(e):
    """Independent conversion of an ExpPoly into a sympy expression."""
    import sympy

    out = sympy.Integer(0)
    for (mono, atom), c in e.items():
        term = sympy.Rational(c.numerator, c.denominator)
        for v, k in mono:
            term *= sympy.Symbol(v) ** k
        if atom:
            arg = sum(sympy.Rational(a.numerator, a.denominator) * (1 if v == ONE else sympy.Symbol(v))
                      for v, a in atom)
            term *= sympy.exp(arg)
        out += term
    return out


CATALOGUE = [
    CaseSpec("case1", n=2, lam=Fraction(1, 2)),
    CaseSpec("case2", n=2, lam=Fraction(-2, 3)),
    CaseSpec("mixed", n=2, lam=Fraction(1, 2), nu=Fraction(1, 3)),
    CaseSpec("case3", n=3, J=[[0, 1, Fraction(-1, 2)], [-1, 0, 2], [Fraction(1, 2), -2, 0]]),
    CaseSpec("rieffel", n=2, m=2),
    CaseSpec("nonuni", n=2, m=1),
]


@pytest.fixture(params=CATALOGUE, ids=lambda c: c.kind)
def case(request):
    return request.param
