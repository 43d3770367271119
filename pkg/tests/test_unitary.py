import cmath
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import small_rationals
from plq import unitary
from plq.cases import CaseSpec
from plq.exppoly import const, exp, var
from plq.suites import corrupt_theta_slot
from plq.unitary import (PhasedOp, adjoint, check_pentagon, check_unitary, compose, compose_all,
                         identity, op_equal, op_residual)

RATES = st.sampled_from([Fraction(-1), Fraction(-1, 2), Fraction(1, 2), Fraction(1)])


@st.composite
def phased_ops(draw):
    """Random unitary triangular ops on (x, r): x -> e^{a r} x + b r^2, r -> r + s."""
    a, b, s = draw(RATES), draw(small_rationals()), draw(small_rationals())
    x, r = var("x"), var("r")
    T = (exp("r", a) * x + b * r * r, r + s)
    phase = draw(small_rationals()) * x * r + draw(small_rationals()) * r * r + draw(small_rationals()) * x
    return PhasedOp(("x", "r"), T, exp("r", a / 2), phase)


def apply(W, xi, point):
    """(W xi)(v) = c(v) e^{-2 pi i t(v)} xi(T v), evaluated at one point."""
    image = {v: float(e.evaluate(point)) for v, e in zip(W.variables, W.point_map)}
    moved = dict(point, **image)
    return W.prefactor.evaluate(point) * cmath.exp(-2j * math.pi * W.phase.evaluate(point)) * xi(moved)


def gaussian(p):
    return math.exp(-p["x"] ** 2 - (p["r"] - 0.3) ** 2) * (1 + 0.5j * p["x"])


@given(phased_ops(), phased_ops(), phased_ops())
def test_composition_is_associative(A, B, C):
    assert op_equal(compose(compose(A, B), C), compose(A, compose(B, C)))


@given(phased_ops())
def test_adjoint_is_inverse(W):
    assert check_unitary(W) == 0
    assert op_equal(adjoint(adjoint(W)), W)
    assert op_equal(compose(W, adjoint(W)), identity(W.variables))
    assert op_equal(compose(adjoint(W), W), identity(W.variables))


@given(phased_ops(), phased_ops(), st.floats(-1, 1), st.floats(-1, 1))
def test_composition_matches_action_on_functions(A, B, x, r):
    point = {"x": x, "r": r}
    direct = apply(compose(A, B), gaussian, point)
    nested = apply(A, lambda p: apply(B, gaussian, p), point)
    assert abs(direct - nested) < 1e-9 * max(1.0, abs(direct))


def test_wrong_prefactor_is_not_unitary():
    W = PhasedOp(("x", "r"), (exp("r", 1) * var("x"), var("r")), const(1))
    assert check_unitary(W) != 0


def test_phase_compared_modulo_integers():
    W = unitary.multiplication(var("x"), ["x"])
    assert op_equal(W, unitary.multiplication(var("x") + 3, ["x"]))
    assert not op_equal(W, unitary.multiplication(var("x") + Fraction(1, 2), ["x"]))


def test_X_and_Y_are_multiplicative():
    for W in (unitary.build_X(1), unitary.build_X(2), unitary.build_Y(1), unitary.build_Y(3)):
        assert check_unitary(W) == 0
        res = check_pentagon(W)
        assert res.exact[0] == 0 and res.exact[1] == 0


def test_operators_unitary(case):
    for W in (unitary.build_Z(case), unitary.build_Z(case, "pq"), unitary.build_V(case),
              unitary.build_VTheta(case)):
        assert check_unitary(W) == 0


def test_pentagon(case):
    for W in (unitary.build_V(case), unitary.build_VTheta(case)):
        res = check_pentagon(W, force_numeric=True, points=1000, seed=7)
        assert res.exact[0] == 0 and res.exact[1] == 0
        assert res.numeric.worst < 1e-9


def test_displayed_closed_forms(case):
    W = unitary.build_VTheta(case)
    assert op_residual(W, unitary.displayed_VTheta(case)) == (0, 0)
    if case.is_diagonal_scalar:
        assert op_equal(unitary.build_V(case), unitary.displayed_V(case))


def test_case2_display_written_out():
    """V_Theta for case 2, n = 1, typed in from the displayed formula."""
    lam = Fraction(2, 5)
    W = unitary.build_VTheta(CaseSpec("case2", n=1, lam=lam))
    x, y, r, x2, y2, r2 = (var(v) for v in ("x1", "y1", "r", "x1'", "y1'", "r'"))
    e = exp("r'", -lam)
    eta = (exp("r'", 2 * lam) - 1) / (2 * lam)
    want = PhasedOp(("x1", "y1", "r", "x1'", "y1'", "r'"),
                    (e * x, e * y, r + r2, x2 - e * x, y2 - e * y, r2),
                    e, eta * (e * x) * (y2 - e * y))
    assert op_equal(W, want)


def test_cocycle_fields(case):
    res = unitary.check_cocycle_field(unitary.cocycle_field(case))
    assert res["cocycle"] == 0 and res["normalized"] == 0


def test_degenerations(case):
    assert all(unitary.degenerations(case).values())


def test_mixed_at_minus_lambda_is_case1():
    lam = Fraction(3, 4)
    mixed = CaseSpec("mixed", n=2, lam=lam, nu=-lam)
    assert op_equal(unitary.build_VTheta(mixed), unitary.build_VTheta(CaseSpec("case1", n=2, lam=lam)))


def test_wrong_theta_slot_breaks_pentagon():
    case = CaseSpec("case2", n=1, lam=Fraction(1, 2))
    bad = unitary.build_VTheta(case, corrupt_theta_slot(case))
    assert check_unitary(bad) == 0
    res = check_pentagon(bad, seed=0)
    assert res.exact[1] != 0
    assert res.numeric is not None and res.numeric.worst > 1e-3
    assert not res.passed(1e-9)


def test_leg_placement_checks_sizes():
    with pytest.raises(ValueError):
        unitary.leg(unitary.build_X(1), (1, 2), [["a", "b"], ["c"]])


def test_sampled_residual_is_reproducible():
    case = CaseSpec("case3", n=2, J=[[0, 1], [-1, 0]])
    W = unitary.build_VTheta(case)
    lhs, rhs = unitary.pentagon_sides(W)
    a = unitary.numeric_residual(lhs, rhs, points=200, seed=3)
    b = unitary.numeric_residual(lhs, rhs, points=200, seed=3)
    assert a == b and a.worst < 1e-9
    assert np.isfinite(a.worst)


def test_compose_all_matches_pairwise():
    X, Y = unitary.build_X(1), unitary.build_Y(1)
    assert op_equal(compose_all(X, Y, X), compose(compose(X, Y), X))
