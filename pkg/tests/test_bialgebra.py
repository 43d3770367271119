from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import skew_matrices
from plq import bialgebra, liegroup, unitary
from plq.cases import CaseSpec
from plq.exppoly import const, exp, var
from plq.unitary import PhasedOp, check_unitary, op_equal, op_residual

ZERO = (0, 0)


def test_blocks_are_unitary_and_normalized(case):
    L, rho = bialgebra.block_L(case), bialgebra.block_rho(case)
    assert check_unitary(L.op) == 0 and check_unitary(rho.op) == 0
    assert op_equal(L.at_zero(), unitary.identity(L.op.variables))
    assert op_equal(rho.at_zero(), unitary.identity(rho.op.variables))


def test_two_coproduct_paths_agree(case):
    assert bialgebra.check_coproduct_grouplaw(case) == ZERO


def test_coassociativity(case):
    assert bialgebra.check_coassociativity(case) == ZERO
    assert bialgebra.check_coassociativity(case, bialgebra.block_rho(case).op) == ZERO


def test_dual_coproduct_is_theta_twisted(case):
    assert bialgebra.check_dual_twist(case) == ZERO


def test_crossed_product_relations(case):
    assert all(v == ZERO for v in bialgebra.check_crossed_product_relations(case).values())


@settings(max_examples=10)
@given(st.integers(2, 3).flatmap(lambda n: skew_matrices(n)))
def test_case3_displayed_coproduct(J):
    case = CaseSpec("case3", n=len(J), J=J)
    conj = bialgebra.coproduct(unitary.build_VTheta(case), bialgebra.block_L(case).op, case).op
    assert op_residual(conj, bialgebra.displayed_coproduct_case3(case)) == ZERO
    assert op_residual(bialgebra.grouplaw_coproduct(case).op, conj) == ZERO


def test_case3_cross_term_is_needed():
    case = CaseSpec("case3", n=2, J=[[0, 1], [-1, 0]])
    conj = bialgebra.coproduct(unitary.build_VTheta(case), bialgebra.block_L(case).op, case).op
    shown = bialgebra.displayed_coproduct_case3(case)
    r, r2 = var("r"), var("r'")
    Jyt = case.J_times([var("yt1"), var("yt2")])
    cross = r * r2 * sum((a * (var(y) - var(b)) for a, y, b in zip(Jyt, ("y1", "y2"), ("yt1", "yt2"))), const(0))
    without = PhasedOp(shown.variables, shown.point_map, shown.prefactor, shown.phase - cross)
    assert op_residual(conj, without)[1] != 0


def test_case3_with_zero_J_is_heisenberg_type():
    """With J = 0 every J-term of the coproduct drops out."""
    case = CaseSpec("case3", n=2, J=[[0, 0], [0, 0]])
    conj = bialgebra.coproduct(unitary.build_VTheta(case), bialgebra.block_L(case).op, case).op
    x = [var(v) for v in ("x1", "x2")]
    y = [var(v) for v in ("y1", "y2")]
    x2 = [var(v) for v in ("x1'", "x2'")]
    y2 = [var(v) for v in ("y1'", "y2'")]
    xt = [var(v) for v in ("xt1", "xt2")]
    yt = [var(v) for v in ("yt1", "yt2")]
    r, r2, zt = var("r"), var("r'"), var("zt")

    def pair(a, b):
        return sum((u * v for u, v in zip(a, b)), const(0))

    dy = [a - b for a, b in zip(y, yt)]
    dy2 = [a - b for a, b in zip(y2, yt)]
    want = PhasedOp(conj.variables,
                    tuple([a - b for a, b in zip(x, xt)] + dy + [r] + [a - b for a, b in zip(x2, xt)] + dy2 + [r2]),
                    const(1), (r + r2) * zt + r * pair(xt, dy) + r2 * pair(xt, dy2))
    assert op_residual(conj, want) == ZERO


def test_wrong_group_law_is_detected():
    case = CaseSpec("case3", n=2, J=[[0, 1], [-1, 0]])
    wrong = liegroup.dual_group(CaseSpec("case3", n=2, J=[[0, 0], [0, 0]]))
    assert bialgebra.check_coproduct_grouplaw(case, group=wrong) != ZERO


def test_case2_grouplaw_coproduct_by_hand():
    """n = 1, case 2: F(gg') = (e^{lam r'} p + p') xt + (e^{lam r'} q + q') yt + (r + r') zt."""
    lam = Fraction(1, 2)
    case = CaseSpec("case2", n=1, lam=lam)
    op = bialgebra.grouplaw_coproduct(case).op
    m = op.map_dict()
    assert m["x1"] == var("x1") - exp("r'", lam) * var("xt1")
    assert m["y1'"] == var("y1'") - var("yt1")
    assert m["r"] == var("r") and m["r'"] == var("r'")
