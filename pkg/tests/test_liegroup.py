from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from conftest import skew_matrices, small_rationals, to_sympy
from plq import liealg, liegroup
from plq.cases import CaseSpec, InvalidParameter
from plq.exppoly import const, exp, var
from plq.suites import dual_algebra

lams = small_rationals(nonzero=True)


def printed_group_law(case):
    """Multiplication of the dual group, transcribed from the displayed formulas."""
    n = case.n
    p = [var(f"p{i}") for i in range(1, n + 1)]
    q = [var(f"q{i}") for i in range(1, n + 1)]
    p2 = [var(f"p{i}'") for i in range(1, n + 1)]
    q2 = [var(f"q{i}'") for i in range(1, n + 1)]
    r, r2 = var("r"), var("r'")
    if case.kind == "case1":
        return ([exp("r'", case.lam) * a + b for a, b in zip(p, p2)]
                + [exp("r'", -case.lam) * a + b for a, b in zip(q, q2)] + [r + r2])
    if case.kind == "case2":
        return ([exp("r'", case.lam) * a + b for a, b in zip(p, p2)]
                + [exp("r'", case.lam) * a + b for a, b in zip(q, q2)] + [r + r2])
    # q + q' + r' sum_ij J_ij p_i q_j: the q_j coordinate receives r' sum_i J_ij p_i
    J = case.J
    qs = [q[j] + q2[j] + r2 * sum((J[i][j] * p[i] for i in range(n)), const(0)) for j in range(n)]
    return [a + b for a, b in zip(p, p2)] + qs + [r + r2]


def printed_bracket(case):
    n = case.n
    x = [var(f"x{i}") for i in range(1, n + 1)]
    y = [var(f"y{i}") for i in range(1, n + 1)]
    x2 = [var(f"x{i}'") for i in range(1, n + 1)]
    y2 = [var(f"y{i}'") for i in range(1, n + 1)]
    skew = sum((a * b for a, b in zip(x, y2)), const(0)) - sum((a * b for a, b in zip(x2, y)), const(0))
    r = var("r")
    if case.kind == "case1":
        return r * skew
    if case.kind == "case2":
        return (exp("r", 2 * case.lam) - 1) * Fraction(1, 2) / case.lam * skew
    J = case.J
    extra = sum((J[k][j] * (y[j] * y2[k] - y[k] * y2[j]) for k in range(n) for j in range(n)), const(0))
    return r * skew + r * r / 2 * extra


def printed_F_case3(case):
    """r sum p_k ^ q_k - (r^2/2) sum J_kj q_j ^ q_k as a matrix over (p, q, r)."""
    n = case.n
    r = var("r")
    M = [[const(0)] * (2 * n + 1) for _ in range(2 * n + 1)]

    def add_wedge(a, b, c):
        M[a][b] = M[a][b] + c
        M[b][a] = M[b][a] - c

    for k in range(n):
        add_wedge(k, n + k, r)
        for j in range(n):
            add_wedge(n + j, n + k, -case.J[k][j] * r * r / 2)
    return M


def three_cases(draw_lam, J):
    return [CaseSpec("case1", n=len(J), lam=draw_lam), CaseSpec("case2", n=len(J), lam=draw_lam),
            CaseSpec("case3", n=len(J), J=J)]


cases_strategy = st.tuples(lams, st.integers(2, 3).flatmap(lambda n: skew_matrices(n)))


@given(cases_strategy)
def test_group_laws_as_printed(params):
    for case in three_cases(*params):
        G = liegroup.dual_group(case)
        assert list(G.mult) == printed_group_law(case)


def test_group_axioms_and_lie_algebra(case):
    G = liegroup.dual_group(case)
    assert all(v == 0 for v in liegroup.check_group_axioms(G).values())
    assert liealg.same_structure(liegroup.lie_algebra_of(G), dual_algebra(case))
    assert liegroup.check_ad_automorphism(G) == 0
    H = liegroup.heisenberg_group(case.n)
    assert liealg.same_structure(liegroup.lie_algebra_of(H), liealg.heisenberg(case.n))


def test_adjoint_against_sympy():
    """Ad computed by conjugating and differentiating in sympy, n = 1, case 2."""
    lam = Fraction(1, 3)
    case = CaseSpec("case2", n=1, lam=lam)
    G = liegroup.dual_group(case)
    p, q, r, a, b, c = sympy.symbols("p1 q1 r a b c")
    L = sympy.Rational(1, 3)

    def mul(g, h):
        return (sympy.exp(L * h[2]) * g[0] + h[0], sympy.exp(L * h[2]) * g[1] + h[1], g[2] + h[2])

    ginv = (-sympy.exp(-L * r) * p, -sympy.exp(-L * r) * q, -r)
    conj = mul(mul((p, q, r), (a, b, c)), ginv)
    want = sympy.Matrix([[sympy.diff(f, v).subs({a: 0, b: 0, c: 0}) for v in (a, b, c)] for f in conj])
    got = sympy.Matrix([[to_sympy(e) for e in row] for row in liegroup.adjoint(G)])
    assert sympy.simplify(want - got) == sympy.zeros(3, 3)


@given(st.integers(2, 3).flatmap(lambda n: skew_matrices(n)))
def test_case3_adjoint_and_right_translation_as_printed(J):
    n = len(J)
    case = CaseSpec("case3", n=n, J=J)
    G = liegroup.dual_group(case)
    r = var("r")
    A = liegroup.adjoint(G, [const(0)] * (2 * n) + [r])
    R = liegroup.right_translation_at_identity(G)
    for k in range(n):
        # Ad p_k = p_k - r sum J_kj q_j, R_* p_k = p_k + r sum J_kj q_j
        for j in range(n):
            assert A[n + j][k] == -J[k][j] * r
            assert R[n + j][k] == J[k][j] * r
            assert A[j][k] == int(j == k) and R[j][k] == int(j == k)
        col = [A[i][n + k] for i in range(2 * n + 1)]
        assert col == [int(i == n + k) for i in range(2 * n + 1)]


@given(st.integers(2, 3).flatmap(lambda n: skew_matrices(n)))
def test_case3_F_is_the_printed_cocycle(J):
    case = CaseSpec("case3", n=len(J), J=J)
    G = liegroup.dual_group(case)
    F = liegroup.build_F(case)
    assert F.as_matrix() == printed_F_case3(case)
    assert all(v == 0 for v in liegroup.verify_F(G, F, case).values())


@given(cases_strategy)
def test_brackets_reproduce_printed(params):
    for case in three_cases(*params):
        G = liegroup.dual_group(case)
        Pi = liegroup.poisson_from_F(G, liegroup.build_F(case))
        assert Pi.is_antisymmetric()
        assert liegroup.bracket_expression(Pi, case) == printed_bracket(case)


def test_schouten_and_multiplicativity(case):
    if case.kind == "nonuni":
        with pytest.raises(InvalidParameter):
            liegroup.build_F(case)
        return
    G = liegroup.dual_group(case)
    F = liegroup.build_F(case)
    assert all(v == 0 for v in liegroup.verify_F(G, F, case).values())
    Pi = liegroup.poisson_from_F(G, F)
    assert liegroup.check_schouten(Pi) == 0
    assert liegroup.check_multiplicativity(G, Pi) == 0


def test_wrong_profile_fails_cocycle():
    case = CaseSpec("case2", n=1, lam=Fraction(1, 2))
    G = liegroup.dual_group(case)
    res = liegroup.verify_F(G, liegroup.build_F(case, profile=var("r")), case)
    assert res["cocycle_r"] != 0 and res["derivative"] == 0


def test_multiplicativity_detects_a_wrong_bivector():
    case = CaseSpec("case2", n=1, lam=Fraction(1, 2))
    G = liegroup.dual_group(case)
    Pi = liegroup.poisson_from_F(G, liegroup.build_F(case, profile=var("r")))
    assert liegroup.check_multiplicativity(G, Pi) != 0


def test_haar_measure():
    n = 2
    lam, nu = Fraction(1, 2), Fraction(1, 3)
    for case in (CaseSpec("case1", n=n, lam=lam), CaseSpec("case2", n=n, lam=lam),
                 CaseSpec("mixed", n=n, lam=lam, nu=nu), CaseSpec("mixed", n=n, lam=lam, nu=-lam),
                 CaseSpec("case3", n=n, J=[[0, 1], [-1, 0]])):
        G = liegroup.dual_group(case)
        assert liegroup.jacobian_of_translation(G, "left") == 1
        right = liegroup.jacobian_of_translation(G, "right")
        a, b = case.rates if case.kind != "case3" else (0, 0)
        assert right == exp("r'", n * (a + b))


def test_matched_pair(case):
    res = liegroup.check_matched_pair(liegroup.matched_pair(case))
    assert all(v == 0 for v in res.values())


def test_rieffel_compatibility():
    assert liegroup.check_compatibility(CaseSpec("rieffel", n=2, m=2))
    assert not liegroup.check_compatibility(CaseSpec("nonuni", n=2, m=1))
