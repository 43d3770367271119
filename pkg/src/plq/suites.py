"""Verification suites: each check yields one ordered record for the report."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterator

from plq import bialgebra, liealg, liegroup, unitary
from plq.cases import CaseSpec
from plq.exppoly import var
from plq.residual import ExactResidual

SUITES = ("liealg", "group", "poisson", "unitary", "bialgebra")


@dataclass
class CheckRecord:
    suite: str
    name: str
    anchor: str
    status: str  # pass | fail | info | skip
    exact_zero: bool | None
    residual: str
    numeric: float | None = None
    note: str = ""
    elapsed: float = field(default=0.0, compare=False)

    def as_dict(self, timings: bool = False) -> dict:
        out = {"suite": self.suite, "name": self.name, "anchor": self.anchor, "status": self.status,
               "exact_zero": self.exact_zero, "residual": self.residual}
        if self.numeric is not None:
            out["numeric"] = self.numeric
        if self.note:
            out["note"] = self.note
        if timings:
            out["elapsed"] = round(self.elapsed, 6)
        return out


@dataclass(frozen=True)
class SuiteOptions:
    seed: int = 0
    samples: int = 1000
    tol: float = 1e-9
    force_numeric: bool = False


def _summarize(value) -> tuple[bool, str]:
    """(is exact zero, text) for the residual shapes the checkers return."""
    if isinstance(value, ExactResidual):
        return value == 0, str(value)
    if isinstance(value, tuple) and all(isinstance(v, ExactResidual) for v in value):
        zero = all(v == 0 for v in value)
        return zero, "(" + ", ".join(str(v) for v in value) + ")"
    if isinstance(value, dict):
        parts = [(k, *_summarize(v)) for k, v in value.items()]
        zero = all(z for _, z, _ in parts)
        bad = [f"{k}: {t}" for k, z, t in parts if not z]
        return zero, "0" if zero else "; ".join(bad)
    if isinstance(value, bool):
        return value, "0" if value else "mismatch"
    if isinstance(value, (int, Fraction)):
        return value == 0, str(value)
    raise TypeError(f"unsupported residual {type(value).__name__}")


def run_check(suite: str, name: str, anchor: str, fn: Callable, expect_zero: bool = True,
              informational: bool = False, note: str = "") -> CheckRecord:
    start = time.perf_counter()
    try:
        value = fn()
    except unitary.OperatorClassEscape as exc:
        return CheckRecord(suite, name, anchor, "fail", None, f"operator class escape: {exc}",
                           note=note, elapsed=time.perf_counter() - start)
    numeric = None
    if isinstance(value, unitary.PentagonResult):
        numeric = value.numeric.worst if value.numeric is not None else None
        value = value.exact
    zero, text = _summarize(value)
    ok = zero if expect_zero else not zero
    status = "info" if informational else ("pass" if ok else "fail")
    return CheckRecord(suite, name, anchor, status, zero, text, numeric, note, time.perf_counter() - start)


def dual_algebra(case: CaseSpec) -> liealg.LieAlgebra:
    """The stated dual Lie algebra where one exists, else the algebra of the dual group."""
    if case.kind in ("case1", "case2"):
        return liealg.dual_case(1 if case.kind == "case1" else 2, case.n, case.lam)
    if case.kind == "case3":
        return liealg.dual_case(3, case.n, J=case.J)
    if case.kind == "mixed":
        return liealg.dual_rates(case.n, case.lam, case.nu)
    return liegroup.lie_algebra_of(liegroup.dual_group(case))


def heisenberg_of(case: CaseSpec) -> liealg.LieAlgebra:
    if case.kind in ("rieffel", "nonuni"):
        return liealg.heisenberg(case.n, case.m, case.beta)
    return liealg.heisenberg(case.n)


def cobracket_of(case: CaseSpec) -> liealg.Cobracket:
    if case.kind == "case1":
        return liealg.build_cobracket("delta1", case.n, case.lam)
    if case.kind == "case2":
        return liealg.build_cobracket("delta2", case.n, case.lam)
    if case.kind == "case3":
        return liealg.build_cobracket("delta3", case.n, J=case.J)
    if case.kind == "mixed":
        return liealg.build_cobracket("delta4", case.n, case.lam, case.nu)
    h = heisenberg_of(case)
    return liealg.codual(liegroup.lie_algebra_of(liegroup.dual_group(case)), h.basis)


def theta_of(case: CaseSpec, gstar: liealg.LieAlgebra) -> liealg.Cobracket:
    if case.kind in ("rieffel", "nonuni"):
        return liealg.codual(heisenberg_of(case), gstar.basis, "theta")
    return liealg.build_cobracket("theta", case.n)


def r_transposed(n: int, J) -> liealg.Tensor:
    """``sum J_ij x_j (x) x_i``: the skew r whose coboundary is delta3 under ``ad_X(r)``."""
    g = liealg.heisenberg(n)
    return liealg.tensor(g.basis, {(f"x{j + 1}", f"x{i + 1}"): J[i][j]
                                   for i in range(n) for j in range(n) if J[i][j]})


# -- suites ------------------------------------------------------------------------------------

def suite_liealg(case: CaseSpec, opt: SuiteOptions) -> Iterator[CheckRecord]:
    S = "liealg"
    h = heisenberg_of(case)
    gstar = dual_algebra(case)
    delta = cobracket_of(case)
    theta = theta_of(case, gstar)
    yield run_check(S, "jacobi[h]", "Heisenberg algebra", lambda: liealg.check_jacobi(h))
    yield run_check(S, "jacobi[dual]", "dual Lie algebra", lambda: liealg.check_jacobi(gstar))
    informational = case.kind == "nonuni"
    yield run_check(S, f"cocycle[{delta.name}]", "cobracket on h", lambda: liealg.check_cocycle(h, delta),
                    informational=informational,
                    note="no cobracket is asserted for this variant" if informational else "")
    yield run_check(S, "cocycle[theta]", "cobracket on the dual", lambda: liealg.check_cocycle(gstar, theta),
                    informational=informational)
    yield run_check(S, "dualize[delta]", "dual bracket from the cobracket",
                    lambda: liealg.same_structure(liealg.dualize(h, delta, gstar.basis), gstar))
    yield run_check(S, "dualize[theta]", "bracket of h from theta",
                    lambda: liealg.same_structure(liealg.dualize(gstar, theta, h.basis), h))
    n = case.n
    if case.kind == "case1":
        ht = liealg.extended_heisenberg(n)
        r = liealg.r_triangular_extended(n, case.lam)
        td = liealg.build_cobracket("tdelta1", n, case.lam)
        yield run_check(S, "cybe[triangular r]", "triangular r-matrix", lambda: liealg.check_cybe(ht, r))
        yield run_check(S, "skew[triangular r]", "triangular r-matrix", lambda: liealg.check_skew(r))
        yield run_check(S, "coboundary[tdelta1]", "coboundary of the triangular r",
                        lambda: liealg.coboundary_from_r(ht, r) == td)
        yield run_check(S, "restrict[tdelta1]", "restriction to h",
                        lambda: liealg.restrict_cobracket(td, h) == delta)
    if case.kind == "case2":
        ht = liealg.extended_heisenberg(n)
        r = liealg.r_quasitriangular_extended(n, case.lam)
        td = liealg.build_cobracket("tdelta2", n, case.lam)
        yield run_check(S, "cybe[quasitriangular r]", "quasitriangular r-matrix", lambda: liealg.check_cybe(ht, r))
        yield run_check(S, "invariant[r12+r21]", "quasitriangular r-matrix",
                        lambda: liealg.check_invariant(ht, r + r.flip()))
        yield run_check(S, "coboundary[tdelta2]", "coboundary of the quasitriangular r",
                        lambda: liealg.coboundary_from_r(ht, r) == td)
        yield run_check(S, "restrict[tdelta2]", "restriction to h",
                        lambda: liealg.restrict_cobracket(td, h) == delta)
    if case.kind == "case3":
        r = liealg.r_from_J(n, case.J)
        rt = r_transposed(n, case.J)
        yield run_check(S, "cybe[r_J]", "r-matrix from J", lambda: liealg.check_cybe(h, r))
        yield run_check(S, "skew[r_J]", "r-matrix from J", lambda: liealg.check_skew(r))
        yield run_check(S, "coboundary[delta3]", "coboundary of sum J_ij x_j (x) x_i",
                        lambda: liealg.coboundary_from_r(h, rt) == delta)
        yield run_check(S, "coboundary[delta3, untransposed]", "coboundary of sum J_ij x_i (x) x_j",
                        lambda: liealg.coboundary_from_r(h, r) == delta, informational=True,
                        note="this index order yields -delta3")


def suite_group(case: CaseSpec, opt: SuiteOptions) -> Iterator[CheckRecord]:
    S = "group"
    H = liegroup.heisenberg_group(case.n, case.m, case.beta if case.kind in ("rieffel", "nonuni") else None)
    G = liegroup.dual_group(case)
    yield run_check(S, "axioms[H]", "Heisenberg group", lambda: liegroup.check_group_axioms(H))
    yield run_check(S, "axioms[G]", "dual group law", lambda: liegroup.check_group_axioms(G))
    yield run_check(S, "lie_algebra[H]", "Heisenberg group",
                    lambda: liealg.same_structure(liegroup.lie_algebra_of(H), heisenberg_of(case)))
    yield run_check(S, "lie_algebra[G]", "dual group integrates the dual algebra",
                    lambda: liealg.same_structure(liegroup.lie_algebra_of(G), dual_algebra(case)))
    yield run_check(S, "Ad_automorphism[G]", "adjoint action", lambda: liegroup.check_ad_automorphism(G))
    yield run_check(S, "matched_pair", "matched pair (G1, G2)",
                    lambda: liegroup.check_matched_pair(liegroup.matched_pair(case)))
    if case.kind == "case3":
        def printed_ad():
            A = liegroup.adjoint(G, [0] * (2 * case.n) + [var("r")])
            n = case.n
            diffs = []
            for k in range(n):
                # Ad_(0,0,r) p_k = p_k - r sum_j J_kj q_j
                want = [1 if i == k else 0 for i in range(n)] + [-case.J[k][j] * var("r") for j in range(n)] + [0]
                diffs += [A[i][k] - w for i, w in enumerate(want)]
            return ExactResidual.of(diffs)
        yield run_check(S, "Ad[printed]", "printed adjoint action", printed_ad)
    left = liegroup.jacobian_of_translation(G, "left")
    right = liegroup.jacobian_of_translation(G, "right")
    yield run_check(S, "haar[left]", "Lebesgue measure is left invariant", lambda: ExactResidual.of([left - 1]))
    unimodular = case.kind in ("case1", "case3", "rieffel") or (case.kind == "mixed" and case.lam + case.nu == 0)
    yield run_check(S, "modular[right]", "modular function", lambda: ExactResidual.of([right - 1]),
                    expect_zero=unimodular, note=f"right Jacobian {right}")
    if case.kind in ("rieffel", "nonuni"):
        yield run_check(S, "compatibility", "Rieffel compatibility of pi, rho, beta",
                        lambda: liegroup.check_compatibility(case), expect_zero=case.kind == "rieffel")


def suite_poisson(case: CaseSpec, opt: SuiteOptions) -> Iterator[CheckRecord]:
    S = "poisson"
    if case.kind == "nonuni":
        yield CheckRecord(S, "bracket", "no bracket is given for this variant", "skip", None, "-")
        return
    derived = case.kind in ("mixed", "rieffel")
    note = "derived" if derived else ""
    G = liegroup.dual_group(case)
    F = liegroup.build_F(case)
    yield run_check(S, "F_cocycle", "group 1-cocycle integrating theta",
                    lambda: liegroup.verify_F(G, F, case), note=note)
    Pi = liegroup.poisson_from_F(G, F)
    yield run_check(S, "bracket[printed]", "Poisson bracket on G",
                    lambda: ExactResidual.of([liegroup.bracket_expression(Pi, case) - liegroup.printed_bracket(case)]),
                    note=note)
    yield run_check(S, "schouten", "Jacobi identity of the bivector", lambda: liegroup.check_schouten(Pi), note=note)
    yield run_check(S, "multiplicativity", "Poisson-Lie condition",
                    lambda: liegroup.check_multiplicativity(G, Pi), note=note)


def suite_unitary(case: CaseSpec, opt: SuiteOptions) -> Iterator[CheckRecord]:
    S = "unitary"
    V = unitary.build_V(case)
    W = unitary.build_VTheta(case)
    ops = {"X": unitary.build_X(case.m), "Y": unitary.build_Y(case.n), "Z[xy]": unitary.build_Z(case),
           "Z[pq]": unitary.build_Z(case, "pq"), "V": V, "V_Theta": W}
    for name, op in ops.items():
        yield run_check(S, f"unitary[{name}]", "unitarity", lambda op=op: unitary.check_unitary(op))
    for name, op in (("V", V), ("V_Theta", W)):
        yield run_check(S, f"pentagon[{name}]", "multiplicativity",
                        lambda op=op: unitary.check_pentagon(op, opt.force_numeric, opt.samples, seed=opt.seed))
        if opt.force_numeric:
            res = unitary.check_pentagon(op, True, opt.samples, seed=opt.seed)
            worst = res.numeric.worst
            yield CheckRecord(S, f"pentagon_numeric[{name}]", "multiplicativity, sampled",
                              "pass" if worst < opt.tol else "fail", None, f"{worst:.3e}", worst,
                              f"{opt.samples} points in [-2, 2], tol {opt.tol:g}")
    yield run_check(S, "closed_form[V_Theta]", "displayed V_Theta",
                    lambda: unitary.op_residual(W, unitary.displayed_VTheta(case)),
                    note="two-rate display with nu = -lambda" if case.kind == "case1" else "")
    if case.is_diagonal_scalar:
        yield run_check(S, "closed_form[V]", "displayed V", lambda: unitary.op_residual(V, unitary.displayed_V(case)))
    yield run_check(S, "cocycle_field", "twisting cocycle sigma^r",
                    lambda: unitary.check_cocycle_field(unitary.cocycle_field(case)))
    for name, ok in unitary.degenerations(case).items():
        yield run_check(S, f"degeneration[{name}]", "limiting cases", lambda ok=ok: ok)


def suite_bialgebra(case: CaseSpec, opt: SuiteOptions) -> Iterator[CheckRecord]:
    S = "bialgebra"
    yield run_check(S, "block_unitary[L]", "building blocks",
                    lambda: unitary.check_unitary(bialgebra.block_L(case).op))
    yield run_check(S, "block_unitary[rho]", "building blocks",
                    lambda: unitary.check_unitary(bialgebra.block_rho(case).op))
    yield run_check(S, "block_identity[L]", "normalized cocycle",
                    lambda: unitary.op_equal(bialgebra.block_L(case).at_zero(),
                                             unitary.identity(bialgebra.block_L(case).op.variables)))
    yield run_check(S, "coproduct_grouplaw", "comultiplication preserves the group law",
                    lambda: bialgebra.check_coproduct_grouplaw(case))
    if case.kind == "case3":
        yield run_check(S, "coproduct[displayed]", "displayed coproduct of L",
                        lambda: unitary.op_residual(
                            bialgebra.coproduct(unitary.build_VTheta(case), bialgebra.block_L(case).op, case).op,
                            bialgebra.displayed_coproduct_case3(case)))
    yield run_check(S, "coassociativity[L]", "coassociativity", lambda: bialgebra.check_coassociativity(case))
    yield run_check(S, "coassociativity[rho]", "coassociativity",
                    lambda: bialgebra.check_coassociativity(case, bialgebra.block_rho(case).op))
    yield run_check(S, "dual_twist", "dual coproduct twisted by Theta", lambda: bialgebra.check_dual_twist(case))
    yield run_check(S, "crossed_product", "Z implements alpha and gamma",
                    lambda: bialgebra.check_crossed_product_relations(case))


SUITE_FUNCS = {"liealg": suite_liealg, "group": suite_group, "poisson": suite_poisson,
               "unitary": suite_unitary, "bialgebra": suite_bialgebra}


def run_suites(case: CaseSpec, suites, opt: SuiteOptions) -> list[CheckRecord]:
    out = []
    for s in SUITES:
        if s in suites:
            out.extend(SUITE_FUNCS[s](case, opt))
    return out


# -- negative controls --------------------------------------------------------------------------

def corrupt_theta_slot(case: CaseSpec) -> unitary.PhasedOp:
    """Theta with the pairing taken against the wrong slot: r' beta(x, x')."""
    from plq.cases import leg_names
    from plq.exppoly import dot

    n = case.n
    first, second = leg_names(case), leg_names(case, "'")
    X = [var(v) for v in first[:n]]
    X2 = [var(v) for v in second[:n]]
    return unitary.multiplication(var(second[-1]) * dot(X, X2), first + second, "Theta[bad]")


def self_test(opt: SuiteOptions) -> list[CheckRecord]:
    """Corrupted fixtures; every checker must report a nonzero residual."""
    S = "self-test"
    out = []
    h = liealg.heisenberg(2)
    bad = h.with_bracket("x1", "z", {"y1": 1})
    out.append(run_check(S, "jacobi[bad structure constant]", "negative control",
                         lambda: liealg.check_jacobi(bad), expect_zero=False))
    case2 = CaseSpec("case2", n=1, lam=Fraction(1, 2))
    Wbad = unitary.build_VTheta(case2, corrupt_theta_slot(case2))
    out.append(run_check(S, "pentagon[wrong Theta slot]", "negative control",
                         lambda: unitary.check_pentagon(Wbad, seed=opt.seed).exact, expect_zero=False))
    J = [[0, 1], [1, 0]]
    r = liealg.tensor(h.basis, {("x1", "x2"): 1, ("x2", "x1"): 1})
    out.append(run_check(S, "skew[non-skew J]", "negative control",
                         lambda: liealg.check_skew(r), expect_zero=False))
    out.append(run_check(S, "coboundary_antisymmetric[non-skew J]", "negative control",
                         lambda: liealg.coboundary_from_r(h, r).is_antisymmetric(), expect_zero=False,
                         note=f"J = {J}"))
    c3 = CaseSpec("case3", n=2, J=[[0, 1], [-1, 0]])
    wrong = liegroup.dual_group(CaseSpec("case3", n=2, J=[[0, 0], [0, 0]]))
    out.append(run_check(S, "coproduct_grouplaw[J dropped]", "negative control",
                         lambda: bialgebra.check_coproduct_grouplaw(c3, group=wrong), expect_zero=False))
    G2 = liegroup.dual_group(case2)
    Fbad = liegroup.build_F(case2, profile=var("r"))
    out.append(run_check(S, "F_cocycle[wrong profile]", "negative control",
                         lambda: liegroup.verify_F(G2, Fbad, case2), expect_zero=False))
    return out
