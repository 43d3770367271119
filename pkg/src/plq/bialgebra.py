"""Building blocks of the quantum algebras and their coproducts by conjugation.

The C*-algebras themselves are only represented through dense families of
blocks carrying symbolic parameters, so each identity below is checked once
for all parameter values.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from plq.cases import CaseSpec, block_names, group_names, leg_names, r_names
from plq.exppoly import ExpPoly, const, dot, var
from plq.liegroup import dual_group
from plq.residual import ExactResidual
from plq.unitary import (CocycleField, PhasedOp, adjoint, build_VTheta, build_Z, cocycle_field, compose_all,
                         legs_of_pair, multiplication, op_residual)


@dataclass(frozen=True)
class BuildingBlock:
    op: PhasedOp
    params: tuple[str, ...]

    def at_zero(self) -> PhasedOp:
        zero = {p: const(0) for p in self.params}
        W = self.op
        return PhasedOp(W.variables, tuple(e.subs(zero) for e in W.point_map),
                        W.prefactor.subs(zero), W.phase.subs(zero), W.name)


@dataclass(frozen=True)
class CoproductResult:
    op: PhasedOp
    provenance: str


def block_params(case: CaseSpec, kind: str = "L") -> list[str]:
    n = case.n
    if kind == "L":
        zs = ["zt"] if case.m == 1 else [f"zt{k + 1}" for k in range(case.m)]
        return block_names("xt", n) + block_names("yt", n) + zs
    return block_names("at", n) + block_names("bt", n) + [v + "t" for v in r_names(case)]


def _shift_block(case: CaseSpec, sigma: CocycleField, legnames: Sequence[str], shifts: Sequence[ExpPoly]):
    """Point map and cocycle phase of a translation by ``shifts`` on one (x, y, r) leg."""
    d = 2 * case.n
    coords = [var(v) for v in legnames]
    moved = [c - s for c, s in zip(coords[:d], shifts)]
    phase = sigma.at(coords[d:], list(shifts), moved)
    return moved + coords[d:], phase


def block_L(case: CaseSpec, params: Sequence[str] | None = None) -> BuildingBlock:
    """``L xi(x, y, r) = ebar(r . zt) sigma^r((xt, yt), (x - xt, y - yt)) xi(x - xt, y - yt, r)``."""
    params = list(params or block_params(case))
    sigma = cocycle_field(case)
    d = 2 * case.n
    names = leg_names(case)
    T, t = _shift_block(case, sigma, names, [var(p) for p in params[:d]])
    t = t + dot([var(v) for v in names[d:]], [var(p) for p in params[d:]])
    return BuildingBlock(PhasedOp(tuple(names), tuple(T), const(1), t, "L"), tuple(params))


def block_rho(case: CaseSpec, params: Sequence[str] | None = None) -> BuildingBlock:
    """Crossed-product block at a fixed group element ``rt``, times the character ``x . at + y . bt``.

    The point map is ``(x, y, r) -> (Z-action at rt on (x, y), r - rt)``; a
    positive prefactor ``|det|^{1/2}`` keeps each block unitary.
    """
    params = list(params or block_params(case, "rho"))
    d = 2 * case.n
    names = leg_names(case)
    Z = build_Z(case)
    rs = names[d:]
    rt = {v: var(p) for v, p in zip(rs, params[d:])}
    T = [e.subs(rt) for e in Z.point_map[:d]] + [var(v) - var(p) for v, p in zip(rs, params[d:])]
    phase = dot([var(v) for v in names[:d]], [var(p) for p in params[:d]])
    return BuildingBlock(PhasedOp(tuple(names), tuple(T), Z.prefactor.subs(rt), phase, "rho"), tuple(params))


def _first_leg(case: CaseSpec, a: PhasedOp) -> PhasedOp:
    return a.on(leg_names(case) + leg_names(case, "'"))


def coproduct(W: PhasedOp, a: PhasedOp, case: CaseSpec) -> CoproductResult:
    """``W (a (x) 1) W^*``."""
    return CoproductResult(compose_all(W, _first_leg(case, a), adjoint(W)), "conjugation")


def dual_coproduct(W: PhasedOp, b: PhasedOp, case: CaseSpec) -> CoproductResult:
    """``W^* (1 (x) b) W``."""
    mapping = dict(zip(leg_names(case), leg_names(case, "'")))
    b2 = b.renamed(mapping).on(leg_names(case) + leg_names(case, "'"))
    return CoproductResult(compose_all(adjoint(W), b2, W), "dual conjugation")


# -- the coproduct against the group law -------------------------------------------------

def character_exponent(case: CaseSpec, params: Sequence[str], point: Sequence[ExpPoly]) -> ExpPoly:
    """``p . xt + q . yt + r . zt`` at ``point`` (the character F of the L-block)."""
    return dot(point, [var(p) for p in params])


def grouplaw_coproduct(case: CaseSpec, params: Sequence[str] | None = None, group=None) -> CoproductResult:
    """The doubled block ``(L (x) L)_{Delta F}`` assembled from the group law of G.

    ``Delta F(g; g') = F(g g')``; its exponent is affine in (p, q, p', q') with
    r-dependent coefficients.  Those coefficients are the translations of
    the two legs, and the remainder is the central character.
    """
    params = list(params or block_params(case))
    G = group if group is not None else dual_group(case)
    d = 2 * case.n
    gg = G.product(G.point(), G.point(G.primed))
    ell = character_exponent(case, params, gg)
    pq, pq2 = list(G.coords[:d]), list(G.primed[:d])
    for v in pq + pq2:
        if ell.degree(v) > 1 or v in ell.exp_symbols():
            raise ValueError(f"Delta F is not affine in {v}")
    shifts = [ell.diff(v) for v in pq]
    shifts2 = [ell.diff(v) for v in pq2]
    central = ell.subs({v: 0 for v in pq + pq2})
    # rename the dual group's r-coordinates to the operator legs' r-coordinates
    rs, rs2 = r_names(case), r_names(case, "'")
    to_leg = {**{v: var(v) for v in rs}, **{v + "'": var(w) for v, w in zip(rs, rs2)}}
    shifts = [s.subs(to_leg) for s in shifts]
    shifts2 = [s.subs(to_leg) for s in shifts2]
    central = central.subs(to_leg)
    sigma = cocycle_field(case)
    T1, t1 = _shift_block(case, sigma, leg_names(case), shifts)
    T2, t2 = _shift_block(case, sigma, leg_names(case, "'"), shifts2)
    names = leg_names(case) + leg_names(case, "'")
    op = PhasedOp(tuple(names), tuple(T1 + T2), const(1), central + t1 + t2, "Delta(L)[group law]")
    return CoproductResult(op, "group law")


def check_coproduct_grouplaw(case: CaseSpec, group=None) -> tuple[ExactResidual, ExactResidual]:
    """Conjugation by V_Theta against the group-law assembly, exactly.

    ``group`` replaces the dual group (used to show a wrong law is detected).
    """
    L = block_L(case).op
    lhs = coproduct(build_VTheta(case), L, case).op
    rhs = grouplaw_coproduct(case, group=group).op
    return op_residual(lhs, rhs)


def displayed_coproduct_case3(case: CaseSpec) -> PhasedOp:
    """Delta(L) for case 3 as written out term by term, including the r r' cross term."""
    if case.kind != "case3":
        raise ValueError("only case 3 has a displayed coproduct")
    n = case.n
    xt, yt = [var(v) for v in block_names("xt", n)], [var(v) for v in block_names("yt", n)]
    zt = var("zt")
    X, Y, X2, Y2 = ([var(v) for v in block_names(a, n, pr)] for a, pr in
                    (("x", ""), ("y", ""), ("x", "'"), ("y", "'")))
    r, r2 = var("r"), var("r'")
    Jyt = case.J_times(yt)
    dy = [a - b for a, b in zip(Y, yt)]
    dy2 = [a - b for a, b in zip(Y2, yt)]
    t = ((r + r2) * zt + r * r / 2 * dot(Jyt, dy) + r * dot(xt, dy)
         + r2 * r2 / 2 * dot(Jyt, dy2) + r2 * dot(xt, dy2) + r * r2 * dot(Jyt, dy))
    T = ([x - a - r2 * s for x, a, s in zip(X, xt, Jyt)] + dy + [r]
         + [x - a for x, a in zip(X2, xt)] + dy2 + [r2])
    return PhasedOp(tuple(leg_names(case) + leg_names(case, "'")), tuple(T), const(1), t,
                    "Delta(L)[displayed]")


def check_coassociativity(case: CaseSpec, block: PhasedOp | None = None,
                          W: PhasedOp | None = None) -> tuple[ExactResidual, ExactResidual]:
    """``W12 W13 a1 W13* W12* = W23 W12 a1 W12* W23*`` on three legs."""
    W = W or build_VTheta(case)
    a = block if block is not None else block_L(case).op
    W12, W13, W23 = (legs_of_pair(W, legs) for legs in (("", "'"), ("", "''"), ("'", "''")))
    lhs = compose_all(W12, W13, a, adjoint(W13), adjoint(W12))
    rhs = compose_all(W23, W12, a, adjoint(W12), adjoint(W23))
    return op_residual(lhs, rhs)


def check_dual_twist(case: CaseSpec) -> tuple[ExactResidual, ExactResidual]:
    """``Delta^(b) = Theta^* Delta^_V(b) Theta`` on a rho-block."""
    from plq.unitary import build_Theta, build_V

    b = block_rho(case).op
    Theta = build_Theta(case)
    lhs = dual_coproduct(build_VTheta(case), b, case).op
    rhs = compose_all(adjoint(Theta), dual_coproduct(build_V(case), b, case).op, Theta)
    return op_residual(lhs, rhs)


# -- crossed product relations ------------------------------------------------------------

def check_crossed_product_relations(case: CaseSpec) -> dict[str, tuple[ExactResidual, ExactResidual]]:
    """Conjugation by Z sends characters of G2 to their alpha-twisted versions and fixes G1.

    On the dual group side a character ``g = ebar(p . at + q . bt)`` is a
    multiplication operator; in the (x, y) realization it is translation by
    ``(at, bt)``.  The twisted character ``g o alpha_r`` is computed from the
    matched pair, not from Z.
    """
    from plq.liegroup import matched_pair

    n, d = case.n, 2 * case.n
    ab = [var(v) for v in block_names("at", n) + block_names("bt", n)]
    rs = r_names(case)
    mp = matched_pair(case)
    pq_names = group_names(case)
    PQ = [var(v) for v in pq_names[:d]]
    twisted = dot(mp.alpha, ab)
    out = {}

    Zpq = build_Z(case, "pq")
    g = multiplication(dot(PQ, ab), pq_names, "g")
    lhs = compose_all(Zpq, g, adjoint(Zpq))
    out["alpha_pq"] = op_residual(lhs, multiplication(twisted, pq_names))

    # xy realization: the twisted character's coefficients give the new translation
    Zxy = build_Z(case)
    names = leg_names(case)
    X = [var(v) for v in names[:d]]
    tr = PhasedOp(tuple(names), tuple([x - s for x, s in zip(X, ab)] + [var(v) for v in names[d:]]),
                  name="g")
    new_shift = [twisted.diff(v).subs(dict(zip(pq_names[d:], [var(v) for v in names[d:]]))) for v in pq_names[:d]]
    want = PhasedOp(tuple(names), tuple([x - s for x, s in zip(X, new_shift)] + [var(v) for v in names[d:]]))
    out["alpha_xy"] = op_residual(compose_all(Zxy, tr, adjoint(Zxy)), want)

    f = multiplication(dot([var(v) for v in rs], [var(v + "t") for v in rs]), names, "f")
    out["gamma"] = op_residual(compose_all(Zxy, f, adjoint(Zxy)), f)
    return out
