"""Phased point-transform operators and the multiplicative unitaries built from them.

An operator acts by ``(W xi)(v) = c(v) * exp(-2 pi i t(v)) * xi(T v)``.  The
class is closed under composition and inversion as long as ``T`` stays
coordinate-triangular with exponential scales, which covers every operator
constructed here.  Variables not mentioned by an operator are left alone, so
leg placement is a renaming of variables.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

import numpy as np

from plq.cases import CaseSpec, InvalidParameter, block_names, leg_names, r_names, split_leg
from plq.exppoly import (ExpPoly, NonAffineExpSubstitution, NotInvertible, NotTriangular, const,
                         dot, eta, exp, triangular_det, triangular_inverse, var)
from plq.residual import ExactResidual


class OperatorClassEscape(ValueError):
    """A construction left the class of phased triangular point transforms."""


@dataclass(frozen=True)
class PhasedOp:
    variables: tuple[str, ...]
    point_map: tuple[ExpPoly, ...]
    prefactor: ExpPoly = field(default_factory=lambda: const(1))
    phase: ExpPoly = field(default_factory=lambda: const(0))
    name: str = field(default="", compare=False)

    def __post_init__(self):
        if len(self.variables) != len(self.point_map):
            raise ValueError("point map length must match the variables")

    @property
    def dim(self) -> int:
        return len(self.variables)

    def map_dict(self) -> dict[str, ExpPoly]:
        return dict(zip(self.variables, self.point_map))

    def on(self, variables: Sequence[str]) -> "PhasedOp":
        """The same operator viewed on a larger variable list (identity elsewhere)."""
        own = self.map_dict()
        extra = [v for v in self.variables if v not in variables]
        names = tuple(variables) + tuple(extra)
        return PhasedOp(names, tuple(own.get(v, var(v)) for v in names), self.prefactor, self.phase, self.name)

    def renamed(self, mapping: Mapping[str, str], name: str | None = None) -> "PhasedOp":
        binds = {a: var(b) for a, b in mapping.items()}
        return PhasedOp(tuple(mapping.get(v, v) for v in self.variables),
                        tuple(e.subs(binds) for e in self.point_map),
                        self.prefactor.subs(binds), self.phase.subs(binds),
                        self.name if name is None else name)

    def is_multiplication(self) -> bool:
        return all(e == var(v) for v, e in zip(self.variables, self.point_map))

    def to_text(self) -> str:
        lines = [f"{self.name or 'W'} on ({', '.join(self.variables)})"]
        moved = [f"  {v} -> {e}" for v, e in zip(self.variables, self.point_map) if e != var(v)]
        lines += moved or ["  (no point transform)"]
        lines.append(f"  prefactor: {self.prefactor}")
        lines.append(f"  phase exponent: {self.phase}")
        return "\n".join(lines)

    def __matmul__(self, other: "PhasedOp") -> "PhasedOp":
        return compose(self, other)


def identity(variables: Sequence[str]) -> PhasedOp:
    return PhasedOp(tuple(variables), tuple(var(v) for v in variables), name="1")


def multiplication(phase: ExpPoly, variables: Sequence[str] | None = None, name: str = "") -> PhasedOp:
    names = tuple(variables) if variables is not None else tuple(sorted(phase.free_symbols()))
    return PhasedOp(names, tuple(var(v) for v in names), const(1), phase, name)


def _union(a: Sequence[str], b: Sequence[str]) -> list[str]:
    return list(a) + [v for v in b if v not in a]


def compose(W1: PhasedOp, W2: PhasedOp) -> PhasedOp:
    """The product ``W1 W2``: ``T = T2 o T1``, ``c = c1 (c2 o T1)``, ``t = t1 + t2 o T1``."""
    names = _union(W1.variables, W2.variables)
    A, B = W1.on(names), W2.on(names)
    T1 = A.map_dict()
    try:
        T = tuple(e.subs(T1) for e in B.point_map)
        c = A.prefactor * B.prefactor.subs(T1)
        t = A.phase + B.phase.subs(T1)
    except NonAffineExpSubstitution as exc:
        raise OperatorClassEscape(str(exc)) from exc
    return PhasedOp(tuple(names), T, c, t, f"{W1.name}{W2.name}")


def compose_all(*ops: PhasedOp) -> PhasedOp:
    out = ops[0]
    for W in ops[1:]:
        out = compose(out, W)
    return out


def adjoint(W: PhasedOp) -> PhasedOp:
    """``W^*``, which is ``W^{-1}`` for a unitary: inverse map, reciprocal prefactor, negated phase."""
    try:
        inv = triangular_inverse(W.point_map, W.variables)
        binds = dict(zip(W.variables, inv))
        c = W.prefactor.subs(binds).reciprocal()
        t = -W.phase.subs(binds)
    except (NotTriangular, NotInvertible, NonAffineExpSubstitution) as exc:
        raise OperatorClassEscape(str(exc)) from exc
    return PhasedOp(W.variables, tuple(inv), c, t, f"{W.name}*")


def leg(W: PhasedOp, positions: Sequence[int], factors: Sequence[Sequence[str]]) -> PhasedOp:
    """Place ``W`` on the factors at ``positions`` (1-based) of a multi-factor space.

    W's variables are read as consecutive blocks, one per listed position,
    with block sizes taken from the target factors.
    """
    mapping, k = {}, 0
    for p in positions:
        for v in factors[p - 1]:
            if k >= len(W.variables):
                raise ValueError("factor sizes exceed the operator's variables")
            mapping[W.variables[k]] = v
            k += 1
    if k != len(W.variables):
        raise ValueError("factor sizes do not cover the operator's variables")
    return W.renamed(mapping, f"{W.name}_{''.join(map(str, positions))}")


def _phase_residual(a: ExpPoly, b: ExpPoly) -> ExactResidual:
    d = a - b
    # phases live in R/Z: an integer constant difference is invisible
    if d.is_constant() and d.constant_value().denominator == 1:
        return ExactResidual()
    return ExactResidual.of([d])


def op_residual(W1: PhasedOp, W2: PhasedOp) -> tuple[ExactResidual, ExactResidual]:
    """(map and prefactor residual, phase residual) between two operators."""
    names = _union(W1.variables, W2.variables)
    A, B = W1.on(names), W2.on(names)
    maps = ExactResidual.compare(list(A.point_map) + [A.prefactor], list(B.point_map) + [B.prefactor])
    return maps, _phase_residual(A.phase, B.phase)


def op_equal(W1: PhasedOp, W2: PhasedOp) -> bool:
    m, p = op_residual(W1, W2)
    return m == 0 and p == 0


def check_unitary(W: PhasedOp) -> ExactResidual:
    """``prefactor^2 - |det dT|`` exactly."""
    try:
        det = triangular_det(W.point_map, W.variables)
    except NotTriangular as exc:
        raise OperatorClassEscape(str(exc)) from exc
    if not det.is_positive_term() and (-det).is_positive_term():
        det = -det
    return ExactResidual.of([W.prefactor * W.prefactor - det])


# -- numeric diagnostics -----------------------------------------------------------------

@dataclass(frozen=True)
class NumericResidual:
    map_residual: float
    phase_residual: float
    points: int

    @property
    def worst(self) -> float:
        return max(self.map_residual, self.phase_residual)


def numeric_residual(W1: PhasedOp, W2: PhasedOp, points: int = 1000, box=(-2.0, 2.0),
                     seed: int = 0) -> NumericResidual:
    """Sampled comparison of maps, prefactors and the unimodular factors ``exp(-2 pi i t)``."""
    names = _union(W1.variables, W2.variables)
    A, B = W1.on(names), W2.on(names)
    symbols = set(names)
    for e in (A.prefactor, A.phase, B.prefactor, B.phase, *A.point_map, *B.point_map):
        symbols |= e.free_symbols()
    rng = np.random.default_rng(seed)
    sample = {v: rng.uniform(box[0], box[1], size=points) for v in sorted(symbols)}

    def ev(e):
        return np.broadcast_to(np.asarray(e.evaluate(sample), dtype=float), (points,))

    m = 0.0
    for a, b in zip(list(A.point_map) + [A.prefactor], list(B.point_map) + [B.prefactor]):
        m = max(m, float(np.max(np.abs(ev(a) - ev(b)))))
    pa = np.exp(-2j * math.pi * ev(A.phase))
    pb = np.exp(-2j * math.pi * ev(B.phase))
    return NumericResidual(m, float(np.max(np.abs(pa - pb))), points)


# -- pentagon --------------------------------------------------------------------------------

def _suffix_map(variables: Sequence[str], legs: tuple[str, str]) -> dict[str, str]:
    """Send first-leg variables ``v`` to ``v + legs[0]`` and primed ones ``v'`` to ``v + legs[1]``."""
    out = {}
    for v in variables:
        if v.endswith("'"):
            out[v] = v[:-1] + legs[1]
        else:
            out[v] = v + legs[0]
    return out


def legs_of_pair(W: PhasedOp, legs: tuple[str, str]) -> PhasedOp:
    tag = {"": "1", "'": "2", "''": "3"}
    return W.renamed(_suffix_map(W.variables, legs), f"{W.name}{tag[legs[0]]}{tag[legs[1]]}")


def pentagon_sides(W: PhasedOp) -> tuple[PhasedOp, PhasedOp]:
    """``W12 W13 W23`` and ``W23 W12`` on three legs suffixed "", "'", "''"."""
    W12 = legs_of_pair(W, ("", "'"))
    W13 = legs_of_pair(W, ("", "''"))
    W23 = legs_of_pair(W, ("'", "''"))
    return compose_all(W12, W13, W23), compose(W23, W12)


@dataclass(frozen=True)
class PentagonResult:
    map_residual: ExactResidual
    phase_residual: ExactResidual
    numeric: NumericResidual | None = None

    @property
    def exact(self) -> tuple[ExactResidual, ExactResidual]:
        return self.map_residual, self.phase_residual

    def passed(self, tol: float = 1e-9) -> bool:
        if self.map_residual == 0 and self.phase_residual == 0:
            return True
        return self.numeric is not None and self.numeric.worst < tol


def check_pentagon(W: PhasedOp, force_numeric: bool = False, points: int = 1000,
                   box=(-2.0, 2.0), seed: int = 0) -> PentagonResult:
    """Exact pentagon residuals, plus the sampled fallback when forced or when exactness fails."""
    lhs, rhs = pentagon_sides(W)
    m, p = op_residual(lhs, rhs)
    numeric = None
    if force_numeric or m != 0 or p != 0:
        numeric = numeric_residual(lhs, rhs, points, box, seed)
    return PentagonResult(m, p, numeric)


# -- cocycle fields -----------------------------------------------------------------------------

@dataclass(frozen=True)
class CocycleField:
    """Exponent of ``sigma^r((x, y), (x', y'))``; its phase is ``exp(-2 pi i sigma)``."""

    case: CaseSpec
    exponent: ExpPoly

    @property
    def r(self) -> list[str]:
        return r_names(self.case)

    @property
    def first(self) -> list[str]:
        return leg_names(self.case)[:2 * self.case.n]

    @property
    def second(self) -> list[str]:
        return leg_names(self.case, "'")[:2 * self.case.n]

    def at(self, r: Sequence, g: Sequence, h: Sequence) -> ExpPoly:
        binds = dict(zip(self.r, r))
        binds.update(zip(self.first, g))
        binds.update(zip(self.second, h))
        return self.exponent.subs(binds)


def cocycle_field(case: CaseSpec) -> CocycleField:
    x, y, rs = split_leg(case, leg_names(case))
    x2, y2, _ = split_leg(case, leg_names(case, "'"))
    X, Y2 = [var(v) for v in x], [var(v) for v in y2]
    if case.kind in ("case1", "case2", "mixed"):
        a, b = case.rates
        s = eta(a + b, rs[0]) * dot(X, Y2)
    elif case.kind == "case3":
        r = var(rs[0])
        Y = [var(v) for v in y]
        s = r * dot(X, Y2) + Fraction(1, 2) * r * r * dot(case.J_times(Y), Y2)
    elif case.kind == "rieffel":
        s = sum((var(rk) * case.beta_k(k, X, Y2) for k, rk in enumerate(rs)), const(0))
    else:
        pi, rho = case.pi_diag(rs), case.rho_diag(rs)
        PX = [e * v for e, v in zip(pi, X)]
        RY = [e * v for e, v in zip(rho, Y2)]
        s = sum((case.beta_k(k, PX, RY) - case.beta_k(k, X, Y2) for k in range(case.m)), const(0))
    return CocycleField(case, s)


def check_cocycle_field(sigma: CocycleField) -> dict[str, ExactResidual]:
    """Additive 2-cocycle identity on the abelian group R^{2n}, and normalisation."""
    d = 2 * sigma.case.n
    R = [var(v) for v in sigma.r]
    g = [var(v + "_g") for v in sigma.first]
    h = [var(v + "_h") for v in sigma.first]
    k = [var(v + "_k") for v in sigma.first]
    zero = [const(0)] * d

    def add(u, w):
        return [a + b for a, b in zip(u, w)]

    lhs = sigma.at(R, g, h) + sigma.at(R, add(g, h), k)
    rhs = sigma.at(R, h, k) + sigma.at(R, g, add(h, k))
    return {
        "cocycle": ExactResidual.of([lhs - rhs]),
        "normalized": ExactResidual.of([sigma.at(R, zero, h), sigma.at(R, g, zero)]),
    }


# -- builders ---------------------------------------------------------------------------------

def build_X(m: int = 1, names: Sequence[str] | None = None, primed: Sequence[str] | None = None) -> PhasedOp:
    """``X xi(r; r') = xi(r + r'; r')`` on G1 x G1."""
    rs = list(names) if names else (["r"] if m == 1 else [f"r{k + 1}" for k in range(m)])
    rp = list(primed) if primed else [v + "'" for v in rs]
    return PhasedOp(tuple(rs + rp), tuple([var(a) + var(b) for a, b in zip(rs, rp)] + [var(b) for b in rp]),
                    name="X")


def build_Y(n: int) -> PhasedOp:
    """``Y xi(x, y; x', y') = xi(x, y; x' - x, y' - y)`` on H/Z x H/Z."""
    first = block_names("x", n) + block_names("y", n)
    second = [v + "'" for v in first]
    return PhasedOp(tuple(first + second),
                    tuple([var(v) for v in first] + [var(b) - var(a) for a, b in zip(first, second)]),
                    name="Y")


def build_Z(case: CaseSpec, realization: str = "xy") -> PhasedOp:
    """The operator implementing the matched-pair actions on one leg.

    ``realization="xy"`` works in the (x, y; r) variables used by V;
    ``"pq"`` works on the dual group coordinates, where ``T`` is
    ``(alpha_r(p, q), r)``.
    """
    n = case.n
    rs = r_names(case)
    R = [var(v) for v in rs]
    if realization == "xy":
        xs, ys = block_names("x", n), block_names("y", n)
        sign = 1
    elif realization == "pq":
        xs, ys = block_names("p", n), block_names("q", n)
        sign = -1
    else:
        raise ValueError("realization must be 'xy' or 'pq'")
    X, Y = [var(v) for v in xs], [var(v) for v in ys]
    if case.kind in ("case1", "case2", "mixed"):
        a, b = case.rates
        T = [exp(rs[0], sign * a) * v for v in X] + [exp(rs[0], sign * b) * v for v in Y]
        c = exp(rs[0], sign * n * (a + b) / 2)
    elif case.kind == "case3":
        if realization == "xy":
            T = [v + R[0] * s for v, s in zip(X, case.J_times(Y))] + Y
        else:
            T = X + [v - R[0] * s for v, s in zip(Y, case.JT_times(X))]
        c = const(1)
    else:
        pi, rho = case.pi_diag(rs, sign), case.rho_diag(rs, sign)
        T = [e * v for e, v in zip(pi, X)] + [e * v for e, v in zip(rho, Y)]
        half = {v: Fraction(0) for v in rs}
        for row in list(case.pi_rates) + list(case.rho_rates):
            for v, a in zip(rs, row):
                half[v] += sign * a / 2
        c = exp(half)
    return PhasedOp(tuple(xs + ys + rs), tuple(T + R), c, const(0), "Z")


def build_Theta(case: CaseSpec, sigma: CocycleField | None = None) -> PhasedOp:
    """Multiplication by ``Theta(x, y, r; x', y', r') = sigma^{r'}((x, y), (x', y'))``."""
    sigma = sigma or cocycle_field(case)
    rp = [var(v) for v in r_names(case, "'")]
    g = [var(v) for v in sigma.first]
    h = [var(v) for v in sigma.second]
    names = leg_names(case) + leg_names(case, "'")
    return multiplication(sigma.at(rp, g, h), names, "Theta")


def four_factor_space(case: CaseSpec) -> list[list[str]]:
    """Factors (x, y), r, (x', y'), r' on which V is assembled."""
    first, second = leg_names(case), leg_names(case, "'")
    d = 2 * case.n
    return [first[:d], first[d:], second[:d], second[d:]]


def build_V(case: CaseSpec) -> PhasedOp:
    """``V = Z12 X24 Z*12 Y13`` on the four-factor space."""
    F = four_factor_space(case)
    Z = build_Z(case)
    Z12 = leg(Z, (1, 2), F)
    X24 = leg(build_X(case.m), (2, 4), F)
    Y13 = leg(build_Y(case.n), (1, 3), F)
    V = compose_all(Z12, X24, adjoint(Z12), Y13)
    names = leg_names(case) + leg_names(case, "'")
    return PhasedOp(tuple(names), tuple(V.map_dict()[v] for v in names), V.prefactor, V.phase, "V")


def build_VTheta(case: CaseSpec, theta: PhasedOp | None = None) -> PhasedOp:
    V = build_V(case)
    W = compose(V, theta if theta is not None else build_Theta(case))
    return PhasedOp(V.variables, tuple(W.map_dict()[v] for v in V.variables), W.prefactor, W.phase, "V_Theta")


# -- displayed closed forms, transcribed independently of the composition ----------------------

def _legs(case: CaseSpec):
    x, y, rs = split_leg(case, leg_names(case))
    x2, y2, rs2 = split_leg(case, leg_names(case, "'"))
    return ([var(v) for v in x], [var(v) for v in y], [var(v) for v in rs],
            [var(v) for v in x2], [var(v) for v in y2], [var(v) for v in rs2])


def _assemble(case, nx, ny, c, t, name) -> PhasedOp:
    X, Y, R, X2, Y2, R2 = _legs(case)
    T = nx + ny + [a + b for a, b in zip(R, R2)]
    T += [a - b for a, b in zip(X2, nx)] + [a - b for a, b in zip(Y2, ny)] + R2
    names = leg_names(case) + leg_names(case, "'")
    return PhasedOp(tuple(names), tuple(T), c, t, name)


def displayed_V(case: CaseSpec) -> PhasedOp:
    """The closed form of V (written out for case 2; same pattern for the scalar-rate cases)."""
    if case.kind not in ("case1", "case2", "mixed"):
        raise InvalidParameter("V is displayed only for the scalar-rate cases")
    X, Y, R, X2, Y2, R2 = _legs(case)
    a, b = case.rates
    rp = str(R2[0])
    nx = [exp(rp, -a) * v for v in X]
    ny = [exp(rp, -b) * v for v in Y]
    return _assemble(case, nx, ny, exp(rp, -case.n * (a + b) / 2), const(0), "V[displayed]")


def displayed_VTheta(case: CaseSpec) -> PhasedOp:
    """V_Theta exactly as written out for each variant.

    Case 1 has no separate display; it is the two-rate display with ``nu = -lambda``.
    """
    X, Y, R, X2, Y2, R2 = _legs(case)
    n = case.n
    if case.kind in ("case1", "case2", "mixed"):
        lam = case.lam
        nu = {"case1": -lam, "case2": lam, "mixed": case.nu}[case.kind]
        rp = str(R2[0])
        ex = [exp(rp, -lam) * v for v in X]
        ey = [exp(rp, -nu) * v for v in Y]
        if case.kind == "case2":
            prof = (exp(rp, 2 * lam) - 1) / (2 * lam) if lam else R2[0]
        else:
            prof = (exp(rp, lam + nu) - 1) / (lam + nu) if lam + nu else R2[0]
        c = exp(rp, -Fraction(n) * (lam + nu) / 2)
        t = prof * dot(ex, [b - a for a, b in zip(ey, Y2)])
        return _assemble(case, ex, ey, c, t, "V_Theta[displayed]")
    if case.kind == "case3":
        rp = R2[0]
        Jy = case.J_times(Y)  # i-th entry sum_j J_ij y_j
        nx = [v - rp * s for v, s in zip(X, Jy)]
        # e[+...] contributes with a minus sign to the ebar-exponent
        t = -Fraction(1, 2) * rp * rp * dot(Jy, [b - a for a, b in zip(Y, Y2)])
        t = t + rp * dot(X, [b - a for a, b in zip(Y, Y2)])
        return _assemble(case, nx, list(Y), const(1), t, "V_Theta[displayed]")
    rs2 = [str(v) for v in R2]
    pim, rhom = case.pi_diag(rs2, -1), case.rho_diag(rs2, -1)
    nx = [e * v for e, v in zip(pim, X)]
    ny = [e * v for e, v in zip(rhom, Y)]
    dy = [b - a for a, b in zip(ny, Y2)]
    if case.kind == "rieffel":
        t = sum((R2[k] * case.beta_k(k, nx, dy) for k in range(case.m)), const(0))
        return _assemble(case, nx, ny, const(1), t, "V_Theta[displayed]")
    rho = case.rho_diag(rs2)
    shifted = [e * b - a for e, a, b in zip(rho, Y, Y2)]
    t = sum((case.beta_k(k, X, shifted) - case.beta_k(k, nx, dy) for k in range(case.m)), const(0))
    det = const(1)
    for e in pim + rhom:
        det = det * e
    return _assemble(case, nx, ny, det.sqrt(), t, "V_Theta[displayed]")


# -- degenerations ----------------------------------------------------------------------------

def zero_theta(case: CaseSpec) -> PhasedOp:
    return multiplication(const(0), leg_names(case) + leg_names(case, "'"), "1")


def degenerations(case: CaseSpec) -> dict[str, bool]:
    """Limits that must reproduce simpler operators exactly."""
    out = {"theta_trivial_gives_V": op_equal(build_VTheta(case, zero_theta(case)), build_V(case))}
    if case.kind == "mixed":
        c1 = CaseSpec("case1", n=case.n, lam=case.lam)
        out["mixed_nu_minus_lambda_is_case1"] = op_equal(
            build_VTheta(case.with_(nu=-case.lam)), build_VTheta(c1))
    if case.kind == "case2":
        flat = CaseSpec("case2", n=case.n, lam=0, allow_degenerate=True)
        W = build_VTheta(flat)
        X, Y, R, X2, Y2, R2 = _legs(flat)
        want = R2[0] * dot(X, [b - a for a, b in zip(Y, Y2)])
        out["lambda_zero_linear_phase"] = W.phase == want and W.prefactor == 1
    if case.kind == "case3":
        zero = CaseSpec("case3", n=case.n, J=[[0] * case.n for _ in range(case.n)])
        X, Y, R, X2, Y2, R2 = _legs(zero)
        out["J_zero_theta_linear"] = build_Theta(zero).phase == R2[0] * dot(X, Y2)
    return out
