"""Point-map Lie groups, adjoint action, group 1-cocycles and Poisson bivectors.

A :class:`PointGroup` stores its multiplication as exponential-polynomial
components in two copies of the coordinates (the second copy primed), exactly
in the coordinates the formulas are written in.  Everything downstream
(adjoint action, translations, Haar Jacobians, brackets) is derived by
symbolic substitution and differentiation rather than hand-coded per case.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from plq import liealg
from plq.cases import CaseSpec, InvalidParameter, group_names, r_names
from plq.exppoly import ExpPoly, as_fraction, const, eta, exp, triangular_det, triangular_inverse, var
from plq.residual import ExactResidual

Matrix = list[list[ExpPoly]]


class AssociativityFailure(ValueError):
    pass


class CocycleConditionFailure(ValueError):
    pass


def _prime(names: Sequence[str], tag: str = "'") -> list[str]:
    return [v + tag for v in names]


def rename(e: ExpPoly, old: Sequence[str], new: Sequence[str]) -> ExpPoly:
    return e.subs({a: var(b) for a, b in zip(old, new)})


@dataclass(frozen=True)
class PointGroup:
    name: str
    coords: tuple[str, ...]
    mult: tuple[ExpPoly, ...]
    identity: tuple[Fraction, ...] | None = None

    def __post_init__(self):
        if self.identity is None:
            object.__setattr__(self, "identity", tuple(Fraction(0) for _ in self.coords))

    @property
    def dim(self) -> int:
        return len(self.coords)

    @property
    def primed(self) -> list[str]:
        return _prime(self.coords)

    def product(self, a: Sequence, b: Sequence) -> list[ExpPoly]:
        """Symbolic product of two points given as coordinate expressions."""
        binds = dict(zip(self.coords, a))
        binds.update(zip(self.primed, b))
        return [m.subs(binds) for m in self.mult]

    def point(self, names: Sequence[str] | None = None) -> list[ExpPoly]:
        return [var(v) for v in (names or self.coords)]

    def inverse(self) -> list[ExpPoly]:
        """Closed-form inverse in the unprimed coordinates (solves g h = e for h)."""
        hmap = triangular_inverse(self.mult, self.primed)
        at_identity = {h: const(c) for h, c in zip(self.primed, self.identity)}
        return [e.subs(at_identity) for e in hmap]


# -- builders ----------------------------------------------------------------------

def _abelian(name: str, coords: list[str]) -> PointGroup:
    return PointGroup(name, tuple(coords), tuple(var(c) + var(c + "'") for c in coords))


def heisenberg_group(n: int, m: int = 1, beta=None) -> PointGroup:
    """``(x, y, z)(x', y', z') = (x + x', y + y', z + z' + beta(x, y'))``."""
    xs = [f"x{i + 1}" for i in range(n)]
    ys = [f"y{i + 1}" for i in range(n)]
    zs = ["z"] if m == 1 else [f"z{k + 1}" for k in range(m)]
    comps = [var(c) + var(c + "'") for c in xs + ys]
    for k, z in enumerate(zs):
        pairing = const(0)
        for i in range(n):
            for j in range(n):
                c = (Fraction(int(i == j)) if beta is None else as_fraction(beta[k][i][j]))
                if c:
                    pairing = pairing + c * var(xs[i]) * var(ys[j] + "'")
        comps.append(var(z) + var(z + "'") + pairing)
    return PointGroup(f"H({n},{m})", tuple(xs + ys + zs), tuple(comps))


def quotient_group(n: int) -> PointGroup:
    """H/Z: the abelian group R^{2n} in (x, y)."""
    return _abelian(f"H/Z({n})", [f"x{i + 1}" for i in range(n)] + [f"y{i + 1}" for i in range(n)])


def g1_group(m: int = 1) -> PointGroup:
    return _abelian(f"G1({m})", ["r"] if m == 1 else [f"r{k + 1}" for k in range(m)])


def dual_group(case: CaseSpec) -> PointGroup:
    """The dual group G of a case, with its multiplication exactly as written."""
    n = case.n
    names = group_names(case)
    ps, qs, rs = names[:n], names[n:2 * n], names[2 * n:]
    P, Q, R = [var(v) for v in ps], [var(v) for v in qs], [var(v) for v in rs]
    P2, Q2, R2 = [var(v + "'") for v in ps], [var(v + "'") for v in qs], [var(v + "'") for v in rs]
    rs2 = [v + "'" for v in rs]
    if case.is_diagonal_scalar:
        a, b = case.rates
        comps = [exp(rs2[0], a) * p + p2 for p, p2 in zip(P, P2)]
        comps += [exp(rs2[0], b) * q + q2 for q, q2 in zip(Q, Q2)]
    elif case.kind == "case3":
        shift = case.JT_times(P)
        comps = list(p + p2 for p, p2 in zip(P, P2))
        comps += [q + q2 + R2[0] * s for q, q2, s in zip(Q, Q2, shift)]
    else:
        pi, rho = case.pi_diag(rs2), case.rho_diag(rs2)
        comps = [e * p + p2 for e, p, p2 in zip(pi, P, P2)]
        comps += [e * q + q2 for e, q, q2 in zip(rho, Q, Q2)]
    comps += [r + r2 for r, r2 in zip(R, R2)]
    group = PointGroup(f"G[{case.kind}]", tuple(names), tuple(comps))
    return group


def build_group(kind: str, case: CaseSpec | None = None, n: int = 1, m: int = 1, beta=None) -> PointGroup:
    """Catalogue entry point: "H", "HmodZ", "G1", or "G" (the dual group of ``case``)."""
    if kind == "H":
        return heisenberg_group(n, m, beta)
    if kind == "HmodZ":
        return quotient_group(n)
    if kind == "G1":
        return g1_group(m)
    if kind == "G":
        if case is None:
            raise InvalidParameter("the dual group needs a case")
        G = dual_group(case)
        res = check_group_axioms(G)
        if not all(r == 0 for r in res.values()):
            raise AssociativityFailure(f"{G.name}: {res}")
        return G
    raise InvalidParameter(f"unknown group {kind!r}")


# -- group axioms ------------------------------------------------------------------

def check_group_axioms(G: PointGroup) -> dict[str, ExactResidual]:
    g, h, k = G.point(), G.point(G.primed), G.point(_prime(G.coords, "''"))
    e = [const(c) for c in G.identity]
    inv = G.inverse()
    return {
        "associativity": ExactResidual.compare(G.product(G.product(g, h), k),
                                               G.product(g, G.product(h, k))),
        "right_identity": ExactResidual.compare(G.product(g, e), g),
        "left_identity": ExactResidual.compare(G.product(e, g), g),
        "right_inverse": ExactResidual.compare(G.product(g, inv), e),
        "left_inverse": ExactResidual.compare(G.product(inv, g), e),
    }


def lie_algebra_of(G: PointGroup, name: str | None = None) -> liealg.LieAlgebra:
    """Structure constants from the quadratic part of the multiplication.

    ``[e_i, e_j]^k = B^k_ij - B^k_ji`` with ``B^k_ij = d^2 m^k / dg_i dh_j`` at ``(e, e)``.
    """
    at_e = {v: const(c) for v, c in zip(G.coords, G.identity)}
    at_e.update({v: const(c) for v, c in zip(G.primed, G.identity)})
    B = [[[m.diff(gi).diff(hj).subs(at_e).constant_value() for hj in G.primed]
          for gi in G.coords] for m in G.mult]
    consts = {}
    for i in range(G.dim):
        for j in range(G.dim):
            val = {k: B[k][i][j] - B[k][j][i] for k in range(G.dim) if B[k][i][j] - B[k][j][i]}
            if val:
                consts[(i, j)] = val
    return liealg.LieAlgebra(name or f"Lie({G.name})", G.coords, consts)


# -- matrices of expressions ---------------------------------------------------------

def mat_mul(A: Matrix, B: Matrix) -> Matrix:
    n, k, m = len(A), len(B), len(B[0])
    return [[sum((A[i][t] * B[t][j] for t in range(k)), const(0)) for j in range(m)] for i in range(n)]


def transpose(A: Matrix) -> Matrix:
    return [list(row) for row in zip(*A)]


def congruence(A: Matrix, F: Matrix) -> Matrix:
    """``A F A^T``: push a 2-tensor forward by the linear map ``A``."""
    return mat_mul(mat_mul(A, F), transpose(A))


def mat_subs(A: Matrix, binds) -> Matrix:
    return [[e.subs(binds) for e in row] for row in A]


def mat_add(A: Matrix, B: Matrix) -> Matrix:
    return [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def flat(A: Matrix) -> list[ExpPoly]:
    return [e for row in A for e in row]


def zeros(n: int) -> Matrix:
    return [[const(0) for _ in range(n)] for _ in range(n)]


# -- adjoint action and translations --------------------------------------------------

def _derivative_at(comps: Sequence[ExpPoly], wrt: Sequence[str], at: dict) -> Matrix:
    return [[c.diff(v).subs(at) for v in wrt] for c in comps]


def adjoint(G: PointGroup, g: Sequence | None = None) -> Matrix:
    """Matrix of ``Ad_g``: derivative at the identity of ``h -> g h g^{-1}``.

    ``g`` defaults to the symbolic point in the group's own coordinates;
    column ``l`` holds the image of the basis vector ``e_l``.
    """
    gp = list(g) if g is not None else G.point()
    ginv = [e.subs(dict(zip(G.coords, gp))) for e in G.inverse()]
    h = G.point(G.primed)
    conj = G.product(G.product(gp, h), ginv)
    at_e = {v: const(c) for v, c in zip(G.primed, G.identity)}
    return _derivative_at(conj, G.primed, at_e)


def left_translation_derivative(G: PointGroup) -> Matrix:
    """``d(L_g)`` at ``h``: derivative of ``u -> g u`` at ``u = h`` (g unprimed, h primed)."""
    return [[m.diff(v) for v in G.primed] for m in G.mult]


def right_translation_derivative(G: PointGroup) -> Matrix:
    """``d(R_h)`` at ``g``: derivative of ``u -> u h`` at ``u = g``."""
    return [[m.diff(v) for v in G.coords] for m in G.mult]


def right_translation_at_identity(G: PointGroup) -> Matrix:
    """``(R_g)_*`` on the Lie algebra: derivative of ``h -> h g`` at ``h = e``, in the coordinates of g."""
    swap = {**{a: var(b) for a, b in zip(G.coords, G.primed)},
            **{b: var(a) for a, b in zip(G.coords, G.primed)}}
    hg = [m.subs(swap) for m in G.mult]  # h unprimed <-> g primed swapped: components of h*g
    at_e = {v: const(c) for v, c in zip(G.primed, G.identity)}
    return _derivative_at(hg, G.primed, at_e)


def check_ad_automorphism(G: PointGroup) -> ExactResidual:
    """``Ad_g [X, Y] = [Ad_g X, Ad_g Y]`` for basis vectors and symbolic ``g``."""
    A = adjoint(G)
    g = lie_algebra_of(G)
    D = G.dim
    diffs = []
    for i in range(D):
        for j in range(i + 1, D):
            lhs = [sum((c * A[k][t] for t, c in g.bracket_basis(i, j).items()), const(0)) for k in range(D)]
            rhs = [const(0) for _ in range(D)]
            for a in range(D):
                for b in range(D):
                    for k, c in g.bracket_basis(a, b).items():
                        rhs[k] = rhs[k] + c * A[a][i] * A[b][j]
            diffs += [x - y for x, y in zip(lhs, rhs)]
    return ExactResidual.of(diffs)


def jacobian_of_translation(G: PointGroup, side: str) -> ExpPoly:
    """Jacobian determinant of ``h -> g h`` (``side="left"``) or ``h -> h g`` (``"right"``).

    Left: a function of g (unprimed) and h (primed); the translations are
    triangular so the determinant is the product of the diagonal scales.
    """
    if side == "left":
        return triangular_det(G.mult, G.primed)
    if side == "right":
        return triangular_det(G.mult, G.coords)
    raise ValueError("side must be 'left' or 'right'")


# -- group 1-cocycle F and Poisson bivectors -----------------------------------------

@dataclass(frozen=True)
class GroupCocycleF:
    """``F: G -> g ^ g`` as an antisymmetric matrix of expressions in the r-coordinates.

    The tensor is ``sum_{k,l} F[k][l] e_k (x) e_l`` over the Lie algebra basis
    (the group's coordinate directions).
    """

    name: str
    coords: tuple[str, ...]
    matrix: tuple[tuple[ExpPoly, ...], ...]

    def as_matrix(self) -> Matrix:
        return [list(row) for row in self.matrix]


def _wedge_matrix(D: int, pairs) -> Matrix:
    M = zeros(D)
    for i, j, c in pairs:
        M[i][j] = M[i][j] + c
        M[j][i] = M[j][i] - c
    return M


def theta_matrix(case: CaseSpec) -> list[Matrix]:
    """Cobracket of the dual algebra, one matrix per r-direction: sum_ij beta^k_ij p_i ^ q_j."""
    n, D = case.n, case.dim
    out = []
    for k in range(case.m):
        pairs = []
        for i in range(n):
            for j in range(n):
                if case.kind in ("rieffel", "nonuni"):
                    c = case.beta[k][i][j]
                else:
                    c = Fraction(int(i == j))
                if c:
                    pairs.append((i, n + j, const(c)))
        out.append(_wedge_matrix(D, pairs))
    return out


def build_F(case: CaseSpec, profile: ExpPoly | None = None) -> GroupCocycleF:
    """Group 1-cocycle integrating the dual cobracket.

    Diagonal-rate cases use ``F(r) = f(r) sum p_k ^ q_k`` with
    ``f(r) = (1 - exp(-(a + b) r)) / (a + b)`` (``f = r`` when ``a + b = 0``),
    the solution of ``f(r + r') = f(r) + exp(-(a+b) r) f(r')``, ``f'(0) = 1``.
    ``profile`` overrides ``f`` so candidate ansatzes can be tested.
    Case 3 uses ``r sum p_k ^ q_k - (r^2/2) sum J_kj q_j ^ q_k``; rieffel
    uses the linear ``sum_k r_k theta_k``.
    """
    n, D = case.n, case.dim
    names = group_names(case)
    rs = r_names(case)
    if case.is_diagonal_scalar:
        a, b = case.rates
        f = profile if profile is not None else eta(-(a + b), rs[0])
        M = _wedge_matrix(D, [(k, n + k, f) for k in range(n)])
    elif case.kind == "case3":
        r = var(rs[0])
        f = profile if profile is not None else r
        pairs = [(k, n + k, f) for k in range(n)]
        for k in range(n):
            for j in range(n):
                if case.J[k][j]:
                    # -(r^2/2) J_kj q_j ^ q_k
                    pairs.append((n + j, n + k, -Fraction(1, 2) * case.J[k][j] * r * r))
        M = _wedge_matrix(D, pairs)
    elif case.kind == "rieffel":
        M = zeros(D)
        for k, T in enumerate(theta_matrix(case)):
            M = mat_add(M, [[var(rs[k]) * e for e in row] for row in T])
    else:
        raise InvalidParameter("no Poisson bracket is specified for the non-unimodular variant")
    return GroupCocycleF(f"F[{case.kind}]", tuple(names), tuple(tuple(row) for row in M))


def verify_F(G: PointGroup, F: GroupCocycleF, case: CaseSpec) -> dict[str, ExactResidual]:
    """Residuals of the normalisation, both forms of the cocycle identity and ``dF_e = theta``.

    ``cocycle_r`` is the identity along the r-subgroup,
    ``F(r + r') = F(r) + Ad_(0,0,r) F(r')``; ``cocycle_full`` is
    ``F(g h) = F(g) + Ad_g F(h)`` for fully symbolic ``g, h``.
    """
    n = case.n
    rs = r_names(case)
    M = F.as_matrix()
    at_zero = {r: const(0) for r in rs}
    res = {"normalized": ExactResidual.of(flat(mat_subs(M, at_zero)))}

    r_point = [const(0)] * (2 * n) + [var(r) for r in rs]
    A_r = adjoint(G, r_point)
    shifted = {r: var(r) + var(r + "'") for r in rs}
    primed = {r: var(r + "'") for r in rs}
    lhs = mat_subs(M, shifted)
    rhs = mat_add(M, congruence(A_r, mat_subs(M, primed)))
    res["cocycle_r"] = ExactResidual.compare(flat(lhs), flat(rhs))

    gh = G.product(G.point(), G.point(G.primed))
    lhs = mat_subs(M, dict(zip(G.coords, gh)))
    rhs = mat_add(M, congruence(adjoint(G), mat_subs(M, {c: var(c + "'") for c in G.coords})))
    res["cocycle_full"] = ExactResidual.compare(flat(lhs), flat(rhs))

    thetas = theta_matrix(case)
    diffs = []
    for k, r in enumerate(rs):
        dF = mat_subs([[e.diff(r) for e in row] for row in M], at_zero)
        diffs += [a - b for a, b in zip(flat(dF), flat(thetas[k]))]
    res["derivative"] = ExactResidual.of(diffs)
    return res


def check_F(G: PointGroup, F: GroupCocycleF, case: CaseSpec) -> None:
    bad = {k: str(v) for k, v in verify_F(G, F, case).items() if v != 0}
    if bad:
        raise CocycleConditionFailure(f"{F.name}: {bad}")


@dataclass(frozen=True)
class PoissonBivector:
    coords: tuple[str, ...]
    matrix: tuple[tuple[ExpPoly, ...], ...]

    def entry(self, i: int, j: int) -> ExpPoly:
        return self.matrix[i][j]

    def as_matrix(self) -> Matrix:
        return [list(row) for row in self.matrix]

    def is_antisymmetric(self) -> bool:
        D = len(self.coords)
        return all(self.matrix[i][j] == -self.matrix[j][i] for i in range(D) for j in range(D))


def poisson_from_F(G: PointGroup, F: GroupCocycleF) -> PoissonBivector:
    """Right translation of F: ``Pi(g) = (R_g)_* F(g)``."""
    R = right_translation_at_identity(G)
    Pi = congruence(R, F.as_matrix())
    return PoissonBivector(G.coords, tuple(tuple(row) for row in Pi))


def differential_slots(case: CaseSpec) -> tuple[list[str], list[str]]:
    """Names for the components of d(phi) = (x, y, z) and d(psi) = (x', y', z')."""
    n = case.n
    zs = ["z"] if case.m == 1 else [f"z{k + 1}" for k in range(case.m)]
    first = [f"x{i + 1}" for i in range(n)] + [f"y{i + 1}" for i in range(n)] + zs
    return first, _prime(first)


def bracket_expression(Pi: PoissonBivector, case: CaseSpec) -> ExpPoly:
    """``{phi, psi} = sum Pi^{ab} d_a phi d_b psi`` with the differentials as free symbols."""
    u, w = differential_slots(case)
    D = len(Pi.coords)
    return sum((Pi.matrix[a][b] * var(u[a]) * var(w[b]) for a in range(D) for b in range(D)
                if not Pi.matrix[a][b].is_zero), const(0))


def printed_bracket(case: CaseSpec) -> ExpPoly:
    """The Poisson brackets as written, transcribed independently of the F machinery."""
    n = case.n
    u, w = differential_slots(case)
    x, y, x2, y2 = u[:n], u[n:2 * n], w[:n], w[n:2 * n]
    X, Y, X2, Y2 = ([var(v) for v in group] for group in (x, y, x2, y2))

    def beta(a, b):
        return sum((ai * bi for ai, bi in zip(a, b)), const(0))

    if case.kind in ("rieffel", "nonuni"):
        if case.kind == "nonuni":
            raise InvalidParameter("no Poisson bracket is specified for the non-unimodular variant")
        rs = r_names(case)
        return sum((var(rs[k]) * (case.beta_k(k, X, Y2) - case.beta_k(k, X2, Y)) for k in range(case.m)),
                   const(0))
    r = var("r")
    skew = beta(X, Y2) - beta(X2, Y)
    if case.kind == "case1":
        return r * skew
    if case.kind == "case2":
        lam = case.lam
        return (exp("r", 2 * lam) - 1) / (2 * lam) * skew
    if case.kind == "mixed":
        s = case.lam + case.nu
        coeff = r if s == 0 else (exp("r", s) - 1) / s
        return coeff * skew
    J = case.J
    extra = sum((J[k][j] * (Y[j] * Y2[k] - Y[k] * Y2[j]) for k in range(n) for j in range(n) if J[k][j]),
                const(0))
    return r * skew + Fraction(1, 2) * r * r * extra


def check_schouten(Pi: PoissonBivector) -> ExactResidual:
    """``sum_l (Pi^{li} d_l Pi^{jk} + Pi^{lj} d_l Pi^{ki} + Pi^{lk} d_l Pi^{ij})`` over triples."""
    c = Pi.coords
    D = len(c)
    d = [[[Pi.matrix[i][j].diff(v) for v in c] for j in range(D)] for i in range(D)]
    diffs = []
    for i in range(D):
        for j in range(i + 1, D):
            for k in range(j + 1, D):
                total = const(0)
                for l in range(D):
                    total = (total + Pi.matrix[l][i] * d[j][k][l] + Pi.matrix[l][j] * d[k][i][l]
                             + Pi.matrix[l][k] * d[i][j][l])
                diffs.append(total)
    return ExactResidual.of(diffs)


def check_multiplicativity(G: PointGroup, Pi: PoissonBivector) -> ExactResidual:
    """``Pi(g h) = (L_g)_* Pi(h) + (R_h)_* Pi(g)`` for symbolic g, h."""
    M = Pi.as_matrix()
    gh = G.product(G.point(), G.point(G.primed))
    lhs = mat_subs(M, dict(zip(G.coords, gh)))
    Pi_h = mat_subs(M, {a: var(b) for a, b in zip(G.coords, G.primed)})
    rhs = mat_add(congruence(left_translation_derivative(G), Pi_h),
                  congruence(right_translation_derivative(G), M))
    return ExactResidual.compare(flat(lhs), flat(rhs))


# -- matched pairs -----------------------------------------------------------------

@dataclass(frozen=True)
class MatchedPair:
    """G = G2 x G1 with actions alpha_r on (p, q) and gamma_(p,q) on r."""

    group: PointGroup
    n: int
    alpha: tuple[ExpPoly, ...]  # expressions in (p, q, r)
    gamma: tuple[ExpPoly, ...]  # expressions in (p, q, r)

    def alpha_at(self, r: Sequence, pq: Sequence) -> list[ExpPoly]:
        c = self.group.coords
        binds = dict(zip(c[2 * self.n:], r))
        binds.update(zip(c[:2 * self.n], pq))
        return [e.subs(binds) for e in self.alpha]


def matched_pair(case: CaseSpec) -> MatchedPair:
    G = dual_group(case)
    n = case.n
    names = group_names(case)
    P = [var(v) for v in names[:n]]
    Q = [var(v) for v in names[n:2 * n]]
    rs = r_names(case)
    R = [var(v) for v in rs]
    if case.is_diagonal_scalar:
        a, b = case.rates
        alpha = [exp(rs[0], -a) * p for p in P] + [exp(rs[0], -b) * q for q in Q]
    elif case.kind == "case3":
        shift = case.JT_times(P)
        alpha = P + [q - R[0] * s for q, s in zip(Q, shift)]
    else:
        alpha = ([e * p for e, p in zip(case.pi_diag(rs, -1), P)]
                 + [e * q for e, q in zip(case.rho_diag(rs, -1), Q)])
    return MatchedPair(G, n, tuple(alpha), tuple(R))


def check_matched_pair(mp: MatchedPair) -> dict[str, ExactResidual]:
    G, n = mp.group, mp.n
    c = G.coords
    m = len(c) - 2 * n
    zero_pq = [const(0)] * (2 * n)
    zero_r = [const(0)] * m
    P = [var(v) for v in c[:2 * n]]
    R = [var(v) for v in c[2 * n:]]
    S = [var(v + "'") for v in c[2 * n:]]
    recomposed = G.product(list(mp.alpha) + zero_r, zero_pq + list(mp.gamma))
    factor = G.product(zero_pq + R, P + zero_r)
    twice = mp.alpha_at(R, mp.alpha_at(S, P))
    once = mp.alpha_at([a + b for a, b in zip(R, S)], P)
    return {
        "recomposition": ExactResidual.compare(recomposed, G.point()),
        "factorization": ExactResidual.compare(factor, G.point()),
        "alpha_identity": ExactResidual.compare(mp.alpha_at(zero_r, P), P),
        "alpha_action": ExactResidual.compare(twice, once),
        "gamma_trivial": ExactResidual.compare(mp.gamma, R),
    }


# -- Rieffel compatibility -------------------------------------------------------------

def check_compatibility(case: CaseSpec) -> bool:
    """``beta(pi(r)^t x, rho(r)^t y) = beta(x, y)`` and ``det pi(r) det rho(r) = 1`` exactly."""
    n = case.n
    rs = r_names(case)
    X = [var(f"x{i + 1}") for i in range(n)]
    Y = [var(f"y{i + 1}") for i in range(n)]
    pi, rho = case.pi_diag(rs), case.rho_diag(rs)
    moved = case.beta_vec([e * x for e, x in zip(pi, X)], [e * y for e, y in zip(rho, Y)])
    same = ExactResidual.compare(moved, case.beta_vec(X, Y)) == 0
    det = const(1)
    for e in pi + rho:
        det = det * e
    return same and det == 1
