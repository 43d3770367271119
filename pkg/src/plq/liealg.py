"""Finite-dimensional Lie algebras over Q, cobrackets, duals and classical r-matrices.

Tensors are sparse maps from index tuples to rationals.  The wedge
convention is ``a ^ b = a (x) b - b (x) a`` (no factor 1/2).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterable, Mapping

from plq.cases import InvalidParameter, is_skew
from plq.exppoly import as_fraction

DUAL_LETTER = {"x": "p", "y": "q", "z": "r", "p": "x", "q": "y", "r": "z"}


class RestrictionEscapesSubalgebra(ValueError):
    pass


def _clean(d: Mapping) -> dict:
    return {k: Fraction(v) for k, v in d.items() if v}


@dataclass(frozen=True)
class Tensor:
    """Element of ``g^{(x) rank}`` in the basis of ``basis``."""

    basis: tuple[str, ...]
    coeffs: Mapping[tuple[int, ...], Fraction]
    rank: int = 2

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _clean(self.coeffs))

    @classmethod
    def zero(cls, basis, rank=2) -> "Tensor":
        return cls(tuple(basis), {}, rank)

    def __add__(self, other: "Tensor") -> "Tensor":
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out.get(k, 0) + c
        return Tensor(self.basis, out, self.rank)

    def __sub__(self, other: "Tensor") -> "Tensor":
        return self + other.scale(-1)

    def scale(self, c) -> "Tensor":
        c = as_fraction(c)
        return Tensor(self.basis, {k: v * c for k, v in self.coeffs.items()}, self.rank)

    def __rmul__(self, c) -> "Tensor":
        return self.scale(c)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Tensor):
            return NotImplemented
        return self.rank == other.rank and self.basis == other.basis and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.basis, frozenset(self.coeffs.items()), self.rank))

    def max_abs(self) -> Fraction:
        return max((abs(c) for c in self.coeffs.values()), default=Fraction(0))

    def flip(self) -> "Tensor":
        """The leg swap ``a (x) b -> b (x) a`` of a 2-tensor."""
        return Tensor(self.basis, {(j, i): c for (i, j), c in self.coeffs.items()})

    def is_skew(self) -> bool:
        return (self + self.flip()).max_abs() == 0

    def named(self) -> dict[tuple[str, ...], Fraction]:
        return {tuple(self.basis[i] for i in k): c for k, c in sorted(self.coeffs.items())}

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        return " + ".join(f"{c}*" + "(x)".join(names) for names, c in self.named().items())


def tensor(basis, entries: Mapping[tuple[str, ...], object]) -> Tensor:
    basis = tuple(basis)
    idx = {b: i for i, b in enumerate(basis)}
    coeffs: dict = {}
    rank = 2
    for names, c in entries.items():
        rank = len(names)
        key = tuple(idx[b] for b in names)
        coeffs[key] = coeffs.get(key, 0) + as_fraction(c)
    return Tensor(basis, coeffs, rank)


def wedge(basis, a: str, b: str, c=1) -> Tensor:
    return tensor(basis, {(a, b): c, (b, a): -as_fraction(c)})


@dataclass(frozen=True)
class LieAlgebra:
    """Structure constants ``[e_i, e_j] = sum_k c[i, j][k] e_k`` (antisymmetry not enforced)."""

    name: str
    basis: tuple[str, ...]
    consts: Mapping[tuple[int, int], Mapping[int, Fraction]]

    @property
    def dim(self) -> int:
        return len(self.basis)

    def index(self, name: str) -> int:
        return self.basis.index(name)

    def bracket_basis(self, i: int, j: int) -> dict[int, Fraction]:
        return dict(self.consts.get((i, j), {}))

    def bracket(self, a: Mapping[int, Fraction], b: Mapping[int, Fraction]) -> dict[int, Fraction]:
        out: dict[int, Fraction] = {}
        for i, ca in a.items():
            for j, cb in b.items():
                for k, c in self.consts.get((i, j), {}).items():
                    out[k] = out.get(k, 0) + ca * cb * c
        return _clean(out)

    def named_brackets(self) -> dict[tuple[str, str], dict[str, Fraction]]:
        """Nonzero brackets of basis pairs ``i < j``, by name."""
        out = {}
        for (i, j), val in sorted(self.consts.items()):
            if i < j and val:
                out[(self.basis[i], self.basis[j])] = {self.basis[k]: c for k, c in sorted(val.items())}
        return out

    def with_bracket(self, a: str, b: str, value: Mapping[str, object], antisymmetric=True) -> "LieAlgebra":
        """Copy with ``[a, b]`` overwritten (negative-control fixtures)."""
        i, j = self.index(a), self.index(b)
        consts = {k: dict(v) for k, v in self.consts.items()}
        val = _clean({self.index(k): as_fraction(c) for k, c in value.items()})
        consts[(i, j)] = val
        if antisymmetric:
            consts[(j, i)] = {k: -c for k, c in val.items()}
        return LieAlgebra(self.name + "*", self.basis, consts)

    def ad(self, i: int, t: Tensor) -> Tensor:
        """Diagonal adjoint action of basis vector ``e_i`` on a tensor."""
        out: dict[tuple[int, ...], Fraction] = {}
        for key, c in t.coeffs.items():
            for leg, j in enumerate(key):
                for k, ck in self.consts.get((i, j), {}).items():
                    nk = key[:leg] + (k,) + key[leg + 1:]
                    out[nk] = out.get(nk, 0) + c * ck
        return Tensor(t.basis, out, t.rank)


def algebra(name: str, basis: Iterable[str], brackets: Mapping[tuple[str, str], Mapping[str, object]]) -> LieAlgebra:
    """Build from named brackets ``{(a, b): {c: coeff}}``; ``[b, a]`` is filled in by antisymmetry."""
    basis = tuple(basis)
    idx = {b: i for i, b in enumerate(basis)}
    consts: dict = {}
    for (a, b), val in brackets.items():
        i, j = idx[a], idx[b]
        v = _clean({idx[k]: as_fraction(c) for k, c in val.items()})
        for key, sign in (((i, j), 1), ((j, i), -1)):
            cur = consts.setdefault(key, {})
            for k, c in v.items():
                cur[k] = cur.get(k, 0) + sign * c
    consts = {k: _clean(v) for k, v in consts.items() if _clean(v)}
    return LieAlgebra(name, basis, consts)


# -- builders -------------------------------------------------------------------

def _xyz(n: int, m: int = 1) -> tuple[list[str], list[str], list[str]]:
    xs = [f"x{i + 1}" for i in range(n)]
    ys = [f"y{i + 1}" for i in range(n)]
    zs = ["z"] if m == 1 else [f"z{k + 1}" for k in range(m)]
    return xs, ys, zs


def _pqr(n: int, m: int = 1) -> tuple[list[str], list[str], list[str]]:
    ps = [f"p{i + 1}" for i in range(n)]
    qs = [f"q{i + 1}" for i in range(n)]
    rs = ["r"] if m == 1 else [f"r{k + 1}" for k in range(m)]
    return ps, qs, rs


def heisenberg(n: int, m: int = 1, beta=None) -> LieAlgebra:
    """``[x_i, y_j] = delta_ij z``; with ``m > 1`` the center is m-dimensional and
    ``[x_i, y_j] = sum_k beta[k][i][j] z_k``."""
    if n < 1:
        raise InvalidParameter("n must be >= 1")
    xs, ys, zs = _xyz(n, m)
    br = {}
    for i in range(n):
        for j in range(n):
            if m == 1 and beta is None:
                if i == j:
                    br[(xs[i], ys[j])] = {zs[0]: 1}
            else:
                val = {zs[k]: beta[k][i][j] for k in range(m) if beta[k][i][j]}
                if val:
                    br[(xs[i], ys[j])] = val
    return algebra(f"h({n})" if m == 1 else f"h({n},{m})", xs + ys + zs, br)


def extended_heisenberg(n: int) -> LieAlgebra:
    """Heisenberg plus a derivation ``d``: ``[d, x_i] = x_i``, ``[d, y_i] = -y_i``."""
    xs, ys, zs = _xyz(n)
    br = {(xs[i], ys[i]): {"z": 1} for i in range(n)}
    for i in range(n):
        br[("d", xs[i])] = {xs[i]: 1}
        br[("d", ys[i])] = {ys[i]: -1}
    return algebra(f"h~({n})", xs + ys + zs + ["d"], br)


def dual_rates(n: int, lam, nu) -> LieAlgebra:
    """``[p_i, r] = lam p_i``, ``[q_i, r] = nu q_i``, everything else zero."""
    ps, qs, rs = _pqr(n)
    br = {}
    for i in range(n):
        br[(ps[i], "r")] = {ps[i]: lam}
        br[(qs[i], "r")] = {qs[i]: nu}
    return algebra(f"g({lam},{nu})", ps + qs + rs, br)


def dual_case(k: int, n: int, lam=1, J=None) -> LieAlgebra:
    lam = as_fraction(lam)
    if k in (1, 2):
        if lam == 0:
            raise InvalidParameter("lambda must be nonzero")
        g = dual_rates(n, lam, -lam if k == 1 else lam)
        return LieAlgebra(f"g{k}", g.basis, g.consts)
    if k == 3:
        J = _check_J(n, J)
        ps, qs, rs = _pqr(n)
        br = {(ps[i], "r"): {qs[j]: J[i][j] for j in range(n)} for i in range(n)}
        return algebra("g3", ps + qs + rs, br)
    raise InvalidParameter(f"unknown dual case {k}")


def _check_J(n: int, J):
    if n < 2:
        raise InvalidParameter("case 3 needs n >= 2")
    if J is None:
        raise InvalidParameter("case 3 needs J")
    J = [[as_fraction(x) for x in row] for row in J]
    if len(J) != n or any(len(row) != n for row in J) or not is_skew(J):
        raise InvalidParameter("J must be a skew n x n matrix")
    return J


def build_algebra(kind: str, n: int = 1, lam=1, J=None, k: int | None = None) -> LieAlgebra:
    """``kind`` in {"heisenberg", "extended_heisenberg", "dual_case"} (the latter with ``k``)."""
    if n < 1:
        raise InvalidParameter("n must be >= 1")
    if kind == "heisenberg":
        return heisenberg(n)
    if kind == "extended_heisenberg":
        return extended_heisenberg(n)
    if kind == "dual_case":
        return dual_case(k, n, lam, J)
    raise InvalidParameter(f"unknown algebra kind {kind!r}")


# -- cobrackets ------------------------------------------------------------------

@dataclass(frozen=True)
class Cobracket:
    name: str
    basis: tuple[str, ...]
    values: Mapping[int, Tensor]

    def __call__(self, name: str) -> Tensor:
        return self.value(self.basis.index(name))

    def value(self, i: int) -> Tensor:
        return self.values.get(i, Tensor.zero(self.basis))

    def is_antisymmetric(self) -> bool:
        return all(t.is_skew() for t in self.values.values())

    def linear(self, vec: Mapping[int, Fraction]) -> Tensor:
        out = Tensor.zero(self.basis)
        for i, c in vec.items():
            out = out + self.value(i).scale(c)
        return out

    def with_value(self, name: str, t: Tensor) -> "Cobracket":
        values = dict(self.values)
        values[self.basis.index(name)] = t
        return Cobracket(self.name + "*", self.basis, values)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Cobracket):
            return NotImplemented
        return self.basis == other.basis and all(
            self.value(i) == other.value(i) for i in range(len(self.basis)))

    def __hash__(self):
        return hash((self.name, self.basis))


def cobracket(name: str, basis, values: Mapping[str, Tensor]) -> Cobracket:
    basis = tuple(basis)
    return Cobracket(name, basis, {basis.index(k): v for k, v in values.items() if v.coeffs})


def build_cobracket(kind: str, n: int = 1, lam=1, nu=0, J=None) -> Cobracket:
    """Cobrackets by name: delta1..delta4 on h, theta on the dual, tdelta1/tdelta2 on h~."""
    lam, nu = as_fraction(lam), as_fraction(nu)
    xs, ys, _ = _xyz(n)
    if kind in ("delta1", "delta2", "delta4", "tdelta1", "tdelta2"):
        if lam == 0:
            raise InvalidParameter(f"{kind} needs lambda != 0")
        extended = kind.startswith("t")
        basis = xs + ys + ["z"] + (["d"] if extended else [])
        if kind in ("delta1", "tdelta1"):
            cx, cy = lam, -lam
        elif kind in ("delta2", "tdelta2"):
            cx, cy = lam, lam
        else:
            # (l-v)/2l * delta1 + (l+v)/2l * delta2
            a, b = (lam - nu) / (2 * lam), (lam + nu) / (2 * lam)
            cx, cy = (a + b) * lam, (b - a) * lam
        values = {}
        for i in range(n):
            values[xs[i]] = wedge(basis, xs[i], "z", cx)
            values[ys[i]] = wedge(basis, ys[i], "z", cy)
        return cobracket(kind, basis, values)
    if kind == "delta3":
        J = _check_J(n, J)
        basis = xs + ys + ["z"]
        values = {}
        for j in range(n):
            t = Tensor.zero(basis)
            for i in range(n):
                if J[i][j]:
                    t = t + wedge(basis, xs[i], "z", J[i][j])
            values[ys[j]] = t
        return cobracket(kind, basis, values)
    if kind == "theta":
        ps, qs, rs = _pqr(n)
        basis = ps + qs + rs
        t = Tensor.zero(basis)
        for i in range(n):
            t = t + wedge(basis, ps[i], qs[i])
        return cobracket(kind, basis, {"r": t})
    raise InvalidParameter(f"unknown cobracket {kind!r}")


def check_jacobi(g: LieAlgebra) -> Fraction:
    """Largest coefficient of ``[[a,b],c] + [[b,c],a] + [[c,a],b]`` over basis triples."""
    worst = Fraction(0)
    for i, j, k in product(range(g.dim), repeat=3):
        if not (i < j < k):
            continue
        total: dict[int, Fraction] = {}
        for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
            inner = g.bracket_basis(a, b)
            for t, v in g.bracket(inner, {c: Fraction(1)}).items():
                total[t] = total.get(t, 0) + v
        worst = max([worst] + [abs(v) for v in total.values()])
    return worst


def check_cocycle(g: LieAlgebra, delta: Cobracket) -> Fraction:
    """Largest coefficient of ``delta([X,Y]) - ad_X delta(Y) + ad_Y delta(X)`` over basis pairs."""
    if delta.basis != g.basis:
        raise ValueError("cobracket and algebra bases differ")
    worst = Fraction(0)
    for i in range(g.dim):
        for j in range(i + 1, g.dim):
            lhs = delta.linear(g.bracket_basis(i, j))
            rhs = g.ad(i, delta.value(j)) - g.ad(j, delta.value(i))
            worst = max(worst, (lhs - rhs).max_abs())
    return worst


def dual_name(name: str) -> str:
    return DUAL_LETTER.get(name[0], name[0] + "*") + name[1:]


def dualize(g: LieAlgebra, delta: Cobracket, names=None, name: str | None = None) -> LieAlgebra:
    """Lie algebra on the dual basis with ``<[mu_a, mu_b], X> = <mu_a (x) mu_b, delta(X)>``."""
    if delta.basis != g.basis:
        raise ValueError("cobracket and algebra bases differ")
    basis = tuple(names) if names is not None else tuple(dual_name(b) for b in g.basis)
    consts: dict[tuple[int, int], dict[int, Fraction]] = {}
    for k in range(g.dim):
        for (a, b), c in delta.value(k).coeffs.items():
            consts.setdefault((a, b), {})[k] = c
    return LieAlgebra(name or f"dual({g.name},{delta.name})", basis,
                      {key: v for key, v in consts.items() if v})


def same_structure(g1: LieAlgebra, g2: LieAlgebra) -> bool:
    """Identical basis names and structure constants."""
    return g1.basis == g2.basis and {k: _clean(v) for k, v in g1.consts.items() if _clean(v)} == \
        {k: _clean(v) for k, v in g2.consts.items() if _clean(v)}


# -- coboundaries and r-matrices ----------------------------------------------------

def coboundary_from_r(g: LieAlgebra, r: Tensor) -> Cobracket:
    """``delta_r(X) = ad_X(r)``."""
    return Cobracket(f"delta_r[{g.name}]", g.basis,
                     {i: g.ad(i, r) for i in range(g.dim) if g.ad(i, r).coeffs})


def check_skew(r: Tensor) -> bool:
    return r.is_skew()


def cybe(g: LieAlgebra, r: Tensor) -> Tensor:
    """``[r12, r13] + [r12, r23] + [r13, r23]`` in ``g (x) g (x) g``."""
    out: dict[tuple[int, int, int], Fraction] = {}

    def add(key, c):
        out[key] = out.get(key, 0) + c

    items = list(r.coeffs.items())
    for (a, b), c1 in items:
        for (s, t), c2 in items:
            c = c1 * c2
            for k, v in g.bracket_basis(a, s).items():
                add((k, b, t), c * v)
            for k, v in g.bracket_basis(b, s).items():
                add((a, k, t), c * v)
            for k, v in g.bracket_basis(b, t).items():
                add((a, s, k), c * v)
    return Tensor(r.basis, out, 3)


def check_cybe(g: LieAlgebra, r: Tensor) -> Fraction:
    return cybe(g, r).max_abs()


def check_invariant(g: LieAlgebra, T: Tensor, over: Iterable[str] | None = None) -> Fraction:
    """Largest coefficient of ``ad_X(T)`` for basis ``X`` (restricted to ``over`` if given)."""
    idx = range(g.dim) if over is None else [g.index(b) for b in over]
    return max((g.ad(i, T).max_abs() for i in idx), default=Fraction(0))


def r_triangular_extended(n: int, lam) -> Tensor:
    """``lam (z (x) d - d (x) z)`` on the extended Heisenberg algebra."""
    g = extended_heisenberg(n)
    return wedge(g.basis, "z", "d", lam)


def r_quasitriangular_extended(n: int, lam) -> Tensor:
    """``2 lam (sum x_i (x) y_i + (z (x) d + d (x) z)/2)``."""
    lam = as_fraction(lam)
    g = extended_heisenberg(n)
    xs, ys, _ = _xyz(n)
    entries = {(xs[i], ys[i]): 2 * lam for i in range(n)}
    entries[("z", "d")] = lam
    entries[("d", "z")] = lam
    return tensor(g.basis, entries)


def r_from_J(n: int, J) -> Tensor:
    """``sum J_ij x_i (x) x_j`` on the Heisenberg algebra."""
    J = _check_J(n, J)
    xs, _, _ = _xyz(n)
    g = heisenberg(n)
    return tensor(g.basis, {(xs[i], xs[j]): J[i][j] for i in range(n) for j in range(n) if J[i][j]})


def restrict_cobracket(delta: Cobracket, sub: LieAlgebra) -> Cobracket:
    """Restrict a cobracket on a larger algebra to the subalgebra spanned by ``sub.basis``."""
    pos = {b: i for i, b in enumerate(sub.basis)}
    values = {}
    for name in sub.basis:
        t = delta(name)
        coeffs = {}
        for (a, b), c in t.coeffs.items():
            na, nb = delta.basis[a], delta.basis[b]
            if na not in pos or nb not in pos:
                raise RestrictionEscapesSubalgebra(
                    f"{delta.name}({name}) has component {c}*{na}(x){nb} outside {sub.name}")
            coeffs[(pos[na], pos[nb])] = c
        if coeffs:
            values[pos[name]] = Tensor(sub.basis, coeffs)
    return Cobracket(f"{delta.name}|{sub.name}", sub.basis, values)


def codual(gstar: LieAlgebra, basis: Iterable[str], name: str | None = None) -> Cobracket:
    """The cobracket whose dual bracket is ``gstar``: inverse of :func:`dualize`."""
    basis = tuple(basis)
    if len(basis) != gstar.dim:
        raise ValueError("basis size does not match the dual algebra")
    values: dict[int, dict] = {}
    for (a, b), out in gstar.consts.items():
        for k, c in out.items():
            if c:
                values.setdefault(k, {})[(a, b)] = Fraction(c)
    return Cobracket(name or f"delta[{gstar.name}]", basis,
                     {k: Tensor(basis, v) for k, v in values.items()})
