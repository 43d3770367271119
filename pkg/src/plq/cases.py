"""Case catalogue: the six dual Poisson-Lie group variants and their parameters."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction

from plq.exppoly import ExpPoly, as_fraction, dot, exp, var

KINDS = ("case1", "case2", "case3", "mixed", "rieffel", "nonuni")


class InvalidParameter(ValueError):
    pass


def _matrix(rows, n_rows=None, n_cols=None) -> tuple[tuple[Fraction, ...], ...]:
    out = tuple(tuple(as_fraction(x) for x in row) for row in rows)
    if n_rows is not None and len(out) != n_rows:
        raise InvalidParameter(f"expected {n_rows} rows, got {len(out)}")
    if n_cols is not None and any(len(row) != n_cols for row in out):
        raise InvalidParameter(f"expected {n_cols} columns")
    return out


def is_skew(J) -> bool:
    n = len(J)
    return all(J[i][j] == -J[j][i] for i in range(n) for j in range(n))


def default_beta(n: int, m: int):
    """Center-valued pairing whose k-th component is sum of x_i*y_i over i = k mod m."""
    return tuple(
        tuple(tuple(Fraction(int(i == j and i % m == k)) for j in range(n)) for i in range(n))
        for k in range(m)
    )


@dataclass(frozen=True)
class CaseSpec:
    """Parameters of one variant.

    ``lam``/``nu`` drive case1, case2 and mixed; ``J`` drives case3;
    ``pi_rates``/``rho_rates`` (n x m rate matrices of diagonal representations
    ``pi(r) = diag(exp(a_i . r))``) and ``beta`` (m bilinear forms, n x n)
    drive rieffel and nonuni.
    """

    kind: str
    n: int = 1
    m: int = 1
    lam: Fraction = Fraction(1)
    nu: Fraction = Fraction(0)
    J: tuple = ()
    pi_rates: tuple = ()
    rho_rates: tuple = ()
    beta: tuple = ()
    allow_degenerate: bool = field(default=False, compare=False)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InvalidParameter(f"unknown case {self.kind!r}; expected one of {KINDS}")
        if self.n < 1 or self.m < 1:
            raise InvalidParameter("n and m must be positive")
        object.__setattr__(self, "lam", as_fraction(self.lam))
        object.__setattr__(self, "nu", as_fraction(self.nu))
        if self.kind in ("case1", "case2") and self.lam == 0 and not self.allow_degenerate:
            raise InvalidParameter(f"{self.kind} needs lambda != 0")
        if self.kind != "rieffel" and self.kind != "nonuni" and self.m != 1:
            raise InvalidParameter(f"{self.kind} has a one-dimensional center (m = 1)")
        if self.kind == "case3":
            J = _matrix(self.J or [[0] * self.n] * self.n, self.n, self.n)
            if not is_skew(J):
                raise InvalidParameter("J must be skew-symmetric")
            if self.n < 2 and not self.allow_degenerate:
                raise InvalidParameter("case3 needs n >= 2")
            object.__setattr__(self, "J", J)
        if self.kind in ("rieffel", "nonuni"):
            pi = self._rates(self.pi_rates, Fraction(1, 2))
            default_rho = tuple(tuple(-a for a in row) for row in pi)
            if self.kind == "nonuni" and not self.rho_rates:
                default_rho = tuple(tuple(Fraction(1, 3) for _ in row) for row in pi)
            rho = self._rates(self.rho_rates, None) if self.rho_rates else default_rho
            object.__setattr__(self, "pi_rates", pi)
            object.__setattr__(self, "rho_rates", rho)
            beta = self.beta or default_beta(self.n, self.m)
            beta = tuple(_matrix(b, self.n, self.n) for b in beta)
            if len(beta) != self.m:
                raise InvalidParameter(f"beta needs {self.m} bilinear forms")
            object.__setattr__(self, "beta", beta)

    def _rates(self, rates, default):
        if not rates:
            return tuple(tuple(default for _ in range(self.m)) for _ in range(self.n))
        rows = [row if isinstance(row, (list, tuple)) else [row] for row in rates]
        return _matrix(rows, self.n, self.m)

    def with_(self, **changes) -> "CaseSpec":
        return replace(self, **changes)

    # -- derived quantities --------------------------------------------------

    @property
    def rates(self) -> tuple[Fraction, Fraction]:
        """(p-rate, q-rate) of the diagonal one-parameter families."""
        if self.kind == "case1":
            return self.lam, -self.lam
        if self.kind == "case2":
            return self.lam, self.lam
        if self.kind == "mixed":
            return self.lam, self.nu
        raise InvalidParameter(f"{self.kind} has no scalar rates")

    @property
    def dim(self) -> int:
        return 2 * self.n + self.m

    @property
    def is_diagonal_scalar(self) -> bool:
        return self.kind in ("case1", "case2", "mixed")

    def pi_diag(self, rvars, sign=1) -> list[ExpPoly]:
        """Diagonal entries of pi(sign * r)."""
        return [exp({v: sign * a for v, a in zip(rvars, row)}) for row in self.pi_rates]

    def rho_diag(self, rvars, sign=1) -> list[ExpPoly]:
        return [exp({v: sign * a for v, a in zip(rvars, row)}) for row in self.rho_rates]

    def beta_k(self, k: int, x, y) -> ExpPoly:
        B = self.beta[k]
        total = ExpPoly.const(0)
        for i in range(self.n):
            for j in range(self.n):
                if B[i][j]:
                    total = total + B[i][j] * ExpPoly.coerce(x[i]) * y[j]
        return total

    def beta_vec(self, x, y) -> list[ExpPoly]:
        """Center-valued pairing; the plain inner product outside rieffel/nonuni."""
        if self.kind in ("rieffel", "nonuni"):
            return [self.beta_k(k, x, y) for k in range(self.m)]
        return [dot(x, y)]

    def J_times(self, y) -> list[ExpPoly]:
        """Vector with i-th entry sum_j J_ij y_j."""
        return [sum((self.J[i][j] * ExpPoly.coerce(y[j]) for j in range(self.n)), ExpPoly.const(0))
                for i in range(self.n)]

    def JT_times(self, p) -> list[ExpPoly]:
        """Vector with j-th entry sum_i J_ij p_i."""
        return [sum((self.J[i][j] * ExpPoly.coerce(p[i]) for i in range(self.n)), ExpPoly.const(0))
                for j in range(self.n)]

    def describe(self) -> dict:
        out = {"case": self.kind, "n": self.n}
        if self.kind in ("case1", "case2", "mixed"):
            out["lambda"] = str(self.lam)
        if self.kind == "mixed":
            out["nu"] = str(self.nu)
        if self.kind == "case3":
            out["J"] = [[str(x) for x in row] for row in self.J]
        if self.kind in ("rieffel", "nonuni"):
            out["m"] = self.m
            out["pi_rates"] = [[str(x) for x in row] for row in self.pi_rates]
            out["rho_rates"] = [[str(x) for x in row] for row in self.rho_rates]
            out["beta"] = [[[str(x) for x in row] for row in B] for B in self.beta]
        return out


# -- variable naming -------------------------------------------------------------
#
# One "leg" of the operator space is H/Z x G1 in (x, y, r) coordinates; the
# dual group G uses (p, q, r).  Further copies carry primes.

def r_names(case: CaseSpec, prime: str = "") -> list[str]:
    if case.m == 1:
        return ["r" + prime]
    return [f"r{k + 1}{prime}" for k in range(case.m)]


def block_names(letter: str, n: int, prime: str = "") -> list[str]:
    return [f"{letter}{i + 1}{prime}" for i in range(n)]


def leg_names(case: CaseSpec, prime: str = "") -> list[str]:
    """Coordinates (x, y, r) of one operator leg."""
    return block_names("x", case.n, prime) + block_names("y", case.n, prime) + r_names(case, prime)


def group_names(case: CaseSpec, prime: str = "") -> list[str]:
    """Coordinates (p, q, r) of the dual group G."""
    return block_names("p", case.n, prime) + block_names("q", case.n, prime) + r_names(case, prime)


def split_leg(case: CaseSpec, names):
    n = case.n
    return list(names[:n]), list(names[n:2 * n]), list(names[2 * n:])


def symbols(names) -> list[ExpPoly]:
    return [var(v) for v in names]
