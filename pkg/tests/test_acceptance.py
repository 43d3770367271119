"""One test per acceptance criterion; each prints a single PASS/FAIL line with its time budget."""

import random
import subprocess
import sys
import time
from fractions import Fraction

from plq import bialgebra, liealg, liegroup, unitary
from plq.cases import CaseSpec
from plq.exppoly import const, dot, var
from plq.suites import corrupt_theta_slot

NUMERIC_TOL = 1e-9
NUMERIC_POINTS = 1000
BOX = (-2.0, 2.0)
DRAWS = 5
SEED = 20240


class Criterion:
    def __init__(self, capsys, number, title, limit):
        self.capsys, self.number, self.title, self.limit = capsys, number, title, limit
        self.failures = []

    def check(self, label, ok):
        if not ok and label not in self.failures:
            self.failures.append(label)

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb):
        elapsed = time.perf_counter() - self.start
        if exc_type is not None:
            self.failures.append(f"raised {exc_type.__name__}: {exc}")
        if self.limit is not None and elapsed >= self.limit:
            self.failures.append(f"took {elapsed:.2f}s, limit {self.limit}s")
        status = "PASS" if not self.failures else "FAIL"
        budget = f" < {self.limit}s" if self.limit is not None else ""
        detail = f"  [{'; '.join(self.failures)}]" if self.failures else ""
        with self.capsys.disabled():
            print(f"\ncriterion {self.number} {status}: {self.title} ({elapsed:.2f}s{budget}){detail}")
        assert not self.failures, self.failures
        return True


def rational(rng, nonzero=True):
    while True:
        v = Fraction(rng.randint(-6, 6), rng.randint(1, 5))
        if v or not nonzero:
            return v


def skew(rng, n):
    J = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            J[i][j] = rational(rng, nonzero=False)
            J[j][i] = -J[i][j]
    return J


def dual_table(g):
    return {(a, b): {g.basis[k]: c for k, c in g.bracket({i: 1}, {j: 1}).items() if c}
            for i, a in enumerate(g.basis) for j, b in enumerate(g.basis)}


def printed_dual_table(k, n, lam=None, J=None):
    basis = [f"p{i}" for i in range(1, n + 1)] + [f"q{i}" for i in range(1, n + 1)] + ["r"]
    t = {(a, b): {} for a in basis for b in basis}
    for i in range(1, n + 1):
        if k == 3:
            val = {f"q{j}": J[i - 1][j - 1] for j in range(1, n + 1) if J[i - 1][j - 1]}
            t[(f"p{i}", "r")] = val
            t[("r", f"p{i}")] = {a: -c for a, c in val.items()}
            continue
        cq = -lam if k == 1 else lam
        t[(f"p{i}", "r")], t[("r", f"p{i}")] = {f"p{i}": lam}, {f"p{i}": -lam}
        t[(f"q{i}", "r")], t[("r", f"q{i}")] = {f"q{i}": cq}, {f"q{i}": -cq}
    return t


def zero_pair(res):
    return res[0] == 0 and res[1] == 0


def catalogue(rng):
    lam, nu = rational(rng), rational(rng)
    return [
        CaseSpec("case1", n=2, lam=lam),
        CaseSpec("case2", n=2, lam=lam),
        CaseSpec("mixed", n=2, lam=lam, nu=nu),
        CaseSpec("case3", n=3, J=skew(rng, 3)),
        CaseSpec("rieffel", n=2, m=2),
        CaseSpec("nonuni", n=2, m=1),
    ]


def test_criterion_1_exact_identities(capsys):
    rng = random.Random(SEED)
    with Criterion(capsys, 1, "Jacobi, 1-cocycles and dual brackets, exact", 10) as c:
        for draw in range(DRAWS):
            n = rng.randint(1, 3)
            n3 = rng.randint(2, 3)
            lam, nu, J = rational(rng), rational(rng, nonzero=False), skew(rng, n3)
            h, h3, ht = liealg.heisenberg(n), liealg.heisenberg(n3), liealg.extended_heisenberg(n)
            duals = {1: liealg.dual_case(1, n, lam), 2: liealg.dual_case(2, n, lam), 3: liealg.dual_case(3, n3, J=J)}
            for name, g in [("h", h), ("h~", ht)] + [(f"dual{k}", g) for k, g in duals.items()]:
                c.check(f"draw {draw}: jacobi {name}", liealg.check_jacobi(g) == 0)
            cobrackets = [(h, liealg.build_cobracket(k, n, lam, nu)) for k in ("delta1", "delta2", "delta4")]
            cobrackets += [(h3, liealg.build_cobracket("delta3", n3, J=J))]
            cobrackets += [(ht, liealg.build_cobracket(k, n, lam)) for k in ("tdelta1", "tdelta2")]
            cobrackets += [(duals[k], liealg.build_cobracket("theta", n)) for k in (1, 2)]
            cobrackets += [(duals[3], liealg.build_cobracket("theta", n3))]
            for g, d in cobrackets:
                c.check(f"draw {draw}: cocycle {d.name} on {g.name}", liealg.check_cocycle(g, d) == 0)
            for k, kind in ((1, "delta1"), (2, "delta2")):
                got = liealg.dualize(h, liealg.build_cobracket(kind, n, lam), duals[k].basis)
                c.check(f"draw {draw}: dualize {kind}", dual_table(got) == printed_dual_table(k, n, lam=lam))
            got = liealg.dualize(h3, liealg.build_cobracket("delta3", n3, J=J), duals[3].basis)
            c.check(f"draw {draw}: dualize delta3", dual_table(got) == printed_dual_table(3, n3, J=J))


def test_criterion_2_appendix(capsys):
    rng = random.Random(SEED + 2)
    with Criterion(capsys, 2, "r-matrices, coboundaries and restriction", 5) as c:
        for _ in range(DRAWS):
            n, lam = rng.randint(1, 3), rational(rng)
            h, ht = liealg.heisenberg(n), liealg.extended_heisenberg(n)
            r1 = liealg.r_triangular_extended(n, lam)
            r2 = liealg.r_quasitriangular_extended(n, lam)
            td1, td2 = liealg.build_cobracket("tdelta1", n, lam), liealg.build_cobracket("tdelta2", n, lam)
            c.check("cybe r1", liealg.check_cybe(ht, r1) == 0)
            c.check("skew r1", liealg.check_skew(r1))
            c.check("cybe r2", liealg.check_cybe(ht, r2) == 0)
            c.check("invariant r2", liealg.check_invariant(ht, r2 + r2.flip(), over=h.basis) == 0)
            c.check("coboundary tdelta1", liealg.coboundary_from_r(ht, r1) == td1)
            c.check("coboundary tdelta2", liealg.coboundary_from_r(ht, r2) == td2)
            c.check("restrict tdelta1", liealg.restrict_cobracket(td1, h) == liealg.build_cobracket("delta1", n, lam))
            c.check("restrict tdelta2", liealg.restrict_cobracket(td2, h) == liealg.build_cobracket("delta2", n, lam))
            n3 = rng.randint(2, 3)
            J = skew(rng, n3)
            h3 = liealg.heisenberg(n3)
            rJ = liealg.r_from_J(n3, J)
            c.check("cybe r_J", liealg.check_cybe(h3, rJ) == 0)
            c.check("skew r_J", liealg.check_skew(rJ))
            if any(any(row) for row in J):
                d3 = liealg.build_cobracket("delta3", n3, J=J)
                got = liealg.coboundary_from_r(h3, rJ)
                flipped = all(got(b) == -1 * d3(b) for b in h3.basis)
                c.check("coboundary of sum J_ij x_i (x) x_j is delta3"
                        + (" (it is -delta3)" if flipped else ""), got == d3)


def test_criterion_3_poisson(capsys):
    rng = random.Random(SEED + 3)
    with Criterion(capsys, 3, "Poisson-Lie structures, exact", 30) as c:
        for _ in range(DRAWS):
            n, lam = rng.randint(1, 3), rational(rng)
            n3 = rng.randint(2, 3)
            J = skew(rng, n3)
            cases = [CaseSpec("case1", n=n, lam=lam), CaseSpec("case2", n=n, lam=lam), CaseSpec("case3", n=n3, J=J)]
            for case in cases:
                G = liegroup.dual_group(case)
                F = liegroup.build_F(case)
                res = liegroup.verify_F(G, F, case)
                if case.kind == "case3":
                    c.check("case3 F cocycle", res["cocycle_r"] == 0 and res["cocycle_full"] == 0)
                c.check(f"{case.kind} F", all(v == 0 for v in res.values()))
                Pi = liegroup.poisson_from_F(G, F)
                c.check(f"{case.kind} bracket",
                        liegroup.bracket_expression(Pi, case) == liegroup.printed_bracket(case))
                c.check(f"{case.kind} schouten", liegroup.check_schouten(Pi) == 0)
                c.check(f"{case.kind} multiplicativity", liegroup.check_multiplicativity(G, Pi) == 0)


def test_criterion_4_operators(capsys):
    rng = random.Random(SEED + 4)
    with Criterion(capsys, 4, "unitarity, pentagon and displayed closed forms", 60) as c:
        for case in catalogue(rng):
            V, W = unitary.build_V(case), unitary.build_VTheta(case)
            for op in (unitary.build_X(case.m), unitary.build_Y(case.n), unitary.build_Z(case),
                       unitary.build_Z(case, "pq"), V, W):
                c.check(f"{case.kind} unitary {op.name}", unitary.check_unitary(op) == 0)
            for op in (V, W):
                res = unitary.check_pentagon(op, force_numeric=True, points=NUMERIC_POINTS, box=BOX, seed=SEED)
                c.check(f"{case.kind} pentagon {op.name}", zero_pair(res.exact))
                c.check(f"{case.kind} sampled pentagon {op.name}", res.numeric.worst < NUMERIC_TOL)
            c.check(f"{case.kind} display", zero_pair(unitary.op_residual(W, unitary.displayed_VTheta(case))))


def test_criterion_5_degenerations(capsys):
    with Criterion(capsys, 5, "degenerate limits", 10) as c:
        lam, n = Fraction(2, 3), 2
        for case in (CaseSpec("case2", n=n, lam=lam), CaseSpec("case3", n=n, J=[[0, 1], [-1, 0]]),
                     CaseSpec("rieffel", n=2, m=2)):
            c.check(f"{case.kind} Theta = 1",
                    unitary.op_equal(unitary.build_VTheta(case, unitary.zero_theta(case)), unitary.build_V(case)))
        c.check("mixed at nu = -lambda", unitary.op_equal(
            unitary.build_VTheta(CaseSpec("mixed", n=n, lam=lam, nu=-lam)),
            unitary.build_VTheta(CaseSpec("case1", n=n, lam=lam))))
        flat = CaseSpec("case2", n=n, lam=0, allow_degenerate=True)
        x = [var(f"x{i}") for i in (1, 2)]
        dy = [var(f"y{i}'") - var(f"y{i}") for i in (1, 2)]
        c.check("case2 lambda -> 0", unitary.build_VTheta(flat).phase == var("r'") * dot(x, dy))
        zero = CaseSpec("case3", n=n, J=[[0, 0], [0, 0]])
        conj = bialgebra.coproduct(unitary.build_VTheta(zero), bialgebra.block_L(zero).op, zero).op
        xt = [var(f"xt{i}") for i in (1, 2)]
        yt = [var(f"yt{i}") for i in (1, 2)]
        d1 = [var(f"y{i}") - b for i, b in zip((1, 2), yt)]
        d2 = [var(f"y{i}'") - b for i, b in zip((1, 2), yt)]
        r, r2 = var("r"), var("r'")
        law = unitary.PhasedOp(conj.variables, tuple(
            [var(f"x{i}") - a for i, a in zip((1, 2), xt)] + d1 + [r]
            + [var(f"x{i}'") - a for i, a in zip((1, 2), xt)] + d2 + [r2]),
            const(1), (r + r2) * var("zt") + r * dot(xt, d1) + r2 * dot(xt, d2))
        c.check("case3 J = 0 coproduct", zero_pair(unitary.op_residual(conj, law)))


def test_criterion_6_bialgebra(capsys):
    rng = random.Random(SEED + 6)
    with Criterion(capsys, 6, "coproducts, coassociativity, crossed product relations", 30) as c:
        for case in catalogue(rng):
            c.check(f"{case.kind} two paths", zero_pair(bialgebra.check_coproduct_grouplaw(case)))
            c.check(f"{case.kind} coassociativity", zero_pair(bialgebra.check_coassociativity(case)))
            c.check(f"{case.kind} coassociativity rho",
                    zero_pair(bialgebra.check_coassociativity(case, bialgebra.block_rho(case).op)))
            rel = bialgebra.check_crossed_product_relations(case)
            c.check(f"{case.kind} conjugation relations", all(zero_pair(v) for v in rel.values()))
            if case.kind == "case3":
                conj = bialgebra.coproduct(unitary.build_VTheta(case), bialgebra.block_L(case).op, case).op
                c.check("case3 cross term", zero_pair(
                    unitary.op_residual(conj, bialgebra.displayed_coproduct_case3(case))))


def test_criterion_7_negative_controls(capsys):
    with Criterion(capsys, 7, "corrupted fixtures are caught", 5) as c:
        bad = liealg.heisenberg(2).with_bracket("x1", "z", {"y1": 1})
        c.check("bad structure constant", liealg.check_jacobi(bad) != 0)
        case = CaseSpec("case2", n=1, lam=Fraction(1, 2))
        res = unitary.check_pentagon(unitary.build_VTheta(case, corrupt_theta_slot(case)),
                                     points=NUMERIC_POINTS, seed=SEED)
        c.check("wrong Theta slot", not zero_pair(res.exact) and res.numeric.worst > NUMERIC_TOL)
        h = liealg.heisenberg(2)
        r = liealg.tensor(h.basis, {("x1", "x2"): 1, ("x2", "x1"): 1})
        c.check("non-skew J", not liealg.check_skew(r) and not liealg.coboundary_from_r(h, r).is_antisymmetric())


def test_criterion_8_determinism(capsys, tmp_path):
    with Criterion(capsys, 8, "byte-identical JSON for identical config and seed", None) as c:
        outs = []
        for k in range(2):
            out = tmp_path / f"run{k}.json"
            proc = subprocess.run([sys.executable, "-m", "plq.cli", "--case", "mixed", "--n", "2",
                                   "--lambda", "1/2", "--nu", "1/3", "--seed", "42", "--force-numeric",
                                   "--report", "json", "--out", str(out)], capture_output=True)
            c.check(f"run {k} exit {proc.returncode}", proc.returncode == 0)
            outs.append(out.read_bytes())
        c.check("identical bytes", outs[0] == outs[1])
