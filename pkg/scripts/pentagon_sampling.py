"""Sampled pentagon residuals against the exact verdict, as the sampling box grows.

The exact check is the verdict; this shows where double precision stops being
able to tell a correct unitary from a corrupted one (exponentials in r blow
up the phase), which is why the default box is [-2, 2].

    python scripts/pentagon_sampling.py --points 1000
"""

from __future__ import annotations

import argparse
from dataclasses import dataclass
from fractions import Fraction

from plq.cases import CaseSpec
from plq.suites import corrupt_theta_slot
from plq.unitary import build_VTheta, check_pentagon, numeric_residual, pentagon_sides


@dataclass(frozen=True)
class SamplingConfig:
    points: int = 1000
    seed: int = 0
    boxes: tuple[float, ...] = (0.5, 1.0, 2.0, 4.0, 8.0)


CASES = (
    CaseSpec("case1", n=1, lam=Fraction(1, 2)),
    CaseSpec("case2", n=1, lam=Fraction(1, 2)),
    CaseSpec("mixed", n=1, lam=Fraction(1, 2), nu=Fraction(1, 3)),
    CaseSpec("case3", n=2, J=[[0, 1], [-1, 0]]),
    CaseSpec("rieffel", n=2, m=2),
    CaseSpec("nonuni", n=1),
)


def main(argv=None) -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--points", type=int, default=1000)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)
    cfg = SamplingConfig(points=args.points, seed=args.seed)

    print(f"{'case':8} {'exact':>7} " + " ".join(f"box={b:<6g}" for b in cfg.boxes))
    for case in CASES:
        W = build_VTheta(case)
        exact = check_pentagon(W).exact
        verdict = "0" if all(r == 0 for r in exact) else "nonzero"
        lhs, rhs = pentagon_sides(W)
        worst = [numeric_residual(lhs, rhs, cfg.points, (-b, b), cfg.seed).worst for b in cfg.boxes]
        print(f"{case.kind:8} {verdict:>7} " + " ".join(f"{w:<10.2e}" for w in worst))

    bad_case = CASES[1]
    bad = build_VTheta(bad_case, corrupt_theta_slot(bad_case))
    lhs, rhs = pentagon_sides(bad)
    exact = check_pentagon(bad).exact
    worst = [numeric_residual(lhs, rhs, cfg.points, (-b, b), cfg.seed).worst for b in cfg.boxes]
    verdict = "0" if all(r == 0 for r in exact) else "nonzero"
    print(f"{'corrupt':8} {verdict:>7} " + " ".join(f"{w:<10.2e}" for w in worst))


if __name__ == "__main__":
    main()
