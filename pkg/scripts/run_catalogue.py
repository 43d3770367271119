"""Run every suite over the case catalogue with random rational parameters.

    python scripts/run_catalogue.py --draws 3 --out results/catalogue.json
"""

from __future__ import annotations

import argparse
import json
import random
import time
from dataclasses import asdict, dataclass
from fractions import Fraction
from pathlib import Path

from plq.cases import CaseSpec
from plq.suites import SUITES, SuiteOptions, run_suites


@dataclass
class CatalogueConfig:
    seed: int = 0
    draws: int = 3
    dims: tuple[int, ...] = (1, 2, 3)
    kinds: tuple[str, ...] = ("case1", "case2", "mixed", "case3", "rieffel", "nonuni")
    force_numeric: bool = False
    samples: int = 1000
    out: Path | None = None


def rational(rng: random.Random) -> Fraction:
    while True:
        v = Fraction(rng.randint(-5, 5), rng.randint(1, 4))
        if v:
            return v


def draw_case(kind: str, n: int, rng: random.Random) -> CaseSpec | None:
    if kind in ("case1", "case2"):
        return CaseSpec(kind, n=n, lam=rational(rng))
    if kind == "mixed":
        return CaseSpec(kind, n=n, lam=rational(rng), nu=rational(rng))
    if kind == "case3":
        if n < 2:
            return None
        J = [[Fraction(0)] * n for _ in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                J[i][j] = rational(rng)
                J[j][i] = -J[i][j]
        return CaseSpec(kind, n=n, J=J)
    # diagonal families: opposite rates keep the Rieffel condition
    m = rng.randint(1, 2)
    pi = [[rational(rng) for _ in range(m)] for _ in range(n)]
    rho = [[-a for a in row] for row in pi] if kind == "rieffel" else [[rational(rng) for _ in range(m)]
                                                                       for _ in range(n)]
    return CaseSpec(kind, n=n, m=m, pi_rates=pi, rho_rates=rho)


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--draws", type=int, default=3)
    ap.add_argument("--force-numeric", action="store_true")
    ap.add_argument("--out", type=Path)
    args = ap.parse_args(argv)
    cfg = CatalogueConfig(seed=args.seed, draws=args.draws, force_numeric=args.force_numeric, out=args.out)

    rng = random.Random(cfg.seed)
    opt = SuiteOptions(cfg.seed, cfg.samples, 1e-9, cfg.force_numeric)
    rows = []
    for kind in cfg.kinds:
        for n in cfg.dims:
            for draw in range(cfg.draws):
                case = draw_case(kind, n, rng)
                if case is None:
                    continue
                start = time.perf_counter()
                records = run_suites(case, SUITES, opt)
                elapsed = time.perf_counter() - start
                counts = {s: sum(r.status == s for r in records) for s in ("pass", "fail", "info", "skip")}
                failed = [f"{r.suite}/{r.name}" for r in records if r.status == "fail"]
                rows.append({"case": case.describe(), "draw": draw, **counts, "failed": failed,
                             "seconds": round(elapsed, 3)})
                print(f"{kind:8} n={n} draw={draw}  pass={counts['pass']:3} fail={counts['fail']} "
                      f"info={counts['info']} skip={counts['skip']}  {elapsed:6.2f}s"
                      + (f"  FAILED {failed}" if failed else ""))
    total_fail = sum(r["fail"] for r in rows)
    print(f"{len(rows)} runs, {total_fail} failing checks")
    if cfg.out:
        cfg.out.parent.mkdir(parents=True, exist_ok=True)
        meta = {k: (str(v) if isinstance(v, Path) else v) for k, v in asdict(cfg).items()}
        cfg.out.write_text(json.dumps({"config": meta, "runs": rows}, indent=2, default=str) + "\n")
    return 1 if total_fail else 0


if __name__ == "__main__":
    raise SystemExit(main())
