"""Command-line driver: ``plq --case case2 --n 1 --lambda 1/2 --suites all``."""

from __future__ import annotations

import argparse
import logging
import os
import sys
import warnings
from pathlib import Path

from plq.cases import KINDS
from plq.config import ConfigError, RunConfig, build_config, ignored_fields, load_config
from plq.report import Report
from plq.suites import SuiteOptions, run_suites, self_test

log = logging.getLogger("plq")

EXIT_OK, EXIT_FAIL, EXIT_CONFIG = 0, 1, 2


def make_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="plq", description="Exact checks of Heisenberg-type Poisson-Lie groups "
                                "and their multiplicative unitaries.")
    p.add_argument("--config", type=Path, help="TOML run file; flags override its values")
    p.add_argument("--case", choices=KINDS)
    p.add_argument("--n", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--lambda", dest="lam", metavar="RATIONAL")
    p.add_argument("--nu", metavar="RATIONAL")
    p.add_argument("--J", metavar="MATRIX", help='e.g. "[[0,1],[-1,0]]"; entries may be a/b')
    p.add_argument("--pi-rates", dest="pi_rates", metavar="MATRIX")
    p.add_argument("--rho-rates", dest="rho_rates", metavar="MATRIX")
    p.add_argument("--beta", metavar="TENSOR")
    p.add_argument("--seed", type=int)
    p.add_argument("--samples", type=int)
    p.add_argument("--tol", type=float)
    p.add_argument("--suites", help="comma list from liealg,group,poisson,unitary,bialgebra or 'all'")
    p.add_argument("--report", choices=("text", "json"))
    p.add_argument("--out", type=Path, help="write the report here instead of stdout")
    p.add_argument("--force-numeric", dest="force_numeric", action="store_true", default=None,
                   help="also run the sampled pentagon comparison")
    p.add_argument("--self-test", dest="self_test", action="store_true",
                   help="run the corrupted fixtures; each must be caught")
    p.add_argument("--timings", action="store_true", help="include elapsed times (breaks byte-identity)")
    p.add_argument("-v", "--verbose", action="store_true")
    return p


FLAG_KEYS = ("case", "n", "m", "lam", "nu", "J", "pi_rates", "rho_rates", "beta", "seed", "samples", "tol",
             "suites", "report", "force_numeric")


def resolve_config(args: argparse.Namespace) -> RunConfig:
    cfg = load_config(args.config) if args.config else RunConfig()
    flags = {k: getattr(args, k) for k in FLAG_KEYS if getattr(args, k) is not None}
    return build_config(flags, cfg)


def output_path(args, cfg: RunConfig) -> Path | None:
    if args.out:
        return args.out
    env = os.environ.get("PLQ_REPORT_DIR")
    if env:
        suffix = "json" if cfg.report == "json" else "txt"
        name = "self-test" if args.self_test else f"{cfg.case}-n{cfg.n}-seed{cfg.seed}"
        return Path(env) / f"plq-{name}.{suffix}"
    return None


def run(cfg: RunConfig, self_testing: bool = False) -> Report:
    opt = SuiteOptions(cfg.seed, cfg.samples, cfg.tol, cfg.force_numeric)
    if self_testing:
        return Report({"case": "self-test"}, cfg.describe(), self_test(opt))
    case = cfg.case_spec()
    notes = [f"{k} is not used by {cfg.case}; ignored" for k in ignored_fields(cfg)]
    if case.kind == "case3" and not any(any(row) for row in case.J):
        notes.append("J = 0: every J-term vanishes and the Heisenberg-type laws are recovered")
    return Report(case.describe(), cfg.describe(), run_suites(case, cfg.suites, opt), notes)


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(message)s")
    try:
        cfg = resolve_config(args)
        for key in ignored_fields(cfg):
            warnings.warn(f"{key} is not used by {cfg.case}; ignored", stacklevel=1)
        report = run(cfg, args.self_test)
    except ConfigError as exc:
        print(f"plq: error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    text = report.to_json(args.timings) if cfg.report == "json" else report.to_text(args.timings)
    path = output_path(args, cfg)
    if path is None:
        sys.stdout.write(text)
    else:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text)
        log.info("report written to %s", path)
    return EXIT_OK if report.ok else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
