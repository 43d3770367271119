"""Run configuration: TOML files and command-line flags, with exact rationals throughout.

Schema (all keys optional except ``case``)::

    case = "case3"          # case1 | case2 | case3 | mixed | rieffel | nonuni
    n = 2
    m = 1                   # rieffel / nonuni only
    lambda = "1/2"          # rationals are strings "a/b" or integers
    nu = "1/3"              # mixed only
    J = [[0, 1], [-1, 0]]   # case3 only
    pi_rates = [["1/2"], ["1/2"]]    # n rows of m rates, rieffel / nonuni
    rho_rates = [["-1/2"], ["-1/2"]]
    beta = [[[1, 0], [0, 1]]]        # m bilinear forms, n x n

    [run]
    seed = 0
    samples = 1000
    tol = 1e-9
    suites = ["all"]
    report = "text"         # text | json
    force_numeric = false
"""

from __future__ import annotations

import json
import re
import warnings
from dataclasses import dataclass, field, fields, replace
from fractions import Fraction
from pathlib import Path

try:
    import tomllib
except ImportError:  # Python 3.10
    import tomli as tomllib

from plq.cases import KINDS, CaseSpec, InvalidParameter
from plq.exppoly import as_fraction
from plq.suites import SUITES


class ConfigError(ValueError):
    pass


class ParseError(ConfigError):
    def __init__(self, msg: str, line: int | None = None, column: int | None = None, path: str = ""):
        where = f"{path}:" if path else ""
        if line is not None:
            where += f"{line}:{column or 1}: "
        super().__init__(where + msg)
        self.line, self.column = line, column


# keys that only some cases read; anything else set for a case is ignored with a warning
CASE_FIELDS = {
    "case1": {"lam"}, "case2": {"lam"}, "mixed": {"lam", "nu"}, "case3": {"J"},
    "rieffel": {"m", "pi_rates", "rho_rates", "beta"}, "nonuni": {"m", "pi_rates", "rho_rates", "beta"},
}
OPTIONAL = {"lam", "nu", "J", "m", "pi_rates", "rho_rates", "beta"}


@dataclass(frozen=True)
class RunConfig:
    case: str = "case2"
    n: int = 1
    m: int = 1
    lam: Fraction = Fraction(1)
    nu: Fraction = Fraction(0)
    J: tuple = ()
    pi_rates: tuple = ()
    rho_rates: tuple = ()
    beta: tuple = ()
    seed: int = 0
    samples: int = 1000
    tol: float = 1e-9
    suites: tuple[str, ...] = SUITES
    report: str = "text"
    force_numeric: bool = False
    explicit: frozenset = field(default=frozenset(), compare=False)

    def case_spec(self) -> CaseSpec:
        try:
            return CaseSpec(self.case, n=self.n, m=self.m if self.case in ("rieffel", "nonuni") else 1,
                            lam=self.lam, nu=self.nu, J=self.J, pi_rates=self.pi_rates,
                            rho_rates=self.rho_rates, beta=self.beta)
        except InvalidParameter as exc:
            raise ConfigError(f"{self.case}: {exc}") from exc

    def describe(self) -> dict:
        return {"seed": self.seed, "samples": self.samples, "tol": self.tol, "suites": list(self.suites),
                "force_numeric": self.force_numeric}


def parse_rational(value, key: str = "value") -> Fraction:
    if isinstance(value, float):
        raise ConfigError(f"{key}: write rationals as \"a/b\" strings, not floats ({value!r})")
    try:
        return as_fraction(value)
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        raise ConfigError(f"{key}: not an exact rational: {value!r}") from exc


def parse_matrix(value, key: str):
    if isinstance(value, str):
        text = re.sub(r"(-?\d+\s*/\s*-?\d+)", r'"\1"', value)
        try:
            value = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"{key}: cannot read matrix {value!r}") from exc
    if not isinstance(value, list):
        raise ConfigError(f"{key}: expected a list")

    def conv(x):
        return conv_list(x) if isinstance(x, list) else parse_rational(x, key)

    def conv_list(xs):
        return tuple(conv(x) for x in xs)

    return conv_list(value)


def parse_suites(value) -> tuple[str, ...]:
    items = value.split(",") if isinstance(value, str) else list(value)
    items = [s.strip() for s in items if s.strip()]
    if "all" in items:
        return SUITES
    unknown = [s for s in items if s not in SUITES]
    if unknown:
        raise ConfigError(f"suites: unknown {unknown}; expected a subset of {list(SUITES)} or 'all'")
    return tuple(s for s in SUITES if s in items)


_CONVERT = {
    "case": lambda v: v, "n": int, "m": int, "seed": int, "samples": int, "tol": float,
    "lam": lambda v: parse_rational(v, "lambda"), "nu": lambda v: parse_rational(v, "nu"),
    "J": lambda v: parse_matrix(v, "J"), "pi_rates": lambda v: parse_matrix(v, "pi_rates"),
    "rho_rates": lambda v: parse_matrix(v, "rho_rates"), "beta": lambda v: parse_matrix(v, "beta"),
    "suites": parse_suites, "report": str, "force_numeric": bool,
}
_ALIASES = {"lambda": "lam"}


def build_config(values: dict, base: RunConfig | None = None) -> RunConfig:
    """Validate and convert raw values onto ``base`` (defaults when omitted)."""
    base = base or RunConfig()
    converted = {}
    for raw_key, raw in values.items():
        key = _ALIASES.get(raw_key, raw_key)
        if key not in _CONVERT:
            raise ConfigError(f"unknown field {raw_key!r}")
        try:
            converted[key] = _CONVERT[key](raw)
        except (TypeError, ValueError) as exc:
            if isinstance(exc, ConfigError):
                raise
            raise ConfigError(f"{raw_key}: invalid value {raw!r}") from exc
    cfg = replace(base, **converted, explicit=base.explicit | frozenset(converted))
    if cfg.case not in KINDS:
        raise ConfigError(f"case: unknown {cfg.case!r}; expected one of {list(KINDS)}")
    if cfg.n < 1 or cfg.m < 1:
        raise ConfigError("n and m must be positive")
    if cfg.samples < 1:
        raise ConfigError("samples must be positive")
    if cfg.report not in ("text", "json"):
        raise ConfigError("report must be 'text' or 'json'")
    return cfg


def ignored_fields(cfg: RunConfig) -> list[str]:
    used = CASE_FIELDS[cfg.case]
    return sorted(k for k in cfg.explicit & OPTIONAL if k not in used)


def warn_ignored(cfg: RunConfig) -> None:
    for key in ignored_fields(cfg):
        warnings.warn(f"{key} is not used by {cfg.case}; ignored", stacklevel=2)


def _locate(text: str, key: str) -> tuple[int | None, int | None]:
    pattern = re.compile(rf"^[ \t]*{re.escape(key)}[ \t]*=[ \t]*", re.M)
    m = pattern.search(text)
    if not m:
        return None, None
    line = text.count("\n", 0, m.start()) + 1
    return line, m.end() - (text.rfind("\n", 0, m.start()) + 1) + 1


def load_config(path, base: RunConfig | None = None) -> RunConfig:
    """Read a TOML run file.  Top-level keys describe the case, ``[run]`` the harness."""
    path = Path(path)
    text = path.read_text()
    try:
        data = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        raise ParseError(getattr(exc, "msg", str(exc)), getattr(exc, "lineno", None),
                         getattr(exc, "colno", None), str(path)) from exc
    run = data.pop("run", {})
    if not isinstance(run, dict):
        raise ParseError("[run] must be a table", *_locate(text, "run"), str(path))
    values = {**data, **run}
    try:
        cfg = build_config(values, base)
    except ConfigError as exc:
        key = str(exc).split(":", 1)[0].strip()
        line, col = _locate(text, key)
        if line is None and key == "lam":
            line, col = _locate(text, "lambda")
        raise ParseError(str(exc), line, col, str(path)) from exc
    return cfg


def field_names() -> list[str]:
    return [f.name for f in fields(RunConfig) if f.name != "explicit"]
