"""Exact exponential-polynomial expressions.

An :class:`ExpPoly` is a finite sum

    sum_k  c_k * prod_v v**e_kv * exp(sum_v a_kv * v)

with rational coefficients ``c_k``, nonnegative integer exponents ``e_kv`` and
rational exponential rates ``a_kv``.  The class is closed under ring
operations, partial differentiation and affine substitution, and the normal
form (terms keyed by monomial and exponent, zero entries dropped) makes
structural equality a complete decision procedure: monomials times
exponentials of distinct linear forms are linearly independent functions.

Scalar constants ``e**c`` (rational ``c``) that arise from substitution are
kept exact as exponential atoms on the reserved symbol :data:`ONE`, which
always evaluates to 1.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Mapping, Union

import numpy as np

ONE = "ONE"

Rational = Union[int, Fraction]
Monomial = tuple  # tuple[tuple[str, int], ...], sorted by variable
ExpAtom = tuple  # tuple[tuple[str, Fraction], ...], sorted by variable
Key = tuple  # (Monomial, ExpAtom)


class NonAffineExpSubstitution(ValueError):
    """A variable inside an exponential was bound to a non-affine expression."""


class UnboundVariable(KeyError):
    pass


class NotInvertible(ValueError):
    """Division by an expression that is not a single exponential term."""


def as_fraction(value) -> Fraction:
    """Coerce ints, Fractions and ``"a/b"`` strings to :class:`Fraction`.

    Floats are rejected: they would silently break exactness.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


def _merge(a: tuple, b: tuple, zero) -> tuple:
    if not a:
        return b
    if not b:
        return a
    out = dict(a)
    for v, k in b:
        s = out.get(v, zero) + k
        if s == zero:
            out.pop(v, None)
        else:
            out[v] = s
    return tuple(sorted(out.items()))


class ExpPoly:
    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Key, Rational] | None = None):
        clean: dict[Key, Fraction] = {}
        if terms:
            for key, c in terms.items():
                c = as_fraction(c)
                if c:
                    clean[key] = clean.get(key, Fraction(0)) + c
                    if not clean[key]:
                        del clean[key]
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict[Key, Fraction]) -> "ExpPoly":
        # trusted constructor: caller guarantees normal form
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    # -- constructors -----------------------------------------------------

    @classmethod
    def const(cls, c: Rational) -> "ExpPoly":
        return cls({((), ()): c})

    @classmethod
    def var(cls, name: str) -> "ExpPoly":
        if name == ONE:
            raise ValueError(f"{ONE!r} is reserved")
        return cls._raw({(((name, 1),), ()): Fraction(1)})

    @classmethod
    def exp(cls, rates: Mapping[str, Rational], coeff: Rational = 1) -> "ExpPoly":
        """``coeff * exp(sum rate_v * v)``; use :data:`ONE` for a constant rate."""
        atom = tuple(sorted((v, as_fraction(a)) for v, a in rates.items() if as_fraction(a)))
        return cls({((), atom): coeff})

    @classmethod
    def coerce(cls, value) -> "ExpPoly":
        if isinstance(value, ExpPoly):
            return value
        return cls.const(as_fraction(value))

    # -- basic protocol ---------------------------------------------------

    @property
    def terms(self) -> dict[Key, Fraction]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def __eq__(self, other) -> bool:
        if isinstance(other, ExpPoly):
            return self._terms == other._terms
        try:
            other = ExpPoly.coerce(other)
        except TypeError:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other) -> "ExpPoly":
        other = ExpPoly.coerce(other)
        if not other._terms:
            return self
        out = dict(self._terms)
        for k, c in other._terms.items():
            s = out.get(k, 0) + c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return ExpPoly._raw(out)

    __radd__ = __add__

    def __neg__(self) -> "ExpPoly":
        return ExpPoly._raw({k: -c for k, c in self._terms.items()})

    def __sub__(self, other) -> "ExpPoly":
        return self + (-ExpPoly.coerce(other))

    def __rsub__(self, other) -> "ExpPoly":
        return ExpPoly.coerce(other) - self

    def __mul__(self, other) -> "ExpPoly":
        if not isinstance(other, ExpPoly):
            c = as_fraction(other)
            if not c:
                return ExpPoly._raw({})
            return ExpPoly._raw({k: v * c for k, v in self._terms.items()})
        out: dict[Key, Fraction] = {}
        for (m1, e1), c1 in self._terms.items():
            for (m2, e2), c2 in other._terms.items():
                key = (_merge(m1, m2, 0), _merge(e1, e2, Fraction(0)))
                s = out.get(key, 0) + c1 * c2
                if s:
                    out[key] = s
                else:
                    out.pop(key, None)
        return ExpPoly._raw(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "ExpPoly":
        if not isinstance(k, int) or k < 0:
            raise ValueError("only nonnegative integer powers stay in the class")
        result = ExpPoly.const(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __truediv__(self, other) -> "ExpPoly":
        if not isinstance(other, ExpPoly):
            return self * (1 / as_fraction(other))
        return self * other.reciprocal()

    def reciprocal(self) -> "ExpPoly":
        """Exact inverse of a single monomial-free term ``c * exp(...)``."""
        if len(self._terms) != 1:
            raise NotInvertible(f"cannot invert {self}")
        ((mono, atom), c), = self._terms.items()
        if mono:
            raise NotInvertible(f"cannot invert {self}")
        return ExpPoly._raw({((), tuple((v, -a) for v, a in atom)): 1 / c})

    def sqrt(self) -> "ExpPoly":
        """Square root of a positive single term with a square rational coefficient."""
        if len(self._terms) != 1:
            raise NotInvertible(f"no exact square root of {self}")
        ((mono, atom), c), = self._terms.items()
        if mono or c <= 0:
            raise NotInvertible(f"no exact square root of {self}")
        num, den = math.isqrt(c.numerator), math.isqrt(c.denominator)
        if num * num != c.numerator or den * den != c.denominator:
            raise NotInvertible(f"coefficient {c} is not a rational square")
        return ExpPoly._raw({((), tuple((v, a / 2) for v, a in atom)): Fraction(num, den)})

    # -- structure -----------------------------------------------------------

    def free_symbols(self) -> frozenset[str]:
        out = set()
        for mono, atom in self._terms:
            out.update(v for v, _ in mono)
            out.update(v for v, _ in atom)
        out.discard(ONE)
        return frozenset(out)

    def exp_symbols(self) -> frozenset[str]:
        out = {v for _, atom in self._terms for v, _ in atom}
        out.discard(ONE)
        return frozenset(out)

    def degree(self, v: str) -> int:
        return max((dict(m).get(v, 0) for m, _ in self._terms), default=0)

    def is_constant(self) -> bool:
        return all(not m and not a for m, a in self._terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not a rational constant")
        return self._terms.get(((), ()), Fraction(0))

    def is_affine(self) -> bool:
        """Rational constant plus a rational-linear combination of variables."""
        for mono, atom in self._terms:
            if atom:
                return False
            if mono and (len(mono) > 1 or mono[0][1] != 1):
                return False
        return True

    def is_positive_term(self) -> bool:
        """A single monomial-free term with positive coefficient (hence > 0 everywhere)."""
        if len(self._terms) != 1:
            return False
        ((mono, _), c), = self._terms.items()
        return not mono and c > 0

    # -- calculus and substitution ------------------------------------------

    def diff(self, v: str) -> "ExpPoly":
        if v == ONE:
            return ExpPoly._raw({})
        out: dict[Key, Fraction] = {}
        for (mono, atom), c in self._terms.items():
            md = dict(mono)
            k = md.get(v, 0)
            if k:
                m2 = dict(md)
                if k == 1:
                    del m2[v]
                else:
                    m2[v] = k - 1
                key = (tuple(sorted(m2.items())), atom)
                out[key] = out.get(key, 0) + c * k
            rate = dict(atom).get(v)
            if rate:
                key = (mono, atom)
                out[key] = out.get(key, 0) + c * rate
        return ExpPoly({k: c for k, c in out.items()})

    def subs(self, bindings: Mapping[str, object]) -> "ExpPoly":
        """Simultaneous substitution ``v -> bindings[v]``.

        Variables under an exponential must be bound to affine expressions;
        their constant parts become exact rates on :data:`ONE`.
        """
        if not bindings:
            return self
        binds = {v: ExpPoly.coerce(e) for v, e in bindings.items()}
        if ONE in binds:
            raise ValueError(f"{ONE!r} cannot be rebound")
        affine: dict[str, dict[str, Fraction]] = {}
        for v, e in binds.items():
            if e.is_affine():
                lin: dict[str, Fraction] = {}
                for (mono, _), c in e._terms.items():
                    lin[mono[0][0] if mono else ONE] = c
                affine[v] = lin
        powers: dict[tuple[str, int], ExpPoly] = {}

        def power(v: str, k: int) -> ExpPoly:
            if (v, k) not in powers:
                powers[(v, k)] = binds[v] ** k
            return powers[(v, k)]

        out = ExpPoly._raw({})
        for (mono, atom), c in self._terms.items():
            kept_mono = []
            factor = None
            for v, k in mono:
                if v in binds:
                    p = power(v, k)
                    factor = p if factor is None else factor * p
                else:
                    kept_mono.append((v, k))
            rates: dict[str, Fraction] = {}
            for v, a in atom:
                if v in binds:
                    if v not in affine:
                        raise NonAffineExpSubstitution(
                            f"exp variable {v!r} bound to non-affine {binds[v]}")
                    for w, b in affine[v].items():
                        rates[w] = rates.get(w, 0) + a * b
                else:
                    rates[v] = rates.get(v, 0) + a
            new_atom = tuple(sorted((w, r) for w, r in rates.items() if r))
            term = ExpPoly._raw({(tuple(kept_mono), new_atom): c})
            out = out + (term if factor is None else term * factor)
        return out

    # -- evaluation ----------------------------------------------------------

    def evaluate(self, point: Mapping[str, float]):
        """Floating-point value; ``point`` values may be floats or numpy arrays."""
        total = 0.0
        vectorised = any(isinstance(x, np.ndarray) for x in point.values())
        for (mono, atom), c in self._terms.items():
            val = float(c)
            try:
                for v, k in mono:
                    val = val * point[v] ** k
                expo = 0.0
                for v, a in atom:
                    expo = expo + float(a) * (1.0 if v == ONE else point[v])
            except KeyError as exc:
                raise UnboundVariable(exc.args[0]) from None
            if atom:
                val = val * (np.exp(expo) if vectorised else math.exp(expo))
            total = total + val
        return total

    def __call__(self, **point: float) -> float:
        return self.evaluate(point)

    # -- text ----------------------------------------------------------------

    def __str__(self) -> str:
        return to_text(self)

    def __repr__(self) -> str:
        return f"ExpPoly({to_text(self)!r})"


def _term_text(mono: Monomial, atom: ExpAtom) -> list[str]:
    parts = [v if k == 1 else f"{v}^{k}" for v, k in mono]
    if atom:
        inner = "+".join(f"{v}" if a == 1 else f"{a}*{v}" for v, a in atom).replace("+-", "-")
        parts.append(f"exp({inner})")
    return parts


def _sort_key(item):
    (mono, atom), _ = item
    return (sum(k for _, k in mono), [(v, k) for v, k in mono], [(v, str(a)) for v, a in atom])


def to_text(e: ExpPoly) -> str:
    """Canonical text form; terms sorted by total degree, then variables."""
    if e.is_zero:
        return "0"
    chunks = []
    for (mono, atom), c in sorted(e.items(), key=_sort_key):
        parts = _term_text(mono, atom)
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if not parts:
            body = str(mag)
        elif mag == 1:
            body = "*".join(parts)
        else:
            body = f"{mag}*" + "*".join(parts)
        chunks.append((sign, body))
    first_sign, first = chunks[0]
    text = ("-" if first_sign == "-" else "") + first
    for sign, body in chunks[1:]:
        text += f" {sign} {body}"
    return text


# -- conveniences used throughout the package ----------------------------------

def var(name: str) -> ExpPoly:
    return ExpPoly.var(name)


def const(c: Rational) -> ExpPoly:
    return ExpPoly.const(c)


def exp(rates: Mapping[str, Rational] | str, rate: Rational = 1) -> ExpPoly:
    """``exp(rate * v)`` for a single variable name, or ``exp(sum)`` from a mapping."""
    if isinstance(rates, str):
        return ExpPoly.exp({rates: rate})
    return ExpPoly.exp(rates)


def vars_(*names: str) -> list[ExpPoly]:
    return [ExpPoly.var(n) for n in names]


def dot(a: Iterable, b: Iterable) -> ExpPoly:
    total = ExpPoly.const(0)
    for u, v in zip(a, b, strict=True):
        total = total + ExpPoly.coerce(u) * v
    return total


def eta(lam: Rational, v: str | ExpPoly) -> ExpPoly:
    """Deformation profile ``(exp(lam*v) - 1)/lam``, equal to ``v`` when ``lam == 0``.

    The two-rate profile ``(e^{(l+n)r}-1)/(l+n)`` is ``eta(l + n, r)``; the
    one-rate one ``(e^{2 l r}-1)/(2 l)`` is ``eta(2*l, r)``.
    """
    lam = as_fraction(lam)
    x = ExpPoly.var(v) if isinstance(v, str) else v
    if lam == 0:
        return x
    return (exp_of(x, lam) - 1) / lam


def _exp_affine(x: ExpPoly, rate: Fraction) -> ExpPoly:
    # exp(rate * x) for affine x, via substitution into a fresh symbol
    return ExpPoly.exp({"__t": rate}).subs({"__t": x})


def exp_of(x: ExpPoly, rate: Rational = 1) -> ExpPoly:
    """``exp(rate * x)`` for an affine expression ``x``."""
    return _exp_affine(ExpPoly.coerce(x), as_fraction(rate))


def equal(a, b) -> bool:
    return ExpPoly.coerce(a) == ExpPoly.coerce(b)


def approx_equal(a, b, points: int = 100, box: tuple[float, float] = (-2.0, 2.0),
                 tol: float | None = None, rng: np.random.Generator | None = None,
                 variables: Iterable[str] | None = None):
    """Max absolute difference of ``a`` and ``b`` over ``points`` uniform samples.

    Returns the residual; if ``tol`` is given, returns ``residual < tol`` instead.
    """
    a, b = ExpPoly.coerce(a), ExpPoly.coerce(b)
    names = sorted(set(variables) if variables is not None
                   else a.free_symbols() | b.free_symbols())
    rng = rng if rng is not None else np.random.default_rng(0)
    lo, hi = box
    sample = {v: rng.uniform(lo, hi, size=points) for v in names}
    diff = np.abs(np.asarray(a.evaluate(sample) - b.evaluate(sample), dtype=float))
    residual = float(np.max(diff, initial=0.0))
    return residual if tol is None else residual < tol


def jacobian(components: Iterable[ExpPoly], variables: Iterable[str]) -> list[list[ExpPoly]]:
    variables = list(variables)
    return [[c.diff(v) for v in variables] for c in components]


# -- triangular point maps -----------------------------------------------------

class NotTriangular(ValueError):
    pass


def triangular_structure(components, variables):
    """Split ``T_i = s_i * v_i + h_i`` and order the coordinates for back-substitution.

    Returns ``(order, scales, shifts)`` where ``order`` lists coordinate indices
    such that each ``s_i, h_i`` only involves coordinates earlier in ``order``
    (plus free parameters).  Raises :class:`NotTriangular` otherwise.
    """
    variables = list(variables)
    comps = [ExpPoly.coerce(c) for c in components]
    if len(comps) != len(variables):
        raise NotTriangular("component count does not match variable count")
    vset = set(variables)
    scales, shifts, deps = [], [], []
    for v, c in zip(variables, comps):
        if v in c.exp_symbols() or c.degree(v) > 1:
            raise NotTriangular(f"component for {v} is not affine in {v}: {c}")
        s = c.diff(v)
        h = c.subs({v: 0})
        if s.is_zero:
            raise NotTriangular(f"component for {v} does not depend on {v}")
        scales.append(s)
        shifts.append(h)
        deps.append((s.free_symbols() | h.free_symbols()) & vset)
    index = {v: i for i, v in enumerate(variables)}
    order: list[int] = []
    done: set[str] = set()
    remaining = list(range(len(variables)))
    while remaining:
        ready = [i for i in remaining if deps[i] <= done]
        if not ready:
            raise NotTriangular("cyclic coordinate dependencies")
        for i in ready:
            order.append(i)
            done.add(variables[i])
        remaining = [i for i in remaining if i not in ready]
    assert len(order) == len(index)
    return order, scales, shifts


def triangular_inverse(components, variables) -> list[ExpPoly]:
    """Closed-form inverse of a triangular point map, in the same variables."""
    variables = list(variables)
    order, scales, shifts = triangular_structure(components, variables)
    solved: dict[str, ExpPoly] = {}
    for i in order:
        s = scales[i].subs(solved)
        h = shifts[i].subs(solved)
        try:
            solved[variables[i]] = (ExpPoly.var(variables[i]) - h) * s.reciprocal()
        except NotInvertible as exc:
            raise NotTriangular(f"scale {s} of {variables[i]} is not invertible") from exc
    return [solved[v] for v in variables]


def triangular_det(components, variables) -> ExpPoly:
    """Jacobian determinant of a triangular map: the product of its diagonal scales."""
    _, scales, _ = triangular_structure(components, variables)
    det = ExpPoly.const(1)
    for s in scales:
        det = det * s
    return det
