"""Residuals of exact identity checks."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from plq.exppoly import ExpPoly


@dataclass(frozen=True)
class ExactResidual:
    """Nonzero differences left over by an exact identity check.

    Compares equal to ``0`` iff the identity holds exactly.
    """

    diffs: tuple[ExpPoly, ...] = ()

    @classmethod
    def of(cls, differences: Iterable) -> "ExactResidual":
        return cls(tuple(d for d in (ExpPoly.coerce(x) for x in differences) if not d.is_zero))

    @classmethod
    def compare(cls, lhs: Iterable, rhs: Iterable) -> "ExactResidual":
        lhs, rhs = list(lhs), list(rhs)
        if len(lhs) != len(rhs):
            raise ValueError(f"length mismatch: {len(lhs)} vs {len(rhs)}")
        return cls.of(ExpPoly.coerce(a) - b for a, b in zip(lhs, rhs))

    @property
    def is_zero(self) -> bool:
        return not self.diffs

    @property
    def size(self) -> int:
        """Total number of surviving terms."""
        return sum(len(d) for d in self.diffs)

    def __add__(self, other: "ExactResidual") -> "ExactResidual":
        return ExactResidual(self.diffs + other.diffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, ExactResidual):
            return self.diffs == other.diffs
        if other == 0:
            return self.is_zero
        return NotImplemented

    def __hash__(self):
        return hash(self.diffs)

    def __bool__(self) -> bool:
        return not self.is_zero

    def numeric(self, points: int = 200, box=(-2.0, 2.0), seed: int = 0) -> float:
        """Largest sampled absolute value of any surviving difference."""
        if self.is_zero:
            return 0.0
        rng = np.random.default_rng(seed)
        names = sorted(set().union(*(d.free_symbols() for d in self.diffs)))
        sample = {v: rng.uniform(box[0], box[1], size=points) for v in names}
        return float(max(np.max(np.abs(np.broadcast_to(d.evaluate(sample), (points,))))
                         for d in self.diffs))

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        head = str(self.diffs[0])
        if len(head) > 120:
            head = head[:117] + "..."
        more = f" (+{len(self.diffs) - 1} more)" if len(self.diffs) > 1 else ""
        return head + more
