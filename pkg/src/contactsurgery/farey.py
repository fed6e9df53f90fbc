"""Slopes on the Farey tessellation and the Legendrian surgery planner.

A slope ``p/q`` is kept as a reduced pair with ``q >= 0``; ``1/0`` is the
point at infinity and compares above every finite slope.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering

from .errors import Indeterminate, NonCoprime, SlopeNotAbove

__all__ = ["Slope", "FareyPath", "mediant", "is_neighbor", "surgery_path", "slam_dunk", "INFINITY"]

_SLOPE = re.compile(r"\s*(-?\d+)\s*(?:/\s*(-?\d+)\s*)?\Z")


@total_ordering
@dataclass(frozen=True)
class Slope:
    p: int
    q: int = 1

    def __post_init__(self) -> None:
        if self.q < 0:
            raise ValueError("slope denominator must be nonnegative; normalize with Slope.reduced")
        if self.q == 0 and self.p != 1:
            raise ValueError("the only slope with q = 0 is 1/0")
        if math.gcd(self.p, self.q) != 1:
            raise NonCoprime(f"{self.p}/{self.q} is not reduced", p=self.p, q=self.q)

    @classmethod
    def reduced(cls, p: int, q: int) -> "Slope":
        if p == 0 and q == 0:
            raise Indeterminate("0/0 is not a slope")
        if q < 0 or (q == 0 and p < 0):
            p, q = -p, -q
        g = math.gcd(p, q)
        return cls(p // g, q // g)

    @classmethod
    def parse(cls, text: str) -> "Slope":
        """Parse ``"p/q"`` or ``"p"``; the fraction must already be reduced."""
        match = _SLOPE.match(text)
        if not match:
            raise ValueError(f"not a slope: {text!r}")
        p = int(match.group(1))
        q = int(match.group(2)) if match.group(2) is not None else 1
        if q < 0:
            p, q = -p, -q
        return cls(p, q)

    @property
    def is_infinite(self) -> bool:
        return self.q == 0

    def as_fraction(self) -> Fraction:
        if self.is_infinite:
            raise Indeterminate("1/0 has no finite value")
        return Fraction(self.p, self.q)

    def __lt__(self, other: "Slope") -> bool:
        if not isinstance(other, Slope):
            return NotImplemented
        if self.is_infinite:
            return False
        if other.is_infinite:
            return True
        return self.p * other.q < other.p * self.q

    def __str__(self) -> str:
        return f"{self.p}/{self.q}"


INFINITY = Slope(1, 0)


def mediant(s: Slope, t: Slope) -> Slope:
    return Slope.reduced(s.p + t.p, s.q + t.q)


def is_neighbor(s: Slope, t: Slope) -> bool:
    return abs(s.p * t.q - t.p * s.q) == 1


@dataclass(frozen=True)
class FareyPath:
    """Back slopes visited from ``n/1`` to the target, one Legendrian surgery per step."""

    back_slopes: tuple[Slope, ...]
    surgeries: tuple[Slope, ...]
    bracket_updates: int = 0

    def check(self) -> None:
        """Assert the structural invariants of a surgery plan."""
        assert len(self.back_slopes) == len(self.surgeries) + 1
        for k, surg in enumerate(self.surgeries):
            here, there = self.back_slopes[k], self.back_slopes[k + 1]
            assert is_neighbor(here, there)
            assert here < there
            assert is_neighbor(surg, here) and surg > here
            assert mediant(here, surg) == there


def surgery_path(n: int, target: Slope) -> FareyPath:
    """Stern-Brocot descent from ``n/1`` toward ``target``.

    The bracket ``(lo, hi)`` is always a pair of Farey neighbours; each time the
    mediant does not overshoot, a surgery on a leaf of slope ``hi`` moves the
    back slope from ``lo`` to the mediant.
    """
    start = Slope(n, 1)
    if target.is_infinite:
        raise SlopeNotAbove("target must be finite", target=str(target))
    if not target > start:
        raise SlopeNotAbove(f"target {target} must exceed {n}", target=str(target), n=n)
    lo, hi = start, INFINITY
    back, surgeries = [lo], []
    updates = 0
    while lo != target:
        c = mediant(lo, hi)
        updates += 1
        if c <= target:
            surgeries.append(hi)
            back.append(c)
            lo = c
        else:
            hi = c
    return FareyPath(tuple(back), tuple(surgeries), updates)


def slam_dunk(target: Slope, n: int) -> Slope:
    """Meridian coefficient ``q/(qn - p)`` turning n-surgery into ``target``-surgery."""
    if target.q < 1:
        raise Indeterminate("slam dunk needs a finite target slope")
    denom = target.q * n - target.p
    if denom == 0:
        raise Indeterminate(f"target {target} equals n={n}", target=str(target), n=n)
    return Slope.reduced(target.q, denom)
