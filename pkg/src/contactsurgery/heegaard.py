"""Alexander-grading arithmetic from relative periodic domains, winding-region
distinctness, and cable order arithmetic.

A domain model stores region multiplicities and, for each generator, the four
regions meeting at each of its intersection points.  Whether the model really
is a relative periodic domain in the class of the fiber is not checkable here.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from .errors import ParseError, UnknownGenerator, ValidationError

__all__ = [
    "PeriodicDomainModel",
    "WindingParams",
    "WindingCheck",
    "parse_domain",
    "format_domain",
    "point_measure",
    "alexander_difference",
    "winding_distinct",
    "cable_arithmetic",
    "scaled_measure",
]

_IDENT = re.compile(r"[A-Za-z0-9_]+\Z")

Corner = tuple[str, str, str, str]


@dataclass(frozen=True)
class PeriodicDomainModel:
    regions: tuple[tuple[str, int], ...]
    generators: tuple[tuple[str, tuple[Corner, ...]], ...]

    def __post_init__(self) -> None:
        regions = tuple((r, int(m)) for r, m in self.regions)
        gens = tuple((lab, tuple(tuple(c) for c in corners)) for lab, corners in self.generators)
        object.__setattr__(self, "regions", regions)
        object.__setattr__(self, "generators", gens)
        ids = [r for r, _ in regions]
        if len(set(ids)) != len(ids):
            raise ValidationError("duplicate region id")
        labels = [lab for lab, _ in gens]
        if len(set(labels)) != len(labels):
            raise ValidationError("duplicate generator label")
        known = set(ids)
        counts = set()
        for lab, corners in gens:
            counts.add(len(corners))
            for corner in corners:
                if len(corner) != 4:
                    raise ValidationError("each coordinate needs exactly four corner regions", generator=lab)
                for r in corner:
                    if r not in known:
                        raise ValidationError("corner references an unknown region", generator=lab, region=r)
        if len(counts) > 1:
            raise ValidationError("generators have differing numbers of coordinates", counts=sorted(counts))

    def multiplicity(self, region: str) -> int:
        return dict(self.regions)[region]

    def corners(self, label: str) -> tuple[Corner, ...]:
        for lab, corners in self.generators:
            if lab == label:
                return corners
        raise UnknownGenerator(f"no generator '{label}'", label=label)


class WindingParams(NamedTuple):
    a: int
    q: int
    p: int | None = None
    b: int | None = None

    def check(self) -> None:
        if self.a < 1 or self.q < 1:
            raise ValueError("a and q must be positive")
        if self.p is not None and self.b is not None and self.p * self.a - self.q * self.b != -1:
            raise ValueError("winding parameters must satisfy pa - qb = -1")


def parse_domain(text: str) -> PeriodicDomainModel:
    regions: list[tuple[str, int]] = []
    gens: list[tuple[str, tuple[Corner, ...]]] = []
    header = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if not header:
            if line.split() != ["domain", "v1"]:
                raise ParseError(lineno, "expected header 'domain v1'")
            header = True
            continue
        words = line.split()
        if words[0] == "region" and len(words) == 3:
            ident = _ident(words[1], lineno)
            if not words[2].startswith("mult="):
                raise ParseError(lineno, "expected mult=<int>")
            try:
                mult = int(words[2][5:])
            except ValueError:
                raise ParseError(lineno, "expected mult=<int>") from None
            regions.append((ident, mult))
        elif words[0] == "generator" and len(words) == 3:
            ident = _ident(words[1], lineno)
            if not words[2].startswith("corners="):
                raise ParseError(lineno, "expected corners=<r1,r2,r3,r4>[;...]")
            corners = []
            for chunk in words[2][8:].split(";"):
                parts = chunk.split(",")
                if len(parts) != 4:
                    raise ParseError(lineno, "each coordinate needs four comma-separated regions")
                corners.append(tuple(_ident(p, lineno) for p in parts))
            gens.append((ident, tuple(corners)))
        else:
            raise ParseError(lineno, f"unrecognized line '{line}'")
    if not header:
        raise ParseError(1, "empty document; expected header 'domain v1'")
    return PeriodicDomainModel(tuple(regions), tuple(gens))


def _ident(word: str, lineno: int) -> str:
    if not _IDENT.match(word):
        raise ParseError(lineno, f"invalid identifier '{word}'")
    return word


def format_domain(d: PeriodicDomainModel) -> str:
    lines = ["domain v1"]
    lines += [f"region {r} mult={m}" for r, m in d.regions]
    for lab, corners in d.generators:
        lines.append(f"generator {lab} corners=" + ";".join(",".join(c) for c in corners))
    return "\n".join(lines) + "\n"


def point_measure(d: PeriodicDomainModel, x: str) -> Fraction:
    """Sum over coordinates of the mean multiplicity of the four corner regions."""
    mult = dict(d.regions)
    return sum((Fraction(sum(mult[r] for r in corner), 4) for corner in d.corners(x)), Fraction(0))


def alexander_difference(d: PeriodicDomainModel, x: str, y: str) -> Fraction:
    """A(x) - A(y) as a difference of point measures; may be non-integral for arbitrary models."""
    return point_measure(d, x) - point_measure(d, y)


class WindingCheck(NamedTuple):
    distinct: bool
    witness: tuple[int, int] | None = None

    def __bool__(self) -> bool:
        return self.distinct


def winding_distinct(a: int, q: int) -> WindingCheck:
    """Search the open box 0 < r_l < a, 0 < r_m < q for a solution of r_l*q = r_m*a."""
    if a < 1 or q < 1:
        raise ValueError("a and q must be positive")
    for r_l in range(1, a):
        r_m, rem = divmod(r_l * q, a)
        if rem == 0 and 0 < r_m < q:
            return WindingCheck(False, (r_l, r_m))
    return WindingCheck(True)


def cable_arithmetic(p: int, big_p: int) -> tuple[int, int]:
    """Order of the cable and the number of parallel copies: ``(p/gcd, P/gcd)``."""
    if p < 1 or big_p < 1:
        raise ValueError("p and P must be positive")
    g = math.gcd(big_p, p)
    return p // g, big_p // g


def scaled_measure(d: PeriodicDomainModel, r: int) -> PeriodicDomainModel:
    if r < 1:
        raise ValueError("R must be positive")
    return PeriodicDomainModel(tuple((reg, m * r) for reg, m in d.regions), d.generators)
