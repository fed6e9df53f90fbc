"""Nonvanishing criteria for contact invariants of (rational) open books.

The ambient complex is the input complex itself.  Inputs describing the knot
in ``-Y`` must be prepared by the caller; no orientation reversal happens here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Any

from .cfk import BifilteredComplex, FiltSub, HorizClosed, Vertical, extract, genus, is_fibered_like, translate_label
from .errors import NonCoprime, NonPositiveSlope, NotFibered
from .f2homology import ConnectingMap, connecting_homomorphism
from .farey import Slope, surgery_path
from .surgery import gate

__all__ = [
    "Status",
    "Verdict",
    "DeltaStar",
    "delta_star",
    "contact_invariant_nonzero",
    "core_contact_nonzero",
    "slope_verdict",
]


class Status(str, Enum):
    NONVANISHING = "NONVANISHING"
    VANISHING = "VANISHING"
    UNKNOWN = "UNKNOWN"


@dataclass(frozen=True)
class Verdict:
    status: Status
    certificate: dict[str, Any] = field(default_factory=dict)


@dataclass(frozen=True)
class DeltaStar:
    map: ConnectingMap
    kernel_rank: int
    genus: int

    def witness(self) -> list[list[str]]:
        return [_chain(z) for z in self.map.kernel_cycles()]


def _chain(labels) -> list[str]:
    return sorted(translate_label(x, i) for x, i in labels)


def _require_fibered(c: BifilteredComplex) -> int:
    g = genus(c)
    if not is_fibered_like(c):
        raise NotFibered("top Alexander grading does not have rank 1", genus=g)
    return g


def delta_star(c: BifilteredComplex) -> DeltaStar:
    """Connecting map HFK(top) -> H(F(top - 1)) of the Alexander filtration on the vertical complex."""
    g = _require_fibered(c)
    total = extract(c, Vertical())
    sub = extract(c, FiltSub(g - 1)).labels
    cmap = connecting_homomorphism(total, sub)
    return DeltaStar(cmap, cmap.kernel_rank, g)


def contact_invariant_nonzero(c: BifilteredComplex) -> bool:
    """c(xi) != 0 for the open book of this binding, via ker delta_* != 0."""
    return delta_star(c).kernel_rank > 0


def core_contact_nonzero(c: BifilteredComplex, n: int) -> Verdict:
    """Decide c(xi_n) for n-surgery, n >= 2g.

    The criterion is the kernel of H(C{i=0, j=-g}) -> H(C{i<0, j=-g}); it does
    not read ``n`` beyond the validity gate.
    """
    g = _require_fibered(c)
    gate(c, n)
    total = extract(c, HorizClosed(-g))
    sub = [lab for lab in total.labels if lab[1] < 0]
    cmap = connecting_homomorphism(total, sub)
    kernel = cmap.kernel_rank
    cert = {
        "criterion": "kernel of H(C{i=0,j=-g}) -> H(C{i<0,j=-g})",
        "gate": f"n >= 2g check: g={g}, n={n}, ok",
        "genus": g,
        "kernel_rank": kernel,
        "map_rank": cmap.rank,
        "witness": [_chain(z) for z in cmap.kernel_cycles()],
    }
    return Verdict(Status.NONVANISHING if kernel else Status.VANISHING, cert)


def slope_verdict(c: BifilteredComplex, p: int, q: int) -> Verdict:
    """Verdict on c(xi_{p/q}); integral slopes are decided both ways, rational ones only positively."""
    if p <= 0 or q <= 0:
        raise NonPositiveSlope("slope must be positive", p=p, q=q)
    if math.gcd(p, q) != 1:
        raise NonCoprime(f"{p}/{q} is not reduced", p=p, q=q)
    g = _require_fibered(c)
    if p < 2 * g * q:
        return Verdict(
            Status.UNKNOWN,
            {"reason": "below proven range", "gate": f"p/q >= 2g check: g={g}, p/q={p}/{q}, fails"},
        )
    if q == 1:
        return core_contact_nonzero(c, p)
    n = p // q
    ds = delta_star(c)
    if ds.kernel_rank == 0:
        return Verdict(
            Status.UNKNOWN,
            {
                "reason": "rational slope, c(xi)=0: theorem one-directional",
                "gate": f"p/q >= 2g check: g={g}, p/q={p}/{q}, ok",
                "kernel_rank": 0,
            },
        )
    path = surgery_path(n, Slope(p, q))
    return Verdict(
        Status.NONVANISHING,
        {
            "criterion": "c(xi) != 0 and Legendrian surgery from n-surgery",
            "gate": f"p/q >= 2g check: g={g}, p/q={p}/{q}, n={n}, ok",
            "kernel_rank": ds.kernel_rank,
            "witness": ds.witness(),
            "n": n,
            "back_slopes": [str(s) for s in path.back_slopes],
            "surgeries": [str(s) for s in path.surgeries],
        },
    )
