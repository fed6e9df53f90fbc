"""Exact linear algebra over the two-element field.

Vectors are Python ints used as bitsets, so every operation is exact and
column elimination is a handful of XORs.  Complexes carry an integer grading
per generator which the differential must not increase (or must not decrease);
the grading is read as a filtration, so per-grading homology ranks are the
ranks of the associated graded of the induced filtration on homology.  For an
honestly graded complex (differential of degree -1) that is the usual
``dim ker - dim im`` per degree.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Hashable, Iterable, Mapping, NamedTuple, Sequence

from .errors import InvalidComplex, NotASubcomplex

__all__ = [
    "F2Matrix",
    "Cell",
    "GradedF2Complex",
    "Homology",
    "ConnectingMap",
    "DSquaredCheck",
    "rank",
    "kernel_basis",
    "check_d_squared",
    "homology",
    "homology_ranks",
    "restrict",
    "connecting_homomorphism",
    "induced_inclusion",
]


def _bits(v: int) -> Iterable[int]:
    while v:
        low = v & -v
        yield low.bit_length() - 1
        v ^= low


@dataclass(frozen=True)
class F2Matrix:
    """A ``rows x cols`` matrix over GF(2) stored as the set of its nonzero positions."""

    rows: int
    cols: int
    entries: frozenset[tuple[int, int]] = frozenset()

    def __post_init__(self) -> None:
        if self.rows < 0 or self.cols < 0:
            raise ValueError("matrix dimensions must be nonnegative")
        entries = frozenset(self.entries)
        object.__setattr__(self, "entries", entries)
        for r, c in entries:
            if not (0 <= r < self.rows and 0 <= c < self.cols):
                raise ValueError(f"entry {(r, c)} out of bounds for {self.rows}x{self.cols}")

    @classmethod
    def from_entries(cls, rows: int, cols: int, entries: Iterable[tuple[int, int]]) -> "F2Matrix":
        listed = list(entries)
        if len(set(listed)) != len(listed):
            raise ValueError("duplicate matrix positions; coefficients are 0 or 1")
        return cls(rows, cols, frozenset(listed))

    @classmethod
    def from_columns(cls, rows: int, columns: Sequence[int]) -> "F2Matrix":
        return cls(rows, len(columns), frozenset((r, c) for c, v in enumerate(columns) for r in _bits(v)))

    @classmethod
    def zero(cls, rows: int, cols: int) -> "F2Matrix":
        return cls(rows, cols)

    @classmethod
    def identity(cls, size: int) -> "F2Matrix":
        return cls(size, size, frozenset((k, k) for k in range(size)))

    def columns(self) -> list[int]:
        cols = [0] * self.cols
        for r, c in self.entries:
            cols[c] |= 1 << r
        return cols

    def to_dense(self) -> list[list[int]]:
        dense = [[0] * self.cols for _ in range(self.rows)]
        for r, c in self.entries:
            dense[r][c] = 1
        return dense

    def __matmul__(self, other: "F2Matrix") -> "F2Matrix":
        if self.cols != other.rows:
            raise ValueError("dimension mismatch")
        mine = self.columns()
        out = []
        for v in other.columns():
            acc = 0
            for r in _bits(v):
                acc ^= mine[r]
            out.append(acc)
        return F2Matrix.from_columns(self.rows, out)

    def is_zero(self) -> bool:
        return not self.entries


def _reduce_columns(columns: Sequence[int]) -> tuple[dict[int, tuple[int, int]], list[int]]:
    """Column elimination keyed on each column's highest set bit.

    Returns the pivot table ``lead -> (reduced column, combination)`` and the
    combinations of input columns that reduce to zero (a kernel basis whose
    highest bits are distinct).
    """
    pivots: dict[int, tuple[int, int]] = {}
    kernel: list[int] = []
    for p, v in enumerate(columns):
        combo = 1 << p
        while v:
            lead = v.bit_length() - 1
            hit = pivots.get(lead)
            if hit is None:
                pivots[lead] = (v, combo)
                break
            v ^= hit[0]
            combo ^= hit[1]
        if not v:
            kernel.append(combo)
    return pivots, kernel


def rank(m: F2Matrix) -> int:
    pivots, _ = _reduce_columns(m.columns())
    return len(pivots)


def kernel_basis(m: F2Matrix) -> list[int]:
    """Basis of the null space, each vector a bitset over the columns of ``m``."""
    return _reduce_columns(m.columns())[1]


class Cell(NamedTuple):
    label: Hashable
    grading: int
    maslov: int | None = None


@dataclass(frozen=True)
class GradedF2Complex:
    """Finite chain complex over GF(2); column ``j`` of ``boundary`` is the boundary of cell ``j``."""

    cells: tuple[Cell, ...]
    boundary: F2Matrix
    _index: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self) -> None:
        cells = tuple(Cell(*c) for c in self.cells)
        object.__setattr__(self, "cells", cells)
        n = len(cells)
        if self.boundary.rows != n or self.boundary.cols != n:
            raise InvalidComplex(f"boundary must be {n}x{n}", shape=[self.boundary.rows, self.boundary.cols])
        index = {c.label: k for k, c in enumerate(cells)}
        if len(index) != n:
            raise InvalidComplex("duplicate generator labels")
        object.__setattr__(self, "_index", index)
        if n and all(c.maslov is not None for c in cells):
            for r, j in sorted(self.boundary.entries, key=lambda e: (e[1], e[0])):
                if cells[r].maslov != cells[j].maslov - 1:
                    raise InvalidComplex(
                        "differential must drop maslov grading by 1",
                        src=str(cells[j].label),
                        dst=str(cells[r].label),
                    )

    @classmethod
    def from_differential(
        cls, cells: Iterable[Cell | tuple], differential: Mapping[Hashable, Iterable[Hashable]]
    ) -> "GradedF2Complex":
        """Build from ``{label: [labels in its boundary]}``; repeated targets cancel mod 2."""
        cells = tuple(Cell(*c) for c in cells)
        index = {c.label: k for k, c in enumerate(cells)}
        cols = [0] * len(cells)
        for src, targets in differential.items():
            for dst in targets:
                cols[index[src]] ^= 1 << index[dst]
        return cls(cells, F2Matrix.from_columns(len(cells), cols))

    @property
    def labels(self) -> tuple[Hashable, ...]:
        return tuple(c.label for c in self.cells)

    def __len__(self) -> int:
        return len(self.cells)

    def index(self, label: Hashable) -> int:
        return self._index[label]

    def has_label(self, label: Hashable) -> bool:
        return label in self._index

    def boundary_of(self, labels: Iterable[Hashable]) -> frozenset:
        """Boundary of a chain given as a set of labels (mod 2)."""
        cols = self._columns()
        acc = 0
        for lab in labels:
            acc ^= cols[self._index[lab]]
        return frozenset(self.cells[r].label for r in _bits(acc))

    def _columns(self) -> list[int]:
        cached = self.__dict__.get("_cols")
        if cached is None:
            cached = self.boundary.columns()
            object.__setattr__(self, "_cols", cached)
        return cached


class DSquaredCheck(NamedTuple):
    ok: bool
    violation: tuple[Hashable, Hashable] | None = None


def check_d_squared(c: GradedF2Complex) -> DSquaredCheck:
    """``ok`` iff the boundary squares to zero; otherwise the first pair (x, z) with a nonzero z-coefficient in d(d(x))."""
    cols = c._columns()
    for j, v in enumerate(cols):
        acc = 0
        for r in _bits(v):
            acc ^= cols[r]
        if acc:
            low = (acc & -acc).bit_length() - 1
            return DSquaredCheck(False, (c.cells[j].label, c.cells[low].label))
    return DSquaredCheck(True)


def _filtration_order(c: GradedF2Complex) -> list[int]:
    grades = [cell.grading for cell in c.cells]
    down = up = True
    for r, j in c.boundary.entries:
        if grades[r] > grades[j]:
            down = False
        elif grades[r] < grades[j]:
            up = False
    if not (down or up):
        raise InvalidComplex("grading is not a filtration: the differential both raises and lowers it")
    sign = 1 if down else -1
    return sorted(range(len(grades)), key=lambda k: (sign * grades[k], k))


@dataclass(frozen=True)
class Homology:
    """Homology of a complex with explicit cycle representatives.

    ``basis[k]`` is a cycle (set of labels) and ``gradings[k]`` the filtration
    level it is born at; the pair is an adapted basis, so counting gradings
    gives the associated-graded ranks.
    """

    complex: GradedF2Complex
    basis: tuple[frozenset, ...]
    gradings: tuple[int, ...]
    _order: tuple[int, ...] = field(repr=False, compare=False)
    _table: dict = field(repr=False, compare=False)

    @property
    def rank(self) -> int:
        return len(self.basis)

    def ranks(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for g in self.gradings:
            out[g] = out.get(g, 0) + 1
        return dict(sorted(out.items()))

    def _to_vec(self, labels: Iterable[Hashable]) -> int:
        pos = {k: p for p, k in enumerate(self._order)}
        v = 0
        for lab in labels:
            v ^= 1 << pos[self.complex.index(lab)]
        return v

    def coordinates(self, cycle: Iterable[Hashable]) -> int:
        """Coordinates of the class of ``cycle`` in ``basis`` as a bitset."""
        cycle = list(cycle)
        if self.complex.boundary_of(cycle):
            raise ValueError("chain is not a cycle")
        v = self._to_vec(cycle)
        coord = 0
        while v:
            vec, c = self._table[v.bit_length() - 1]
            v ^= vec
            coord ^= c
        return coord

    def is_boundary(self, cycle: Iterable[Hashable]) -> bool:
        return self.coordinates(cycle) == 0


def homology(c: GradedF2Complex) -> Homology:
    chk = check_d_squared(c)
    if not chk.ok:
        raise InvalidComplex(
            "boundary does not square to zero",
            violation=[str(chk.violation[0]), str(chk.violation[1])],
        )
    order = _filtration_order(c)
    pos = {k: p for p, k in enumerate(order)}
    raw = c._columns()
    cols = [0] * len(order)
    for k, v in enumerate(raw):
        cols[pos[k]] = sum(1 << pos[r] for r in _bits(v))
    pivots, cycles = _reduce_columns(cols)
    table: dict[int, tuple[int, int]] = {lead: (vec, 0) for lead, (vec, _) in pivots.items()}
    reps: list[int] = []
    for z in cycles:
        while z:
            lead = z.bit_length() - 1
            hit = table.get(lead)
            if hit is None:
                table[lead] = (z, 1 << len(reps))
                reps.append(z)
                break
            z ^= hit[0]
    basis = tuple(frozenset(c.cells[order[p]].label for p in _bits(z)) for z in reps)
    gradings = tuple(c.cells[order[z.bit_length() - 1]].grading for z in reps)
    return Homology(c, basis, gradings, tuple(order), table)


def homology_ranks(c: GradedF2Complex) -> dict[int, int]:
    """Rank of homology per grading, zero ranks omitted."""
    return homology(c).ranks()


def restrict(c: GradedF2Complex, labels: Iterable[Hashable]) -> GradedF2Complex:
    """Cells in ``labels`` (kept in ``c``'s order) with the differential entries among them."""
    keep = set(labels)
    idx = [k for k, cell in enumerate(c.cells) if cell.label in keep]
    new = {k: p for p, k in enumerate(idx)}
    entries = frozenset((new[r], new[j]) for r, j in c.boundary.entries if r in new and j in new)
    return GradedF2Complex(tuple(c.cells[k] for k in idx), F2Matrix(len(idx), len(idx), entries))


def _check_subcomplex(total: GradedF2Complex, sub: Iterable[Hashable]) -> set:
    subset = set(sub)
    unknown = [lab for lab in subset if not total.has_label(lab)]
    if unknown:
        raise NotASubcomplex("unknown generator labels", labels=sorted(map(str, unknown)))
    inside = {total.index(lab) for lab in subset}
    for r, j in sorted(total.boundary.entries, key=lambda e: (e[1], e[0])):
        if j in inside and r not in inside:
            raise NotASubcomplex(
                "boundary leaves the proposed subcomplex",
                src=str(total.cells[j].label),
                dst=str(total.cells[r].label),
            )
    return subset


@dataclass(frozen=True)
class ConnectingMap:
    """A linear map between homology groups, written in the bases of ``domain`` and ``codomain``."""

    matrix: F2Matrix
    domain: Homology
    codomain: Homology

    @property
    def rank(self) -> int:
        return rank(self.matrix)

    @property
    def kernel_rank(self) -> int:
        return self.domain.rank - self.rank

    def kernel_cycles(self) -> list[frozenset]:
        """Cycle representatives (in the domain complex's labels) spanning the kernel."""
        out = []
        for combo in kernel_basis(self.matrix):
            chain: frozenset = frozenset()
            for k in _bits(combo):
                chain = chain.symmetric_difference(self.domain.basis[k])
            out.append(chain)
        return out


def connecting_homomorphism(total: GradedF2Complex, sub: Iterable[Hashable]) -> ConnectingMap:
    """Connecting map H(total/sub) -> H(sub) of the short exact sequence of a subcomplex.

    A quotient cycle is lifted verbatim to ``total``; its boundary lies in
    ``sub`` and its class there is the image.
    """
    subset = _check_subcomplex(total, sub)
    s = restrict(total, subset)
    q = restrict(total, [lab for lab in total.labels if lab not in subset])
    hs, hq = homology(s), homology(q)
    columns = []
    for z in hq.basis:
        columns.append(hs.coordinates(total.boundary_of(z)))
    return ConnectingMap(F2Matrix.from_columns(hs.rank, columns), hq, hs)


def induced_inclusion(total: GradedF2Complex, sub: Iterable[Hashable]) -> ConnectingMap:
    """Map H(sub) -> H(total) induced by inclusion of a subcomplex."""
    subset = _check_subcomplex(total, sub)
    s = restrict(total, subset)
    hs, ht = homology(s), homology(total)
    columns = [ht.coordinates(z) for z in hs.basis]
    return ConnectingMap(F2Matrix.from_columns(ht.rank, columns), hs, ht)
