"""Bifiltered knot Floer complexes.

A complex is stored on the ``i = 0`` slice: each generator ``x`` sits at
``(0, A(x))`` and an arrow ``x -> y`` with horizontal drop ``h`` stands for the
term ``U^h y`` in the boundary of ``x``.  The translate ``(x, i)`` sits at
``(i, A(x) + i)``; arrows act on translates by ``(x, i) -> (y, i - h)``.

Every region used downstream meets each generator's orbit in at most one
translate, so extraction never needs a truncation window.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from enum import Enum

from .errors import EmptyHomology, ParseError, ValidationError
from .f2homology import Cell, F2Matrix, GradedF2Complex, homology, homology_ranks

__all__ = [
    "Generator",
    "Arrow",
    "BifilteredComplex",
    "Region",
    "Vertical",
    "FiltSub",
    "HFKSlice",
    "HorizRay",
    "HorizClosed",
    "HorizSlice",
    "Hook",
    "HookSub",
    "HookQuot",
    "Hand",
    "parse_cfk",
    "format_cfk",
    "staircase",
    "extract",
    "extract_window",
    "translate_label",
    "hfk_ranks",
    "genus",
    "is_fibered_like",
    "check_flip_symmetry",
    "vertical_ranks",
    "corpus",
]

_IDENT = re.compile(r"[A-Za-z0-9_]+\Z")


@dataclass(frozen=True)
class Generator:
    label: str
    alexander: int
    maslov: int | None = None


@dataclass(frozen=True)
class Arrow:
    src: str
    dst: str
    h: int = 0


@dataclass(frozen=True)
class BifilteredComplex:
    """Finite presentation of CFK^infinity up to the diagonal U-translation."""

    generators: tuple[Generator, ...]
    arrows: tuple[Arrow, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "generators", tuple(self.generators))
        object.__setattr__(self, "arrows", tuple(self.arrows))
        _validate(self)

    def alexander(self, label: str) -> int:
        return self._by_label()[label].alexander

    def _by_label(self) -> dict[str, Generator]:
        cached = self.__dict__.get("_lookup")
        if cached is None:
            cached = {g.label: g for g in self.generators}
            object.__setattr__(self, "_lookup", cached)
        return cached

    def vertical_drop(self, arrow: Arrow) -> int:
        return self.alexander(arrow.src) - self.alexander(arrow.dst) + arrow.h

    @property
    def has_maslov(self) -> bool:
        return bool(self.generators) and all(g.maslov is not None for g in self.generators)


def _validate(c: BifilteredComplex) -> None:
    labels = [g.label for g in c.generators]
    dup = [lab for lab, k in Counter(labels).items() if k > 1]
    if dup:
        raise ValidationError("duplicate generator label", witness=sorted(dup)[0])
    known = set(labels)
    alex = {g.label: g.alexander for g in c.generators}
    seen = set()
    for a in c.arrows:
        for end in (a.src, a.dst):
            if end not in known:
                raise ValidationError("arrow endpoint is not a generator", witness=end)
        if a.h < 0:
            raise ValidationError("negative horizontal drop", witness=[a.src, a.dst, a.h])
        v = alex[a.src] - alex[a.dst] + a.h
        if v < 0:
            raise ValidationError(
                "arrow increases the vertical filtration",
                witness=[a.src, a.dst, a.h],
                vertical_drop=v,
            )
        key = (a.src, a.dst, a.h)
        if key in seen:
            raise ValidationError("duplicate arrow", witness=list(key))
        seen.add(key)
    with_m = [g.maslov is not None for g in c.generators]
    if any(with_m) and not all(with_m):
        raise ValidationError("maslov grading must be given on all generators or none")
    if c.generators and all(with_m):
        mas = {g.label: g.maslov for g in c.generators}
        for a in c.arrows:
            if mas[a.src] - mas[a.dst] != 1:
                raise ValidationError("arrow must drop maslov grading by 1", witness=[a.src, a.dst, a.h])
    # d^2 = 0 with U-bookkeeping: paths x -> y -> z of total drop H come in pairs
    out: dict[str, list[Arrow]] = {}
    for a in c.arrows:
        out.setdefault(a.src, []).append(a)
    for x in labels:
        paths: Counter = Counter()
        for a in out.get(x, ()):
            for b in out.get(a.dst, ()):
                paths[(b.dst, a.h + b.h)] += 1
        for (z, total), count in sorted(paths.items()):
            if count % 2:
                raise ValidationError("boundary does not square to zero", witness=[x, z], drop=total)


def parse_cfk(text: str) -> BifilteredComplex:
    gens: list[Generator] = []
    arrows: list[Arrow] = []
    seen_gens: set[str] = set()
    seen_arrows: set[tuple[str, str, int]] = set()
    header = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if not header:
            if line.split() != ["cfk", "v1"]:
                raise ParseError(lineno, "expected header 'cfk v1'")
            header = True
            continue
        words = line.split()
        kind, rest = words[0], words[1:]
        if kind == "generator":
            if len(rest) not in (2, 3):
                raise ParseError(lineno, "expected 'generator <ident> A=<int> [M=<int>]'")
            ident = _ident(rest[0], lineno)
            a = _keyed_int(rest[1], "A", lineno)
            m = _keyed_int(rest[2], "M", lineno) if len(rest) == 3 else None
            if ident in seen_gens:
                raise ParseError(lineno, f"duplicate generator '{ident}'")
            seen_gens.add(ident)
            gens.append(Generator(ident, a, m))
        elif kind == "arrow":
            if len(rest) != 3:
                raise ParseError(lineno, "expected 'arrow <src> <dst> h=<uint>'")
            src, dst = _ident(rest[0], lineno), _ident(rest[1], lineno)
            h = _keyed_int(rest[2], "h", lineno)
            if h < 0:
                raise ParseError(lineno, "h must be a nonnegative integer")
            key = (src, dst, h)
            if key in seen_arrows:
                raise ParseError(lineno, f"duplicate arrow {src} {dst} h={h}")
            seen_arrows.add(key)
            arrows.append(Arrow(src, dst, h))
        else:
            raise ParseError(lineno, f"unknown directive '{kind}'")
    if not header:
        raise ParseError(1, "empty document; expected header 'cfk v1'")
    return BifilteredComplex(tuple(gens), tuple(arrows))


def _ident(word: str, lineno: int) -> str:
    if not _IDENT.match(word):
        raise ParseError(lineno, f"invalid identifier '{word}'")
    return word


def _keyed_int(word: str, key: str, lineno: int) -> int:
    prefix = key + "="
    if not word.startswith(prefix):
        raise ParseError(lineno, f"expected {prefix}<int>, got '{word}'")
    try:
        return int(word[len(prefix):])
    except ValueError:
        raise ParseError(lineno, f"expected {prefix}<int>, got '{word}'") from None


def format_cfk(c: BifilteredComplex) -> str:
    lines = ["cfk v1"]
    for g in c.generators:
        m = f" M={g.maslov}" if g.maslov is not None else ""
        lines.append(f"generator {g.label} A={g.alexander}{m}")
    for a in c.arrows:
        lines.append(f"arrow {a.src} {a.dst} h={a.h}")
    return "\n".join(lines) + "\n"


class Hand(str, Enum):
    RIGHT = "right"
    LEFT = "left"


def _stair_label(a: int) -> str:
    return f"g{a}" if a >= 0 else f"gm{-a}"


def staircase(k: int, hand: Hand | str = Hand.RIGHT) -> BifilteredComplex:
    """Staircase complex of the (2, 2k+1) torus knot (``Right``) or its mirror (``Left``).

    Generators ``g_a`` for ``a = k, ..., -k`` have Alexander grading ``a``;
    negative indices are labelled ``gm<|a|>``.
    """
    if k < 1:
        raise ValueError("k must be a positive integer")
    hand = Hand(hand)
    idx = list(range(k, -k - 1, -1))
    arrows: list[Arrow] = []
    if hand is Hand.RIGHT:
        sources = range(k - 1, -k, -2)
        for a in sources:
            arrows.append(Arrow(_stair_label(a), _stair_label(a - 1), 0))
            arrows.append(Arrow(_stair_label(a), _stair_label(a + 1), 1))
        # top generator at maslov 0, sources one above their targets
        maslov = {a: (0 if (k - a) % 2 == 0 else 1) for a in idx}
    else:
        for a in range(k, -k - 1, -2):
            if a > -k:
                arrows.append(Arrow(_stair_label(a), _stair_label(a - 1), 0))
            if a < k:
                arrows.append(Arrow(_stair_label(a), _stair_label(a + 1), 1))
        maslov = {a: (0 if (k - a) % 2 == 0 else -1) for a in idx}
    gens = tuple(Generator(_stair_label(a), a, maslov[a]) for a in idx)
    return BifilteredComplex(gens, tuple(arrows))


# --- regions -----------------------------------------------------------------


class Region:
    """A set of translates ``(x, i)``, at most one per generator.

    ``translate(A)`` is the ``i`` of the unique translate of a generator of
    Alexander grading ``A`` inside the region, or ``None``.
    """

    hook_family = False

    def translate(self, alexander: int) -> int | None:
        raise NotImplementedError

    def level(self, alexander: int, i: int) -> int:
        return alexander + i


@dataclass(frozen=True)
class Vertical(Region):
    def translate(self, alexander: int) -> int | None:
        return 0


@dataclass(frozen=True)
class FiltSub(Region):
    s: int

    def translate(self, alexander: int) -> int | None:
        return 0 if alexander <= self.s else None


@dataclass(frozen=True)
class HFKSlice(Region):
    s: int

    def translate(self, alexander: int) -> int | None:
        return 0 if alexander == self.s else None


@dataclass(frozen=True)
class HorizRay(Region):
    """C{i < 0, j = s}."""

    s: int

    def translate(self, alexander: int) -> int | None:
        i = self.s - alexander
        return i if i < 0 else None


@dataclass(frozen=True)
class HorizClosed(Region):
    """C{i <= 0, j = s}."""

    s: int

    def translate(self, alexander: int) -> int | None:
        i = self.s - alexander
        return i if i <= 0 else None


@dataclass(frozen=True)
class HorizSlice(Region):
    """C{i = s, j = 0}, the flip of an HFK slice."""

    s: int

    def translate(self, alexander: int) -> int | None:
        return self.s if alexander + self.s == 0 else None

    def level(self, alexander: int, i: int) -> int:
        return i


@dataclass(frozen=True)
class Hook(Region):
    """X_m = C{max(i, j - m) = 0}, filtered by S_m (level 0) inside Q_m (level 1)."""

    m: int
    hook_family = True

    def translate(self, alexander: int) -> int | None:
        return 0 if alexander <= self.m else self.m - alexander

    def level(self, alexander: int, i: int) -> int:
        return 1 if i == 0 else 0


@dataclass(frozen=True)
class HookSub(Hook):
    """S_m = C{i < 0, j = m}."""

    def translate(self, alexander: int) -> int | None:
        return self.m - alexander if alexander > self.m else None


@dataclass(frozen=True)
class HookQuot(Hook):
    """Q_m = C{i = 0, j <= m}."""

    def translate(self, alexander: int) -> int | None:
        return 0 if alexander <= self.m else None


def translate_label(label: str, i: int) -> str:
    """Display form of the translate ``(label, i)``; the i=0 translate keeps its bare label."""
    return label if i == 0 else f"{label}@{i}"


def extract(c: BifilteredComplex, region: Region) -> GradedF2Complex:
    """Subquotient complex of translates in ``region``; labels are ``(generator, i)`` pairs."""
    where: dict[str, int] = {}
    cells = []
    for g in c.generators:
        i = region.translate(g.alexander)
        if i is None:
            continue
        where[g.label] = i
        cells.append(Cell((g.label, i), region.level(g.alexander, i), g.maslov))
    index = {cell.label: k for k, cell in enumerate(cells)}
    entries = []
    for a in c.arrows:
        i = where.get(a.src)
        if i is None:
            continue
        target = (a.dst, i - a.h)
        if where.get(a.dst) == i - a.h:
            entries.append((index[target], index[(a.src, i)]))
    return GradedF2Complex(tuple(cells), F2Matrix(len(cells), len(cells), frozenset(entries)))


def extract_window(c: BifilteredComplex, contains, imin: int, imax: int = 0) -> GradedF2Complex:
    """All translates ``(x, i)`` with ``imin <= i <= imax`` and ``contains(i, j)`` true.

    For a region that is a down-set of the filtration this is the quotient of
    it by its part with ``i < imin``, a valid complex.  Grading is ``j``.
    """
    cells = []
    members = set()
    for i in range(imax, imin - 1, -1):
        for g in c.generators:
            if contains(i, g.alexander + i):
                cells.append(Cell((g.label, i), g.alexander + i, g.maslov))
                members.add((g.label, i))
    index = {cell.label: k for k, cell in enumerate(cells)}
    entries = []
    for a in c.arrows:
        for i in range(imax, imin - 1, -1):
            src, dst = (a.src, i), (a.dst, i - a.h)
            if src in members and dst in members:
                entries.append((index[dst], index[src]))
    return GradedF2Complex(tuple(cells), F2Matrix(len(cells), len(cells), frozenset(entries)))


# --- invariants of the input complex ------------------------------------------


def hfk_ranks(c: BifilteredComplex) -> dict[int, int]:
    """Rank of knot Floer homology in each Alexander grading (zeros omitted)."""
    out = {}
    for s in sorted({g.alexander for g in c.generators}, reverse=True):
        r = homology(extract(c, HFKSlice(s))).rank
        if r:
            out[s] = r
    return out


def genus(c: BifilteredComplex) -> int:
    ranks = hfk_ranks(c)
    if not ranks:
        raise EmptyHomology("every Alexander slice is acyclic")
    return max(ranks)


def is_fibered_like(c: BifilteredComplex) -> bool:
    ranks = hfk_ranks(c)
    if not ranks:
        raise EmptyHomology("every Alexander slice is acyclic")
    return ranks[max(ranks)] == 1


def check_flip_symmetry(c: BifilteredComplex) -> bool:
    """Homology ranks of C{i=0, j=s} and C{i=s, j=0} agree for every s."""
    grades = {g.alexander for g in c.generators}
    for s in grades | {-a for a in grades}:
        vert = homology(extract(c, HFKSlice(s))).rank
        horiz = homology(extract(c, HorizSlice(s))).rank
        if vert != horiz:
            return False
    return True


def vertical_ranks(c: BifilteredComplex) -> dict[int, int]:
    """Homology of the vertical complex, graded by the Alexander filtration."""
    return homology_ranks(extract(c, Vertical()))


def corpus(max_k: int = 10) -> dict[str, BifilteredComplex]:
    """Built-in test corpus: both staircase hands for k = 1..max_k plus the unknot."""
    out = {"unknot": BifilteredComplex((Generator("x", 0, 0),))}
    for k in range(1, max_k + 1):
        for hand in Hand:
            out[f"T(2,{2 * k + 1})-{hand.value}"] = staircase(k, hand)
    return out
