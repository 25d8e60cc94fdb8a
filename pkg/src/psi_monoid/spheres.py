"""Closed-form monoids for spheres stratified by a point, and framed points.

For the sphere of dimension k stratified by a point, the k-th monoid is the
free dagger monoid on one generator (k = 1) or the free commutative dagger
monoid on one generator (k >= 2).  A fat wedge of r such spheres has r
generators, one per colour.  An element is read as a configuration of
coloured framed points: the letter ``a`` is a point of colour ``a`` with
positive framing, ``a'`` one with negative framing.
"""

from __future__ import annotations

import string
from dataclasses import dataclass

from .errors import PsiError
from .graph import StratGraph
from .words import Kind, MonoidKind, Word, parse_word


def colour_names(r: int) -> list[str]:
    if r <= 26:
        return list(string.ascii_lowercase[:r])
    return [f"c{i}" for i in range(r)]


def psi_sphere(k: int, r: int = 1) -> MonoidKind:
    """The k-th monoid of a wedge of r point-stratified k-spheres."""
    if k < 1:
        raise PsiError(
            "k must be >= 1: in degree 0 there is only the pointed set of open strata"
        )
    if r < 1:
        raise PsiError("r must be >= 1")
    kind = Kind.FREE_DAGGER if k == 1 else Kind.FREE_COMMUTATIVE_DAGGER
    names = colour_names(r)
    return MonoidKind.free(*names) if kind is Kind.FREE_DAGGER else MonoidKind.free_commutative(*names)


@dataclass(frozen=True)
class PointedSet:
    elements: tuple[str, ...]
    base: str

    def __len__(self) -> int:
        return len(self.elements)

    def __str__(self) -> str:
        return "({" + ", ".join(self.elements) + "}, " + self.base + ")"


def psi0(g: StratGraph) -> PointedSet:
    """Open strata, pointed by the one containing the basepoint."""
    g.check()
    return PointedSet(tuple(g.vertices), g.base)


@dataclass(frozen=True)
class PointConfiguration:
    """Framed coloured points in a k-sphere; ordered along the line when k = 1."""

    points: tuple[tuple[str, str], ...]
    ordered: bool

    def dagger(self) -> PointConfiguration:
        flipped = [(c, "-" if s == "+" else "+") for c, s in self.points]
        if self.ordered:
            return PointConfiguration(tuple(reversed(flipped)), True)
        return PointConfiguration(tuple(sorted(flipped, key=_point_key)), False)

    def __str__(self) -> str:
        inner = ", ".join(c + s for c, s in self.points)
        return f"[{inner}]" if self.ordered else "{" + inner + "}"

    def to_dict(self) -> dict:
        return {
            "ordered": self.ordered,
            "points": [{"colour": c, "framing": s} for c, s in self.points],
        }


def _point_key(point: tuple[str, str]) -> tuple[str, bool]:
    # matches the word normal form: undaggered (+) before daggered (-)
    return (point[0], point[1] == "-")


def _smallest_wedge(names: set[str]) -> int:
    letters = string.ascii_lowercase
    if all(n in letters for n in names):
        return max((letters.index(n) + 1 for n in names), default=1)
    if all(n[:1] == "c" and n[1:].isdigit() for n in names):
        return max(27, max(int(n[1:]) + 1 for n in names))
    raise PsiError(f"colours {sorted(names)} do not name the generators of a sphere wedge")


def tangle_interpretation(w: Word | str, k: int, r: int | None = None) -> PointConfiguration:
    """Render a word of ``psi_sphere(k, r)`` as its framed point configuration.

    ``r`` defaults to the smallest wedge whose colours cover the word.
    """
    if isinstance(w, str):
        w = parse_word(w)
    if r is None:
        r = _smallest_wedge({letter.name for letter in w})
    m = psi_sphere(k, r)
    w = m.normalize(parse_word(str(w), m))
    points = tuple((letter.name, "-" if letter.daggered else "+") for letter in w)
    return PointConfiguration(points, ordered=(k == 1))
