"""Exact piecewise-linear interval maps and the realization order.

An expansion forest is realized as a PL homeomorphism by equal-width
subdivision: the i-th letter of the source word owns the unit interval
[i-1, i], and a node expanded by a rule of arity k maps the intervals of its
k children affinely onto k equal parts of the node's interval.  The realized
map sends [0, leaf count] onto [0, source length], and realization turns
grafting into composition, exactly.

A pair of forests (T, S) with equal source and equal leaf words therefore
realizes to a self-homeomorphism of [0, leaf count]: the T-realization
composed with the inverse of the S-realization.  Ordering such maps by their
first deviation from the diagonal gives a bi-order on the group of pairs:
the positive maps are closed under composition and under conjugation, since
conjugation by an orientation-preserving homeomorphism moves the deviation
point but not the side of the diagonal.

All breakpoints are exact rationals; there are no tolerances anywhere in
this module.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction

from .drs import ExpansionForest, SourceMismatchError
from .ordering import Sign

Point = tuple[Fraction, Fraction]


class PLMapError(ValueError):
    """Malformed PL map or incompatible composition."""


def _prune(points: list[Point]) -> tuple[Point, ...]:
    """Drop interior points lying on the segment through their neighbors."""
    if len(points) < 3:
        return tuple(points)
    pruned: list[Point] = [points[0]]
    for i in range(1, len(points) - 1):
        x0, y0 = pruned[-1]
        x1, y1 = points[i]
        x2, y2 = points[i + 1]
        if (y1 - y0) * (x2 - x1) == (y2 - y1) * (x1 - x0):
            continue
        pruned.append(points[i])
    pruned.append(points[-1])
    return tuple(pruned)


@dataclass(frozen=True)
class PLMap:
    breakpoints: tuple[Point, ...]

    def __post_init__(self) -> None:
        bps = self.breakpoints
        if len(bps) < 2:
            raise PLMapError("need at least two breakpoints")
        if bps[0] != (Fraction(0), Fraction(0)):
            raise PLMapError(f"first breakpoint must be (0,0), got {bps[0]}")
        for (x0, y0), (x1, y1) in zip(bps, bps[1:]):
            if not (x1 > x0 and y1 > y0):
                raise PLMapError("breakpoints must increase in both coordinates")
        xl, yl = bps[-1]
        if xl.denominator != 1 or yl.denominator != 1:
            raise PLMapError("endpoint lengths must be integers")

    @classmethod
    def from_points(cls, points: list[Point]) -> "PLMap":
        pts = [(Fraction(x), Fraction(y)) for x, y in points]
        return cls(_prune(pts))

    @classmethod
    def identity(cls, length: int) -> "PLMap":
        if length < 1:
            raise PLMapError("length must be >= 1")
        return cls(((Fraction(0), Fraction(0)), (Fraction(length), Fraction(length))))

    @property
    def domain_length(self) -> Fraction:
        return self.breakpoints[-1][0]

    @property
    def range_length(self) -> Fraction:
        return self.breakpoints[-1][1]

    def __call__(self, x: Fraction) -> Fraction:
        x = Fraction(x)
        bps = self.breakpoints
        if not (0 <= x <= self.domain_length):
            raise PLMapError(f"{x} outside [0, {self.domain_length}]")
        xs = [p[0] for p in bps]
        i = bisect_right(xs, x) - 1
        if i == len(bps) - 1:
            return bps[-1][1]
        (x0, y0), (x1, y1) = bps[i], bps[i + 1]
        return y0 + (y1 - y0) * (x - x0) / (x1 - x0)

    def inverse(self) -> "PLMap":
        return PLMap(tuple((y, x) for x, y in self.breakpoints))

    def is_identity(self) -> bool:
        return (
            len(self.breakpoints) == 2
            and self.breakpoints[0][0] == self.breakpoints[0][1]
            and self.breakpoints[1][0] == self.breakpoints[1][1]
        )

    def format_text(self) -> str:
        def frac(v: Fraction) -> str:
            return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"

        return " ".join(f"({frac(x)},{frac(y)})" for x, y in self.breakpoints)

    @classmethod
    def parse_text(cls, text: str) -> "PLMap":
        points: list[Point] = []
        for token in text.split():
            if not (token.startswith("(") and token.endswith(")")):
                raise PLMapError(f"bad breakpoint token {token!r}")
            parts = token[1:-1].split(",")
            if len(parts) != 2:
                raise PLMapError(f"bad breakpoint token {token!r}")
            points.append((Fraction(parts[0]), Fraction(parts[1])))
        return cls.from_points(points)


def pl_compose(f: PLMap, g: PLMap) -> PLMap:
    """Exact composite x -> f(g(x))."""
    if g.range_length != f.domain_length:
        raise PLMapError(
            f"range {g.range_length} of inner map does not match domain "
            f"{f.domain_length} of outer map"
        )
    ginv = g.inverse()
    xs = {x for x, _ in g.breakpoints}
    xs.update(ginv(x) for x, _ in f.breakpoints)
    points = [(x, f(g(x))) for x in sorted(xs)]
    return PLMap.from_points(points)


def realize_forest(forest: ExpansionForest) -> PLMap:
    """PL map [0, leaf count] -> [0, source length] by nested equal-width
    subdivision."""
    points: list[Point] = [(Fraction(0), Fraction(0))]
    leaf_pos = 0

    def walk(tree, lo: Fraction, hi: Fraction) -> None:
        nonlocal leaf_pos
        if not tree.children:
            leaf_pos += 1
            points.append((Fraction(leaf_pos), hi))
            return
        k = len(tree.children)
        for i, child in enumerate(tree.children, start=1):
            walk(child, lo + (hi - lo) * (i - 1) / k, lo + (hi - lo) * i / k)

    for i, tree in enumerate(forest.trees):
        walk(tree, Fraction(i), Fraction(i + 1))
    return PLMap.from_points(points)


def realize_pair(t: ExpansionForest, s: ExpansionForest) -> PLMap:
    """Self-homeomorphism of [0, leaf count] realizing the fraction with
    numerator forest t and denominator forest s."""
    if t.source != s.source:
        raise SourceMismatchError(f"sources differ: {t.source} vs {s.source}")
    if t.leaves() != s.leaves():
        raise SourceMismatchError(
            f"leaf words differ: {t.leaves()} vs {s.leaves()}"
        )
    return pl_compose(realize_forest(t), realize_forest(s).inverse())


def pl_sign(f: PLMap) -> Sign:
    """First-deviation sign of a PL self-map: Positive iff f(t) > t just
    right of the first point where f leaves the diagonal."""
    if f.domain_length != f.range_length:
        raise PLMapError("sign is defined for self-maps only")
    for x, y in f.breakpoints:
        if y != x:
            return Sign.POSITIVE if y > x else Sign.NEGATIVE
    return Sign.ZERO
