"""Finite tiles, weighted tiles, and exact convolution against periodic functions.

Weighted tiles carry integer weights so that indicators, single deltas and
signed combinations all go through one convolution code path.  Convolution is
defined against L-periodic rational functions only and is computed exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import RankDeficientError
from .lattice import Lattice, PeriodicSet, hnf, vadd, vsub, vscale


@dataclass(frozen=True)
class Tile:
    """A finite non-empty subset of Z^dim."""

    dim: int
    points: frozenset

    @staticmethod
    def make(dim, points):
        pts = frozenset(tuple(p) for p in points)
        if not pts:
            raise ValueError("a tile must be non-empty")
        for p in pts:
            if len(p) != dim:
                raise ValueError(f"point {p} does not have dimension {dim}")
        return Tile(dim, pts)

    @property
    def size(self):
        return len(self.points)

    @property
    def is_normalized(self):
        return (0,) * self.dim in self.points

    @property
    def star(self):
        """Points with the origin removed."""
        return self.points - {(0,) * self.dim}

    @property
    def sorted_points(self):
        return tuple(sorted(self.points))

    @property
    def sorted_star(self):
        return tuple(sorted(self.star))

    def translate(self, v):
        return Tile(self.dim, frozenset(vadd(p, v) for p in self.points))

    def diameter(self):
        """Largest coordinate spread, sup-norm."""
        return max(max(p[i] for p in self.points) - min(p[i] for p in self.points)
                   for i in range(self.dim))

    def __repr__(self):
        return f"Tile({self.dim}, {list(self.sorted_points)})"


def normalize(tile):
    """Translate so the lexicographically smallest point becomes the origin.

    Returns (normalized tile, translation vector that was subtracted).
    """
    t = min(tile.points)
    return tile.translate(vscale(-1, t)), t


def dilate(tile, r):
    """The tile r*F = {r f : f in F}; cardinality is preserved."""
    if r < 1:
        raise ValueError("dilation factor must be a positive integer")
    return Tile(tile.dim, frozenset(vscale(r, p) for p in tile.points))


def difference_set(tile):
    """{a - b : a, b in F}."""
    return Tile(tile.dim, frozenset(vsub(a, b) for a in tile.points for b in tile.points))


@dataclass(frozen=True)
class TileTuple:
    """An ordered tuple of normalized tiles of a common dimension."""

    tiles: tuple

    def __post_init__(self):
        if not self.tiles:
            raise ValueError("a tile tuple must be non-empty")
        dim = self.tiles[0].dim
        for t in self.tiles:
            if t.dim != dim:
                raise ValueError("tiles have mixed dimensions")
            if not t.is_normalized:
                raise ValueError(f"tile {t} does not contain the origin")

    @staticmethod
    def make(tiles):
        return TileTuple(tuple(tiles))

    @property
    def dim(self):
        return self.tiles[0].dim

    def __len__(self):
        return len(self.tiles)

    def __iter__(self):
        return iter(self.tiles)

    def __getitem__(self, i):
        return self.tiles[i]


@dataclass(frozen=True, eq=False)
class WeightedTile:
    """A finitely supported integer-valued function on Z^dim."""

    dim: int
    entries: tuple  # sorted ((point, weight), ...), weights nonzero

    @staticmethod
    def make(dim, mapping):
        entries = tuple(sorted((tuple(p), int(w)) for p, w in mapping.items() if w))
        for p, _ in entries:
            if len(p) != dim:
                raise ValueError(f"point {p} does not have dimension {dim}")
        return WeightedTile(dim, entries)

    @staticmethod
    def from_tile(tile):
        return WeightedTile(tile.dim, tuple((p, 1) for p in tile.sorted_points))

    @staticmethod
    def delta(dim, v=None):
        v = (0,) * dim if v is None else tuple(v)
        return WeightedTile(dim, ((v, 1),))

    @property
    def support(self):
        return tuple(p for p, _ in self.entries)

    def weight(self, p):
        for q, w in self.entries:
            if q == p:
                return w
        return 0

    def __eq__(self, other):
        return isinstance(other, WeightedTile) and (self.dim, self.entries) == (other.dim, other.entries)

    def __repr__(self):
        return f"WeightedTile({self.dim}, {dict(self.entries)})"


def as_weighted(g):
    if isinstance(g, WeightedTile):
        return g
    if isinstance(g, Tile):
        return WeightedTile.from_tile(g)
    raise TypeError(f"expected Tile or WeightedTile, got {type(g).__name__}")


@dataclass(frozen=True, eq=False)
class PeriodicRationalFunction:
    """An L-periodic function Z^d -> Q, stored by its values on a fundamental domain."""

    lattice: Lattice
    values: dict  # canonical residue -> Fraction, one entry per residue

    @staticmethod
    def make(lattice, mapping):
        if not lattice.is_full_rank:
            raise RankDeficientError("a periodic function needs a full-rank lattice")
        values = {}
        for r in lattice.quotient():
            values[r] = Fraction(mapping.get(r, 0))
        return PeriodicRationalFunction(lattice, values)

    @staticmethod
    def constant(lattice, c):
        return PeriodicRationalFunction.make(lattice, {r: Fraction(c) for r in lattice.quotient()})

    @staticmethod
    def from_callable(lattice, fn):
        return PeriodicRationalFunction.make(lattice, {r: Fraction(fn(r)) for r in lattice.quotient()})

    @property
    def dim(self):
        return self.lattice.dim

    def __call__(self, v):
        return self.values[self.lattice.reduce(v)]

    def shift(self, v):
        """The function x -> f(x + v)."""
        return PeriodicRationalFunction(
            self.lattice,
            {r: self.values[self.lattice.reduce(vadd(r, v))] for r in self.values})

    def refine(self, sub):
        if not self.lattice.contains_lattice(sub):
            raise ValueError("refinement lattice is not contained in the current one")
        return PeriodicRationalFunction(
            sub, {r: self(r) for r in sub.quotient()})

    def common_lattice(self, other):
        if self.lattice == other.lattice:
            return self.lattice
        return self.lattice.intersect(other.lattice)

    def __add__(self, other):
        if isinstance(other, PeriodicRationalFunction):
            common = self.common_lattice(other)
            return PeriodicRationalFunction(
                common, {r: self(r) + other(r) for r in common.quotient()})
        return PeriodicRationalFunction(
            self.lattice, {r: v + Fraction(other) for r, v in self.values.items()})

    def __radd__(self, other):
        return self.__add__(other)

    def __neg__(self):
        return PeriodicRationalFunction(self.lattice, {r: -v for r, v in self.values.items()})

    def __sub__(self, other):
        return self.__add__(-other if isinstance(other, PeriodicRationalFunction) else -Fraction(other))

    def __rsub__(self, other):
        return (-self).__add__(other)

    def scale(self, c):
        c = Fraction(c)
        return PeriodicRationalFunction(self.lattice, {r: c * v for r, v in self.values.items()})

    def __eq__(self, other):
        """Equality as functions on Z^d, independent of the presentation lattice."""
        if isinstance(other, PeriodicRationalFunction):
            if self.dim != other.dim:
                return False
            if self.lattice == other.lattice:
                return self.values == other.values
            common = self.common_lattice(other)
            return all(self(r) == other(r) for r in common.quotient())
        try:
            c = Fraction(other)
        except (TypeError, ValueError):
            return NotImplemented
        return all(v == c for v in self.values.values())

    def is_constant(self, c):
        c = Fraction(c)
        return all(v == c for v in self.values.values())

    def min_value(self):
        return min(self.values.values())

    def max_value(self):
        return max(self.values.values())

    def is_integer_valued(self):
        return all(v.denominator == 1 for v in self.values.values())

    def stabilizer(self):
        """Full stabilizer {v : f(x + v) = f(x) for all x} as a canonical Lattice."""
        lat = self.lattice
        gens = list(lat.basis)
        for r in lat.quotient():
            if any(r) and all(self.values[lat.reduce(vadd(x, r))] == self.values[x]
                              for x in self.values):
                gens.append(r)
        return hnf(lat.dim, gens)

    def support_set(self):
        """Members where the function is nonzero, as a PeriodicSet (0/1 functions)."""
        return PeriodicSet(self.lattice,
                           frozenset(r for r, v in self.values.items() if v))

    def __repr__(self):
        items = ", ".join(f"{r}: {v}" for r, v in sorted(self.values.items()))
        return f"PeriodicRationalFunction({self.lattice!r}, {{{items}}})"


def indicator(aset):
    """1_A as a periodic rational function on A's presentation lattice."""
    return PeriodicRationalFunction.make(
        aset.lattice, {r: Fraction(1) for r in aset.members})


def convolve(g, f):
    """Exact convolution (g * f)(x) = sum_y g(y) f(x - y) of a finitely supported
    integer function with a periodic rational function; the result keeps f's lattice."""
    g = as_weighted(g)
    if g.dim != f.dim:
        raise ValueError("dimension mismatch in convolution")
    lat = f.lattice
    values = {}
    for r in lat.quotient():
        acc = Fraction(0)
        for y, w in g.entries:
            acc += w * f.values[lat.reduce(vsub(r, y))]
        values[r] = acc
    return PeriodicRationalFunction(lat, values)
