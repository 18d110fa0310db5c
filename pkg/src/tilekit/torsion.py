"""Tilings of Z x (Z/pZ) for prime p.

The convolution ring Q^(Z/pZ) is a quotient of Q[x] by x^p - 1; for prime p
the indicator of any proper non-empty subset is invertible there, computed by
an extended Euclidean identity over Q[x].  Tiles of the mixed group split into
two classes: those whose occupied integer columns all carry the full fiber
(their co-tiles project to co-tiles of a one-dimensional tile, with a free
fiber choice per column), and the rest, whose co-tiles are forced periodic.

Only prime p is supported: the inverse rests on irreducibility of the p-th
cyclotomic polynomial, which fails for composite moduli.  Composite input
raises rather than risking a silently wrong answer.  Mixed-group sets are
stored as one Z-periodic fiber per torsion residue.  Full-fiber tiles also
admit non-periodic co-tiles (an arbitrary fiber choice per column); those have
no finite presentation here and only periodic presentations are checkable.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import EmptyOrFullError, NotACotileError, NotPrimeError
from .lattice import Lattice, PeriodicSet
from .tiles import Tile
from . import verify as _verify


def _is_prime(p):
    if p < 2:
        return False
    return all(p % d for d in range(2, int(p ** 0.5) + 1))


def _require_prime(p):
    if not _is_prime(p):
        raise NotPrimeError(f"modulus {p} is not prime")


# ---------------------------------------------------------------------------
# polynomials over Q, coefficient lists in ascending degree
# ---------------------------------------------------------------------------


def _poly_trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_divmod(a, b):
    a = [Fraction(x) for x in a]
    b = [Fraction(x) for x in b]
    _poly_trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(0, len(a) - len(b) + 1)
    r = a[:]
    _poly_trim(r)
    while len(r) >= len(b):
        factor = r[-1] / b[-1]
        shift = len(r) - len(b)
        q[shift] = factor
        for i, coeff in enumerate(b):
            r[shift + i] -= factor * coeff
        _poly_trim(r)
    return q, r


def _poly_mul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return _poly_trim(out)


def _poly_sub(a, b):
    out = [Fraction(0)] * max(len(a), len(b))
    for i, x in enumerate(a):
        out[i] += x
    for i, x in enumerate(b):
        out[i] -= x
    return _poly_trim(out)


def _poly_xgcd(a, b):
    """(g, s, t) with s*a + t*b = g, over Q[x]."""
    r0, r1 = [Fraction(x) for x in a], [Fraction(x) for x in b]
    s0, s1 = [Fraction(1)], []
    t0, t1 = [], [Fraction(1)]
    _poly_trim(r0)
    _poly_trim(r1)
    while r1:
        q, r = _poly_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
        t0, t1 = t1, _poly_sub(t0, _poly_mul(q, t1))
    return r0, s0, t0


@dataclass(frozen=True)
class CyclicFunction:
    """A function on Z/pZ with exact rational values."""

    p: int
    values: tuple

    @staticmethod
    def make(p, values):
        _require_prime(p)
        vals = tuple(Fraction(v) for v in values)
        if len(vals) != p:
            raise ValueError(f"expected {p} values")
        return CyclicFunction(p, vals)

    @staticmethod
    def delta(p, at=0):
        _require_prime(p)
        return CyclicFunction(p, tuple(Fraction(1 if i == at % p else 0)
                                       for i in range(p)))

    @staticmethod
    def indicator(p, subset):
        _require_prime(p)
        subset = {s % p for s in subset}
        return CyclicFunction(p, tuple(Fraction(1 if i in subset else 0)
                                       for i in range(p)))

    def convolve(self, other):
        if self.p != other.p:
            raise ValueError("mismatched moduli")
        p = self.p
        vals = [Fraction(0)] * p
        for i in range(p):
            for j in range(p):
                vals[(i + j) % p] += self.values[i] * other.values[j]
        return CyclicFunction(p, tuple(vals))

    def __mul__(self, other):
        return self.convolve(other)


def ring_inverse(subset, p):
    """g with g * 1_{F0} = delta_0 in the convolution ring on Z/pZ.

    Computed from the Bezout identity of P(x) = sum_{i in F0} x^i against
    x^p - 1 over Q[x]; exists exactly when F0 is a proper non-empty subset and
    p is prime.
    """
    _require_prime(p)
    subset = {s % p for s in subset}
    if not subset or len(subset) == p:
        raise EmptyOrFullError("the empty set and the full group are not invertible")
    poly = [Fraction(1 if i in subset else 0) for i in range(p)]
    modulus = [Fraction(-1)] + [Fraction(0)] * (p - 1) + [Fraction(1)]
    g, s, _ = _poly_xgcd(poly, modulus)
    if len(g) != 1:
        raise AssertionError("indicator polynomial not coprime to x^p - 1; "
                             "impossible for prime p and a proper subset")
    scale = 1 / g[0]
    inv = [Fraction(0)] * p
    for i, coeff in enumerate(s):
        inv[i % p] += coeff * scale
    out = CyclicFunction(p, tuple(inv))
    if out.convolve(CyclicFunction.indicator(p, subset)) != CyclicFunction.delta(p):
        raise AssertionError("computed inverse fails its defining identity; bug")
    return out


@dataclass(frozen=True)
class MixedTile:
    """A finite subset of Z x (Z/pZ), p prime."""

    p: int
    points: frozenset  # (n, t) with 0 <= t < p

    @staticmethod
    def make(p, points):
        _require_prime(p)
        pts = frozenset((int(n), int(t) % p) for n, t in points)
        if not pts:
            raise ValueError("a tile must be non-empty")
        return MixedTile(p, pts)

    @property
    def size(self):
        return len(self.points)

    @property
    def columns(self):
        return sorted({n for n, _ in self.points})

    def fiber(self, n):
        return {t for m, t in self.points if m == n}


@dataclass(frozen=True)
class TorsionClass:
    kind: str  # "full_fiber" | "generic"
    base: Tile | None  # the Z-projection when every column carries the full fiber

    @property
    def is_full_fiber(self):
        return self.kind == "full_fiber"


def classify(tile):
    """FULL_FIBER when every occupied column carries all p residues, else GENERIC."""
    if all(len(tile.fiber(n)) == tile.p for n in tile.columns):
        base = Tile.make(1, [(n,) for n in tile.columns])
        return TorsionClass("full_fiber", base)
    return TorsionClass("generic", None)


@dataclass(frozen=True)
class MixedPeriodicSet:
    """A subset of Z x (Z/pZ), periodic in the Z direction: one Z-periodic
    fiber per torsion residue, all on a common period."""

    p: int
    period: int
    members: frozenset  # (n, t) with 0 <= n < period, 0 <= t < p

    @staticmethod
    def make(p, period, members):
        _require_prime(p)
        if period < 1:
            raise ValueError("period must be positive")
        pts = frozenset((int(n) % period, int(t) % p) for n, t in members)
        return MixedPeriodicSet(p, period, pts)

    def contains(self, n, t):
        return (n % self.period, t % self.p) in self.members

    def fibers(self):
        """Per torsion residue, the Z-part as a one-dimensional PeriodicSet."""
        lat = Lattice.diagonal([self.period])
        return tuple(
            PeriodicSet(lat, frozenset((n,) for n, t in self.members if t == s))
            for s in range(self.p))

    def projection(self):
        """Columns meeting the set, as a one-dimensional PeriodicSet."""
        lat = Lattice.diagonal([self.period])
        return PeriodicSet(lat, frozenset((n,) for n, _ in self.members))

    def stabilizer_generator(self):
        """Smallest (n, t) with n >= 1 fixing the set under translation."""
        for n in range(1, self.period + 1):
            for t in range(self.p):
                if all(self.contains(a + n, b + t) for a, b in self.members) and \
                        len(self.members) == len({((a + n) % self.period, (b + t) % self.p)
                                                  for a, b in self.members}):
                    return (n, t)
        raise AssertionError("the presentation period itself must stabilize")


def mixed_convolution_is_one(tile, aset):
    """Whether 1_F * 1_A = 1 on Z x (Z/pZ), checked on one period."""
    if tile.p != aset.p:
        raise ValueError("mismatched moduli")
    m, p = aset.period, aset.p
    for x in range(m):
        for s in range(p):
            count = sum(1 for n, t in tile.points if aset.contains(x - n, s - t))
            if count != 1:
                return False
    return True


def _mixed_kernel_convolve(kernel, fn, p, period):
    """Convolution of a finitely supported rational kernel on Z x (Z/pZ) with
    a function given on one period grid."""
    out = {}
    for x in range(period):
        for s in range(p):
            acc = Fraction(0)
            for (n, t), w in kernel.items():
                acc += w * fn[((x - n) % period, (s - t) % p)]
            out[(x, s)] = acc
    return out


@dataclass(frozen=True)
class TorsionVerdict:
    kind: str                      # "full_fiber" | "generic"
    periodic: bool
    stabilizer_generator: tuple | None
    base: Tile | None              # full-fiber case: the Z-tile
    base_cotile: PeriodicSet | None  # full-fiber case: the Z-projection of A
    recovered_via_inverse: bool | None  # generic case: ring-inverse round trip


def cotile_conclusion(tile, aset):
    """Check 1_F * 1_A = 1 on the mixed group and report the structural verdict.

    Generic tiles force periodic co-tiles.  The verdict reports a stabilizer
    generator with a nonzero Z-component and re-enacts the mechanism behind
    the forcing: some column carries a proper non-empty fiber F_0, and
    convolving 1_A with that column and then with the ring inverse of F_0
    recovers 1_A exactly, so 1_A inherits the periodicity of the convolution.
    Full-fiber tiles delegate to Z: the projection of A must co-tile the base
    tile, with one free fiber choice per column.
    """
    if not mixed_convolution_is_one(tile, aset):
        raise NotACotileError("1_F * 1_A is not identically 1 on the mixed group")
    cls = classify(tile)
    if cls.is_full_fiber:
        base_cotile = aset.projection()
        rep = _verify.is_tiling(cls.base, base_cotile)
        if not rep:
            raise AssertionError("full-fiber projection fails to co-tile; "
                                 "contradicts the mixed verification")
        return TorsionVerdict("full_fiber", True, (aset.period, 0),
                              cls.base, base_cotile, None)
    gen = aset.stabilizer_generator()
    p, period = tile.p, aset.period
    n0 = next(n for n in tile.columns if 0 < len(tile.fiber(n)) < p)
    f0 = tile.fiber(n0)
    inverse = ring_inverse(f0, p)
    ind = {(x, s): Fraction(1 if (x, s) in aset.members else 0)
           for x in range(period) for s in range(p)}
    column = {(0, t): Fraction(1) for t in f0}
    conv = _mixed_kernel_convolve(column, ind, p, period)
    back = {(0, t): inverse.values[t] for t in range(p)}
    recovered = _mixed_kernel_convolve(back, conv, p, period)
    if recovered != ind:
        raise AssertionError("ring-inverse round trip failed to recover the "
                             "indicator; this is a bug")
    return TorsionVerdict("generic", True, gen, None, None, True)
