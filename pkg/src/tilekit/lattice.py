"""Exact arithmetic for subgroups of Z^d: canonical bases, quotients, stabilizers.

A subgroup is stored as a d x k integer matrix of generating columns in a
canonical Hermite form: the pivot of column j (its last nonzero entry) is
positive and sits at a strictly larger row than the pivot of column j-1, and
within each pivot row the entries to the right of the pivot are reduced into
[0, pivot).  Two values generate the same subgroup exactly when their stored
matrices are equal.  All arithmetic is on Python ints, so pivots and indices
never overflow.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .errors import RankDeficientError


class Infinite:
    """Index of a subgroup of deficient rank.  Singleton; unequal to every int."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INFINITE"


INFINITE = Infinite()


def vadd(u, v):
    return tuple(a + b for a, b in zip(u, v))


def vsub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def vneg(u):
    return tuple(-a for a in u)


def vscale(c, u):
    return tuple(c * a for a in u)


def _row_hnf(rows, width):
    """Row Hermite form: leading pivots at strictly increasing columns, pivots
    positive, entries above each pivot reduced into [0, pivot)."""
    work = [list(r) for r in rows if any(r)]
    nrows = len(work)
    r = 0
    for col in range(width):
        pivot = None
        for i in range(r, nrows):
            if work[i][col]:
                pivot = i
                break
        if pivot is None:
            continue
        work[r], work[pivot] = work[pivot], work[r]
        for i in range(r + 1, nrows):
            while work[i][col]:
                q = work[r][col] // work[i][col]
                work[r] = [a - q * b for a, b in zip(work[r], work[i])]
                work[r], work[i] = work[i], work[r]
        if work[r][col] < 0:
            work[r] = [-a for a in work[r]]
        r += 1
    work = work[:r]
    for j in range(r):
        col = next(c for c, a in enumerate(work[j]) if a)
        p = work[j][col]
        for i in range(j):
            q = work[i][col] // p
            if q:
                work[i] = [a - q * b for a, b in zip(work[i], work[j])]
    return work


def hnf(dim, vectors):
    """Canonical Lattice generated by the given integer vectors.

    Zero vectors are dropped; an empty generating set yields the zero lattice.
    Idempotent: feeding back the columns of a canonical basis reproduces it.
    """
    vecs = [tuple(v) for v in vectors]
    for v in vecs:
        if len(v) != dim:
            raise ValueError(f"vector {v} does not have dimension {dim}")
    reduced = _row_hnf([list(reversed(v)) for v in vecs], dim)
    cols = [tuple(reversed(row)) for row in reduced]
    cols.reverse()
    return Lattice(dim, tuple(cols))


def _integer_kernel(columns, top):
    """Integer column elimination on the first `top` coordinates.

    Returns the bottom parts of the columns whose top part was eliminated to
    zero; with unit-extended input columns these span the integer kernel.
    """
    cols = [list(c) for c in columns]
    n = len(cols)
    fixed = 0
    for row in range(top):
        live = [j for j in range(fixed, n) if cols[j][row]]
        if not live:
            continue
        j0 = live[0]
        for j in live[1:]:
            while cols[j][row]:
                q = cols[j0][row] // cols[j][row]
                cols[j0] = [a - q * b for a, b in zip(cols[j0], cols[j])]
                cols[j0], cols[j] = cols[j], cols[j0]
        cols[fixed], cols[j0] = cols[j0], cols[fixed]
        fixed += 1
    return [tuple(c[top:]) for c in cols[fixed:]]


def _solve_rational(columns, target):
    """Solve sum_j a_j * columns[j] = target over Q.

    Returns the coefficient tuple, or None if the system is inconsistent.
    Columns are assumed linearly independent (canonical bases always are).
    """
    k = len(columns)
    if k == 0:
        return () if not any(target) else None
    d = len(target)
    aug = [[Fraction(columns[j][i]) for j in range(k)] + [Fraction(target[i])]
           for i in range(d)]
    row = 0
    piv_cols = []
    for col in range(k):
        pr = next((i for i in range(row, d) if aug[i][col] != 0), None)
        if pr is None:
            continue
        aug[row], aug[pr] = aug[pr], aug[row]
        for i in range(d):
            if i != row and aug[i][col] != 0:
                f = aug[i][col] / aug[row][col]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[row])]
        piv_cols.append(col)
        row += 1
    for i in range(row, d):
        if aug[i][k] != 0:
            return None
    coeffs = [Fraction(0)] * k
    for rr, col in enumerate(piv_cols):
        coeffs[col] = aug[rr][k] / aug[rr][col]
    return tuple(coeffs)


@dataclass(frozen=True)
class Lattice:
    """Subgroup of Z^dim given by canonical generating columns.

    Construct through hnf(); the raw constructor trusts that `basis` is
    already canonical.
    """

    dim: int
    basis: tuple

    @property
    def rank(self):
        return len(self.basis)

    @property
    def is_full_rank(self):
        return len(self.basis) == self.dim

    @property
    def pivots(self):
        """Diagonal pivots; full-rank lattices only."""
        if not self.is_full_rank:
            raise RankDeficientError("pivots are defined for full-rank lattices")
        return tuple(self.basis[i][i] for i in range(self.dim))

    def index(self):
        """Number of cosets: product of pivots, or INFINITE below full rank."""
        if not self.is_full_rank:
            return INFINITE
        n = 1
        for p in self.pivots:
            n *= p
        return n

    def reduce(self, v):
        """Canonical representative of v modulo this lattice (full rank only)."""
        if not self.is_full_rank:
            raise RankDeficientError("reduce requires a full-rank lattice")
        if len(v) != self.dim:
            raise ValueError(f"vector {v} does not have dimension {self.dim}")
        w = list(v)
        for i in range(self.dim - 1, -1, -1):
            q = w[i] // self.basis[i][i]
            if q:
                col = self.basis[i]
                for t in range(i + 1):
                    w[t] -= q * col[t]
        return tuple(w)

    def contains(self, v):
        if len(v) != self.dim:
            return False
        if self.is_full_rank:
            return not any(self.reduce(v))
        coeffs = _solve_rational(self.basis, tuple(v))
        return coeffs is not None and all(c.denominator == 1 for c in coeffs)

    def contains_lattice(self, other):
        return all(self.contains(c) for c in other.basis)

    def coefficients_of(self, v):
        """Integer coefficients expressing v in this basis, or None."""
        coeffs = _solve_rational(self.basis, tuple(v))
        if coeffs is None or any(c.denominator != 1 for c in coeffs):
            return None
        return tuple(int(c) for c in coeffs)

    def sum(self, other):
        self._check_dim(other)
        return hnf(self.dim, self.basis + other.basis)

    def intersect(self, other):
        self._check_dim(other)
        if not self.basis or not other.basis:
            return Lattice(self.dim, ())
        k1 = len(self.basis)
        m = k1 + len(other.basis)
        ext = []
        for j, c in enumerate(self.basis):
            ext.append(list(c) + [1 if t == j else 0 for t in range(m)])
        for j, c in enumerate(other.basis):
            ext.append([-x for x in c] + [1 if t == k1 + j else 0 for t in range(m)])
        kernel = _integer_kernel(ext, self.dim)
        gens = []
        for vec in kernel:
            gens.append(tuple(sum(self.basis[j][i] * vec[j] for j in range(k1))
                              for i in range(self.dim)))
        return hnf(self.dim, gens)

    def __add__(self, other):
        return self.sum(other)

    def __and__(self, other):
        return self.intersect(other)

    def quotient(self):
        """Fundamental domain of a full-rank lattice, residues in mixed-radix order."""
        if not self.is_full_rank:
            raise RankDeficientError("quotient requires a full-rank lattice")
        pivots = self.pivots
        total = self.index()
        residues = []
        for n in range(total):
            digits = []
            t = n
            for p in pivots:
                digits.append(t % p)
                t //= p
            residues.append(tuple(digits))
        return QuotientGroup(self, tuple(residues))

    def scale(self, r):
        """The sublattice r * L."""
        return hnf(self.dim, [vscale(r, c) for c in self.basis])

    def order_of(self, v):
        """Additive order of v in Z^dim / L (full rank only)."""
        r = self.reduce(v)
        if not any(r):
            return 1
        acc = r
        order = 1
        bound = self.index()
        while any(acc):
            acc = self.reduce(vadd(acc, r))
            order += 1
            if order > bound:
                raise AssertionError("order exceeded group size")
        return order

    def _check_dim(self, other):
        if self.dim != other.dim:
            raise ValueError("lattices live in different dimensions")

    @staticmethod
    def zero(dim):
        return Lattice(dim, ())

    @staticmethod
    def identity(dim):
        return Lattice(dim, tuple(tuple(1 if i == j else 0 for i in range(dim))
                                  for j in range(dim)))

    @staticmethod
    def diagonal(entries):
        dim = len(entries)
        if any(e <= 0 for e in entries):
            raise ValueError("diagonal entries must be positive")
        return Lattice(dim, tuple(tuple(entries[j] if i == j else 0 for i in range(dim))
                                  for j in range(dim)))

    def __repr__(self):
        return f"Lattice(dim={self.dim}, basis={list(map(list, self.basis))})"


class QuotientGroup:
    """Z^d / L for a full-rank L: ordered canonical residues with lookup."""

    def __init__(self, lattice, residues):
        self.lattice = lattice
        self.residues = residues
        self.index_of = {r: i for i, r in enumerate(residues)}

    def __len__(self):
        return len(self.residues)

    def __iter__(self):
        return iter(self.residues)

    def add(self, r1, r2):
        return self.lattice.reduce(vadd(r1, r2))

    def neg(self, r):
        return self.lattice.reduce(vneg(r))


def _divisors(n):
    return [d for d in range(1, n + 1) if n % d == 0]


def _ordered_factorizations(n, length):
    if length == 1:
        yield (n,)
        return
    for first in _divisors(n):
        for rest in _ordered_factorizations(n // first, length - 1):
            yield (first,) + rest


def enumerate_sublattices(dim, n):
    """All full-rank sublattices of Z^dim with index exactly n, canonically sorted.

    Enumerates canonical bases directly: positive pivots with product n on the
    diagonal, the entry at row i of a later column ranging over [0, pivot_i).
    """
    if n < 1:
        raise ValueError("index must be positive")
    out = []
    for pivots in _ordered_factorizations(n, dim):
        slots = [(i, j) for j in range(dim) for i in range(j)]
        ranges = [range(pivots[i]) for i, _ in slots]
        for fill in itertools.product(*ranges):
            cols = [[0] * dim for _ in range(dim)]
            for j in range(dim):
                cols[j][j] = pivots[j]
            for (i, j), val in zip(slots, fill):
                cols[j][i] = val
            out.append(Lattice(dim, tuple(tuple(c) for c in cols)))
    out.sort(key=lambda lat: lat.basis)
    return out


def enumerate_points(lat):
    """Lattice points by increasing sup-norm shell, lexicographic within a shell.

    The order is part of several contracts downstream; do not change it.
    """
    dim = lat.dim
    zero = (0,) * dim
    yield zero
    s = 1
    while True:
        for p in itertools.product(range(-s, s + 1), repeat=dim):
            if max(abs(a) for a in p) == s and lat.contains(p):
                yield p
        s += 1


@dataclass(frozen=True)
class PeriodicSet:
    """An L-periodic subset of Z^d: a full-rank lattice plus member residues."""

    lattice: Lattice
    members: frozenset

    @staticmethod
    def make(lattice, vectors):
        if not lattice.is_full_rank:
            raise RankDeficientError("a periodic set needs a full-rank lattice")
        return PeriodicSet(lattice, frozenset(lattice.reduce(v) for v in vectors))

    @property
    def dim(self):
        return self.lattice.dim

    @property
    def sorted_members(self):
        return tuple(sorted(self.members))

    def contains(self, v):
        return self.lattice.reduce(v) in self.members

    def translate(self, v):
        return PeriodicSet(self.lattice,
                           frozenset(self.lattice.reduce(vadd(m, v)) for m in self.members))

    def density(self):
        return Fraction(len(self.members), self.lattice.index())

    def refine(self, sub):
        """Re-present on a finer full-rank lattice sub (sub must lie inside lattice)."""
        if not self.lattice.contains_lattice(sub):
            raise ValueError("refinement lattice is not contained in the current one")
        members = frozenset(r for r in sub.quotient() if self.contains(r))
        return PeriodicSet(sub, members)

    def on_stabilizer(self):
        """Canonical presentation on the full stabilizer lattice."""
        stab = stabilizer(self)
        members = frozenset(stab.reduce(m) for m in self.members)
        return PeriodicSet(stab, members)

    def same_set(self, other):
        """Equality as subsets of Z^d, regardless of presentation lattice."""
        if self.dim != other.dim:
            return False
        common = self.lattice.intersect(other.lattice)
        return self.refine(common).members == other.refine(common).members

    def __repr__(self):
        return f"PeriodicSet({self.lattice!r}, members={self.sorted_members})"


def stabilizer(aset):
    """Full stabilizer {v : A + v = A} of a periodic set, as a canonical Lattice.

    Tests which residue shifts permute the members, then sums the found shifts
    with the presentation lattice.
    """
    lat = aset.lattice
    gens = list(lat.basis)
    members = aset.members
    for r in lat.quotient():
        if any(r) and all(lat.reduce(vadd(m, r)) in members for m in members):
            gens.append(r)
    return hnf(lat.dim, gens)
