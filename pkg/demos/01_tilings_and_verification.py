"""Tiles, co-tiles, and exact verification.

A finite set F tiles Z^d with co-tile A when every point has exactly one
representation a + f.  Convolving the indicator of F with the indicator of A
counts representations, so verification is a single exact convolution over a
fundamental domain.
"""

from fractions import Fraction

from tilekit import (
    Lattice,
    PeriodicSet,
    Tile,
    TileTuple,
    indicator,
    is_joint_cotile,
    is_level_tiling,
    is_tiling,
    mean,
)
from tilekit.tiles import PeriodicRationalFunction

# Two box tiles in Z^3: one flat, one with its far corner lifted.
f1 = Tile.make(3, [(0, 0, 0), (1, 0, 0), (0, 1, 0), (1, 1, 0)])
f2 = Tile.make(3, [(0, 0, 0), (1, 0, 1), (0, 1, 1), (1, 1, 1)])
pair = TileTuple.make([f1, f2])

# The subgroup 2Z x 2Z x Z, presented as a periodic set.
a = PeriodicSet.make(Lattice.diagonal([2, 2, 1]), [(0, 0, 0)])

print("flat box tiles with A:  ", bool(is_tiling(f1, a)))
print("lifted box tiles with A:", bool(is_tiling(f2, a)))
print("joint co-tile:          ", bool(is_joint_cotile(pair, a)))

# The co-tile's density is forced: 1/|F| exactly.
print("density of A:", mean(indicator(a)), "= 1 /", f1.size)

# A defective candidate reports where the covering count goes wrong.
bad = PeriodicSet.make(Lattice.diagonal([4]), [(0,), (1,)])
report = is_tiling(Tile.make(1, [(0,), (1,)]), bad)
print("\ndefective 1-d candidate:", bool(report))
for residue, value in report.defects:
    print(f"  residue {residue} is covered {value} times")

# Verification extends to rational-valued functions and other levels:
# an integer-valued function can solve the tiling equation even when no set does.
six = Tile.make(1, [(0,), (1,), (3,), (4,), (6,), (7,)])
fn = PeriodicRationalFunction.from_callable(
    Lattice.diagonal([18]),
    lambda r: (1 if r[0] % 2 == 0 else 0) - (1 if r[0] % 9 in (0, 1, 2) else 0))
print("\nsix-point block, signed function, level 1:",
      bool(is_level_tiling(six, fn, 1)))
print("its mean:", mean(fn), "= 1 /", six.size)

# Constant functions solve level equations trivially.
half = PeriodicRationalFunction.constant(Lattice.identity(1), Fraction(1, 2))
print("constant 1/2 against {0,1} at level 1:",
      bool(is_level_tiling(Tile.make(1, [(0,), (1,)]), half, 1)))
