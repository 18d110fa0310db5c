"""The chain decomposition of a co-tile function.

If 1_F * f = 1 then the same holds for every dilation rF with r = 1 modulo a
primorial q, and averaging f over arithmetic progressions of dilations
produces functions phi indexed by chains of tile points.  The phi satisfy four
exact identities: a recursion peeling off one tile at a time, reconstruction
of f at every depth, invariance under q times each chain vector, and the
original tiling equations.  For periodic f every averaging limit collapses to
a finite exact average, so the whole tree lives in rational arithmetic.
"""

from tilekit import (
    Lattice,
    PeriodicSet,
    Tile,
    TileTuple,
    build_decomposition,
    compute_q,
    dilation_check,
    indicator,
    psi_by_span,
    span_classes,
    verify_decomposition,
)
from tilekit.tiles import PeriodicRationalFunction

# Warm-up in one dimension: F = {0,1}, f the indicator of the even numbers.
f01 = TileTuple.make([Tile.make(1, [(0,), (1,)])])
evens = PeriodicRationalFunction.from_callable(
    Lattice.diagonal([2]), lambda r: 1 if r[0] == 0 else 0)
tree = build_decomposition(f01, evens)
print("q =", tree.q)
phi = tree.node(((1,),))
print("phi_(1) values:", {r: str(v) for r, v in sorted(phi.values.items())})
print("f = 1 - phi_(1):", evens == 1 - phi)
print("identities:", verify_decomposition(tree).ok)

# The box pair in Z^3 at depth two: 3 + 9 nodes, all identities exact.
f1 = Tile.make(3, [(0, 0, 0), (1, 0, 0), (0, 1, 0), (1, 1, 0)])
f2 = Tile.make(3, [(0, 0, 0), (1, 0, 1), (0, 1, 1), (1, 1, 1)])
pair = TileTuple.make([f1, f2])
a = PeriodicSet.make(Lattice.diagonal([2, 2, 1]), [(0, 0, 0)])
fn = indicator(a)
print("\nbox pair: q =", compute_q(fn, f1.size))
tree2 = build_decomposition(pair, fn)
report = verify_decomposition(tree2)
print(f"nodes: {len(tree2.nodes)}, identities: {report.ok}")

# Dilation in action: scaling the flat box by 7, 13, 19 preserves the tiling.
for r in (7, 13, 19, 2):
    print(f"dilation by {r:2d} preserves the equation:",
          dilation_check(f1, fn, 1, r))

# Depth d-1 nodes grouped by the hyperplane their chain spans: the grouped
# sums inherit rank-(d-1) stabilizers inside their hyperplanes.
classes = span_classes(pair)
psi = psi_by_span(tree2, classes)
print(f"\nhyperplanes spanned by chains: {len(psi)}")
for space, fn_v in sorted(psi.items(), key=lambda kv: kv[0].basis)[:3]:
    rows = [tuple(str(x) for x in row) for row in space.basis]
    print("  hyperplane", rows, "-> stabilizer rank",
          fn_v.stabilizer().rank)

# The level variant: two tiles solving 1_F * f = 2 with a 0/2-valued f.
doubled = PeriodicRationalFunction.from_callable(
    Lattice.diagonal([2]), lambda r: 2 if r[0] == 0 else 0)
level_pair = TileTuple.make([Tile.make(1, [(0,), (1,)]), Tile.make(1, [(0,), (3,)])])
tree3 = build_decomposition(level_pair, doubled, levels=[2, 2])
print("\nlevel-2 tree identities:", verify_decomposition(tree3).ok)
