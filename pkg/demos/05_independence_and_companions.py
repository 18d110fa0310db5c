"""Independence, span uniqueness, and companion tiles.

A tuple of tiles is independent when every selection of one nonzero point per
tile is linearly independent; a (d-1)-tuple is span-unique when equal spans
force equal selections in the first d-2 slots.  Conversely, any tile with a
periodic co-tile acquires d-1 companions: shift each point by a stabilizer
vector chosen to dodge finitely many forced hyperplanes, and the resulting
tuple is independent and span-unique, with the same co-tile.
"""

from tilekit import (
    Lattice,
    PeriodicSet,
    Tile,
    TileTuple,
    brother_tiles,
    equiv_condition,
    has_property_star,
    is_independent_tuple,
    is_joint_cotile,
    span_classes,
)

f1 = Tile.make(3, [(0, 0, 0), (1, 0, 0), (0, 1, 0), (1, 1, 0)])
f2 = Tile.make(3, [(0, 0, 0), (1, 0, 1), (0, 1, 1), (1, 1, 1)])
pair = TileTuple.make([f1, f2])

print("box pair independent:", bool(is_independent_tuple(pair)))
print("box pair span-unique:", bool(has_property_star(pair)))

classes = span_classes(pair)
print(f"the 9 selections span {len(classes)} distinct hyperplanes; class sizes",
      sorted(len(t) for _, t in classes))

# A failure case: two selections span the xy-plane with different first picks.
g1 = Tile.make(3, [(0, 0, 0), (1, 0, 0), (0, 1, 0)])
g2 = Tile.make(3, [(0, 0, 0), (1, 1, 0)])
res = has_property_star(TileTuple.make([g1, g2]))
print("\ndegenerate pair span-unique:", res.holds)
print("  witness selections:", res.witness)

# Companion construction: the flat box with co-tile 2Z x 2Z x Z gains two
# companions; all three postconditions are re-verified inside the call.
a = PeriodicSet.make(Lattice.diagonal([2, 2, 1]), [(0, 0, 0)])
brothers = brother_tiles(f1, a)
print("\ncompanions of the flat box:")
for b in brothers:
    print("  ", list(b.sorted_points))
full = TileTuple.make(list(brothers) + [f1])
print("joint co-tile:", bool(is_joint_cotile(full, a)))
print("independent:  ", bool(is_independent_tuple(full)))
print("span-unique:  ", bool(has_property_star(TileTuple.make(list(brothers)[:1] + [f1]))))

# Round trip: tiles-periodically certificate in one call.
domino = Tile.make(2, [(0, 0), (1, 0)])
cert = equiv_condition(domino, 4)
print("\ndomino certificate co-tile:", list(cert.cotile.sorted_members),
      "on", [list(c) for c in cert.cotile.lattice.basis])
print("certificate tuple span-unique:", bool(has_property_star(cert.star_tuple)))
