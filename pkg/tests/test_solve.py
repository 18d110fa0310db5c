import random

import pytest

from tilekit.errors import InputContractError, NotACotileError, NotAPartitionError
from tilekit.lattice import Lattice, PeriodicSet, enumerate_sublattices, hnf, stabilizer
from tilekit.solve import (
    AllDPeriodic,
    BlockGraph,
    SearchProblem,
    brute_force_quotient,
    common_stabilizer,
    independent_cotile_index_bound,
    lift_to_full_period,
    piecewise_to_periodic,
    search_periodic_cotile,
    search_Z_cotile,
    solve_quotient,
)
from tilekit.tiles import Tile, TileTuple
from tilekit import verify
from conftest import box_cotile, box_pair, six_block


def test_solve_quotient_box_pair_all():
    tiles = box_pair()
    lat = Lattice.diagonal([2, 2, 1])
    sols = solve_quotient(tiles, lat, mode="all")
    assert len(sols) == 4
    members = {s.sorted_members for s in sols}
    assert members == {((0, 0, 0),), ((1, 0, 0),), ((0, 1, 0),), ((1, 1, 0),)}
    for s in sols:
        assert verify.is_joint_cotile(tiles, s).ok
    # completeness against plain subset enumeration (2^4 subsets)
    oracle = brute_force_quotient(tiles, lat)
    assert [s.members for s in sols] == [s.members for s in oracle]


def test_solve_quotient_unit_pair_in_z():
    tiles = TileTuple.make([Tile.make(1, [(0,), (1,)])])
    sols = solve_quotient(tiles, Lattice.diagonal([2]))
    assert [s.sorted_members for s in sols] == [((0,),), ((1,),)]


def test_solve_quotient_injectivity_infeasible():
    tiles = TileTuple.make([six_block()])
    problem = SearchProblem.build(tiles, Lattice.diagonal([6]))
    assert not problem.feasible and not all(problem.injective)
    assert solve_quotient(tiles, Lattice.diagonal([6])) == []


def test_solve_quotient_first_mode():
    tiles = box_pair()
    first = solve_quotient(tiles, Lattice.diagonal([2, 2, 1]), mode="first")
    assert len(first) == 1
    assert verify.is_joint_cotile(tiles, first[0]).ok


def test_solve_matches_brute_force_on_corpus():
    rng = random.Random(23)
    pairs = []
    f01 = Tile.make(1, [(0,), (1,)])
    f03 = Tile.make(1, [(0,), (3,)])
    f012 = Tile.make(1, [(0,), (1,), (2,)])
    for n in (2, 4, 6, 8, 12):
        pairs.append((TileTuple.make([f01]), Lattice.diagonal([n])))
    for n in (3, 6, 9):
        pairs.append((TileTuple.make([f012]), Lattice.diagonal([n])))
    pairs.append((TileTuple.make([f01, f03]), Lattice.diagonal([4])))
    for lat in enumerate_sublattices(2, 4)[:5]:
        pairs.append((TileTuple.make([Tile.make(2, [(0, 0), (1, 0)]),
                                      Tile.make(2, [(0, 0), (0, 1)])]), lat))
    for tiles, lat in pairs:
        assert ([s.members for s in solve_quotient(tiles, lat)]
                == [s.members for s in brute_force_quotient(tiles, lat)])


def test_solve_matches_brute_force_on_random_instances():
    # random tiles against random lattices, solvable or not
    rng = random.Random(77)
    for trial in range(60):
        d = rng.choice([1, 2])
        if d == 1:
            lat = Lattice.diagonal([rng.randrange(2, 13)])
        else:
            n = rng.randrange(2, 9)
            lat = rng.choice(enumerate_sublattices(2, n))
        k = rng.choice([1, 1, 2])
        tiles = []
        for _ in range(k):
            size = rng.randrange(1, 5)
            pts = {(0,) * d}
            while len(pts) < size:
                pts.add(tuple(rng.randrange(-4, 5) for _ in range(d)))
            tiles.append(Tile.make(d, pts))
        tup = TileTuple.make(tiles)
        import warnings
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            fast = [s.members for s in solve_quotient(tup, lat, mode="all")]
            slow = [s.members for s in brute_force_quotient(tup, lat)]
        assert fast == slow, (tup, lat)


def test_search_periodic_cotile_box_pair():
    tiles = box_pair()
    found = search_periodic_cotile(tiles, 4)
    assert found
    for lat, aset in found:
        assert verify.is_joint_cotile(tiles, aset).ok
        assert lat.rank == 3
        assert stabilizer(aset) == lat
    # the canonical co-tile is among them
    assert any(aset.same_set(box_cotile()) for _, aset in found)


def test_search_periodic_cotile_origin_tile():
    tiles = TileTuple.make([Tile.make(2, [(0, 0)])])
    found = search_periodic_cotile(tiles, 1)
    assert len(found) == 1
    assert found[0][1].same_set(PeriodicSet.make(Lattice.identity(2), [(0, 0)]))


def test_search_periodic_cotile_deduplicates():
    tiles = TileTuple.make([Tile.make(1, [(0,), (1,)])])
    found = search_periodic_cotile(tiles, 8)
    # 2Z and 1+2Z, regardless of how many presentation lattices produced them
    assert len(found) == 2
    assert all(lat == Lattice.diagonal([2]) for lat, _ in found)


def test_search_periodic_cotile_threads_match():
    tiles = box_pair()
    serial = search_periodic_cotile(tiles, 4)
    parallel = search_periodic_cotile(tiles, 4, threads=4)
    assert [(l.basis, a.sorted_members) for l, a in serial] == \
        [(l.basis, a.sorted_members) for l, a in parallel]


def test_search_Z_cotile_six_block_no_tiling():
    res = search_Z_cotile(six_block())
    assert not res.tiles
    assert res.period_bound == 256
    assert all(p % 6 == 0 for p in res.periods_checked)


def test_search_Z_cotile_small_cases():
    res = search_Z_cotile(Tile.make(1, [(0,)]))
    assert res.tiles and res.cotile.lattice.index() == 1
    res = search_Z_cotile(Tile.make(1, [(0,), (2,)]))
    assert res.tiles
    assert verify.is_tiling(Tile.make(1, [(0,), (2,)]), res.cotile).ok


def _cross_validate_z(diams):
    import itertools
    for diam in diams:
        for inner in itertools.chain.from_iterable(
                itertools.combinations(range(1, diam), k) for k in range(diam)):
            tile = Tile.make(1, [(0,)] + [(i,) for i in inner] + [(diam,)])
            direct = search_Z_cotile(tile)
            via = search_periodic_cotile(TileTuple.make([tile]),
                                         2 ** (diam + 1), mode="first")
            assert direct.tiles == bool(via), tile
            if direct.tiles:
                assert verify.is_tiling(tile, direct.cotile).ok


def test_search_Z_agrees_with_lattice_search():
    # every normalized tile of diameter at most 6
    _cross_validate_z(range(1, 7))


@pytest.mark.slow
def test_search_Z_agrees_with_lattice_search_full_bound():
    # completes the cross-validation up to diameter 8 (about 90 seconds)
    _cross_validate_z((7, 8))


def test_block_graph_cycle():
    graph = BlockGraph.build((0, 1), 2, lambda w: w[0] != w[1])
    cycle = graph.find_cycle()
    assert cycle is not None
    letters = graph.cycle_letters()
    assert sorted(letters) == [0, 1]
    empty = BlockGraph.build((0, 1), 2, lambda w: False)
    assert empty.find_cycle() is None


def test_lift_striped_cotile():
    tiles = TileTuple.make([Tile.make(2, [(0, 0), (1, 0)])])
    striped = PeriodicSet.make(Lattice.diagonal([2, 1]), [(0, 0)])
    gamma0 = hnf(2, [(0, 1)])
    lifted = lift_to_full_period(tiles, gamma0, striped)
    assert stabilizer(lifted).rank == 2
    assert verify.is_joint_cotile(tiles, lifted).ok


def test_lift_already_periodic_fixture():
    tiles = TileTuple.make([Tile.make(2, [(0, 0), (0, 1)])])
    aset = PeriodicSet.make(Lattice.diagonal([1, 2]), [(0, 0)])
    lifted = lift_to_full_period(tiles, hnf(2, [(1, 0)]), aset)
    assert stabilizer(lifted).rank == 2
    assert verify.is_joint_cotile(tiles, lifted).ok


def test_lift_degenerate_dimension_one():
    tiles = TileTuple.make([Tile.make(1, [(0,), (1,)])])
    aset = PeriodicSet.make(Lattice.diagonal([2]), [(0,)])
    lifted = lift_to_full_period(tiles, Lattice.zero(1), aset)
    assert verify.is_joint_cotile(tiles, lifted).ok


def test_lift_three_dimensional():
    tiles = box_pair()
    aset = box_cotile()
    gamma0 = hnf(3, [(2, 0, 0), (0, 2, 0)])
    out = lift_to_full_period(tiles, gamma0, aset)
    assert stabilizer(out).rank == 3
    assert verify.is_joint_cotile(tiles, out).ok


def test_lift_contract_checks():
    tiles = TileTuple.make([Tile.make(2, [(0, 0), (1, 0)])])
    striped = PeriodicSet.make(Lattice.diagonal([2, 1]), [(0, 0)])
    with pytest.raises(InputContractError):
        lift_to_full_period(tiles, Lattice.identity(2), striped)  # rank 2, not d-1
    with pytest.raises(InputContractError):
        # (1,0) does not stabilize the striped set
        lift_to_full_period(tiles, hnf(2, [(1, 0)]), striped)
    bad = PeriodicSet.make(Lattice.diagonal([2, 1]), [(0, 0), (1, 0)])
    with pytest.raises(NotACotileError):
        lift_to_full_period(tiles, hnf(2, [(0, 1)]), bad)


def _domino_setup():
    tiles = TileTuple.make([Tile.make(2, [(0, 0), (1, 0)])])
    a1 = PeriodicSet.make(Lattice.diagonal([2, 2]), [(0, 0)])
    a2 = PeriodicSet.make(Lattice.diagonal([2, 2]), [(0, 1)])
    return tiles, a1, a2


def test_piecewise_disjoint_hyperplanes():
    tiles, a1, a2 = _domino_setup()
    declared = [hnf(2, [(0, 2)]), hnf(2, [(2, 0)])]
    out = piecewise_to_periodic(tiles, [a1, a2], declared_stabilizers=declared)
    assert verify.is_joint_cotile(tiles, out).ok
    assert stabilizer(out).rank == 2


def test_piecewise_merging_route():
    tiles, a1, a2 = _domino_setup()
    declared = [hnf(2, [(0, 2)]), hnf(2, [(0, 2)])]
    out = piecewise_to_periodic(tiles, [a1, a2], declared_stabilizers=declared)
    assert verify.is_joint_cotile(tiles, out).ok
    assert stabilizer(out).rank == 2


def test_piecewise_default_route_returns_canonical_union():
    tiles, a1, a2 = _domino_setup()
    out = piecewise_to_periodic(tiles, [a1, a2])
    assert out.same_set(PeriodicSet.make(Lattice.diagonal([2, 1]), [(0, 0)]))


def test_piecewise_single_periodic_piece_unchanged():
    tiles, _, _ = _domino_setup()
    aset = PeriodicSet.make(Lattice.diagonal([2, 1]), [(0, 0)])
    assert piecewise_to_periodic(tiles, [aset]).same_set(aset)


def test_piecewise_rejects_non_cotile_and_overlap():
    tiles, a1, a2 = _domino_setup()
    with pytest.raises(NotACotileError):
        piecewise_to_periodic(tiles, [a1])
    with pytest.raises(InputContractError):
        piecewise_to_periodic(tiles, [a1, a1.translate((0, 0))])


def test_common_stabilizer_column_partition():
    evens = PeriodicSet.make(Lattice.diagonal([2, 1]), [(0, 0)])
    odds = PeriodicSet.make(Lattice.diagonal([2, 1]), [(1, 0)])
    verdict = common_stabilizer([evens, odds])
    assert isinstance(verdict, AllDPeriodic)
    # the carried intersection genuinely stabilizes every piece
    for piece in (evens, odds):
        for col in verdict.common.basis:
            assert piece.translate(col).members == piece.members


def test_common_stabilizer_single_full_piece():
    whole = PeriodicSet.make(Lattice.identity(2), [(0, 0)])
    assert isinstance(common_stabilizer([whole]), AllDPeriodic)


def test_common_stabilizer_rejects_non_partition():
    evens = PeriodicSet.make(Lattice.diagonal([2, 1]), [(0, 0)])
    with pytest.raises(NotAPartitionError):
        common_stabilizer([evens])
    with pytest.raises(NotAPartitionError):
        common_stabilizer([evens, evens])


def test_independent_index_bound_is_sufficient_for_unit_pair():
    tiles = TileTuple.make([Tile.make(2, [(0, 0), (1, 0)]),
                            Tile.make(2, [(0, 0), (0, 1)])])
    bound = independent_cotile_index_bound(tiles)
    assert bound == 4
    found = search_periodic_cotile(tiles, bound)
    assert found
    for lat, aset in found:
        assert lat.rank == 2
        assert verify.is_joint_cotile(tiles, aset).ok
    # searching beyond the bound discovers nothing new
    beyond = search_periodic_cotile(tiles, 2 * bound)
    assert {(l.basis, a.sorted_members) for l, a in found} == \
        {(l.basis, a.sorted_members) for l, a in beyond}
