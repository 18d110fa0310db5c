import json
from fractions import Fraction

from tilekit import jsonio
from tilekit.lattice import Lattice, hnf
from tilekit.tiles import PeriodicRationalFunction, WeightedTile
from tilekit.torsion import MixedPeriodicSet, MixedTile
from conftest import box_cotile, box_pair, six_block_fn


def _round_trip(obj):
    doc = jsonio.to_document(obj)
    assert doc["schema"] == "tilekit/1"
    back = jsonio.from_document(json.loads(json.dumps(doc)))
    return back


def test_round_trip_all_kinds():
    objs = [
        Lattice.diagonal([2, 2, 1]),
        hnf(2, [(2, 0), (1, 3)]),
        box_cotile(),
        box_pair()[0],
        box_pair(),
        WeightedTile.make(1, {(0,): 1, (4,): -2}),
        six_block_fn(),
        MixedTile.make(3, [(0, 0), (0, 1), (0, 2)]),
        MixedPeriodicSet.make(3, 4, [(0, 1), (2, 2)]),
    ]
    for obj in objs:
        assert _round_trip(obj) == obj


def test_kind_inference_without_discriminator():
    doc = jsonio.to_document(box_cotile())
    del doc["kind"]
    assert jsonio.from_document(doc) == box_cotile()
    doc = jsonio.to_document(box_pair()[0])
    del doc["kind"]
    assert jsonio.from_document(doc) == box_pair()[0]


def test_non_canonical_input_is_canonicalized():
    doc = {"kind": "lattice", "dim": 2, "basis": [[1, 3], [2, 0]]}
    assert jsonio.from_document(doc) == hnf(2, [(2, 0), (1, 3)])
    doc = {"kind": "periodic_set",
           "lattice": {"kind": "lattice", "dim": 1, "basis": [[2]]},
           "members": [[5]]}
    assert jsonio.from_document(doc).members == frozenset({(1,)})


def test_rational_encoding():
    fn = PeriodicRationalFunction.make(
        Lattice.diagonal([2]), {(0,): Fraction(1, 2), (1,): Fraction(-3)})
    doc = jsonio.to_document(fn)
    values = dict((tuple(r), v) for r, v in doc["values"])
    assert values[(0,)] == "1/2"
    assert values[(1,)] == -3
    assert _round_trip(fn) == fn


def test_comment_field_passthrough(tmp_path):
    path = tmp_path / "obj.json"
    jsonio.dump(box_cotile(), path, comment="lattice co-tile fixture")
    raw = json.loads(path.read_text())
    assert raw["comment"] == "lattice co-tile fixture"
    assert jsonio.load(path) == box_cotile()


def test_fixture_corpus_loads(fixtures_dir):
    for path in sorted(fixtures_dir.glob("*.json")):
        obj = jsonio.load(path)
        assert obj is not None, path
