import json

from tilekit import jsonio
from tilekit.cli import main
from tilekit.lattice import Lattice, PeriodicSet
from tilekit.tiles import Tile
from conftest import FIXTURES


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def fx(name):
    return str(FIXTURES / name)


def test_verify_box_pair(capsys):
    code, out, _ = run(capsys, "verify",
                       "--tiles", fx("box_pair_z3_tiles.json"),
                       "--cotile", fx("box_pair_z3_cotile.json"))
    assert code == 0
    assert "holds" in out


def test_verify_level(capsys):
    code, out, _ = run(capsys, "verify", "--json",
                       "--tiles", fx("six_block_tile.json"),
                       "--cotile", fx("six_block_fn.json"),
                       "--level", "1")
    assert code == 0
    doc = json.loads(out)
    assert doc["ok"] is True and doc["schema"] == "tilekit/1"


def test_verify_false_exit_code(capsys, tmp_path):
    bad = PeriodicSet.make(Lattice.diagonal([2, 2, 1]), [(0, 0, 0), (1, 0, 0)])
    path = tmp_path / "bad.json"
    jsonio.dump(bad, path)
    code, out, _ = run(capsys, "verify", "--json",
                       "--tiles", fx("box_pair_z3_tiles.json"),
                       "--cotile", str(path))
    assert code == 3
    doc = json.loads(out)
    assert doc["ok"] is False and doc["defects"]


def test_solve_z_no_tiling(capsys):
    code, out, _ = run(capsys, "solve-z", "--tile", fx("six_block_tile.json"))
    assert code == 3
    assert "NO-TILING" in out


def test_solve_z_round_trip(capsys, tmp_path):
    tile = Tile.make(1, [(0,), (2,)])
    path = tmp_path / "tile.json"
    jsonio.dump(tile, path)
    code, out, _ = run(capsys, "--json", "solve-z", "--tile", str(path))
    assert code == 0
    doc = json.loads(out)
    cot = jsonio.from_document(doc["cotile"])
    cot_path = tmp_path / "cot.json"
    jsonio.dump(cot, cot_path)
    code2, out2, _ = run(capsys, "verify", "--tiles", str(path), "--cotile", str(cot_path))
    assert code2 == 0


def test_solve_with_bound(capsys):
    code, out, _ = run(capsys, "--json", "solve",
                       "--tiles", fx("box_pair_z3_tiles.json"),
                       "--max-index", "4", "--all")
    assert code == 0
    doc = json.loads(out)
    assert len(doc["solutions"]) >= 4
    for sol in doc["solutions"]:
        assert jsonio.from_document(sol["lattice"]).is_full_rank


def test_solve_requires_max_index(capsys):
    code, _, err = run(capsys, "solve", "--tiles", fx("box_pair_z3_tiles.json"))
    assert code == 1
    assert "max-index" in err


def test_solve_exhausted_exit_code(capsys):
    code, _, _ = run(capsys, "solve", "--tiles", fx("six_block_tile.json"),
                     "--max-index", "24")
    assert code == 3


def test_independent_and_star(capsys):
    code, out, _ = run(capsys, "--json", "independent",
                       "--tiles", fx("box_pair_z3_tiles.json"))
    assert code == 0 and json.loads(out)["independent"] is True
    code, out, _ = run(capsys, "--json", "star",
                       "--tiles", fx("box_pair_z3_tiles.json"))
    assert code == 0 and json.loads(out)["property_star"] is True


def test_decompose_command(capsys):
    code, out, _ = run(capsys, "--json", "decompose",
                       "--tiles", fx("box_pair_z3_tiles.json"),
                       "--cotile", fx("box_pair_z3_cotile.json"))
    assert code == 0
    doc = json.loads(out)
    assert doc["q"] == 6
    assert doc["report"]["ok"] is True
    assert len(doc["nodes"]) == 12


def test_dilate_and_check(capsys):
    code, out, _ = run(capsys, "--json", "dilate",
                       "--tile", fx("box_flat_z3_tile.json"), "-r", "7",
                       "--cotile", fx("box_pair_z3_cotile.json"))
    assert code == 0 and json.loads(out)["ok"] is True
    code, _, _ = run(capsys, "dilate", "--tile", fx("six_block_tile.json"), "-r", "3")
    assert code == 0


def test_brothers_command(capsys):
    code, out, _ = run(capsys, "--json", "brothers",
                       "--tile", fx("domino_z2_tile.json"),
                       "--cotile", fx("domino_z2_cotile.json"))
    assert code == 0
    doc = json.loads(out)
    assert all(doc["verification"].values())
    brothers = jsonio.from_document(doc["brothers"])
    assert len(brothers) == 1


def test_zp_command(capsys):
    code, out, _ = run(capsys, "--json", "zp", "--p", "3",
                       "--tile", fx("full_fiber_tile_p3.json"),
                       "--cotile", fx("full_fiber_cotile_p3.json"))
    assert code == 0
    doc = json.loads(out)
    assert doc["class"] == "full_fiber"
    assert doc["verdict"]["periodic"] is True
    code, out, _ = run(capsys, "--json", "zp", "--p", "2",
                       "--tile", fx("generic_tile_p2.json"),
                       "--cotile", fx("generic_cotile_p2.json"))
    assert code == 0 and json.loads(out)["class"] == "generic"


def test_lift_command(capsys):
    code, out, _ = run(capsys, "--json", "lift",
                       "--tiles", fx("domino_z2_tile.json"),
                       "--cotile", fx("domino_z2_cotile.json"),
                       "--gamma0", fx("vertical_axis_z2.json"))
    assert code == 0
    cot = jsonio.from_document(json.loads(out)["cotile"])
    assert cot.lattice.is_full_rank


def test_piecewise_command(capsys):
    code, out, _ = run(capsys, "--json", "piecewise",
                       "--tiles", fx("domino_z2_tile.json"),
                       "--pieces", fx("even_cols_even_rows.json"),
                       fx("even_cols_odd_rows.json"),
                       "--stabilizers", fx("vertical_two_z2.json"),
                       fx("horizontal_two_z2.json"))
    assert code == 0
    cot = jsonio.from_document(json.loads(out)["cotile"])
    assert cot.lattice.is_full_rank


def test_stabilizer_command(capsys):
    code, out, _ = run(capsys, "--json", "stabilizer",
                       "--cotile", fx("box_pair_z3_cotile.json"))
    assert code == 0
    stab = jsonio.from_document(json.loads(out)["stabilizer"])
    assert stab == Lattice.diagonal([2, 2, 1])


def test_render_ascii(capsys):
    code, out, _ = run(capsys, "verify",
                       "--tiles", fx("domino_z2_tile.json"),
                       "--cotile", fx("domino_z2_cotile.json"),
                       "--render", "ascii", "--window", "3")
    assert code == 0
    lines = out.strip().splitlines()[1:]
    assert len(lines) == 7 and all(len(l) == 7 for l in lines)


def test_render_svg(capsys):
    code, out, _ = run(capsys, "verify",
                       "--tiles", fx("domino_z2_tile.json"),
                       "--cotile", fx("domino_z2_cotile.json"),
                       "--render", "svg", "--window", "2")
    assert code == 0
    assert "<svg" in out


def test_malformed_json_is_usage_error(capsys, tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{not json")
    code, _, err = run(capsys, "verify", "--tiles", str(path),
                       "--cotile", fx("box_pair_z3_cotile.json"))
    assert code == 1
    assert "line" in err


def test_dimension_mismatch_is_contract_error(capsys):
    code, _, err = run(capsys, "verify",
                       "--tiles", fx("six_block_tile.json"),
                       "--cotile", fx("box_pair_z3_cotile.json"))
    assert code == 2


def test_usage_error_exit_code(capsys):
    assert main(["no-such-command"]) == 1
    assert main([]) == 1
