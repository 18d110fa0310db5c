"""Command-line driver.

Subcommands: verify, solve, solve-z, independent, star, decompose, dilate,
brothers, zp, lift, piecewise, stabilizer.  Exit codes: 0 success or verdict
true, 1 usage or malformed input, 2 input contract violation, 3 search
exhausted or verdict false.  With --json all machine output is a single JSON
document on stdout; diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import jsonio, verify
from .analysis import has_property_star, is_independent_tuple
from .construct import brother_tiles
from .decompose import build_decomposition, dilation_check, verify_decomposition
from .errors import InputContractError, TilekitError
from .lattice import Lattice, PeriodicSet, stabilizer, vsub
from .solve import (lift_to_full_period, piecewise_to_periodic, search_periodic_cotile,
                    search_Z_cotile)
from .tiles import PeriodicRationalFunction, Tile, TileTuple, dilate as dilate_tile, indicator
from .torsion import MixedPeriodicSet, classify, cotile_conclusion

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_CONTRACT = 2
EXIT_FALSE = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


class _UsageError(Exception):
    pass


def _load(path):
    try:
        return jsonio.load(path)
    except FileNotFoundError:
        raise _UsageError(f"no such file: {path}")
    except json.JSONDecodeError as exc:
        raise _UsageError(f"malformed JSON in {path} at line {exc.lineno}, column {exc.colno}")
    except (ValueError, KeyError, TypeError) as exc:
        raise _UsageError(f"cannot parse {path}: {exc}")


def _as_tuple(obj):
    if isinstance(obj, TileTuple):
        return obj
    if isinstance(obj, Tile):
        return TileTuple.make([obj])
    raise _UsageError("expected a tile or tile tuple document")


def _emit(args, doc, text_lines):
    if args.json:
        doc.setdefault("schema", jsonio.SCHEMA)
        print(json.dumps(doc, indent=2))
    else:
        for line in text_lines:
            print(line)


def _defects_json(report):
    return [{"residue": list(r), "value": str(v)} for r, v in report.defects]


# ---------------------------------------------------------------------------
# rendering
# ---------------------------------------------------------------------------

_GLYPHS = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789"


def _translate_of(x, tile, aset):
    for f in sorted(tile.points):
        a = vsub(x, f)
        if aset.contains(a):
            return a
    return None


def _render_ascii(tile, aset, window):
    labels = {}

    def glyph(a):
        if a not in labels:
            labels[a] = _GLYPHS[len(labels) % len(_GLYPHS)]
        return labels[a]

    if tile.dim == 1:
        row = []
        for x in range(-window, window + 1):
            a = _translate_of((x,), tile, aset)
            row.append(glyph(a) if a is not None else "?")
        return ["".join(row)]
    if tile.dim == 2:
        lines = []
        for y in range(window, -window - 1, -1):
            row = []
            for x in range(-window, window + 1):
                a = _translate_of((x, y), tile, aset)
                row.append(glyph(a) if a is not None else "?")
            lines.append("".join(row))
        return lines
    return ["(rendering supports dimensions 1 and 2 only)"]


def _render_svg(tile, aset, window):
    if tile.dim not in (1, 2):
        return "<svg><!-- rendering supports dimensions 1 and 2 only --></svg>"
    cell = 14
    span = 2 * window + 1
    height = cell if tile.dim == 1 else span * cell
    parts = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{span * cell}" height="{height}">']
    for y in range(span if tile.dim == 2 else 1):
        for x in range(span):
            point = (x - window,) if tile.dim == 1 else (x - window, window - y)
            a = _translate_of(point, tile, aset)
            hue = (hash(a) % 360) if a is not None else 0
            fill = f"hsl({hue},65%,70%)" if a is not None else "#fff"
            parts.append(f'<rect x="{x * cell}" y="{y * cell}" width="{cell}" '
                         f'height="{cell}" fill="{fill}" stroke="#333"/>')
    parts.append("</svg>")
    return "\n".join(parts)


def _maybe_render(args, tile, aset):
    if not getattr(args, "render", None):
        return []
    window = args.window
    if args.render == "svg":
        return [_render_svg(tile, aset, window)]
    return _render_ascii(tile, aset, window)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def _cmd_verify(args):
    tiles_doc = _load(args.tiles)
    cot = _load(args.cotile)
    if args.level is not None:
        if isinstance(cot, PeriodicSet):
            cot = indicator(cot)
        if not isinstance(cot, PeriodicRationalFunction):
            raise _UsageError("level verification expects a function or periodic set")
        g = tiles_doc if not isinstance(tiles_doc, TileTuple) else tiles_doc[0]
        report = verify.is_level_tiling(g, cot, Fraction(args.level))
        doc = {"command": "verify", "level": str(args.level), "ok": report.ok,
               "defects": _defects_json(report)}
        _emit(args, doc, [f"level-{args.level} equation: {'holds' if report.ok else 'fails'}"]
              + [f"  defect at {r}: {v}" for r, v in report.defects])
        return EXIT_OK if report.ok else EXIT_FALSE
    if not isinstance(cot, PeriodicSet):
        raise _UsageError("verification expects a periodic set co-tile")
    tiles = _as_tuple(tiles_doc)
    report = verify.is_joint_cotile(tiles, cot)
    doc = {"command": "verify", "ok": report.ok, "failing_tile": report.failing_tile,
           "defects": _defects_json(report.report) if report.report is not None else []}
    lines = [f"joint tiling: {'holds' if report.ok else 'fails'}"]
    if not report.ok:
        lines.append(f"  first failing tile: {report.failing_tile}")
        lines += [f"  defect at {r}: {v}" for r, v in report.report.defects]
    elif args.render:
        lines += _maybe_render(args, tiles[0], cot)
    _emit(args, doc, lines)
    return EXIT_OK if report.ok else EXIT_FALSE


def _cmd_solve(args):
    tiles = _as_tuple(_load(args.tiles))
    if args.max_index is None:
        raise _UsageError("solve requires --max-index (no general period bound exists)")
    found = search_periodic_cotile(tiles, args.max_index,
                                   mode="all" if args.all else "first",
                                   threads=args.threads)
    doc = {"command": "solve", "max_index": args.max_index,
           "solutions": [{"lattice": jsonio.to_document(lat),
                          "members": [list(m) for m in a.sorted_members],
                          "stabilizer": jsonio.to_document(lat)}
                         for lat, a in found]}
    lines = [f"{len(found)} solution(s) with stabilizer index <= {args.max_index}"]
    for lat, a in found:
        lines.append(f"  lattice {list(map(list, lat.basis))} members {list(a.sorted_members)}")
    if found and args.render:
        lines += _maybe_render(args, tiles[0], found[0][1])
    _emit(args, doc, lines)
    return EXIT_OK if found else EXIT_FALSE


def _cmd_solve_z(args):
    tile = _load(args.tile)
    if not isinstance(tile, Tile):
        raise _UsageError("expected a tile document")
    result = search_Z_cotile(tile)
    doc = {"command": "solve-z", "tiles": result.tiles,
           "period_bound": result.period_bound,
           "periods_checked": list(result.periods_checked)}
    if result.tiles:
        doc["cotile"] = jsonio.to_document(result.cotile)
        lines = [f"tiles Z with period {result.cotile.lattice.index()}",
                 f"  co-tile members {list(result.cotile.sorted_members)}"]
    else:
        lines = [f"NO-TILING: exhausted {len(result.periods_checked)} candidate periods "
                 f"up to the bound {result.period_bound}"]
    _emit(args, doc, lines)
    return EXIT_OK if result.tiles else EXIT_FALSE


def _cmd_independent(args):
    tiles = _as_tuple(_load(args.tiles))
    res = is_independent_tuple(tiles)
    doc = {"command": "independent", "independent": res.independent,
           "witness": [list(v) for v in res.witness] if res.witness else None}
    _emit(args, doc, [f"independent: {res.independent}"
                      + (f" (witness {res.witness})" if res.witness else "")])
    return EXIT_OK if res.independent else EXIT_FALSE


def _cmd_star(args):
    tiles = _as_tuple(_load(args.tiles))
    res = has_property_star(tiles)
    doc = {"command": "star", "property_star": res.holds,
           "witness": [[list(v) for v in sel] for sel in res.witness] if res.witness else None}
    _emit(args, doc, [f"span uniqueness: {res.holds}"
                      + (f" (witness {res.witness})" if res.witness else "")])
    return EXIT_OK if res.holds else EXIT_FALSE


def _cmd_decompose(args):
    tiles = _as_tuple(_load(args.tiles))
    cot = _load(args.cotile)
    fn = indicator(cot) if isinstance(cot, PeriodicSet) else cot
    if not isinstance(fn, PeriodicRationalFunction):
        raise _UsageError("expected a periodic set or function")
    depth = args.depth if args.depth is not None else len(tiles.tiles)
    if not 1 <= depth <= len(tiles.tiles):
        raise _UsageError(f"depth must be between 1 and {len(tiles.tiles)}")
    prefix = TileTuple.make(list(tiles)[:depth])
    levels = [Fraction(l) for l in args.level] if args.level else None
    tree = build_decomposition(prefix, fn, levels=levels)
    report = verify_decomposition(tree)
    nodes_doc = []
    for chain, node in sorted(tree.nodes.items()):
        nodes_doc.append({"chain": [list(v) for v in chain],
                          "lattice": jsonio.to_document(node.lattice),
                          "values": [[list(r), str(v)] for r, v in sorted(node.values.items())]})
    doc = {"command": "decompose", "q": tree.q, "depth": depth,
           "nodes": nodes_doc,
           "report": {"ok": report.ok,
                      "recursion": len(report.recursion),
                      "reconstruction": len(report.reconstruction),
                      "invariance": len(report.invariance),
                      "convolution": len(report.convolution)}}
    lines = [f"decomposition with q = {tree.q}: {len(tree.nodes)} nodes, "
             f"identities {'all hold' if report.ok else 'FAIL'}"]
    _emit(args, doc, lines)
    return EXIT_OK if report.ok else EXIT_FALSE


def _cmd_dilate(args):
    tile = _load(args.tile)
    if not isinstance(tile, Tile):
        raise _UsageError("expected a tile document")
    scaled = dilate_tile(tile, args.r)
    if args.cotile is None:
        _emit(args, {"command": "dilate", "r": args.r,
                     "tile": jsonio.to_document(scaled)},
              [f"dilated tile: {list(scaled.sorted_points)}"])
        return EXIT_OK
    cot = _load(args.cotile)
    fn = indicator(cot) if isinstance(cot, PeriodicSet) else cot
    level = Fraction(args.level) if args.level is not None else Fraction(1)
    ok = dilation_check(tile, fn, level, args.r)
    _emit(args, {"command": "dilate", "r": args.r, "level": str(level), "ok": ok},
          [f"dilation by {args.r} preserves the level-{level} equation: {ok}"])
    return EXIT_OK if ok else EXIT_FALSE


def _cmd_brothers(args):
    tile = _load(args.tile)
    cot = _load(args.cotile)
    brothers = brother_tiles(tile, cot)
    full = TileTuple.make(list(brothers) + [tile])
    doc = {"command": "brothers",
           "brothers": jsonio.to_document(brothers),
           "verification": {"joint_tiling": verify.is_joint_cotile(full, cot).ok,
                            "independent": bool(is_independent_tuple(full)),
                            "property_star": bool(has_property_star(
                                TileTuple.make(list(brothers)[:tile.dim - 2] + [tile])))}}
    lines = ["companion tiles:"]
    lines += [f"  {list(b.sorted_points)}" for b in brothers]
    lines.append("all three postconditions verified")
    _emit(args, doc, lines)
    return EXIT_OK


def _cmd_zp(args):
    tile = _load(args.tile)
    if isinstance(tile, Tile):
        raise _UsageError("expected a mixed tile document with a p field")
    if tile.p != args.p:
        raise _UsageError(f"document has p={tile.p}, flag says p={args.p}")
    cls = classify(tile)
    doc = {"command": "zp", "p": args.p, "class": cls.kind}
    lines = [f"classification: {cls.kind}"]
    if cls.base is not None:
        doc["base"] = jsonio.to_document(cls.base)
        lines.append(f"  base tile {list(cls.base.sorted_points)}")
    if args.cotile:
        aset = _load(args.cotile)
        if not isinstance(aset, MixedPeriodicSet):
            raise _UsageError("expected a mixed periodic set document")
        verdict = cotile_conclusion(tile, aset)
        doc["verdict"] = {"kind": verdict.kind, "periodic": verdict.periodic,
                          "stabilizer_generator": list(verdict.stabilizer_generator)}
        lines.append(f"co-tile verdict: {verdict.kind}, periodic with generator "
                     f"{verdict.stabilizer_generator}")
    _emit(args, doc, lines)
    return EXIT_OK


def _cmd_lift(args):
    tiles = _as_tuple(_load(args.tiles))
    cot = _load(args.cotile)
    gamma0 = _load(args.gamma0)
    if not isinstance(gamma0, Lattice):
        raise _UsageError("expected a lattice document for --gamma0")
    out = lift_to_full_period(tiles, gamma0, cot)
    _emit(args, {"command": "lift", "cotile": jsonio.to_document(out)},
          [f"fully periodic co-tile: lattice {list(map(list, out.lattice.basis))} "
           f"members {list(out.sorted_members)}"])
    return EXIT_OK


def _cmd_piecewise(args):
    tiles = _as_tuple(_load(args.tiles))
    pieces = [_load(p) for p in args.pieces]
    declared = [_load(p) for p in args.stabilizers] if args.stabilizers else None
    out = piecewise_to_periodic(tiles, pieces, declared_stabilizers=declared)
    _emit(args, {"command": "piecewise", "cotile": jsonio.to_document(out)},
          [f"fully periodic co-tile: lattice {list(map(list, out.lattice.basis))} "
           f"members {list(out.sorted_members)}"])
    return EXIT_OK


def _cmd_stabilizer(args):
    obj = _load(args.cotile)
    if isinstance(obj, PeriodicSet):
        stab = stabilizer(obj)
    elif isinstance(obj, PeriodicRationalFunction):
        stab = obj.stabilizer()
    else:
        raise _UsageError("expected a periodic set or function document")
    _emit(args, {"command": "stabilizer", "stabilizer": jsonio.to_document(stab)},
          [f"stabilizer basis {list(map(list, stab.basis))}, index {stab.index()}"])
    return EXIT_OK


def build_parser():
    parser = _Parser(prog="tilekit",
                     description="Exact computation with translational tilings of Z^d")
    parser.add_argument("--json", action="store_true", default=False,
                        help="machine-readable output")
    parser.add_argument("--seed", type=int, default=0,
                        help="seed for randomized fixture generation (reserved; "
                        "all shipped algorithms are deterministic)")
    # the same flags are accepted after the subcommand; SUPPRESS keeps the
    # pre-subcommand value when the flag is absent there
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, **kwargs):
        p = sub.add_parser(name, parents=[common], **kwargs)
        p.set_defaults(handler=fn)
        return p

    p = add("verify", _cmd_verify, help="check tiling or level equations")
    p.add_argument("--tiles", required=True)
    p.add_argument("--cotile", required=True)
    p.add_argument("--level", default=None)
    p.add_argument("--render", choices=["ascii", "svg"])
    p.add_argument("--window", type=int, default=6)

    p = add("solve", _cmd_solve, help="search for periodic joint co-tiles")
    p.add_argument("--tiles", required=True)
    p.add_argument("--max-index", type=int, default=None)
    p.add_argument("--all", action="store_true")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--render", choices=["ascii", "svg"])
    p.add_argument("--window", type=int, default=6)

    p = add("solve-z", _cmd_solve_z, help="decide tiling of the integers")
    p.add_argument("--tile", required=True)

    p = add("independent", _cmd_independent, help="test tuple independence")
    p.add_argument("--tiles", required=True)

    p = add("star", _cmd_star, help="test the span-uniqueness property")
    p.add_argument("--tiles", required=True)

    p = add("decompose", _cmd_decompose, help="build and verify the chain decomposition")
    p.add_argument("--tiles", required=True)
    p.add_argument("--cotile", required=True)
    p.add_argument("--depth", type=int, default=None)
    p.add_argument("--level", action="append", default=None,
                   help="per-tile level (repeat once per tile)")

    p = add("dilate", _cmd_dilate, help="dilate a tile; optionally check the dilation identity")
    p.add_argument("--tile", required=True)
    p.add_argument("-r", type=int, required=True)
    p.add_argument("--cotile", default=None)
    p.add_argument("--level", default=None)

    p = add("brothers", _cmd_brothers, help="build companion tiles for a periodic tiling")
    p.add_argument("--tile", required=True)
    p.add_argument("--cotile", required=True)

    p = add("zp", _cmd_zp, help="classify tiles of Z x (Z/pZ) and check co-tiles")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--tile", required=True)
    p.add_argument("--cotile", default=None)

    p = add("lift", _cmd_lift, help="lift an almost-periodic co-tile to a fully periodic one")
    p.add_argument("--tiles", required=True)
    p.add_argument("--cotile", required=True)
    p.add_argument("--gamma0", required=True)

    p = add("piecewise", _cmd_piecewise, help="periodic co-tile from periodic pieces")
    p.add_argument("--tiles", required=True)
    p.add_argument("--pieces", nargs="+", required=True)
    p.add_argument("--stabilizers", nargs="+", default=None)

    p = add("stabilizer", _cmd_stabilizer, help="full stabilizer of a periodic set or function")
    p.add_argument("--cotile", required=True)

    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.handler(args)
    except _UsageError as exc:
        print(f"tilekit: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InputContractError as exc:
        print(f"tilekit: input contract violation: {exc}", file=sys.stderr)
        return EXIT_CONTRACT
    except ValueError as exc:
        print(f"tilekit: input contract violation: {exc}", file=sys.stderr)
        return EXIT_CONTRACT
    except TilekitError as exc:
        print(f"tilekit: {exc}", file=sys.stderr)
        return EXIT_CONTRACT


def entry():
    sys.exit(main())


if __name__ == "__main__":
    entry()
