"""Command line interface.

Subcommands read polytope JSON ({"dim": d, "points": [[...], ...]}, hull
taken on load) from a file argument or stdin ("-"), and write JSON (SVG for
render) to stdout or --out.  Exit codes: 0 success, 1 malformed input or
error, 2 certificate not found within the box, 3 verification failure.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import jsonio
from .genset import fiber_structure_for, fiber_structures, from_polytope, polytope_reduction
from .links import Constituent, enumerate_links
from .obstruction import run_suite
from .polytopes import classify, lattice_points, interior_lattice_points, mavlyutov_dual, polar_dual, primitive_points
from .render import render_svg
from .web import (
    ClassViolationError,
    NoMoriFiberStructureError,
    bfs_connect,
    connect,
    enumerate_fano,
    mmp_reduce,
    verify_certificate,
)


def _read_json(path):
    if path == "-":
        return json.load(sys.stdin)
    with open(path) as fh:
        return json.load(fh)


def _emit(args, text):
    if getattr(args, "out", None):
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")


def _emit_json(args, payload):
    if getattr(args, "seed", None) is not None:
        payload = dict(payload)
        payload["seed"] = args.seed
    _emit(args, jsonio.dumps(payload))


def _load_polytope(args, attr="polytope"):
    return jsonio.polytope_from_json(_read_json(getattr(args, attr)))


def cmd_classify(args):
    p = _load_polytope(args)
    flags = classify(p)
    _emit_json(
        args,
        {
            "polytope": jsonio.polytope_to_json(p),
            "flags": {
                "fano": flags.fano,
                "canonical": flags.canonical,
                "terminal": flags.terminal,
                "reflexive": flags.reflexive,
                "pseudoreflexive": flags.pseudoreflexive,
                "almost_pseudoreflexive": flags.almost_pseudoreflexive,
            },
        },
    )
    return 0


def cmd_dual(args):
    p = _load_polytope(args)
    d = polar_dual(p)
    md = mavlyutov_dual(p)
    payload = {
        "polar": jsonio.rational_polytope_to_json(d),
        "lattice_hull": {
            "dim": md.dim,
            "points": [list(x) for x in md.points],
            "polytope": None if md.polytope is None else jsonio.polytope_to_json(md.polytope),
        },
    }
    _emit_json(args, payload)
    return 0


def cmd_points(args):
    p = _load_polytope(args)
    payload = {
        "lattice": [list(x) for x in lattice_points(p)],
        "interior": [list(x) for x in interior_lattice_points(p)],
    }
    try:
        payload["primitive"] = [list(x) for x in primitive_points(p)]
    except ValueError:
        payload["primitive"] = None
    _emit_json(args, payload)
    return 0


def cmd_reduce(args):
    p = _load_polytope(args)
    out = []
    for v in sorted(p.vertices):
        res = polytope_reduction(p, v)
        entry = {"vertex": list(v), "valid": res.valid}
        if res.valid:
            entry["polytope"] = jsonio.polytope_to_json(res.polytope)
        else:
            entry["reason"] = res.reason
        out.append(entry)
    _emit_json(args, {"reductions": out})
    return 0


def cmd_fibers(args):
    p = _load_polytope(args)
    a = from_polytope(p)
    payload = {
        "structures": [jsonio.fiber_structure_to_json(fs) for fs in fiber_structures(a)]
    }
    _emit_json(args, payload)
    return 0


def cmd_links(args):
    p = _load_polytope(args)
    a = from_polytope(p)
    if args.fiber:
        fiber = [tuple(int(x) for x in v) for v in json.loads(args.fiber)]
        fs = fiber_structure_for(a, fiber)
    else:
        mori = [f for f in fiber_structures(a) if f.mori]
        if not mori:
            raise ValueError("polytope has no Mori fiber structure")
        fs = min(mori, key=lambda f: f.fiber)
    start = Constituent(a, fs.fiber)
    links = enumerate_links(start, args.cls, args.box, "polytope")
    _emit_json(args, {"links": [jsonio.link_to_json(l) for l in links]})
    return 0


def cmd_mmp(args):
    p = _load_polytope(args)
    r = mmp_reduce(p, args.cls)
    payload = {
        "result": jsonio.polytope_to_json(r.polytope),
        "fiber": [list(v) for v in r.fiber],
        "chain": [
            {"removed": list(v), "polytope": jsonio.polytope_to_json(poly)}
            for v, poly in r.chain
        ],
    }
    _emit_json(args, payload)
    return 0


def cmd_connect(args):
    p = _load_polytope(args, "first")
    q = _load_polytope(args, "second")
    cert = connect(p, q, args.cls)
    rep = verify_certificate(cert)
    if not rep.ok:
        _emit_json(args, {"error": {"type": "verification", "failures": list(rep.failures)}})
        return 3
    _emit_json(args, jsonio.certificate_to_json(cert))
    return 0


def cmd_bfs(args):
    p = _load_polytope(args, "first")
    q = _load_polytope(args, "second")
    cert = bfs_connect(p, q, args.cls, args.box)
    if cert is None:
        _emit_json(args, {"found": False, "box": args.box})
        return 2
    rep = verify_certificate(cert)
    if not rep.ok:
        _emit_json(args, {"error": {"type": "verification", "failures": list(rep.failures)}})
        return 3
    _emit_json(args, jsonio.certificate_to_json(cert))
    return 0


def cmd_verify(args):
    cert = jsonio.certificate_from_json(_read_json(args.certificate))
    rep = verify_certificate(cert)
    payload = {"ok": rep.ok, "failures": [[i, msg] for i, msg in rep.failures]}
    _emit_json(args, payload)
    return 0 if rep.ok else 3


def cmd_enumerate(args):
    classes = enumerate_fano(args.box, args.cls, mfp_only=args.mfp)
    payload = {
        "box": args.box,
        "class": args.cls,
        "mfp_only": args.mfp,
        "count": len(classes),
        "classes": [
            {"normal_form": jsonio.polytope_to_json(nf), "representatives": c}
            for nf, c in classes
        ],
    }
    _emit_json(args, payload)
    return 0


def cmd_render(args):
    data = _read_json(args.input)
    if "chain" in data:
        obj = jsonio.certificate_from_json(data)
    else:
        obj = jsonio.sequence_from_json(data)
    svg = render_svg(obj, args.cell_size)
    _emit(args, svg)
    return 0


def cmd_example37(args):
    rep = run_suite()
    _emit_json(args, rep)
    return 0 if rep["ok"] else 1


def _add_io(sub, *, polytope=True):
    if polytope:
        sub.add_argument("polytope", help="polytope JSON file, or - for stdin")
    sub.add_argument("--out", help="write output to this file instead of stdout")
    sub.add_argument("--seed", type=int, default=None, help="seed echoed into the output")


def build_parser():
    ap = argparse.ArgumentParser(prog="fanoweb", description=__doc__)
    sp = ap.add_subparsers(dest="command", required=True)

    s = sp.add_parser("classify", help="classification flags of a polytope")
    _add_io(s)
    s.set_defaults(func=cmd_classify)

    s = sp.add_parser("dual", help="polar dual and the hull of its lattice points")
    _add_io(s)
    s.set_defaults(func=cmd_dual)

    s = sp.add_parser("points", help="lattice, interior, and primitive points")
    _add_io(s)
    s.set_defaults(func=cmd_points)

    s = sp.add_parser("reduce", help="all single-vertex reductions")
    _add_io(s)
    s.set_defaults(func=cmd_reduce)

    s = sp.add_parser("fibers", help="all fiber structures of the primitive point set")
    _add_io(s)
    s.set_defaults(func=cmd_fibers)

    s = sp.add_parser("links", help="enumerate links from a Mori fiber structure")
    _add_io(s)
    s.add_argument("--class", dest="cls", default="none",
                   choices=["none", "terminal", "canonical", "reflexive"])
    s.add_argument("--box", type=int, default=4)
    s.add_argument("--fiber", help="fiber points as JSON, e.g. [[1,0],[-1,0]]")
    s.set_defaults(func=cmd_links)

    s = sp.add_parser("mmp", help="reduce to a Mori fiber polytope")
    _add_io(s)
    s.add_argument("--class", dest="cls", default="canonical",
                   choices=["terminal", "canonical", "reflexive"])
    s.set_defaults(func=cmd_mmp)

    s = sp.add_parser("connect", help="certificate joining two polygons")
    s.add_argument("first")
    s.add_argument("second")
    s.add_argument("--class", dest="cls", default="canonical",
                   choices=["terminal", "canonical", "reflexive"])
    s.add_argument("--out")
    s.add_argument("--seed", type=int, default=None)
    s.set_defaults(func=cmd_connect)

    s = sp.add_parser("bfs", help="shortest certificate within a box")
    s.add_argument("first")
    s.add_argument("second")
    s.add_argument("--class", dest="cls", default="canonical",
                   choices=["terminal", "canonical", "reflexive"])
    s.add_argument("--box", type=int, default=4)
    s.add_argument("--out")
    s.add_argument("--seed", type=int, default=None)
    s.set_defaults(func=cmd_bfs)

    s = sp.add_parser("verify", help="re-check a certificate from scratch")
    s.add_argument("certificate")
    s.add_argument("--out")
    s.add_argument("--seed", type=int, default=None)
    s.set_defaults(func=cmd_verify)

    s = sp.add_parser("enumerate", help="class polygons in a box, up to unimodular maps")
    s.add_argument("--class", dest="cls", default="reflexive",
                   choices=["terminal", "canonical", "reflexive"])
    s.add_argument("--box", type=int, default=3)
    s.add_argument("--mfp", action="store_true", help="keep Mori fiber polygons only")
    s.add_argument("--out")
    s.add_argument("--seed", type=int, default=None)
    s.set_defaults(func=cmd_enumerate)

    s = sp.add_parser("render", help="SVG diagram of a sequence or certificate")
    s.add_argument("input", help="certificate or sequence JSON file, or - for stdin")
    s.add_argument("--cell-size", type=int, default=24)
    s.add_argument("--out")
    s.add_argument("--seed", type=int, default=None)
    s.set_defaults(func=cmd_render)

    s = sp.add_parser("example37", help="run the three-dimensional fixture suite")
    s.add_argument("--out")
    s.add_argument("--seed", type=int, default=None)
    s.set_defaults(func=cmd_example37)

    return ap


def main(argv=None):
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except (ClassViolationError, NoMoriFiberStructureError, ValueError, KeyError) as e:
        sys.stdout.write(
            jsonio.dumps({"error": {"type": type(e).__name__, "message": str(e)}}) + "\n"
        )
        return 1
    except OSError as e:
        sys.stdout.write(
            jsonio.dumps({"error": {"type": "io", "message": str(e)}}) + "\n"
        )
        return 1


if __name__ == "__main__":
    sys.exit(main())
