"""Command-line surface.

Exit codes: 0 success, 1 check failure, 2 configuration or data error,
3 internal invariant violation.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import data as data_mod
from .data import DataError


def build_parser():
    p = argparse.ArgumentParser(
        prog="octica",
        description="Exact computations on a rank-6 Gaussian-integer "
                    "Lorentzian lattice: anti-involutions and their fixed "
                    "lattices, Vinberg fundamental domains, mod-2 "
                    "invariants, order-two stabilizer elements, and the "
                    "cuspidal cone angle.")
    p.add_argument("--data", metavar="PATH", default=None,
                   help="alternate data file (default: bundled)")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.add_argument("--threads", type=int, default=1, metavar="N",
                   help="worker threads for the report runner")
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("lattice", help="inspect the named lattices")
    latsub = sp.add_subparsers(dest="lattice_cmd", required=True)
    show = latsub.add_parser("show", help="print a lattice's Gram data")
    show.add_argument("--name", choices=("lambda", "lz"), default="lambda")

    sp = sub.add_parser("fix", help="fixed lattice of a named anti-involution")
    sp.add_argument("--chi", type=int, choices=range(5), required=True)

    sp = sub.add_parser("vinberg", help="run the fundamental-domain algorithm")
    sp.add_argument("--lattice", required=True, metavar="NAME|FILE",
                    help="L0..L4 or a JSON file with a Gram matrix")
    sp.add_argument("--stop", default="volume", metavar="CRIT",
                    help="expected:<k>, volume, or height:<h>")
    sp.add_argument("--format", choices=("ascii", "dot", "json"),
                    default="ascii")

    sp = sub.add_parser("diagram", help="render a fundamental-domain diagram")
    sp.add_argument("--lattice", required=True, metavar="NAME|FILE")
    sp.add_argument("--format", choices=("ascii", "dot", "json", "png"),
                    default="ascii")
    sp.add_argument("--out", default=None, metavar="FILE",
                    help="output file (required for png)")

    sp = sub.add_parser("mod2", help="mod-2 invariants of an anti-involution")
    sp.add_argument("--chi", type=int, choices=range(5), required=True)

    sub.add_parser("s8-table", help="the invariants of the five cycle types")

    sp = sub.add_parser("type2", help="order-two stabilizer element analysis")
    sp.add_argument("--chi", type=int, choices=range(5), required=True)

    sub.add_parser("cone-angle", help="the cuspidal cone computation")

    sp = sub.add_parser("verify-all", help="run the full reproduction report")
    sp.add_argument("--only", default=None, metavar="SECTION",
                    help=f"restrict to checks whose anchor or id contains "
                         f"this string")
    sp.add_argument("--report-dir", default=None, metavar="DIR",
                    help="also write report.csv and rendered figures here")
    sp.add_argument("--timings", action="store_true",
                    help="include per-check runtimes (non-deterministic)")
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        ds = data_mod.load(args.data)
        return _dispatch(args, ds)
    except DataError as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return 2
    except BrokenPipeError:
        return 0
    except AssertionError as exc:
        print(f"internal invariant violation: {exc}", file=sys.stderr)
        return 3


def _dispatch(args, ds):
    if args.command == "lattice":
        return cmd_lattice_show(args, ds)
    if args.command == "fix":
        return cmd_fix(args, ds)
    if args.command == "vinberg":
        return cmd_vinberg(args, ds)
    if args.command == "diagram":
        return cmd_diagram(args, ds)
    if args.command == "mod2":
        return cmd_mod2(args, ds)
    if args.command == "s8-table":
        return cmd_s8_table(args, ds)
    if args.command == "type2":
        return cmd_type2(args, ds)
    if args.command == "cone-angle":
        return cmd_cone_angle(args, ds)
    if args.command == "verify-all":
        return cmd_verify_all(args, ds)
    raise AssertionError(f"unhandled command {args.command}")


def _emit(args, obj, text):
    if args.json:
        sys.stdout.write(json.dumps(obj, sort_keys=True, indent=1) + "\n")
    else:
        sys.stdout.write(text)
    return 0


def cmd_lattice_show(args, ds):
    from .lattices import gmat_to_json
    L = ds.lattice(args.name)
    sig = L.signature()
    obj = {"name": args.name, "rank": L.rank, "gram": gmat_to_json(L.gram),
           "signature": list(sig)}
    text = (f"{args.name}: rank {L.rank}, signature {sig}\n"
            + "\n".join("  " + "  ".join(str(x) for x in row)
                        for row in L.gram) + "\n")
    return _emit(args, obj, text)


def cmd_fix(args, ds):
    from .fixed_points import verify_paper_basis
    from .lattices import gvec_to_json
    i = args.chi
    L = ds.lattice("lambda")
    chi = ds.anti_involution(f"chi{i}")
    basis = ds.fixed_basis(f"B{i}")
    gram = ds.fixed_gram(f"L{i}")
    rep = verify_paper_basis(L, chi, basis, gram)
    obj = {"chi": i,
           "basis": [gvec_to_json(b) for b in basis],
           "gram": gram,
           "verification": rep}
    lines = [f"fixed lattice of chi{i}: rank {len(gram)}"]
    lines.append("basis columns (ambient coordinates):")
    for b in basis:
        lines.append("  " + "  ".join(str(x) for x in b))
    lines.append("Gram matrix:")
    for row in gram:
        lines.append("  " + "  ".join(str(x) for x in row))
    lines.append("verification: "
                 + ("all checks pass" if rep["ok"] else "; ".join(rep["failures"])))
    return _emit(args, obj, "\n".join(lines) + "\n")


def _parse_stop(text):
    if text == "volume":
        return ("volume",)
    if text.startswith("expected:"):
        return ("expected", int(text.split(":", 1)[1]))
    if text.startswith("height:"):
        return ("height", Fraction(text.split(":", 1)[1]))
    raise DataError(f"bad stop criterion {text!r}")


def _load_zlattice(ds, name):
    from .fixed_points import ZQuadraticLattice
    if name in ("L0", "L1", "L2", "L3", "L4"):
        return ds.fixed_zlattice(int(name[1])), name
    try:
        with open(name) as fh:
            obj = json.load(fh)
        return ZQuadraticLattice(obj["gram"]), obj.get("name", name)
    except (OSError, ValueError, KeyError) as exc:
        raise DataError(f"cannot load lattice {name!r}: {exc}") from exc


def _vinberg_run(args, ds, stop):
    from .vinberg import coxeter_diagram, fundamental_roots
    fix, name = _load_zlattice(ds, args.lattice)
    if args.lattice in ("L0", "L1", "L2", "L3", "L4"):
        v0, norms, _ = ds.vinberg_controls(int(args.lattice[1]))
    else:
        v0, norms = None, None
    roots = fundamental_roots(fix, norms, v0, stop=stop)
    return fix, name, roots, coxeter_diagram(fix.gram, roots)


def cmd_vinberg(args, ds):
    from .render import diagram_to_dot, diagram_to_json, diagram_to_ascii, roots_table
    fix, name, roots, diag = _vinberg_run(args, ds, _parse_stop(args.stop))
    if args.format == "dot":
        sys.stdout.write(diagram_to_dot(diag, name.replace(".", "_")))
    elif args.format == "json":
        sys.stdout.write(diagram_to_json(diag, name))
    else:
        sys.stdout.write(f"{name}: {len(roots)} fundamental roots\n")
        sys.stdout.write(roots_table(roots))
        sys.stdout.write(diagram_to_ascii(diag, name))
    return 0


def cmd_diagram(args, ds):
    from .render import diagram_to_dot, diagram_to_json, diagram_to_ascii
    fix, name, roots, diag = _vinberg_run(args, ds, ("volume",))
    if args.format == "png":
        if not args.out:
            raise DataError("--format png requires --out FILE")
        from .plotting import save_diagram
        save_diagram(diag, args.out, title=name)
        sys.stdout.write(f"wrote {args.out}\n")
        return 0
    if args.format == "dot":
        out = diagram_to_dot(diag, name.replace(".", "_"))
    elif args.format == "json":
        out = diagram_to_json(diag, name)
    else:
        out = diagram_to_ascii(diag, name)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)
    return 0


def cmd_mod2(args, ds):
    from .mod2 import (F2QuadraticSpace, classify_octic_type,
                       induced_involution, involution_invariants)
    space = F2QuadraticSpace(ds.lattice("lambda"))
    phi = induced_involution(space, ds.anti_involution(f"chi{args.chi}"))
    inv = involution_invariants(space, phi)
    typ = classify_octic_type(inv)
    obj = {"chi": args.chi, "dim_fix": inv[0], "norm_one_fixed": inv[1],
           "type": typ}
    text = (f"chi{args.chi}: dim Fix = {inv[0]}, "
            f"norm-one fixed vectors = {inv[1]}, type = {typ}\n")
    return _emit(args, obj, text)


def cmd_s8_table(args, ds):
    from .mod2 import s8_table
    rows = s8_table()
    obj = {"rows": [{"type": t, "transpositions": k, "fixed_points": f,
                     "dim_fix": d, "norm_one": n}
                    for t, k, f, d, n in rows]}
    lines = ["type  2-cycles  fixed-points  dim-fix  norm-one-fixed"]
    for t, k, f, d, n in rows:
        lines.append(f"{t}     {k}         {f}             {d}        {n}")
    return _emit(args, obj, "\n".join(lines) + "\n")


def cmd_type2(args, ds):
    from .lattices import gmat_to_json
    from .stabilizer import stab_structure
    res = stab_structure(args.chi, ds)
    obj = {"chi": args.chi, "structure": res.verdict, "reason": res.reason}
    lines = [f"chi{args.chi}: stabilizer structure = {res.verdict}",
             f"reason: {res.reason}"]
    if res.witness is not None:
        obj["witness"] = gmat_to_json(res.witness.matrix)
        obj["witness_square"] = str(res.witness.square_scalar)
        obj["sign"] = res.witness.sign
        lines.append(f"witness (squares to {res.witness.square_scalar} * id):")
        for row in res.witness.matrix:
            lines.append("  " + "  ".join(str(x) for x in row))
    if res.certificate:
        obj["certificate"] = res.certificate
        lines.append(f"certificate: {res.certificate}")
    return _emit(args, obj, "\n".join(lines) + "\n")


def cmd_cone_angle(args, ds):
    from .cusp_cone import (conjugacy_classes, enumerate_anti_involutions,
                            glue_cone, wedge_quotient)
    from .fixed_points import fix_lattice, in_fix_coords
    from .lattices import gmat_to_json
    lz = ds.lattice("lz")
    kappa1, kappa3 = ds.cusp("kappa1"), ds.cusp("kappa3")
    group, aai = enumerate_anti_involutions(lz, kappa1)
    classes = conjugacy_classes(group, aai)
    u1, u2, v2, v3 = (ds.cusp(k) for k in ("u1", "u2", "v2", "v3"))
    fix1, fix3 = fix_lattice(lz, kappa1), fix_lattice(lz, kappa3)
    w1 = wedge_quotient(lz, group, kappa1,
                        edges=(tuple(in_fix_coords(fix1, u1)),
                               tuple(in_fix_coords(fix1, u2))))
    w3 = wedge_quotient(lz, group, kappa3,
                        edges=(tuple(in_fix_coords(fix3, v3)),
                               tuple(in_fix_coords(fix3, v2))))
    cone = glue_cone(lz, group, w1, w3,
                     required_witnesses=[ds.cusp("glue_A1"),
                                         ds.cusp("glue_A2")])
    obj = {
        "isometry_group_order": len(group),
        "anti_involution_count": len(aai),
        "conjugacy_classes": len(classes),
        "class_sizes": sorted(len(c) for c in classes),
        "wedge_angles": [str(w1.angle) + " pi", str(w3.angle) + " pi"],
        "total_angle": f"{cone.total_angle} pi",
        "orbifold_point": cone.is_orbifold_point(),
    }
    text = (f"|Isom| = {len(group)}\n"
            f"involutive anti-isometries: {len(aai)}\n"
            f"conjugacy classes: {len(classes)} "
            f"(sizes {sorted(len(c) for c in classes)})\n"
            f"wedge angles: {w1.angle} pi and {w3.angle} pi\n"
            f"total cone angle: {cone.total_angle} pi\n"
            f"orbifold point: {'yes' if cone.is_orbifold_point() else 'no'}\n")
    return _emit(args, obj, text)


def cmd_verify_all(args, ds):
    from .report import run_report, write_report_files
    report = run_report(ds, only=args.only, threads=max(1, args.threads))
    if args.json:
        sys.stdout.write(report.to_json(timings=args.timings))
    else:
        sys.stdout.write(report.to_text(timings=args.timings))
    if args.report_dir:
        files = write_report_files(report, args.report_dir, ds)
        print(f"report files: {', '.join(files)}", file=sys.stderr)
    return 0 if report.passed else 1


if __name__ == "__main__":
    sys.exit(main())
