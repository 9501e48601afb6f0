"""Command line interface: ``fermatcx <command> ...``.

Exit status is 0 on success, 1 when a verification fails and 2 for invalid
arguments.
"""

from __future__ import annotations

import argparse
import json
import sys
from collections import defaultdict

from . import kernels
from .builder import CellLabel, build_affine, build_projective, canonical_projective, faces, realize
from .delta import euler_characteristic, validate
from .homology import betti_and_torsion_summary
from .io import dumps_complex, mesh_d2, write_obj
from .verify import verify_projective_invariance, verify_retraction


def _int_at_least(lo):
    def parse(text):
        try:
            value = int(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
        if value < lo:
            raise argparse.ArgumentTypeError(f"must be >= {lo}, got {value}")
        return value
    return parse


def _positive_float(text):
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a number, got {text!r}") from None
    if not value > 0:
        raise argparse.ArgumentTypeError(f"must be > 0, got {text}")
    return value


def _build(degree, space):
    return build_projective(degree) if space == "projective" else build_affine(degree)


def _emit(text, out):
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def cmd_build(args):
    cx = _build(args.degree, args.space)
    _emit(dumps_complex(cx, degree=args.degree, space=args.space), args.out)
    if args.out not in (None, "-"):
        n0, n1, n2 = cx.counts
        print(f"wrote {args.space} complex for d = {args.degree} ({n0}/{n1}/{n2} cells) to {args.out}")
    return 0


def cmd_homology(args):
    summary = betti_and_torsion_summary(_build(args.degree, args.space))
    if args.json:
        summary = {k: v for k, v in summary.items() if k != "text"}
        summary.update(degree=args.degree, space=args.space)
        print(json.dumps(summary, sort_keys=True, indent=1))
    else:
        print(summary["text"])
    return 0


def cmd_euler(args):
    cx = _build(args.degree, args.space)
    summary = betti_and_torsion_summary(cx)
    n0, n1, n2 = cx.counts
    b0, b1, b2 = summary["betti"]
    chi = euler_characteristic(cx)
    print(f"chi = {n0} - {n1} + {n2} = {chi}")
    print(f"b0 - b1 + b2 = {b0} - {b1} + {b2} = {b0 - b1 + b2}")
    return 0 if summary["euler_consistent"] else 1


def cmd_verify(args):
    common = dict(workers=args.workers, backend=args.backend)
    reports = [verify_retraction(args.degree, args.samples, args.seed, args.tol, args.steps, **common)]
    if args.projective:
        reports.append(verify_projective_invariance(args.degree, args.samples, args.seed, args.tol, **common))
    if args.json:
        names = ["retraction", "projective"][:len(reports)]
        print(json.dumps({k: r.to_dict() for k, r in zip(names, reports)}, sort_keys=True, indent=1))
    else:
        print("retraction")
        print(reports[0].format())
        if args.projective:
            print("projective invariance")
            print(reports[1].format())
    return 0 if all(r.passed for r in reports) else 1


def cmd_mesh(args):
    mesh = mesh_d2(args.resolution)
    write_obj(mesh, args.out)
    print(f"wrote {len(mesh.vertices)} vertices and {len(mesh.faces)} faces to {args.out}")
    return 0


# -- the degree two example -------------------------------------------------

def _sign(r):
    return "1" if r == 0 else "-1"


def _affine_name(label: CellLabel) -> str:
    name = label.kind if label.kind == "X" else f"{label.kind[0]}^{label.kind[1]}"
    return f"{name}({','.join(_sign(r) for r in label.full_roots())})"


def _projective_name(label: CellLabel) -> str:
    name = label.kind if label.kind == "X" else f"{label.kind[0]}^{label.kind[1]}"
    return f"{name}[{':'.join(_sign(r) for r in label.full_roots())}]"


def _point(p):
    return "(" + ", ".join(f"{v.real:g}" for v in p) + ")"


def demo_d2_lines() -> list[str]:
    """Cell inventory of both complexes for ``d = 2``, residues shown as signs."""
    aff, proj = build_affine(2), build_projective(2)
    lines = [f"affine, d = 2: {aff.n0} vertices, {aff.n1} edges, {aff.n2} faces"]
    lines.append("vertices")
    for v in aff.labels[0]:
        corner = [1.0 if j == v.coords[0] else 0.0 for j in range(3)]
        lines.append(f"  {_affine_name(v)} = {_point(realize(v, corner))}")
    for title, level in (("edges", aff.labels[1]), ("faces", aff.labels[2])):
        lines.append(title)
        for c in level:
            lines.append(f"  {_affine_name(c)}: " + ", ".join(_affine_name(f) for f in faces(c)))

    lines.append(f"projective, d = 2: {proj.n0} vertices, {proj.n1} edges, {proj.n2} faces")
    for title, dim in (("vertices", 0), ("edges", 1), ("faces", 2)):
        classes = defaultdict(list)
        for c in aff.labels[dim]:
            classes[canonical_projective(c)].append(c)
        lines.append(title)
        for rep in proj.labels[dim]:
            text = " = ".join(_projective_name(c) for c in classes[rep])
            if dim == 0:
                text += " = [" + ":".join("1" if i == rep.coords[0] else "0" for i in range(3)) + "]"
            lines.append("  " + text)

    mesh = mesh_d2(1)
    octa = sorted(tuple(int(round(x)) for x in v) for v in mesh.vertices)
    lines.append(f"mesh at resolution 1: {len(mesh.vertices)} vertices, {len(mesh.faces)} faces, "
                 f"vertices {', '.join(map(str, octa))}")
    ok = validate(aff).valid and validate(proj).valid and len(octa) == 6 and len(mesh.faces) == 8
    lines.append("octahedron: " + ("yes" if ok else "no"))
    return lines


def cmd_demo_d2(args):
    print("\n".join(demo_d2_lines()))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fermatcx",
                                     description="Delta-complexes and retractions for Fermat surfaces.")
    sub = parser.add_subparsers(dest="command", required=True)

    def cell_args(p):
        p.add_argument("--degree", "-d", type=_int_at_least(1), required=True)
        p.add_argument("--space", choices=("affine", "projective"), default="affine")

    p = sub.add_parser("build", help="write a complex as a JSON document")
    cell_args(p)
    p.add_argument("--out", "-o", help="output path (stdout if omitted)")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("homology", help="integral homology via Smith normal form")
    cell_args(p)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_homology)

    p = sub.add_parser("euler", help="Euler characteristic from cells and from Betti numbers")
    cell_args(p)
    p.set_defaults(func=cmd_euler)

    p = sub.add_parser("verify", help="Monte-Carlo check of the retraction")
    p.add_argument("--degree", "-d", type=_int_at_least(1), required=True)
    p.add_argument("--samples", "-n", type=_int_at_least(1), default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=_positive_float, default=1e-8)
    p.add_argument("--steps", type=_int_at_least(2), default=64)
    p.add_argument("--projective", action="store_true", help="also check independence of the representative")
    p.add_argument("--workers", type=_int_at_least(1), default=1)
    p.add_argument("--backend", choices=kernels.available_backends())
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("mesh", help="OBJ mesh of the degree two skeleton")
    p.add_argument("--resolution", "-r", type=_int_at_least(1), default=1)
    p.add_argument("--out", "-o", required=True)
    p.set_defaults(func=cmd_mesh)

    p = sub.add_parser("demo-d2", help="print the degree two cell inventory")
    p.set_defaults(func=cmd_demo_d2)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
