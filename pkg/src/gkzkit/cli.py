"""The `gkz` command line tool.

Exit codes: 0 success, 2 parse error, 3 precondition violation, 4 search
bound exhausted.  Output is JSON by default; `--format text` prints a
human-oriented rendering of the same data.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import cones, family, report, resonance, toric, weyl
from .errors import (
    CertificateNotFound,
    GkzError,
    ParseError,
    PreconditionError,
    SearchBoundError,
)
from .intlinalg import (
    IntMatrix,
    format_fraction,
    homogenize,
    parse_matrix,
    parse_rational_vector,
    smith_decompose,
)

EXIT_PARSE = 2
EXIT_PRECONDITION = 3
EXIT_SEARCH = 4


def _matrix_from_args(args) -> IntMatrix:
    if getattr(args, "matrix_file", None):
        with open(args.matrix_file) as fh:
            return parse_matrix(fh.read())
    if getattr(args, "matrix", None):
        return parse_matrix(args.matrix)
    raise ParseError("pass a matrix with -A <file> or --matrix \"r1; r2\"")


def _beta_from_args(args, d: int):
    if getattr(args, "beta", None) is None:
        return (Fraction(0),) * d
    return parse_rational_vector(args.beta)


def _emit(args, payload: dict, text: str | None = None) -> None:
    if args.format == "text" and text is not None:
        print(text, end="" if text.endswith("\n") else "\n")
    else:
        print(json.dumps(payload, sort_keys=True, indent=2))


def _vec(v):
    return [format_fraction(Fraction(x)) for x in v]


def cmd_analyze(args):
    a = _matrix_from_args(args)
    beta = _beta_from_args(args, a.d)
    rep = report.run_report(a, beta, order_name=args.order)
    print(report.report_json(rep))


def cmd_smith(args):
    a = _matrix_from_args(args)
    dec = smith_decompose(a)
    payload = {
        "C": [list(r) for r in dec.C.rows],
        "D1": [list(r) for r in dec.D1.rows],
        "D2": [list(r) for r in dec.D2.rows],
        "M": [list(r) for r in dec.M.rows],
        "e": list(dec.e),
        "A": [list(r) for r in dec.A.rows],
    }
    _emit(args, payload, f"e = {list(dec.e)}\nA = {dec.A}\n")


def cmd_homogenize(args):
    a = _matrix_from_args(args)
    h = homogenize(a)
    _emit(args, {"matrix": [list(r) for r in h.rows]}, str(h) + "\n")


def cmd_faces(args):
    a = _matrix_from_args(args)
    lat = cones.face_lattice(a)
    payload = {
        "pointed": lat.pointed,
        "proper_faces": [
            {
                "columns": list(f.sorted_columns()),
                "certificate": _vec(f.certificate),
                "dim": f.dim,
            }
            for f in lat.proper_faces
        ],
    }
    lines = [f"pointed: {lat.pointed}"]
    for f in lat.proper_faces:
        lines.append(f"face {list(f.sorted_columns())} dim {f.dim}")
    _emit(args, payload, "\n".join(lines) + "\n")


def cmd_member(args):
    a = _matrix_from_args(args)
    point = [int(x) for x in parse_rational_vector(args.point)]
    witness = cones.semigroup_witness(a, point)
    payload = {"member": witness is not None}
    if witness is not None:
        payload["witness"] = list(witness)
    _emit(args, payload, f"{payload}\n")


def cmd_saturated(args):
    a = _matrix_from_args(args)
    flag = cones.is_saturated(a)
    _emit(args, {"saturated": flag}, f"saturated: {flag}\n")


def cmd_toric_ideal(args):
    a = _matrix_from_args(args)
    ideal = toric.toric_ideal(a, args.order)
    names = [f"d{i+1}" for i in range(a.n)]
    payload = {
        "order": args.order,
        "generators": [
            {
                "terms": [
                    {"exponents": list(m), "coefficient": format_fraction(c)}
                    for m, c in sorted(g.terms.items())
                ],
                "text": g.pretty(names),
            }
            for g in ideal.generators
        ],
    }
    _emit(args, payload, "\n".join(g.pretty(names) for g in ideal.generators) + "\n")


def cmd_qdeg(args):
    a = _matrix_from_args(args)
    qd = toric.quasi_degrees(a, args.j, args.order, args.bound_or_default(64))
    payload = {
        "j": args.j,
        "components": [
            {"offset": list(c.offset), "face_columns": list(c.face.sorted_columns())}
            for c in qd.components
        ],
    }
    lines = [
        f"offset {list(c.offset)} + N * columns {list(c.face.sorted_columns())}"
        for c in qd.components
    ]
    _emit(args, payload, "\n".join(lines) + "\n")


def cmd_sres(args):
    a = _matrix_from_args(args)
    beta = _beta_from_args(args, a.d)
    wit = resonance.sres_witness(a, beta)
    payload = {"member": wit is not None}
    if wit is not None:
        payload["witness"] = {
            "j": wit.j,
            "offset": list(wit.offset),
            "face_columns": list(wit.face_columns),
            "multiplier": format_fraction(wit.multiplier),
        }
    _emit(args, payload, f"{payload}\n")


def cmd_dsres(args):
    a = _matrix_from_args(args)
    beta = _beta_from_args(args, a.d)
    wit = resonance.dsres_witness(a, beta)
    payload = {"member": wit is not None}
    if wit is not None:
        payload["witness"] = {"face_columns": list(wit)}
    _emit(args, payload, f"{payload}\n")


def cmd_delta(args):
    a = _matrix_from_args(args)
    delta = resonance.delta_A(a)
    payload = {"delta": list(delta), "verified": resonance.delta_valid(a, delta)}
    _emit(args, payload, f"delta = {list(delta)}\n")


def cmd_nbeta(args):
    a = _matrix_from_args(args)
    beta = _beta_from_args(args, a.d)
    n = resonance.n_beta(a, beta)
    _emit(args, {"n_beta": n}, f"n_beta = {n}\n")


def cmd_dual_param(args):
    a = _matrix_from_args(args)
    beta = _beta_from_args(args, a.d)
    dual = resonance.dual_parameter(a, beta)
    _emit(args, {"dual": _vec(dual)}, f"dual = {_vec(dual)}\n")


def cmd_present(args):
    a = _matrix_from_args(args)
    beta = _beta_from_args(args, a.d)
    pres = weyl.gkz_presentation(a, beta, args.order)
    payload = {
        "boxes": [b.pretty() for b in pres.boxes],
        "eulers": [e.pretty() for e in pres.eulers],
    }
    _emit(
        args,
        payload,
        "\n".join(["boxes:"] + [f"  {b.pretty()}" for b in pres.boxes]
                  + ["eulers:"] + [f"  {e.pretty()}" for e in pres.eulers]) + "\n",
    )


def cmd_restrict(args):
    a = _matrix_from_args(args)
    beta = _beta_from_args(args, a.d)
    gens = weyl.restrict_presentation(a, beta, args.order)
    payload = {"generators": [g.pretty() for g in gens]}
    _emit(args, payload, "\n".join(g.pretty() for g in gens) + "\n")


def cmd_verify_member(args):
    nvars = args.nvars
    gens = []
    if args.gens:
        gens = [weyl.parse_weyl(g, nvars) for g in args.gens.split(";") if g.strip()]
    if args.matrix or args.matrix_file:
        a = _matrix_from_args(args)
        beta = _beta_from_args(args, a.d)
        pres = weyl.gkz_presentation(a, beta, args.order)
        gens.extend(pres.generators())
    if not gens:
        raise ParseError("no generators: pass --gens and/or a matrix")
    if nvars is None:
        nvars = gens[0].nvars
    target = weyl.parse_weyl(args.target, nvars)
    bound = args.bound if args.bound is not None else 4
    cert = weyl.ideal_member_bounded(target, gens, bound)
    if cert is None:
        payload = {"found": False, "bound": bound, "target": target.pretty()}
        print(json.dumps(payload, sort_keys=True, indent=2))
        raise CertificateNotFound(f"no certificate with cofactor degree <= {bound}")
    payload = {
        "found": True,
        "bound": bound,
        "target": target.pretty(),
        "cofactors": [c.pretty() for c in cert.cofactors],
    }
    _emit(args, payload, "\n".join(payload["cofactors"]) + "\n")


def cmd_factor(args):
    b = _matrix_from_args(args)
    fam = family.factor_B(b)
    payload = {
        "B": [list(r) for r in fam.B.rows],
        "C": [list(r) for r in fam.C.rows],
        "e": list(fam.e),
        "A": [list(r) for r in fam.A.rows],
        "laurent_exponents": [list(c) for c in fam.laurent_exponents()],
        "laurent_sign": -1,
    }
    _emit(args, payload, f"e = {list(fam.e)}\nA = {fam.A}\n")


def cmd_index_sets(args):
    b = _matrix_from_args(args)
    kind = "Iprime" if args.kind in ("Iprime", "I'") else "I"
    idx = family.index_sets(b, kind, cap=args.bound_or_default(family.SECTION_SEARCH_CAP))
    payload = {
        "kind": idx.kind,
        "e": list(idx.e),
        "shift": list(idx.shift),
        "members": [_vec(m) for m in idx.members],
    }
    _emit(args, payload, "\n".join(str(_vec(m)) for m in idx.members) + "\n")


def cmd_psi(args):
    m = [int(x) for x in parse_rational_vector(args.m)]
    image = family.psi_image(m, args.s)
    payload = {
        "coefficient": format_fraction(image.coefficient),
        "exponents": list(image.exponents),
    }
    _emit(args, payload, f"d-exponents: {list(image.exponents)}\n")


def cmd_diagram(args):
    a = _matrix_from_args(args)
    box = tuple(int(x) for x in parse_rational_vector(args.box))
    if len(box) == 2:
        box = (box[0], box[1], 0, 0)
    if len(box) != 4:
        raise ParseError("--box wants 'xmin xmax ymin ymax' (or 'xmin xmax' for d = 1)")
    layers = tuple(t.strip() for t in args.layers.split(",") if t.strip())
    for layer in layers:
        if layer not in report.LAYERS:
            raise ParseError(f"unknown layer {layer!r} (choose from {report.LAYERS})")
    spec = report.DiagramSpec(
        box=box, layers=layers, output_format=args.style, qdeg_j=args.j
    )
    print(report.render_diagram(a, spec), end="")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gkz",
        description="Exact analysis of GKZ-hypergeometric data: toric ideals, "
        "cone geometry, resonance sets, and Weyl-algebra presentations.",
    )
    parser.add_argument("--format", choices=("json", "text"), default="json")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, **kw):
        p = sub.add_parser(name, **kw)
        p.add_argument("-A", "--matrix-file", dest="matrix_file")
        p.add_argument("--matrix")
        p.add_argument("--beta")
        p.add_argument("--order", default="degrevlex")
        p.add_argument("--bound", type=int, default=None)
        p.set_defaults(func=func)
        return p

    add("analyze", cmd_analyze, help="full analysis report")
    add("smith", cmd_smith, help="Smith factorization C D1 D2 M")
    add("homogenize", cmd_homogenize, help="prepend the homogenizing row/column")
    add("faces", cmd_faces, help="face lattice with certificates")
    p = add("member", cmd_member, help="semigroup membership with witness")
    p.add_argument("--point", required=True)
    add("saturated", cmd_saturated, help="saturation test")
    add("toric-ideal", cmd_toric_ideal, help="reduced Groebner basis of I_A")
    p = add("qdeg", cmd_qdeg, help="quasi-degree components of S_A/<d_j>")
    p.add_argument("--j", type=int, required=True)
    add("sres", cmd_sres, help="strong-resonance membership")
    add("dsres", cmd_dsres, help="dual resonance-set membership")
    add("delta", cmd_delta, help="cone shift avoiding sRes")
    add("nbeta", cmd_nbeta, help="homogenization lift bound for beta")
    add("dual-param", cmd_dual_param, help="dual parameter search")
    add("present", cmd_present, help="box and Euler generators")
    add("restrict", cmd_restrict, help="generators of the lambda_0 = 1 restriction")
    p = add("verify-member", cmd_verify_member, help="bounded left-ideal membership")
    p.add_argument("--target", required=True)
    p.add_argument("--gens")
    p.add_argument("--nvars", type=int, default=None)
    add("factor", cmd_factor, help="family factorization B = C D1 A")
    p = add("index-sets", cmd_index_sets, help="congruence representatives I / I'")
    p.add_argument("--kind", default="I", choices=("I", "Iprime", "I'"))
    p = add("psi", cmd_psi, help="exponent image of a monomial section")
    p.add_argument("--m", required=True)
    p.add_argument("--s", type=int, default=0)
    p = add("diagram", cmd_diagram, help="2-D lattice diagram (svg or ascii)")
    p.add_argument("--box", required=True)
    p.add_argument("--layers", default="semigroup,saturation-gap,cone")
    p.add_argument("--style", choices=("svg", "ascii"), default="svg")
    p.add_argument("--j", type=int, default=1)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    # --bound overrides the per-operation default search caps
    args.bound_or_default = lambda default: args.bound if args.bound is not None else default
    try:
        args.func(args)
    except ParseError as exc:
        print(json.dumps({"error": {"code": exc.code, "message": str(exc)}}), file=sys.stderr)
        return EXIT_PARSE
    except PreconditionError as exc:
        print(json.dumps({"error": {"code": exc.code, "message": str(exc)}}), file=sys.stderr)
        return EXIT_PRECONDITION
    except SearchBoundError as exc:
        print(json.dumps({"error": {"code": exc.code, "message": str(exc)}}), file=sys.stderr)
        return EXIT_SEARCH
    except GkzError as exc:
        print(json.dumps({"error": {"code": exc.code, "message": str(exc)}}), file=sys.stderr)
        return EXIT_PRECONDITION
    return 0


if __name__ == "__main__":
    sys.exit(main())
