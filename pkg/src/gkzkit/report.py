"""Whole-pipeline analysis reports and 2-D lattice diagrams.

Reports are plain dicts with deterministic JSON serialization (sorted keys,
rationals as exact 'p/q' strings).  Sections whose preconditions fail are
embedded as {"error": {...}} values instead of aborting the whole report.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from . import cones, family, resonance, toric, weyl
from .errors import DimensionUnsupported, GkzError, PreconditionError
from .intlinalg import (
    IntMatrix,
    elementary_divisors,
    format_fraction,
    homogeneity_vector,
)
from .lp import rank_over_q

SCHEMA_VERSION = 1


def _fr(x) -> str:
    return format_fraction(Fraction(x))


def _vec(v) -> list:
    return [_fr(x) for x in v]


def _poly_json(p, nvars: int) -> dict:
    terms = sorted(p.terms.items())
    return {
        "terms": [{"exponents": list(m), "coefficient": _fr(c)} for m, c in terms],
        "text": p.pretty([f"d{i+1}" for i in range(nvars)]),
    }


def _weyl_json(w: weyl.WeylElement) -> dict:
    terms = []
    for (u, v), c in sorted(w.terms.items()):
        terms.append(
            {"lambda": list(u), "d": list(v), "coefficient": _fr(c)}
        )
    return {"terms": terms, "text": w.pretty()}


def _face_json(f: cones.Face) -> dict:
    return {
        "columns": list(f.sorted_columns()),
        "certificate": _vec(f.certificate),
        "dim": f.dim,
    }


def _section(func):
    try:
        return func()
    except GkzError as exc:
        return {"error": {"code": exc.code, "message": str(exc)}}


def run_report(
    a: IntMatrix, beta: Sequence[Fraction], order_name: str = "degrevlex"
) -> dict:
    """Deterministic full analysis of (A, beta)."""
    beta = tuple(Fraction(x) for x in beta)
    if len(beta) != a.d:
        raise PreconditionError("beta length does not match the matrix")
    report: dict = {
        "schema_version": SCHEMA_VERSION,
        "input": {"matrix": [list(r) for r in a.rows], "beta": _vec(beta)},
        "order": order_name,
    }

    lat = _section(lambda: cones.face_lattice(a))
    if isinstance(lat, dict):
        report["faces"] = lat
        pointed = None
    else:
        pointed = lat.pointed
        report["faces"] = {
            "proper": [_face_json(f) for f in lat.proper_faces],
            "pointed": lat.pointed,
        }
    h = homogeneity_vector(a)
    report["flags"] = {
        "pointed": pointed,
        "spans_lattice": a.spans_lattice,
        "homogeneous": list(h) if h is not None else None,
        "saturated": _section(lambda: cones.is_saturated(a)),
        "full_dimensional": rank_over_q(a.columns()) == a.d,
    }
    report["elementary_divisors"] = list(elementary_divisors(a))

    def _toric():
        ideal = toric.toric_ideal(a, order_name)
        return {
            "generators": [_poly_json(g, a.n) for g in ideal.generators],
            "order": order_name,
            "is_groebner": ideal.is_groebner,
        }

    report["toric_ideal"] = _section(_toric)

    def _qdeg():
        out = {}
        for j in range(1, a.n + 1):
            qd = toric.quasi_degrees(a, j, order_name)
            out[str(j)] = [
                {"offset": list(c.offset), "face_columns": list(c.face.sorted_columns())}
                for c in qd.components
            ]
        return out

    report["quasi_degrees"] = _section(_qdeg)

    def _sres():
        wit = resonance.sres_witness(a, beta)
        if wit is None:
            return {"member": False}
        return {
            "member": True,
            "witness": {
                "j": wit.j,
                "offset": list(wit.offset),
                "face_columns": list(wit.face_columns),
                "multiplier": _fr(wit.multiplier),
            },
        }

    report["sres"] = _section(_sres)

    def _dsres():
        wit = resonance.dsres_witness(a, beta)
        if wit is None:
            return {"member": False}
        return {"member": True, "witness": {"face_columns": list(wit)}}

    report["dsres"] = _section(_dsres)
    report["delta"] = _section(lambda: list(resonance.delta_A(a)))
    report["dual_parameter"] = _section(
        lambda: _vec(resonance.dual_parameter(a, beta))
    )
    report["n_beta"] = _section(lambda: resonance.n_beta(a, beta))

    def _present():
        pres = weyl.gkz_presentation(a, beta, order_name)
        return {
            "boxes": [_weyl_json(b) for b in pres.boxes],
            "eulers": [_weyl_json(e) for e in pres.eulers],
        }

    report["presentation"] = _section(_present)

    def _monodromic():
        hvec = weyl.euler_decomposition(a)
        if hvec is None:
            return {"monodromic": False}
        scalar = sum(Fraction(hk) * bk for hk, bk in zip(hvec, beta))
        return {"monodromic": True, "h": list(hvec), "b": _fr(scalar)}

    report["euler_decomposition"] = _section(_monodromic)

    def _index():
        divisors = elementary_divisors(a)
        if len(divisors) == a.d and all(x == 1 for x in divisors):
            return {"skipped": "matrix already spans the lattice"}
        sets = {}
        for kind in ("I", "Iprime"):
            idx = family.index_sets(a, kind)
            sets[kind] = {
                "members": [_vec(m) for m in idx.members],
                "shift": list(idx.shift),
                "e": list(idx.e),
            }
        return sets

    report["index_sets"] = _section(_index)
    return report


def report_json(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2)


LAYERS = ("semigroup", "saturation-gap", "cone", "qdeg", "sres", "dsres", "delta-cone")


@dataclass(frozen=True)
class DiagramSpec:
    box: tuple[int, int, int, int]  # xmin, xmax, ymin, ymax (ymin/ymax unused if d=1)
    layers: tuple[str, ...]
    output_format: str = "svg"  # or "ascii"
    qdeg_j: int = 1


def classify_point(a: IntMatrix, point: tuple[int, ...], layers: Sequence[str], qdeg_j: int = 1) -> dict:
    """Exact per-layer classification of one lattice point."""
    out = {}
    if "semigroup" in layers or "saturation-gap" in layers:
        in_semi = cones.semigroup_contains(a, point)
        in_cone = cones.saturation_contains(a, point)
        if "semigroup" in layers:
            out["semigroup"] = in_semi
        if "saturation-gap" in layers:
            out["saturation-gap"] = in_cone and not in_semi
    if "cone" in layers:
        out["cone"] = cones.saturation_contains(a, point)
    if "qdeg" in layers:
        qd = toric.quasi_degrees(a, qdeg_j)
        out["qdeg"] = qd.degree_set_contains(point)
    if "sres" in layers:
        out["sres"] = resonance.sres_contains(a, tuple(Fraction(x) for x in point))
    if "dsres" in layers:
        out["dsres"] = resonance.dsres_contains(a, tuple(Fraction(x) for x in point))
    if "delta-cone" in layers:
        delta = resonance.delta_A(a)
        shifted = tuple(x - dx for x, dx in zip(point, delta))
        out["delta-cone"] = cones.saturation_contains(a, shifted)
    return out


def _lattice_points(spec: DiagramSpec, d: int):
    x0, x1, y0, y1 = spec.box
    if d == 1:
        for x in range(x0, x1 + 1):
            yield (x,)
    else:
        for y in range(y1, y0 - 1, -1):
            for x in range(x0, x1 + 1):
                yield (x, y)


def classification_table(a: IntMatrix, spec: DiagramSpec) -> dict:
    if a.d > 2:
        raise DimensionUnsupported("diagrams are limited to one or two rows")
    table = {}
    for p in _lattice_points(spec, a.d):
        table[p] = classify_point(a, p, spec.layers, spec.qdeg_j)
    return table


def _sres_segments(a: IntMatrix, spec: DiagramSpec) -> list[dict]:
    """Analytic line/point data for sres components clipped to the box.

    Each component marches -m * a_j for m = 1, 2, ..; a translate that has
    left the box never comes back (the shift is fixed), so a cap scaled to
    the box diameter is conclusive.
    """
    if a.d != 2:
        return []
    x0, x1, y0, y1 = spec.box
    cap = 4 * (abs(x1) + abs(x0) + abs(y1) + abs(y0) + 8)
    segments = []
    for comp in resonance.resonance_set(a).components:
        cols = list(comp.face_columns)
        direction = a.column(cols[0] - 1) if cols else None
        for m in range(1, cap + 1):
            anchor = tuple(
                Fraction(o) - m * Fraction(s) for o, s in zip(comp.offset, comp.shift)
            )
            seg = _clip_line(anchor, direction, spec.box)
            if seg is not None:
                segments.append(
                    {"j": comp.j, "m": m, "start": _vec(seg[0]), "end": _vec(seg[1])}
                )
    return segments


def _clip_line(anchor, direction, box):
    x0, x1, y0, y1 = box
    if direction is None or direction == (0, 0):
        x, y = anchor
        if x0 <= x <= x1 and y0 <= y <= y1:
            return (anchor, anchor)
        return None
    tmin, tmax = Fraction(-10**9), Fraction(10**9)
    for coord, lo, hi, dv in (
        (anchor[0], x0, x1, direction[0]),
        (anchor[1], y0, y1, direction[1]),
    ):
        if dv == 0:
            if not (lo <= coord <= hi):
                return None
            continue
        t_lo = (Fraction(lo) - coord) / dv
        t_hi = (Fraction(hi) - coord) / dv
        if t_lo > t_hi:
            t_lo, t_hi = t_hi, t_lo
        tmin = max(tmin, t_lo)
        tmax = min(tmax, t_hi)
    if tmin > tmax:
        return None
    p = tuple(c + tmin * dv for c, dv in zip(anchor, direction))
    q = tuple(c + tmax * dv for c, dv in zip(anchor, direction))
    return (p, q)


def _qdeg_segments(a: IntMatrix, spec: DiagramSpec) -> list[dict]:
    """One clipped line (or point) per quasi-degree component."""
    if a.d != 2:
        return []
    segments = []
    for comp in toric.quasi_degrees(a, spec.qdeg_j).components:
        cols = comp.face.sorted_columns()
        direction = a.column(cols[0] - 1) if cols else None
        anchor = tuple(Fraction(x) for x in comp.offset)
        seg = _clip_line(anchor, direction, spec.box)
        if seg is not None:
            segments.append({"start": _vec(seg[0]), "end": _vec(seg[1])})
    return segments


def _dsres_segments(a: IntMatrix, spec: DiagramSpec) -> list[dict]:
    """Analytic lines of the dual set: per face, one line per reachable class.

    For a one-dimensional face with primitive annihilator psi, the union
    (cone lattice points) + QF is the family of lines psi = v over integers
    v in psi(cone); only the values whose line crosses the box are emitted.
    """
    if a.d != 2:
        return []
    from .intlinalg import lattice_kernel

    x0, x1, y0, y1 = spec.box
    segments = []
    for face in cones.face_lattice(a).proper_faces:
        cols = face.sorted_columns()
        if face.dim != 1:
            continue
        direction = a.column(cols[0] - 1)
        span = IntMatrix.from_rows([list(direction)])
        ann = lattice_kernel(span)
        if len(ann) != 1:
            continue
        psi = ann[0]
        col_values = [
            psi[0] * a.entry(0, j) + psi[1] * a.entry(1, j) for j in range(a.n)
        ]
        corner_values = [
            psi[0] * x + psi[1] * y for x in (x0, x1) for y in (y0, y1)
        ]
        lo, hi = min(corner_values), max(corner_values)
        for v in range(lo, hi + 1):
            # v must be reachable by psi on the cone
            if min(col_values) >= 0 and v < 0:
                continue
            if max(col_values) <= 0 and v > 0:
                continue
            anchor = _point_with_value(psi, v)
            seg = _clip_line(anchor, direction, spec.box)
            if seg is not None:
                segments.append(
                    {"columns": list(cols), "value": v, "start": _vec(seg[0]), "end": _vec(seg[1])}
                )
    return segments


def _point_with_value(psi, v):
    if psi[0] != 0:
        return (Fraction(v, psi[0]), Fraction(0))
    return (Fraction(0), Fraction(v, psi[1]))


def render_diagram(a: IntMatrix, spec: DiagramSpec) -> str:
    if a.d > 2:
        raise DimensionUnsupported("diagrams are limited to one or two rows")
    table = classification_table(a, spec)
    if spec.output_format == "ascii":
        return _render_ascii(a, spec, table)
    return _render_svg(a, spec, table)


def _glyph(flags: dict) -> str:
    if flags.get("semigroup"):
        return "O"
    if flags.get("saturation-gap"):
        return "o"
    if flags.get("qdeg") or flags.get("sres") or flags.get("dsres"):
        return "x"
    if flags.get("delta-cone"):
        return "#"
    if flags.get("cone"):
        return "+"
    return "."


def _render_ascii(a: IntMatrix, spec: DiagramSpec, table: dict) -> str:
    x0, x1, y0, y1 = spec.box
    lines = []
    if a.d == 1:
        row = " ".join(_glyph(table[(x,)]) for x in range(x0, x1 + 1))
        lines.append(row)
        lines.append(" ".join("^" if x == 0 else " " for x in range(x0, x1 + 1)))
    else:
        for y in range(y1, y0 - 1, -1):
            lines.append(" ".join(_glyph(table[(x, y)]) for x in range(x0, x1 + 1)))
    legend = "legend: O semigroup, o saturation gap, x marked layer, # shifted cone, + cone, . background"
    lines.append(legend)
    return "\n".join(lines) + "\n"


def _render_svg(a: IntMatrix, spec: DiagramSpec, table: dict) -> str:
    x0, x1, y0, y1 = spec.box
    scale = 28
    pad = 20
    if a.d == 1:
        y0 = y1 = 0
    width = (x1 - x0) * scale + 2 * pad
    height = (y1 - y0) * scale + 2 * pad

    def sx(x) -> float:
        return pad + float(Fraction(x) - x0) * scale

    def sy(y) -> float:
        return pad + float(Fraction(y1) - Fraction(y)) * scale

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">'
    ]
    if "cone" in spec.layers and a.d == 2:
        hull = _cone_polygon(a, spec.box)
        if hull:
            pts = " ".join(f"{sx(p[0]):.2f},{sy(p[1]):.2f}" for p in hull)
            parts.append(f'<polygon points="{pts}" fill="#bbbbbb" fill-opacity="0.45"/>')
    line_layers = []
    if a.d == 2:
        if "sres" in spec.layers:
            line_layers.append(("black", _sres_segments(a, spec)))
        if "dsres" in spec.layers:
            line_layers.append(("#666666", _dsres_segments(a, spec)))
        if "qdeg" in spec.layers:
            line_layers.append(("#3355aa", _qdeg_segments(a, spec)))
    for color, segments in line_layers:
        for seg in segments:
            p, q = seg["start"], seg["end"]
            parts.append(
                f'<line x1="{sx(Fraction(p[0])):.2f}" y1="{sy(Fraction(p[1])):.2f}" '
                f'x2="{sx(Fraction(q[0])):.2f}" y2="{sy(Fraction(q[1])):.2f}" '
                f'stroke="{color}" stroke-width="1"/>'
            )
    for point, flags in table.items():
        x = point[0]
        y = point[1] if a.d == 2 else 0
        cx, cy = sx(x), sy(y)
        if flags.get("semigroup"):
            parts.append(f'<circle cx="{cx:.2f}" cy="{cy:.2f}" r="4" fill="black"/>')
        elif flags.get("saturation-gap"):
            parts.append(
                f'<circle cx="{cx:.2f}" cy="{cy:.2f}" r="4" fill="white" stroke="black"/>'
            )
        elif flags.get("sres") or flags.get("qdeg") or flags.get("dsres"):
            parts.append(f'<circle cx="{cx:.2f}" cy="{cy:.2f}" r="3" fill="#444444"/>')
        else:
            parts.append(f'<circle cx="{cx:.2f}" cy="{cy:.2f}" r="1" fill="black"/>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def _cone_polygon(a: IntMatrix, box) -> Optional[list[tuple[float, float]]]:
    """Clip R+A to the box for shading (2-D only, pointed full-dim cones)."""
    try:
        rays = cones.extreme_rays(a)
    except GkzError:
        return None
    if len(rays) != 2:
        return None
    x0, x1, y0, y1 = box
    reach = 4 * (abs(x0) + abs(x1) + abs(y0) + abs(y1) + 4)
    r1, r2 = rays
    return [
        (0.0, 0.0),
        (r1[0] * reach, r1[1] * reach),
        (r2[0] * reach, r2[1] * reach),
    ]
