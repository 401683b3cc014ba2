"""Parameter-space analysis: strong resonance, its dual set, cone shifts.

Rational parameters only.  Membership in sRes(A) is decided component-wise
against the quasi-degree decompositions: beta lies in sRes_j(A) iff
beta + m*a_j lands in some offset + QF with an integer m >= 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Optional, Sequence

from .cones import face_lattice, interior_contains, semigroup_contains
from .errors import (
    NotFullLattice,
    NotHomogeneous,
    NotPointed,
    ParameterResonant,
    SearchBoundError,
)
from .intlinalg import (
    IntMatrix,
    homogeneity_vector,
    homogenize,
    lattice_kernel,
    solve_integer,
    vec_add,
    vec_sub,
)
from .lp import feasible_point, gauss_solve
from .toric import quasi_degrees

DUAL_SEARCH_RADIUS = 8


@dataclass(frozen=True)
class ResonanceComponent:
    """One sheet of sRes_j(A): the union over m >= 1 of -m*a_j + offset + QF."""

    j: int
    offset: tuple[int, ...]
    face_columns: tuple[int, ...]
    shift: tuple[int, ...]


@dataclass(frozen=True)
class ResonanceSet:
    matrix: IntMatrix
    components: tuple[ResonanceComponent, ...]


@dataclass(frozen=True)
class ResonanceWitness:
    j: int
    offset: tuple[int, ...]
    face_columns: tuple[int, ...]
    multiplier: Fraction


@lru_cache(maxsize=None)
def resonance_set(a: IntMatrix) -> ResonanceSet:
    comps = []
    for j in range(1, a.n + 1):
        qd = quasi_degrees(a, j)
        col = a.column(j - 1)
        for pair in qd.components:
            comps.append(
                ResonanceComponent(
                    j=j,
                    offset=pair.offset,
                    face_columns=pair.face.sorted_columns(),
                    shift=col,
                )
            )
    return ResonanceSet(matrix=a, components=tuple(comps))


def _component_multiplier(
    a: IntMatrix, comp: ResonanceComponent, beta: Sequence[Fraction]
) -> Optional[tuple[str, Optional[Fraction]]]:
    """Solve beta + m*shift in offset + QF for the multiplier m.

    Returns ("free", None) when any m works (shift inside the face span),
    ("unique", m) when the multiplier is pinned down, None when infeasible.
    """
    cols = list(comp.face_columns)
    rows = []
    rhs = []
    for i in range(a.d):
        row = [Fraction(comp.shift[i])]
        row.extend(-Fraction(a.entry(i, j - 1)) for j in cols)
        rows.append(row)
        rhs.append(Fraction(comp.offset[i]) - Fraction(beta[i]))
    sol = gauss_solve(rows, rhs)
    if sol is None:
        return None
    particular, nullspace = sol
    if any(vec[0] != 0 for vec in nullspace):
        return ("free", None)
    return ("unique", particular[0])


def sres_witness(
    a: IntMatrix, beta: Sequence[Fraction]
) -> Optional[ResonanceWitness]:
    """A component and integer multiplier certifying beta in sRes(A), or None."""
    beta = tuple(Fraction(x) for x in beta)
    if len(beta) != a.d:
        raise ValueError("parameter has wrong dimension")
    for comp in resonance_set(a).components:
        got = _component_multiplier(a, comp, beta)
        if got is None:
            continue
        kind, m = got
        if kind == "free":
            chosen = Fraction(1)
        elif m.denominator == 1 and m >= 1:
            chosen = m
        else:
            continue
        return ResonanceWitness(
            j=comp.j,
            offset=comp.offset,
            face_columns=comp.face_columns,
            multiplier=chosen,
        )
    return None


def sres_contains(a: IntMatrix, beta: Sequence[Fraction]) -> bool:
    """Strong-resonance membership for a rational parameter."""
    return sres_witness(a, beta) is not None


def dsres_witness(a: IntMatrix, beta: Sequence[Fraction]) -> Optional[tuple[int, ...]]:
    """Columns of a proper face F certifying beta in DsRes(A), or None.

    Membership per face is tested in the quotient modulo QF: the class of
    beta must lie in both the image of the cone and the image of Z^d.
    """
    if not a.spans_lattice:
        raise NotFullLattice("DsRes requires columns generating Z^d")
    beta = tuple(Fraction(x) for x in beta)
    if len(beta) != a.d:
        raise ValueError("parameter has wrong dimension")
    for face in face_lattice(a).proper_faces:
        cols = sorted(face.columns)
        if not _beta_in_lattice_plus_span(a, cols, beta):
            continue
        if not _beta_in_cone_plus_span(a, cols, beta):
            continue
        return tuple(cols)
    return None


def dsres_contains(a: IntMatrix, beta: Sequence[Fraction]) -> bool:
    return dsres_witness(a, beta) is not None


def _beta_in_lattice_plus_span(a: IntMatrix, cols, beta) -> bool:
    """beta in Z^d + QF, via integer functionals annihilating the face span.

    With psi_1..psi_k a basis of the annihilator of QF in the dual lattice,
    beta lies in Z^d + QF iff (psi_i . beta)_i is hit by some integer point.
    """
    if not cols:
        return all(Fraction(x).denominator == 1 for x in beta)
    span = IntMatrix.from_rows(
        [[a.entry(i, j - 1) for i in range(a.d)] for j in cols]
    )  # rows are the face columns; kernel = annihilator functionals
    ann = lattice_kernel(span)
    if not ann:
        return True  # face spans Q^d
    values = [sum(Fraction(p) * Fraction(b) for p, b in zip(psi, beta)) for psi in ann]
    if any(v.denominator != 1 for v in values):
        return False  # psi(Z^d) is integral
    psi_matrix = IntMatrix.from_rows(ann)
    return solve_integer(psi_matrix, [int(v) for v in values]) is not None


def _beta_in_cone_plus_span(a: IntMatrix, cols, beta) -> bool:
    """beta in Q+A + QF via LP feasibility."""
    nvars = a.n + len(cols)
    rows = []
    for i in range(a.d):
        row = [Fraction(a.entry(i, j)) for j in range(a.n)]
        row.extend(Fraction(a.entry(i, j - 1)) for j in cols)
        rows.append(row)
    nonneg = [True] * a.n + [False] * len(cols)
    return feasible_point(rows, [Fraction(x) for x in beta], nonneg) is not None


def _gcd(x: int, y: int) -> int:
    from math import gcd

    return gcd(x, y)


def delta_valid(a: IntMatrix, delta: Sequence[int]) -> bool:
    """Whether (R+A + delta) misses every resonance component (real t >= 1 LP)."""
    delta = tuple(int(x) for x in delta)
    for comp in resonance_set(a).components:
        cols = list(comp.face_columns)
        # delta + A x = -t*shift + offset + F c,  x >= 0, t >= 1, c free
        nvars = a.n + 1 + len(cols)
        rows = []
        rhs = []
        for i in range(a.d):
            row = [Fraction(a.entry(i, j)) for j in range(a.n)]
            row.append(Fraction(comp.shift[i]))
            row.extend(-Fraction(a.entry(i, j - 1)) for j in cols)
            rows.append(row)
            rhs.append(Fraction(comp.offset[i] - delta[i] - comp.shift[i]))
        nonneg = [True] * (a.n + 1) + [False] * len(cols)
        if feasible_point(rows, rhs, nonneg) is not None:
            return False
    return True


def delta_A(a: IntMatrix) -> tuple[int, ...]:
    """A semigroup element translating the cone off sRes(A).

    Starts from (sum of columns) + (sum of all filtration offsets) and then
    greedily walks back along columns while the verifier still passes.
    """
    if not a.spans_lattice:
        raise NotFullLattice("delta requires columns generating Z^d")
    if not face_lattice(a).pointed:
        raise NotPointed("delta requires a pointed semigroup")
    delta = a.column_sum()
    for comp in resonance_set(a).components:
        delta = vec_add(delta, comp.offset)
    if not delta_valid(a, delta):
        raise AssertionError("constructed delta failed its own verifier")
    improved = True
    while improved:
        improved = False
        for j in range(a.n):
            cand = vec_sub(delta, a.column(j))
            if semigroup_contains(a, cand) and delta_valid(a, cand):
                delta = cand
                improved = True
                break
    return delta


def n_beta(a: IntMatrix, beta: Sequence[Fraction]) -> int:
    """Integer bound so that (b0, beta) stays non-strongly-resonant for b0 >= bound."""
    beta = tuple(Fraction(x) for x in beta)
    if sres_contains(a, beta):
        raise ParameterResonant("beta is strongly resonant")
    atilde = homogenize(a)
    bound = 0
    for pair in quasi_degrees(atilde, 1).components:
        t = _line_hits_component(atilde, pair, beta)
        if t is not None:
            from math import ceil

            bound = max(bound, ceil(t))
    for b0 in (Fraction(bound), Fraction(bound) + 1, Fraction(bound) + Fraction(7, 2)):
        if sres_contains(atilde, (b0,) + beta):
            raise AssertionError("n_beta bound failed its spot check")
    return bound


def _line_hits_component(atilde, pair, beta) -> Optional[Fraction]:
    """t with (t, beta) in offset + QF, unique when (1,0,..,0) is off the span."""
    cols = sorted(pair.face.columns)
    rows = []
    rhs = []
    for i in range(1, atilde.d):
        row = [Fraction(atilde.entry(i, j - 1)) for j in cols]
        rows.append(row)
        rhs.append(Fraction(beta[i - 1]) - Fraction(pair.offset[i]))
    if cols:
        sol = gauss_solve(rows, rhs)
        if sol is None:
            return None
        coeffs, _ = sol
    else:
        if any(x != 0 for x in rhs):
            return None
        coeffs = []
    t = Fraction(pair.offset[0])
    for c, j in zip(coeffs, cols):
        t += c * Fraction(atilde.entry(0, j - 1))
    return t


def _box_shifts(d: int, radius: int):
    for r in range(radius + 1):
        for point in product(range(-r, r + 1), repeat=d):
            if max(abs(x) for x in point) == r if point else r == 0:
                yield point


def dual_parameter(
    a: IntMatrix, beta: Sequence[Fraction], radius: int = DUAL_SEARCH_RADIUS
) -> tuple[Fraction, ...]:
    """beta' congruent to -beta mod Z^d with beta' outside DsRes(A).

    Scans integer translates of -beta, preferring candidates in the interior
    of the negated cone, where the dual set provably cannot reach.
    """
    beta = tuple(Fraction(x) for x in beta)
    if homogeneity_vector(a) is None:
        raise NotHomogeneous("dual parameters need a homogeneous matrix")
    if sres_contains(a, beta):
        raise ParameterResonant("beta is strongly resonant")
    for shift in _box_shifts(a.d, radius):
        cand = tuple(-b - s for b, s in zip(beta, shift))
        neg = tuple(-x for x in cand)
        if interior_contains(a, neg) and not dsres_contains(a, cand):
            return cand
    for shift in _box_shifts(a.d, radius):
        cand = tuple(-b - s for b, s in zip(beta, shift))
        if not dsres_contains(a, cand):
            return cand
    raise SearchBoundError(f"no dual parameter within radius {radius}")
