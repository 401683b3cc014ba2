"""Geometry of the cone R+A and the affine semigroup NA.

Column indices in faces and in the `j` arguments are 1-based, matching the
generator labels a_1..a_n.  Face enumeration is a per-subset LP feasibility
check, adequate for the small matrices this library targets (n <= 12).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product
from typing import Optional, Sequence

from .errors import NotFullDimensional, NotFullLattice, NotPointed, TooManyColumns
from .intlinalg import IntMatrix, primitive_vector, vec_sub
from .lp import feasible_point, rank_over_q

MAX_FACE_COLUMNS = 12


@dataclass(frozen=True)
class Face:
    """A face of R+A: the columns annihilated by a supporting functional.

    The certificate satisfies phi . a_i = 0 for i in the face and > 0 off it;
    dim is the rank of the linear span of the face columns.
    """

    columns: frozenset[int]
    certificate: tuple[Fraction, ...]
    dim: int

    def contains_column(self, j: int) -> bool:
        return j in self.columns

    def sorted_columns(self) -> tuple[int, ...]:
        return tuple(sorted(self.columns))


@dataclass(frozen=True)
class FaceLattice:
    faces: tuple[Face, ...]
    proper_faces: tuple[Face, ...]
    improper: Face
    minimal: Face
    pointed: bool


@dataclass(frozen=True)
class SupportFunction:
    """Primitive integral functional vanishing on a facet, >= 0 on all columns."""

    facet: Face
    functional: tuple[int, ...]

    def __call__(self, v: Sequence) -> Fraction:
        return sum(Fraction(a) * Fraction(x) for a, x in zip(self.functional, v))


def _face_certificate(a: IntMatrix, subset: frozenset[int]) -> Optional[tuple[Fraction, ...]]:
    """phi with phi.a_i = 0 on the subset, phi.a_j >= 1 off it (scale-invariant strictness)."""
    off = [j for j in range(1, a.n + 1) if j not in subset]
    nvars = a.d + len(off)  # phi free, then one slack per strict inequality
    eq = []
    rhs = []
    for j in range(1, a.n + 1):
        row = [Fraction(0)] * nvars
        col = a.column(j - 1)
        for i in range(a.d):
            row[i] = Fraction(col[i])
        if j in subset:
            rhs.append(Fraction(0))
        else:
            row[a.d + off.index(j)] = Fraction(-1)  # phi.a_j - s_j = 1
            rhs.append(Fraction(1))
        eq.append(row)
    nonneg = [False] * a.d + [True] * len(off)
    sol = feasible_point(eq, rhs, nonneg)
    if sol is None:
        return None
    return tuple(sol[: a.d])


@lru_cache(maxsize=None)
def face_lattice(a: IntMatrix) -> FaceLattice:
    """All faces of R+A, each with a validated supporting functional."""
    if a.n > MAX_FACE_COLUMNS:
        raise TooManyColumns(f"face enumeration capped at {MAX_FACE_COLUMNS} columns")
    faces = []
    for size in range(a.n + 1):
        for combo in combinations(range(1, a.n + 1), size):
            subset = frozenset(combo)
            cert = _face_certificate(a, subset)
            if cert is None:
                continue
            cols = [a.column(j - 1) for j in sorted(subset)]
            dim = rank_over_q(cols) if cols else 0
            faces.append(Face(columns=subset, certificate=cert, dim=dim))
    improper = next(f for f in faces if f.columns == frozenset(range(1, a.n + 1)))
    proper = tuple(f for f in faces if f is not improper)
    minimal = min(faces, key=lambda f: (len(f.columns), f.sorted_columns()))
    return FaceLattice(
        faces=tuple(faces),
        proper_faces=proper,
        improper=improper,
        minimal=minimal,
        pointed=(minimal.dim == 0),
    )


def is_pointed(a: IntMatrix) -> bool:
    return face_lattice(a).pointed


def positive_functional(a: IntMatrix) -> tuple[int, ...]:
    """Integer phi with phi . a_j >= 1 for every column; requires a pointed cone."""
    lat = face_lattice(a)
    if not lat.pointed:
        raise NotPointed("cone has a nonzero lineality space")
    cert = lat.minimal.certificate
    den = 1
    for q in cert:
        den = den * q.denominator // _gcd(den, q.denominator)
    # Clearing denominators keeps phi . a_j >= 1 on every column.
    return tuple(int(q * den) for q in cert)


def _gcd(x: int, y: int) -> int:
    from math import gcd

    return gcd(x, y)


def support_functions(a: IntMatrix) -> list[SupportFunction]:
    """One primitive integral support function per facet of the cone."""
    if not a.spans_lattice:
        raise NotFullLattice("columns must generate the full lattice Z^d")
    lat = face_lattice(a)
    if rank_over_q(a.columns()) < a.d:
        raise NotFullDimensional("cone is not full-dimensional")
    out = []
    for face in lat.proper_faces:
        if face.dim != a.d - 1:
            continue
        den = 1
        for q in face.certificate:
            den = den * q.denominator // _gcd(den, q.denominator)
        vec = primitive_vector(tuple(int(q * den) for q in face.certificate))
        out.append(SupportFunction(facet=face, functional=vec))
    out.sort(key=lambda s: s.functional)
    return out


def saturation_contains(a: IntMatrix, b: Sequence[int]) -> bool:
    """Membership of b in the rational cone Q+A."""
    return cone_witness(a, b) is not None


def cone_witness(a: IntMatrix, b: Sequence[int]) -> Optional[list[Fraction]]:
    """x >= 0 over Q with A x = b, or None."""
    if len(b) != a.d:
        raise ValueError("point has wrong dimension")
    eq = [[Fraction(a.entry(i, j)) for j in range(a.n)] for i in range(a.d)]
    rhs = [Fraction(x) for x in b]
    return feasible_point(eq, rhs, [True] * a.n)


def semigroup_contains(a: IntMatrix, b: Sequence[int]) -> bool:
    return semigroup_witness(a, b) is not None


def semigroup_witness(a: IntMatrix, b: Sequence[int]) -> Optional[tuple[int, ...]]:
    """x in N^n with A x = b, or None.  Requires NA pointed.

    Depth-first search over column subtractions, memoized; the strictly
    positive functional from the face lattice bounds the recursion.
    """
    phi = positive_functional(a)
    cols = a.columns()
    weights = [sum(p * c for p, c in zip(phi, col)) for col in cols]
    target = tuple(int(x) for x in b)
    memo: dict[tuple[int, ...], Optional[tuple[int, ...]]] = {}

    def search(v: tuple[int, ...]) -> Optional[tuple[int, ...]]:
        if all(x == 0 for x in v):
            return (0,) * a.n
        if v in memo:
            return memo[v]
        height = sum(p * x for p, x in zip(phi, v))
        found = None
        for j in range(a.n):
            if weights[j] > height:
                continue
            rest = search(vec_sub(v, cols[j]))
            if rest is not None:
                sol = list(rest)
                sol[j] += 1
                found = tuple(sol)
                break
        memo[v] = found
        return found

    return search(target)


def extreme_rays(a: IntMatrix) -> list[tuple[int, ...]]:
    """Primitive generators of the one-dimensional faces of a pointed cone.

    For a one-dimensional cone the ray is the improper face, so the scan
    covers the whole lattice, not just the proper part.
    """
    lat = face_lattice(a)
    if not lat.pointed:
        raise NotPointed("extreme rays are only computed for pointed cones")
    rays = set()
    for face in lat.faces:
        if face.dim != 1:
            continue
        j = min(face.columns)
        col = a.column(j - 1)
        rays.add(primitive_vector(col))
    return sorted(rays)


def is_saturated(a: IntMatrix) -> bool:
    """Whether NA equals Q+A intersected with Z^d.

    Every Hilbert-basis element of the cone lies in the zonotope spanned by
    the primitive extreme rays, so checking all lattice points of the
    zonotope's bounding box that lie in the cone is conclusive.
    """
    if not face_lattice(a).pointed:
        raise NotPointed("saturation test requires a pointed semigroup")
    rays = extreme_rays(a)
    if not rays:
        return True
    lo = [sum(min(0, r[i]) for r in rays) for i in range(a.d)]
    hi = [sum(max(0, r[i]) for r in rays) for i in range(a.d)]
    for point in product(*(range(l, h + 1) for l, h in zip(lo, hi))):
        if not saturation_contains(a, point):
            continue
        if not semigroup_contains(a, point):
            return False
    return True


def interior_contains(a: IntMatrix, b: Sequence) -> bool:
    """Membership of b in the interior of R+A (full-dimensional cones only).

    A full-dimensional cone is cut out by its facet inequalities, so strict
    positivity on every support function characterizes the interior; with no
    proper facets the cone is the whole space.
    """
    return all(s(b) > 0 for s in support_functions(a))


def saturation_contains_rational(a: IntMatrix, b: Sequence) -> bool:
    """Membership of a rational point in Q+A."""
    eq = [[Fraction(a.entry(i, j)) for j in range(a.n)] for i in range(a.d)]
    rhs = [Fraction(x) for x in b]
    return feasible_point(eq, rhs, [True] * a.n) is not None
