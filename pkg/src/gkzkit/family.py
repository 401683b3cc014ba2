"""Factorization bookkeeping for families of Laurent polynomials.

Covers the Smith-based splitting B = C * D1 * A, the index sets of
congruence-class representatives with resonance-avoiding sections, and the
exponent-level morphism from relative-form data into the homogenized system.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Sequence

from .errors import SectionSearchFailed
from .intlinalg import IntMatrix, homogenize, smith_decompose, vec_add
from .resonance import delta_A, dsres_contains, sres_contains
from .weyl import WeylElement

SECTION_SEARCH_CAP = 64


@dataclass(frozen=True)
class FamilyData:
    """B = C * diag(e) * A with A spanning the lattice; the Laurent family
    -sum_i lambda_i y^(b_i) is kept as exponent data only (columns of B)."""

    B: IntMatrix
    C: IntMatrix
    e: tuple[int, ...]
    A: IntMatrix

    def laurent_exponents(self) -> list[tuple[int, ...]]:
        return self.B.columns()


def factor_B(b: IntMatrix) -> FamilyData:
    """Split B through its Smith form; raises RankDeficient below full rank."""
    dec = smith_decompose(b)
    a = dec.A
    if not a.spans_lattice:
        raise AssertionError("D2 @ M should always span the lattice")
    return FamilyData(B=b, C=dec.C, e=dec.e, A=a)


def i_e_classes(e: Sequence[int]) -> list[tuple[Fraction, ...]]:
    """The set prod_k {0, 1/e_k, .., (e_k-1)/e_k}, sorted."""
    axes = [[Fraction(r, ek) for r in range(ek)] for ek in e]
    return sorted(product(*axes))


@dataclass(frozen=True)
class IndexSet:
    kind: str  # "I" or "Iprime"
    members: tuple[tuple[Fraction, ...], ...]
    shift: tuple[int, ...]
    e: tuple[int, ...]


def index_sets(b: IntMatrix, kind: str, cap: int = SECTION_SEARCH_CAP) -> IndexSet:
    """Representatives (0, gamma) + shift, gamma in I_e, one congruence class each.

    kind "I" wants every member outside sRes(A~); kind "Iprime" wants every
    member outside DsRes(A~).  A single integer shift is scanned: guided by
    delta for "I" (pushing into the shifted cone), and by the negated column
    sum for "Iprime" (pushing into the interior of the negated cone).
    """
    if kind not in ("I", "Iprime"):
        raise ValueError("kind must be 'I' or 'Iprime'")
    fam = factor_B(b)
    atilde = homogenize(fam.A)
    gammas = i_e_classes(fam.e)
    base = [(Fraction(0),) + g for g in gammas]
    colsum = atilde.column_sum()
    if kind == "I":
        start = delta_A(atilde)
        reject = lambda member: sres_contains(atilde, member)
    else:
        start = tuple(0 for _ in range(atilde.d))
        reject = lambda member: dsres_contains(atilde, member)
    step = colsum if kind == "I" else tuple(-x for x in colsum)
    shift = start
    for _ in range(cap + 1):
        members = [tuple(Fraction(s) + x for s, x in zip(shift, m)) for m in base]
        if not any(reject(m) for m in members):
            return IndexSet(
                kind=kind, members=tuple(members), shift=tuple(shift), e=fam.e
            )
        shift = vec_add(shift, step)
    raise SectionSearchFailed(f"no {kind} section within {cap} shifts")


@dataclass(frozen=True)
class PsiImage:
    """d_0^(s-m+1) d_1^(m_1) .. d_n^(m_n), with a formal d_0 exponent."""

    coefficient: Fraction
    exponents: tuple[int, ...]


def psi_image(m: Sequence[int], s: int) -> PsiImage:
    """Image of y^(sum m_i a_i) w0 (x) d0^s under the comparison morphism."""
    m = tuple(int(x) for x in m)
    total = sum(m)
    return PsiImage(coefficient=Fraction(1), exponents=(int(s) - total + 1,) + m)


def psi_lambda_derivative(m: Sequence[int], s: int, i: int) -> tuple[tuple[int, ...], int]:
    """The d_lambda_i action on monomial data: multiply by y^(a_i), bump d_0."""
    m = tuple(int(x) for x in m)
    if not 0 <= i < len(m):
        raise IndexError("variable index out of range")
    bumped = m[:i] + (m[i] + 1,) + m[i + 1 :]
    return bumped, int(s) + 1


def psi_kernel_sections(a: IntMatrix) -> list[WeylElement]:
    """The d flat sections sum_i a_ki lambda_i d_i, one per row, in n+1 pairs.

    Each section equals the corresponding beta-free Euler operator of the
    homogenized presentation, so it reduces to zero against the generators.
    """
    nvars = a.n + 1
    sections = []
    for k in range(a.d):
        terms = {}
        for i in range(a.n):
            coeff = a.entry(k, i)
            if coeff:
                u = tuple(1 if t == i + 1 else 0 for t in range(nvars))
                terms[(u, u)] = Fraction(coeff)
        sections.append(WeylElement(nvars, terms))
    return sections
