"""Exact integer linear algebra: matrices, Smith/Hermite forms, lattice kernels.

Everything works on arbitrary-precision Python ints.  Matrices are immutable
(tuples of row tuples) so they can be hashed and used as cache keys.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Optional, Sequence

from .errors import ParseError, RankDeficient


@dataclass(frozen=True)
class IntMatrix:
    """A d x n integer matrix whose columns are the generators a_1..a_n."""

    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if not self.rows or not self.rows[0]:
            raise ParseError("matrix must have at least one row and one column")
        width = len(self.rows[0])
        for row in self.rows:
            if len(row) != width:
                raise ParseError("ragged matrix rows")
            for x in row:
                if not isinstance(x, int) or isinstance(x, bool):
                    raise ParseError("matrix entries must be integers")

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[int]]) -> "IntMatrix":
        return cls(tuple(tuple(int(x) for x in row) for row in rows))

    @classmethod
    def identity(cls, k: int) -> "IntMatrix":
        return cls(tuple(tuple(1 if i == j else 0 for j in range(k)) for i in range(k)))

    @property
    def d(self) -> int:
        return len(self.rows)

    @property
    def n(self) -> int:
        return len(self.rows[0])

    def entry(self, i: int, j: int) -> int:
        return self.rows[i][j]

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(row[j] for row in self.rows)

    def columns(self) -> list[tuple[int, ...]]:
        return [self.column(j) for j in range(self.n)]

    def transpose(self) -> "IntMatrix":
        return IntMatrix(tuple(zip(*self.rows)))

    def mul(self, other: "IntMatrix") -> "IntMatrix":
        if self.n != other.d:
            raise ParseError("dimension mismatch in matrix product")
        cols = other.transpose().rows
        return IntMatrix(
            tuple(
                tuple(sum(a * b for a, b in zip(row, col)) for col in cols)
                for row in self.rows
            )
        )

    def mul_vec(self, v: Sequence[int]) -> tuple[int, ...]:
        if len(v) != self.n:
            raise ParseError("dimension mismatch in matrix-vector product")
        return tuple(sum(a * b for a, b in zip(row, v)) for row in self.rows)

    def column_sum(self) -> tuple[int, ...]:
        return tuple(sum(row) for row in self.rows)

    @property
    def spans_lattice(self) -> bool:
        """True iff the columns generate the full lattice Z^d."""
        return _spans_lattice(self)

    def __str__(self) -> str:
        return "; ".join(" ".join(str(x) for x in row) for row in self.rows)


def parse_matrix(text: str) -> IntMatrix:
    """Parse '3 2 0; 1 1 1' or the same with newlines as row separators."""
    text = text.replace(";", "\n")
    rows = []
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        try:
            rows.append([int(tok) for tok in line.split()])
        except ValueError as exc:
            raise ParseError(f"bad matrix row {line!r}") from exc
    if not rows:
        raise ParseError("empty matrix")
    return IntMatrix.from_rows(rows)


def parse_fraction(tok: str) -> Fraction:
    try:
        return Fraction(tok.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad rational {tok!r}") from exc


def parse_rational_vector(text: str) -> tuple[Fraction, ...]:
    toks = [t for t in text.replace(",", " ").split() if t]
    if not toks:
        raise ParseError("empty rational vector")
    return tuple(parse_fraction(t) for t in toks)


def format_fraction(q: Fraction) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def vec_add(a: Sequence, b: Sequence) -> tuple:
    return tuple(x + y for x, y in zip(a, b))


def vec_sub(a: Sequence, b: Sequence) -> tuple:
    return tuple(x - y for x, y in zip(a, b))


def vec_dot(a: Sequence, b: Sequence):
    return sum(x * y for x, y in zip(a, b))


def determinant(m: IntMatrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    if m.d != m.n:
        raise ParseError("determinant of a non-square matrix")
    a = [list(row) for row in m.rows]
    k = m.d
    sign = 1
    prev = 1
    for t in range(k - 1):
        if a[t][t] == 0:
            for r in range(t + 1, k):
                if a[r][t] != 0:
                    a[t], a[r] = a[r], a[t]
                    sign = -sign
                    break
            else:
                return 0
        for r in range(t + 1, k):
            for c in range(t + 1, k):
                a[r][c] = (a[r][c] * a[t][t] - a[r][t] * a[t][c]) // prev
            a[r][t] = 0
        prev = a[t][t]
    return sign * a[k - 1][k - 1]


class _Tracked:
    """Mutable matrix with unimodular accumulators: C @ work @ M == original."""

    def __init__(self, m: IntMatrix):
        self.work = [list(row) for row in m.rows]
        self.d = m.d
        self.n = m.n
        self.C = [[1 if i == j else 0 for j in range(m.d)] for i in range(m.d)]
        self.Cinv = [[1 if i == j else 0 for j in range(m.d)] for i in range(m.d)]
        self.M = [[1 if i == j else 0 for j in range(m.n)] for i in range(m.n)]
        self.Minv = [[1 if i == j else 0 for j in range(m.n)] for i in range(m.n)]

    # Row operations act as work <- E @ work, so C <- C @ E^-1, Cinv <- E @ Cinv.
    def swap_rows(self, i, k):
        if i == k:
            return
        self.work[i], self.work[k] = self.work[k], self.work[i]
        for row in self.C:
            row[i], row[k] = row[k], row[i]
        self.Cinv[i], self.Cinv[k] = self.Cinv[k], self.Cinv[i]

    def add_row(self, i, k, q):
        """row_i += q * row_k on the working matrix."""
        if q == 0:
            return
        wi, wk = self.work[i], self.work[k]
        for c in range(self.n):
            wi[c] += q * wk[c]
        for row in self.C:
            row[k] -= q * row[i]
        ci, ck = self.Cinv[i], self.Cinv[k]
        for c in range(self.d):
            ci[c] += q * ck[c]

    def negate_row(self, i):
        self.work[i] = [-x for x in self.work[i]]
        for row in self.C:
            row[i] = -row[i]
        self.Cinv[i] = [-x for x in self.Cinv[i]]

    # Column operations act as work <- work @ E, so M <- E^-1 @ M, Minv <- Minv @ E.
    def swap_cols(self, i, k):
        if i == k:
            return
        for row in self.work:
            row[i], row[k] = row[k], row[i]
        self.M[i], self.M[k] = self.M[k], self.M[i]
        for row in self.Minv:
            row[i], row[k] = row[k], row[i]

    def add_col(self, i, k, q):
        """col_i += q * col_k on the working matrix."""
        if q == 0:
            return
        for row in self.work:
            row[i] += q * row[k]
        mk, mi = self.M[k], self.M[i]
        for c in range(self.n):
            mk[c] -= q * mi[c]
        for row in self.Minv:
            row[i] += q * row[k]

    def negate_col(self, i):
        for row in self.work:
            row[i] = -row[i]
        self.M[i] = [-x for x in self.M[i]]
        for row in self.Minv:
            row[i] = -row[i]


def _smith_tracked(m: IntMatrix) -> tuple[_Tracked, list[int], int]:
    """Reduce to Smith form with accumulators; returns (tracker, diag, rank)."""
    t = _Tracked(m)
    d, n = t.d, t.n
    k = min(d, n)
    for p in range(k):
        while True:
            # Locate a pivot of minimal absolute value in the trailing block.
            best = None
            for i in range(p, d):
                for j in range(p, n):
                    x = t.work[i][j]
                    if x != 0 and (best is None or abs(x) < abs(best[2])):
                        best = (i, j, x)
            if best is None:
                break
            i, j, _ = best
            t.swap_rows(p, i)
            t.swap_cols(p, j)
            pivot = t.work[p][p]
            dirty = False
            for i in range(p + 1, d):
                q = t.work[i][p] // pivot
                t.add_row(i, p, -q)
                if t.work[i][p] != 0:
                    dirty = True
            for j in range(p + 1, n):
                q = t.work[p][j] // pivot
                t.add_col(j, p, -q)
                if t.work[p][j] != 0:
                    dirty = True
            if dirty:
                continue
            # Pivot must divide every remaining entry for the divisor chain.
            offender = None
            for i in range(p + 1, d):
                for j in range(p + 1, n):
                    if t.work[i][j] % pivot != 0:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            t.add_row(p, offender, 1)
        if t.work[p][p] == 0:
            break
        if t.work[p][p] < 0:
            t.negate_row(p)
    diag = [t.work[p][p] for p in range(k)]
    rank = sum(1 for x in diag if x != 0)
    return t, diag, rank


@dataclass(frozen=True)
class SmithDecomposition:
    """B = C @ D1 @ D2 @ M with C, M unimodular and D1 = diag(e)."""

    C: IntMatrix
    D1: IntMatrix
    D2: IntMatrix
    M: IntMatrix
    e: tuple[int, ...]

    def product(self) -> IntMatrix:
        return self.C.mul(self.D1).mul(self.D2).mul(self.M)

    @property
    def A(self) -> IntMatrix:
        """The lattice-spanning part D2 @ M of the factorization."""
        return self.D2.mul(self.M)


def smith_decompose(b: IntMatrix) -> SmithDecomposition:
    """Smith factorization of a matrix with full row rank over Q."""
    t, diag, rank = _smith_tracked(b)
    if rank < b.d:
        raise RankDeficient(f"rank {rank} < {b.d}: columns do not span Q^d")
    C = IntMatrix.from_rows(t.C)
    M = IntMatrix.from_rows(t.M)
    D1 = IntMatrix.from_rows(
        [[diag[i] if i == j else 0 for j in range(b.d)] for i in range(b.d)]
    )
    D2 = IntMatrix.from_rows(
        [[1 if i == j else 0 for j in range(b.n)] for i in range(b.d)]
    )
    return SmithDecomposition(C=C, D1=D1, D2=D2, M=M, e=tuple(diag))


def elementary_divisors(m: IntMatrix) -> tuple[int, ...]:
    """Diagonal of the Smith form, zeros trimmed (length = rank)."""
    _, diag, rank = _smith_tracked(m)
    return tuple(diag[:rank])


@lru_cache(maxsize=None)
def _spans_lattice(m: IntMatrix) -> bool:
    _, diag, rank = _smith_tracked(m)
    return rank == m.d and all(x == 1 for x in diag[:rank])


def hermite_normal_form(m: IntMatrix) -> IntMatrix:
    """Row-style HNF: positive pivots, entries above pivots reduced to [0, pivot)."""
    rows = [list(r) for r in m.rows]
    nrows, ncols = len(rows), len(rows[0])
    pivot_row = 0
    for col in range(ncols):
        # gcd out the column below pivot_row
        while True:
            nz = [i for i in range(pivot_row, nrows) if rows[i][col] != 0]
            if len(nz) <= 1:
                break
            nz.sort(key=lambda i: abs(rows[i][col]))
            i0 = nz[0]
            for i in nz[1:]:
                q = rows[i][col] // rows[i0][col]
                rows[i] = [a - q * b for a, b in zip(rows[i], rows[i0])]
        nz = [i for i in range(pivot_row, nrows) if rows[i][col] != 0]
        if not nz:
            continue
        i0 = nz[0]
        rows[pivot_row], rows[i0] = rows[i0], rows[pivot_row]
        if rows[pivot_row][col] < 0:
            rows[pivot_row] = [-x for x in rows[pivot_row]]
        p = rows[pivot_row][col]
        for i in range(pivot_row):
            q = rows[i][col] // p
            rows[i] = [a - q * b for a, b in zip(rows[i], rows[pivot_row])]
        pivot_row += 1
        if pivot_row == nrows:
            break
    return IntMatrix.from_rows(rows[:pivot_row]) if pivot_row else IntMatrix.from_rows([[0] * ncols])


def lattice_kernel(m: IntMatrix) -> list[tuple[int, ...]]:
    """Z-basis of ker_Z(m), canonicalized via HNF; [] if the kernel is trivial."""
    t, _, rank = _smith_tracked(m)
    if rank == m.n:
        return []
    raw = [tuple(t.Minv[i][j] for i in range(m.n)) for j in range(rank, m.n)]
    hnf = hermite_normal_form(IntMatrix.from_rows(raw))
    basis = []
    for row in hnf.rows:
        if all(x == 0 for x in row):
            continue
        last = max(i for i, x in enumerate(row) if x != 0)
        basis.append(tuple(-x for x in row) if row[last] < 0 else tuple(row))
    return basis


def solve_integer(m: IntMatrix, b: Sequence[int]) -> Optional[tuple[int, ...]]:
    """Some integer solution x of m @ x = b, or None."""
    if len(b) != m.d:
        raise ParseError("dimension mismatch in integer solve")
    t, diag, rank = _smith_tracked(m)
    c = [sum(t.Cinv[i][j] * b[j] for j in range(m.d)) for i in range(m.d)]
    y = [0] * m.n
    for i in range(m.d):
        if i < rank:
            if c[i] % diag[i] != 0:
                return None
            if i < m.n:
                y[i] = c[i] // diag[i]
        elif c[i] != 0:
            return None
    return tuple(sum(t.Minv[i][j] * y[j] for j in range(m.n)) for i in range(m.n))


def homogenize(a: IntMatrix) -> IntMatrix:
    """Prepend a row of ones and a column (1, 0, .., 0)."""
    top = (1,) * (a.n + 1)
    rows = [top]
    for row in a.rows:
        rows.append((0,) + row)
    return IntMatrix.from_rows(rows)


def homogeneity_vector(a: IntMatrix) -> Optional[tuple[int, ...]]:
    """Integer h with h . a_i = 1 for every column, or None."""
    h = solve_integer(a.transpose(), (1,) * a.n)
    if h is None:
        return None
    # Canonicalize modulo the left kernel so repeated calls agree.
    left = lattice_kernel(a.transpose())
    if left:
        h = list(h)
        for vec in hermite_normal_form(IntMatrix.from_rows(left)).rows:
            if all(x == 0 for x in vec):
                continue
            p = min(i for i, x in enumerate(vec) if x != 0)
            q = h[p] // vec[p]
            h = [x - q * y for x, y in zip(h, vec)]
        h = tuple(h)
    return h


def primitive_vector(v: Sequence[int]) -> tuple[int, ...]:
    """v divided by the gcd of its entries (zero vector is returned as-is)."""
    g = 0
    for x in v:
        g = gcd(g, abs(x))
    if g <= 1:
        return tuple(v)
    return tuple(x // g for x in v)
