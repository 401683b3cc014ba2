"""Weyl-algebra arithmetic and the box/Euler presentations built on it.

Elements are kept normally ordered (every lambda to the left of every d),
so equality is literal equality of term maps.  The commutator is
[d_i, lambda_i] = 1; products are expanded with the one-variable identity

    d^a lambda^b = sum_k k! C(a,k) C(b,k) lambda^(b-k) d^(a-k).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Iterable, Optional, Sequence

from .errors import FirstRowNotOnes, NotFullLattice, ParseError, VariableMismatch
from .intlinalg import IntMatrix, homogenize, homogeneity_vector, lattice_kernel
from .lp import gauss_solve
from .toric import toric_ideal

TermKey = tuple[tuple[int, ...], tuple[int, ...]]  # (lambda exponents, d exponents)


class WeylElement:
    """Normally ordered element of the Weyl algebra in nvars variable pairs."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Optional[dict[TermKey, Fraction]] = None):
        self.nvars = nvars
        clean: dict[TermKey, Fraction] = {}
        if terms:
            for (u, v), c in terms.items():
                c = Fraction(c)
                if c != 0:
                    clean[(tuple(u), tuple(v))] = c
        self.terms = clean

    @classmethod
    def zero(cls, nvars: int) -> "WeylElement":
        return cls(nvars)

    @classmethod
    def scalar(cls, nvars: int, c) -> "WeylElement":
        z = (0,) * nvars
        return cls(nvars, {(z, z): Fraction(c)})

    @classmethod
    def one(cls, nvars: int) -> "WeylElement":
        return cls.scalar(nvars, 1)

    @classmethod
    def lam(cls, i: int, nvars: int, power: int = 1) -> "WeylElement":
        u = tuple(power if k == i else 0 for k in range(nvars))
        return cls(nvars, {(u, (0,) * nvars): Fraction(1)})

    @classmethod
    def dee(cls, i: int, nvars: int, power: int = 1) -> "WeylElement":
        v = tuple(power if k == i else 0 for k in range(nvars))
        return cls(nvars, {((0,) * nvars, v): Fraction(1)})

    @classmethod
    def monomial(cls, u: Sequence[int], v: Sequence[int], coeff=1) -> "WeylElement":
        return cls(len(u), {(tuple(u), tuple(v)): Fraction(coeff)})

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, WeylElement)
            and self.nvars == other.nvars
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __add__(self, other: "WeylElement") -> "WeylElement":
        self._check(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, Fraction(0)) + c
        return WeylElement(self.nvars, out)

    def __sub__(self, other: "WeylElement") -> "WeylElement":
        return self + other.scale(-1)

    def __neg__(self) -> "WeylElement":
        return self.scale(-1)

    def scale(self, c) -> "WeylElement":
        c = Fraction(c)
        return WeylElement(self.nvars, {k: c * v for k, v in self.terms.items()})

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        return weyl_mul(self, other)

    def _check(self, other: "WeylElement") -> None:
        if self.nvars != other.nvars:
            raise VariableMismatch(
                f"{self.nvars} vs {other.nvars} variable pairs"
            )

    def total_degree(self) -> int:
        return max((sum(u) + sum(v) for u, v in self.terms), default=0)

    def uses_lambda(self, i: int) -> bool:
        return any(u[i] for u, _ in self.terms)

    def uses_dee(self, i: int) -> bool:
        return any(v[i] for _, v in self.terms)

    def is_dee_only(self) -> bool:
        z = (0,) * self.nvars
        return all(u == z for u, _ in self.terms)

    def a_degree(self, a: IntMatrix) -> Optional[tuple[int, ...]]:
        """Common degree under deg(lambda_j) = -a_j, deg(d_j) = a_j; None if mixed."""
        degs = {
            tuple(
                sum(aa * (vv - uu) for aa, uu, vv in zip(row, u, v))
                for row in a.rows
            )
            for u, v in self.terms
        }
        if not degs:
            return (0,) * a.d
        if len(degs) > 1:
            return None
        return degs.pop()

    def sorted_terms(self) -> list[tuple[TermKey, Fraction]]:
        return sorted(
            self.terms.items(),
            key=lambda t: (sum(t[0][0]) + sum(t[0][1]), t[0]),
            reverse=True,
        )

    def pretty(self) -> str:
        """Render in the CLI operator syntax: l<i> for lambda_i, d<i> for d_i."""
        if self.is_zero():
            return "0"
        parts = []
        for (u, v), c in self.sorted_terms():
            factors = []
            for i, e in enumerate(u):
                if e:
                    factors.append(f"l{i}^{e}" if e > 1 else f"l{i}")
            for i, e in enumerate(v):
                if e:
                    factors.append(f"d{i}^{e}" if e > 1 else f"d{i}")
            body = "*".join(factors)
            mag = abs(c)
            if not body:
                piece = _coeff_str(mag)
            elif mag == 1:
                piece = body
            else:
                piece = f"{_coeff_str(mag)}*{body}"
            parts.append(("-" if c < 0 else "+", piece))
        sign, first = parts[0]
        text = ("-" if sign == "-" else "") + first
        for sign, piece in parts[1:]:
            text += f" {sign} {piece}"
        return text

    def __repr__(self):
        return f"WeylElement({self.pretty()})"


def _coeff_str(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


@lru_cache(maxsize=None)
def _commute_coeffs(a: int, b: int) -> tuple[tuple[int, int], ...]:
    """d^a lambda^b = sum_k coeff * lambda^(b-k) d^(a-k); entries (k, coeff)."""
    from math import comb, factorial

    return tuple(
        (k, factorial(k) * comb(a, k) * comb(b, k)) for k in range(min(a, b) + 1)
    )


def weyl_mul(x: WeylElement, y: WeylElement) -> WeylElement:
    """Normally ordered product."""
    x._check(y)
    n = x.nvars
    out: dict[TermKey, Fraction] = {}
    for (u1, v1), c1 in x.terms.items():
        for (u2, v2), c2 in y.terms.items():
            base = c1 * c2
            # Expand d^v1 lambda^u2 one variable at a time.
            choices = [_commute_coeffs(v1[i], u2[i]) for i in range(n)]
            for picks in product(*choices):
                coeff = base
                ks = []
                for k, w in picks:
                    coeff *= w
                    ks.append(k)
                u = tuple(u1[i] + u2[i] - ks[i] for i in range(n))
                v = tuple(v1[i] + v2[i] - ks[i] for i in range(n))
                out[(u, v)] = out.get((u, v), Fraction(0)) + coeff
    return WeylElement(n, out)


_TOKEN = re.compile(r"\s*([ld]\d+|\d+/\d+|\d+|[-+*^()])")


def parse_weyl(text: str, nvars: Optional[int] = None) -> WeylElement:
    """Parse the CLI operator syntax, e.g. '3*l0^2*d0 - 4*l1*l2*d0^2 + l0'.

    Factors multiply left to right as Weyl-algebra elements, so 'd0*l0'
    normalizes to 'l0*d0 + 1'.
    """
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            if text[pos:].strip():
                raise ParseError(f"bad operator syntax near {text[pos:]!r}")
            break
        tokens.append(m.group(1))
        pos = m.end()
    if nvars is None:
        indices = [int(t[1:]) for t in tokens if t[0] in "ld" and t[1:].isdigit()]
        if not indices:
            raise ParseError("no variables found; pass the variable count explicitly")
        nvars = max(indices) + 1
    parser = _WeylParser(tokens, nvars)
    result = parser.parse_sum()
    if parser.pos != len(tokens):
        raise ParseError(f"trailing tokens {tokens[parser.pos:]!r}")
    return result


class _WeylParser:
    def __init__(self, tokens: list[str], nvars: int):
        self.tokens = tokens
        self.nvars = nvars
        self.pos = 0

    def peek(self) -> Optional[str]:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self) -> str:
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of operator expression")
        self.pos += 1
        return tok

    def parse_sum(self) -> WeylElement:
        sign = 1
        while self.peek() in ("+", "-"):
            if self.take() == "-":
                sign = -sign
        total = self.parse_product().scale(sign)
        while self.peek() in ("+", "-"):
            sign = 1
            while self.peek() in ("+", "-"):
                if self.take() == "-":
                    sign = -sign
            total = total + self.parse_product().scale(sign)
        return total

    def parse_product(self) -> WeylElement:
        result = self.parse_factor()
        while True:
            tok = self.peek()
            if tok == "*":
                self.take()
                result = weyl_mul(result, self.parse_factor())
            elif tok is not None and (tok[0] in "ld(" or tok[0].isdigit()):
                result = weyl_mul(result, self.parse_factor())
            else:
                return result

    def parse_factor(self) -> WeylElement:
        tok = self.take()
        if tok == "(":
            inner = self.parse_sum()
            if self.take() != ")":
                raise ParseError("unbalanced parentheses")
            base = inner
        elif tok[0] in "ld" and tok[1:].isdigit():
            idx = int(tok[1:])
            if idx >= self.nvars:
                raise ParseError(f"variable index {idx} out of range")
            base = (
                WeylElement.lam(idx, self.nvars)
                if tok[0] == "l"
                else WeylElement.dee(idx, self.nvars)
            )
        elif tok[0].isdigit():
            base = WeylElement.scalar(self.nvars, Fraction(tok))
        else:
            raise ParseError(f"unexpected token {tok!r}")
        if self.peek() == "^":
            self.take()
            expo_tok = self.take()
            if not expo_tok.isdigit():
                raise ParseError(f"bad exponent {expo_tok!r}")
            power = int(expo_tok)
            out = WeylElement.one(self.nvars)
            for _ in range(power):
                out = weyl_mul(out, base)
            return out
        return base


@dataclass(frozen=True)
class GKZPresentation:
    matrix: IntMatrix
    beta: tuple[Fraction, ...]
    boxes: tuple[WeylElement, ...]
    eulers: tuple[WeylElement, ...]

    @property
    def nvars(self) -> int:
        return self.matrix.n

    def generators(self) -> list[WeylElement]:
        return list(self.boxes) + list(self.eulers)


def binomial_to_weyl(p, nvars: int) -> WeylElement:
    """Transcribe a d-only polynomial into the Weyl algebra."""
    zero = (0,) * nvars
    return WeylElement(nvars, {(zero, m): c for m, c in p.terms.items()})


def euler_operator(a: IntMatrix, k: int, beta_k: Fraction) -> WeylElement:
    """E_k - beta_k = sum_i a_ki lambda_i d_i - beta_k (k is 0-based row index)."""
    n = a.n
    terms: dict[TermKey, Fraction] = {}
    for i in range(n):
        coeff = a.entry(k, i)
        if coeff:
            u = tuple(1 if t == i else 0 for t in range(n))
            terms[(u, u)] = Fraction(coeff)
    if beta_k:
        zero = (0,) * n
        terms[(zero, zero)] = terms.get((zero, zero), Fraction(0)) - Fraction(beta_k)
    return WeylElement(n, terms)


def gkz_presentation(
    a: IntMatrix, beta: Sequence[Fraction], order_name: str = "degrevlex"
) -> GKZPresentation:
    """Box operators from the toric ideal plus Euler operators E_k - beta_k."""
    if not a.spans_lattice:
        raise NotFullLattice("GKZ data requires columns generating Z^d")
    beta = tuple(Fraction(x) for x in beta)
    if len(beta) != a.d:
        raise ParseError("beta has wrong length")
    ideal = toric_ideal(a, order_name)
    boxes = tuple(binomial_to_weyl(g, a.n) for g in ideal.generators)
    eulers = tuple(euler_operator(a, k, beta[k]) for k in range(a.d))
    return GKZPresentation(matrix=a, beta=beta, boxes=boxes, eulers=eulers)


def restrict_presentation(
    atilde: IntMatrix, beta_tilde: Sequence[Fraction], order_name: str = "degrevlex"
) -> list[WeylElement]:
    """Generators of the restriction to lambda_0 = 1 of a homogenized system.

    Requires atilde = homogenize(A) with the first row of A all ones; the
    output lives in n+1 variable pairs but never uses lambda_0, and uses d_0
    only in the added operator d_0 + sum_i lambda_i d_i.
    """
    beta_tilde = tuple(Fraction(x) for x in beta_tilde)
    if len(beta_tilde) != atilde.d:
        raise ParseError("beta has wrong length")
    d, n = atilde.d - 1, atilde.n - 1
    if d < 1 or n < 1:
        raise FirstRowNotOnes("matrix is too small to be a homogenization")
    inner = IntMatrix.from_rows([row[1:] for row in atilde.rows[1:]])
    if atilde != homogenize(inner):
        raise FirstRowNotOnes("matrix is not a homogenization")
    if any(x != 1 for x in inner.rows[0]):
        raise FirstRowNotOnes("inner matrix must have first row all ones")
    nvars = n + 1
    ideal = toric_ideal(inner, order_name)
    gens: list[WeylElement] = []
    for g in ideal.generators:
        shifted = {
            ((0,) * nvars, (0,) + m): c for m, c in g.terms.items()
        }
        gens.append(WeylElement(nvars, shifted))
    for k in range(d):
        terms: dict[TermKey, Fraction] = {}
        for i in range(n):
            coeff = inner.entry(k, i)
            if coeff:
                u = tuple(1 if t == i + 1 else 0 for t in range(nvars))
                terms[(u, u)] = Fraction(coeff)
        bk = beta_tilde[k + 1]
        if bk:
            zero = (0,) * nvars
            terms[(zero, zero)] = terms.get((zero, zero), Fraction(0)) - bk
        gens.append(WeylElement(nvars, terms))
    extra: dict[TermKey, Fraction] = {((0,) * nvars, (1,) + (0,) * n): Fraction(1)}
    for i in range(1, nvars):
        u = tuple(1 if t == i else 0 for t in range(nvars))
        extra[(u, u)] = Fraction(1)
    gens.append(WeylElement(nvars, extra))
    return gens


@dataclass(frozen=True)
class MembershipCertificate:
    cofactors: tuple[WeylElement, ...]
    bound: int

    def combine(self, gens: Sequence[WeylElement]) -> WeylElement:
        total = WeylElement.zero(gens[0].nvars)
        for c, g in zip(self.cofactors, gens):
            total = total + weyl_mul(c, g)
        return total


def _grading_vectors(elements: Sequence[WeylElement], nvars: int) -> list[tuple[int, ...]]:
    """Integer vectors g making every element homogeneous via deg d_i = g_i."""
    rows = []
    for el in elements:
        keys = list(el.terms)
        if len(keys) < 2:
            continue
        u0, v0 = keys[0]
        base = tuple(vv - uu for uu, vv in zip(u0, v0))
        for u, v in keys[1:]:
            rows.append(
                tuple((vv - uu) - b for uu, vv, b in zip(u, v, base))
            )
    if not rows:
        return [tuple(1 if i == k else 0 for i in range(nvars)) for k in range(nvars)]
    return lattice_kernel(IntMatrix.from_rows(rows))


def _weyl_degree(u, v, grading) -> tuple[int, ...]:
    return tuple(
        sum(g[i] * (v[i] - u[i]) for i in range(len(u))) for g in grading
    )


def ideal_member_bounded(
    target: WeylElement, gens: Sequence[WeylElement], bound: int
) -> Optional[MembershipCertificate]:
    """Left-ideal membership with cofactor total degree <= bound.

    Coefficient matching in the normally ordered expansion yields an exact
    linear system over Q; any grading under which target and generators are
    all homogeneous prunes the cofactor monomials.  Returns None when no
    certificate exists at this bound (which proves nothing beyond the bound).
    """
    if not gens:
        return None
    nvars = gens[0].nvars
    for g in gens:
        if g.nvars != nvars:
            raise VariableMismatch("generators use different variable counts")
    target._check(gens[0])
    if target.is_zero():
        return MembershipCertificate(
            cofactors=tuple(WeylElement.zero(nvars) for _ in gens), bound=bound
        )
    grading = _grading_vectors(list(gens) + [target], nvars)
    t_first = next(iter(target.terms))
    t_deg = _weyl_degree(t_first[0], t_first[1], grading)
    columns: list[tuple[int, TermKey, WeylElement]] = []
    for gi, g in enumerate(gens):
        g_first = next(iter(g.terms))
        g_deg = _weyl_degree(g_first[0], g_first[1], grading)
        want = tuple(t - s for t, s in zip(t_deg, g_deg))
        for mono in _monomials_up_to(nvars, bound):
            u, v = mono
            if _weyl_degree(u, v, grading) != want:
                continue
            prod = weyl_mul(WeylElement.monomial(u, v), g)
            if not prod.is_zero():
                columns.append((gi, mono, prod))
    if not columns:
        return None
    row_keys = sorted(
        {k for _, _, prod in columns for k in prod.terms} | set(target.terms)
    )
    key_index = {k: i for i, k in enumerate(row_keys)}
    matrix = [[Fraction(0)] * len(columns) for _ in row_keys]
    for ci, (_, _, prod) in enumerate(columns):
        for k, c in prod.terms.items():
            matrix[key_index[k]][ci] = c
    rhs = [Fraction(0)] * len(row_keys)
    for k, c in target.terms.items():
        rhs[key_index[k]] = c
    sol = gauss_solve(matrix, rhs)
    if sol is None:
        return None
    coeffs = sol[0]
    cof_terms: list[dict[TermKey, Fraction]] = [dict() for _ in gens]
    for x, (gi, mono, _) in zip(coeffs, columns):
        if x != 0:
            cof_terms[gi][mono] = x
    cert = MembershipCertificate(
        cofactors=tuple(WeylElement(nvars, t) for t in cof_terms), bound=bound
    )
    if cert.combine(gens) != target:
        raise AssertionError("certificate re-expansion mismatch")
    return cert


def _monomials_up_to(nvars: int, bound: int) -> Iterable[TermKey]:
    """All (lambda, d) exponent pairs of total degree <= bound."""
    def compositions(total: int, parts: int):
        if parts == 1:
            yield (total,)
            return
        for first in range(total + 1):
            for rest in compositions(total - first, parts - 1):
                yield (first,) + rest

    for total in range(bound + 1):
        for combo in compositions(total, 2 * nvars):
            yield combo[:nvars], combo[nvars:]


def euler_field(nvars: int) -> WeylElement:
    terms: dict[TermKey, Fraction] = {}
    for i in range(nvars):
        u = tuple(1 if t == i else 0 for t in range(nvars))
        terms[(u, u)] = Fraction(1)
    return WeylElement(nvars, terms)


def euler_decomposition(a: IntMatrix) -> Optional[tuple[int, ...]]:
    """h with sum_k h_k E_k = sum_i lambda_i d_i, verified symbolically."""
    h = homogeneity_vector(a)
    if h is None:
        return None
    total = WeylElement.zero(a.n)
    for k in range(a.d):
        total = total + euler_operator(a, k, Fraction(0)).scale(h[k])
    if total != euler_field(a.n):
        raise AssertionError("euler decomposition identity failed")
    return h
