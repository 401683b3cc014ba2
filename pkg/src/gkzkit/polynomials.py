"""Multivariate polynomials over Q with exact Groebner machinery.

Monomials are plain exponent tuples; polynomials are mappings from monomial
to nonzero Fraction.  Buchberger with the coprime-leading-term criterion is
fast enough for the handful-of-variables ideals this library works with.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable, Optional, Sequence

from .errors import ParseError

Monomial = tuple[int, ...]
OrderKey = Callable[[Monomial], tuple]


class TermOrder:
    """A monomial order given by a sort key (larger key = larger monomial)."""

    def __init__(self, name: str, key: OrderKey):
        self.name = name
        self.key = key

    def __repr__(self):
        return f"TermOrder({self.name})"


def degrevlex() -> TermOrder:
    return TermOrder("degrevlex", lambda u: (sum(u), tuple(-x for x in reversed(u))))


def lex() -> TermOrder:
    return TermOrder("lex", lambda u: u)


def deglex() -> TermOrder:
    return TermOrder("deglex", lambda u: (sum(u), u))


_ORDERS = {"degrevlex": degrevlex, "lex": lex, "deglex": deglex}


def order_by_name(name: str) -> TermOrder:
    if name not in _ORDERS:
        raise ParseError(f"unknown term order {name!r} (choose from {sorted(_ORDERS)})")
    return _ORDERS[name]()


def elimination_order(front: int, total: int) -> TermOrder:
    """Block order eliminating the first `front` variables, degrevlex in each block."""

    def key(u: Monomial):
        head, tail = u[:front], u[front:]
        return (
            (sum(head), tuple(-x for x in reversed(head))),
            (sum(tail), tuple(-x for x in reversed(tail))),
        )

    return TermOrder(f"elim{front}", key)


class Polynomial:
    """Sparse polynomial; the term map is never mutated after construction."""

    __slots__ = ("terms", "nvars")

    def __init__(self, nvars: int, terms: Optional[dict[Monomial, Fraction]] = None):
        self.nvars = nvars
        clean: dict[Monomial, Fraction] = {}
        if terms:
            for m, c in terms.items():
                c = Fraction(c)
                if c != 0:
                    clean[tuple(m)] = c
        self.terms = clean

    @classmethod
    def zero(cls, nvars: int) -> "Polynomial":
        return cls(nvars)

    @classmethod
    def one(cls, nvars: int) -> "Polynomial":
        return cls(nvars, {(0,) * nvars: Fraction(1)})

    @classmethod
    def monomial(cls, expo: Monomial, coeff=1) -> "Polynomial":
        return cls(len(expo), {tuple(expo): Fraction(coeff)})

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Polynomial)
            and self.nvars == other.nvars
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __add__(self, other: "Polynomial") -> "Polynomial":
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, Fraction(0)) + c
        return Polynomial(self.nvars, out)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, Fraction(0)) - c
        return Polynomial(self.nvars, out)

    def __neg__(self) -> "Polynomial":
        return self.scale(-1)

    def scale(self, c) -> "Polynomial":
        c = Fraction(c)
        return Polynomial(self.nvars, {m: c * v for m, v in self.terms.items()})

    def mul_term(self, expo: Monomial, coeff) -> "Polynomial":
        coeff = Fraction(coeff)
        return Polynomial(
            self.nvars,
            {monomial_mul(m, expo): coeff * v for m, v in self.terms.items()},
        )

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        out: dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = monomial_mul(m1, m2)
                out[m] = out.get(m, Fraction(0)) + c1 * c2
        return Polynomial(self.nvars, out)

    def leading(self, order: TermOrder) -> tuple[Monomial, Fraction]:
        m = max(self.terms, key=order.key)
        return m, self.terms[m]

    def monic(self, order: TermOrder) -> "Polynomial":
        if self.is_zero():
            return self
        _, c = self.leading(order)
        return self.scale(Fraction(1) / c)

    def sorted_terms(self, order: TermOrder) -> list[tuple[Monomial, Fraction]]:
        return sorted(self.terms.items(), key=lambda t: order.key(t[0]), reverse=True)

    def pretty(self, names: Optional[Sequence[str]] = None, order: Optional[TermOrder] = None) -> str:
        if self.is_zero():
            return "0"
        order = order or degrevlex()
        names = names or [f"x{i+1}" for i in range(self.nvars)]
        parts = []
        for m, c in self.sorted_terms(order):
            factors = [
                f"{names[i]}^{e}" if e > 1 else names[i] for i, e in enumerate(m) if e
            ]
            body = "*".join(factors)
            if not body:
                piece = str(abs(c))
            else:
                piece = body if abs(c) == 1 else f"{abs(c)}*{body}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, piece))
        first_sign, first = parts[0]
        text = ("-" if first_sign == "-" else "") + first
        for sign, piece in parts[1:]:
            text += f" {sign} {piece}"
        return text

    def __repr__(self):
        return f"Polynomial({self.pretty()})"


def monomial_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def monomial_divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def monomial_div(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x - y for x, y in zip(a, b))


def monomial_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def normal_form(p: Polynomial, basis: Sequence[Polynomial], order: TermOrder) -> Polynomial:
    """Remainder of p under full division by basis (every term reduced)."""
    if not basis:
        return p
    leads = [g.leading(order) for g in basis]
    remainder: dict[Monomial, Fraction] = {}
    work = dict(p.terms)
    while work:
        m = max(work, key=order.key)
        c = work[m]
        if c == 0:
            del work[m]
            continue
        for g, (lm, lc) in zip(basis, leads):
            if monomial_divides(lm, m):
                q = monomial_div(m, lm)
                f = c / lc
                for gm, gc in g.terms.items():
                    key = monomial_mul(gm, q)
                    work[key] = work.get(key, Fraction(0)) - f * gc
                if work.get(m) == 0:
                    del work[m]
                break
        else:
            remainder[m] = c
            del work[m]
    return Polynomial(p.nvars, remainder)


def s_polynomial(f: Polynomial, g: Polynomial, order: TermOrder) -> Polynomial:
    fm, fc = f.leading(order)
    gm, gc = g.leading(order)
    l = monomial_lcm(fm, gm)
    return f.mul_term(monomial_div(l, fm), Fraction(1) / fc) - g.mul_term(
        monomial_div(l, gm), Fraction(1) / gc
    )


def buchberger(gens: Iterable[Polynomial], order: TermOrder) -> list[Polynomial]:
    basis = [g for g in gens if not g.is_zero()]
    pairs = [(i, j) for i in range(len(basis)) for j in range(i + 1, len(basis))]
    while pairs:
        # Normal selection: smallest lcm of leading monomials first.
        pairs.sort(
            key=lambda ij: order.key(
                monomial_lcm(
                    basis[ij[0]].leading(order)[0], basis[ij[1]].leading(order)[0]
                )
            )
        )
        i, j = pairs.pop(0)
        fm = basis[i].leading(order)[0]
        gm = basis[j].leading(order)[0]
        if monomial_lcm(fm, gm) == monomial_mul(fm, gm):
            continue  # coprime leading terms
        s = normal_form(s_polynomial(basis[i], basis[j], order), basis, order)
        if s.is_zero():
            continue
        basis.append(s)
        pairs.extend((k, len(basis) - 1) for k in range(len(basis) - 1))
    return basis


def reduce_basis(basis: Sequence[Polynomial], order: TermOrder) -> list[Polynomial]:
    """Minimal, interreduced, monic basis sorted by leading monomial."""
    basis = [g.monic(order) for g in basis if not g.is_zero()]
    basis.sort(key=lambda g: order.key(g.leading(order)[0]))
    minimal: list[Polynomial] = []
    for g in basis:
        lm = g.leading(order)[0]
        if any(monomial_divides(h.leading(order)[0], lm) for h in minimal):
            continue
        minimal.append(g)
    reduced = []
    for i, g in enumerate(minimal):
        others = minimal[:i] + minimal[i + 1 :]
        r = normal_form(g, others, order) if others else g
        if not r.is_zero():
            reduced.append(r.monic(order))
    reduced.sort(key=lambda g: order.key(g.leading(order)[0]))
    return reduced


def groebner_basis(gens: Iterable[Polynomial], order: TermOrder) -> list[Polynomial]:
    """The reduced Groebner basis of the ideal generated by gens."""
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        return []
    return reduce_basis(buchberger(gens, order), order)


def passes_buchberger_criterion(basis: Sequence[Polynomial], order: TermOrder) -> bool:
    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            s = s_polynomial(basis[i], basis[j], order)
            if not normal_form(s, basis, order).is_zero():
                return False
    return True


def ideal_is_unit(gb: Sequence[Polynomial]) -> bool:
    return any(set(g.terms) == {(0,) * g.nvars} for g in gb)


def _shift_vars(p: Polynomial, extra_front: int) -> Polynomial:
    return Polynomial(
        p.nvars + extra_front,
        {((0,) * extra_front + m): c for m, c in p.terms.items()},
    )


def _drop_front_var(p: Polynomial) -> Polynomial:
    return Polynomial(p.nvars - 1, {m[1:]: c for m, c in p.terms.items()})


def intersect_with_principal(
    gens: Sequence[Polynomial], g: Polynomial, order: TermOrder
) -> list[Polynomial]:
    """Generators of (gens) intersect (g), via t*J + (1-t)*g and elimination of t."""
    nvars = g.nvars
    t = Polynomial.monomial((1,) + (0,) * nvars)
    one = Polynomial.one(nvars + 1)
    lifted = [_shift_vars(f, 1) * t for f in gens]
    lifted.append((one - t) * _shift_vars(g, 1))
    elim = elimination_order(1, nvars + 1)
    gb = groebner_basis(lifted, elim)
    kept = [_drop_front_var(p) for p in gb if all(m[0] == 0 for m in p.terms)]
    return groebner_basis(kept, order) if kept else []


def divide_exact(p: Polynomial, g: Polynomial, order: TermOrder) -> Polynomial:
    """q with p = q*g; raises if g does not divide p."""
    q: dict[Monomial, Fraction] = {}
    rest = p
    gm, gc = g.leading(order)
    while not rest.is_zero():
        m, c = rest.leading(order)
        if not monomial_divides(gm, m):
            raise ArithmeticError("division is not exact")
        mono = monomial_div(m, gm)
        coeff = c / gc
        q[mono] = coeff
        rest = rest - g.mul_term(mono, coeff)
    return Polynomial(p.nvars, q)


def ideal_quotient(
    gens: Sequence[Polynomial], g: Polynomial, order: TermOrder
) -> list[Polynomial]:
    """Generators (reduced GB) of (gens : g)."""
    inter = intersect_with_principal(gens, g, order)
    quotients = [divide_exact(p, g, order) for p in inter]
    return groebner_basis(quotients, order) if quotients else []


def saturate_variable(
    gens: Sequence[Polynomial], var: int, order: TermOrder
) -> list[Polynomial]:
    """Reduced GB of (gens : x_var^infinity), by inverting the variable."""
    nvars = gens[0].nvars if gens else 0
    if not gens:
        return []
    t_x = Polynomial.monomial(
        (1,) + tuple(1 if i == var else 0 for i in range(nvars))
    )
    one = Polynomial.one(nvars + 1)
    lifted = [_shift_vars(f, 1) for f in gens]
    lifted.append(t_x - one)
    elim = elimination_order(1, nvars + 1)
    gb = groebner_basis(lifted, elim)
    kept = [_drop_front_var(p) for p in gb if all(m[0] == 0 for m in p.terms)]
    return groebner_basis(kept, order) if kept else []


def saturate_all_variables(
    gens: Sequence[Polynomial], order: TermOrder
) -> list[Polynomial]:
    """Reduced GB of (gens : (x_1 ... x_n)^infinity), one variable at a time."""
    current = groebner_basis(gens, order)
    if not current:
        return []
    nvars = current[0].nvars
    for var in range(nvars):
        current = saturate_variable(current, var, order)
        if not current:
            return []
    return current
