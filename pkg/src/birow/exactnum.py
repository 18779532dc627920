"""Exact arithmetic: rationals, sparse multivariate polynomials, rational functions.

Rationals are stdlib ``fractions.Fraction``.  Polynomials have arbitrary
precision integer coefficients and variables indexed by a namespace
(``"A"`` or ``"x"``) and a grid position ``(i, j)``.  Rational functions are
kept as unreduced numerator/denominator pairs: no multivariate gcd is ever
computed.  Equality of rational functions is decided by cross multiplication,
which is exact.

The only normalization applied to a rational function is lightweight:
the gcd of all integer coefficients is divided out and the sign is fixed so
that the leading coefficient of the denominator (graded lexicographic order
on ``(namespace, i, j)``) is positive.
"""

from __future__ import annotations

import functools
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, NamedTuple, Optional, Tuple, Union

from .errors import DivisionByZero, ParseError, PoleEncountered, UnboundVariable

Rational = Fraction


class Var(NamedTuple):
    ns: str  # "A" or "x"
    i: int
    j: int

    def render(self) -> str:
        return f"{self.ns}[{self.i},{self.j}]"


def avar(i: int, j: int) -> Var:
    return Var("A", i, j)


def xvar(i: int, j: int) -> Var:
    return Var("x", i, j)


# A monomial is a sorted tuple of (Var, positive exponent) pairs; () is 1.
Monomial = Tuple[Tuple[Var, int], ...]


def monomial(pairs: Iterable[Tuple[Var, int]]) -> Monomial:
    acc: Dict[Var, int] = {}
    for v, e in pairs:
        acc[v] = acc.get(v, 0) + e
    return tuple(sorted((v, e) for v, e in acc.items() if e != 0))


def mon_degree(m: Monomial) -> int:
    return sum(e for _, e in m)


def mon_mul(m1: Monomial, m2: Monomial) -> Monomial:
    return monomial(list(m1) + list(m2))


def mon_cmp(m1: Monomial, m2: Monomial) -> int:
    """Graded lexicographic comparison, variables ordered by (ns, i, j)."""
    d1, d2 = mon_degree(m1), mon_degree(m2)
    if d1 != d2:
        return -1 if d1 < d2 else 1
    e1, e2 = dict(m1), dict(m2)
    for v in sorted(set(e1) | set(e2)):
        a, b = e1.get(v, 0), e2.get(v, 0)
        if a != b:
            return 1 if a > b else -1
    return 0


_mon_key = functools.cmp_to_key(mon_cmp)


def _render_mon(m: Monomial, coeff: int) -> str:
    parts = []
    if abs(coeff) != 1 or not m:
        parts.append(str(abs(coeff)))
    for v, e in m:
        parts.append(v.render() if e == 1 else f"{v.render()}^{e}")
    body = "*".join(parts)
    return body


@dataclass(frozen=True)
class Polynomial:
    """Sparse polynomial with integer coefficients.

    ``terms`` is a tuple of (monomial, coefficient) pairs sorted in
    descending graded lexicographic order, so ``terms[0]`` is the leading
    term.  The zero polynomial has an empty terms tuple.
    """

    terms: Tuple[Tuple[Monomial, int], ...]

    @staticmethod
    def from_dict(d: Dict[Monomial, int]) -> "Polynomial":
        items = [(m, c) for m, c in d.items() if c != 0]
        items.sort(key=lambda t: _mon_key(t[0]), reverse=True)
        return Polynomial(tuple(items))

    @staticmethod
    def const(c: int) -> "Polynomial":
        return Polynomial.from_dict({(): int(c)})

    @staticmethod
    def var(v: Var, exp: int = 1) -> "Polynomial":
        return Polynomial.from_dict({monomial([(v, exp)]): 1})

    def is_zero(self) -> bool:
        return not self.terms

    def is_one(self) -> bool:
        return self.terms == (((), 1),)

    def degree(self) -> int:
        return mon_degree(self.terms[0][0]) if self.terms else 0

    def leading_coeff(self) -> int:
        if not self.terms:
            return 0
        return self.terms[0][1]

    def content(self) -> int:
        return math.gcd(*(c for _, c in self.terms)) if self.terms else 0

    def variables(self) -> set:
        return {v for m, _ in self.terms for v, _ in m}

    def __add__(self, other: "Polynomial") -> "Polynomial":
        d = dict(self.terms)
        for m, c in other.terms:
            d[m] = d.get(m, 0) + c
        return Polynomial.from_dict(d)

    def __neg__(self) -> "Polynomial":
        return Polynomial(tuple((m, -c) for m, c in self.terms))

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        d: Dict[Monomial, int] = {}
        for m1, c1 in self.terms:
            for m2, c2 in other.terms:
                m = mon_mul(m1, m2)
                d[m] = d.get(m, 0) + c1 * c2
        return Polynomial.from_dict(d)

    def __pow__(self, exp: int) -> "Polynomial":
        if exp < 0:
            raise ValueError("negative polynomial power")
        out = Polynomial.const(1)
        for _ in range(exp):
            out = out * self
        return out

    def scale(self, c: int) -> "Polynomial":
        if c == 0:
            return Polynomial(())
        return Polynomial(tuple((m, k * c) for m, k in self.terms))

    def divide_content(self, g: int) -> "Polynomial":
        return Polynomial(tuple((m, c // g) for m, c in self.terms))

    def evaluate(self, point: Dict[Var, Fraction]) -> Fraction:
        total = Fraction(0)
        for m, c in self.terms:
            val = Fraction(c)
            for v, e in m:
                if v not in point:
                    raise UnboundVariable(f"no value bound for {v.render()}")
                val *= Fraction(point[v]) ** e
            total += val
        return total

    def render(self) -> str:
        if not self.terms:
            return "0"
        out = _render_mon(self.terms[0][0], self.terms[0][1])
        if self.terms[0][1] < 0:
            out = "-" + out
        for m, c in self.terms[1:]:
            out += (" - " if c < 0 else " + ") + _render_mon(m, c)
        return out

    def __str__(self) -> str:
        return self.render()


def _normalize(num: Polynomial, den: Polynomial) -> Tuple[Polynomial, Polynomial]:
    if den.is_zero():
        raise DivisionByZero("rational function with zero denominator")
    if num.is_zero():
        return Polynomial(()), Polynomial.const(1)
    g = math.gcd(num.content(), den.content())
    if den.leading_coeff() < 0:
        g = -g
    return num.divide_content(g), den.divide_content(g)


@dataclass(frozen=True)
class RatFn:
    """Unreduced ratio of two polynomials.

    Structural equality (``==``) compares the stored pairs; mathematical
    equality is :func:`ratfn_equal`.
    """

    num: Polynomial
    den: Polynomial

    @staticmethod
    def make(num: Polynomial, den: Polynomial) -> "RatFn":
        n, d = _normalize(num, den)
        return RatFn(n, d)

    @staticmethod
    def const(c: Union[int, Fraction]) -> "RatFn":
        q = Fraction(c)
        return RatFn.make(Polynomial.const(q.numerator), Polynomial.const(q.denominator))

    @staticmethod
    def var(v: Var) -> "RatFn":
        return RatFn.make(Polynomial.var(v), Polynomial.const(1))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __add__(self, other: "RatFn") -> "RatFn":
        return RatFn.make(self.num * other.den + other.num * self.den, self.den * other.den)

    def __sub__(self, other: "RatFn") -> "RatFn":
        return RatFn.make(self.num * other.den - other.num * self.den, self.den * other.den)

    def __mul__(self, other: "RatFn") -> "RatFn":
        return RatFn.make(self.num * other.num, self.den * other.den)

    def __truediv__(self, other: "RatFn") -> "RatFn":
        if other.num.is_zero():
            raise DivisionByZero("division by zero rational function")
        return RatFn.make(self.num * other.den, self.den * other.num)

    def inv(self) -> "RatFn":
        if self.num.is_zero():
            raise DivisionByZero("inverse of zero")
        return RatFn.make(self.den, self.num)

    def __pow__(self, exp: int) -> "RatFn":
        if exp < 0:
            return self.inv() ** (-exp)
        out = RatFn.const(1)
        for _ in range(exp):
            out = out * self
        return out

    def variables(self) -> set:
        return self.num.variables() | self.den.variables()

    def render(self) -> str:
        if self.den.is_one():
            return self.num.render()
        return f"({self.num.render()})/({self.den.render()})"

    def __str__(self) -> str:
        return self.render()


def _primitive(p: Polynomial) -> Tuple[Fraction, Polynomial]:
    """Split off the integer content and sign so the leading coefficient of
    the remaining polynomial is positive."""
    if p.is_zero():
        return Fraction(0), Polynomial.const(1)
    g = p.content()
    if p.leading_coeff() < 0:
        g = -g
    return Fraction(g), p.divide_content(g)


@dataclass(frozen=True)
class Factored:
    """A rational coefficient times a product of primitive polynomials with
    integer exponents.

    Division cancels matching factors syntactically, which keeps iterated
    toggle dynamics from accumulating redundant factors; no polynomial gcd
    is ever computed.  Addition extracts the common factors, expands only
    the leftover parts, and stores their sum as a single new factor.
    """

    coeff: Fraction
    factors: Tuple[Tuple[Polynomial, int], ...]

    @staticmethod
    def make(coeff: Fraction, fdict: Dict[Polynomial, int]) -> "Factored":
        if coeff == 0:
            return Factored(Fraction(0), ())
        items = [(p, e) for p, e in fdict.items() if e != 0 and not p.is_one()]
        items.sort(key=lambda pe: pe[0].terms)
        return Factored(Fraction(coeff), tuple(items))

    @staticmethod
    def const(c) -> "Factored":
        return Factored.make(Fraction(c), {})

    @staticmethod
    def var(v: Var) -> "Factored":
        return Factored.make(Fraction(1), {Polynomial.var(v): 1})

    @staticmethod
    def from_ratfn(f: "RatFn") -> "Factored":
        cn, pn = _primitive(f.num)
        cd, pd = _primitive(f.den)
        if cn == 0:
            return Factored.const(0)
        d: Dict[Polynomial, int] = {}
        d[pn] = d.get(pn, 0) + 1
        d[pd] = d.get(pd, 0) - 1
        return Factored.make(cn / cd, d)

    def is_zero(self) -> bool:
        return self.coeff == 0

    def _fdict(self) -> Dict[Polynomial, int]:
        return dict(self.factors)

    def __mul__(self, other: "Factored") -> "Factored":
        d = self._fdict()
        for p, e in other.factors:
            d[p] = d.get(p, 0) + e
        return Factored.make(self.coeff * other.coeff, d)

    def inv(self) -> "Factored":
        if self.is_zero():
            raise DivisionByZero("inverse of zero")
        return Factored.make(1 / self.coeff, {p: -e for p, e in self.factors})

    def __truediv__(self, other: "Factored") -> "Factored":
        return self * other.inv()

    def __pow__(self, exp: int) -> "Factored":
        if self.is_zero():
            if exp <= 0:
                raise DivisionByZero("zero to a nonpositive power")
            return self
        return Factored.make(self.coeff ** exp, {p: e * exp for p, e in self.factors})

    def __add__(self, other: "Factored") -> "Factored":
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        fa, fb = self._fdict(), other._fdict()
        common: Dict[Polynomial, int] = {}
        for p in set(fa) | set(fb):
            e = min(fa.get(p, 0), fb.get(p, 0))
            if e != 0:
                common[p] = e
        ra = Polynomial.const(1)
        rb = Polynomial.const(1)
        for p in set(fa) | set(common):
            ra = ra * p ** (fa.get(p, 0) - common.get(p, 0))
        for p in set(fb) | set(common):
            rb = rb * p ** (fb.get(p, 0) - common.get(p, 0))
        lcm = (self.coeff.denominator * other.coeff.denominator
               // math.gcd(self.coeff.denominator, other.coeff.denominator))
        s = ra.scale(int(self.coeff * lcm)) + rb.scale(int(other.coeff * lcm))
        if s.is_zero():
            return Factored.const(0)
        g, prim = _primitive(s)
        common[prim] = common.get(prim, 0) + 1
        return Factored.make(g / lcm, common)

    def __sub__(self, other: "Factored") -> "Factored":
        return self + Factored.make(-other.coeff, other._fdict())

    def variables(self) -> set:
        return {v for p, _ in self.factors for v in p.variables()}

    def to_ratfn(self) -> "RatFn":
        num = Polynomial.const(self.coeff.numerator)
        den = Polynomial.const(self.coeff.denominator)
        for p, e in self.factors:
            if e > 0:
                num = num * p ** e
            else:
                den = den * p ** (-e)
        return RatFn.make(num, den)

    def render(self) -> str:
        return self.to_ratfn().render()

    def __str__(self) -> str:
        return self.render()


def parallel(a, b):
    """Parallel sum a ∥ b = 1/(1/a + 1/b).

    For rational functions p/q ∥ u/v = pu/(uq + pv), a single unreduced step.
    Works on Fraction, RatFn, and Factored values alike.
    """
    if isinstance(a, Factored) or isinstance(b, Factored):
        s = a + b
        if s.is_zero():
            raise PoleEncountered("parallel sum pole: a + b = 0")
        return a * b / s
    if isinstance(a, RatFn) or isinstance(b, RatFn):
        p, q, u, v = a.num, a.den, b.num, b.den
        return RatFn.make(p * u, u * q + p * v)
    s = a + b
    if s == 0:
        raise PoleEncountered("parallel sum pole: a + b = 0")
    return a * b / s


def rat_ops(a: Fraction, b: Optional[Fraction], kind: str) -> Fraction:
    """Exact rational operations; kind in add|mul|inv|parallel."""
    if kind == "add":
        return a + b
    if kind == "mul":
        return a * b
    if kind == "inv":
        if a == 0:
            raise DivisionByZero("inverse of zero")
        return 1 / a
    if kind == "parallel":
        if a == 0 or b == 0:
            raise DivisionByZero(f"parallel sum needs nonzero operands, got {a}, {b}")
        if a + b == 0:
            raise DivisionByZero(f"parallel sum pole: {a} + {b} = 0")
        return a * b / (a + b)
    raise ValueError(f"unknown op kind {kind!r}")


def ratfn_ops(a: RatFn, b: Optional[RatFn], kind: str) -> RatFn:
    """Rational-function operations; same kinds as rat_ops."""
    if kind == "add":
        return a + b
    if kind == "mul":
        return a * b
    if kind == "inv":
        return a.inv()
    if kind == "parallel":
        if a.is_zero() or b.is_zero():
            raise DivisionByZero("parallel sum of a zero function")
        return parallel(a, b)
    raise ValueError(f"unknown op kind {kind!r}")


def ratfn_equal(a, b) -> bool:
    """Exact equality by cross multiplication; no gcd needed.  Accepts
    RatFn and Factored operands."""
    if isinstance(a, Factored) and isinstance(b, Factored):
        if a.is_zero() or b.is_zero():
            return a.is_zero() and b.is_zero()
        # Cancel shared factors first, then expand only the leftover ratio.
        q = (a / b).to_ratfn()
        return q.num == q.den
    if isinstance(a, Factored):
        a = a.to_ratfn()
    if isinstance(b, Factored):
        b = b.to_ratfn()
    return a.num * b.den == b.num * a.den


def evaluate(f: Union["RatFn", "Factored", Fraction], point: Dict[Var, Fraction]) -> Fraction:
    """Evaluate at a rational point.  Raises PoleEncountered on a zero
    denominator and UnboundVariable for a missing variable."""
    if isinstance(f, Fraction):
        return f
    if isinstance(f, Factored):
        total = f.coeff
        for p, e in f.factors:
            v = p.evaluate(point)
            if v == 0 and e < 0:
                raise PoleEncountered("denominator factor vanishes at evaluation point")
            total *= v ** e
        return total
    den = f.den.evaluate(point)
    if den == 0:
        raise PoleEncountered("denominator vanishes at evaluation point")
    return f.num.evaluate(point) / den


def substitute(f: RatFn, bindings: Dict[Var, RatFn]) -> RatFn:
    """Substitute rational functions for variables.  Every variable of f
    must be bound."""

    def subst_poly(p: Polynomial) -> RatFn:
        total = RatFn.const(0)
        for m, c in p.terms:
            term = RatFn.const(c)
            for v, e in m:
                if v not in bindings:
                    raise UnboundVariable(f"no binding for {v.render()}")
                term = term * bindings[v] ** e
            total = total + term
        return total

    n = subst_poly(f.num)
    d = subst_poly(f.den)
    if d.is_zero():
        raise DivisionByZero("substitution produced a zero denominator")
    return n / d


_TERM_FACTOR = re.compile(r"^([Ax])\[(-?\d+),(-?\d+)\](?:\^(\d+))?$")


def _parse_poly(text: str) -> Polynomial:
    text = text.strip()
    if not text:
        raise ParseError("empty polynomial")
    # split on top-level " + " / " - "; polynomials contain no parentheses
    pieces: list = []
    for chunk in text.replace(" - ", " + -").split(" + "):
        pieces.append(chunk.strip())
    d: Dict[Monomial, int] = {}
    for piece in pieces:
        neg = piece.startswith("-")
        if neg:
            piece = piece[1:]
        coeff = 1
        pairs = []
        for factor in piece.split("*"):
            factor = factor.strip()
            if re.fullmatch(r"\d+", factor):
                coeff *= int(factor)
                continue
            m = _TERM_FACTOR.match(factor)
            if not m:
                raise ParseError(f"bad factor {factor!r}")
            ns, i, j, e = m.group(1), int(m.group(2)), int(m.group(3)), m.group(4)
            pairs.append((Var(ns, i, j), int(e) if e else 1))
        mon = monomial(pairs)
        d[mon] = d.get(mon, 0) + (-coeff if neg else coeff)
    return Polynomial.from_dict(d)


def parse_ratfn(text: str) -> RatFn:
    """Parse the output of RatFn.render back into a RatFn."""
    text = text.strip()
    if text.startswith("(") and text.endswith(")") and ")/(" in text:
        num_s, den_s = text[1:-1].split(")/(", 1)
        return RatFn.make(_parse_poly(num_s), _parse_poly(den_s))
    return RatFn.make(_parse_poly(text), Polynomial.const(1))


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as e:
        raise ParseError(str(e))
