"""The change of variables x -> A, its inverse substitution, and the index
shift operator mu^(a,b) acting on A-variables."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict

from .errors import ShiftOutOfRange, UnboundVariable
from .exactnum import Polynomial, RatFn, Var, avar, monomial, substitute, xvar
from .grid_poset import GridPoint, RectPoset


@dataclass(frozen=True)
class AChart:
    """A_{ij} expressed in the x-variables of one rectangle.

    A_{ij} = (x_{i,j-1} + x_{i-1,j})/x_{ij} in the interior, with the
    boundary conventions A_{i0} = x_{i-1,0}/x_{i0}, A_{0j} = x_{0,j-1}/x_{0j}
    and A_{00} = 1/x_{00} (the adjoined bottom carries the label 1).
    """

    poset: RectPoset
    a_values: Dict[GridPoint, RatFn]


def x_to_A(poset: RectPoset) -> AChart:
    vals: Dict[GridPoint, RatFn] = {}
    for (i, j) in poset.members():
        num = Polynomial.const(0)
        if i >= 1:
            num = num + Polynomial.var(xvar(i - 1, j))
        if j >= 1:
            num = num + Polynomial.var(xvar(i, j - 1))
        if i == 0 and j == 0:
            num = Polynomial.const(1)
        vals[(i, j)] = RatFn.make(num, Polynomial.var(xvar(i, j)))
    return AChart(poset, vals)


def shift_poly(p: Polynomial, a: int, b: int) -> Polynomial:
    """Replace each A_{u,v} with A_{u-a,v-b}."""
    if a == 0 and b == 0:
        return p
    d = {}
    for mon, c in p.terms:
        pairs = []
        for v, e in mon:
            if v.ns != "A":
                raise ShiftOutOfRange(f"cannot shift non-A variable {v.render()}")
            if v.i - a < 0 or v.j - b < 0:
                raise ShiftOutOfRange(f"shift mu^({a},{b}) sends {v.render()} out of range")
            pairs.append((Var("A", v.i - a, v.j - b), e))
        d[monomial(pairs)] = c
    return Polynomial.from_dict(d)


def shift_mu(f: RatFn, a: int, b: int) -> RatFn:
    return RatFn.make(shift_poly(f.num, a, b), shift_poly(f.den, a, b))


def a_to_x(f: RatFn, poset: RectPoset) -> RatFn:
    """Substitute the chart, turning an A-variable expression into x-variables."""
    chart = x_to_A(poset)
    bindings: Dict[Var, RatFn] = {}
    for v in f.variables():
        if v.ns == "A":
            if not poset.contains((v.i, v.j)):
                raise UnboundVariable(f"{v.render()} outside the rectangle")
            bindings[avar(v.i, v.j)] = chart.a_values[(v.i, v.j)]
        else:
            bindings[v] = RatFn.var(v)
    return substitute(f, bindings)
