"""Toggles and rowmotion at the three levels: birational, piecewise-linear,
and combinatorial (order ideals as 0/1 labelings).

A labeling assigns a value to every grid point; the adjoined bottom and top
both carry the implicit value 1 at the birational level (reduced labeling),
and 0 / 1 respectively at the piecewise-linear level.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Tuple, Union

from .errors import DivisionByZero, OutOfRangeValue, PoleEncountered
from .exactnum import Factored, RatFn, parallel, parse_rational, parse_ratfn, xvar
from .grid_poset import GridPoint, RectPoset, parse_point_key, point_key

Value = Union[RatFn, Factored, Fraction]


@dataclass(frozen=True)
class Labeling:
    poset: RectPoset
    values: Dict[GridPoint, Value]

    @property
    def mode(self) -> str:
        v = next(iter(self.values.values()), None)
        return "symbolic" if isinstance(v, (RatFn, Factored)) else "rational"

    def value(self, p: GridPoint) -> Value:
        return self.values[p]

    def with_value(self, p: GridPoint, v: Value) -> "Labeling":
        vals = dict(self.values)
        vals[p] = v
        return Labeling(self.poset, vals)

    def to_json(self) -> dict:
        return {
            "r": self.poset.r,
            "s": self.poset.s,
            "mode": self.mode,
            "labels": {point_key(p): str(v) for p, v in sorted(self.values.items())},
        }

    @staticmethod
    def from_json(data: dict) -> "Labeling":
        poset = RectPoset(data["r"], data["s"])
        mode = data.get("mode", "rational")
        if mode == "symbolic":
            parse = lambda text: Factored.from_ratfn(parse_ratfn(text))
        else:
            parse = parse_rational
        values = {parse_point_key(k): parse(v) for k, v in data["labels"].items()}
        return Labeling(poset, values)


def generic_labeling(poset: RectPoset) -> Labeling:
    """Symbolic labeling with the generic label x_{ij} at (i, j)."""
    return Labeling(poset, {(i, j): Factored.var(xvar(i, j)) for i, j in poset.members()})


def random_positive_rational(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(1, 2 ** 16), rng.randint(1, 2 ** 8))


def random_labeling(poset: RectPoset, rng: random.Random) -> Labeling:
    """Evaluation-mode labeling at a random positive rational point.
    Positivity keeps every toggle denominator nonzero."""
    return Labeling(poset, {p: random_positive_rational(rng) for p in poset.members()})


def _one(f: Labeling) -> Value:
    return Factored.const(1) if f.mode == "symbolic" else Fraction(1)


def _parallel_all(vals: List[Value]):
    out = vals[0]
    for v in vals[1:]:
        try:
            out = parallel(out, v)
        except ZeroDivisionError:
            raise PoleEncountered("parallel sum pole during toggle")
    return out


def toggle_birational(f: Labeling, v: GridPoint) -> Labeling:
    ups, top = f.poset.covers(v)
    downs, bottom = f.poset.covered_by(v)
    one = _one(f)
    lower = [f.value(w) for w in downs] + ([one] if bottom else [])
    upper = [f.value(z) for z in ups] + ([one] if top else [])
    low_sum = lower[0]
    for w in lower[1:]:
        low_sum = low_sum + w
    up_par = _parallel_all(upper)
    old = f.value(v)
    try:
        new = low_sum * up_par / old
    except (ZeroDivisionError, DivisionByZero):
        raise PoleEncountered(f"pole while toggling at {v}")
    return f.with_value(v, new)


def rowmotion_birational(f: Labeling) -> Labeling:
    for v in f.poset.linear_extension_desc():
        f = toggle_birational(f, v)
    return f


def iterate_birational(f: Labeling, k: int) -> Labeling:
    for _ in range(k):
        f = rowmotion_birational(f)
    return f


def _check_unit_interval(f: Labeling):
    for p, v in f.values.items():
        if not (0 <= v <= 1):
            raise OutOfRangeValue(f"value {v} at {p} outside [0,1]")


def toggle_pl(f: Labeling, v: GridPoint) -> Labeling:
    _check_unit_interval(f)
    ups, top = f.poset.covers(v)
    downs, bottom = f.poset.covered_by(v)
    upper = [f.value(z) for z in ups] + ([Fraction(1)] if top else [])
    lower = [f.value(w) for w in downs] + ([Fraction(0)] if bottom else [])
    return f.with_value(v, min(upper) + max(lower) - f.value(v))


def rowmotion_pl(f: Labeling) -> Labeling:
    _check_unit_interval(f)
    for v in f.poset.linear_extension_desc():
        f = toggle_pl(f, v)
    return f


@dataclass(frozen=True)
class OrderIdeal:
    poset: RectPoset
    members: frozenset

    def __post_init__(self):
        for (i, j) in self.members:
            for w in ((i - 1, j), (i, j - 1)):
                if self.poset.contains(w) and w not in self.members:
                    raise OutOfRangeValue(f"not downward closed at {w}")

    def indicator(self) -> Labeling:
        return Labeling(self.poset,
                        {p: Fraction(1 if p in self.members else 0) for p in self.poset.members()})

    def size(self) -> int:
        return len(self.members)


def rowmotion_combinatorial(ideal: OrderIdeal) -> OrderIdeal:
    """Combinatorial rowmotion realized through the piecewise-linear map.

    The 0/1 labelings preserved by the piecewise-linear toggles are the
    order-preserving ones, i.e. indicators of order filters, so the ideal is
    carried through its complement."""
    poset = ideal.poset
    f = Labeling(poset, {p: Fraction(0 if p in ideal.members else 1)
                         for p in poset.members()})
    g = rowmotion_pl(f)
    return OrderIdeal(poset, frozenset(p for p, v in g.values.items() if v == 0))


def orbit(ideal: OrderIdeal) -> List[OrderIdeal]:
    """The rowmotion cycle through ideal; closed at the first repetition."""
    out = [ideal]
    cur = rowmotion_combinatorial(ideal)
    while cur.members != ideal.members:
        out.append(cur)
        cur = rowmotion_combinatorial(cur)
    return out


def all_order_ideals(poset: RectPoset) -> List[OrderIdeal]:
    """Order ideals correspond to weakly decreasing column heights."""
    r, s = poset.r, poset.s
    out: List[OrderIdeal] = []

    def extend(heights: Tuple[int, ...]):
        if len(heights) == r + 1:
            members = frozenset((i, j) for i, h in enumerate(heights) for j in range(h))
            out.append(OrderIdeal(poset, members))
            return
        cap = heights[-1] if heights else s + 1
        for h in range(cap + 1):
            extend(heights + (h,))

    extend(())
    return out
