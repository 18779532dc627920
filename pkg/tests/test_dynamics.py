"""Birational, piecewise-linear, and combinatorial toggle dynamics."""

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from birow.dynamics import (Labeling, OrderIdeal, all_order_ideals,
                            generic_labeling, iterate_birational, orbit,
                            random_labeling, rowmotion_birational,
                            rowmotion_combinatorial, rowmotion_pl,
                            toggle_birational, toggle_pl)
from birow.errors import OutOfRangeValue
from birow.exactnum import RatFn, ratfn_equal, xvar
from birow.grid_poset import RectPoset

W, X, Y, Z = (RatFn.var(xvar(*p)) for p in [(0, 0), (1, 0), (0, 1), (1, 1)])
ONE = RatFn.const(1)


def two_by_two_iterates():
    """The four symbolic rowmotion iterates on [0,1]x[0,1], written with
    w, x, y, z at bottom, left, right, top."""
    return [
        {(1, 1): (X + Y) / Z, (1, 0): (X + Y) * W / (X * Z),
         (0, 1): (X + Y) * W / (Y * Z), (0, 0): ONE / Z},
        {(1, 1): (X + Y) * W / (X * Y), (1, 0): ONE / Y,
         (0, 1): ONE / X, (0, 0): Z / (X + Y)},
        {(1, 1): ONE / W, (1, 0): Y * Z / ((X + Y) * W),
         (0, 1): X * Z / ((X + Y) * W), (0, 0): X * Y / ((X + Y) * W)},
        {(1, 1): Z, (1, 0): X, (0, 1): Y, (0, 0): W},
    ]


class TestBirational:
    def test_two_by_two_symbolic_orbit(self):
        f = generic_labeling(RectPoset(1, 1))
        g = f
        for expected in two_by_two_iterates():
            g = rowmotion_birational(g)
            for p, want in expected.items():
                assert ratfn_equal(g.value(p), want), p

    def test_two_by_two_at_a_rational_point(self):
        # x=2, y=3, z=5, w=7: one step gives 1 on top, 7/2 left, 7/3 right, 1/5 bottom
        poset = RectPoset(1, 1)
        f = Labeling(poset, {(0, 0): Fraction(7), (1, 0): Fraction(2),
                             (0, 1): Fraction(3), (1, 1): Fraction(5)})
        g = rowmotion_birational(f)
        assert g.value((1, 1)) == 1
        assert g.value((1, 0)) == Fraction(7, 2)
        assert g.value((0, 1)) == Fraction(7, 3)
        assert g.value((0, 0)) == Fraction(1, 5)

    def test_single_element_period_two(self):
        f = generic_labeling(RectPoset(0, 0))
        g = rowmotion_birational(f)
        assert ratfn_equal(g.value((0, 0)), RatFn.var(xvar(0, 0)).inv())
        assert ratfn_equal(rowmotion_birational(g).value((0, 0)), RatFn.var(xvar(0, 0)))

    @given(st.tuples(st.integers(0, 2), st.integers(0, 2)), st.integers(0, 10))
    @settings(max_examples=20, deadline=None)
    def test_toggle_is_an_involution(self, rs, seed):
        poset = RectPoset(*rs)
        f = random_labeling(poset, random.Random(seed))
        for v in poset.members():
            g = toggle_birational(toggle_birational(f, v), v)
            assert g.values == f.values

    def test_iterate_composes(self):
        poset = RectPoset(2, 1)
        f = random_labeling(poset, random.Random(3))
        assert iterate_birational(f, 2).values == \
            rowmotion_birational(rowmotion_birational(f)).values

    def test_json_round_trip_both_modes(self):
        poset = RectPoset(1, 1)
        for f in (random_labeling(poset, random.Random(1)),
                  rowmotion_birational(generic_labeling(poset))):
            g = Labeling.from_json(f.to_json())
            assert g.poset == poset and g.mode == f.mode
            for p in poset.members():
                a, b = f.value(p), g.value(p)
                assert a == b if f.mode == "rational" else ratfn_equal(a, b)


class TestPiecewiseLinear:
    def test_rank_proportional_point_is_fixed(self):
        poset = RectPoset(2, 2)
        f = Labeling(poset, {(i, j): Fraction(i + j + 1, 6) for (i, j) in poset.members()})
        assert rowmotion_pl(f).values == f.values

    def test_rejects_out_of_range(self):
        poset = RectPoset(1, 1)
        f = Labeling(poset, {p: Fraction(2) for p in poset.members()})
        with pytest.raises(OutOfRangeValue):
            rowmotion_pl(f)

    def test_toggle_involution_and_range(self):
        # order-preserving labelings stay order-preserving under PL toggles
        poset = RectPoset(2, 1)
        rng = random.Random(5)
        f = Labeling(poset, {(i, j): Fraction(8 * (i + j) + rng.randint(0, 7), 32)
                             for (i, j) in poset.members()})
        for v in poset.members():
            g = toggle_pl(f, v)
            assert 0 <= g.value(v) <= 1
            assert toggle_pl(g, v).values == f.values

    def test_period_on_unit_square(self):
        poset = RectPoset(1, 1)
        f = Labeling(poset, {(0, 0): Fraction(1, 4), (1, 0): Fraction(1, 2),
                             (0, 1): Fraction(3, 4), (1, 1): Fraction(1)})
        g = f
        for _ in range(4):
            g = rowmotion_pl(g)
        assert g.values == f.values


class TestCombinatorial:
    def test_ideal_validation(self):
        poset = RectPoset(2, 2)
        OrderIdeal(poset, frozenset({(0, 0), (1, 0), (0, 1)}))
        with pytest.raises(OutOfRangeValue):
            OrderIdeal(poset, frozenset({(1, 1)}))

    def test_ideal_counts_are_binomials(self):
        # ideals of [0,r]x[0,s] are counted by C(r+s+2, r+1)
        assert len(all_order_ideals(RectPoset(1, 1))) == 6
        assert len(all_order_ideals(RectPoset(2, 2))) == 20
        assert len(all_order_ideals(RectPoset(3, 2))) == 35

    def test_rowmotion_empty_ideal(self):
        # rowmotion of the empty ideal adds the minimal element
        poset = RectPoset(2, 2)
        empty = OrderIdeal(poset, frozenset())
        assert rowmotion_combinatorial(empty).members == frozenset({(0, 0)})
        full = OrderIdeal(poset, frozenset(poset.members()))
        assert rowmotion_combinatorial(full).members == frozenset()

    def test_orbit_structure_small_squares(self):
        sizes = sorted(len(orbit(i)) for i in _orbit_reps(RectPoset(1, 1)))
        assert sizes == [2, 4]
        sizes = sorted(len(orbit(i)) for i in _orbit_reps(RectPoset(2, 2)))
        assert sizes == [2, 6, 6, 6]

    def test_orbits_partition_ideals(self):
        poset = RectPoset(2, 1)
        seen = set()
        for rep in _orbit_reps(poset):
            for ideal in orbit(rep):
                assert ideal.members not in seen
                seen.add(ideal.members)
        assert len(seen) == len(all_order_ideals(poset))


def _orbit_reps(poset):
    seen = set()
    reps = []
    for ideal in all_order_ideals(poset):
        if ideal.members in seen:
            continue
        reps.append(ideal)
        seen.update(o.members for o in orbit(ideal))
    return reps
