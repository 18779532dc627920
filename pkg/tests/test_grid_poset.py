"""Rectangle poset, files, and hexagonal regions."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from birow.errors import HypothesisViolated, OutOfRange
from birow.grid_poset import RectPoset, parse_point_key, point_key

grids = st.tuples(st.integers(min_value=0, max_value=5),
                  st.integers(min_value=0, max_value=5))


def test_members_and_bounds():
    p = RectPoset(2, 1)
    assert len(p.members()) == 6
    assert p.contains((2, 1)) and not p.contains((3, 0))
    with pytest.raises(OutOfRange):
        p.covers((3, 0))
    with pytest.raises(OutOfRange):
        RectPoset(-1, 0)


def test_cover_relations():
    p = RectPoset(2, 2)
    ups, top = p.covers((1, 1))
    assert ups == {(2, 1), (1, 2)} and not top
    assert p.covers((2, 2)) == (set(), True)
    downs, bottom = p.covered_by((0, 0))
    assert downs == set() and bottom
    assert p.covered_by((1, 0)) == ({(0, 0)}, False)


@given(grids)
@settings(max_examples=30)
def test_linear_extension_is_top_down(rs):
    p = RectPoset(*rs)
    order = p.linear_extension_desc()
    assert sorted(order) == sorted(p.members())
    seen = set()
    for v in order:
        ups, _ = p.covers(v)
        assert ups <= seen  # everything above was toggled first
        seen.add(v)


def test_point_key_round_trip():
    assert parse_point_key(point_key((3, 2))) == (3, 2)
    assert parse_point_key("-1,4") == (-1, 4)


class TestFiles:
    def test_partition_of_grid(self):
        p = RectPoset(3, 2)
        pts = [q for t in range(-3, 3) for q in p.file_by_offset(t).points]
        assert sorted(pts) == sorted(p.members())

    def test_case_classification_wide(self):
        p = RectPoset(4, 3)  # s <= r
        assert p.file_by_offset(-2).case == "a"   # top (4, 2), d = 2
        assert p.file_by_offset(-2).d == 2
        assert p.file_by_offset(2).case == "b"    # top (1, 3), d = 1
        assert p.file_by_offset(2).d == 1
        assert p.file_by_offset(0).case == "c"
        assert p.file_by_offset(0).d == 3

    def test_case_classification_tall(self):
        p = RectPoset(2, 4)  # r < s: transposed reading
        assert p.file_by_offset(3).case == "a"
        assert p.file_by_offset(-1).case == "b"
        assert p.file_by_offset(1).case == "c"

    def test_points_by_decreasing_rank(self):
        info = RectPoset(3, 2).file_by_offset(-1)
        ranks = [i + j for (i, j) in info.points]
        assert ranks == sorted(ranks, reverse=True)

    def test_offset_out_of_range(self):
        with pytest.raises(OutOfRange):
            RectPoset(2, 2).file_by_offset(3)


class TestHexagon:
    def test_order_zero_is_the_filter(self):
        p = RectPoset(3, 2)
        region = p.hexagon(2, 1, 0)
        assert region.members == frozenset({(2, 1), (2, 2), (3, 1), (3, 2)})
        assert region.sources == () and region.sinks == ()

    def test_sources_and_sinks(self):
        p = RectPoset(3, 2)
        region = p.hexagon(1, 0, 2)
        assert region.sources == ((2, 0), (1, 1))
        assert region.sinks == ((3, 1), (2, 2))
        for q in region.sources + region.sinks:
            assert q in region.members

    def test_rank_band(self):
        p = RectPoset(3, 2)
        region = p.hexagon(1, 0, 2)
        assert all(2 <= i + j <= 4 for (i, j) in region.members)
        assert all(i >= 1 and j >= 0 for (i, j) in region.members)

    def test_order_bound(self):
        p = RectPoset(3, 2)
        p.hexagon(1, 0, 3)  # min(r-m, s-n)+1 = 3 is the largest legal order
        with pytest.raises(HypothesisViolated):
            p.hexagon(1, 0, 4)

    def test_extended_grid(self):
        p = RectPoset(2, 1)
        big = p.extended()
        assert big.imin == big.jmin == -4
        assert big.contains((-3, -2))
        assert big.hexagon(-2, -1, 1).sinks == ((2, 1),)
