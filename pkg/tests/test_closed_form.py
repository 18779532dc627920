"""Closed-form rowmotion iterates on the [0,3]x[0,2] worked example and the
shift-free and collapsed special cases."""

import pytest

from birow.avar import a_to_x
from birow.closed_form import (ClosedForm, IterateQuery, claim_mk, m_value,
                               rho_closed, rho_closed_phi, rho_noshift)
from birow.errors import OutOfRange, PreconditionViolated
from birow.exactnum import Polynomial, RatFn, avar, monomial, ratfn_equal, xvar
from birow.grid_poset import RectPoset

P32 = RectPoset(3, 2)


def _mono(*pairs):
    return Polynomial.from_dict({monomial([(avar(i, j), 1) for (i, j) in pairs]): 1})


def _poly(*term_lists):
    total = Polynomial(())
    for pairs in term_lists:
        total = total + _mono(*pairs)
    return total


def q21(k):
    return IterateQuery(P32, 2, 1, k)


def test_query_validation():
    with pytest.raises(OutOfRange):
        IterateQuery(P32, 4, 0, 0)
    with pytest.raises(OutOfRange):
        IterateQuery(P32, 0, 0, 7)


def test_m_value():
    assert [m_value(q21(k)) for k in range(7)] == [0, 0, 1, 3, 5, 7, 9]


def test_k0_filter_product_over_path_sum():
    num, den = rho_closed_phi(q21(0))
    assert num == _mono((2, 1), (2, 2), (3, 1), (3, 2))
    assert den == _poly([(2, 2)], [(3, 1)])


def test_k1_six_over_three():
    num, den = rho_closed_phi(q21(1))
    assert den == _poly([(1, 2)], [(2, 1)], [(3, 0)])
    assert num == _poly([(1, 1), (1, 2), (2, 1), (2, 2)],
                        [(1, 1), (1, 2), (2, 2), (3, 0)],
                        [(1, 1), (1, 2), (3, 0), (3, 1)],
                        [(1, 2), (2, 0), (2, 2), (3, 0)],
                        [(1, 2), (2, 0), (3, 0), (3, 1)],
                        [(2, 0), (2, 1), (3, 0), (3, 1)])


def test_k2_shifted_copy_of_k1():
    num, den = rho_closed_phi(q21(2))
    assert den == _poly([(0, 2)], [(1, 1)], [(2, 0)])
    assert num == _poly([(0, 1), (0, 2), (1, 1), (1, 2)],
                        [(0, 1), (0, 2), (1, 2), (2, 0)],
                        [(0, 1), (0, 2), (2, 0), (2, 1)],
                        [(0, 2), (1, 0), (1, 2), (2, 0)],
                        [(0, 2), (1, 0), (2, 0), (2, 1)],
                        [(1, 0), (1, 1), (2, 0), (2, 1)])


def test_k3_boundary_case_equals_reciprocal_x11():
    num, den = rho_closed_phi(q21(3))
    assert num == _mono((0, 0), (0, 1), (1, 0), (1, 1))
    assert den == _poly([(0, 1)], [(1, 0)])
    cf = rho_closed(q21(3))
    assert cf.frame == "A"
    assert ratfn_equal(a_to_x(cf.fn, P32), RatFn.var(xvar(1, 1)).inv())


def test_k4_reciprocal_of_first_iterate_at_antipode():
    num, den = rho_closed_phi(q21(4))
    assert num == _poly([(1, 2), (2, 2)], [(1, 2), (3, 1)], [(2, 1), (3, 1)])
    assert den == _mono((1, 1), (1, 2), (2, 1), (2, 2), (3, 1), (3, 2))
    assert rho_closed(q21(4)).frame == "x"


def test_k5_reciprocal_of_second_iterate_at_antipode():
    num, den = rho_closed_phi(q21(5))
    assert num == _poly([(0, 2), (1, 2)], [(0, 2), (2, 1)], [(1, 1), (2, 1)],
                        [(3, 0), (0, 2)], [(3, 0), (1, 1)], [(3, 0), (2, 0)])
    assert den == _poly(
        [(0, 1), (1, 1), (0, 2), (2, 1), (1, 2), (2, 2)],
        [(0, 1), (1, 1), (0, 2), (3, 0), (1, 2), (2, 2)],
        [(0, 1), (1, 1), (0, 2), (3, 0), (1, 2), (3, 1)],
        [(0, 1), (2, 0), (0, 2), (3, 0), (1, 2), (2, 2)],
        [(0, 1), (2, 0), (0, 2), (3, 0), (1, 2), (3, 1)],
        [(0, 1), (2, 0), (0, 2), (3, 0), (2, 1), (3, 1)],
        [(1, 0), (2, 0), (0, 2), (3, 0), (1, 2), (3, 1)],
        [(1, 0), (2, 0), (0, 2), (3, 0), (2, 1), (3, 1)],
        [(1, 0), (2, 0), (0, 2), (3, 0), (1, 2), (2, 2)],
        [(1, 0), (2, 0), (1, 1), (3, 0), (2, 1), (3, 1)])


def test_k6_collapses_to_x21():
    num, den = rho_closed_phi(q21(6))
    assert num == _poly([(0, 1), (1, 1)], [(0, 1), (2, 0)], [(1, 0), (2, 0)])
    assert den == _mono((0, 0), (0, 1), (1, 0), (1, 1), (2, 0), (2, 1))
    cf = rho_closed(q21(6))
    assert cf.frame == "x"
    assert ratfn_equal(cf.fn, RatFn.var(xvar(2, 1)))


def test_rho_noshift_agrees_when_defined():
    q = IterateQuery(P32, 2, 1, 1)
    num, den = rho_closed_phi(q)
    assert ratfn_equal(rho_noshift(q), RatFn.make(num, den))
    with pytest.raises(PreconditionViolated):
        rho_noshift(IterateQuery(P32, 2, 1, 2))


def test_claim_mk_collapse():
    q = IterateQuery(P32, 2, 1, 3)  # i + j = k
    assert ratfn_equal(claim_mk(q), RatFn.var(xvar(1, 1)).inv())
    assert ratfn_equal(a_to_x(rho_closed(q).fn, P32), claim_mk(q))
    with pytest.raises(PreconditionViolated):
        claim_mk(IterateQuery(P32, 2, 1, 4))


def test_closed_form_is_tagged():
    assert isinstance(rho_closed(q21(0)), ClosedForm)
    assert rho_closed(q21(0)).frame == "A"
