from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from radcomp.errors import DimensionMismatch
from radcomp.poly import MultiPoly
from radcomp.weyl import (
    WeylOp,
    commutator,
    constant_coefficient_operator,
    dual_polynomial,
    euler_operator,
    weyl_apply,
    weyl_multiply,
)

from conftest import multipolys, rationals

F = Fraction


def weylops(nvars=2, max_exp=2, max_terms=3):
    idx = st.tuples(*[st.integers(0, max_exp)] * nvars)
    return st.dictionaries(st.tuples(idx, idx), rationals(), max_size=max_terms).map(lambda d: WeylOp(nvars, d))


def test_canonical_commutation():
    z, d = WeylOp.coordinate(1, 0), WeylOp.partial(1, 0)
    assert weyl_multiply(d, z) == WeylOp(1, {((1,), (1,)): 1, ((0,), (0,)): 1})
    assert weyl_multiply(z, d) == WeylOp(1, {((1,), (1,)): 1})
    assert commutator(d, z) == WeylOp.identity(1)


def test_euler_squared():
    th = euler_operator(1)
    assert th * th == WeylOp(1, {((2,), (2,)): 1, ((1,), (1,)): 1})


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        weyl_multiply(WeylOp.identity(1), WeylOp.identity(2))
    with pytest.raises(DimensionMismatch):
        weyl_apply(WeylOp.identity(2), MultiPoly.constant(3))


def det2():
    z = [MultiPoly.variable(4, i) for i in range(4)]
    return z[0] * z[3] - z[1] * z[2]


def test_cayley_2x2():
    f = det2()
    delta = constant_coefficient_operator(dual_polynomial(f))
    assert delta == WeylOp(4, {((0,) * 4, (1, 0, 0, 1)): 1, ((0,) * 4, (0, 1, 1, 0)): -1})
    assert weyl_apply(delta, f) == MultiPoly.constant(4, 2)
    assert weyl_apply(delta, MultiPoly(4)).is_zero()


def test_laplacian_is_dual_of_quadratic_form():
    f = sum((MultiPoly.variable(3, i) ** 2 for i in range(3)), MultiPoly(3))
    lap = constant_coefficient_operator(dual_polynomial(f))
    assert lap == sum((WeylOp.partial(3, i) ** 2 for i in range(3)), WeylOp(3))
    assert dual_polynomial(MultiPoly(3)).is_zero()


@given(st.tuples(*[st.integers(0, 4)] * 3), rationals().filter(bool))
def test_euler_on_monomials(exps, c):
    mono = MultiPoly.monomial(exps, c)
    assert weyl_apply(euler_operator(3), mono) == mono.scale(sum(exps))


def test_euler_brackets():
    th = euler_operator(2)
    d1 = WeylOp.partial(2, 0)
    assert commutator(th, d1) == -d1
    f = det2()
    thbar = euler_operator(4).scale(F(1, 2))
    mf = WeylOp.multiplication(f)
    delta = constant_coefficient_operator(dual_polynomial(f))
    assert commutator(thbar, mf) == mf
    assert commutator(thbar, delta) == -delta


@given(weylops(), weylops(), weylops())
def test_associativity(a, b, c):
    assert (a * b) * c == a * (b * c)


@given(weylops(), weylops(), multipolys(max_exp=4))
def test_product_acts_as_composition(a, b, p):
    assert weyl_apply(a * b, p) == weyl_apply(a, weyl_apply(b, p))


@given(weylops(max_terms=2), weylops(max_terms=2), weylops(max_terms=2))
def test_jacobi(a, b, c):
    total = commutator(a, commutator(b, c)) + commutator(b, commutator(c, a)) + commutator(c, commutator(a, b))
    assert total.is_zero()


@given(st.tuples(*[st.integers(0, 3)] * 2), st.tuples(*[st.integers(0, 3)] * 2))
def test_grading_by_euler(i, j):
    d = WeylOp(2, {(i, j): 1})
    assert commutator(euler_operator(2), d) == d.scale(sum(i) - sum(j))


def test_order_and_degree():
    d = WeylOp(2, {((2, 1), (0, 1)): 3, ((0, 0), (2, 2)): 1})
    assert d.order == 4 and d.z_degree == 3
