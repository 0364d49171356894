from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from radcomp.errors import DegreeExceeded, NotPolynomial
from radcomp.poly import UniPoly, shift_star, tau_difference
from radcomp.theta import (
    ThetaOp,
    theta_apply_fractional,
    theta_compose,
    theta_from_differential,
    theta_from_samples,
    theta_to_differential,
)
from radcomp.weyl import WeylOp, weyl_apply
from radcomp.poly import MultiPoly

from conftest import rationals, unipolys

F = Fraction
s = UniPoly.s()


def thetaops(max_shift=2):
    return st.dictionaries(st.integers(-max_shift, max_shift), unipolys(3), max_size=3).map(ThetaOp)


def split_b():
    return st.lists(rationals(), min_size=1, max_size=4).map(lambda shifts: UniPoly.from_linear_shifts(shifts))


def test_delta_z_products():
    bstar = s * (s + 1)
    z, delta = ThetaOp.z(), ThetaOp.delta(bstar)
    assert theta_compose(delta, z) == ThetaOp({0: bstar.shift(1)})
    assert theta_compose(z, delta) == ThetaOp({0: bstar})
    th = ThetaOp.theta()
    assert theta_compose(th, z) - theta_compose(z, th) == z


def test_to_differential_examples():
    assert theta_to_differential(ThetaOp({-1: s})) == WeylOp.partial(1, 0)
    assert theta_to_differential(ThetaOp.theta()) == WeylOp(1, {((1,), (1,)): 1})
    got = theta_to_differential(ThetaOp({-1: s * (s + F(1, 2))}))
    assert got == WeylOp(1, {((1,), (2,)): 1, ((0,), (1,)): F(3, 2)})


def test_to_differential_agrees_on_powers():
    op = ThetaOp({-1: s * (s + F(1, 2))})
    d = theta_to_differential(op)
    for m in range(6):
        lhs = weyl_apply(d, MultiPoly.monomial((m,)))
        rhs = MultiPoly(1, {(e,): c for e, c in op.act(m).items() if e >= 0})
        assert lhs == rhs


def test_pole_is_rejected():
    with pytest.raises(NotPolynomial):
        theta_to_differential(ThetaOp({-1: UniPoly([1])}))


def test_from_samples():
    assert theta_from_samples(0, [(m, m) for m in range(5)], 2) == ThetaOp.theta()
    assert theta_from_samples(1, [(m, 1) for m in range(4)], 1) == ThetaOp.z()
    bstar = (s + F(1, 3)) * (s + 2) * s * 4
    assert theta_from_samples(-1, [(m, bstar(m)) for m in range(1, 8)], 3) == ThetaOp.delta(bstar)
    with pytest.raises(DegreeExceeded):
        theta_from_samples(0, [(0, 0), (1, 1), (2, 5)], 1)


def test_fractional_action():
    bstar = s * (s + 4) * (s + 8)
    delta = ThetaOp.delta(bstar)
    zeros = [j for j in range(-6, 14) if not theta_apply_fractional(delta, F(-4 + j))]
    assert zeros == [-4, 0, 4]
    assert theta_apply_fractional(ThetaOp.theta(), F(1, 2)) == [(F(1, 2), F(1, 2))]
    assert theta_apply_fractional(ThetaOp.z(), F(2, 7)) == [(F(9, 7), F(1))]


@given(thetaops(), thetaops(), thetaops())
def test_compose_associative(a, b, c):
    assert theta_compose(theta_compose(a, b), c) == theta_compose(a, theta_compose(b, c))


@given(thetaops(), thetaops(), rationals())
def test_action_homomorphism(a, b, alpha):
    assert theta_compose(a, b).act(alpha) == a.act_on(b.act(alpha))


@given(st.integers(0, 2), unipolys(3))
def test_round_trip_through_differential_form(shift, phi):
    # multiply by enough falling factors that no pole can appear
    op = ThetaOp({shift: phi})
    d = theta_to_differential(op)
    assert theta_from_differential(d) == op
    samples = []
    for m in range(phi.degree + 4):
        img = weyl_apply(d, MultiPoly.monomial((m,)))
        samples.append((m, img.coefficient((m + shift,))))
    assert theta_from_samples(shift, samples, max(phi.degree, 0)) == op


@given(split_b(), rationals().filter(bool))
def test_generator_relations(b, c):
    b = b * c
    bstar = shift_star(b)
    z, th, delta = ThetaOp.z(), ThetaOp.theta(), ThetaOp.delta(bstar)
    br = lambda x, y: theta_compose(x, y) - theta_compose(y, x)  # noqa: E731
    assert br(delta, z) == ThetaOp({0: tau_difference(bstar)})
    assert br(th, z) == z
    assert br(th, delta) == -delta
    assert theta_compose(z, delta) == ThetaOp({0: bstar})
    # with v(s) = -2 b(-s): 2 delta z + v(-theta) = 0
    v = b.compose_linear(-1) * -2
    assert theta_compose(delta, z) * 2 + ThetaOp({0: v.compose_linear(-1)}) == ThetaOp()
