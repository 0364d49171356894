from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from radcomp.cherednik import (
    CherednikParams,
    CrossedOp,
    crossed_apply,
    crossed_multiply,
    dunkl_operator,
    dunkl_power_closed_form,
    gm_sequence,
    identity_suite,
    params_from_bfunction,
    restrict_spherical,
    spherical_delta,
    spherical_delta_element,
    spherical_theta,
    spherical_z,
)
from radcomp.errors import NotSpherical
from radcomp.poly import UniPoly, tau_difference
from radcomp.theta import ThetaOp

from conftest import rationals

F = Fraction
s = UniPoly.s()


@st.composite
def params(draw, n=None):
    n = draw(st.integers(1, 5)) if n is None else n
    ks = draw(st.lists(rationals(), min_size=n - 1, max_size=n - 1))
    c = draw(rationals().filter(bool))
    return CherednikParams.from_nonzero(n, ks, c)


def crossedops(n):
    key = st.tuples(st.integers(-2, 2), st.integers(0, 2), st.integers(0, n - 1))
    return st.dictionaries(key, rationals(), max_size=3).map(lambda d: CrossedOp(n, d))


def test_params_validation():
    with pytest.raises(ValueError):
        CherednikParams(2, (F(1), F(0)))
    with pytest.raises(ValueError):
        CherednikParams(2, (F(0),))
    with pytest.raises(ValueError):
        CherednikParams.from_nonzero(2, [1], c=0)
    p = CherednikParams.from_nonzero(3, [F(1, 2), 2])
    assert p.lambdas == (0, F(1, 2) - F(1, 3), 2 - F(2, 3))


def test_dunkl_small_cases():
    assert dunkl_operator(CherednikParams(1, (0,))) == CrossedOp.dx(1)
    kappa = F(3, 7)
    t = dunkl_operator(CherednikParams.from_nonzero(2, [kappa]))
    assert t == CrossedOp.dx(2) + CrossedOp(2, {(-1, 0, 1): 2 * kappa})


@given(params(), st.integers(-12, 12))
def test_dunkl_on_monomials(p, e):
    n = p.n
    q = (-e) % n
    img = crossed_apply(dunkl_operator(p), {e: F(1)})
    coeff = n * p.k[q] + e
    assert img == ({e - 1: coeff} if coeff else {})


def test_idempotents_project_degree_classes():
    n = 3
    e0 = CrossedOp.idempotent(n, 0)
    assert crossed_apply(e0, {3: F(1)}) == {3: F(1)}
    assert crossed_apply(e0, {1: F(1)}) == {}
    assert crossed_apply(CrossedOp.idempotent(n, 1), {2: F(5)}) == {2: F(5)}
    for i in range(n):
        for j in range(n):
            prod = crossed_multiply(CrossedOp.idempotent(n, i), CrossedOp.idempotent(n, j))
            assert prod == (CrossedOp.idempotent(n, i) if i == j else CrossedOp(n))
    total = sum((CrossedOp.idempotent(n, i) for i in range(n)), CrossedOp(n))
    assert total == CrossedOp.identity(n)


def test_dunkl_kills_constants():
    p = CherednikParams.from_nonzero(4, [1, F(2, 3), -5])
    assert crossed_apply(dunkl_operator(p), {0: F(1)}) == {}


@given(params())
def test_dunkl_commutator_with_x(p):
    n = p.n
    t, x = dunkl_operator(p), CrossedOp.x(n)
    br = crossed_multiply(t, x) - crossed_multiply(x, t)
    k = p.k
    expected = CrossedOp.identity(n) + CrossedOp(n, {(0, 0, i): n * (k[i - 1] - k[i]) for i in range(n)})
    assert br == expected
    # the same element written as 1 + n sum k_i (e_(i+1) - e_i)
    alt = CrossedOp.identity(n)
    for i in range(n):
        alt = alt + (CrossedOp.idempotent(n, i + 1) - CrossedOp.idempotent(n, i)).scale(n * k[i])
    assert br == alt


@given(params(), st.integers(-6, 6))
def test_dunkl_is_homogeneous(p, e):
    img = crossed_apply(dunkl_operator(p), {e: F(1)})
    assert set(img) <= {e - 1}


@given(st.integers(1, 4).flatmap(lambda n: st.tuples(crossedops(n), crossedops(n))))
def test_multiply_matches_composition(pair):
    a, b = pair
    prod = crossed_multiply(a, b)
    for e in range(-20, 21):
        assert crossed_apply(prod, {e: F(1)}) == crossed_apply(a, crossed_apply(b, {e: F(1)}))


@given(params(), st.integers(0, 6))
def test_dunkl_powers_closed_form(p, sdeg):
    t = dunkl_operator(p)
    vec = {sdeg * p.n: F(1)}
    for j in range(1, p.n + 1):
        vec = crossed_apply(t, vec)
        c = dunkl_power_closed_form(p, j, sdeg)
        assert vec == ({sdeg * p.n - j: c} if c else {})


def test_restriction_examples():
    p = CherednikParams.from_nonzero(3, [F(1, 2), F(5, 4)], c=F(2, 3))
    assert restrict_spherical(spherical_z(p), p) == ThetaOp.z()
    assert restrict_spherical(spherical_theta(p), p) == ThetaOp.theta()
    assert spherical_delta(p) == ThetaOp.delta(p.bstar())
    with pytest.raises(NotSpherical):
        restrict_spherical(CrossedOp.x(3), p)


@given(params())
def test_identity_suite_holds(p):
    checks = identity_suite(p)
    assert len(checks) == 6
    assert all(ch.passed for ch in checks), [ch for ch in checks if not ch.passed]


def test_params_from_bfunction_round_trip():
    p = CherednikParams.from_nonzero(4, [F(1, 3), 2, F(-7, 5)], c=F(9, 2))
    q = params_from_bfunction(p.lambdas, p.c)
    assert q == p
    with pytest.raises(ValueError):
        params_from_bfunction([F(1), F(2)], 1)


def test_gm_sequence_quadratic_case():
    b = 4 * (s + 1) * (s + F(3, 2))
    v = b.compose_linear(-1) * -2
    g = gm_sequence(v, 4)
    assert g[0] == tau_difference(v) * F(1, 2)
    assert {p.degree for p in g} == {1}


@pytest.mark.parametrize("n", [3, 4, 5])
def test_gm_degrees(n):
    v = UniPoly.from_linear_shifts([F(i, n) + 1 for i in range(n)], F(-2) * (-1) ** n)
    g = gm_sequence(v, 6)
    assert [p.degree for p in g] == [(m + 1) * n - (2 * m + 1) for m in range(7)]


def test_gm_requires_degree_two():
    with pytest.raises(ValueError):
        gm_sequence(s + 1, 3)


def test_delta_element_is_spherical():
    p = CherednikParams.from_nonzero(2, [F(3, 4)])
    d = spherical_delta_element(p)
    assert restrict_spherical(d, p, 4) == ThetaOp.delta(p.bstar())
