import os
import subprocess
import sys
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from radcomp._kernels import available_backends, get_kernels
from radcomp.errors import InsufficientModuli
from radcomp.packed import PRIMES, PackedRing, primes_for_bits
from radcomp.phv import build_invariant, catalog_entry, dual_operator
from radcomp.poly import MultiPoly, UniPoly
from radcomp.sampling import PowerSampler
from radcomp.weyl import WeylOp, euler_operator, weyl_apply

BACKENDS = available_backends()
F = Fraction


def int_polys(nvars=3, max_exp=4):
    key = st.tuples(*[st.integers(0, max_exp)] * nvars)
    return st.dictionaries(key, st.integers(-50, 50), max_size=8).map(lambda d: MultiPoly(nvars, d))


def int_ops(nvars=3):
    idx = st.tuples(*[st.integers(0, 2)] * nvars)
    return st.dictionaries(st.tuples(idx, idx), st.integers(-6, 6), max_size=5).map(lambda d: WeylOp(nvars, d))


@pytest.mark.parametrize("kernel", BACKENDS)
@given(p=int_polys(), q=int_polys(max_exp=3), op=int_ops())
def test_packed_matches_exact(kernel, p, q, op):
    ring = PackedRing(3, 20, 3, kernel)
    P, Q = ring.from_multipoly(p), ring.from_multipoly(q)
    assert ring.to_multipoly(ring.mul(P, Q)) == p * q
    assert ring.to_multipoly(ring.apply(op, P)) == weyl_apply(op, p)
    assert ring.is_zero(ring.combine(1, P, -1, P))


@given(p=int_polys(), op=int_ops())
def test_kernels_agree(p, op):
    if len(BACKENDS) < 2:
        pytest.skip("numba unavailable")
    outs = []
    for kernel in BACKENDS:
        ring = PackedRing(3, 20, 2, kernel)
        r = ring.apply(op, ring.from_multipoly(p))
        outs.append((r.keys.tolist(), r.res.tolist()))
    assert outs[0] == outs[1]


@pytest.mark.parametrize("kernel", BACKENDS)
@given(p=int_polys(), data=st.data())
def test_diagonal_kernels_agree(kernel, p, data):
    idx = st.tuples(*[st.integers(0, 3)] * 3)
    terms = data.draw(st.dictionaries(idx, st.integers(1, 10**6).map(lambda c: c * (-1) ** c), min_size=1, max_size=6))
    op = WeylOp(3, {(b, b): c for b, c in terms.items()})
    ring = PackedRing(3, 20, 3, kernel)
    P = ring.from_multipoly(p)
    blk = ring.compile(op).diag
    k = ring.kernels
    modular = k.apply_diagonal(P.keys, P.res, ring.primes, ring.powers, ring.radix,
                               blk.ptr, blk.idx, blk.ords, blk.coef)
    exact = k.apply_diagonal_exact(P.keys, P.res, ring.primes, ring.powers, ring.radix,
                                   blk.ptr, blk.idx, blk.ords, np.array(blk.values, dtype=np.int64))
    assert modular.tolist() == exact.tolist()


def test_euler_in_packed_form():
    p = MultiPoly(2, {(1, 2): 3, (0, 0): 5, (4, 1): -2})
    ring = PackedRing(2, 8, 2)
    q = UniPoly([1, 0, 1])  # s^2 + 1 at the total degree
    got = ring.to_multipoly(ring.euler(q, ring.from_multipoly(p)))
    assert got == MultiPoly(2, {(1, 2): 30, (0, 0): 5, (4, 1): -52})
    op = euler_operator(2)
    assert ring.to_multipoly(ring.apply(op, ring.from_multipoly(p))) == weyl_apply(op, p)


def test_certification_refuses_overflowing_bounds():
    ring = PackedRing(1, 4, 1)
    big = MultiPoly(1, {(0,): 2**40})
    P = ring.from_multipoly(big)
    with pytest.raises(InsufficientModuli):
        ring.to_multipoly(P)
    assert PackedRing(1, 4, 2).to_multipoly(PackedRing(1, 4, 2).from_multipoly(big)) == big


def test_primes_for_bits():
    assert primes_for_bits(10) == 1
    assert primes_for_bits(62) == 3
    with pytest.raises(InsufficientModuli):
        primes_for_bits(31 * len(PRIMES) + 5)


def test_radix_limit():
    assert PackedRing.fits(16, 14)
    assert not PackedRing.fits(16, 16)


def test_ratio():
    ring = PackedRing(2, 10, 2)
    p = MultiPoly(2, {(1, 1): 2, (2, 0): -3})
    P = ring.from_multipoly(p)
    assert ring.ratio(ring.from_multipoly(p.scale(7)), P) == 7
    assert ring.ratio(ring.from_multipoly(p + MultiPoly.constant(2)), P) is None


@pytest.mark.parametrize("name,size", [("determinant", 3), ("pfaffian", 4), ("sym_determinant", 3)])
def test_sampler_routes_agree(name, size):
    e = catalog_entry(name, size)
    f = build_invariant(e)
    d = dual_operator(f, e.metric)
    ms = range(1, 5)
    exact = PowerSampler(f, 5, "exact").ratios(d, -1, ms)
    for kernel in BACKENDS:
        assert PowerSampler(f, 5, "packed", kernel).ratios(d, -1, ms) == exact


def test_sampler_max_terms():
    from radcomp.errors import DimensionTooLarge

    f = build_invariant(catalog_entry("determinant", 3))
    sampler = PowerSampler(f, 4, max_terms=50)
    with pytest.raises(DimensionTooLarge):
        sampler.power(3)


def test_env_flag_selects_numpy():
    code = "from radcomp._kernels import BACKEND; print(BACKEND)"
    env = dict(os.environ, RADCOMP_DISABLE_NUMBA="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "numpy"


def test_unknown_kernel():
    with pytest.raises(ValueError):
        get_kernels("fortran")
