"""End-to-end acceptance checks; every comparison is exact equality."""

import random
import sys
import time
from fractions import Fraction
from math import comb, factorial

import pytest

from radcomp.bspec import parse_b_spec
from radcomp.cherednik import (
    CherednikParams,
    crossed_apply,
    dunkl_operator,
    dunkl_power_closed_form,
    gm_sequence,
    identity_suite,
    params_from_bfunction,
    spherical_delta,
)
from radcomp.phv import (
    build_invariant,
    catalog_entry,
    check_b0_identity,
    dual_operator,
    extract_bfunction,
    harmonic_dimension,
    omega0,
    omega0_annihilates,
    radial_component,
)
from radcomp.poly import UniPoly, rational_roots, shift_star
from radcomp.quiver import build_quiver, oracle_flags
from radcomp.rep_theory import (
    INFINITE,
    global_dimension,
    lowest_weights,
    oracle_simple_dimension,
    simple_dimension,
    verma_lattice,
)

from conftest import ACCEPTANCE

F = Fraction
s = UniPoly.s()

TABLE_CASES = (
    [("quadratic", n) for n in range(2, 9)]
    + [("sym_determinant", n) for n in (2, 3)]
    + [("pfaffian", n) for n in (4, 6)]
    + [("determinant", n) for n in (2, 3, 4)]
)
TABLE_IDS = [f"{name}-{size}" for name, size in TABLE_CASES]

VERMA_FAMILIES = {
    "half-steps-n3": UniPoly.from_linear_shifts([F(i + 1, 2) for i in range(1, 4)]),
    "half-steps-n4": UniPoly.from_linear_shifts([F(i + 1, 2) for i in range(1, 5)]),
    "half-steps-n6": UniPoly.from_linear_shifts([F(i + 1, 2) for i in range(1, 7)]),
    "cubic": (s + 1) * (s + 5) * (s + 9),
    "quadratic-n6": (s + 1) * (s + 3),
    "quadratic-n8": (s + 1) * (s + 4),
    "quadratic-n7": (s + 1) * (s + F(7, 2)),
    "quadratic-n9": (s + 1) * (s + F(9, 2)),
    "sl5-gl4": parse_b_spec(
        "(s+1)^8[(s+2/3)(s+4/3)(s+3/4)(s+5/4)(s+5/6)(s+7/6)]^4[(s+7/10)(s+9/10)(s+11/10)(s+13/10)]^2"
    ),
}

_cache: dict = {}


def record(criterion, case, ok):
    ACCEPTANCE.setdefault(criterion, []).append((case, bool(ok)))
    return ok


def table_case(name, size):
    """Entry, invariant, dual operator and extracted report, computed once per case."""
    key = (name, size)
    if key not in _cache:
        e = catalog_entry(name, size)
        f = build_invariant(e)
        d = dual_operator(f, e.metric)
        t0 = time.perf_counter()
        rep = extract_bfunction(f, d, e.deg_f)
        _cache[key] = (e, f, d, rep, time.perf_counter() - t0)
    return _cache[key]


def random_params(rng, n):
    ks = [F(rng.randint(-30, 30), rng.randint(1, 15)) for _ in range(n - 1)]
    return CherednikParams.from_nonzero(n, ks, F(rng.randint(1, 20), rng.randint(1, 20)))


def sweep():
    rng = random.Random(20240611)
    return [(n, random_params(rng, n)) for n in range(2, 7) for _ in range(20)]


# 1 ---------------------------------------------------------------------------
@pytest.mark.parametrize("name,size", TABLE_CASES, ids=TABLE_IDS)
def test_criterion_01_bfunction_table(name, size):
    e, f, d, rep, _ = table_case(name, size)
    ok = rep.monic == e.expected_b.monic() and rep.c > 0
    record(1, f"{name}-{size} (c={rep.c})", ok)
    assert ok, f"{rep.b} vs table {e.expected_b}"


def test_criterion_01_total_runtime():
    total = sum(table_case(name, size)[4] for name, size in TABLE_CASES)
    record(1, f"extraction total {total:.1f}s < 60s", total < 60)
    assert total < 60


# 2 ---------------------------------------------------------------------------
@pytest.mark.parametrize("name,size", TABLE_CASES, ids=TABLE_IDS)
def test_criterion_02_b0_identity(name, size):
    e, f, d, rep, _ = table_case(name, size)
    value = check_b0_identity(f, e.metric)  # raises if Delta(f) differs from the sum
    ok = value == rep.b(0)
    if name == "determinant":
        ok = ok and value == factorial(size)
    record(2, f"{name}-{size}", ok)
    assert ok


# 3 ---------------------------------------------------------------------------
def test_criterion_03_spherical_identities():
    failures = []
    for n, p in sweep():
        bad = [ch.name for ch in identity_suite(p) if not ch.passed]
        if bad:
            failures.append((n, p.k, bad))
    record(3, "n=2..6 x 20 parameter vectors", not failures)
    assert not failures


# 4 ---------------------------------------------------------------------------
def test_criterion_04_dunkl_power_closed_form():
    failures = []
    for n, p in sweep():
        t = dunkl_operator(p)
        power = None
        for j in range(1, n + 1):
            power = t if power is None else power * t
            for sdeg in range(7):
                got = crossed_apply(power, {sdeg * n: F(1)})
                c = dunkl_power_closed_form(p, j, sdeg)
                if got != ({sdeg * n - j: c} if c else {}):
                    failures.append((n, j, sdeg))
    record(4, "j<=n, s<=6 over the sweep", not failures)
    assert not failures


# 5 ---------------------------------------------------------------------------
@pytest.mark.parametrize("name,size", TABLE_CASES, ids=TABLE_IDS)
def test_criterion_05_radial_delta(name, size):
    e, f, d, rep, _ = table_case(name, size)
    params = params_from_bfunction(rep.lambdas, rep.c)
    ok = radial_component(d, f, -1) == spherical_delta(params)
    record(5, f"{name}-{size}", ok)
    assert ok


# 6 ---------------------------------------------------------------------------
OMEGA_CASES = [
    pytest.param(name, size, id=f"{name}-{size}",
                 marks=[pytest.mark.slow] if (name, size) == ("determinant", 4) else [])
    for name, size in TABLE_CASES
]


@pytest.mark.parametrize("name,size", OMEGA_CASES)
def test_criterion_06_omega0(name, size):
    e, f, d, rep, _ = table_case(name, size)
    checks = omega0_annihilates(f, d, rep.b, 12)
    radial_zero = radial_component(omega0(f, d, rep.b), f, 0).is_zero()
    ok = [m for m, _ in checks] == list(range(13)) and all(flag for _, flag in checks) and radial_zero
    record(6, f"{name}-{size}", ok)
    assert ok, (checks, radial_zero)


# 7 ---------------------------------------------------------------------------
def _oracle_agrees(b):
    return all(oracle_simple_dimension(b, lam, 16) == simple_dimension(b, lam) for lam in set(lowest_weights(b)))


def test_criterion_07_verma_families():
    results = {}
    for n in (3, 4, 6):
        b = VERMA_FAMILIES[f"half-steps-n{n}"]
        lws = lowest_weights(b)
        results[f"half-steps-n{n}"] = (
            all(simple_dimension(b, lam) == 1 for lam in lws[2:])
            and global_dimension(b).value == 2
            and _oracle_agrees(b)
        )
    b = VERMA_FAMILIES["cubic"]
    lat = verma_lattice(b, 20)
    results["cubic"] = (
        lat.chains() == [[0, 4, 8]]
        and simple_dimension(b, 4) == simple_dimension(b, 8) == 4
        and global_dimension(b).value == 2
        and _oracle_agrees(b)
    )
    for k in (3, 4):
        b = VERMA_FAMILIES[f"quadratic-n{2 * k}"]
        results[f"quadratic-n{2 * k}"] = (
            simple_dimension(b, k - 1) == k - 1 and global_dimension(b).value == 2 and _oracle_agrees(b)
        )
        b = VERMA_FAMILIES[f"quadratic-n{2 * k + 1}"]
        lat = verma_lattice(b)
        results[f"quadratic-n{2 * k + 1}"] = (
            lat.edges == () and global_dimension(b).value == 1 and _oracle_agrees(b)
        )
    b = VERMA_FAMILIES["sl5-gl4"]
    lat = verma_lattice(b)
    results["sl5-gl4"] = (
        len(lat.isolated()) == 11
        and len(lat.vertices) == 11
        and global_dimension(b).value == INFINITE
        and _oracle_agrees(b)
    )
    for name, ok in results.items():
        record(7, name, ok)
    assert all(results.values()), results


# 8 ---------------------------------------------------------------------------
@pytest.mark.parametrize("n", [3, 4, 5])
def test_criterion_08_gm_degrees(n):
    rng = random.Random(n)
    p = random_params(rng, n)
    b = p.b()
    v = b.compose_linear(-1) * -2
    degs = [g.degree for g in gm_sequence(v, 6)]
    ok = degs == [(m + 1) * n - (2 * m + 1) for m in range(7)] and all(a < c for a, c in zip(degs, degs[1:]))
    record(8, f"n={n}", ok)
    assert ok, degs


# 9 ---------------------------------------------------------------------------
@pytest.mark.parametrize("N", [3, 4, 5])
def test_criterion_09_harmonic_dimensions(N):
    e = catalog_entry("quadratic", N)
    f = build_invariant(e)
    d = dual_operator(f)
    dims = [harmonic_dimension(f, d, k) for k in range(9)]
    formula = [comb(N + k - 1, k) - (comb(N + k - 3, k - 2) if k >= 2 else 0) for k in range(9)]
    sums = all(sum(dims[k - 2 * j] for j in range(k // 2 + 1)) == comb(N + k - 1, k) for k in range(9))
    ok = dims == formula and sums
    record(9, f"N={N}", ok)
    assert ok, (dims, formula)


# 10 --------------------------------------------------------------------------
QUIVER_CASES = [(f"{n}-{s_}", lambda n=n, s_=s_: table_case(n, s_)[3].b) for n, s_ in TABLE_CASES]
QUIVER_CASES += [(name, lambda b=b: b) for name, b in VERMA_FAMILIES.items()]


@pytest.mark.parametrize("name,get_b", QUIVER_CASES, ids=[c[0] for c in QUIVER_CASES])
def test_criterion_10_quiver_flags(name, get_b):
    b = get_b()
    roots = set(rational_roots(b).roots) | set(rational_roots(shift_star(b)).roots)
    lo = min(int(r) for r in roots) - 2
    hi = max(int(r) for r in roots) + 2
    ok = True
    for rep in sorted({r - (r.numerator // r.denominator) for r in roots}):
        g = build_quiver(b, rep, (lo, hi))
        ok = ok and not g.roots_outside_window
        flags = ([e.iso for e in g.z_edges], [e.iso for e in g.delta_edges])
        ok = ok and flags == oracle_flags(b, rep, (lo, hi))
    record(10, name, ok)
    assert ok


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
