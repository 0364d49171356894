"""Prehomogeneous invariants: catalog, dual operators, b-functions, radial parts.

The four constructible families are the quadratic form, the determinant of
a symmetric matrix, the determinant of a square matrix and the Pfaffian of
an alternating matrix.  Other rows of the classification table are kept as
reference data (name, degree, b-function) with no constructor.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement, permutations
from math import comb
from typing import Sequence

from .errors import (
    DimensionTooLarge,
    NonScalarQuotient,
    NotRadial,
    Unsupported,
)
from .linalg import rank
from .poly import MultiPoly, Q, UniPoly, interpolate, multi_factorial, rational_roots, shift_star
from .sampling import PowerSampler
from .theta import ThetaOp
from .weyl import (
    WeylOp,
    constant_coefficient_operator,
    dual_polynomial,
    euler_operator,
    polynomial_in_operator,
    weyl_apply,
)

__all__ = [
    "PHVEntry",
    "BFunctionReport",
    "FAMILIES",
    "TABLE_ONLY",
    "catalog_entry",
    "catalog_rows",
    "build_invariant",
    "dual_operator",
    "extract_bfunction",
    "check_b0_identity",
    "radial_component",
    "omega0",
    "omega0_annihilates",
    "harmonic_dimension",
]


def _shifts(*a) -> UniPoly:
    return UniPoly.from_linear_shifts([Q(x) for x in a])


# --------------------------------------------------------------------------
# catalog


@dataclass(frozen=True)
class PHVEntry:
    name: str
    family: str
    size_param: int
    N: int
    deg_f: int
    expected_b: UniPoly | None
    group: str = ""
    row: str = ""
    constructible: bool = True
    variables: tuple[str, ...] = field(default=(), compare=False)
    metric: tuple[Fraction, ...] | None = field(default=None, compare=False)


FAMILIES = ("quadratic", "sym_determinant", "determinant", "pfaffian")

# name -> (row label, group, deg f, callable size -> b or fixed b)
TABLE_ONLY = {
    "sp_gl2": ("(5)", "Sp(n) x GL(2) : M_{2n,2}", 2, lambda n: _shifts(1, 2 * n)),
    "spin7": ("(6)", "SO(7) x C* : spin = C^8", 2, lambda n: _shifts(1, 4)),
    "spin9": ("(7)", "SO(9) x C* : spin = C^16", 2, lambda n: _shifts(1, 8)),
    "g2": ("(8)", "G2 x C* : C^7", 2, lambda n: _shifts(1, Fraction(7, 2))),
    "e6_cubic": ("(9)", "E6 x C* : C^27", 3, lambda n: _shifts(1, 5, 9)),
    "gl4_sp2": ("(10)", "GL(4) x Sp(2) : M_4", 4, lambda n: _shifts(1, 2, 3, 4)),
    "sl5_gl4": (
        "extra",
        "SL(5) x GL(4) : wedge^2 C^5 (x) C^4",
        40,
        lambda n: _shifts(
            *([1] * 8),
            *([Fraction(2, 3), Fraction(4, 3), Fraction(3, 4), Fraction(5, 4), Fraction(5, 6), Fraction(7, 6)] * 4),
            *([Fraction(7, 10), Fraction(9, 10), Fraction(11, 10), Fraction(13, 10)] * 2),
        ),
    ),
}

_SIZE_CAPS = {"quadratic": 12, "sym_determinant": 3, "determinant": 4, "pfaffian": 6}


def _matrix_names(n: int, kind: str) -> list[tuple[int, int]]:
    if kind == "full":
        return [(i, j) for i in range(n) for j in range(n)]
    if kind == "sym":
        return [(i, j) for i in range(n) for j in range(i, n)]
    return [(i, j) for i in range(n) for j in range(i + 1, n)]


def catalog_entry(name: str, size: int = 1) -> PHVEntry:
    """Look up a catalog row.  ``size`` is N, the matrix size, or n for the sp_gl2 row."""
    size = int(size)
    if name in TABLE_ONLY:
        row, group, deg, bfun = TABLE_ONLY[name]
        return PHVEntry(name, "table_only", size, 0, deg, bfun(size), group, row, constructible=False)
    if name == "quadratic":
        if size < 1:
            raise ValueError("quadratic form needs N >= 1")
        return PHVEntry(
            name, name, size, size, 2, _shifts(1, Fraction(size, 2)), "SO(n) x C* : C^n", "(1)",
            variables=tuple(f"z{i + 1}" for i in range(size)),
        )
    if name == "sym_determinant":
        if size < 1:
            raise ValueError("matrix size must be positive")
        idx = _matrix_names(size, "sym")
        return PHVEntry(
            name, name, size, len(idx), size,
            _shifts(*(Fraction(i + 1, 2) for i in range(1, size + 1))), "GL(n) : S^2 C^n", "(2)",
            variables=tuple(f"x{i + 1}{j + 1}" for i, j in idx),
            metric=tuple(Fraction(1 if i == j else 2) for i, j in idx),
        )
    if name == "determinant":
        if size < 1:
            raise ValueError("matrix size must be positive")
        idx = _matrix_names(size, "full")
        return PHVEntry(
            name, name, size, len(idx), size, _shifts(*range(1, size + 1)), "GL(n) x SL(n) : M_n", "(4)",
            variables=tuple(f"x{i + 1}{j + 1}" for i, j in idx),
        )
    if name == "pfaffian":
        if size < 2 or size % 2:
            raise ValueError("Pfaffian needs an even matrix size >= 2")
        idx = _matrix_names(size, "alt")
        return PHVEntry(
            name, name, size, len(idx), size // 2,
            _shifts(*(2 * i - 1 for i in range(1, size // 2 + 1))), "GL(n) : wedge^2 C^n, n even", "(3)",
            variables=tuple(f"x{i + 1}{j + 1}" for i, j in idx),
        )
    raise KeyError(f"unknown catalog entry {name!r}")


def catalog_rows() -> list[PHVEntry]:
    """One representative entry per catalog name (smallest meaningful size)."""
    rows = [catalog_entry("quadratic", 3), catalog_entry("sym_determinant", 2),
            catalog_entry("pfaffian", 4), catalog_entry("determinant", 2)]
    rows += [catalog_entry(name, 1) for name in TABLE_ONLY]
    return rows


def size_cap(family: str) -> int:
    return _SIZE_CAPS[family]


# --------------------------------------------------------------------------
# invariants


def _perm_sign(p: Sequence[int]) -> int:
    sign = 1
    for i in range(len(p)):
        for j in range(i + 1, len(p)):
            if p[i] > p[j]:
                sign = -sign
    return sign


def _det(n: int, index_of) -> MultiPoly:
    """Leibniz expansion; ``index_of(i, j)`` gives the variable of entry (i, j)."""
    nv = index_of(None, None)
    terms: dict = {}
    for p in permutations(range(n)):
        e = [0] * nv
        for i in range(n):
            e[index_of(i, p[i])] += 1
        k = tuple(e)
        terms[k] = terms.get(k, 0) + _perm_sign(p)
    return MultiPoly(nv, terms)


def _pfaffian(n: int) -> MultiPoly:
    idx = {pair: v for v, pair in enumerate(_matrix_names(n, "alt"))}
    nv = len(idx)

    def rec(rows: tuple[int, ...]) -> dict:
        if not rows:
            return {(0,) * nv: 1}
        first, rest = rows[0], rows[1:]
        out: dict = {}
        for pos, j in enumerate(rest):
            sign = -1 if pos % 2 else 1
            remaining = rest[:pos] + rest[pos + 1:]
            v = idx[(first, j)]
            for k, c in rec(remaining).items():
                kk = list(k)
                kk[v] += 1
                kk = tuple(kk)
                out[kk] = out.get(kk, 0) + sign * c
        return out

    return MultiPoly(nv, rec(tuple(range(n))))


def build_invariant(entry: PHVEntry) -> MultiPoly:
    if not entry.constructible:
        raise Unsupported(f"{entry.name} {entry.row} is table-only; no invariant constructor")
    n = entry.size_param
    if entry.family == "quadratic":
        return MultiPoly(n, {tuple(2 if j == i else 0 for j in range(n)): 1 for i in range(n)})
    if entry.family == "determinant":
        return _det(n, lambda i, j: n * n if i is None else i * n + j)
    if entry.family == "sym_determinant":
        pos = {pair: v for v, pair in enumerate(_matrix_names(n, "sym"))}
        return _det(n, lambda i, j: len(pos) if i is None else pos[(min(i, j), max(i, j))])
    if entry.family == "pfaffian":
        return _pfaffian(n)
    raise Unsupported(f"no constructor for family {entry.family!r}")


def dual_operator(f: MultiPoly, metric: Sequence | None = None) -> WeylOp:
    """``Delta = f*(d)``, with ``metric`` the diagonal of the invariant form."""
    return constant_coefficient_operator(dual_polynomial(f, metric))


# --------------------------------------------------------------------------
# b-functions


@dataclass(frozen=True)
class BFunctionReport:
    b: UniPoly
    c: Fraction
    roots: tuple[Fraction, ...]
    samples_checked: int
    residual: UniPoly = field(default_factory=lambda: UniPoly([1]))

    @property
    def monic(self) -> UniPoly:
        return self.b.monic()

    @property
    def split(self) -> bool:
        return self.residual.degree == 0

    @property
    def lambdas(self) -> tuple[Fraction, ...]:
        """``lambda_i = -root - 1``, sorted."""
        return tuple(sorted(-r - 1 for r in self.roots))

    def matches(self, expected: UniPoly | None) -> bool:
        return expected is not None and self.monic == expected.monic()


def extract_bfunction(f: MultiPoly, delta: WeylOp, n: int, *, backend: str = "auto",
                      kernel: str | None = None, max_terms: int | None = None) -> BFunctionReport:
    """Sample ``Delta(f^(m+1)) = b(m) f^m`` for m = 0..n, interpolate, confirm at n+1, n+2."""
    sampler = PowerSampler(f, n + 3, backend, kernel, max_terms)
    try:
        samples = sampler.ratios(delta, -1, range(1, n + 4))
    except NonScalarQuotient as exc:
        raise NonScalarQuotient(f"f is not a relative invariant for this operator: {exc}") from None
    points = [(Q(m - 1), r) for m, r in samples]
    b = interpolate(points, n)
    rr = rational_roots(b)
    return BFunctionReport(b, b.lead, tuple(rr.roots), len(points), rr.residual)


def check_b0_identity(f: MultiPoly, metric: Sequence | None = None) -> Fraction:
    """``sum_i i! a_i a*_i``, asserted equal to ``Delta(f)``.

    In orthonormal coordinates ``a*_i = a_i`` and this is ``sum i! a_i^2``.
    """
    dual = dual_polynomial(f, metric)
    total = sum((multi_factorial(k) * v * dual.terms[k] for k, v in f.terms.items()), Fraction(0))
    applied = weyl_apply(constant_coefficient_operator(dual), f)
    value = applied.coefficient((0,) * f.nvars)
    if applied != MultiPoly.constant(f.nvars, value) or value != total:
        raise AssertionError(f"Delta(f) = {applied} but sum i! a_i a*_i = {total}")
    return total


# --------------------------------------------------------------------------
# radial components


def radial_component(D: WeylOp, f: MultiPoly, shift_k: int, degree_bound: int | None = None, *,
                     backend: str = "auto", kernel: str | None = None,
                     max_terms: int | None = None) -> ThetaOp:
    """``z^shift_k phi(theta)`` with ``D(f^m) = phi(m) f^(m+shift_k)``.

    Samples ``m = max(0, -shift_k) .. degree_bound`` (default: enough for a
    polynomial of degree ``order(D)`` plus two confirmation points).  The
    interpolation degree is the sample count minus three.
    """
    start = max(0, -shift_k)
    if degree_bound is None:
        degree_bound = start + max(D.order, 0) + 2
    ms = list(range(start, degree_bound + 1))
    if len(ms) < 3:
        raise ValueError("degree_bound leaves fewer than three samples")
    sampler = PowerSampler(f, degree_bound + max(shift_k, 0), backend, kernel, max_terms)
    try:
        samples = sampler.ratios(D, shift_k, ms)
    except NonScalarQuotient as exc:
        raise NotRadial(str(exc)) from None
    phi = interpolate([(Q(m), r) for m, r in samples], len(ms) - 3)
    return ThetaOp({shift_k: phi})


def euler_bar(f: MultiPoly, n: int) -> WeylOp:
    """``Theta / n``, the normalised Euler field."""
    return euler_operator(f.nvars).scale(Fraction(1, n))


def omega0(f: MultiPoly, delta: WeylOp, b: UniPoly) -> WeylOp:
    """``f Delta - b*(Theta/n)`` in normal form."""
    n = f.total_degree
    return WeylOp.multiplication(f) * delta - polynomial_in_operator(shift_star(b), euler_bar(f, n))


def omega0_annihilates(f: MultiPoly, delta: WeylOp, b: UniPoly, depth: int, *, backend: str = "auto",
                       kernel: str | None = None, max_terms: int | None = None) -> list[tuple[int, bool]]:
    """``[(m, Omega0(f^m) == 0)]`` for m = 0..depth.

    Applied in factored form, ``f * Delta(f^m) - b*(Theta/n)(f^m)``, which is
    the same operator as :func:`omega0` without forming its normal order.
    """
    n = f.total_degree
    q = shift_star(b).compose_linear(Fraction(1, n))
    sampler = PowerSampler(f, max(depth, 0) + 1, backend, kernel, max_terms)
    return [(m, sampler.omega_check(delta, q, m)) for m in range(depth + 1)]


# --------------------------------------------------------------------------
# harmonic polynomials


def _monomials(nvars: int, d: int) -> list[tuple[int, ...]]:
    out = []
    for combo in combinations_with_replacement(range(nvars), d):
        e = [0] * nvars
        for v in combo:
            e[v] += 1
        out.append(tuple(e))
    return out


def harmonic_dimension(f: MultiPoly, delta: WeylOp, d: int, max_monomials: int = 6000) -> int:
    """``dim {phi in S^d : Delta phi = 0}`` by exact rank of Delta on monomials."""
    if d < 0:
        raise ValueError("degree must be nonnegative")
    N = f.nvars
    dim_d = comb(N + d - 1, d)
    n = delta.order
    if d < n:
        return dim_d
    if dim_d > max_monomials:
        raise DimensionTooLarge(f"S^{d} has {dim_d} monomials, cap is {max_monomials}")
    target = {m: i for i, m in enumerate(_monomials(N, d - n))}
    cols = []
    for mono in _monomials(N, d):
        img = weyl_apply(delta, MultiPoly(N, {mono: 1}))
        row = [Fraction(0)] * len(target)
        for k, v in img.terms.items():
            row[target[k]] = v
        cols.append(row)
    return dim_d - rank(cols)
