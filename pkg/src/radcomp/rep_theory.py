"""Lowest-weight modules over ``U = C[z, theta, delta]`` with ``delta = z^-1 b*(theta)``.

The Verma module ``M(lambda)`` is ``C[z] z^-lambda``; its basis vector
``v_j = z^(-lambda + j)`` satisfies

* ``theta v_j = (j - lambda) v_j``,
* ``z v_j = v_(j+1)``,
* ``delta v_j = b*(j - lambda) v_(j-1)``.

Everything is decided exactly from the rational roots of b.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import NotRationalSplit
from .linalg import nullspace, span_closure
from .poly import Q, UniPoly, rational_roots, shift_star

__all__ = [
    "INFINITE",
    "lowest_weights",
    "singular_vectors",
    "simple_dimension",
    "verma_lattice",
    "VermaLattice",
    "global_dimension",
    "GlDimReport",
    "VermaModule",
    "oracle_simple_dimension",
]

INFINITE = math.inf


def lowest_weights(b: UniPoly) -> list[Fraction]:
    """``{lambda : b*(-lambda) = 0}`` with multiplicity, ascending."""
    rr = rational_roots(b)
    if not rr.split:
        raise NotRationalSplit(f"{b} leaves the non-split factor {rr.residual}")
    return sorted(-r - 1 for r in rr.roots)


def _distinct(b: UniPoly) -> list[Fraction]:
    return sorted(set(lowest_weights(b)))


def singular_vectors(b: UniPoly, lam, bound: int) -> list[int]:
    """All ``j`` in ``[1, bound]`` with ``b*(j - lambda) = 0``."""
    lam = Q(lam)
    bstar = shift_star(b)
    return [j for j in range(1, bound + 1) if bstar(j - lam) == 0]


def _exact_singular(b: UniPoly, lam: Fraction) -> list[int]:
    """Singular indices from the root set: ``j = lambda - lambda_i`` in N*."""
    out = set()
    for mu in _distinct(b):
        d = lam - mu
        if d.denominator == 1 and d > 0:
            out.add(int(d))
    return sorted(out)


def simple_dimension(b: UniPoly, lam, bound: int | None = None):
    """``dim L(lambda)``: the least singular index, or INFINITE.

    With ``bound=None`` the answer is exact (read off the roots); otherwise
    only ``j <= bound`` is searched.
    """
    lam = Q(lam)
    js = _exact_singular(b, lam) if bound is None else singular_vectors(b, lam, bound)
    return js[0] if js else INFINITE


@dataclass(frozen=True)
class VermaLattice:
    vertices: tuple[Fraction, ...]
    multiplicity: dict
    edges: tuple[tuple[Fraction, Fraction], ...]          # (sub, super): M(sub) in M(super)
    reduced_edges: tuple[tuple[Fraction, Fraction], ...]
    dims: dict = field(default_factory=dict)

    def isolated(self) -> list[Fraction]:
        touched = {x for e in self.edges for x in e}
        return [v for v in self.vertices if v not in touched]

    def chains(self) -> list[list[Fraction]]:
        """Maximal chains of the reduced Hasse diagram, smallest first."""
        up = {v: [] for v in self.vertices}
        down = {v: [] for v in self.vertices}
        for a, c in self.reduced_edges:
            up[a].append(c)
            down[c].append(a)
        out = []

        def walk(v, path):
            if not up[v]:
                out.append(path)
            for w in sorted(up[v]):
                walk(w, path + [w])

        for v in self.vertices:
            if not down[v]:
                walk(v, [v])
        return out


def verma_lattice(b: UniPoly, bound: int | None = None) -> VermaLattice:
    """Inclusions ``M(lambda - j) in M(lambda)`` for each singular j, with transitive reduction."""
    lw = lowest_weights(b)
    verts = sorted(set(lw))
    mult = {v: lw.count(v) for v in verts}
    edges = []
    for lam in verts:
        js = _exact_singular(b, lam) if bound is None else singular_vectors(b, lam, bound)
        for j in js:
            edges.append((lam - j, lam))
    edges.sort()
    es = set(edges)
    reduced = [
        (a, c) for a, c in edges
        if not any((a, m) in es and (m, c) in es for m in verts if a < m < c)
    ]
    dims = {v: simple_dimension(b, v, bound) for v in verts}
    return VermaLattice(tuple(verts), mult, tuple(edges), tuple(reduced), dims)


@dataclass(frozen=True)
class GlDimReport:
    value: int | float
    witness: str

    def render(self) -> str:
        return "inf" if self.value == INFINITE else str(self.value)


def global_dimension(b: UniPoly) -> GlDimReport:
    lw = lowest_weights(b)
    seen = set()
    for x in lw:
        if x in seen:
            return GlDimReport(INFINITE, f"multiple root: lambda = {x} has multiplicity {lw.count(x)}")
        seen.add(x)
    verts = sorted(seen)
    for i, a in enumerate(verts):
        for c in verts[i + 1:]:
            d = c - a
            if d.denominator == 1:
                return GlDimReport(2, f"roots {a} and {c} differ by the positive integer {d}")
    return GlDimReport(1, "simple roots, no two differing by a positive integer")


class VermaModule:
    """``M(lambda)`` truncated to the basis ``v_0 .. v_T``."""

    def __init__(self, lowest_weight, b: UniPoly, truncation: int, check: bool = True):
        self.lam = Q(lowest_weight)
        self.b = b
        self.bstar = shift_star(b)
        self.truncation = int(truncation)
        if check and self.bstar(-self.lam) != 0:
            raise ValueError(f"{self.lam} is not a lowest weight: b*(-lambda) = {self.bstar(-self.lam)}")

    @property
    def dim(self) -> int:
        return self.truncation + 1

    def weight(self, j: int) -> Fraction:
        return j - self.lam

    def _zero(self):
        return [[Fraction(0)] * self.dim for _ in range(self.dim)]

    def z_matrix(self):
        m = self._zero()
        for j in range(self.truncation):
            m[j + 1][j] = Fraction(1)
        return m

    def delta_matrix(self):
        m = self._zero()
        for j in range(1, self.dim):
            m[j - 1][j] = self.bstar(self.weight(j))
        return m

    def theta_matrix(self):
        m = self._zero()
        for j in range(self.dim):
            m[j][j] = self.weight(j)
        return m


def oracle_simple_dimension(b: UniPoly, lam, truncation: int):
    """Brute-force ``dim L(lambda)`` from explicit matrices on the truncated module.

    Finds the delta-kernel among ``v_1..v_T`` by a nullspace computation,
    closes the lowest such vector under z, delta, theta, and reports the
    quotient dimension; INFINITE when no singular vector shows up.
    """
    M = VermaModule(lam, b, truncation)
    D = M.delta_matrix()
    # restrict delta to span(v_1..v_T) -> span(v_0..v_T)
    sub = [row[1:] for row in D]
    kernel = nullspace(sub, M.dim - 1)
    if not kernel:
        return INFINITE
    lows = []
    for vec in kernel:
        nz = [i for i, x in enumerate(vec) if x]
        lows.append(min(nz) + 1)
    j = min(lows)
    gen = [Fraction(int(i == j)) for i in range(M.dim)]
    closed = span_closure([gen], [M.z_matrix(), D, M.theta_matrix()])
    return M.dim - closed

