"""Rank-one rational Cherednik algebra for the cyclic group of order n.

Elements of ``C[x, 1/x, d_x] x| CW`` are stored in the idempotent basis:
a :class:`CrossedOp` is a sum of ``c * x^a * d_x^b * e_i``.  The idempotent
``e_i`` acts on ``C[x, 1/x]`` as the projection onto the span of the ``x^p``
with ``p = -i (mod n)``, so no root of unity is ever needed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Mapping, Sequence

from .errors import NotSpherical
from .poly import Q, UniPoly, falling, tau_difference
from .theta import ThetaOp, theta_from_samples

__all__ = [
    "CherednikParams",
    "CrossedOp",
    "dunkl_operator",
    "crossed_apply",
    "crossed_multiply",
    "restrict_spherical",
    "spherical_delta",
    "spherical_theta",
    "spherical_z",
    "gm_sequence",
    "params_from_bfunction",
    "identity_suite",
    "IdentityCheck",
    "dunkl_power_closed_form",
]


@dataclass(frozen=True)
class CherednikParams:
    """Order ``n`` of W, multiplicities ``k = (0, k_1, ..., k_{n-1})`` and scale ``c``."""

    n: int
    k: tuple[Fraction, ...]
    c: Fraction = Fraction(1)

    def __post_init__(self):
        k = tuple(Q(x) for x in self.k)
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "c", Q(self.c))
        if self.n < 1:
            raise ValueError("n must be at least 1")
        if len(k) != self.n:
            raise ValueError(f"expected {self.n} multiplicities, got {len(k)}")
        if k[0] != 0:
            raise ValueError("k_0 must be 0")
        if self.c == 0:
            raise ValueError("c must be nonzero")

    @classmethod
    def from_nonzero(cls, n: int, ks: Sequence, c=1) -> "CherednikParams":
        """Build from ``k_1..k_{n-1}`` only."""
        return cls(n, (Fraction(0), *(Q(x) for x in ks)), Q(c))

    @property
    def lambdas(self) -> tuple[Fraction, ...]:
        """``lambda_i = k_i - i/n``."""
        return tuple(ki - Fraction(i, self.n) for i, ki in enumerate(self.k))

    def bstar(self) -> UniPoly:
        """``b*(s) = c prod (s + lambda_i)``."""
        return UniPoly.from_linear_shifts(self.lambdas, self.c)

    def b(self) -> UniPoly:
        """``b(s) = b*(s + 1)``."""
        return self.bstar().shift(1)


def params_from_bfunction(lambdas: Sequence, c) -> CherednikParams:
    """Invert ``lambda_i = k_i - i/n``: ``k_i = lambda_i + i/n`` (lambda_0 must be 0)."""
    lam = [Q(x) for x in lambdas]
    n = len(lam)
    return CherednikParams(n, tuple(l + Fraction(i, n) for i, l in enumerate(lam)), Q(c))


Key = tuple[int, int, int]


class CrossedOp:
    """``sum c * x^a d^b e_i`` keyed by ``(a, b, i)``; ``a`` may be negative."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Mapping | None = None):
        self.n = int(n)
        clean: dict[Key, Fraction] = {}
        for (a, b, i), c in (terms or {}).items():
            if b < 0:
                raise ValueError("derivative order must be nonnegative")
            key = (int(a), int(b), int(i) % self.n)
            c = Q(c)
            v = clean.get(key, Fraction(0)) + c
            if v:
                clean[key] = v
            else:
                clean.pop(key, None)
        self.terms = clean

    @classmethod
    def _raw(cls, n, terms):
        obj = cls.__new__(cls)
        obj.n = n
        obj.terms = terms
        return obj

    @classmethod
    def identity(cls, n: int) -> "CrossedOp":
        return cls(n, {(0, 0, i): 1 for i in range(n)})

    @classmethod
    def x(cls, n: int, power: int = 1) -> "CrossedOp":
        return cls(n, {(power, 0, i): 1 for i in range(n)})

    @classmethod
    def dx(cls, n: int) -> "CrossedOp":
        return cls(n, {(0, 1, i): 1 for i in range(n)})

    @classmethod
    def idempotent(cls, n: int, i: int) -> "CrossedOp":
        return cls(n, {(0, 0, i): 1})

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def dx_order(self) -> int:
        return max((b for _, b, _ in self.terms), default=-1)

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = CrossedOp.identity(self.n).scale(other)
        if not isinstance(other, CrossedOp):
            return NotImplemented
        _same_n(self, other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            c = out.get(k, 0) + v
            if c:
                out[k] = c
            else:
                out.pop(k, None)
        return CrossedOp._raw(self.n, out)

    __radd__ = __add__

    def __neg__(self):
        return CrossedOp._raw(self.n, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = CrossedOp.identity(self.n).scale(other)
        if not isinstance(other, CrossedOp):
            return NotImplemented
        return self + (-other)

    def scale(self, c) -> "CrossedOp":
        c = Q(c)
        if not c:
            return CrossedOp._raw(self.n, {})
        return CrossedOp._raw(self.n, {k: v * c for k, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.scale(other)
        if not isinstance(other, CrossedOp):
            return NotImplemented
        return crossed_multiply(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k: int):
        out = CrossedOp.identity(self.n)
        for _ in range(k):
            out = crossed_multiply(out, self)
        return out

    def __eq__(self, other):
        if isinstance(other, CrossedOp):
            return self.n == other.n and self.terms == other.terms
        return NotImplemented

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    def __repr__(self):
        return f"CrossedOp(n={self.n}, {self})"

    def __str__(self):
        return self.render()

    def render(self) -> str:
        """Sum of ``q·x^a·∂x^b·e_i`` terms, highest derivative order first.

        When a monomial carries the same coefficient on every idempotent, the
        idempotents sum to 1 and the ``e_i`` suffix is dropped.
        """
        if not self.terms:
            return "0"
        grouped: dict[tuple[int, int], dict[int, Fraction]] = {}
        for (a, b, i), c in self.terms.items():
            grouped.setdefault((a, b), {})[i] = c
        chunks = []
        for (a, b) in sorted(grouped, key=lambda ab: (-ab[1], -ab[0])):
            by_i = grouped[(a, b)]
            if len(by_i) == self.n and len(set(by_i.values())) == 1:
                entries = [(next(iter(by_i.values())), None)]
            else:
                entries = sorted(((c, i) for i, c in by_i.items()), key=lambda t: t[1])
            for c, i in entries:
                factors = []
                if a:
                    factors.append("x" if a == 1 else f"x^{a}")
                if b:
                    factors.append("∂x" if b == 1 else f"∂x^{b}")
                if i is not None:
                    factors.append(f"e_{i}")
                mono = "·".join(factors)
                mag = abs(c)
                body = mono if (mono and mag == 1) else (f"{mag}·{mono}" if mono else str(mag))
                chunks.append(("-" if c < 0 else "+", body))
        out = ("-" if chunks[0][0] == "-" else "") + chunks[0][1]
        for sign, body in chunks[1:]:
            out += f" {sign} {body}"
        return out


def _same_n(a: CrossedOp, b: CrossedOp):
    if a.n != b.n:
        raise ValueError(f"group orders differ: {a.n} vs {b.n}")


def crossed_multiply(a: CrossedOp, b: CrossedOp) -> CrossedOp:
    """Normal-ordered product using ``e_i x = x e_(i+1)``, ``e_i d = d e_(i-1)``,
    ``e_i e_j = [i = j] e_i`` and ``d^b x^c = sum_t C(b,t) falling(c,t) x^(c-t) d^(b-t)``."""
    _same_n(a, b)
    n = a.n
    out: dict[Key, Fraction] = {}
    for (pa, da, ia), ca in a.terms.items():
        for (pb, db, ib), cb in b.terms.items():
            # e_ia x^pb d^db = x^pb d^db e_(ia + pb - db); then e_(.) e_ib
            if (ia + pb - db - ib) % n:
                continue
            base = ca * cb
            for t in range(da + 1):
                coeff = comb(da, t) * falling(pb, t)
                if not coeff:
                    continue
                key = (pa + pb - t, da - t + db, ib)
                out[key] = out.get(key, 0) + base * coeff
    return CrossedOp._raw(n, {k: v for k, v in out.items() if v})


def crossed_apply(op: CrossedOp, poly: Mapping[int, Fraction]) -> dict[int, Fraction]:
    """Act on a Laurent polynomial ``{exponent: coefficient}`` in x."""
    n = op.n
    out: dict[int, Fraction] = {}
    for (a, b, i), c in op.terms.items():
        for p, v in poly.items():
            if (p + i) % n:
                continue
            coeff = falling(p, b)
            if not coeff:
                continue
            e = p - b + a
            out[e] = out.get(e, 0) + c * v * coeff
    return {k: Q(v) for k, v in out.items() if v}


def dunkl_operator(params: CherednikParams) -> CrossedOp:
    """``T = d_x + (n/x) sum_i k_i e_i``."""
    n = params.n
    terms = {(0, 1, i): Fraction(1) for i in range(n)}
    for i in range(1, n):
        if params.k[i]:
            terms[(-1, 0, i)] = n * params.k[i]
    return CrossedOp(n, terms)


def restrict_spherical(op: CrossedOp, params: CherednikParams | int, degree_bound: int | None = None) -> ThetaOp:
    """Restriction to ``C[z]``, ``z = x^n``, reconstructed from samples ``s = 0..degree_bound``.

    Each ``x^(sn)`` must be sent to a multiple of a single ``x^(sn + pn)`` with
    ``p`` independent of s; the multipliers are interpolated into ``phi`` so
    that the result is ``z^p phi(theta)``.
    """
    n = params.n if isinstance(params, CherednikParams) else int(params)
    if n != op.n:
        raise ValueError("operator and parameters use different group orders")
    if degree_bound is None:
        degree_bound = max(op.dx_order, 0) + 2
    shift = None
    samples = []
    for s in range(degree_bound + 1):
        img = crossed_apply(op, {s * n: Fraction(1)})
        if not img:
            samples.append((s, Fraction(0)))
            continue
        if len(img) != 1:
            raise NotSpherical(f"x^{s * n} is sent to several powers: {sorted(img)}")
        (e, c), = img.items()
        if (e - s * n) % n:
            raise NotSpherical(f"x^{s * n} is sent to x^{e}, not a power of z")
        p = (e - s * n) // n
        if shift is None:
            shift = p
        elif p != shift:
            raise NotSpherical(f"degree shift changes from {shift} to {p} at s = {s}")
        samples.append((s, c))
    if shift is None:
        return ThetaOp()
    return theta_from_samples(shift, samples, degree_bound - 2 if degree_bound >= 2 else degree_bound)


def _e(n: int) -> CrossedOp:
    return CrossedOp.idempotent(n, 0)


def spherical_z(params: CherednikParams) -> CrossedOp:
    """``e x^n``."""
    return crossed_multiply(_e(params.n), CrossedOp.x(params.n, params.n))


def spherical_theta(params: CherednikParams) -> CrossedOp:
    """``e x T / n``."""
    n = params.n
    xt = crossed_multiply(CrossedOp.x(n), dunkl_operator(params)).scale(Fraction(1, n))
    return crossed_multiply(_e(n), xt)


def spherical_delta_element(params: CherednikParams) -> CrossedOp:
    """``c e (T/n)^n`` as a crossed-product element."""
    n = params.n
    t = dunkl_operator(params).scale(Fraction(1, n))
    return crossed_multiply(_e(n), t**n).scale(params.c)


def spherical_delta(params: CherednikParams) -> ThetaOp:
    """Restriction of ``c e (T/n)^n``; equals ``z^-1 b*(theta)``."""
    return restrict_spherical(spherical_delta_element(params), params, params.n + 2)


def gm_sequence(v: UniPoly, count: int) -> list[UniPoly]:
    """``g_0 = tau(v)/2`` and ``g_(m+1) = tau(v * (tau g_m)*)`` for m < count."""
    if v.degree < 2:
        raise ValueError("v must have degree at least 2")
    g = tau_difference(v) * Fraction(1, 2)
    out = [g]
    for _ in range(count):
        g = tau_difference(v * tau_difference(g).shift(-1))
        out.append(g)
    return out


@dataclass(frozen=True)
class IdentityCheck:
    name: str
    passed: bool
    lhs: str
    rhs: str


def _crossed_bracket(a: CrossedOp, b: CrossedOp) -> CrossedOp:
    return crossed_multiply(a, b) - crossed_multiply(b, a)


def identity_suite(params: CherednikParams) -> list[IdentityCheck]:
    """The five generator identities of the spherical subalgebra, checked by restriction.

    Every side is computed in the crossed product first and only then
    restricted to ``C[z]``; each restriction samples more points than the
    degree of the polynomial it recovers, so agreement is exact.
    """
    bstar = params.bstar()
    z_el = spherical_z(params)
    th_el = spherical_theta(params)
    d_el = spherical_delta_element(params)

    def res(op: CrossedOp) -> ThetaOp:
        return restrict_spherical(op, params, max(op.dx_order, 0) + 2)

    z, theta, delta = ThetaOp.z(), ThetaOp.theta(), ThetaOp.delta(bstar)
    pairs = [
        ("delta = z^-1 b*(theta)", res(d_el), delta),
        ("res(e x T / n) = theta", res(th_el), theta),
        ("[delta, z] = (tau b*)(theta)", res(_crossed_bracket(d_el, z_el)), ThetaOp({0: tau_difference(bstar)})),
        ("[theta, z] = z", res(_crossed_bracket(th_el, z_el)), z),
        ("[theta, delta] = -delta", res(_crossed_bracket(th_el, d_el)), -delta),
        ("z delta = b*(theta)", res(crossed_multiply(z_el, d_el)), ThetaOp({0: bstar})),
    ]
    return [IdentityCheck(name, lhs == rhs, lhs.render(), rhs.render()) for name, lhs, rhs in pairs]


def dunkl_power_closed_form(params: CherednikParams, j: int, s: int) -> Fraction:
    """``prod_{i=1..j} (n k_(i-1) + s n - i + 1)``, the coefficient of ``T^j x^(sn)``."""
    n = params.n
    out = Fraction(1)
    for i in range(1, j + 1):
        out *= n * params.k[(i - 1) % n] + s * n - i + 1
    return out
