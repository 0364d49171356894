"""Exact univariate and sparse multivariate polynomials over the rationals.

Everything here is built on :class:`fractions.Fraction`; no floating point
value ever enters a coefficient.  Univariate polynomials are written in the
variable ``s`` (they play the role of polynomials in the Euler operator), and
multivariate polynomials are sparse maps from exponent tuples to nonzero
coefficients.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Iterable, Mapping, Sequence

from .errors import DegreeExceeded, DimensionMismatch, NotDivisible

__all__ = [
    "Q",
    "UniPoly",
    "MultiPoly",
    "RationalRoots",
    "tau_difference",
    "shift_star",
    "interpolate",
    "rational_roots",
    "poly_gcd",
    "multi_exact_divide",
    "multi_factorial",
    "falling",
    "grlex_key",
]


def Q(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction.

    Floats are refused so that nothing inexact slips in through a call site.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    if isinstance(value, float):
        raise TypeError(f"refusing inexact float {value!r}; pass a Fraction or string")
    # numpy integers and other numbers.Rational implementations
    return Fraction(int(value)) if hasattr(value, "__index__") else Fraction(value)


def falling(x, k: int):
    """Falling factorial x (x-1) ... (x-k+1); works for negative or rational x."""
    out = 1
    for i in range(k):
        out *= x - i
    return out


def multi_factorial(index: Sequence[int]) -> int:
    """Product of the factorials of the entries of a multi-index."""
    return math.prod(math.factorial(e) for e in index)


def grlex_key(index: Sequence[int]):
    """Sort key for the graded lexicographic order (larger key = larger monomial)."""
    return (sum(index), tuple(index))


# ---------------------------------------------------------------------------
# univariate


class UniPoly:
    """Immutable polynomial in ``s`` with Fraction coefficients, lowest degree first."""

    __slots__ = ("coeffs", "_hash")

    def __init__(self, coeffs: Iterable = ()):
        cs = [Q(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)
        self._hash = None

    # construction helpers
    @classmethod
    def constant(cls, c) -> "UniPoly":
        return cls([c])

    @classmethod
    def s(cls) -> "UniPoly":
        return cls([0, 1])

    @classmethod
    def from_roots(cls, roots: Iterable, lead=1) -> "UniPoly":
        """``lead * prod (s - r)`` over the given roots."""
        out = cls([lead])
        for r in roots:
            out = out * cls([-Q(r), 1])
        return out

    @classmethod
    def from_linear_shifts(cls, shifts: Iterable, lead=1) -> "UniPoly":
        """``lead * prod (s + a)``, the form in which b-functions are tabulated."""
        return cls.from_roots((-Q(a) for a in shifts), lead)

    # basic data
    @property
    def degree(self) -> int:
        """Degree; the zero polynomial has degree -1."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lead(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def monic(self) -> "UniPoly":
        if self.is_zero():
            return self
        lc = self.lead
        return UniPoly(c / lc for c in self.coeffs)

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc if self.coeffs else Fraction(0)

    # arithmetic
    def __add__(self, other):
        other = _as_unipoly(other)
        if other is NotImplemented:
            return other
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return UniPoly(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __neg__(self):
        return UniPoly(-c for c in self.coeffs)

    def __sub__(self, other):
        other = _as_unipoly(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _as_unipoly(other)
        if other is NotImplemented:
            return other
        if self.is_zero() or other.is_zero():
            return UniPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return UniPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = UniPoly([1])
        for _ in range(k):
            out = out * self
        return out

    def divmod(self, other: "UniPoly") -> tuple["UniPoly", "UniPoly"]:
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        rem = list(self.coeffs)
        dq = other.degree
        lc = other.lead
        quo = [Fraction(0)] * max(len(rem) - dq, 0)
        for k in range(len(rem) - 1, dq - 1, -1):
            c = rem[k] / lc
            if c:
                quo[k - dq] = c
                for j, oc in enumerate(other.coeffs):
                    rem[k - dq + j] -= c * oc
        return UniPoly(quo), UniPoly(rem[:dq] if dq > 0 else [])

    def shift(self, a) -> "UniPoly":
        """The polynomial ``s -> p(s + a)``."""
        a = Q(a)
        out = UniPoly()
        lin = UniPoly([a, 1])
        for c in reversed(self.coeffs):
            out = out * lin + c
        return out

    def reflect(self) -> "UniPoly":
        """The polynomial ``s -> p(-s)``."""
        return UniPoly(c if i % 2 == 0 else -c for i, c in enumerate(self.coeffs))

    def compose_linear(self, scale, offset=0) -> "UniPoly":
        """The polynomial ``s -> p(scale*s + offset)``."""
        lin = UniPoly([offset, scale])
        out = UniPoly()
        for c in reversed(self.coeffs):
            out = out * lin + c
        return out

    def __eq__(self, other):
        if isinstance(other, UniPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == UniPoly([other]).coeffs
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(("UniPoly", self.coeffs))
        return self._hash

    def __repr__(self):
        return f"UniPoly({self})"

    def __str__(self):
        return self.render("s")

    def render(self, var: str = "s") -> str:
        if self.is_zero():
            return "0"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if k == 0:
                body = str(mag)
            else:
                mono = var if k == 1 else f"{var}^{k}"
                body = mono if mag == 1 else f"{mag}*{mono}"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out


def _as_unipoly(x):
    if isinstance(x, UniPoly):
        return x
    if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
        return UniPoly([x])
    return NotImplemented


def tau_difference(p: UniPoly) -> UniPoly:
    """Forward difference ``p(s+1) - p(s)``."""
    return p.shift(1) - p


def shift_star(p: UniPoly) -> UniPoly:
    """Backward shift ``p(s-1)``."""
    return p.shift(-1)


def interpolate(points: Sequence[tuple], max_degree: int) -> UniPoly:
    """Interpolate through the first ``max_degree + 1`` points; use the rest as checks.

    Raises DegreeExceeded when a surplus point disagrees with the interpolant.
    """
    pts = [(Q(x), Q(y)) for x, y in points]
    need = max_degree + 1
    if len(pts) < need:
        raise ValueError(f"need at least {need} points, got {len(pts)}")
    xs = [x for x, _ in pts]
    if len(set(xs)) != len(xs):
        raise ValueError("abscissae must be distinct")
    base = pts[:need]
    # Newton divided differences
    coef = [y for _, y in base]
    for j in range(1, need):
        for i in range(need - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (base[i][0] - base[i - j][0])
    out = UniPoly([coef[-1]])
    for i in range(need - 2, -1, -1):
        out = out * UniPoly([-base[i][0], 1]) + coef[i]
    for x, y in pts[need:]:
        if out(x) != y:
            raise DegreeExceeded(
                f"sample ({x}, {y}) inconsistent with degree <= {max_degree} interpolant {out}"
            )
    return out


def poly_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    """Monic gcd over Q (zero if both inputs vanish)."""
    while not b.is_zero():
        a, b = b, a.divmod(b)[1]
    return a.monic()


def _derivative(p: UniPoly) -> UniPoly:
    return UniPoly(k * c for k, c in enumerate(p.coeffs) if k)


def _divisors(n: int) -> list[int]:
    n = abs(n)
    if n == 0:
        return [0]
    primes = {}
    m = n
    d = 2
    while d * d <= m:
        while m % d == 0:
            primes[d] = primes.get(d, 0) + 1
            m //= d
        d += 1 if d == 2 else 2
    if m > 1:
        primes[m] = primes.get(m, 0) + 1
    divs = [1]
    for p, e in primes.items():
        divs = [x * p**k for x in divs for k in range(e + 1)]
    return sorted(divs)


@dataclass(frozen=True)
class RationalRoots:
    """Rational roots with multiplicity plus the part of p left after deflation."""

    roots: tuple[Fraction, ...]
    residual: UniPoly

    @property
    def split(self) -> bool:
        """True when the roots account for the full degree."""
        return self.residual.degree <= 0


def _integer_primitive(p: UniPoly) -> list[int]:
    den = reduce(math.lcm, (c.denominator for c in p.coeffs), 1)
    ints = [int(c * den) for c in p.coeffs]
    g = reduce(math.gcd, ints, 0)
    return [c // g for c in ints]


def rational_roots(p: UniPoly) -> RationalRoots:
    """All rational roots of a nonzero polynomial, with multiplicity, sorted ascending.

    Candidates come from the rational root theorem applied to the square-free
    part; multiplicities come from repeated exact deflation of p itself.
    """
    if p.is_zero():
        raise ValueError("the zero polynomial has no finite root multiset")
    rest = p
    found: list[Fraction] = []
    while rest.degree >= 1 and rest.coeffs[0] == 0:
        found.append(Fraction(0))
        rest = UniPoly(rest.coeffs[1:])
    if rest.degree >= 1:
        sqfree = rest.divmod(poly_gcd(rest, _derivative(rest)))[0]
        for r in _square_free_rational_roots(sqfree):
            lin = UniPoly([-r, 1])
            while rest.degree >= 1:
                q, rem = rest.divmod(lin)
                if not rem.is_zero():
                    break
                found.append(r)
                rest = q
    return RationalRoots(tuple(sorted(found)), rest)


def _square_free_rational_roots(p: UniPoly) -> list[Fraction]:
    out = []
    work = p
    while work.degree >= 1:
        ints = _integer_primitive(work)
        a0, an = ints[0], ints[-1]
        if a0 == 0:
            out.append(Fraction(0))
            work = UniPoly(work.coeffs[1:])
            continue
        p1 = sum(ints)
        pm1 = sum(c if i % 2 == 0 else -c for i, c in enumerate(ints))
        # Cauchy bound on |root|
        bound = 1 + max(Fraction(abs(c), abs(an)) for c in ints[:-1])
        hit = None
        for v in _divisors(an):
            for u in _divisors(a0):
                if math.gcd(u, v) != 1 or Fraction(u, v) > bound:
                    continue
                for cand in (u, -u):
                    # classical filters: (v - u) | P(1), (v + u) | P(-1)
                    if v - cand != 0 and p1 % (v - cand) != 0:
                        continue
                    if v + cand != 0 and pm1 % (v + cand) != 0:
                        continue
                    r = Fraction(cand, v)
                    if work(r) == 0:
                        hit = r
                        break
                if hit is not None:
                    break
            if hit is not None:
                break
        if hit is None:
            break
        out.append(hit)
        work = work.divmod(UniPoly([-hit, 1]))[0]
    return out


# ---------------------------------------------------------------------------
# multivariate


class MultiPoly:
    """Sparse polynomial in ``nvars`` variables with Fraction coefficients.

    ``terms`` maps exponent tuples to nonzero coefficients.  Instances are
    treated as immutable; arithmetic returns new objects.
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping | None = None):
        self.nvars = int(nvars)
        clean: dict[tuple[int, ...], Fraction] = {}
        for k, v in (terms or {}).items():
            k = tuple(int(e) for e in k)
            if len(k) != self.nvars:
                raise DimensionMismatch(f"exponent {k} has length {len(k)}, expected {self.nvars}")
            if min(k, default=0) < 0:
                raise ValueError(f"negative exponent in {k}")
            v = Q(v)
            if v:
                clean[k] = clean.get(k, Fraction(0)) + v
                if not clean[k]:
                    del clean[k]
        self.terms = clean

    @classmethod
    def _raw(cls, nvars: int, terms: dict) -> "MultiPoly":
        obj = cls.__new__(cls)
        obj.nvars = nvars
        obj.terms = terms
        return obj

    @classmethod
    def constant(cls, nvars: int, c=1) -> "MultiPoly":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def variable(cls, nvars: int, i: int) -> "MultiPoly":
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): 1})

    @classmethod
    def monomial(cls, exps: Sequence[int], c=1) -> "MultiPoly":
        return cls(len(exps), {tuple(exps): c})

    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(self.sorted_terms())

    def sorted_terms(self) -> list[tuple[tuple[int, ...], Fraction]]:
        """Terms in decreasing graded lexicographic order."""
        return sorted(self.terms.items(), key=lambda kv: grlex_key(kv[0]), reverse=True)

    def leading_term(self):
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        k = max(self.terms, key=grlex_key)
        return k, self.terms[k]

    @property
    def total_degree(self) -> int:
        return max((sum(k) for k in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(k) for k in self.terms}) <= 1

    def coefficient(self, exps) -> Fraction:
        return self.terms.get(tuple(exps), Fraction(0))

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.terms.values())

    def _check(self, other: "MultiPoly"):
        if self.nvars != other.nvars:
            raise DimensionMismatch(f"{self.nvars} vs {other.nvars} variables")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.constant(self.nvars, other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        self._check(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            c = out.get(k, 0) + v
            if c:
                out[k] = c
            else:
                out.pop(k, None)
        return MultiPoly._raw(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._raw(self.nvars, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.constant(self.nvars, other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "MultiPoly":
        c = Q(c)
        if not c:
            return MultiPoly._raw(self.nvars, {})
        return MultiPoly._raw(self.nvars, {k: v * c for k, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.scale(other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        self._check(other)
        out: dict[tuple[int, ...], Fraction] = {}
        for ka, va in self.terms.items():
            for kb, vb in other.terms.items():
                k = tuple(x + y for x, y in zip(ka, kb))
                out[k] = out.get(k, 0) + va * vb
        return MultiPoly._raw(self.nvars, {k: v for k, v in out.items() if v})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = MultiPoly.constant(self.nvars)
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def __call__(self, point: Sequence):
        if len(point) != self.nvars:
            raise DimensionMismatch("point has the wrong length")
        acc = Fraction(0)
        for k, v in self.terms.items():
            t = v
            for x, e in zip(point, k):
                if e:
                    t *= Q(x) ** e
            acc += t
        return acc

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.nvars == other.nvars and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == MultiPoly.constant(self.nvars, other)
        return NotImplemented

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __repr__(self):
        return f"MultiPoly({self.nvars}, {self})"

    def __str__(self):
        return self.render()

    def render(self, names: Sequence[str] | None = None) -> str:
        if not self.terms:
            return "0"
        names = names or [f"z{i + 1}" for i in range(self.nvars)]
        chunks = []
        for k, c in self.sorted_terms():
            mono = "*".join(
                names[i] if e == 1 else f"{names[i]}^{e}" for i, e in enumerate(k) if e
            )
            mag = abs(c)
            body = mono if (mono and mag == 1) else (f"{mag}*{mono}" if mono else str(mag))
            chunks.append(("-" if c < 0 else "+", body))
        out = ("-" if chunks[0][0] == "-" else "") + chunks[0][1]
        for sign, body in chunks[1:]:
            out += f" {sign} {body}"
        return out


def multi_exact_divide(num: MultiPoly, den: MultiPoly) -> MultiPoly:
    """Exact quotient ``num / den``; raises NotDivisible on a nonzero remainder."""
    if den.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    num._check(den)
    lead_k, lead_c = den.leading_term()
    rem = dict(num.terms)
    quo: dict[tuple[int, ...], Fraction] = {}
    while rem:
        k = max(rem, key=grlex_key)
        shift = tuple(a - b for a, b in zip(k, lead_k))
        if min(shift) < 0:
            raise NotDivisible(f"leading monomial {k} not divisible by {lead_k}")
        c = rem[k] / lead_c
        quo[shift] = c
        for kd, vd in den.terms.items():
            kk = tuple(a + b for a, b in zip(shift, kd))
            v = rem.get(kk, 0) - c * vd
            if v:
                rem[kk] = v
            else:
                rem.pop(kk, None)
    return MultiPoly._raw(num.nvars, quo)
