"""Normal-ordered differential operators on N variables (the Weyl algebra).

A :class:`WeylOp` is a finite sum of terms ``c * z^a * d^b`` with every
coordinate multiplication written to the left of every derivative.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product as iproduct
from math import comb
from typing import Mapping, Sequence

from .errors import DimensionMismatch
from .poly import MultiPoly, Q, UniPoly, falling, grlex_key

__all__ = [
    "WeylOp",
    "weyl_multiply",
    "weyl_apply",
    "commutator",
    "euler_operator",
    "dual_polynomial",
    "constant_coefficient_operator",
    "polynomial_in_operator",
]

Index = tuple[int, ...]


class WeylOp:
    """Element of the Weyl algebra in normal form.

    ``terms`` maps ``(poly_part, deriv_part)`` pairs of multi-indices to
    nonzero Fractions.
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping | None = None):
        self.nvars = int(nvars)
        clean: dict[tuple[Index, Index], Fraction] = {}
        for (a, b), c in (terms or {}).items():
            a, b = tuple(int(x) for x in a), tuple(int(x) for x in b)
            if len(a) != self.nvars or len(b) != self.nvars:
                raise DimensionMismatch(f"term {(a, b)} does not have {self.nvars} entries")
            c = Q(c)
            if c:
                v = clean.get((a, b), Fraction(0)) + c
                if v:
                    clean[(a, b)] = v
                else:
                    clean.pop((a, b), None)
        self.terms = clean

    @classmethod
    def _raw(cls, nvars, terms):
        obj = cls.__new__(cls)
        obj.nvars = nvars
        obj.terms = terms
        return obj

    @classmethod
    def identity(cls, nvars: int) -> "WeylOp":
        zero = (0,) * nvars
        return cls(nvars, {(zero, zero): 1})

    @classmethod
    def coordinate(cls, nvars: int, i: int) -> "WeylOp":
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {(tuple(e), (0,) * nvars): 1})

    @classmethod
    def partial(cls, nvars: int, i: int) -> "WeylOp":
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {((0,) * nvars, tuple(e)): 1})

    @classmethod
    def multiplication(cls, p: MultiPoly) -> "WeylOp":
        """The operator 'multiply by p'."""
        zero = (0,) * p.nvars
        return cls._raw(p.nvars, {(k, zero): v for k, v in p.terms.items()})

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def order(self) -> int:
        return max((sum(b) for _, b in self.terms), default=-1)

    @property
    def z_degree(self) -> int:
        return max((sum(a) for a, _ in self.terms), default=-1)

    def homogeneity(self) -> set[int]:
        """The set of ``|a| - |b|`` values occurring among the terms."""
        return {sum(a) - sum(b) for a, b in self.terms}

    def _check(self, other):
        if self.nvars != other.nvars:
            raise DimensionMismatch(f"{self.nvars} vs {other.nvars} variables")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = WeylOp.identity(self.nvars).scale(other)
        if not isinstance(other, WeylOp):
            return NotImplemented
        self._check(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            c = out.get(k, 0) + v
            if c:
                out[k] = c
            else:
                out.pop(k, None)
        return WeylOp._raw(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return WeylOp._raw(self.nvars, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = WeylOp.identity(self.nvars).scale(other)
        if not isinstance(other, WeylOp):
            return NotImplemented
        return self + (-other)

    def scale(self, c) -> "WeylOp":
        c = Q(c)
        if not c:
            return WeylOp._raw(self.nvars, {})
        return WeylOp._raw(self.nvars, {k: v * c for k, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.scale(other)
        if not isinstance(other, WeylOp):
            return NotImplemented
        return weyl_multiply(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k: int):
        out = WeylOp.identity(self.nvars)
        for _ in range(k):
            out = weyl_multiply(out, self)
        return out

    def __call__(self, p: MultiPoly) -> MultiPoly:
        return weyl_apply(self, p)

    def __eq__(self, other):
        if isinstance(other, WeylOp):
            return self.nvars == other.nvars and self.terms == other.terms
        return NotImplemented

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def sorted_terms(self):
        return sorted(
            self.terms.items(),
            key=lambda kv: (sum(kv[0][1]), grlex_key(kv[0][1]), grlex_key(kv[0][0])),
            reverse=True,
        )

    def __repr__(self):
        return f"WeylOp({self.nvars}, {self})"

    def __str__(self):
        return self.render()

    def render(self, names: Sequence[str] | None = None) -> str:
        if not self.terms:
            return "0"
        if names is None:
            names = ["z"] if self.nvars == 1 else [f"z{i + 1}" for i in range(self.nvars)]
        chunks = []
        for (a, b), c in self.sorted_terms():
            factors = [n if e == 1 else f"{n}^{e}" for n, e in zip(names, a) if e]
            factors += [f"d{n}" if e == 1 else f"d{n}^{e}" for n, e in zip(names, b) if e]
            mono = "*".join(factors)
            mag = abs(c)
            body = mono if (mono and mag == 1) else (f"{mag}*{mono}" if mono else str(mag))
            chunks.append(("-" if c < 0 else "+", body))
        out = ("-" if chunks[0][0] == "-" else "") + chunks[0][1]
        for sign, body in chunks[1:]:
            out += f" {sign} {body}"
        return out


def _reorder(b: Index, c: Index):
    """Expand ``d^b z^c`` into normal-ordered ``(coeff, z-part, d-part)`` triples."""
    per_var = []
    for bi, ci in zip(b, c):
        opts = []
        for k in range(min(bi, ci) + 1):
            opts.append((comb(bi, k) * falling(ci, k), ci - k, bi - k))
        per_var.append(opts)
    for choice in iproduct(*per_var):
        coeff = 1
        for x, _, _ in choice:
            coeff *= x
        yield coeff, tuple(x[1] for x in choice), tuple(x[2] for x in choice)


def weyl_multiply(a: WeylOp, b: WeylOp) -> WeylOp:
    """Normal-ordered product ``a * b``."""
    a._check(b)
    out: dict[tuple[Index, Index], Fraction] = {}
    for (pa, da), ca in a.terms.items():
        for (pb, db), cb in b.terms.items():
            base = ca * cb
            for coeff, zc, dc in _reorder(da, pb):
                key = (
                    tuple(x + y for x, y in zip(pa, zc)),
                    tuple(x + y for x, y in zip(dc, db)),
                )
                out[key] = out.get(key, 0) + base * coeff
    return WeylOp._raw(a.nvars, {k: v for k, v in out.items() if v})


def commutator(a: WeylOp, b: WeylOp) -> WeylOp:
    """``a b - b a`` in normal form."""
    return weyl_multiply(a, b) - weyl_multiply(b, a)


def weyl_apply(d: WeylOp, p: MultiPoly) -> MultiPoly:
    """Apply a differential operator to a polynomial (exact, dictionary based)."""
    if d.nvars != p.nvars:
        raise DimensionMismatch(f"operator on {d.nvars} variables applied to polynomial in {p.nvars}")
    out: dict[Index, Fraction] = {}
    for (a, b), c in d.terms.items():
        for k, v in p.terms.items():
            coeff = 1
            for e, bi in zip(k, b):
                if bi:
                    if e < bi:
                        coeff = 0
                        break
                    coeff *= falling(e, bi)
            if not coeff:
                continue
            kk = tuple(e - bi + ai for e, ai, bi in zip(k, a, b))
            out[kk] = out.get(kk, 0) + c * v * coeff
    return MultiPoly._raw(p.nvars, {k: v for k, v in out.items() if v})


def euler_operator(nvars: int) -> WeylOp:
    """The Euler field ``sum_i z_i d_i``."""
    if nvars < 1:
        raise ValueError("need at least one variable")
    terms = {}
    for i in range(nvars):
        e = [0] * nvars
        e[i] = 1
        terms[(tuple(e), tuple(e))] = Fraction(1)
    return WeylOp._raw(nvars, terms)


def constant_coefficient_operator(p: MultiPoly) -> WeylOp:
    """Read a polynomial in the dual basis as the operator ``p(d)``."""
    zero = (0,) * p.nvars
    return WeylOp._raw(p.nvars, {(zero, k): v for k, v in p.terms.items()})


def dual_polynomial(f: MultiPoly, metric: Sequence | None = None) -> MultiPoly:
    """Coefficients of the dual invariant ``f*`` in the dual coordinate basis.

    With rational coefficients, complex conjugation is the identity, so in an
    orthonormal coordinate system ``f*`` carries exactly the coefficients of
    ``f``.  ``metric`` gives the diagonal of the invariant Hermitian form in
    the coordinates actually used (``kappa(e_i, e_i) = metric[i]``); the dual
    coefficient of ``z^i`` is then ``a_i / metric^i``, which stays rational
    even when the orthonormal rescaling would need square roots.
    """
    if metric is None:
        return MultiPoly._raw(f.nvars, dict(f.terms))
    w = [Q(x) for x in metric]
    if len(w) != f.nvars:
        raise DimensionMismatch("metric length differs from the variable count")
    if any(x <= 0 for x in w):
        raise ValueError("metric weights must be positive")
    out = {}
    for k, v in f.terms.items():
        scale = Fraction(1)
        for wi, e in zip(w, k):
            if e:
                scale *= wi**e
        out[k] = v / scale
    return MultiPoly._raw(f.nvars, out)


def polynomial_in_operator(p: UniPoly, op: WeylOp) -> WeylOp:
    """Evaluate a univariate polynomial at an operator (Horner, normal ordered)."""
    out = WeylOp(op.nvars)
    for c in reversed(p.coeffs):
        out = weyl_multiply(out, op) + c
    return out
