"""One-variable operators in graded form ``sum_p z^p phi_p(theta)``.

``theta = z d/dz``.  A component ``(p, phi)`` sends ``z^alpha`` to
``phi(alpha) z^(alpha+p)`` for any rational ``alpha``, which makes
composition and fractional-power action one-line rules.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import Mapping, Sequence

from .errors import NotPolynomial
from .poly import Q, UniPoly, interpolate, tau_difference
from .weyl import WeylOp

__all__ = [
    "ThetaOp",
    "theta_compose",
    "theta_to_differential",
    "theta_from_samples",
    "theta_apply_fractional",
    "theta_from_differential",
]


class ThetaOp:
    """Graded operator: ``components[p]`` is the polynomial multiplying ``z^p``."""

    __slots__ = ("components",)

    def __init__(self, components: Mapping[int, UniPoly] | None = None):
        clean = {}
        for p, phi in (components or {}).items():
            phi = phi if isinstance(phi, UniPoly) else UniPoly(phi)
            if not phi.is_zero():
                clean[int(p)] = phi
        self.components: dict[int, UniPoly] = dict(sorted(clean.items()))

    # the three generators and friends
    @classmethod
    def z(cls) -> "ThetaOp":
        return cls({1: UniPoly([1])})

    @classmethod
    def theta(cls) -> "ThetaOp":
        return cls({0: UniPoly.s()})

    @classmethod
    def scalar(cls, c) -> "ThetaOp":
        return cls({0: UniPoly([c])})

    @classmethod
    def single(cls, shift: int, phi: UniPoly) -> "ThetaOp":
        return cls({shift: phi})

    @classmethod
    def delta(cls, bstar: UniPoly) -> "ThetaOp":
        """``z^-1 b*(theta)``."""
        return cls({-1: bstar})

    def is_zero(self) -> bool:
        return not self.components

    @property
    def degree(self) -> int:
        """Largest degree among the component polynomials (the differential order)."""
        return max((phi.degree for phi in self.components.values()), default=-1)

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = ThetaOp.scalar(other)
        if not isinstance(other, ThetaOp):
            return NotImplemented
        out = dict(self.components)
        for p, phi in other.components.items():
            out[p] = out.get(p, UniPoly()) + phi
        return ThetaOp(out)

    __radd__ = __add__

    def __neg__(self):
        return ThetaOp({p: -phi for p, phi in self.components.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = ThetaOp.scalar(other)
        if not isinstance(other, ThetaOp):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return ThetaOp({p: phi * other for p, phi in self.components.items()})
        if not isinstance(other, ThetaOp):
            return NotImplemented
        return theta_compose(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self * other
        return NotImplemented

    def __pow__(self, k: int):
        out = ThetaOp.scalar(1)
        for _ in range(k):
            out = theta_compose(out, self)
        return out

    def __eq__(self, other):
        if isinstance(other, ThetaOp):
            return self.components == other.components
        return NotImplemented

    def __hash__(self):
        return hash(tuple(self.components.items()))

    def act(self, alpha, coeff=1) -> dict[Fraction, Fraction]:
        """Image of ``coeff * z^alpha`` as ``{exponent: coefficient}``."""
        alpha = Q(alpha)
        out = {}
        for p, phi in self.components.items():
            c = phi(alpha) * coeff
            if c:
                out[alpha + p] = out.get(alpha + p, 0) + c
        return {k: v for k, v in out.items() if v}

    def act_on(self, vec: Mapping) -> dict[Fraction, Fraction]:
        """Apply to a finite combination ``{exponent: coefficient}`` of powers of z."""
        out: dict[Fraction, Fraction] = {}
        for alpha, c in vec.items():
            for e, v in self.act(alpha, c).items():
                out[e] = out.get(e, 0) + v
        return {k: v for k, v in out.items() if v}

    def __repr__(self):
        return f"ThetaOp({self})"

    def __str__(self):
        return self.render()

    def render(self) -> str:
        """Text of the form ``z^p*(phi(theta)) + ...`` with exact coefficients."""
        if not self.components:
            return "0"
        parts = []
        for p, phi in self.components.items():
            body = phi.render("θ")
            if p == 0:
                parts.append(body if phi.degree <= 0 else f"({body})")
            else:
                zpart = "z" if p == 1 else f"z^{p}"
                parts.append(zpart if phi == UniPoly([1]) else f"{zpart}·({body})")
        return " + ".join(parts)


def theta_compose(a: ThetaOp, b: ThetaOp) -> ThetaOp:
    """``(z^p phi(theta)) (z^q psi(theta)) = z^(p+q) phi(theta+q) psi(theta)``."""
    out: dict[int, UniPoly] = {}
    for p, phi in a.components.items():
        for q, psi in b.components.items():
            out[p + q] = out.get(p + q, UniPoly()) + phi.shift(q) * psi
    return ThetaOp(out)


def theta_to_differential(a: ThetaOp) -> WeylOp:
    """Rewrite as ``sum_j q_j(z) d^j`` with ``q_j = (tau^j phi)(0)/j! z^(j+p)``.

    Raises NotPolynomial if some component would need a negative power of z.
    """
    terms: dict = {}
    for p, phi in a.components.items():
        diff = phi
        for j in range(phi.degree + 1):
            val = diff(0)
            if val:
                if p + j < 0:
                    raise NotPolynomial(
                        f"component z^{p}·({phi}) has (tau^{j} phi)(0) = {val} != 0 with p + j < 0"
                    )
                key = ((p + j,), (j,))
                terms[key] = terms.get(key, 0) + val / factorial(j)
            diff = tau_difference(diff)
    return WeylOp(1, terms)


def theta_from_differential(d: WeylOp) -> ThetaOp:
    """Inverse direction: ``z^a d^b`` is ``z^(a-b) * falling(theta, b)``."""
    if d.nvars != 1:
        raise ValueError("only one-variable operators have a theta form here")
    out: dict[int, UniPoly] = {}
    for ((a,), (b,)), c in d.terms.items():
        fall = UniPoly([c])
        for i in range(b):
            fall = fall * UniPoly([-i, 1])
        out[a - b] = out.get(a - b, UniPoly()) + fall
    return ThetaOp(out)


def theta_from_samples(shift: int, values: Sequence[tuple], max_degree: int) -> ThetaOp:
    """Rebuild the single component ``z^shift phi(theta)`` from ``phi(m) = c_m`` samples."""
    phi = interpolate([(Q(m), Q(c)) for m, c in values], max_degree)
    return ThetaOp({shift: phi})


def theta_apply_fractional(a: ThetaOp, alpha) -> list[tuple[Fraction, Fraction]]:
    """Image of ``z^alpha`` (alpha rational) as sorted ``(exponent, coefficient)`` pairs."""
    return sorted(a.act(alpha).items())


def bracket(a: ThetaOp, b: ThetaOp) -> ThetaOp:
    return theta_compose(a, b) - theta_compose(b, a)

