"""Sampling ``D(f^m)`` against powers of f, exactly.

Two interchangeable routes share one interface:

* ``exact`` keeps everything as dictionaries of Fractions;
* ``packed`` scales to integers and runs the packed multi-modular kernels,
  where every zero test and coefficient read is certified by a coefficient
  bound (see :mod:`radcomp.packed`).

``auto`` picks ``packed`` whenever the monomial keys fit in int64.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Callable

from .errors import DimensionMismatch, DimensionTooLarge, InsufficientModuli, NonScalarQuotient
from .packed import PRIMES, PackedRing, integral_scale, integral_scale_op, primes_for_bits
from .poly import MultiPoly, UniPoly
from .weyl import WeylOp, weyl_apply

__all__ = ["PowerSampler", "BACKENDS"]

BACKENDS = ("auto", "exact", "packed")


def _exact_ratio(num: MultiPoly, den: MultiPoly) -> Fraction | None:
    if den.is_zero():
        raise ZeroDivisionError("denominator polynomial is zero")
    lead, lc = den.leading_term()
    r = num.coefficient(lead) / lc
    return r if num == den.scale(r) else None


class PowerSampler:
    """Compute ratios ``D(f^m) / f^(m+k)`` and related identities for one f.

    ``max_power`` bounds the highest power of f that will be formed, so the
    packed route can fix its radix up front.  With ``max_terms`` set, any
    intermediate polynomial with more terms raises DimensionTooLarge.
    """

    def __init__(self, f: MultiPoly, max_power: int, backend: str = "auto", kernel: str | None = None,
                 max_terms: int | None = None):
        if backend not in BACKENDS:
            raise ValueError(f"backend must be one of {BACKENDS}")
        if f.is_zero():
            raise ValueError("f must be nonzero")
        self.f = f
        self.max_power = max_power
        self.kernel = kernel
        self.max_terms = max_terms
        fmax = max(max(k) for k in f.terms)
        self._max_exp = fmax * max_power
        if backend == "auto":
            backend = "packed" if PackedRing.fits(f.nvars, self._max_exp) else "exact"
        if backend == "packed" and not PackedRing.fits(f.nvars, self._max_exp):
            raise ValueError("exponents too large for packed keys; use the exact backend")
        self.backend = backend
        self._L, self._fint = integral_scale(f)
        self._headroom = 0
        self._exact_cache: dict[int, MultiPoly] = {}
        self._n_primes = None
        self._ring = None
        self._powers: dict[int, object] = {}

    # -- bookkeeping ---------------------------------------------------------
    def _power_bits(self) -> float:
        l1 = sum(abs(int(v)) for v in self._fint.terms.values())
        return math.log2(max(l1, 2))

    def _setup(self, extra_bits: float):
        """(Re)build the packed ring with enough primes for the coming work."""
        bits = self._power_bits() * self.max_power + extra_bits + 2
        k = primes_for_bits(bits)
        if self._n_primes is not None and k <= self._n_primes:
            return
        self._n_primes = k
        self._rebuild()

    def _rebuild(self):
        self._ring = PackedRing(self.f.nvars, self._max_exp + self._headroom + 1, self._n_primes, self.kernel)
        self._powers = {}

    def _make_room(self, op: WeylOp) -> bool:
        """Widen the radix so ``op`` cannot push exponents past it; False if that no longer fits."""
        # z^a d^b sends z^e to a multiple of z^(e + a - b) or to zero
        need = max((max((x - y for x, y in zip(a, b)), default=0) for a, b in op.terms), default=0)
        need = max(need, 0)
        if need <= self._headroom:
            return True
        if not PackedRing.fits(self.f.nvars, self._max_exp + need):
            return False
        self._headroom = need
        if self._ring is not None:
            self._rebuild()
        return True

    def _bump(self):
        k = (self._n_primes or 1) + 1
        if k > len(PRIMES):
            raise InsufficientModuli("ran out of primes for exact certification")
        self._n_primes = k
        self._rebuild()

    def power(self, m: int):
        """``f^m`` (exact) or ``(L f)^m`` (packed), cached incrementally."""
        if m > self.max_power:
            raise ValueError(f"power {m} exceeds the declared maximum {self.max_power}")
        if self.backend == "exact":
            return self._exact_power(m)
        if m in self._powers:
            return self._powers[m]
        if self._ring is None:
            self._setup(0)
        ring = self._ring
        lower = max((j for j in self._powers if j < m), default=None)
        if lower is None:
            val, lower = ring.constant(1), 0
        else:
            val = self._powers[lower]
        fp = ring.from_multipoly(self._fint)
        for _ in range(m - lower):
            val = self._guard(ring.mul(fp, val))
        # keep the most recent powers only; callers walk m upward
        for j in [j for j in self._powers if j < m - 2]:
            del self._powers[j]
        self._powers[m] = val
        return val

    def _exact_power(self, m: int) -> MultiPoly:
        cache = self._exact_cache
        if m not in cache:
            lower = max((j for j in cache if j < m), default=0)
            val = cache.get(lower, MultiPoly.constant(self.f.nvars, 1))
            for _ in range(m - lower):
                val = self._guard(val * self.f)
            cache[m] = val
        return cache[m]

    def _guard(self, poly):
        size = len(poly.terms) if isinstance(poly, MultiPoly) else len(poly.keys)
        if self.max_terms is not None and size > self.max_terms:
            raise DimensionTooLarge(f"intermediate polynomial has {size} terms, cap is {self.max_terms}")
        return poly

    def _op_bits(self, op: WeylOp) -> float:
        l1 = sum(abs(c) for c in op.terms.values()) or 1
        L = math.lcm(*[c.denominator for c in op.terms.values()]) if op.terms else 1
        return math.log2(float(l1 * L) + 1) + max(op.order, 0) * math.log2(max(self._max_exp, 2))

    def _retrying(self, extra_bits: float, body: Callable):
        if self.backend == "exact":
            return body()
        self._setup(extra_bits)
        while True:
            try:
                return body()
            except InsufficientModuli:
                self._bump()

    # -- public sampling -----------------------------------------------------
    def ratios(self, op: WeylOp, shift: int, ms) -> list[tuple[int, Fraction]]:
        """``[(m, r_m)]`` with ``op(f^m) = r_m f^(m+shift)``; raises NonScalarQuotient otherwise."""
        if op.nvars != self.f.nvars:
            raise DimensionMismatch(f"operator on {op.nvars} variables, f has {self.f.nvars}")
        ms = list(ms)
        if any(m + shift < 0 for m in ms):
            raise ValueError("every sampled power m + shift must be nonnegative")

        exact = self.backend == "exact" or not self._make_room(op)

        def body():
            if exact:
                out = []
                for m in ms:
                    r = _exact_ratio(self._guard(weyl_apply(op, self._exact_power(m))), self._exact_power(m + shift))
                    if r is None:
                        raise NonScalarQuotient(f"D(f^{m}) is not a multiple of f^{m + shift}")
                    out.append((m, r))
                return out
            ring = self._ring
            Lop, opi = integral_scale_op(op)
            cop = ring.compile(opi)
            out = []
            for m in ms:
                num = self._guard(ring.apply(cop, self.power(m)))
                den = self.power(m + shift)
                r = ring.ratio(num, den)
                if r is None:
                    raise NonScalarQuotient(f"D(f^{m}) is not a multiple of f^{m + shift}")
                # num = Lop * L^m * D(f^m), den = L^(m+shift) f^(m+shift)
                out.append((m, r * Fraction(self._L) ** (m + shift) / (Lop * Fraction(self._L) ** m)))
            return out

        # the scalar ratio itself costs a few more bits in the final zero test
        return body() if exact else self._retrying(self._op_bits(op) + 24, body)

    def omega_check(self, delta: WeylOp, bstar_scaled: UniPoly, m: int) -> bool:
        """Is ``f * delta(f^m) == bstar_scaled(Theta)(f^m)``?

        ``bstar_scaled(s)`` is the polynomial with ``bstar_scaled(Theta) = b*(Theta/n)``.
        """

        def body():
            if self.backend == "exact":
                p = self._exact_power(m)
                lhs = self.f * self._guard(weyl_apply(delta, p))
                terms = {}
                for k, v in p.terms.items():
                    c = bstar_scaled(sum(k)) * v
                    if c:
                        terms[k] = c
                rhs = MultiPoly(p.nvars, terms)
                return lhs == rhs
            ring = self._ring
            Ld, di = integral_scale_op(delta)
            Lb = math.lcm(*[c.denominator for c in bstar_scaled.coeffs]) if bstar_scaled.coeffs else 1
            qi = bstar_scaled * Lb
            p = self.power(m)
            fp = ring.from_multipoly(self._fint)
            # scaled: lhs' = (L f)(Ld delta)((L f)^m) = L^(m+1) Ld * lhs ; rhs' = Lb * L^m * rhs
            lhs = ring.mul(fp, self._guard(ring.apply(ring.compile(di), p)))
            rhs = ring.euler(qi, p)
            u, v = Lb, self._L * Ld
            return ring.is_zero(ring.combine(u, lhs, -v, rhs))

        Lb = math.lcm(*[c.denominator for c in bstar_scaled.coeffs]) if bstar_scaled.coeffs else 1
        top = self.f.total_degree * m
        qmax = max(abs(bstar_scaled(d)) for d in range(top + 1)) * Lb
        bits = self._op_bits(delta) + self._power_bits() + math.log2(float(qmax) + 2) + math.log2(Lb) + 2
        return self._retrying(bits, body)
