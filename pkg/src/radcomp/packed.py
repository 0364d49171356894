"""Exact polynomial arithmetic on packed monomials with multi-modular coefficients.

A :class:`PackedRing` fixes the number of variables, a radix ``R`` (every
exponent stays below ``R``) and a set of primes.  A monomial ``z^e`` is the
int64 key ``sum_j e_j R^j``; coefficients are kept as residues modulo each
prime.  Alongside the residues every :class:`PackedPoly` carries an upper
bound on the l1-norm of its exact integer coefficients, so zero tests and
coefficient reads are certified: when the product of the primes does not
dominate the bound, :class:`InsufficientModuli` is raised instead of an
answer that might be wrong.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm, prod

import numpy as np

from ._kernels import get_kernels
from .errors import DimensionMismatch, InsufficientModuli
from .poly import MultiPoly, UniPoly
from .weyl import WeylOp

__all__ = ["PRIMES", "PackedRing", "PackedPoly", "CompiledOp", "primes_for_bits"]

PRIMES = (
    2147483647, 2147483629, 2147483587, 2147483579, 2147483563,
    2147483549, 2147483543, 2147483497, 2147483489, 2147483477,
)


def primes_for_bits(bits: float) -> int:
    """Number of primes whose product exceeds ``2**bits`` (each is just under 2**31)."""
    k = max(1, int(bits // 30.99) + 1)
    if k > len(PRIMES):
        raise InsufficientModuli(f"{bits:.0f}-bit bound needs more than {len(PRIMES)} primes")
    return k


@dataclass
class PackedPoly:
    keys: np.ndarray          # sorted int64 monomial keys
    res: np.ndarray           # int64 residues, shape (n_primes, len(keys))
    bound: int                # l1 bound on the exact integer coefficients
    max_exp: tuple            # per-variable exponent bound

    def __len__(self):
        return int(self.keys.shape[0])


@dataclass
class _TermBlock:
    shift: np.ndarray
    ptr: np.ndarray
    idx: np.ndarray
    ords: np.ndarray
    coef: np.ndarray
    l1: int
    reach: tuple          # per-variable max of a_v - b_v
    orders: tuple         # per-variable max of b_v
    mags: tuple = ()      # |exact coefficient| bound per term
    values: tuple = ()    # signed exact coefficients, when known

    def __len__(self):
        return int(self.ptr.shape[0] - 1)


@dataclass
class CompiledOp:
    """An integral WeylOp split into off-diagonal and diagonal (``a == b``) parts."""

    offdiag: _TermBlock | None
    diag: _TermBlock | None


class PackedRing:
    def __init__(self, nvars: int, radix: int, n_primes: int = 3, backend: str | None = None):
        if radix < 2:
            raise ValueError("radix must be at least 2")
        if radix**nvars >= 2**63:
            raise ValueError(f"radix {radix} with {nvars} variables overflows int64 keys")
        if not 1 <= n_primes <= len(PRIMES):
            raise ValueError(f"n_primes must be between 1 and {len(PRIMES)}")
        self.nvars = nvars
        self.radix = radix
        self.powers = np.array([radix**j for j in range(nvars)], dtype=np.int64)
        self.primes = np.array(PRIMES[:n_primes], dtype=np.int64)
        self.modulus = prod(PRIMES[:n_primes])
        self.kernels = get_kernels(backend)

    @classmethod
    def fits(cls, nvars: int, max_exp: int) -> bool:
        return (max_exp + 1) ** nvars < 2**63

    # --- packing ---------------------------------------------------------
    def pack(self, exps) -> int:
        return sum(int(e) * self.radix**j for j, e in enumerate(exps))

    def unpack(self, key: int) -> tuple:
        key = int(key)
        out = []
        for _ in range(self.nvars):
            key, d = divmod(key, self.radix)
            out.append(d)
        return tuple(out)

    def _residues(self, values) -> np.ndarray:
        return np.array([[int(v) % int(p) for v in values] for p in self.primes], dtype=np.int64).reshape(
            len(self.primes), len(values)
        )

    def _check_exps(self, max_exp):
        if any(e >= self.radix for e in max_exp):
            raise ValueError(f"exponent bound {max(max_exp)} reaches the radix {self.radix}")

    def from_multipoly(self, p: MultiPoly) -> PackedPoly:
        if p.nvars != self.nvars:
            raise DimensionMismatch(f"{p.nvars} variables, ring has {self.nvars}")
        if not p.is_integral():
            raise ValueError("packed polynomials need integer coefficients; scale first")
        items = sorted((self.pack(k), int(v)) for k, v in p.terms.items())
        keys = np.array([k for k, _ in items], dtype=np.int64)
        max_exp = tuple(max((k[j] for k in p.terms), default=0) for j in range(self.nvars))
        self._check_exps(max_exp)
        return PackedPoly(keys, self._residues([v for _, v in items]),
                          sum(abs(v) for _, v in items), max_exp)

    def constant(self, c: int = 1) -> PackedPoly:
        return PackedPoly(np.zeros(1, dtype=np.int64), self._residues([c]), abs(int(c)), (0,) * self.nvars)

    # --- exact reads -----------------------------------------------------
    def _crt(self, column) -> int:
        """Symmetric CRT lift of one residue column."""
        x, m = 0, 1
        for r, p in zip(column, self.primes):
            r, p = int(r), int(p)
            t = ((r - x) * pow(m, -1, p)) % p
            x += m * t
            m *= p
        return x - m if 2 * x > m else x

    def _need(self, bound: int, what: str):
        if 2 * bound >= self.modulus:
            raise InsufficientModuli(
                f"{what}: coefficient bound {bound} not below half the modulus product"
            )

    def to_multipoly(self, P: PackedPoly) -> MultiPoly:
        self._need(P.bound, "to_multipoly")
        terms = {}
        for j in range(len(P)):
            v = self._crt(P.res[:, j])
            if v:
                terms[self.unpack(P.keys[j])] = Fraction(v)
        return MultiPoly(self.nvars, terms)

    def coefficient(self, P: PackedPoly, exps) -> int:
        self._need(P.bound, "coefficient")
        key = self.pack(exps)
        j = int(np.searchsorted(P.keys, key))
        if j < len(P) and P.keys[j] == key:
            return self._crt(P.res[:, j])
        return 0

    def is_zero(self, P: PackedPoly) -> bool:
        if P.res.size and P.res.any():
            return False
        if P.bound >= self.modulus:
            raise InsufficientModuli(f"zero test: bound {P.bound} not below the modulus product")
        return True

    # --- operators ---------------------------------------------------------
    def _block(self, items, values=()) -> _TermBlock | None:
        """``items``: list of (a, b, residue column, |exact coefficient| bound)."""
        if not items:
            return None
        shift, ptr, idx, ords, cols, mags = [], [0], [], [], [], []
        reach = [-(10**9)] * self.nvars
        orders = [0] * self.nvars
        l1 = 0
        for a, b, col, mag in items:
            if self.radix ** sum(b) >= 2**63:
                raise ValueError(f"derivative order {sum(b)} too high for exact int64 weights")
            shift.append(self.pack(a) - self.pack(b))
            for v in range(self.nvars):
                if b[v]:
                    idx.append(v)
                    ords.append(b[v])
                reach[v] = max(reach[v], a[v] - b[v])
                orders[v] = max(orders[v], b[v])
            ptr.append(len(idx))
            cols.append(col)
            mags.append(mag)
            l1 += mag
        return _TermBlock(
            np.array(shift, dtype=np.int64),
            np.array(ptr, dtype=np.int64),
            np.array(idx, dtype=np.int64),
            np.array(ords, dtype=np.int64),
            np.ascontiguousarray(np.array(cols, dtype=np.int64).T.reshape(len(self.primes), len(items))),
            l1,
            tuple(reach),
            tuple(orders),
            tuple(mags),
            tuple(values),
        )

    def compile(self, op: WeylOp) -> CompiledOp:
        if op.nvars != self.nvars:
            raise DimensionMismatch(f"operator on {op.nvars} variables, ring has {self.nvars}")
        off, dia, dia_vals = [], [], []
        for (a, b), c in op.terms.items():
            if c.denominator != 1:
                raise ValueError("compiled operators need integer coefficients; scale first")
            c = int(c)
            entry = (a, b, [c % int(p) for p in self.primes], abs(c))
            if a == b:
                dia.append(entry)
                dia_vals.append(c)
            else:
                off.append(entry)
        return CompiledOp(self._block(off), self._block(dia, dia_vals))

    def _growth(self, block: _TermBlock, P: PackedPoly) -> int:
        """Bound on ``sum_t |c_t| * prod_v e_v^(b_v)`` over the exponents of P."""
        ptr, idx, ords = block.ptr.tolist(), block.idx.tolist(), block.ords.tolist()
        total = 0
        for t, mag in enumerate(block.mags):
            w = mag
            for j in range(ptr[t], ptr[t + 1]):
                w *= P.max_exp[idx[j]] ** ords[j]
            total += w
        return total

    def _run_block(self, block: _TermBlock, P: PackedPoly) -> PackedPoly:
        max_exp = tuple(max(0, P.max_exp[v] + block.reach[v]) for v in range(self.nvars))
        self._check_exps(max_exp)
        keys, res = self.kernels.apply_terms(
            P.keys, P.res, self.primes, self.powers, self.radix,
            block.shift, block.ptr, block.idx, block.ords, block.coef,
        )
        return self._compact(PackedPoly(keys, res, P.bound * self._growth(block, P), max_exp))

    def apply(self, op: CompiledOp | WeylOp, P: PackedPoly) -> PackedPoly:
        if isinstance(op, WeylOp):
            op = self.compile(op)
        out = None
        if op.offdiag is not None:
            out = self._run_block(op.offdiag, P)
        if op.diag is not None:
            b = op.diag
            growth = self._growth(b, P)
            if b.values and growth < 2**63:
                # every partial eigenvalue sum is bounded by growth, so int64 is exact
                res = self.kernels.apply_diagonal_exact(
                    P.keys, P.res, self.primes, self.powers, self.radix, b.ptr, b.idx, b.ords,
                    np.array(b.values, dtype=np.int64),
                )
            else:
                res = self.kernels.apply_diagonal(
                    P.keys, P.res, self.primes, self.powers, self.radix, b.ptr, b.idx, b.ords, b.coef
                )
            d = self._compact(PackedPoly(P.keys, res, P.bound * growth, P.max_exp))
            out = d if out is None else self.combine(1, out, 1, d)
        if out is None:
            return self.zero()
        return out

    def zero(self) -> PackedPoly:
        return PackedPoly(np.zeros(0, dtype=np.int64), np.zeros((len(self.primes), 0), dtype=np.int64),
                          0, (0,) * self.nvars)

    def mul(self, P: PackedPoly, Q: PackedPoly) -> PackedPoly:
        """Product; the shorter factor becomes the operator side of the merge."""
        if len(P) > len(Q):
            P, Q = Q, P
        if len(P) == 0:
            return self.zero()
        zero = (0,) * self.nvars
        items = [(self.unpack(P.keys[j]), zero, [int(x) for x in P.res[:, j]], 0) for j in range(len(P))]
        block = self._block(items)
        max_exp = tuple(P.max_exp[v] + Q.max_exp[v] for v in range(self.nvars))
        self._check_exps(max_exp)
        keys, res = self.kernels.apply_terms(
            Q.keys, Q.res, self.primes, self.powers, self.radix,
            block.shift, block.ptr, block.idx, block.ords, block.coef,
        )
        return self._compact(PackedPoly(keys, res, P.bound * Q.bound, max_exp))

    def total_degrees(self, P: PackedPoly) -> np.ndarray:
        deg = np.zeros(len(P), dtype=np.int64)
        for j in range(self.nvars):
            deg += (P.keys // self.powers[j]) % self.radix
        return deg

    def euler(self, q: UniPoly, P: PackedPoly) -> PackedPoly:
        """``q(Theta)`` applied to P, where Theta is the Euler field: ``z^b -> q(|b|) z^b``.

        ``q`` must take integer values at the degrees present with integer
        coefficients (scale it first).
        """
        if any(c.denominator != 1 for c in q.coeffs):
            raise ValueError("euler polynomial needs integer coefficients")
        if not len(P):
            return P
        deg = self.total_degrees(P)
        uniq, inv = np.unique(deg, return_inverse=True)
        vals = [int(q(int(d))) for d in uniq]
        table = self._residues(vals)
        res = table[:, inv] * P.res % self.primes[:, None]
        return self._compact(PackedPoly(P.keys, res, P.bound * max(abs(v) for v in vals), P.max_exp))

    def combine(self, u: int, P: PackedPoly, v: int, Q: PackedPoly) -> PackedPoly:
        """``u P + v Q`` for integers u, v."""
        u, v = int(u), int(v)
        max_exp = tuple(max(a, b) for a, b in zip(P.max_exp, Q.max_exp))
        bound = abs(u) * P.bound + abs(v) * Q.bound
        pr = self.primes[:, None]
        if len(P) == len(Q) and np.array_equal(P.keys, Q.keys):
            res = (P.res * (u % self.primes)[:, None] % pr + Q.res * (v % self.primes)[:, None] % pr) % pr
            return self._compact(PackedPoly(P.keys, res, bound, max_exp))
        keys = np.concatenate([P.keys, Q.keys])
        res = np.concatenate(
            [P.res * (u % self.primes)[:, None] % self.primes[:, None],
             Q.res * (v % self.primes)[:, None] % self.primes[:, None]],
            axis=1,
        )
        order = np.argsort(keys, kind="stable")
        keys, res = keys[order], res[:, order]
        uniq, start = np.unique(keys, return_index=True)
        if len(keys):
            res = np.add.reduceat(res, start, axis=1) % self.primes[:, None]
        return self._compact(PackedPoly(uniq.astype(np.int64), res, bound, max_exp))

    def _compact(self, P: PackedPoly) -> PackedPoly:
        if P.res.size:
            keep = P.res.any(axis=0)
            if not keep.all():
                return PackedPoly(P.keys[keep], np.ascontiguousarray(P.res[:, keep]), P.bound, P.max_exp)
        return P

    def ratio(self, num: PackedPoly, den: PackedPoly) -> Fraction | None:
        """The rational r with ``num = r * den`` exactly, or None when no such r exists."""
        if not len(den):
            raise ZeroDivisionError("denominator polynomial is zero")
        self._need(den.bound, "ratio denominator")
        self._need(num.bound, "ratio numerator")
        lead = self.unpack(den.keys[0])
        r = Fraction(self.coefficient(num, lead), self.coefficient(den, lead))
        diff = self.combine(r.denominator, num, -r.numerator, den)
        return r if self.is_zero(diff) else None


def integral_scale(p: MultiPoly) -> tuple[int, MultiPoly]:
    """Common denominator L and the integral polynomial ``L * p``."""
    L = lcm(*[c.denominator for c in p.terms.values()]) if p.terms else 1
    return L, p * L


def integral_scale_op(op: WeylOp) -> tuple[int, WeylOp]:
    L = lcm(*[c.denominator for c in op.terms.values()]) if op.terms else 1
    return L, op.scale(L)
