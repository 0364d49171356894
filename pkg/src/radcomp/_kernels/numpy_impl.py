"""Pure-numpy versions of the packed-polynomial kernels.

Same contracts as ``numba_impl``: every operator term is evaluated as a
vectorised pass over the input, the images are concatenated, sorted, and
equal keys summed modulo each prime.
"""

import numpy as np


def _weights(keys, primes, powers, radix, idx, ords, coef_col):
    """Per-prime weight ``coef * prod falling(digit, ord)`` and the validity mask."""
    mask = np.ones(keys.shape[0], dtype=bool)
    digits = []
    for v, o in zip(idx, ords):
        d = (keys // powers[v]) % radix
        mask &= d >= o
        digits.append((d, o))
    w = np.empty((primes.shape[0], int(mask.sum())), dtype=np.int64)
    for q, p in enumerate(primes):
        acc = np.full(w.shape[1], coef_col[q] % p, dtype=np.int64)
        for d, o in digits:
            dm = d[mask]
            for r in range(o):
                acc = acc * (dm - r) % p
        w[q] = acc
    return mask, w


def apply_terms(keys, coefs, primes, powers, radix, t_shift, t_ptr, t_idx, t_ord, t_coef):
    n_primes = primes.shape[0]
    chunks_k = []
    chunks_c = []
    for t in range(t_shift.shape[0]):
        lo, hi = t_ptr[t], t_ptr[t + 1]
        mask, w = _weights(keys, primes, powers, radix, t_idx[lo:hi], t_ord[lo:hi], t_coef[:, t])
        if not mask.any():
            continue
        chunks_k.append(keys[mask] + t_shift[t])
        chunks_c.append(w * coefs[:, mask] % primes[:, None])
    if not chunks_k:
        return np.empty(0, dtype=np.int64), np.empty((n_primes, 0), dtype=np.int64)
    allk = np.concatenate(chunks_k)
    allc = np.concatenate(chunks_c, axis=1)
    order = np.argsort(allk, kind="stable")
    allk = allk[order]
    allc = allc[:, order]
    uniq, start = np.unique(allk, return_index=True)
    sums = np.add.reduceat(allc, start, axis=1) % primes[:, None]
    return uniq.astype(np.int64), sums.astype(np.int64)


def apply_diagonal(keys, coefs, primes, powers, radix, t_ptr, t_idx, t_ord, t_coef):
    out = np.zeros((primes.shape[0], keys.shape[0]), dtype=np.int64)
    for t in range(t_ptr.shape[0] - 1):
        lo, hi = t_ptr[t], t_ptr[t + 1]
        mask, w = _weights(keys, primes, powers, radix, t_idx[lo:hi], t_ord[lo:hi], t_coef[:, t])
        if not mask.any():
            continue
        out[:, mask] = (out[:, mask] + w * coefs[:, mask] % primes[:, None]) % primes[:, None]
    return out


def apply_diagonal_exact(keys, coefs, primes, powers, radix, t_ptr, t_idx, t_ord, t_val):
    lam = np.zeros(keys.shape[0], dtype=np.int64)
    digits = {}
    for t in range(t_ptr.shape[0] - 1):
        w = np.full(keys.shape[0], t_val[t], dtype=np.int64)
        for s in range(t_ptr[t], t_ptr[t + 1]):
            v, o = int(t_idx[s]), int(t_ord[s])
            if v not in digits:
                digits[v] = (keys // powers[v]) % radix
            d = digits[v]
            for r in range(o):
                w *= np.maximum(d - r, 0)
        lam += w
    return coefs * (lam[None, :] % primes[:, None]) % primes[:, None]
