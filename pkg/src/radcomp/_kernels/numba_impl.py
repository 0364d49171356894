"""numba versions of the packed-polynomial kernels.

Monomials are int64 keys in a fixed radix; coefficients are residues modulo
primes below 2**31, stored as an int64 array of shape (n_primes, n_terms).
Each operator term maps the sorted input to a sorted stream, so the output
is a heap merge of T streams, written in one pass into growable buffers.

The derivative weight ``prod falling(digit, ord)`` is formed once per input
monomial as an exact int64 (callers guarantee it fits) and reductions are
skipped whenever a factor is 1 or -1 modulo the prime.
"""

import numpy as np
from numba import njit


@njit(cache=True)
def _weight(key, t, t_ptr, t_idx, t_ord, powers, radix):
    """Exact falling-factorial weight of term t at key, or 0 if a digit is too small."""
    w = 1
    for s in range(t_ptr[t], t_ptr[t + 1]):
        d = (key // powers[t_idx[s]]) % radix
        o = t_ord[s]
        if d < o:
            return 0
        for r in range(o):
            w *= d - r
    return w


@njit(cache=True)
def _next_valid(keys, start, t, t_ptr, t_idx, t_ord, powers, radix):
    n = keys.shape[0]
    if t_ptr[t] == t_ptr[t + 1]:
        return start
    i = start
    while i < n:
        ok = True
        for s in range(t_ptr[t], t_ptr[t + 1]):
            if (keys[i] // powers[t_idx[s]]) % radix < t_ord[s]:
                ok = False
                break
        if ok:
            return i
        i += 1
    return n


@njit(cache=True)
def _sift_down(heap, hk, size, pos):
    item = heap[pos]
    key = hk[item]
    while True:
        left = 2 * pos + 1
        if left >= size:
            break
        small = left
        right = left + 1
        if right < size and hk[heap[right]] < hk[heap[left]]:
            small = right
        if hk[heap[small]] < key:
            heap[pos] = heap[small]
            pos = small
        else:
            break
    heap[pos] = item


@njit(cache=True)
def _sift_up(heap, hk, pos):
    item = heap[pos]
    key = hk[item]
    while pos > 0:
        parent = (pos - 1) // 2
        if key < hk[heap[parent]]:
            heap[pos] = heap[parent]
            pos = parent
        else:
            break
    heap[pos] = item


@njit(cache=True)
def _term_product(coef, w, c, p):
    """``coef * w * c mod p`` with w an exact nonnegative int64 and c a residue."""
    if w == 1:
        x = coef
    elif w < 2147483648:
        x = coef * w % p
    else:
        x = coef * (w % p) % p
    if c == 1:
        return x
    if c == p - 1:
        return p - x if x else 0
    return x * c % p


@njit(cache=True)
def apply_terms(keys, coefs, primes, powers, radix, t_shift, t_ptr, t_idx, t_ord, t_coef):
    n_terms = t_shift.shape[0]
    n_primes = primes.shape[0]
    n = keys.shape[0]
    heap = np.empty(n_terms, dtype=np.int64)
    hk = np.empty(n_terms, dtype=np.int64)
    pos = np.empty(n_terms, dtype=np.int64)
    size = 0
    for t in range(n_terms):
        i = _next_valid(keys, 0, t, t_ptr, t_idx, t_ord, powers, radix)
        pos[t] = i
        if i < n:
            hk[t] = keys[i] + t_shift[t]
            heap[size] = t
            size += 1
            _sift_up(heap, hk, size - 1)
    cap = max(n, 16)
    out_keys = np.empty(cap, dtype=np.int64)
    out_coefs = np.empty((n_primes, cap), dtype=np.int64)
    count = 0
    last = -1
    while size > 0:
        t = heap[0]
        k = hk[t]
        i = pos[t]
        if k != last:
            if count == cap:
                cap *= 2
                nk = np.empty(cap, dtype=np.int64)
                nk[:count] = out_keys[:count]
                nc = np.empty((n_primes, cap), dtype=np.int64)
                nc[:, :count] = out_coefs[:, :count]
                out_keys = nk
                out_coefs = nc
            out_keys[count] = k
            for q in range(n_primes):
                out_coefs[q, count] = 0
            count += 1
            last = k
        w = _weight(keys[i], t, t_ptr, t_idx, t_ord, powers, radix)
        for q in range(n_primes):
            p = primes[q]
            acc = out_coefs[q, count - 1] + _term_product(coefs[q, i], w, t_coef[q, t], p)
            if acc >= p:
                acc -= p
            out_coefs[q, count - 1] = acc
        j = _next_valid(keys, i + 1, t, t_ptr, t_idx, t_ord, powers, radix)
        pos[t] = j
        if j < n:
            hk[t] = keys[j] + t_shift[t]
        else:
            size -= 1
            heap[0] = heap[size]
        if size > 0:
            _sift_down(heap, hk, size, 0)
    return out_keys[:count].copy(), out_coefs[:, :count].copy()


@njit(cache=True)
def apply_diagonal(keys, coefs, primes, powers, radix, t_ptr, t_idx, t_ord, t_coef):
    n_primes = primes.shape[0]
    n = keys.shape[0]
    n_terms = t_ptr.shape[0] - 1
    out = np.zeros((n_primes, n), dtype=np.int64)
    for i in range(n):
        key = keys[i]
        for t in range(n_terms):
            w = _weight(key, t, t_ptr, t_idx, t_ord, powers, radix)
            if w == 0:
                continue
            for q in range(n_primes):
                p = primes[q]
                acc = out[q, i] + _term_product(coefs[q, i], w, t_coef[q, t], p)
                if acc >= p:
                    acc -= p
                out[q, i] = acc
    return out


@njit(cache=True)
def apply_diagonal_exact(keys, coefs, primes, powers, radix, t_ptr, t_idx, t_ord, t_val):
    """Diagonal operator with signed exact term coefficients ``t_val``.

    The eigenvalue at each monomial is summed exactly in int64 (callers
    guarantee the running sum fits) and reduced once per prime.
    """
    n_primes = primes.shape[0]
    n = keys.shape[0]
    n_terms = t_ptr.shape[0] - 1
    nvars = powers.shape[0]
    digits = np.empty(nvars, dtype=np.int64)
    out = np.empty((n_primes, n), dtype=np.int64)
    for i in range(n):
        key = keys[i]
        for v in range(nvars):
            digits[v] = (key // powers[v]) % radix
        lam = 0
        for t in range(n_terms):
            w = t_val[t]
            for s in range(t_ptr[t], t_ptr[t + 1]):
                d = digits[t_idx[s]]
                o = t_ord[s]
                if d < o:
                    w = 0
                    break
                for r in range(o):
                    w *= d - r
            lam += w
        for q in range(n_primes):
            p = primes[q]
            out[q, i] = coefs[q, i] * (lam % p) % p
    return out
