"""Exact arithmetic over GF(p): dense rank, determinants, seeded sampling.

Everything downstream (Hilbert values, drop verification, the randomized
determinant oracle) reduces to ranks of dense matrices over a prime field.
Matrices are numpy int64 arrays with entries reduced mod p; all intermediate
products stay below p^2 < 2^63.
"""

from __future__ import annotations

import hashlib

import numpy as np

DEFAULT_PRIME = 32749


def is_prime(n):
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def stream(seed, label):
    """Deterministic PRNG stream for (seed, label).

    PCG64 seeded by SeedSequence(seed, spawn_key=(sha256(label),)); distinct
    labels give independent streams, and the output is stable across
    platforms and numpy versions that keep the PCG64 bit stream.
    """
    h = hashlib.sha256(label.encode("utf-8")).digest()
    key = int.from_bytes(h[:4], "big")
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(key,))))


def sample(shape, seed, stream_label, p=DEFAULT_PRIME):
    """Matrix with entries uniform over GF(p), determined by (seed, label)."""
    rng = stream(seed, stream_label)
    return rng.integers(0, p, size=shape, dtype=np.int64)


def rank(mat, p=DEFAULT_PRIME):
    """Row rank over GF(p) by in-place Gaussian elimination on a copy."""
    a = np.array(mat, dtype=np.int64) % p
    if a.ndim != 2 or a.size == 0:
        if a.ndim != 2:
            raise ValueError("rank needs a 2-d matrix")
        return 0
    m, n = a.shape
    r = 0
    for c in range(n):
        if r == m:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        inv = pow(int(a[r, c]), -1, p)
        a[r, c:] = a[r, c:] * inv % p
        below = a[r + 1:, c]
        hot = np.nonzero(below)[0]
        if hot.size:
            a[r + 1 + hot, c:] = (a[r + 1 + hot, c:] - below[hot, None] * a[r, None, c:]) % p
        r += 1
    return r


def det(mat, p=DEFAULT_PRIME):
    """Determinant over GF(p)."""
    a = np.array(mat, dtype=np.int64) % p
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("det needs a square matrix")
    n = a.shape[0]
    if n == 0:
        return 1 % p
    d = 1
    for c in range(n):
        nz = np.nonzero(a[c:, c])[0]
        if nz.size == 0:
            return 0
        piv = c + int(nz[0])
        if piv != c:
            a[[c, piv]] = a[[piv, c]]
            d = p - d
        d = d * int(a[c, c]) % p
        inv = pow(int(a[c, c]), -1, p)
        a[c, c:] = a[c, c:] * inv % p
        below = a[c + 1:, c]
        hot = np.nonzero(below)[0]
        if hot.size:
            a[c + 1 + hot, c:] = (a[c + 1 + hot, c:] - below[hot, None] * a[c, None, c:]) % p
    return d


def evaluate_symbolic(m, assignment, p=DEFAULT_PRIME):
    """Evaluate a SymbolicMatrix at a variable assignment over GF(p).

    Entries are None (zero) or (lam, var) meaning lam * value(var).
    """
    out = np.zeros((m.nrows, m.ncols), dtype=np.int64)
    for i, row in enumerate(m.entries):
        for k, cell in enumerate(row):
            if cell is None:
                continue
            lam, var = cell
            if var not in assignment:
                raise KeyError("no value assigned to variable %r" % (var,))
            out[i, k] = lam % p * (assignment[var] % p) % p
    return out
