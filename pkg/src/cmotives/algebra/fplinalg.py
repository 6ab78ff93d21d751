"""Linear algebra over a prime field F_p on numpy integer arrays."""
from __future__ import annotations

import numpy as np


def rref_mod_p(a: np.ndarray, p: int, ncols: int | None = None):
    """Row-reduce a copy of `a` modulo p.

    Only the first `ncols` columns are used for pivoting (default: all).
    Returns (reduced matrix, pivot column list).
    """
    a = np.array(a, dtype=np.int64) % p
    nrows, total = a.shape
    ncols = total if ncols is None else ncols
    pivots = []
    row = 0
    for col in range(ncols):
        if row >= nrows:
            break
        nz = np.nonzero(a[row:, col])[0]
        if nz.size == 0:
            continue
        piv = row + int(nz[0])
        if piv != row:
            a[[row, piv]] = a[[piv, row]]
        inv = pow(int(a[row, col]), p - 2, p)
        a[row] = (a[row] * inv) % p
        others = np.nonzero(a[:, col])[0]
        others = others[others != row]
        if others.size:
            a[others] = (a[others] - np.outer(a[others, col], a[row])) % p
        pivots.append(col)
        row += 1
    return a, pivots


def kernel_mod_p(a: np.ndarray, p: int) -> np.ndarray:
    """Basis of the right kernel as rows of an array."""
    nrows, ncols = a.shape
    red, pivots = rref_mod_p(a, p)
    free = [j for j in range(ncols) if j not in set(pivots)]
    out = np.zeros((len(free), ncols), dtype=np.int64)
    for k, f in enumerate(free):
        out[k, f] = 1
        for i, pc in enumerate(pivots):
            out[k, pc] = (-red[i, f]) % p
    return out


def rank_mod_p(a: np.ndarray, p: int) -> int:
    if a.size == 0:
        return 0
    return len(rref_mod_p(a, p)[1])


class Solver:
    """Pre-factored solver for A x = b (mod p) with many right-hand sides."""

    def __init__(self, a: np.ndarray, p: int):
        self.p = p
        a = np.array(a, dtype=np.int64) % p
        n, m = a.shape
        aug = np.concatenate([a, np.eye(n, dtype=np.int64)], axis=1)
        red, pivots = rref_mod_p(aug, p, ncols=m)
        self.pivots = pivots
        self.n, self.m = n, m
        self.rank = len(pivots)
        # red[:, m:] is the transformation E with E a = red[:, :m]
        self.E = red[:, m:]
        self.R = red[:, :m]

    def solve(self, b: np.ndarray):
        """A particular solution (free variables zero), or None."""
        p = self.p
        eb = (self.E @ (np.asarray(b, dtype=np.int64) % p)) % p
        if np.any(eb[self.rank:]):
            return None
        x = np.zeros(self.m, dtype=np.int64)
        for i, pc in enumerate(self.pivots):
            x[pc] = eb[i]
        return x


def matpow_mod_p(a: np.ndarray, e: int, p: int) -> np.ndarray:
    n = a.shape[0]
    result = np.eye(n, dtype=np.int64)
    base = np.array(a, dtype=np.int64) % p
    while e:
        if e & 1:
            result = (result @ base) % p
        e >>= 1
        if e:
            base = (base @ base) % p
    return result
