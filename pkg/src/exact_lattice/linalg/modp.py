"""Linear algebra over a prime field F_p on int64 numpy arrays."""
from __future__ import annotations

import numpy as np

from .kernels import rref_modp


def mat(rows, cols, entries=None) -> np.ndarray:
    if entries is None:
        return np.zeros((rows, cols), dtype=np.int64)
    a = np.array(entries, dtype=np.int64).reshape(rows, cols)
    return a


def mul(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    if a.shape[1] == 0 or a.shape[0] == 0 or b.shape[1] == 0:
        return np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    return (a @ b) % p


def rank(a: np.ndarray, p: int) -> int:
    if a.size == 0:
        return 0
    return len(rref_modp(a, p)[1])


def nullspace(a: np.ndarray, p: int) -> np.ndarray:
    """Columns spanning ``{x : a x = 0}``."""
    rows, cols = a.shape
    if cols == 0:
        return np.zeros((0, 0), dtype=np.int64)
    if rows == 0:
        return np.eye(cols, dtype=np.int64)
    r, piv = rref_modp(a, p)
    free = [c for c in range(cols) if c not in piv]
    basis = np.zeros((cols, len(free)), dtype=np.int64)
    for k, f in enumerate(free):
        basis[f, k] = 1
        for i, pc in enumerate(piv):
            basis[pc, k] = (-r[i, f]) % p
    return basis


def solve(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray | None:
    """One solution ``x`` of ``a x = b`` (``b`` may have several columns), or None."""
    rows, cols = a.shape
    b = np.asarray(b, dtype=np.int64).reshape(rows, -1)
    if rows == 0:
        return np.zeros((cols, b.shape[1]), dtype=np.int64)
    aug = np.concatenate([a % p, b % p], axis=1)
    r, piv = rref_modp(aug, p)
    if any(c >= cols for c in piv):
        return None
    x = np.zeros((cols, b.shape[1]), dtype=np.int64)
    for i, c in enumerate(piv):
        x[c] = r[i, cols:]
    return x % p


def inverse(a: np.ndarray, p: int) -> np.ndarray:
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError("inverse of non-square matrix")
    x = solve(a, np.eye(n, dtype=np.int64), p)
    if x is None:
        raise ValueError("matrix is singular")
    return x


def is_invertible(a: np.ndarray, p: int) -> bool:
    return a.shape[0] == a.shape[1] and rank(a, p) == a.shape[0]


def column_space(a: np.ndarray, p: int) -> np.ndarray:
    """Columns forming a basis of the column span of ``a``."""
    if a.shape[1] == 0 or a.shape[0] == 0:
        return np.zeros((a.shape[0], 0), dtype=np.int64)
    r, piv = rref_modp(a, p)
    return a[:, piv] % p


def complement_basis(a: np.ndarray, p: int) -> np.ndarray:
    """Standard basis vectors completing the column span of ``a`` to the whole space."""
    n = a.shape[0]
    aug = np.concatenate([a % p, np.eye(n, dtype=np.int64)], axis=1)
    _, piv = rref_modp(aug, p)
    extra = [c - a.shape[1] for c in piv if c >= a.shape[1]]
    return np.eye(n, dtype=np.int64)[:, extra]


def matpow(a: np.ndarray, k: int, p: int) -> np.ndarray:
    out = np.eye(a.shape[0], dtype=np.int64)
    base = a % p
    while k:
        if k & 1:
            out = mul(out, base, p)
        base = mul(base, base, p)
        k >>= 1
    return out
