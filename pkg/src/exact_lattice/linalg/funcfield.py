"""Linear algebra over the rational function field F_p(T), on top of sympy's domains."""
from __future__ import annotations

from functools import lru_cache

import numpy as np
from sympy import GF, symbols
from sympy.polys.matrices import DomainMatrix

_T = symbols("T")


@lru_cache(maxsize=None)
def field(p: int):
    """``(K, T)`` with ``K = F_p(T)``."""
    K = GF(p).frac_field(_T)
    return K, K.convert(_T)


def from_fp(a, p: int) -> DomainMatrix:
    """Embed an integer matrix (entries mod p) into F_p(T)."""
    K, _ = field(p)
    a = np.asarray(a, dtype=np.int64) % p
    rows, cols = a.shape
    return DomainMatrix([[K.convert(int(v)) for v in r] for r in a.tolist()], (rows, cols), K)


def pencil(a, b, p: int) -> DomainMatrix:
    """``b - T a`` for integer matrices ``a, b`` of the same shape."""
    K, t = field(p)
    a = np.asarray(a, dtype=np.int64) % p
    b = np.asarray(b, dtype=np.int64) % p
    rows, cols = a.shape
    return DomainMatrix([[K.convert(int(b[i, j])) - t * int(a[i, j]) for j in range(cols)]
                         for i in range(rows)], (rows, cols), K)


def rank(m: DomainMatrix) -> int:
    if 0 in m.shape:
        return 0
    return m.rank()


def right_kernel(m: DomainMatrix) -> list[list]:
    """Basis of ``{v : m v = 0}`` as lists of field elements."""
    K = m.domain
    rows, cols = m.shape
    if cols == 0:
        return []
    if rows == 0:
        return [[K.one if i == j else K.zero for i in range(cols)] for j in range(cols)]
    return [list(r) for r in m.nullspace().to_list()]


def left_kernel(m: DomainMatrix) -> list[list]:
    return right_kernel(m.transpose())


def _coeffs(poly, p: int) -> list[int]:
    """Coefficients of a polynomial, lowest degree first."""
    return [int(c) % p for c in reversed(poly.to_dense())]


def fp_equations(forms: list[list], p: int) -> np.ndarray:
    """F_p-linear equations equivalent to ``sum_j c_j x_j = 0`` over F_p(T) for each form ``c``.

    ``x`` ranges over F_p-vectors, so after clearing denominators every power
    of ``T`` gives one equation.
    """
    out = []
    for form in forms:
        dens = [c.denom for c in form if c]
        if not dens:
            continue
        common = dens[0]
        for d in dens[1:]:
            common = common.lcm(d)
        nums = [(c.numer * common.exquo(c.denom)) if c else None for c in form]
        deg = max(n.degree() for n in nums if n is not None)
        block = np.zeros((deg + 1, len(form)), dtype=np.int64)
        for j, n in enumerate(nums):
            if n is None:
                continue
            for k, v in enumerate(_coeffs(n, p)):
                block[k, j] = v
        out.append(block)
    if not out:
        return np.zeros((0, len(forms[0]) if forms else 0), dtype=np.int64)
    return np.concatenate(out, axis=0)


__all__ = ["field", "from_fp", "pencil", "rank", "right_kernel", "left_kernel", "fp_equations"]
