"""Exact linear algebra over the local ring Z_(p).

Elements are :class:`fractions.Fraction` values whose denominators are prime
to ``p``.  Matrices are lists of row lists.  The Smith normal form returned by
:func:`snf` satisfies ``U @ M @ V == D`` exactly, with ``U`` and ``V``
invertible over Z_(p) and ``D`` diagonal with entries ``p**v`` (no unit part).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

INF = math.inf

Matrix = list[list[Fraction]]


def frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def val(x, p: int) -> float:
    """p-adic valuation; ``inf`` for zero."""
    x = frac(x)
    if x == 0:
        return INF
    v = 0
    n, d = x.numerator, x.denominator
    while n % p == 0:
        n //= p
        v += 1
    while d % p == 0:
        d //= p
        v -= 1
    return v


def is_integral(x, p: int) -> bool:
    return frac(x).denominator % p != 0


def mod_pk(x, p: int, k: int) -> int:
    """Residue of a p-integral element modulo ``p**k``."""
    x = frac(x)
    if not is_integral(x, p):
        raise ValueError(f"{x} is not p-integral for p={p}")
    m = p**k
    if m == 1:
        return 0
    return (x.numerator * pow(x.denominator, -1, m)) % m


def to_matrix(rows) -> Matrix:
    return [[frac(x) for x in r] for r in rows]


def identity(n: int) -> Matrix:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def zeros(m: int, n: int) -> Matrix:
    return [[Fraction(0)] * n for _ in range(m)]


def shape(a: Matrix, cols: int | None = None) -> tuple[int, int]:
    if not a:
        return 0, (cols or 0)
    return len(a), len(a[0])


def matmul(a: Matrix, b: Matrix, inner: int | None = None, cols: int | None = None) -> Matrix:
    m = len(a)
    k = len(b) if b else (inner or 0)
    n = len(b[0]) if b else (cols or 0)
    out = zeros(m, n)
    for i in range(m):
        ai = a[i]
        oi = out[i]
        for t in range(k):
            x = ai[t]
            if x:
                bt = b[t]
                for j in range(n):
                    if bt[j]:
                        oi[j] += x * bt[j]
    return out


def transpose(a: Matrix, rows: int | None = None) -> Matrix:
    if not a:
        return [[] for _ in range(rows or 0)]
    return [list(col) for col in zip(*a)]


def hstack(*blocks: Matrix, rows: int) -> Matrix:
    out = [[] for _ in range(rows)]
    for b in blocks:
        for i in range(rows):
            if b:
                out[i].extend(b[i])
    return out


def column(a: Matrix, j: int) -> list[Fraction]:
    return [r[j] for r in a]


@dataclass(frozen=True)
class SNF:
    U: Matrix
    D: Matrix
    V: Matrix
    valuations: tuple[int, ...]  # valuations of the nonzero diagonal entries, nondecreasing
    rows: int
    cols: int

    @property
    def rank(self) -> int:
        return len(self.valuations)


def snf(a: Matrix, p: int, rows: int | None = None, cols: int | None = None) -> SNF:
    """Smith normal form over Z_(p)."""
    m = len(a) if a else (rows or 0)
    n = len(a[0]) if a else (cols or 0)
    A = [[frac(x) for x in r] for r in a] if a else zeros(m, n)
    U = identity(m)
    V = identity(n)
    vals: list[int] = []
    for t in range(min(m, n)):
        best = None
        for i in range(t, m):
            row = A[i]
            for j in range(t, n):
                if row[j]:
                    v = val(row[j], p)
                    if best is None or v < best[0]:
                        best = (v, i, j)
                        if v == 0:
                            break
            if best is not None and best[0] == 0:
                break
        if best is None:
            break
        v, i, j = best
        if i != t:
            A[t], A[i] = A[i], A[t]
            U[t], U[i] = U[i], U[t]
        if j != t:
            for row in A:
                row[t], row[j] = row[j], row[t]
            for row in V:
                row[t], row[j] = row[j], row[t]
        pv = Fraction(p**v)
        unit = A[t][t] / pv
        if unit != 1:
            inv = 1 / unit
            A[t] = [x * inv for x in A[t]]
            U[t] = [x * inv for x in U[t]]
        At, Ut = A[t], U[t]
        for i2 in range(t + 1, m):
            c = A[i2][t]
            if c:
                f = c / pv
                A[i2] = [x - f * y for x, y in zip(A[i2], At)]
                U[i2] = [x - f * y for x, y in zip(U[i2], Ut)]
        for j2 in range(t + 1, n):
            c = At[j2]
            if c:
                f = c / pv
                for row in A:
                    row[j2] -= f * row[t]
                for row in V:
                    row[j2] -= f * row[t]
        vals.append(v)
    return SNF(U, A, V, tuple(vals), m, n)


def verify_snf(a: Matrix, s: SNF) -> bool:
    """Check ``U a V == D`` and that ``D`` is diagonal."""
    if s.rows == 0 or s.cols == 0:
        return True
    prod = matmul(matmul(s.U, a if a else zeros(s.rows, s.cols)), s.V)
    if prod != s.D:
        return False
    for i in range(s.rows):
        for j in range(s.cols):
            if i != j and s.D[i][j] != 0:
                return False
    return True


def inverse(a: Matrix, p: int) -> Matrix:
    """Inverse over Z_(p); raises if ``a`` is not invertible there."""
    n = len(a)
    s = snf(a, p, n, n)
    if s.rank != n or any(v != 0 for v in s.valuations):
        raise ValueError("matrix is not invertible over Z_(p)")
    # a = U^-1 D V^-1 with D = I  =>  a^-1 = V U
    return matmul(s.V, s.U)


def solve(a: Matrix, b: list, p: int, rows: int | None = None, cols: int | None = None,
          s: SNF | None = None) -> list[Fraction] | None:
    """A p-integral solution of ``a x = b`` or None."""
    s = s or snf(a, p, rows, cols)
    c = [sum((s.U[i][k] * frac(b[k]) for k in range(s.rows)), Fraction(0)) for i in range(s.rows)]
    y = [Fraction(0)] * s.cols
    for i in range(s.rows):
        if i < s.rank:
            if c[i] and val(c[i], p) < s.valuations[i]:
                return None
            y[i] = c[i] / p ** s.valuations[i]
        elif c[i] != 0:
            return None
    return [sum((s.V[j][k] * y[k] for k in range(s.cols)), Fraction(0)) for j in range(s.cols)]


def kernel(a: Matrix, p: int, rows: int | None = None, cols: int | None = None) -> list[list[Fraction]]:
    """Basis (list of column vectors) of the kernel of ``a`` as a free Z_(p)-module."""
    s = snf(a, p, rows, cols)
    return [[s.V[j][k] for j in range(s.cols)] for k in range(s.rank, s.cols)]


def in_span(a: Matrix, b: list, p: int, rows: int | None = None, cols: int | None = None,
            s: SNF | None = None) -> bool:
    return solve(a, b, p, rows, cols, s) is not None
