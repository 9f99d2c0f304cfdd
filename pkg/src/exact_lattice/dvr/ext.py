"""Ext^1 over Z_(p): explicit classes, realizations, labels and the p-action.

A class in Ext^1(C, A) is stored as the tuple of coordinates of
``phi_j in A / p^{m_j} A`` for every torsion generator ``c_j`` (exponent
``m_j``) of ``C``.  The realizing sequence has middle term

    B = (A + R c_1 + ... + R c_k) / (relations of A, p^{m_j} c_j - phi_j)

with ``i`` the inclusion of ``A`` and ``d`` the projection onto the ``c_j``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from ..core.universe import ShortExactSeq
from ..linalg import local_pid as lp
from .modules import (DvrModule, DvrMorphism, canonicalize, ext_group, is_ses)


def _blocks(C: DvrModule, A: DvrModule):
    """(index of torsion gen of C, its exponent, gen index of A, exponent of A gen) per coordinate."""
    out = []
    for jj, m in enumerate(C.torsion):
        j = C.free_rank + jj
        for k, e in enumerate(A.exps):
            out.append((j, m, k, e))
    return out


def _coord_order(m: int, e: int | None) -> int:
    return m if e is None else min(m, e)


def normalize(C: DvrModule, A: DvrModule, x, p: int) -> tuple[int, ...]:
    orders = ext_group(C, A, p)
    return tuple(int(lp.mod_pk(v, p, round(math.log(n, p)))) if n > 1 else 0 for v, n in zip(x, orders))


def phi_matrix(C: DvrModule, A: DvrModule, x) -> list[list[Fraction]]:
    """Columns ``phi_j`` (in generators of A) for each torsion generator of C."""
    cols = [[Fraction(0)] * A.ngens for _ in C.torsion]
    for (j, m, k, e), v in zip(_blocks(C, A), x):
        cols[j - C.free_rank][k] = Fraction(v)
    return cols


def realize(C: DvrModule, A: DvrModule, x, p: int) -> ShortExactSeq:
    """Certified sequence ``A >-> B ->> C`` in canonical form with class ``x``."""
    a, c = A.ngens, C.ngens
    n = a + c
    rel_cols = []
    for k, e in enumerate(A.exps):
        if e is not None:
            col = [Fraction(0)] * n
            col[k] = Fraction(p ** e)
            rel_cols.append(col)
    phis = phi_matrix(C, A, x)
    for jj, m in enumerate(C.torsion):
        j = C.free_rank + jj
        col = [-v for v in phis[jj]] + [Fraction(0)] * c
        col[a + j] = Fraction(p ** m)
        rel_cols.append(col)
    rel = [[col[r] for col in rel_cols] for r in range(n)]
    B, to_can, from_can = canonicalize(n, rel, p)
    inc = [[Fraction(int(r == s)) for s in range(a)] for r in range(n)]
    proj = [[Fraction(int(r == a + s)) for r in range(n)] for s in range(c)]
    i = DvrMorphism.make(A, B, lp.matmul(to_can, inc, inner=n, cols=a) if B.ngens else [], p)
    d = DvrMorphism.make(B, C, lp.matmul(proj, from_can, inner=n, cols=B.ngens) if c else [], p)
    ses = is_ses(A, B, C, i, d)
    if not ses:
        raise AssertionError(f"realization of {x} failed its certificate: {ses}")
    return ses


def class_of(ses: ShortExactSeq, p: int) -> tuple[int, ...]:
    """Ext coordinates of a certified sequence (lift, multiply, pull back along i)."""
    A, B, C, i, d = ses.A, ses.B, ses.C, ses.i, ses.d
    relB = B.relations(p)
    # d as a map on R^{B gens}; lifts solve d b = c_j modulo relations of C
    dm = lp.hstack(d.rows, C.relations(p), rows=C.ngens)
    im = lp.hstack(i.rows, relB, rows=B.ngens)
    x = []
    phis = []
    for jj, m in enumerate(C.torsion):
        j = C.free_rank + jj
        target = [Fraction(int(r == j)) for r in range(C.ngens)]
        sol = lp.solve(dm, target, p, C.ngens, len(dm[0]))
        b = sol[:B.ngens]
        pb = [v * p ** m for v in b]
        sol2 = lp.solve(im, pb, p, B.ngens, len(im[0]))
        phis.append(sol2[:A.ngens])
    for (j, m, k, e) in _blocks(C, A):
        x.append(phis[j - C.free_rank][k])
    return normalize(C, A, x, p)


def push(f: DvrMorphism, C: DvrModule, x, p: int) -> tuple[int, ...]:
    """Pushout along ``f: A -> A2``: ``phi_j -> f phi_j``."""
    A, A2 = f.src, f.dst
    phis = phi_matrix(C, A, x)
    new = [[sum((f.matrix[r][k] * col[k] for k in range(A.ngens)), Fraction(0)) for r in range(A2.ngens)]
           for col in phis]
    out = [new[j - C.free_rank][k] for (j, m, k, e) in _blocks(C, A2)]
    return normalize(C, A2, out, p)


def pull(g: DvrMorphism, A: DvrModule, x, p: int) -> tuple[int, ...]:
    """Pullback along ``g: C2 -> C``: ``phi'_j = sum_k g_kj p^{m'_j - m_k} phi_k``."""
    C2, C = g.src, g.dst
    phis = phi_matrix(C, A, x)
    new = []
    for jj, m2 in enumerate(C2.torsion):
        j = C2.free_rank + jj
        col = [Fraction(0)] * A.ngens
        for kk, m in enumerate(C.torsion):
            k = C.free_rank + kk
            coef = g.matrix[k][j] * Fraction(p) ** (m2 - m)
            for r in range(A.ngens):
                col[r] += coef * phis[kk][r]
        new.append(col)
    out = [new[j - C2.free_rank][k] for (j, m, k, e) in _blocks(C2, A)]
    return normalize(C2, A, out, p)


def baer_sum(s1: ShortExactSeq, s2: ShortExactSeq, p: int) -> ShortExactSeq:
    """Baer sum built by the pullback/pushout recipe, independent of coordinates.

    Pull back ``B1 + B2 -> C + C`` along the diagonal of ``C``, then push out
    along the codiagonal of ``A``.  Returned in canonical form.
    """
    A, C = s1.A, s1.C
    B1, B2 = s1.B, s2.B
    n1, n2, a, c = B1.ngens, B2.ngens, A.ngens, C.ngens
    # E = {(b1, b2): d1 b1 = d2 b2} / {(i1 a, -i2 a)}; the fibre product is a
    # free lattice in R^{n1+n2} containing the relations of B1 + B2
    n = n1 + n2
    d = lp.hstack(s1.d.rows, [[-v for v in r] for r in s2.d.rows], rows=c)
    relC = C.relations(p)
    mat = lp.hstack(d, relC, rows=c)
    ker = [v[:n] for v in lp.kernel(mat, p, c, len(mat[0]))] if c else [[Fraction(int(i == j)) for i in range(n)] for j in range(n)]
    # fibre product F = span(ker) + relations(B1+B2); quotient by antidiagonal image of A
    relsB = []
    for e_idx, e in enumerate(B1.exps):
        if e is not None:
            col = [Fraction(0)] * n
            col[e_idx] = Fraction(p ** e)
            relsB.append(col)
    for e_idx, e in enumerate(B2.exps):
        if e is not None:
            col = [Fraction(0)] * n
            col[n1 + e_idx] = Fraction(p ** e)
            relsB.append(col)
    anti = []
    for t in range(a):
        anti.append([s1.i.matrix[r][t] for r in range(n1)] + [-s2.i.matrix[r][t] for r in range(n2)])
    # express F in coordinates of its own basis: F is a free module on ker-basis modulo relsB (which lie in F)
    gens = ker
    g = len(gens)
    G = [[gens[col][r] for col in range(g)] for r in range(n)]
    rel_in_F = []
    for v in relsB + anti:
        sol = lp.solve(G, v, p, n, g)
        assert sol is not None, "relation outside the fibre product"
        rel_in_F.append(sol)
    relF = [[col[r] for col in rel_in_F] for r in range(g)] if rel_in_F else [[] for _ in range(g)]
    Bs, to_can, from_can = canonicalize(g, relF, p)
    # i: a -> class of (i1 a, 0) ; d: (b1, b2) -> d1 b1
    i_cols = []
    for t in range(a):
        v = [s1.i.matrix[r][t] for r in range(n1)] + [Fraction(0)] * n2
        i_cols.append(lp.solve(G, v, p, n, g))
    i_rows = lp.matmul(to_can, [[col[r] for col in i_cols] for r in range(g)], inner=g, cols=a) if Bs.ngens else []
    d_on_F = lp.matmul(s1.d.rows, [row[:] for row in G[:n1]], inner=n1, cols=g)
    d_rows = lp.matmul(d_on_F, from_can, inner=g, cols=Bs.ngens) if c else []
    i = DvrMorphism.make(A, Bs, i_rows, p)
    dd = DvrMorphism.make(Bs, C, d_rows, p)
    ses = is_ses(A, Bs, C, i, dd)
    if not ses:
        raise AssertionError(f"Baer sum failed its certificate: {ses}")
    return ses


@dataclass(frozen=True)
class ExtElement:
    """Class ``value`` in Ext^1(R/P^m, R/P^l) (or Ext^1(R/P^m, R) when ``l`` is None)."""

    m: int
    l: int | None
    value: int
    p: int

    def __post_init__(self):
        object.__setattr__(self, "value", self.value % self.order)

    @property
    def s(self) -> int:
        return self.m if self.l is None else min(self.m, self.l)

    @property
    def order(self) -> int:
        return self.p ** self.s

    @property
    def case(self) -> str:
        if self.l is None:
            return "b"
        return "a1" if self.l <= self.m else "a2"

    @property
    def k(self) -> int:
        """p-adic valuation of the class (``s`` for the split class)."""
        v = lp.val(self.value, self.p)
        return self.s if v == math.inf else int(v)

    @property
    def is_split(self) -> bool:
        return self.value == 0

    @property
    def label(self) -> tuple:
        k, m, l = self.k, self.m, self.l
        if self.case == "b":
            return ("sigma", k)
        if self.case == "a1":
            return ("sigma", k, m + l - k)
        return ("sigma", m + l - k, k)

    @property
    def middle(self) -> DvrModule:
        lab = self.label
        if self.case == "b":
            return DvrModule(1, (lab[1],) if lab[1] else ())
        return DvrModule(0, tuple(e for e in lab[1:] if e > 0))

    def label_str(self) -> str:
        lab = self.label
        tag = "sigma_" + ",".join(map(str, lab[1:]))
        return tag + (" (split)" if self.is_split else "")

    @property
    def C(self) -> DvrModule:
        return DvrModule.cyclic(self.m)

    @property
    def A(self) -> DvrModule:
        return DvrModule.free() if self.l is None else DvrModule.cyclic(self.l)

    @classmethod
    def from_label(cls, m: int, l: int | None, label, p: int, unit: int = 1) -> "ExtElement":
        lab = tuple(label)
        if lab and lab[0] == "sigma":
            lab = lab[1:]
        s = m if l is None else min(m, l)
        if l is None:
            if len(lab) != 1 or not 0 <= lab[0] <= s:
                raise ValueError(f"invalid label {label} for Ext(R/P^{m}, R)")
            k = lab[0]
        else:
            if len(lab) != 2 or lab[0] + lab[1] != m + l:
                raise ValueError(f"invalid label {label} for Ext(R/P^{m}, R/P^{l})")
            k = lab[0] if l <= m else lab[1]
            if not 0 <= k <= s:
                raise ValueError(f"invalid label {label} for Ext(R/P^{m}, R/P^{l})")
        if unit % p == 0:
            raise ValueError("unit must be prime to p")
        return cls(m, l, unit * p ** k, p)

    def coords(self) -> tuple[int, ...]:
        return (self.value,)


def p_action(x: ExtElement) -> ExtElement:
    return ExtElement(x.m, x.l, x.value * x.p, x.p)


def labels(m: int, l: int | None, p: int) -> list[tuple]:
    s = m if l is None else min(m, l)
    return [ExtElement(m, l, p ** k if k < s else 0, p).label for k in range(s + 1)]


def rad_ext(n: int, C: DvrModule, A: DvrModule, p: int):
    """``p^n Ext^1(C, A)``: cyclic orders per coordinate and the generator labels.

    Returns ``(orders, generators)``; each generator is a full coordinate tuple.
    """
    full = ext_group(C, A, p)
    orders = []
    gens = []
    for idx, ((j, m, k, e), nfull) in enumerate(zip(_blocks(C, A), full)):
        s = _coord_order(m, e)
        orders.append(p ** max(0, s - n))
        g = [0] * len(full)
        g[idx] = p ** n % nfull if n < s else 0
        gens.append(tuple(g))
    return tuple(orders), gens


def rad_elements(n: int, C: DvrModule, A: DvrModule, p: int) -> frozenset:
    from ..linalg import abelian
    full = ext_group(C, A, p)
    return abelian.span(rad_ext(n, C, A, p)[1], full)


def rad_generator_labels(n: int, m: int, l: int | None, p: int) -> list[tuple]:
    """Labels of the nonzero classes ``p^n, p^{n+1}, ...`` generating rad^n."""
    s = m if l is None else min(m, l)
    return [ExtElement(m, l, p ** k, p).label for k in range(n, s)]
