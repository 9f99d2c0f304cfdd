"""Membership tests for E_L (Hom(-, R/P^n) exact for n in L) and E' (torsion exact)."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from ..core.universe import ShortExactSeq
from ..linalg import local_pid as lp
from .modules import DvrModule, DvrMorphism, hom_length, is_ses


@dataclass(frozen=True)
class ExponentSet:
    """Finite set of exponents, plus a flag for an infinite tail beyond the bound."""

    finite: frozenset = frozenset()
    infinite_tail: bool = False

    @classmethod
    def of(cls, it: Iterable[int], infinite_tail: bool = False) -> "ExponentSet":
        vals = frozenset(int(n) for n in it)
        if any(n < 1 for n in vals):
            raise ValueError("exponents must be positive")
        return cls(vals, infinite_tail)

    def __iter__(self):
        return iter(sorted(self.finite))

    def to_json(self) -> dict:
        return {"exponents": sorted(self.finite), "infinite_tail": self.infinite_tail}


def _hom_to_cyclic(M: DvrModule, k: int, p: int):
    """Generators eta_j of Hom(M, R/P^k): eta_j sends g_j to p^{shift_j}, the rest to 0."""
    shifts, orders = [], []
    for e in M.exps:
        if e is None:
            shifts.append(0)
            orders.append(k)
        else:
            shifts.append(max(0, k - e))
            orders.append(min(e, k))
    return shifts, orders


def restriction_surjective(i: DvrMorphism, k: int) -> bool:
    """Is ``i^*: Hom(B, R/P^k) -> Hom(A, R/P^k)`` onto?  Decided by SNF."""
    p = i.p
    A, B = i.src, i.dst
    sb, _ = _hom_to_cyclic(B, k, p)
    sa, oa = _hom_to_cyclic(A, k, p)
    if A.ngens == 0:
        return True
    # column for eta_j of B: its restriction, written in the eta'_t of A
    cols = []
    for j in range(B.ngens):
        col = []
        for t in range(A.ngens):
            v = Fraction(p) ** sb[j] * i.matrix[j][t]
            col.append(v / Fraction(p) ** sa[t])
        cols.append(col)
    rel = [[Fraction(p ** oa[t]) if r == t else Fraction(0) for t in range(A.ngens)] for r in range(A.ngens)]
    img = [[c[r] for c in cols] for r in range(A.ngens)] if cols else [[] for _ in range(A.ngens)]
    full = lp.hstack(img, rel, rows=A.ngens)
    s = lp.snf(full, p, A.ngens, len(full[0]))
    return s.rank == A.ngens and all(v == 0 for v in s.valuations)


def is_exact_EL(ses: ShortExactSeq, L) -> bool:
    """``Hom(ses, R/P^n)`` exact for every n in L (right map surjectivity via SNF)."""
    return all(restriction_surjective(ses.i, n) for n in L)


def is_exact_EL_by_count(ses: ShortExactSeq, L) -> bool:
    """Same test by counting: |Hom(B, T)| = |Hom(A, T)| |Hom(C, T)|."""
    return all(hom_length(ses.B, n) == hom_length(ses.A, n) + hom_length(ses.C, n) for n in L)


def in_EL_by_middle(A: DvrModule, B: DvrModule, C: DvrModule, L) -> bool:
    return all(hom_length(B, n) == hom_length(A, n) + hom_length(C, n) for n in L)


def _sub(f: DvrMorphism, rows_idx, cols_idx, src: DvrModule, dst: DvrModule) -> DvrMorphism:
    return DvrMorphism.make(src, dst, [[f.matrix[r][c] for c in cols_idx] for r in rows_idx], f.p)


def torsion_part(ses: ShortExactSeq):
    """``t(A) -> t(B) -> t(C)`` and ``A/tA -> B/tB -> C/tC`` as matrix blocks."""
    A, B, C, i, d = ses.A, ses.B, ses.C, ses.i, ses.d
    tA, tB, tC = (DvrModule(0, M.torsion) for M in (A, B, C))
    fA, fB, fC = (DvrModule(M.free_rank, ()) for M in (A, B, C))
    tor = lambda M: list(range(M.free_rank, M.ngens))
    fre = lambda M: list(range(M.free_rank))
    t_i = _sub(i, tor(B), tor(A), tA, tB)
    t_d = _sub(d, tor(C), tor(B), tB, tC)
    f_i = _sub(i, fre(B), fre(A), fA, fB)
    f_d = _sub(d, fre(C), fre(B), fB, fC)
    return (tA, tB, tC, t_i, t_d), (fA, fB, fC, f_i, f_d)


def is_exact_Eprime(ses: ShortExactSeq) -> bool:
    """Both the torsion subsequence and the torsion-free quotient sequence are short exact."""
    t, f = torsion_part(ses)
    return bool(is_ses(*t)) and bool(is_ses(*f))


def is_exact_Eprime_L(ses: ShortExactSeq, L) -> bool:
    return is_exact_Eprime(ses) and is_exact_EL(ses, L)
