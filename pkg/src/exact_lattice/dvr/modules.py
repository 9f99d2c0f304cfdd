"""Finitely generated modules over R = Z_(p) and their morphisms.

A module is stored in canonical form ``R^f + R/P^{e_1} + ... + R/P^{e_k}`` with
``e_1 >= ... >= e_k >= 1``; its generators are the free ones first, then the
torsion ones in that order.  A morphism ``M -> N`` is a matrix with one column
per generator of ``M`` giving its image in the generators of ``N``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..core.universe import Rejection, ShortExactSeq, StructuralError
from ..linalg import local_pid as lp
from ..linalg.local_pid import SNF, snf, val


@dataclass(frozen=True)
class DvrRing:
    p: int

    def __post_init__(self):
        if self.p < 2 or any(self.p % d == 0 for d in range(2, int(self.p ** 0.5) + 1)):
            raise ValueError(f"{self.p} is not prime")


@dataclass(frozen=True, order=True)
class DvrModule:
    free_rank: int = 0
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        if self.free_rank < 0 or any(e < 1 for e in self.torsion):
            raise StructuralError(f"bad module data {self.free_rank}, {self.torsion}")
        object.__setattr__(self, "torsion", tuple(sorted(self.torsion, reverse=True)))

    @classmethod
    def cyclic(cls, e: int) -> "DvrModule":
        return cls(0, (e,))

    @classmethod
    def free(cls, n: int = 1) -> "DvrModule":
        return cls(n, ())

    @property
    def ngens(self) -> int:
        return self.free_rank + len(self.torsion)

    @property
    def exps(self) -> list[int | None]:
        """Annihilator exponent per generator, None for free generators."""
        return [None] * self.free_rank + list(self.torsion)

    @property
    def is_zero(self) -> bool:
        return self.ngens == 0

    @property
    def is_torsion(self) -> bool:
        return self.free_rank == 0

    @property
    def length(self) -> int:
        if self.free_rank:
            raise ValueError("free modules have infinite length")
        return sum(self.torsion)

    def relations(self, p: int) -> lp.Matrix:
        """Columns p^{e_j} * g_j for the torsion generators."""
        n = self.ngens
        cols = [j for j, e in enumerate(self.exps) if e is not None]
        return [[Fraction(p ** self.exps[j]) if i == j else Fraction(0) for j in cols] for i in range(n)]

    def __add__(self, other: "DvrModule") -> "DvrModule":
        return DvrModule(self.free_rank + other.free_rank, self.torsion + other.torsion)

    def __str__(self) -> str:
        parts = ["R"] * self.free_rank + [f"R/P^{e}" if e > 1 else "R/P" for e in self.torsion]
        return " + ".join(parts) if parts else "0"


def ZERO() -> DvrModule:
    return DvrModule()


def reduce_entry(x, e: int | None, p: int):
    """Normal form of a coefficient in a summand of exponent ``e``."""
    if e is None:
        return lp.frac(x)
    return Fraction(lp.mod_pk(x, p, e))


@dataclass(frozen=True)
class DvrMorphism:
    src: DvrModule
    dst: DvrModule
    matrix: tuple  # rows = dst generators, columns = src generators
    p: int

    @classmethod
    def make(cls, src: DvrModule, dst: DvrModule, rows, p: int) -> "DvrMorphism":
        rows = [[lp.frac(x) for x in r] for r in rows] if rows else []
        if len(rows) != dst.ngens or any(len(r) != src.ngens for r in rows):
            if not (dst.ngens == 0 or src.ngens == 0):
                raise StructuralError(f"matrix shape does not match {src} -> {dst}")
        rows = rows if dst.ngens else []
        if src.ngens == 0:
            rows = [[] for _ in range(dst.ngens)]
        for i, e_i in enumerate(dst.exps):
            for j, e_j in enumerate(src.exps):
                x = rows[i][j]
                if not lp.is_integral(x, p):
                    raise StructuralError(f"entry ({i},{j}) is not p-integral")
                rows[i][j] = reduce_entry(x, e_i, p)
                if e_j is None:
                    continue
                # image of a torsion generator must be killed by p^{e_j}
                if e_i is None:
                    if rows[i][j] != 0:
                        raise StructuralError(f"entry ({i},{j}) maps torsion into a free summand")
                elif rows[i][j] and val(rows[i][j], p) + e_j < e_i:
                    raise StructuralError(f"entry ({i},{j}) is not well defined on R/P^{e_j}")
        return cls(src, dst, tuple(tuple(r) for r in rows), p)

    @classmethod
    def zero(cls, src, dst, p):
        return cls.make(src, dst, [[0] * src.ngens for _ in range(dst.ngens)], p)

    @classmethod
    def identity(cls, m, p):
        return cls.make(m, m, lp.identity(m.ngens), p)

    @property
    def rows(self) -> lp.Matrix:
        return [list(r) for r in self.matrix]

    def __matmul__(self, other: "DvrMorphism") -> "DvrMorphism":
        if other.dst != self.src:
            raise StructuralError("morphisms are not composable")
        prod = lp.matmul(self.rows, other.rows, inner=self.src.ngens, cols=other.src.ngens)
        return DvrMorphism.make(other.src, self.dst, prod, self.p)

    def is_zero(self) -> bool:
        return all(x == 0 for r in self.matrix for x in r)

    def __str__(self) -> str:
        return f"{self.src} -> {self.dst}: {[[str(x) for x in r] for r in self.matrix]}"


def smith_normal_form(rows: lp.Matrix, p: int, nrows: int | None = None, ncols: int | None = None) -> SNF:
    s = snf(rows, p, nrows, ncols)
    assert lp.verify_snf(rows, s), "SNF certificate failed"
    return s


def _image_matrix(f: DvrMorphism) -> lp.Matrix:
    """``[f | relations of dst]`` whose column span is the preimage lattice of im f."""
    return lp.hstack(f.rows, f.dst.relations(f.p), rows=f.dst.ngens)


def cokernel(f: DvrMorphism) -> tuple[DvrModule, DvrMorphism]:
    mod, to_can, _ = canonicalize(f.dst.ngens, _image_matrix(f), f.p)
    return mod, DvrMorphism.make(f.dst, mod, to_can, f.p)


def canonicalize(n: int, rel: lp.Matrix, p: int):
    """Canonical form of ``R^n / span(rel)``.

    Returns ``(module, to_can, from_can)`` where ``to_can`` maps old generators
    to canonical ones and ``from_can`` lifts canonical generators back.
    """
    ncols = len(rel[0]) if rel and rel[0] else 0
    if n == 0:
        return DvrModule(), [], []
    if ncols == 0:
        return DvrModule(n, ()), lp.identity(n), lp.identity(n)
    s = smith_normal_form(rel, p, n, ncols)
    uinv = lp.inverse(s.U, p)
    tors = [(v, i) for i, v in enumerate(s.valuations) if v > 0]
    free = list(range(s.rank, n))
    tors.sort(key=lambda t: -t[0])
    order = free + [i for _, i in tors]
    mod = DvrModule(len(free), tuple(v for v, _ in tors))
    to_can = [list(s.U[i]) for i in order]
    from_can = [[uinv[r][i] for i in order] for r in range(n)]
    return mod, to_can, from_can


def kernel_generators(f: DvrMorphism) -> list[list[Fraction]]:
    """Vectors in R^{src gens} generating ker f modulo the relations of src."""
    a = f.src.ngens
    m = _image_matrix(f)
    cols = len(m[0]) if m and m[0] else 0
    if f.dst.ngens == 0:
        return [[Fraction(int(i == j)) for i in range(a)] for j in range(a)]
    ker = lp.kernel(m, f.p, f.dst.ngens, cols)
    return [v[:a] for v in ker]


def _in_submodule(vec, gens_matrix: lp.Matrix, n: int, p: int) -> bool:
    if not any(vec):
        return True
    cols = len(gens_matrix[0]) if gens_matrix and gens_matrix[0] else 0
    if cols == 0:
        return False
    return lp.in_span(gens_matrix, vec, p, n, cols)


def is_injective(f: DvrMorphism) -> bool:
    rel = f.src.relations(f.p)
    return all(_in_submodule(v, rel, f.src.ngens, f.p) for v in kernel_generators(f))


def is_surjective(f: DvrMorphism) -> bool:
    return cokernel(f)[0].is_zero


def is_ses(A: DvrModule, B: DvrModule, C: DvrModule, i: DvrMorphism, d: DvrMorphism):
    """Certified ``A >-> B ->> C`` or a :class:`Rejection` naming the failed condition."""
    if (i.src, i.dst, d.src, d.dst) != (A, B, B, C):
        raise StructuralError("morphism endpoints do not match A -> B -> C")
    if i.p != d.p:
        raise StructuralError("morphisms over different rings")
    p = i.p
    if not (d @ i).is_zero():
        return Rejection("not_composable_to_zero", "d . i != 0")
    if not is_injective(i):
        return Rejection("not_injective", "i has a nonzero kernel")
    if not is_surjective(d):
        return Rejection("not_surjective", f"coker d = {cokernel(d)[0]}")
    span_i = _image_matrix(i)
    for v in kernel_generators(d):
        if not _in_submodule(v, span_i, B.ngens, p):
            return Rejection("homology_nonzero", "ker d is larger than im i")
    return ShortExactSeq(A, B, C, i, d)


def exactness_defects(A: DvrModule, B: DvrModule, C: DvrModule, i: DvrMorphism, d: DvrMorphism) -> set[str]:
    """Which of ``0 -> A -> B -> C -> 0`` fail: subsets of {"left", "middle", "right", "complex"}."""
    if not (d @ i).is_zero():
        return {"complex"}
    out = set()
    if not is_injective(i):
        out.add("left")
    if not is_surjective(d):
        out.add("right")
    span_i = _image_matrix(i)
    if any(not _in_submodule(v, span_i, B.ngens, i.p) for v in kernel_generators(d)):
        out.add("middle")
    return out


def hom_group(A: DvrModule, B: DvrModule, p: int) -> tuple[int, ...]:
    """Cyclic orders of Hom(A, B); 0 stands for a free summand R."""
    out = []
    for ea in A.exps:
        for eb in B.exps:
            if ea is None:
                out.append(0 if eb is None else p ** eb)
            elif eb is not None:
                out.append(p ** min(ea, eb))
    return tuple(out)


def hom_generators(A: DvrModule, B: DvrModule, p: int) -> list[DvrMorphism]:
    """Elementary generators, one per nonzero summand pair."""
    gens = []
    for j, ea in enumerate(A.exps):
        for i, eb in enumerate(B.exps):
            if ea is not None and eb is None:
                continue
            c = 1 if ea is None or eb is None else p ** max(0, eb - ea)
            rows = [[c if (r, s) == (i, j) else 0 for s in range(A.ngens)] for r in range(B.ngens)]
            gens.append(DvrMorphism.make(A, B, rows, p))
    return gens


def ext_group(C: DvrModule, A: DvrModule, p: int) -> tuple[int, ...]:
    """Cyclic orders of Ext^1(C, A), ordered by (torsion generator of C, generator of A)."""
    out = []
    for m in C.torsion:
        for e in A.exps:
            out.append(p ** (m if e is None else min(m, e)))
    return tuple(out)


def hom_length(M: DvrModule, k: int) -> int:
    """log_p |Hom(M, R/P^k)|."""
    return M.free_rank * k + sum(min(e, k) for e in M.torsion)
