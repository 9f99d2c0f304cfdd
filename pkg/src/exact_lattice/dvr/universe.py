"""Truncated category of finitely generated Z_(p)-modules as a core universe."""
from __future__ import annotations

from fractions import Fraction

from ..core.universe import NotEnoughInjectives, Realization, Step, Summand, Universe
from ..linalg import local_pid as lp
from . import ext as dext
from .modules import (DvrModule, DvrMorphism, cokernel, ext_group, hom_generators,
                      is_injective, is_ses)

R = DvrModule.free()


def T(e: int) -> DvrModule:
    return DvrModule.cyclic(e)


def _primitive_root(p: int) -> int:
    for g in range(2, p):
        if all(pow(g, (p - 1) // q, p) != 1 for q in range(2, p) if (p - 1) % q == 0 and
               all(q % r for r in range(2, q))):
            return g
    return 1


class DvrUniverse(Universe):
    """Indecomposables ``R/P^1 .. R/P^top`` and ``R``; the scan adds ``R/P^(top+1)``.

    ``top = N + margin``: the extra exponents keep the structures attached to
    different closed sets of ``{1..N}`` apart (see :mod:`.ziegler`).
    """

    def __init__(self, p: int = 2, N: int = 5, margin: int = 1, free: bool = True):
        self.p, self.N, self.margin, self.free = p, N, margin, free
        self.top = N + margin
        self._pool = tuple(T(e) for e in range(1, self.top + 1)) + ((R,) if free else ())
        self._scan = self._pool + (T(self.top + 1),)
        self.name = f"dvr(p={p}, N={N})"
        self._hom_cache: dict = {}
        self._real_cache: dict = {}

    @property
    def pool(self):
        return self._pool

    @property
    def scan(self):
        return self._scan

    def contains(self, obj) -> bool:
        # every indecomposable is representable; the pool only bounds the scans
        return isinstance(obj, DvrModule) and obj.ngens == 1

    def ext_orders(self, C, A):
        return ext_group(C, A, self.p)

    def hom_gens(self, X, Y):
        key = (X, Y)
        if key not in self._hom_cache:
            self._hom_cache[key] = hom_generators(X, Y, self.p)
        return self._hom_cache[key]

    def push(self, f, C, A, A2, x):
        return dext.push(f, C, x, self.p)

    def pull(self, g, C2, C, A, x):
        return dext.pull(g, A, x, self.p)

    def unit_scalars(self, C, A):
        units = [-1, 1 + self.p]
        if self.p > 2:
            units.append(_primitive_root(self.p))
        return units

    def describe(self, obj) -> str:
        return str(obj)

    def describe_morphism(self, f) -> str:
        return f"{f.src} -> {f.dst} by {[[str(v) for v in r] for r in f.matrix]}"

    def realize(self, C, A, x) -> Realization:
        key = (C, A, tuple(x))
        hit = self._real_cache.get(key)
        if hit is None:
            ses = dext.realize(C, A, x, self.p)
            hit = Realization(C, A, tuple(x), ses, split_summands(ses, self.p))
            self._real_cache[key] = hit
        return hit

    def coresolution_step(self, X, injectives, structure) -> Step:
        middle, coker, seqs = [], [], []
        for obj in X:
            J, Y, ses = hull(obj, injectives, structure, self.p)
            middle += J
            coker += Y
            seqs.append(ses)
        return Step(tuple(X), tuple(middle), tuple(coker), tuple(seqs))


def split_summands(ses, p: int) -> tuple[Summand, ...]:
    """Cyclic summands of the middle term with inclusion/projection components."""
    B = ses.B
    out = []
    for j, e in enumerate(B.exps):
        obj = R if e is None else T(e)
        inc = DvrMorphism.make(ses.A, obj, [list(ses.i.matrix[j])], p)
        proj = DvrMorphism.make(obj, ses.C, [[r[j]] for r in ses.d.matrix], p)
        out.append(Summand(obj, inc, proj))
    return tuple(out)


def _direct_sum_map(X: DvrModule, comps: list[DvrMorphism], p: int) -> DvrMorphism:
    J = DvrModule()
    for c in comps:
        J = J + c.dst
    # canonical order of J may permute the summands: place rows by exponent
    rows_by_obj = sorted(((c.dst.exps[0], c.matrix[0]) for c in comps),
                         key=lambda t: (t[0] is not None, -(t[0] or 0)))
    return DvrMorphism.make(X, J, [list(r) for _, r in rows_by_obj], p)


def _factors(f: DvrMorphism, a: DvrMorphism, p: int) -> bool:
    """Does ``f: X -> I`` factor through ``a: X -> J``?  Both sources cyclic or free."""
    I, J = f.dst, a.dst
    cols = []
    for h in hom_generators(J, I, p):
        ha = h @ a
        cols.append([v for r in ha.matrix for v in r])
    nX = f.src.ngens
    for r, e in enumerate(I.exps):
        if e is not None:
            for c in range(nX):
                v = [Fraction(0)] * (I.ngens * nX)
                v[r * nX + c] = Fraction(p ** e)
                cols.append(v)
    target = [v for r in f.matrix for v in r]
    if not any(target):
        return True
    if not cols:
        return False
    n = len(target)
    mat = [[col[i] for col in cols] for i in range(n)]
    return lp.in_span(mat, target, p, n, len(cols))


def hull(X: DvrModule, injectives, structure, p: int):
    """Minimal left add(injectives)-approximation of ``X``, certified as an inflation of ``structure``.

    Returns (middle summands, cokernel summands, certified ses).
    """
    if X.free_rank:
        raise NotEnoughInjectives(X, "a free module has no inflation into a torsion module")
    comps = [g for I in injectives for g in hom_generators(X, I, p)]
    # greedy elimination keeps a component only if some map to an injective needs it
    k = 0
    while k < len(comps):
        rest = comps[:k] + comps[k + 1:]
        if rest and all(_factors(g, _direct_sum_map(X, rest, p), p) for g in comps):
            comps = rest
        else:
            k += 1
    if not comps:
        raise NotEnoughInjectives(X, "no map to an injective")
    a = _direct_sum_map(X, comps, p)
    if not is_injective(a):
        raise NotEnoughInjectives(X, "the injective approximation is not a monomorphism")
    Y, d = cokernel(a)
    ses = is_ses(X, a.dst, Y, a, d)
    assert ses, ses
    x = dext.class_of(ses, p)
    # membership of the approximation sequence, cell by cell
    idx = 0
    for m in Y.torsion:
        n = len(ext_group(T(m), X, p))
        if tuple(x[idx:idx + n]) not in structure.cell(T(m), X):
            raise NotEnoughInjectives(X, "the approximation is not an inflation of the structure")
        idx += n
    middle = [R if e is None else T(e) for e in a.dst.exps]
    cok = [R if e is None else T(e) for e in Y.exps]
    return middle, cok, ses
