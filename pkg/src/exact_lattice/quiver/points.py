"""Ziegler points of the Kronecker algebra and Hom-exactness against them.

Pruefer and adic points are evaluated on the tube tower ``S[k]``.  For a
representation ``X`` and a tube ``lam`` put ``M = b - lam a, L = a`` (``M = a,
L = b`` at infinity).  Then

* ``Hom(X, S[k])`` is the space of row sequences ``r_1..r_k`` with
  ``r_1 M = 0`` and ``r_i M = r_{i-1} L``;
* ``Ext(C, S[k])`` is ``(F^{d2})^k`` modulo ``(g_i M - g_{i-1} L)_i``, whose
  annihilator is the space of column sequences with ``M w_k = 0`` and
  ``M w_i = L w_{i+1}``;
* pushing the class ``eta`` along ``r`` gives ``(r_i zM - r_{i-1} zL)_i`` with
  ``zM, zL`` the same combinations of ``(eta_a, eta_b)``.

The tower maps become row shifts (inclusions) and truncations (projections).
Levels ``k0 .. k0 + window`` are inspected, ``k0`` the total dimension
involved, and each level is moved ``k0 + window - 1`` and ``k0 + window``
steps along the tower; both must agree or StabilizationFailure is raised.
The generic point is the tube at ``lam = T`` of length one over ``F_p(T)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from ..linalg import funcfield, modp
from .kronecker import INF, Label, build_indec
from .rep import ExtSpace, Rep, class_of, defect_matrix, ext_dim, hom_basis, hom_dim, left_annihilator, push_matrix


class StabilizationFailure(RuntimeError):
    def __init__(self, point, what: str, levels):
        super().__init__(f"{point}: {what} did not stabilize on levels {levels}")
        self.point, self.what, self.levels = point, what, levels


@dataclass(frozen=True)
class FiniteDim:
    label: Label

    def __str__(self) -> str:
        return str(self.label)


@dataclass(frozen=True)
class Prufer:
    lam: object

    def __str__(self) -> str:
        return f"S_{'oo' if self.lam == INF else self.lam}[oo]"


@dataclass(frozen=True)
class Adic:
    lam: object

    def __str__(self) -> str:
        return f"adic_{'oo' if self.lam == INF else self.lam}"


@dataclass(frozen=True)
class Generic:
    def __str__(self) -> str:
        return "G"


def parse_point(text: str):
    t = text.strip()
    if t in ("G", "generic"):
        return Generic()
    for prefix, cls in (("prufer:", Prufer), ("adic:", Adic)):
        if t.startswith(prefix):
            v = t[len(prefix):]
            return cls(INF if v in ("oo", "inf") else int(v))
    from .kronecker import parse_label
    return FiniteDim(parse_label(t))


# tube recursions ------------------------------------------------------------

def pencil(X: Rep, lam) -> tuple[np.ndarray, np.ndarray]:
    p = X.p
    if lam == INF:
        return X.a % p, X.b % p
    return (X.b - lam * X.a) % p, X.a % p


def _chain(M: np.ndarray, L: np.ndarray, k: int, p: int) -> np.ndarray:
    """Rows ``(r_1..r_k)`` with ``r_1 M = 0`` and ``r_i M = r_{i-1} L``, as an ``s x (k n)`` basis."""
    n, m = M.shape
    basis = np.zeros((0, 0), dtype=np.int64)
    for i in range(k):
        if i == 0:
            stack = M
            s = 0
        else:
            s = basis.shape[0]
            last = basis[:, -n:] if n else np.zeros((s, 0), np.int64)
            stack = np.vstack([modp.mul(last, L, p), (-M) % p]) if m else np.zeros((s + n, 0), np.int64)
        sol = left_annihilator(stack, p)  # rows (c, r)
        c, r = sol[:, :s], sol[:, s:]
        prev = modp.mul(c, basis, p) if s else np.zeros((sol.shape[0], i * n), np.int64)
        basis = np.hstack([prev, r]) % p
    return basis


@lru_cache(maxsize=4096)
def hom_to_tube(X: Rep, lam, k: int) -> np.ndarray:
    """Basis of ``Hom(X, S_lam[k])`` as row sequences (``s x k d1``)."""
    M, L = pencil(X, lam)
    out = _chain(M, L, k, X.p)
    out.setflags(write=False)
    return out


@lru_cache(maxsize=4096)
def ext_annihilator(C: Rep, lam, k: int) -> np.ndarray:
    """Basis of the annihilator of the relations of ``Ext(C, S_lam[k])`` (``s x k d2``).

    Components are listed as ``w_1..w_k``.
    """
    M, L = pencil(C, lam)
    # u_j = w_{k+1-j} satisfies u_1 M^T = 0, u_j M^T = u_{j-1} L^T
    rev = _chain(M.T % C.p, L.T % C.p, k, C.p)
    d2 = C.d2
    if not rev.size:
        return rev.reshape(rev.shape[0], k * d2)
    blocks = [rev[:, j * d2:(j + 1) * d2] for j in range(k)]
    out = np.hstack(blocks[::-1])
    out.setflags(write=False)
    return out


def _zeta(C: Rep, A: Rep, lam) -> tuple[np.ndarray, np.ndarray]:
    """Matrices taking the ambient class vector ``(eta_a, eta_b)`` to ``vec(zM), vec(zL)``."""
    n = A.d1 * C.d2
    I = np.eye(n, dtype=np.int64)
    Z = np.zeros((n, n), dtype=np.int64)
    p = C.p
    if lam == INF:
        return np.hstack([I, Z]), np.hstack([Z, I])
    return np.hstack([(-lam * I) % p, I]), np.hstack([I, Z])


def _push_equations(C: Rep, A: Rep, lam, homs: np.ndarray, ann: np.ndarray, k: int) -> np.ndarray:
    """Equations on the ambient class vector for ``<push_r(eta), w> = 0`` over all ``r, w``."""
    p = C.p
    d1A, d2C = A.d1, C.d2
    amb = 2 * d1A * d2C
    if not homs.size or not ann.size:
        return np.zeros((0, amb), dtype=np.int64)
    R = homs.reshape(homs.shape[0], k, d1A)
    W = ann.reshape(ann.shape[0], k, d2C)
    Rprev = np.concatenate([np.zeros((R.shape[0], 1, d1A), np.int64), R[:, :-1]], axis=1)
    # coefficient of zM[p,q]: sum_i r_i[p] w_i[q]; of zL[p,q]: -sum_i r_{i-1}[p] w_i[q]
    cM = np.einsum("sip,tiq->stpq", R, W).reshape(-1, d1A * d2C) % p
    cL = (-np.einsum("sip,tiq->stpq", Rprev, W)).reshape(-1, d1A * d2C) % p
    zM, zL = _zeta(C, A, lam)
    return (modp.mul(cM, zM, p) + modp.mul(cL, zL, p)) % p


def _solution(eqs: np.ndarray, amb: int, p: int) -> np.ndarray:
    if amb == 0:
        return np.zeros((0, 0), dtype=np.int64)
    if not eqs.shape[0]:
        return np.eye(amb, dtype=np.int64)
    return modp.nullspace(eqs, p)


def _same_span(a: np.ndarray, b: np.ndarray, p: int) -> bool:
    ra, rb = modp.rank(a, p) if a.size else 0, modp.rank(b, p) if b.size else 0
    if ra != rb:
        return False
    if not ra:
        return True
    return modp.rank(np.hstack([a, b]), p) == ra


def _intersect(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """Column basis of ``span(a) & span(b)``."""
    if not a.size or not b.size:
        return np.zeros((a.shape[0], 0), dtype=np.int64)
    ns = modp.nullspace(np.hstack([a, (-b) % p]), p)
    if not ns.size:
        return np.zeros((a.shape[0], 0), dtype=np.int64)
    v = modp.mul(a, ns[:a.shape[1]], p)
    return modp.column_space(v, p)


# exact subspaces ------------------------------------------------------------

@dataclass
class ExactSubspace:
    """``E^pt(C, A)`` as a span in the ambient space of ``Ext(C, A)`` (containing the relations)."""

    space: ExtSpace
    span: np.ndarray

    @property
    def dim(self) -> int:
        r = modp.rank(self.span, self.space.p) if self.span.size else 0
        return r - self.space.image.shape[1]

    @property
    def full(self) -> bool:
        return self.dim == self.space.dim

    @property
    def zero(self) -> bool:
        return self.dim == 0

    def contains(self, v) -> bool:
        v = np.asarray(v, dtype=np.int64).reshape(-1, 1)
        if not self.span.size:
            return not (v % self.space.p).any()
        return modp.solve(self.span, v, self.space.p) is not None

    def __and__(self, other: "ExactSubspace") -> "ExactSubspace":
        return ExactSubspace(self.space, _intersect(self.span, other.span, self.space.p))


def _finite_subspace(C: Rep, A: Rep, Y: Rep) -> np.ndarray:
    p = C.p
    amb = 2 * A.d1 * C.d2
    sp_y = defect_matrix(C, Y)
    W = left_annihilator(sp_y, p) if sp_y.size else np.eye(2 * Y.d1 * C.d2, dtype=np.int64)
    rows = [modp.mul(W, push_matrix(C, g), p) for g in hom_basis(A, Y)]
    eqs = np.vstack(rows) if rows and W.size else np.zeros((0, amb), np.int64)
    return _solution(eqs, amb, p)


def _tube_prufer(C: Rep, A: Rep, lam, k: int, j: int) -> np.ndarray:
    p = C.p
    homs = hom_to_tube(A, lam, k)
    if homs.size:
        homs = np.hstack([np.zeros((homs.shape[0], j * A.d1), np.int64), homs])
    ann = ext_annihilator(C, lam, k + j)
    return _solution(_push_equations(C, A, lam, homs, ann, k + j), 2 * A.d1 * C.d2, p)


def _tube_adic(C: Rep, A: Rep, lam, k: int, j: int) -> np.ndarray:
    p = C.p
    homs = hom_to_tube(A, lam, k + j)
    if homs.size:
        homs = homs[:, :k * A.d1]
    ann = ext_annihilator(C, lam, k)
    return _solution(_push_equations(C, A, lam, homs, ann, k), 2 * A.d1 * C.d2, p)


def _tower(C: Rep, A: Rep, pt, k0: int, window: int) -> np.ndarray:
    p = C.p
    f = _tube_prufer if isinstance(pt, Prufer) else _tube_adic
    levels = list(range(k0, k0 + window + 1))
    cum = None
    history = []
    J = k0 + window
    for k in levels:
        near = f(C, A, pt.lam, k, J - 1)
        far = f(C, A, pt.lam, k, J)
        if not _same_span(near, far, p):
            raise StabilizationFailure(pt, f"level {k} along the tower", [k + J - 1, k + J])
        cum = far if cum is None else _intersect(cum, far, p)
        history.append(cum)
    if len(history) > 1 and not _same_span(history[-1], history[-2], p):
        raise StabilizationFailure(pt, "intersection over levels", levels[-2:])
    return cum


def _generic_subspace(C: Rep, A: Rep) -> np.ndarray:
    p = C.p
    amb = 2 * A.d1 * C.d2
    if not amb:
        return _solution(np.zeros((0, 0), np.int64), amb, p)
    K, t = funcfield.field(p)
    MA = funcfield.pencil(A.a, A.b, p)
    MC = funcfield.pencil(C.a, C.b, p)
    homs = funcfield.left_kernel(MA) if A.d2 else [[K.one if i == j else K.zero for i in range(A.d1)]
                                                   for j in range(A.d1)]
    ann = funcfield.right_kernel(MC)
    forms = []
    n = A.d1 * C.d2
    for r in homs:
        for w in ann:
            # <r zM, w> with zM = eta_b - T eta_a
            coef = [r[i] * w[q] for i in range(A.d1) for q in range(C.d2)]
            forms.append([-t * c for c in coef] + coef)
    eqs = funcfield.fp_equations(forms, p) if forms else np.zeros((0, amb), np.int64)
    assert eqs.shape[1] in (0, 2 * n)
    return _solution(eqs.reshape(-1, amb) if eqs.size else np.zeros((0, amb), np.int64), amb, p)


def exact_subspace(C: Rep, A: Rep, pt, window: int = 4, k0: int | None = None) -> ExactSubspace:
    """Classes in ``Ext(C, A)`` whose realizations are ``Hom(-, pt)``-exact."""
    space = ExtSpace(C, A)
    if isinstance(pt, FiniteDim):
        span = _finite_subspace(C, A, build_indec(pt.label, C.p))
    elif isinstance(pt, Rep):
        span = _finite_subspace(C, A, pt)
    elif isinstance(pt, (Prufer, Adic)):
        # Ext(C, S[k]) = 0 for all k iff Ext(C, S) = 0; Hom(A, S[k]) = 0 for all k iff Hom(A, S) = 0
        if not ext_annihilator(C, pt.lam, 1).size or not hom_to_tube(A, pt.lam, 1).size:
            span = np.eye(space.ambient, dtype=np.int64)
        else:
            span = _tower(C, A, pt, k0 if k0 is not None else C.dim + A.dim, window)
    elif isinstance(pt, Generic):
        span = _generic_subspace(C, A)
    else:
        raise TypeError(f"unknown point {pt!r}")
    sub = ExactSubspace(space, span)
    if space.image.size and modp.rank(np.hstack([span, space.image]), C.p) != (modp.rank(span, C.p) if span.size else 0):
        raise AssertionError(f"E^{pt}({C}, {A}) does not contain the split classes")
    return sub


def hom_exactness_at_point(ses, pt, window: int = 4) -> bool:
    """Is ``Hom(ses, pt)`` exact?"""
    if isinstance(pt, FiniteDim):
        Y = build_indec(pt.label, ses.A.p)
        return hom_dim(ses.B, Y) == hom_dim(ses.A, Y) + hom_dim(ses.C, Y)
    v = class_of(ses)
    sub = exact_subspace(ses.C, ses.A, pt, window, k0=ses.B.dim)
    return sub.contains(v)


# vanishing of Hom / Ext into a point ----------------------------------------

def hom_vanishes(X: Rep, pt, window: int = 4) -> bool:
    p = X.p
    if isinstance(pt, Generic):
        MX = funcfield.pencil(X.a, X.b, p)
        return not (funcfield.left_kernel(MX) if X.d2 else X.d1)
    if isinstance(pt, FiniteDim):
        return hom_dim(X, build_indec(pt.label, p)) == 0
    k0 = X.dim
    if isinstance(pt, Prufer):
        return all(not hom_to_tube(X, pt.lam, k).size for k in range(1, k0 + window + 1))
    # adic: stable images of the truncations vanish
    res = []
    J = k0 + window
    for k in range(max(k0, 1), k0 + window + 1):
        near = hom_to_tube(X, pt.lam, k + J - 1)
        far = hom_to_tube(X, pt.lam, k + J)
        a = near[:, :k * X.d1] if near.size else near
        b = far[:, :k * X.d1] if far.size else far
        ra = modp.rank(a, p) if a.size else 0
        rb = modp.rank(b, p) if b.size else 0
        if ra != rb:
            raise StabilizationFailure(pt, "stable image of Hom", [k + J - 1, k + J])
        res.append(rb == 0)
    return all(res)


def ext_vanishes(X: Rep, pt, window: int = 4) -> bool:
    p = X.p
    if isinstance(pt, Generic):
        MX = funcfield.pencil(X.a, X.b, p)
        return X.d2 - funcfield.rank(MX) == 0
    if isinstance(pt, FiniteDim):
        return ext_dim(X, build_indec(pt.label, p)) == 0
    k0 = X.dim
    if isinstance(pt, Adic):
        # the truncation maps on Ext are onto, so the limit vanishes iff every level does
        return all(not ext_annihilator(X, pt.lam, k).size for k in range(1, k0 + window + 1))
    # Pruefer: every class at level k dies at level k + j
    res = []
    J = k0 + window
    for k in range(max(k0, 1), k0 + window + 1):
        dies = []
        for j in (J - 1, J):
            ann = ext_annihilator(X, pt.lam, k + j)
            dies.append(not ann.size or not ann[:, j * X.d2:].any())
        if dies[0] != dies[1]:
            raise StabilizationFailure(pt, "colimit of Ext", [k + J - 1, k + J])
        res.append(dies[1])
    return all(res)


__all__ = [
    "StabilizationFailure", "FiniteDim", "Prufer", "Adic", "Generic", "parse_point", "ExactSubspace",
    "exact_subspace", "hom_exactness_at_point", "hom_vanishes", "ext_vanishes", "hom_to_tube",
    "ext_annihilator",
]
