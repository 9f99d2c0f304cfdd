"""Representations of the Kronecker quiver over F_p.

A representation is a pair of vector spaces ``V1, V2`` with two maps
``a, b: V2 -> V1`` (vertex 1 is the sink).  Morphisms act by matrices on
column vectors, and an extension class ``A >-> E ->> C`` is stored as the pair
``(eta_a, eta_b)`` of ``d1(A) x d2(C)`` blocks in the upper right corner of the
arrow matrices of ``E = A + C``.
"""
from __future__ import annotations

from dataclasses import dataclass
import numpy as np

from ..core.universe import Rejection, ShortExactSeq, StructuralError
from ..linalg import modp


def _arr(a, rows: int, cols: int, p: int) -> np.ndarray:
    a = np.asarray(a, dtype=np.int64).reshape(rows, cols) % p
    return a


@dataclass(frozen=True, eq=False)
class Rep:
    d1: int
    d2: int
    a: np.ndarray
    b: np.ndarray
    p: int

    @classmethod
    def make(cls, d1: int, d2: int, a, b, p: int) -> "Rep":
        return cls(d1, d2, _arr(a, d1, d2, p), _arr(b, d1, d2, p), p)

    @classmethod
    def zero(cls, p: int) -> "Rep":
        return cls.make(0, 0, [], [], p)

    @property
    def dimv(self) -> tuple[int, int]:
        return (self.d1, self.d2)

    @property
    def dim(self) -> int:
        return self.d1 + self.d2

    def key(self) -> tuple:
        return (self.d1, self.d2, self.a.tobytes(), self.b.tobytes())

    def __eq__(self, other) -> bool:
        return isinstance(other, Rep) and self.p == other.p and self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def __add__(self, other: "Rep") -> "Rep":
        return direct_sum(self, other)

    def __repr__(self) -> str:
        return f"Rep{self.dimv}"


def direct_sum(*reps: Rep) -> Rep:
    p = reps[0].p
    d1 = sum(r.d1 for r in reps)
    d2 = sum(r.d2 for r in reps)
    a = np.zeros((d1, d2), dtype=np.int64)
    b = np.zeros((d1, d2), dtype=np.int64)
    i = j = 0
    for r in reps:
        a[i:i + r.d1, j:j + r.d2] = r.a
        b[i:i + r.d1, j:j + r.d2] = r.b
        i, j = i + r.d1, j + r.d2
    return Rep(d1, d2, a, b, p)


@dataclass(frozen=True, eq=False)
class Morphism:
    src: Rep
    dst: Rep
    f1: np.ndarray
    f2: np.ndarray

    @classmethod
    def make(cls, src: Rep, dst: Rep, f1, f2) -> "Morphism":
        p = src.p
        if dst.p != p:
            raise StructuralError("representations over different fields")
        m = cls(src, dst, _arr(f1, dst.d1, src.d1, p), _arr(f2, dst.d2, src.d2, p))
        if not m.commutes():
            raise StructuralError(f"{src} -> {dst} does not commute with the arrows")
        return m

    @classmethod
    def identity(cls, X: Rep) -> "Morphism":
        return cls(X, X, np.eye(X.d1, dtype=np.int64), np.eye(X.d2, dtype=np.int64))

    @classmethod
    def zero(cls, X: Rep, Y: Rep) -> "Morphism":
        return cls(X, Y, np.zeros((Y.d1, X.d1), dtype=np.int64), np.zeros((Y.d2, X.d2), dtype=np.int64))

    def commutes(self) -> bool:
        p, X, Y = self.src.p, self.src, self.dst
        return (not ((modp.mul(self.f1, X.a, p) - modp.mul(Y.a, self.f2, p)) % p).any()
                and not ((modp.mul(self.f1, X.b, p) - modp.mul(Y.b, self.f2, p)) % p).any())

    def __matmul__(self, other: "Morphism") -> "Morphism":
        p = self.src.p
        return Morphism(other.src, self.dst, modp.mul(self.f1, other.f1, p), modp.mul(self.f2, other.f2, p))

    def __add__(self, other: "Morphism") -> "Morphism":
        p = self.src.p
        return Morphism(self.src, self.dst, (self.f1 + other.f1) % p, (self.f2 + other.f2) % p)

    def scale(self, c: int) -> "Morphism":
        p = self.src.p
        return Morphism(self.src, self.dst, (c * self.f1) % p, (c * self.f2) % p)

    def is_zero(self) -> bool:
        return not self.f1.any() and not self.f2.any()

    def is_injective(self) -> bool:
        p = self.src.p
        return modp.rank(self.f1, p) == self.src.d1 and modp.rank(self.f2, p) == self.src.d2

    def is_surjective(self) -> bool:
        p = self.src.p
        return modp.rank(self.f1, p) == self.dst.d1 and modp.rank(self.f2, p) == self.dst.d2

    def vector(self) -> np.ndarray:
        return np.concatenate([self.f1.reshape(-1), self.f2.reshape(-1)])


def defect_matrix(X: Rep, Y: Rep) -> np.ndarray:
    """Matrix of ``(f1, f2) -> (f1 a_X - a_Y f2, f1 b_X - b_Y f2)`` on row-major vectors."""
    p = X.p
    i1 = np.eye(Y.d1, dtype=np.int64)
    i2 = np.eye(X.d2, dtype=np.int64)
    top = np.concatenate([np.kron(i1, X.a.T), -np.kron(Y.a, i2)], axis=1)
    bot = np.concatenate([np.kron(i1, X.b.T), -np.kron(Y.b, i2)], axis=1)
    return np.concatenate([top, bot], axis=0) % p


def _split(v: np.ndarray, X: Rep, Y: Rep) -> tuple[np.ndarray, np.ndarray]:
    n = Y.d1 * X.d1
    return v[:n].reshape(Y.d1, X.d1), v[n:].reshape(Y.d2, X.d2)


def hom_basis(X: Rep, Y: Rep) -> list[Morphism]:
    if X.p != Y.p:
        raise StructuralError("representations over different fields")
    n = Y.d1 * X.d1 + Y.d2 * X.d2
    if n == 0:
        return []
    D = defect_matrix(X, Y)
    ns = modp.nullspace(D, X.p) if D.shape[0] else np.eye(n, dtype=np.int64)
    return [Morphism(X, Y, *_split(ns[:, k], X, Y)) for k in range(ns.shape[1])]


def hom_dim(X: Rep, Y: Rep) -> int:
    n = Y.d1 * X.d1 + Y.d2 * X.d2
    D = defect_matrix(X, Y)
    return n - (modp.rank(D, X.p) if D.size else 0)


def euler(x: tuple[int, int], y: tuple[int, int]) -> int:
    return x[0] * y[0] + x[1] * y[1] - 2 * x[1] * y[0]


def ext_dim(X: Rep, Y: Rep) -> int:
    """``dim Ext^1(X, Y)`` as the cokernel of the defect map, checked against the Euler form."""
    D = defect_matrix(X, Y)
    m = 2 * Y.d1 * X.d2
    by_cokernel = m - (modp.rank(D, X.p) if D.size else 0)
    by_euler = hom_dim(X, Y) - euler(X.dimv, Y.dimv)
    if by_cokernel != by_euler:
        raise AssertionError(f"Ext({X}, {Y}): defect map gives {by_cokernel}, Euler form {by_euler}")
    return by_cokernel


def blocks(C: Rep, A: Rep, v) -> tuple[np.ndarray, np.ndarray]:
    """Split an ambient extension vector into ``(eta_a, eta_b)``."""
    n = A.d1 * C.d2
    v = np.asarray(v, dtype=np.int64).reshape(-1)
    return v[:n].reshape(A.d1, C.d2), v[n:].reshape(A.d1, C.d2)


class ExtSpace:
    """``Ext^1(C, A) = Hom(C2, A1)^2 / im(defect)`` with fixed complement coordinates."""

    def __init__(self, C: Rep, A: Rep):
        self.C, self.A, self.p = C, A, C.p
        self.ambient = 2 * A.d1 * C.d2
        D = defect_matrix(C, A)
        self.image = modp.column_space(D, self.p) if D.size else np.zeros((self.ambient, 0), np.int64)
        self.complement = modp.complement_basis(self.image, self.p)
        self.dim = self.complement.shape[1]
        full = np.concatenate([self.image, self.complement], axis=1)
        self._inv = modp.inverse(full, self.p) if self.ambient else full

    def coords(self, v) -> tuple[int, ...]:
        if not self.ambient:
            return ()
        v = np.asarray(v, dtype=np.int64).reshape(-1) % self.p
        c = modp.mul(self._inv, v.reshape(-1, 1), self.p).reshape(-1)
        return tuple(int(t) for t in c[self.image.shape[1]:])

    def vector(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=np.int64).reshape(-1, 1)
        if not self.dim:
            return np.zeros(self.ambient, dtype=np.int64)
        return modp.mul(self.complement, x, self.p).reshape(-1)

    def blocks(self, v) -> tuple[np.ndarray, np.ndarray]:
        return blocks(self.C, self.A, v)

    def basis(self) -> list[tuple[int, ...]]:
        return [tuple(int(i == k) for i in range(self.dim)) for k in range(self.dim)]

    def push_matrix(self, g: Morphism) -> np.ndarray:
        return push_matrix(self.C, g)

    def pull_matrix(self, h: Morphism) -> np.ndarray:
        """Ambient matrix of ``eta -> eta h2`` from this space into ``Ext(h.src, A)``."""
        blk = np.kron(np.eye(self.A.d1, dtype=np.int64), h.f2.T)
        z = np.zeros_like(blk)
        return np.block([[blk, z], [z, blk]]) % self.p


def push_matrix(C: Rep, g: Morphism) -> np.ndarray:
    """Ambient matrix of ``eta -> g1 eta`` from ``Ext(C, g.src)`` into ``Ext(C, g.dst)``."""
    blk = np.kron(g.f1, np.eye(C.d2, dtype=np.int64))
    z = np.zeros_like(blk)
    return np.block([[blk, z], [z, blk]]) % C.p


def realize(C: Rep, A: Rep, v) -> ShortExactSeq:
    """Certified ``A >-> E ->> C`` with extension blocks taken from the ambient vector ``v``."""
    p = C.p
    eta_a, eta_b = blocks(C, A, v)
    a = np.block([[A.a, eta_a], [np.zeros((C.d1, A.d2), np.int64), C.a]])
    b = np.block([[A.b, eta_b], [np.zeros((C.d1, A.d2), np.int64), C.b]])
    E = Rep.make(A.d1 + C.d1, A.d2 + C.d2, a, b, p)
    i = Morphism.make(A, E, np.eye(E.d1, A.d1, dtype=np.int64), np.eye(E.d2, A.d2, dtype=np.int64))
    d = Morphism.make(E, C, np.eye(C.d1, E.d1, k=A.d1, dtype=np.int64),
                      np.eye(C.d2, E.d2, k=A.d2, dtype=np.int64))
    ses = is_ses(A, E, C, i, d)
    assert ses, ses
    return ses


def is_ses(A: Rep, B: Rep, C: Rep, i: Morphism, d: Morphism):
    for f, s, t in ((i, A, B), (d, B, C)):
        if f.src != s or f.dst != t:
            raise StructuralError("morphism endpoints do not match the sequence")
    if not (d @ i).is_zero():
        return Rejection("not_composable_to_zero")
    if not i.is_injective():
        return Rejection("not_injective")
    if not d.is_surjective():
        return Rejection("not_surjective")
    if B.d1 != A.d1 + C.d1 or B.d2 != A.d2 + C.d2:
        return Rejection("homology_nonzero")
    return ShortExactSeq(A, B, C, i, d)


def class_of(ses: ShortExactSeq) -> np.ndarray:
    """Ambient vector ``(eta_a, eta_b)`` of a certified sequence (split along vector-space sections)."""
    A, B, C, i, d = ses.A, ses.B, ses.C, ses.i, ses.d
    p = A.p
    s1 = modp.solve(d.f1, np.eye(C.d1, dtype=np.int64), p) if C.d1 else np.zeros((B.d1, 0), np.int64)
    s2 = modp.solve(d.f2, np.eye(C.d2, dtype=np.int64), p) if C.d2 else np.zeros((B.d2, 0), np.int64)
    out = []
    for arrow_B, arrow_C in ((B.a, C.a), (B.b, C.b)):
        defect = (modp.mul(arrow_B, s2, p) - modp.mul(s1, arrow_C, p)) % p
        eta = modp.solve(i.f1, defect, p) if A.d1 else np.zeros((0, C.d2), np.int64)
        if eta is None:
            raise StructuralError("sequence is not exact")
        out.append(eta.reshape(-1))
    return np.concatenate(out) % p


def cokernel(f: Morphism) -> tuple[Rep, Morphism]:
    p = f.src.p
    Y = f.dst
    qs, lifts = [], []
    for fk, dk in ((f.f1, Y.d1), (f.f2, Y.d2)):
        im = modp.column_space(fk, p) if fk.size else np.zeros((dk, 0), np.int64)
        comp = modp.complement_basis(im, p)
        full = np.concatenate([im, comp], axis=1)
        inv = modp.inverse(full, p) if dk else full
        qs.append(inv[im.shape[1]:, :] if dk else np.zeros((0, 0), np.int64))
        lifts.append(comp)
    q1, q2 = qs
    c1, c2 = q1.shape[0], q2.shape[0]
    a = modp.mul(modp.mul(q1, Y.a, p), lifts[1], p) if c1 and c2 else np.zeros((c1, c2), np.int64)
    b = modp.mul(modp.mul(q1, Y.b, p), lifts[1], p) if c1 and c2 else np.zeros((c1, c2), np.int64)
    Q = Rep.make(c1, c2, a, b, p)
    return Q, Morphism.make(Y, Q, q1.reshape(c1, Y.d1), q2.reshape(c2, Y.d2))


def hom_map(X: Rep, maps: list[Morphism]) -> Morphism:
    """``X -> sum_k maps[k].dst`` with the given components."""
    J = direct_sum(*[m.dst for m in maps]) if maps else Rep.zero(X.p)
    f1 = np.concatenate([m.f1 for m in maps], axis=0) if maps else np.zeros((0, X.d1), np.int64)
    f2 = np.concatenate([m.f2 for m in maps], axis=0) if maps else np.zeros((0, X.d2), np.int64)
    return Morphism(X, J, f1, f2)


def left_annihilator(M: np.ndarray, p: int) -> np.ndarray:
    """Rows ``w`` with ``w M = 0`` spanning all such rows."""
    rows = M.shape[0]
    if M.shape[1] == 0:
        return np.eye(rows, dtype=np.int64)
    return modp.nullspace(M.T % p, p).T


def kernel(f: Morphism) -> tuple[Rep, Morphism]:
    p = f.src.p
    X = f.src
    B1 = modp.nullspace(f.f1, p) if X.d1 else np.zeros((0, 0), np.int64)
    B2 = modp.nullspace(f.f2, p) if X.d2 else np.zeros((0, 0), np.int64)
    if f.dst.d1 == 0:
        B1 = np.eye(X.d1, dtype=np.int64)
    if f.dst.d2 == 0:
        B2 = np.eye(X.d2, dtype=np.int64)
    k1, k2 = B1.shape[1], B2.shape[1]
    arrows = []
    for arrow in (X.a, X.b):
        img = modp.mul(arrow, B2, p) if k2 else np.zeros((X.d1, 0), np.int64)
        sol = modp.solve(B1, img, p) if k1 else np.zeros((0, k2), np.int64)
        if sol is None:
            raise AssertionError("kernel is not a subrepresentation")
        arrows.append(sol)
    K = Rep.make(k1, k2, arrows[0], arrows[1], p)
    return K, Morphism.make(K, X, B1, B2)
