"""Representations of a finite acyclic quiver over F_p."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..core.universe import Rejection, ShortExactSeq, StructuralError
from ..linalg import modp


@dataclass(frozen=True)
class Quiver:
    n: int
    arrows: tuple[tuple[int, int], ...]


def _z(r: int, c: int) -> np.ndarray:
    return np.zeros((r, c), dtype=np.int64)


@dataclass(frozen=True, eq=False)
class QRep:
    quiver: Quiver
    dims: tuple[int, ...]
    mats: tuple[np.ndarray, ...]  # arrow (s, t) -> dims[t] x dims[s]
    p: int

    @classmethod
    def make(cls, quiver: Quiver, dims, mats, p: int) -> "QRep":
        dims = tuple(int(d) for d in dims)
        out = []
        for (s, t), m in zip(quiver.arrows, mats, strict=True):
            m = np.asarray(m, dtype=np.int64).reshape(dims[t], dims[s]) % p
            m.setflags(write=False)
            out.append(m)
        return cls(quiver, dims, tuple(out), p)

    @property
    def dim(self) -> int:
        return sum(self.dims)

    def key(self) -> tuple:
        return (self.dims, tuple(m.tobytes() for m in self.mats))

    def __eq__(self, other) -> bool:
        return isinstance(other, QRep) and self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def __repr__(self) -> str:
        return f"QRep{self.dims}"


def direct_sum(reps: list[QRep]) -> QRep:
    Q, p = reps[0].quiver, reps[0].p
    dims = tuple(sum(r.dims[v] for r in reps) for v in range(Q.n))
    mats = []
    for k, (s, t) in enumerate(Q.arrows):
        m = _z(dims[t], dims[s])
        rs = cs = 0
        for r in reps:
            m[rs:rs + r.dims[t], cs:cs + r.dims[s]] = r.mats[k]
            rs, cs = rs + r.dims[t], cs + r.dims[s]
        mats.append(m)
    return QRep.make(Q, dims, mats, p)


@dataclass(frozen=True, eq=False)
class QMorphism:
    src: QRep
    dst: QRep
    maps: tuple[np.ndarray, ...]

    @classmethod
    def make(cls, src: QRep, dst: QRep, maps) -> "QMorphism":
        p = src.p
        fs = tuple(np.asarray(m, dtype=np.int64).reshape(dst.dims[v], src.dims[v]) % p
                   for v, m in enumerate(maps))
        f = cls(src, dst, fs)
        for k, (s, t) in enumerate(src.quiver.arrows):
            if (modp.mul(fs[t], src.mats[k], p) != modp.mul(dst.mats[k], fs[s], p)).any():
                raise StructuralError(f"maps do not commute with arrow {s}->{t}")
        return f

    @classmethod
    def identity(cls, X: QRep) -> "QMorphism":
        return cls(X, X, tuple(np.eye(d, dtype=np.int64) for d in X.dims))

    def __matmul__(self, other: "QMorphism") -> "QMorphism":
        p = self.src.p
        return QMorphism(other.src, self.dst, tuple(modp.mul(a, b, p) for a, b in zip(self.maps, other.maps)))

    def __add__(self, other: "QMorphism") -> "QMorphism":
        return QMorphism(self.src, self.dst, tuple((a + b) % self.src.p for a, b in zip(self.maps, other.maps)))

    def scale(self, c: int) -> "QMorphism":
        return QMorphism(self.src, self.dst, tuple((c * a) % self.src.p for a in self.maps))

    def is_zero(self) -> bool:
        return not any(m.any() for m in self.maps)

    def _ranks(self) -> list[int]:
        return [modp.rank(m, self.src.p) if m.size else 0 for m in self.maps]

    def is_injective(self) -> bool:
        return self._ranks() == list(self.src.dims)

    def is_surjective(self) -> bool:
        return self._ranks() == list(self.dst.dims)

    def is_iso(self) -> bool:
        return self.src.dims == self.dst.dims and self.is_injective()

    def vector(self) -> np.ndarray:
        return np.concatenate([m.reshape(-1) for m in self.maps]) if self.maps else _z(0, 0).reshape(-1)


def _hom_system(X: QRep, Y: QRep) -> np.ndarray:
    """Linear conditions on ``(f_v)_v`` (row-major blocks) for ``f: X -> Y`` to commute."""
    Q, p = X.quiver, X.p
    offs = np.cumsum([0] + [Y.dims[v] * X.dims[v] for v in range(Q.n)])
    rows = []
    for k, (s, t) in enumerate(Q.arrows):
        # f_t X_a - Y_a f_s, as a map on vec(f) (row-major)
        blk = _z(Y.dims[t] * X.dims[s], offs[-1])
        blk[:, offs[t]:offs[t + 1]] = np.kron(np.eye(Y.dims[t], dtype=np.int64), X.mats[k].T)
        blk[:, offs[s]:offs[s + 1]] -= np.kron(Y.mats[k], np.eye(X.dims[s], dtype=np.int64))
        rows.append(blk % p)
    if not rows:
        return _z(0, offs[-1])
    return np.vstack(rows)


def hom_basis(X: QRep, Y: QRep) -> list[QMorphism]:
    p = X.p
    n = sum(Y.dims[v] * X.dims[v] for v in range(X.quiver.n))
    if n == 0:
        return []
    S = _hom_system(X, Y)
    N = modp.nullspace(S, p) if S.shape[0] else np.eye(n, dtype=np.int64)
    out = []
    for col in N.T:
        maps, o = [], 0
        for v in range(X.quiver.n):
            sz = Y.dims[v] * X.dims[v]
            maps.append(col[o:o + sz].reshape(Y.dims[v], X.dims[v]))
            o += sz
        out.append(QMorphism(X, Y, tuple(m % p for m in maps)))
    return out


def hom_dim(X: QRep, Y: QRep) -> int:
    return len(hom_basis(X, Y))


def _defect(C: QRep, A: QRep) -> np.ndarray:
    """``(f_v) -> (f_t C_a - A_a f_s)_a`` from ``Hom_vs(C, A)`` to ``prod_a Hom(C_s, A_t)``."""
    return _hom_system(C, A)


class ExtSpace:
    """``Ext^1(C, A) = prod_a Hom(C_s, A_t) / im(defect)`` with complement coordinates."""

    def __init__(self, C: QRep, A: QRep):
        self.C, self.A, self.p = C, A, C.p
        Q = C.quiver
        self.sizes = [A.dims[t] * C.dims[s] for s, t in Q.arrows]
        self.ambient = sum(self.sizes)
        D = _defect(C, A)
        self.image = (modp.column_space(D, self.p) if D.size and D.shape[1]
                      else _z(self.ambient, 0))
        self.complement = modp.complement_basis(self.image, self.p)
        self.dim = self.complement.shape[1]
        full = np.concatenate([self.image, self.complement], axis=1)
        self._inv = modp.inverse(full, self.p) if self.ambient else full

    def coords(self, v) -> tuple[int, ...]:
        if not self.ambient:
            return ()
        v = np.asarray(v, dtype=np.int64).reshape(-1, 1) % self.p
        c = modp.mul(self._inv, v, self.p).reshape(-1)
        return tuple(int(t) for t in c[self.image.shape[1]:])

    def vector(self, x) -> np.ndarray:
        if not self.dim:
            return np.zeros(self.ambient, dtype=np.int64)
        return modp.mul(self.complement, np.asarray(x, dtype=np.int64).reshape(-1, 1), self.p).reshape(-1)

    def blocks(self, v) -> list[np.ndarray]:
        v = np.asarray(v, dtype=np.int64).reshape(-1)
        out, o = [], 0
        for (s, t), sz in zip(self.C.quiver.arrows, self.sizes):
            out.append(v[o:o + sz].reshape(self.A.dims[t], self.C.dims[s]))
            o += sz
        return out

    def push(self, g: QMorphism, v) -> np.ndarray:
        """``eta_a -> g_t eta_a`` into the ambient space of ``Ext(C, g.dst)``."""
        p = self.p
        return np.concatenate([modp.mul(g.maps[t], b, p).reshape(-1)
                               for (s, t), b in zip(self.C.quiver.arrows, self.blocks(v))] or [_z(0, 0).reshape(-1)])

    def pull(self, h: QMorphism, v) -> np.ndarray:
        """``eta_a -> eta_a h_s`` into the ambient space of ``Ext(h.src, A)``."""
        p = self.p
        return np.concatenate([modp.mul(b, h.maps[s], p).reshape(-1)
                               for (s, t), b in zip(self.C.quiver.arrows, self.blocks(v))] or [_z(0, 0).reshape(-1)])


def realize(C: QRep, A: QRep, v) -> ShortExactSeq:
    Q, p = C.quiver, C.p
    sp = ExtSpace(C, A)
    etas = sp.blocks(v)
    dims = tuple(A.dims[i] + C.dims[i] for i in range(Q.n))
    mats = []
    for k, (s, t) in enumerate(Q.arrows):
        mats.append(np.block([[A.mats[k], etas[k]], [_z(C.dims[t], A.dims[s]), C.mats[k]]]))
    E = QRep.make(Q, dims, mats, p)
    i = QMorphism.make(A, E, [np.eye(dims[v], A.dims[v], dtype=np.int64) for v in range(Q.n)])
    d = QMorphism.make(E, C, [np.eye(C.dims[v], dims[v], k=A.dims[v], dtype=np.int64) for v in range(Q.n)])
    ses = is_ses(A, E, C, i, d)
    assert ses, ses
    return ses


def is_ses(A: QRep, B: QRep, C: QRep, i: QMorphism, d: QMorphism):
    if not (d @ i).is_zero():
        return Rejection("not_composable_to_zero")
    if not i.is_injective():
        return Rejection("not_injective")
    if not d.is_surjective():
        return Rejection("not_surjective")
    if any(B.dims[v] != A.dims[v] + C.dims[v] for v in range(A.quiver.n)):
        return Rejection("homology_nonzero")
    return ShortExactSeq(A, B, C, i, d)


def class_of(ses: ShortExactSeq) -> np.ndarray:
    """Ambient class vector, split along vertexwise sections of the deflation."""
    A, B, C, i, d = ses.A, ses.B, ses.C, ses.i, ses.d
    p = A.p
    secs = [modp.solve(d.maps[v], np.eye(C.dims[v], dtype=np.int64), p) if C.dims[v] else _z(B.dims[v], 0)
            for v in range(A.quiver.n)]
    out = []
    for k, (s, t) in enumerate(A.quiver.arrows):
        defect = (modp.mul(B.mats[k], secs[s], p) - modp.mul(secs[t], C.mats[k], p)) % p
        if A.dims[t] == 0:
            eta = _z(0, C.dims[s])
        else:
            eta = modp.solve(i.maps[t], defect, p)
            if eta is None:
                raise StructuralError("sequence is not exact")
        out.append(eta.reshape(-1))
    return np.concatenate(out) % p if out else np.zeros(0, dtype=np.int64)


def cokernel(f: QMorphism) -> tuple[QRep, QMorphism]:
    p = f.src.p
    Y = f.dst
    Q = Y.quiver
    qs, lifts = [], []
    for v in range(Q.n):
        fk, dk = f.maps[v], Y.dims[v]
        im = modp.column_space(fk, p) if fk.size else _z(dk, 0)
        comp = modp.complement_basis(im, p)
        full = np.concatenate([im, comp], axis=1)
        inv = modp.inverse(full, p) if dk else full
        qs.append(inv[im.shape[1]:, :] if dk else _z(0, 0))
        lifts.append(comp)
    dims = [q.shape[0] for q in qs]
    mats = []
    for k, (s, t) in enumerate(Q.arrows):
        if dims[s] and dims[t]:
            mats.append(modp.mul(modp.mul(qs[t], Y.mats[k], p), lifts[s], p))
        else:
            mats.append(_z(dims[t], dims[s]))
    Z = QRep.make(Q, dims, mats, p)
    return Z, QMorphism.make(Y, Z, [qs[v].reshape(dims[v], Y.dims[v]) for v in range(Q.n)])


__all__ = ["Quiver", "QRep", "QMorphism", "direct_sum", "hom_basis", "hom_dim", "ExtSpace", "realize",
           "is_ses", "class_of", "cokernel"]
