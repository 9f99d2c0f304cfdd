"""Indecomposable Kronecker representations, their AR sequences and decomposition."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from ..core.universe import ShortExactSeq, StructuralError
from ..linalg import modp
from .rep import (ExtSpace, Morphism, Rep, direct_sum, euler, ext_dim, hom_basis, hom_dim,
                  is_ses, realize)

INF = "inf"


class DimensionBoundError(ValueError):
    pass


class DecompositionError(RuntimeError):
    """A summand outside the rational tubes (a tube of degree > 1) was met."""


@dataclass(frozen=True, order=True)
class Label:
    """``P(n) = (n+1, n)``, ``Q(n) = (n, n+1)`` or ``R(lam, k) = S_lam[k]`` of dimension ``(k, k)``."""

    kind: str
    n: int
    lam: object = None

    @property
    def dimv(self) -> tuple[int, int]:
        if self.kind == "P":
            return (self.n + 1, self.n)
        if self.kind == "Q":
            return (self.n, self.n + 1)
        return (self.n, self.n)

    def __str__(self) -> str:
        if self.kind == "R":
            lam = "oo" if self.lam == INF else self.lam
            return f"S_{lam}" + (f"[{self.n}]" if self.n > 1 else "")
        return str(self.dimv).replace(" ", "")

    def to_json(self):
        d = {"kind": self.kind, "n": self.n, "dim": list(self.dimv)}
        if self.kind == "R":
            d["lambda"] = self.lam
        return d


def Preproj(n: int) -> Label:
    if n < 0:
        raise ValueError("n >= 0 required")
    return Label("P", n)


def Preinj(n: int) -> Label:
    if n < 0:
        raise ValueError("n >= 0 required")
    return Label("Q", n)


def Regular(lam, k: int) -> Label:
    if k < 1:
        raise ValueError("k >= 1 required")
    return Label("R", k, lam)


def omega(q: int) -> list:
    return list(range(q)) + [INF]


def parse_label(text: str) -> Label:
    """``(2,1)`` style dimension vectors for P/Q, ``S_3[2]`` or ``S_oo`` for regulars."""
    t = text.replace(" ", "")
    if t.startswith("S_"):
        body = t[2:]
        k = 1
        if "[" in body:
            body, rest = body.split("[", 1)
            k = int(rest.rstrip("]"))
        lam = INF if body in ("oo", "inf") else int(body)
        return Regular(lam, k)
    d1, d2 = (int(v) for v in t.strip("()").split(","))
    if d1 == d2 + 1:
        return Preproj(d2)
    if d2 == d1 + 1:
        return Preinj(d1)
    raise ValueError(f"{text!r} is not a preprojective or preinjective dimension vector")


def _nilpotent(k: int) -> np.ndarray:
    return np.eye(k, k, -1, dtype=np.int64)


def tube_module(lam, k: int, p: int) -> Rep:
    if lam == INF:
        return Rep.make(k, k, _nilpotent(k), np.eye(k, dtype=np.int64), p)
    return Rep.make(k, k, np.eye(k, dtype=np.int64), lam * np.eye(k, dtype=np.int64) + _nilpotent(k), p)


@lru_cache(maxsize=None)
def _build(label: Label, p: int) -> Rep:
    n = label.n
    if label.kind == "P":
        a = np.vstack([np.eye(n, dtype=np.int64), np.zeros((1, n), np.int64)])
        b = np.vstack([np.zeros((1, n), np.int64), np.eye(n, dtype=np.int64)])
        return Rep.make(n + 1, n, a, b, p)
    if label.kind == "Q":
        a = np.hstack([np.eye(n, dtype=np.int64), np.zeros((n, 1), np.int64)])
        b = np.hstack([np.zeros((n, 1), np.int64), np.eye(n, dtype=np.int64)])
        return Rep.make(n, n + 1, a, b, p)
    if label.lam != INF and not (0 <= label.lam < p):
        raise ValueError(f"lambda = {label.lam} is not in F_{p} or infinity")
    return tube_module(label.lam, n, p)


def build_indec(label: Label, p: int = 5, bound: tuple[int, int] | None = None) -> Rep:
    if bound is not None and (label.dimv[0] > bound[0] or label.dimv[1] > bound[1]):
        raise DimensionBoundError(f"{label} has dimension {label.dimv} beyond the bound {bound}")
    return _build(label, p)


def end_is_local(X: Rep, limit: int = 10 ** 5) -> bool:
    """Exhaustive search for a nontrivial idempotent in End(X)."""
    p = X.p
    basis = hom_basis(X, X)
    e = len(basis)
    if e == 0:
        return False
    if p ** e > limit:
        raise DimensionBoundError(f"End({X}) has {p ** e} elements, beyond the search limit")
    f1s = np.stack([m.f1 for m in basis])
    f2s = np.stack([m.f2 for m in basis])
    for c in itertools.product(range(p), repeat=e):
        cv = np.array(c, dtype=np.int64)
        g1 = np.tensordot(cv, f1s, 1) % p
        g2 = np.tensordot(cv, f2s, 1) % p
        if not g1.any() and not g2.any():
            continue
        if (modp.mul(g1, g1, p) == g1).all() and (modp.mul(g2, g2, p) == g2).all():
            if not ((g1 == np.eye(X.d1, dtype=np.int64)).all() and (g2 == np.eye(X.d2, dtype=np.int64)).all()):
                return False
    return True


def labels_within(bound: tuple[int, int], q: int) -> list[Label]:
    """Every rational indecomposable with dimension vector at most ``bound``."""
    out = []
    for n in range(0, max(bound) + 1):
        if n + 1 <= bound[0] and n <= bound[1]:
            out.append(Preproj(n))
        if n <= bound[0] and n + 1 <= bound[1]:
            out.append(Preinj(n))
    for k in range(1, min(bound) + 1):
        for lam in omega(q):
            out.append(Regular(lam, k))
    return out


def tau_inverse(label: Label) -> Label | None:
    if label.kind == "P":
        return Preproj(label.n + 2)
    if label.kind == "Q":
        return Preinj(label.n - 2) if label.n >= 2 else None
    return label


def tau(label: Label) -> Label | None:
    if label.kind == "P":
        return Preproj(label.n - 2) if label.n >= 2 else None
    if label.kind == "Q":
        return Preinj(label.n + 2)
    return label


def ar_middle(label: Label) -> list[Label]:
    """Middle term of the AR sequence starting at a non-injective ``label``."""
    if label.kind == "P":
        return [Preproj(label.n + 1)] * 2
    if label.kind == "Q":
        if label.n < 2:
            raise ValueError(f"{label} is injective")
        return [Preinj(label.n - 1)] * 2
    return [Regular(label.lam, label.n + 1)] + ([Regular(label.lam, label.n - 1)] if label.n > 1 else [])


def tower_inclusion(lam, j: int, k: int, p: int) -> Morphism:
    """``S[j] >-> S[k]``, ``e_i -> e_{i+k-j}``."""
    m = np.eye(k, j, -(k - j), dtype=np.int64)
    return Morphism.make(tube_module(lam, j, p), tube_module(lam, k, p), m, m)


def tower_projection(lam, k: int, j: int, p: int) -> Morphism:
    """``S[k] ->> S[j]`` keeping the first ``j`` coordinates."""
    m = np.eye(j, k, dtype=np.int64)
    return Morphism.make(tube_module(lam, k, p), tube_module(lam, j, p), m, m)


def ar_sequence(label: Label, p: int = 5) -> ShortExactSeq:
    """Certified almost split sequence starting at the non-injective ``label``."""
    A = build_indec(label, p)
    if label.kind == "R":
        lam, k = label.lam, label.n
        up = tower_inclusion(lam, k, k + 1, p)
        if k == 1:
            B = up.dst
            d = tower_projection(lam, k + 1, k, p)
            ses = is_ses(A, B, A, up, d)
        else:
            down = tower_projection(lam, k, k - 1, p)
            B = direct_sum(up.dst, down.dst)
            i = Morphism.make(A, B, np.vstack([up.f1, down.f1]), np.vstack([up.f2, down.f2]))
            pr = tower_projection(lam, k + 1, k, p)
            inc = tower_inclusion(lam, k - 1, k, p)
            d = Morphism.make(B, A, np.hstack([pr.f1, (-inc.f1) % p]), np.hstack([pr.f2, (-inc.f2) % p]))
            ses = is_ses(A, B, A, i, d)
        assert ses, ses
        return ses
    C = build_indec(tau_inverse(label), p)
    sp = ExtSpace(C, A)
    if sp.dim != 1:
        raise AssertionError(f"Ext({C}, {A}) should be one-dimensional")
    return realize(C, A, sp.vector((1,)))


# decomposition ------------------------------------------------------------

def _hom_dim_sum(X: Rep, labels: list[Label], p: int, contravariant: bool = False) -> int:
    tot = 0
    for lab in labels:
        Y = build_indec(lab, p)
        tot += hom_dim(X, Y) if contravariant else hom_dim(Y, X)
    return tot


def multiplicity(label: Label, X: Rep) -> int:
    """Multiplicity of ``label`` as a direct summand of ``X`` via its AR sequence."""
    p = X.p
    M = build_indec(label, p)
    if label.kind == "Q" and label.n < 2:
        t = tau(label)
        return (hom_dim(X, M) - _hom_dim_sum(X, ar_middle(t), p, contravariant=True)
                + hom_dim(X, build_indec(t, p)))
    N = build_indec(tau_inverse(label), p)
    return hom_dim(M, X) - _hom_dim_sum(X, ar_middle(label), p) + hom_dim(N, X)


def decompose(X: Rep, q: int | None = None) -> dict[Label, int]:
    """Multiplicities of the rational indecomposable summands of ``X``."""
    q = q or X.p
    out = {}
    # a summand S_lam[k] has top S_lam, so tubes with Hom(X, S_lam) = 0 are skipped
    dead = {lam for lam in omega(q) if min(X.dimv) and not hom_dim(X, tube_module(lam, 1, X.p))}
    for lab in labels_within(X.dimv, q):
        if lab.kind == "R" and lab.lam in dead:
            continue
        m = multiplicity(lab, X)
        if m:
            out[lab] = m
    d1 = sum(lab.dimv[0] * m for lab, m in out.items())
    d2 = sum(lab.dimv[1] * m for lab, m in out.items())
    if (d1, d2) != X.dimv:
        raise DecompositionError(f"{X} has summands of total dimension {(X.d1 - d1, X.d2 - d2)} "
                                 "outside the rational tubes")
    return out


def describe(parts: dict[Label, int]) -> str:
    if not parts:
        return "0"
    return " + ".join(f"{lab}^{m}" if m > 1 else str(lab) for lab, m in sorted(parts.items()))


__all__ = [
    "INF", "Label", "Preproj", "Preinj", "Regular", "omega", "parse_label", "build_indec", "end_is_local",
    "labels_within", "tau", "tau_inverse", "ar_middle", "ar_sequence", "tube_module", "tower_inclusion",
    "tower_projection", "multiplicity", "decompose", "describe", "DimensionBoundError",
    "DecompositionError", "hom_dim", "ext_dim", "euler",
]
