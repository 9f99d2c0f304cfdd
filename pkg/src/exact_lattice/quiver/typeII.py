"""Exact structures ``(mod, F^H)`` cut out by finitely many finite-dimensional points.

A sequence belongs to ``F^H`` when ``Hom(-, Y)`` is exact on it for every
``Y`` in ``H``.  The relative injectives are ``add(H + U_max)``, so injective
dimensions come from minimal left approximations by those modules.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..linalg import modp
from .closed import U_MAX
from .kronecker import DecompositionError, Label, build_indec, decompose, describe, labels_within
from .points import ExactSubspace, _finite_subspace
from .rep import ExtSpace, Morphism, Rep, cokernel, direct_sum, hom_basis, hom_dim

DEFAULT_BOUND = 10


def _radical_end(Y: Rep) -> list[Morphism]:
    """Basis of the radical of the local ring ``End(Y)``."""
    p = Y.p
    out = []
    ident = Morphism.identity(Y)
    for phi in hom_basis(Y, Y):
        for c in range(p):
            psi = phi + ident.scale(-c % p)
            if not (psi.is_injective() and psi.is_surjective()):
                out.append(psi)
                break
        else:
            raise AssertionError(f"End({Y}) is not local")
    return out


def _span_rank(vecs: list[np.ndarray], p: int) -> int:
    if not vecs:
        return 0
    return modp.rank(np.stack(vecs, axis=1), p)


@dataclass
class Coresolution:
    X: Label
    terms: list = field(default_factory=list)
    cosyzygies: list = field(default_factory=list)
    status: str = "terminated"
    idim: int | None = None

    @property
    def infinite(self) -> bool:
        return self.status != "terminated"

    def shape(self) -> str:
        parts = [str(self.X)] + [describe(t) for t in self.terms]
        if not parts[1:]:
            return parts[0]
        s = parts[0] + " >-> " + " -> ".join(parts[1:])
        if self.status == "terminated" and len(parts) > 2:
            i = s.rfind(" -> ")
            s = s[:i] + " ->> " + s[i + 4:]
        return s + ("" if self.status == "terminated" else " -> ...")

    def to_json(self) -> dict:
        return {"X": str(self.X), "terms": [describe(t) for t in self.terms],
                "cosyzygies": [describe(c) if c is not None else "?" for c in self.cosyzygies], "status": self.status,
                "idim": self.idim, "shape": self.shape()}


class TypeIIStructure:
    """``E = (mod, F^H)`` with ``H`` a finite list of indecomposables."""

    def __init__(self, H, p: int = 5, truncated: bool = False):
        self.H = tuple(sorted(set(H)))
        self.p = p
        self.truncated = truncated
        self.injectives = tuple(sorted(set(self.H) | set(U_MAX)))
        self._reps = {lab: build_indec(lab, p) for lab in self.injectives}
        self._rad = {lab: _radical_end(Y) for lab, Y in self._reps.items()}

    # membership -------------------------------------------------------------
    def cell(self, C: Rep, A: Rep) -> ExactSubspace:
        space = ExtSpace(C, A)
        sub = ExactSubspace(space, np.eye(space.ambient, dtype=np.int64))
        for lab in self.H:
            sub = sub & ExactSubspace(space, _finite_subspace(C, A, self._reps[lab]))
        return sub

    def is_member(self, ses) -> bool:
        return all(hom_dim(ses.B, Y) == hom_dim(ses.A, Y) + hom_dim(ses.C, Y)
                   for Y in (self._reps[l] for l in self.H))

    def contains_class(self, C: Rep, A: Rep, v) -> bool:
        return self.cell(C, A).contains(v)

    # approximations -----------------------------------------------------------
    def approximation(self, X: Rep) -> tuple[Morphism, dict[Label, int]]:
        """Minimal left ``add(H + U_max)``-approximation of ``X`` and the multiplicities of its target."""
        p = self.p
        comps, mult = [], {}
        for lab, Y in self._reps.items():
            basis = hom_basis(X, Y)
            if not basis:
                continue
            rad = []
            for lab2, Y2 in self._reps.items():
                gs = self._rad[lab] if lab2 == lab else hom_basis(Y2, Y)
                for f in hom_basis(X, Y2):
                    rad.extend((g @ f).vector() for g in gs)
            # extend a basis of the radical part by maps from the basis of Hom(X, Y)
            cur = list(rad)
            for f in basis:
                if _span_rank(cur + [f.vector()], p) > _span_rank(cur, p):
                    cur.append(f.vector())
                    comps.append(f)
                    mult[lab] = mult.get(lab, 0) + 1
        if not comps:
            zero = Morphism.make(X, Rep.zero(p), np.zeros((0, X.d1), np.int64), np.zeros((0, X.d2), np.int64))
            return zero, mult
        E = direct_sum(*[c.dst for c in comps])
        return Morphism.make(X, E, np.vstack([c.f1 for c in comps]), np.vstack([c.f2 for c in comps])), mult

    def coresolution(self, label: Label, bound: int = DEFAULT_BOUND, stop_on_period: bool = True) -> Coresolution:
        """Minimal injective coresolution; a repeated cosyzygy stops it early unless ``stop_on_period`` is off."""
        X = build_indec(label, self.p)
        res = Coresolution(label)
        seen = []
        cur = X
        for step in range(bound + 1):
            f, mult = self.approximation(cur)
            if not f.is_injective():
                raise AssertionError(f"approximation of {cur} is not injective")
            res.terms.append(mult)
            Q, _ = cokernel(f)
            if Q.dim == 0:
                res.idim = step
                return res
            try:
                parts = decompose(Q)
                key = describe(parts)
            except DecompositionError:
                parts, key = None, repr(Q.key())
            res.cosyzygies.append(parts)
            if stop_on_period and key in seen:
                res.status = "periodic"
                return res
            seen.append(key)
            cur = Q
        res.status = "exceeded bound"
        return res

    def idim(self, label: Label, bound: int = DEFAULT_BOUND) -> float:
        r = self.coresolution(label, bound)
        return r.idim if r.idim is not None else float("inf")

    def probes(self, labels, bound: int = DEFAULT_BOUND) -> dict[str, Coresolution]:
        return {str(l): self.coresolution(l, bound) for l in labels}

    def gldim_probe(self, dim_bound=(6, 6), q: int | None = None, bound: int = DEFAULT_BOUND) -> dict:
        """Largest injective dimension over all indecomposables within ``dim_bound``."""
        labs = labels_within(dim_bound, q or self.p)
        pr = self.probes(labs, bound)
        vals = [c.idim if c.idim is not None else float("inf") for c in pr.values()]
        worst = max(vals) if vals else 0
        return {"H": [str(h) for h in self.H], "truncated": self.truncated, "probes": len(pr),
                "max_idim": "inf" if worst == float("inf") else worst,
                "idims": {k: (c.idim if c.idim is not None else c.status) for k, c in sorted(pr.items())}}

    def to_json(self) -> dict:
        return {"H": [str(h) for h in self.H], "injectives": [str(i) for i in self.injectives],
                "p": self.p, "truncated": self.truncated}


def typeII_structure(H, p: int = 5, truncated: bool = False) -> TypeIIStructure:
    return TypeIIStructure(H, p, truncated)


__all__ = ["TypeIIStructure", "typeII_structure", "Coresolution", "DEFAULT_BOUND"]
