"""Exact structures ``E^U`` for ``U = U_max + {G} + Pruefer(T) + adic(M)``.

Cells of the Ext table are indexed by the class of the end terms: ``P``,
``Q`` or the tube ``R_lam``.  A cell is ``Full`` when ``E^U(X, Y) = Ext(X, Y)``
for every representative pair with nonzero Ext, ``Zero`` when only split
classes survive, ``Mixed`` otherwise and ``Trivial`` when Ext vanishes on
the whole pool.
"""
from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from ..linalg import modp
from .closed import KClosedSetDescr
from .kronecker import (INF, Label, Preinj, Preproj, Regular, build_indec, decompose, describe,
                        labels_within, omega)
from .points import Adic, ExactSubspace, Generic, Prufer, exact_subspace
from .rep import ExtSpace, Morphism, Rep, class_of, cokernel, direct_sum, hom_basis, is_ses, kernel

FULL, ZERO, MIXED, TRIVIAL = "Full", "Zero", "Mixed", "Trivial"


def _lam_str(lam) -> str:
    return "oo" if lam == INF else str(lam)


def class_of_label(label: Label) -> str:
    if label.kind == "R":
        return f"R_{_lam_str(label.lam)}"
    return label.kind


def class_keys(q: int) -> list[str]:
    return ["P"] + [f"R_{_lam_str(l)}" for l in omega(q)] + ["Q"]


def points_of(U: KClosedSetDescr) -> list:
    lam_key = lambda v: (v == INF, v if v != INF else 0)
    pts = [Generic()] if U.generic else []
    pts += [Adic(m) for m in sorted(U.M, key=lam_key)]
    pts += [Prufer(t) for t in sorted(U.T, key=lam_key)]
    return pts


def expected_zero_cells(U: KClosedSetDescr) -> set[tuple[str, str]]:
    """Cells where only split sequences survive, according to the vanishing at each point."""
    out = set()
    if U.generic or U.T or U.M:
        out.add(("Q", "P"))
    out |= {(f"R_{_lam_str(m)}", "P") for m in U.M}
    out |= {("Q", f"R_{_lam_str(t)}") for t in U.T}
    return out


def exact_cell(C: Rep, A: Rep, pts, window: int = 4) -> ExactSubspace:
    """``E^U(C, A)`` as the intersection of the pointwise exact subspaces."""
    space = ExtSpace(C, A)
    sub = ExactSubspace(space, np.eye(space.ambient, dtype=np.int64))
    for pt in pts:
        if sub.zero:
            break
        sub = sub & exact_subspace(C, A, pt, window)
    return sub


def _pair(args):
    X, Y, p, pts, window = args
    C, A = build_indec(X, p), build_indec(Y, p)
    space = ExtSpace(C, A)
    if not space.dim:
        return X, Y, 0, 0
    return X, Y, space.dim, exact_cell(C, A, pts, window).dim


@dataclass
class ExtTable:
    U: KClosedSetDescr
    bound: tuple[int, int]
    cells: dict
    pairs: list
    expected_zero: set

    @property
    def mismatches(self) -> list[dict]:
        out = []
        for (x, y), status in sorted(self.cells.items()):
            want_zero = (x, y) in self.expected_zero
            if status == MIXED or (status == ZERO) != want_zero and status != TRIVIAL:
                out.append({"cell": [x, y], "got": status, "expected": ZERO if want_zero else FULL})
        return out

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def to_json(self) -> dict:
        return {
            "U": self.U.to_json(),
            "bound": list(self.bound),
            "cells": {f"{x},{y}": s for (x, y), s in sorted(self.cells.items())},
            "expected_zero": sorted(f"{x},{y}" for x, y in self.expected_zero),
            "pairs_checked": sum(1 for r in self.pairs if r["ext"]),
            "mismatches": self.mismatches,
            "ok": self.ok,
        }

    def render(self) -> str:
        keys = class_keys(self.U.q)
        w = max(len(k) for k in keys + [FULL, TRIVIAL]) + 1
        lines = ["C \\ A".ljust(w) + "".join(k.ljust(w) for k in keys)]
        for x in keys:
            row = [{FULL: "Full", ZERO: "Zero", MIXED: "Mixed", TRIVIAL: "."}[self.cells[(x, y)]] for y in keys]
            lines.append(x.ljust(w) + "".join(c.ljust(w) for c in row))
        return "\n".join(l.rstrip() for l in lines)


def typeI_ext_table(U: KClosedSetDescr, bound=(6, 6), p: int = 5, window: int = 4,
                    jobs: int = 1) -> ExtTable:
    """Full/Zero pattern of ``E^U`` over all representative pairs within ``bound``."""
    labels = labels_within(bound, U.q)
    pts = points_of(U)
    work = [(X, Y, p, pts, window) for X, Y in itertools.product(labels, labels)]
    if jobs > 1:
        with ProcessPoolExecutor(jobs) as ex:
            res = list(ex.map(_pair, work, chunksize=16))
    else:
        res = [_pair(w) for w in work]
    seen: dict[tuple[str, str], set] = {}
    pairs = []
    for X, Y, e, eu in res:
        cell = (class_of_label(X), class_of_label(Y))
        pairs.append({"C": str(X), "A": str(Y), "ext": e, "exact": eu})
        if e:
            seen.setdefault(cell, set()).add(FULL if eu == e else ZERO if eu == 0 else MIXED)
    keys = class_keys(U.q)
    cells = {}
    for cell in itertools.product(keys, keys):
        s = seen.get(cell, set())
        cells[cell] = TRIVIAL if not s else s.pop() if len(s) == 1 else MIXED
    return ExtTable(U, tuple(bound), cells, pairs, expected_zero_cells(U))


def block_pattern(table: ExtTable) -> dict[str, bool]:
    """Which class blocks may still be glued by ``E^U``: ``{"C->A": nonzero}``."""
    groups = lambda k: "p" if k == "P" else "q" if k == "Q" else "r"
    out = {}
    for (x, y), s in table.cells.items():
        if s in (FULL, MIXED):
            gx, gy = groups(x), groups(y)
            if gx != gy:
                out[f"{gx}->{gy}"] = True
    return out


# gldim >= 2 -----------------------------------------------------------------

@dataclass
class GldimWitness:
    U: KClosedSetDescr
    R: Label
    halves: list
    in_EU: list[bool]
    pulled_dim: int
    status: str

    @property
    def ok(self) -> bool:
        return all(self.in_EU) and self.status == "nonzero within bound"

    def to_json(self) -> dict:
        return {
            "U": self.U.to_json(),
            "R": str(self.R),
            "sequence": list(self.halves),
            "halves_in_EU": self.in_EU,
            "pulled_back_dim": self.pulled_dim,
            "status": self.status,
        }


def _default_regular(U: KClosedSetDescr) -> Label:
    for lam in omega(U.q):
        if lam not in U.T and lam not in U.M:
            return Regular(lam, 1)
    raise ValueError("every tube carries a Pruefer or adic point; pass R explicitly")


def gldim2_witness(U: KClosedSetDescr, R: Label | None = None, p: int = 5, window: int = 4) -> GldimWitness:
    """``P1 >-> P0 -> I0 ->> I1`` through a regular ``R``, not 2-split in ``E^U``.

    The composite vanishes in ``Ext^2`` iff the class of the left half lies in
    the image of ``E^U(I0, P1)`` under pullback along ``R -> I0``; that image
    is computed and shown to miss the class.
    """
    R = R or _default_regular(U)
    pts = points_of(U)
    Rr = build_indec(R, p)
    P1_ = build_indec(Preproj(1), p)
    cover = hom_basis(P1_, Rr)
    P0 = direct_sum(*[P1_] * len(cover))
    pi = Morphism.make(P0, Rr, np.hstack([m.f1 for m in cover]), np.hstack([m.f2 for m in cover]))
    K, inc = kernel(pi)
    Q1_ = build_indec(Preinj(1), p)
    hull = hom_basis(Rr, Q1_)
    I0 = direct_sum(*[Q1_] * len(hull))
    j = Morphism.make(Rr, I0, np.vstack([m.f1 for m in hull]), np.vstack([m.f2 for m in hull]))
    I1, cok = cokernel(j)
    left = is_ses(K, P0, Rr, inc, pi)
    right = is_ses(Rr, I0, I1, j, cok)
    assert left and right and pi.is_surjective() and j.is_injective()
    in_EU = []
    for ses in (left, right):
        cell = exact_cell(ses.C, ses.A, pts, window)
        in_EU.append(cell.contains(class_of(ses)))
    # pull E^U(I0, K) back along j into Ext(R, K)
    sub = exact_cell(I0, K, pts, window)
    space_R = ExtSpace(Rr, K)
    pulled = modp.mul(ExtSpace(I0, K).pull_matrix(j), sub.span, p) if sub.span.size else np.zeros(
        (space_R.ambient, 0), np.int64)
    span = np.hstack([pulled, space_R.image]) if pulled.size else space_R.image
    r_span = modp.rank(span, p) if span.size else 0
    target = class_of(left).reshape(-1, 1)
    hit = modp.rank(np.hstack([span, target]), p) == r_span if span.size else not target.any()
    pulled_dim = r_span - (modp.rank(space_R.image, p) if space_R.image.size else 0)
    status = "2-split" if hit else "nonzero within bound"
    halves = [describe(decompose(X)) for X in (K, P0, I0, I1)]
    return GldimWitness(U, R, halves, in_EU, pulled_dim, status)


__all__ = [
    "FULL", "ZERO", "MIXED", "TRIVIAL", "class_of_label", "class_keys", "points_of", "expected_zero_cells",
    "exact_cell", "ExtTable", "typeI_ext_table", "block_pattern", "GldimWitness", "gldim2_witness",
]
