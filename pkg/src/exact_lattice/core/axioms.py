"""Exhaustive axiom check for an exact structure on a finite universe.

Checked conditions, in order:

* ``split``        every cell contains the split class;
* ``baer_sum``     every cell is closed under Baer sum;
* ``isomorphism``  closed under isomorphisms of sequences (automorphisms of the ends);
* ``pushout``      pushouts of member sequences along morphisms out of the first term stay in;
* ``pullback``     pullbacks along morphisms into the third term stay in;
* ``composition``  for every member ``A >-> B ->> C`` and every ``X`` the induced
  sequences ``F(X, A) -> F(X, B) -> F(X, C)`` and ``F(C, X) -> F(B, X) -> F(A, X)``
  are exact in the middle; for a bifunctor closed under pushout and pullback this
  is equivalent to closure of inflations and deflations under composition.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from ..linalg import abelian
from .structure import ExactStructure
from .universe import IncompletePool

PASS, FAIL, UNTESTABLE = "pass", "fail", "untestable"


@dataclass
class AxiomResult:
    name: str
    status: str = PASS
    checked: int = 0
    witness: dict | None = None
    note: str = ""


@dataclass
class AxiomReport:
    structure: str
    results: list[AxiomResult] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(r.status == PASS for r in self.results)

    @property
    def failed(self) -> list[AxiomResult]:
        return [r for r in self.results if r.status == FAIL]

    def result(self, name: str) -> AxiomResult:
        return next(r for r in self.results if r.name == name)

    def to_json(self) -> dict:
        return {
            "structure": self.structure,
            "ok": self.ok,
            "axioms": [
                {"name": r.name, "status": r.status, "checked": r.checked,
                 "witness": r.witness, "note": r.note}
                for r in self.results
            ],
        }


def _seq(u, C, A, x) -> dict:
    return {"C": u.describe(C), "A": u.describe(A), "class": list(x)}


def check_exact_axioms(e: ExactStructure, *, stop_at_first: bool = False,
                       composition: bool = True) -> AxiomReport:
    u = e.universe
    report = AxiomReport(e.name)
    pool = u.pool
    scan = tuple(dict.fromkeys(tuple(pool) + tuple(u.scan)))

    def done() -> bool:
        return stop_at_first and not report.ok

    # split
    r = AxiomResult("split")
    for C, A in u.cells():
        r.checked += 1
        if u.ext_zero(C, A) not in e.cell(C, A):
            r.status, r.witness = FAIL, {"axiom": "split", "cell": _seq(u, C, A, u.ext_zero(C, A))}
            break
    report.results.append(r)
    if done():
        return report

    # baer sum
    r = AxiomResult("baer_sum")
    for C, A in u.cells():
        orders = u.ext_orders(C, A)
        r.checked += 1
        ok, pair = abelian.is_subgroup(e.cell(C, A), orders)
        if not ok:
            x, y = pair
            r.status = FAIL
            r.witness = {"axiom": "baer_sum", "sequence": _seq(u, C, A, x), "other": list(y),
                         "sum": list(abelian.add(x, y, orders))}
            break
    report.results.append(r)
    subgroups = r.status == PASS
    if done():
        return report

    # isomorphism closure (pushout along automorphisms)
    r = AxiomResult("isomorphism")
    for C, A in u.cells():
        orders = u.ext_orders(C, A)
        cell = e.cell(C, A)
        for x in sorted(cell):
            for unit in u.unit_scalars(C, A):
                r.checked += 1
                y = abelian.scale(unit, x, orders)
                if y not in cell:
                    r.status = FAIL
                    r.witness = {"axiom": "pushout", "kind": "automorphism", "sequence": _seq(u, C, A, x),
                                 "morphism": f"{unit}*id", "result": _seq(u, C, A, y)}
                    break
            if r.status == FAIL:
                break
        if r.status == FAIL:
            break
    report.results.append(r)
    if done():
        return report

    # pushout / pullback
    for kind in ("pushout", "pullback"):
        r = AxiomResult(kind)
        try:
            _scan_transport(e, kind, scan, r)
        except IncompletePool as exc:
            r.status, r.note = UNTESTABLE, str(exc)
        report.results.append(r)
        if done():
            return report

    if composition:
        r = AxiomResult("composition")
        if not subgroups:
            r.status, r.note = UNTESTABLE, "cells are not subgroups"
        else:
            _scan_middle_exactness(e, r)
        report.results.append(r)
    return report


def _scan_transport(e: ExactStructure, kind: str, scan, r: AxiomResult) -> None:
    u = e.universe
    pool = set(u.pool)
    for C in scan:
        for A in scan:
            src = e.cell(C, A)
            if not src:
                continue
            for Z in scan:
                # only transports touching the pool are scanned
                if kind == "pushout":
                    if not ({C, A} <= pool or {C, Z} <= pool):
                        continue
                    maps = u.hom_gens(A, Z)
                    target = (C, Z)
                else:
                    if not ({C, A} <= pool or {Z, A} <= pool):
                        continue
                    maps = u.hom_gens(Z, C)
                    target = (Z, A)
                if not maps:
                    continue
                tcell = e.cell(*target)
                for x in sorted(src):
                    for f in maps:
                        r.checked += 1
                        if kind == "pushout":
                            y = u.push(f, C, A, Z, x)
                        else:
                            y = u.pull(f, Z, C, A, x)
                        if y not in tcell:
                            r.status = FAIL
                            r.witness = {"axiom": kind, "sequence": _seq(u, C, A, x),
                                         "morphism": u.describe_morphism(f),
                                         "result": _seq(u, *target, y)}
                            return


def _scan_middle_exactness(e: ExactStructure, r: AxiomResult) -> None:
    u = e.universe
    for C, A in u.cells():
        for x in sorted(e.cell(C, A)):
            if not any(x):
                continue
            real = u.realize(C, A, x)
            if not all(u.contains(s.obj) for s in real.summands):
                r.status = UNTESTABLE
                r.note = f"middle term of {_seq(u, C, A, x)} leaves the universe"
                continue
            for X in u.pool:
                r.checked += 1
                cov = middle_exact_covariant(e, X, real)
                con = middle_exact_contravariant(e, X, real)
                if not (cov and con):
                    r.status = FAIL
                    r.witness = {"axiom": "composition", "sequence": _seq(u, C, A, x),
                                 "test_object": u.describe(X),
                                 "side": "covariant" if not cov else "contravariant"}
                    return


def _order_of_image(u, images: list[tuple], orders: list[int]) -> int:
    return abelian.subgroup_order(images, orders)


def middle_exact_covariant(e: ExactStructure, X, real) -> bool:
    """Exactness of ``F(X, A) -> F(X, B) -> F(X, C)`` at ``F(X, B)``."""
    u = e.universe
    C, A = real.C, real.A
    summ = real.summands
    orders_B = [list(u.ext_orders(X, s.obj)) for s in summ]
    flat_B = [n for o in orders_B for n in o]
    total_B = 1
    for s in summ:
        total_B *= len(e.cell(X, s.obj))
    # image of d_*
    imgs_d = []
    for s in summ:
        for g in e.generators(X, s.obj):
            imgs_d.append(u.push(s.proj, X, s.obj, C, g))
    im_d = _order_of_image(u, imgs_d, list(u.ext_orders(X, C)))
    # image of i_*
    imgs_i = []
    for g in e.generators(X, A):
        v: list[int] = []
        for s in summ:
            v.extend(u.push(s.inc, X, A, s.obj, g))
        imgs_i.append(tuple(v))
    im_i = _order_of_image(u, imgs_i, flat_B)
    return total_B == im_d * im_i


def middle_exact_contravariant(e: ExactStructure, X, real) -> bool:
    """Exactness of ``F(C, X) -> F(B, X) -> F(A, X)`` at ``F(B, X)``."""
    u = e.universe
    C, A = real.C, real.A
    summ = real.summands
    flat_B = [n for s in summ for n in u.ext_orders(s.obj, X)]
    total_B = 1
    for s in summ:
        total_B *= len(e.cell(s.obj, X))
    imgs_i = []
    for s in summ:
        for g in e.generators(s.obj, X):
            imgs_i.append(u.pull(s.inc, A, s.obj, X, g))
    im_i = _order_of_image(u, imgs_i, list(u.ext_orders(A, X)))
    imgs_d = []
    for g in e.generators(C, X):
        v: list[int] = []
        for s in summ:
            v.extend(u.pull(s.proj, s.obj, C, X, g))
        imgs_d.append(tuple(v))
    im_d = _order_of_image(u, imgs_d, flat_B)
    return total_B == im_d * im_i
