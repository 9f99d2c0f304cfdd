"""Injective coresolutions and global dimension of an exact structure."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from ..linalg import abelian
from .axioms import middle_exact_covariant
from .structure import ExactStructure
from .universe import NotEnoughInjectives, Step

TERMINATED, EXCEEDED, PERIODIC = "Terminated", "ExceededBound", "Periodic"


@dataclass
class Coresolution:
    start: tuple
    steps: list[Step] = field(default_factory=list)
    status: str = TERMINATED
    length: int | None = None
    period: int | None = None

    def to_json(self, u=None) -> dict:
        d = (lambda o: u.describe(o)) if u else str
        return {
            "start": [d(o) for o in self.start],
            "status": self.status,
            "length": self.length,
            "period": self.period,
            "steps": [{"source": [d(o) for o in s.source], "middle": [d(o) for o in s.middle],
                       "cokernel": [d(o) for o in s.cokernel]} for s in self.steps],
        }


@dataclass
class GldimResult:
    value: int | None
    status: str  # "exact" | "greater_than_bound" | "infinite" | "at_least"
    witness: Any = None
    method: str = "coresolution"

    def __str__(self) -> str:
        if self.status == "exact":
            return str(self.value)
        if self.status == "infinite":
            return "Infinite"
        if self.status == "greater_than_bound":
            return f"GreaterThanBound({self.value})"
        return f">={self.value}"

    def to_json(self) -> dict:
        return {"value": self.value, "status": self.status, "method": self.method,
                "display": str(self), "witness": self.witness}


def injectives(e: ExactStructure) -> tuple:
    """Pool objects ``I`` with ``Ext_E(X, I) = 0`` for every pool object ``X``."""
    u = e.universe
    out = []
    for I in u.pool:
        if all(e.cell(X, I) == {u.ext_zero(X, I)} for X in u.pool):
            out.append(I)
    return tuple(out)


def projectives(e: ExactStructure) -> tuple:
    u = e.universe
    return tuple(P for P in u.pool
                 if all(e.cell(P, X) == {u.ext_zero(P, X)} for X in u.pool))


def _key(objs) -> tuple:
    return tuple(sorted(objs, key=repr))


def injective_coresolution(e: ExactStructure, X, bound: int = 10) -> Coresolution:
    u = e.universe
    inj = injectives(e)
    start = _key(X if isinstance(X, tuple) and not u.contains(X) else (X,))
    res = Coresolution(start)
    seen = {start: 0}
    cur = start
    while True:
        if all(o in inj for o in cur):
            res.status, res.length = TERMINATED, len(res.steps)
            return res
        if len(res.steps) >= bound:
            res.status = EXCEEDED
            return res
        step = u.coresolution_step(cur, inj, e)
        res.steps.append(step)
        cur = _key(step.cokernel)
        if cur in seen:
            res.status, res.period = PERIODIC, len(res.steps) - seen[cur]
            return res
        seen[cur] = len(res.steps)


def right_exactness_witness(e: ExactStructure):
    """First (sequence, X) where ``Ext_E(X, B) -> Ext_E(X, C)`` is not onto, or None."""
    u = e.universe
    for C, A in u.cells():
        for x in sorted(e.cell(C, A)):
            if not any(x):
                continue
            real = u.realize(C, A, x)
            for X in u.pool:
                imgs = [u.push(s.proj, X, s.obj, C, g) for s in real.summands
                        for g in e.generators(X, s.obj)]
                im = abelian.subgroup_order(imgs, u.ext_orders(X, C))
                if im != len(e.cell(X, C)):
                    return {"sequence": {"C": u.describe(C), "A": u.describe(A), "class": list(x),
                                         "middle": [u.describe(o) for o in real.middle]},
                            "test_object": u.describe(X), "image_order": im,
                            "target_order": len(e.cell(X, C))}
    return None


def gldim_by_criterion(e: ExactStructure) -> GldimResult:
    """Decide 0 / 1 / at least 2 without injectives (Ext^2 vanishing test)."""
    u = e.universe
    if all(e.cell(C, A) == {u.ext_zero(C, A)} for C, A in u.cells()):
        return GldimResult(0, "exact", method="ext1-vanishing")
    w = right_exactness_witness(e)
    if w is None:
        return GldimResult(1, "exact", method="right-exactness")
    return GldimResult(2, "at_least", witness={"ext2_nonzero": w}, method="right-exactness")


def injective_dimension(e: ExactStructure, X, bound: int = 10):
    co = injective_coresolution(e, X, bound)
    if co.status == TERMINATED:
        return GldimResult(co.length, "exact", witness=co)
    if co.status == PERIODIC:
        return GldimResult(None, "infinite", witness=co)
    return GldimResult(bound, "greater_than_bound", witness=co)


def gldim(e: ExactStructure, bound: int = 10, objects=None) -> GldimResult:
    """Maximum injective dimension over the pool.

    A periodic coresolution anywhere gives ``infinite``.  Objects without an
    inflation into an injective send the decision to the Ext^2 criterion.
    """
    u = e.universe
    objects = u.pool if objects is None else objects
    best = GldimResult(0, "exact")
    stuck = []
    for X in objects:
        try:
            r = injective_dimension(e, X, bound)
        except NotEnoughInjectives as exc:
            stuck.append(exc)
            continue
        if r.status == "infinite":
            r.witness = {"object": u.describe(X), "coresolution": r.witness.to_json(u)}
            return r
        if r.status == "greater_than_bound":
            best = GldimResult(bound, "greater_than_bound", witness={"object": u.describe(X)})
        elif best.status == "exact" and r.value > best.value:
            best = GldimResult(r.value, "exact",
                               witness={"object": u.describe(X), "coresolution": r.witness.to_json(u)})
    if not stuck:
        return best
    crit = gldim_by_criterion(e)
    crit.witness = dict(crit.witness or {}, no_injective_hull=[str(x.obj) for x in stuck])
    if best.status != "exact":
        return best
    if crit.status == "exact":
        # criterion decides 0/1 for the whole universe
        return crit if crit.value >= best.value else GldimResult(best.value, "exact", best.witness)
    return GldimResult(max(2, best.value), "at_least", crit.witness, "right-exactness")


def right_exact(e: ExactStructure) -> bool:
    return right_exactness_witness(e) is None


__all__ = [
    "Coresolution", "GldimResult", "injectives", "projectives", "injective_coresolution",
    "injective_dimension", "gldim", "gldim_by_criterion", "right_exactness_witness", "right_exact",
    "middle_exact_covariant",
]
