"""Meets, joins and the closed-set side of the lattice of exact structures."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Hashable, Iterable, Sequence

from .structure import ExactStructure, check_same_universe


class UnsupportedJoin(ValueError):
    pass


@dataclass(frozen=True)
class ClosedProvenance:
    """Records that a structure was built from the closed set ``closed`` of ``model``.

    ``model.structure(closed)`` must rebuild it.
    """

    model: object
    closed: frozenset

    def __repr__(self) -> str:
        return f"closed({sorted(map(str, self.closed))})"


def closed_of(e: ExactStructure):
    prov = e.provenance
    return prov if isinstance(prov, ClosedProvenance) else None


def meet(e: ExactStructure, f: ExactStructure) -> ExactStructure:
    check_same_universe(e, f)
    ce, cf = closed_of(e), closed_of(f)
    prov = None
    if ce and cf and ce.model is cf.model:
        prov = ClosedProvenance(ce.model, ce.closed | cf.closed)
    return ExactStructure(e.universe, cell_fn=lambda C, A: e.cell(C, A) & f.cell(C, A),
                          name=f"({e.name} ^ {f.name})", provenance=prov)


def meet_all(structures: Sequence[ExactStructure]) -> ExactStructure:
    out = structures[0]
    for s in structures[1:]:
        out = meet(out, s)
    return out


def join(e: ExactStructure, f: ExactStructure,
         lattice: Sequence[ExactStructure] | None = None) -> ExactStructure:
    """Least upper bound.

    Uses the closed-set side (intersection of closed sets) when both inputs
    carry closed-set provenance, otherwise the meet of all members of an
    enumerated ``lattice`` lying above both.
    """
    check_same_universe(e, f)
    ce, cf = closed_of(e), closed_of(f)
    if ce and cf and ce.model is cf.model:
        return ce.model.structure(ce.closed & cf.closed)
    if lattice is not None:
        above = [s for s in lattice if e <= s and f <= s]
        if not above:
            raise UnsupportedJoin("no enumerated structure lies above both inputs")
        j = meet_all(above)
        for s in above:
            if s == j:
                return s
        raise UnsupportedJoin("meet of upper bounds is not in the enumerated lattice")
    raise UnsupportedJoin("join needs closed-set provenance or an enumerated lattice")


def ziegler_set(e: ExactStructure, points: Iterable[Hashable],
                point_structure: Callable[[Hashable], ExactStructure]) -> frozenset:
    """Points ``U`` for which every sequence of ``e`` is ``Hom(-, U)``-exact."""
    return frozenset(pt for pt in points if e <= point_structure(pt))


def order_reversal_violations(pairs: Sequence[tuple[ExactStructure, frozenset]]):
    """Pairs breaking ``E <= E'  <=>  U_E  contains  U_E'``."""
    bad = []
    for a, (ea, ua) in enumerate(pairs):
        for b, (eb, ub) in enumerate(pairs):
            if (ea <= eb) != (ua >= ub):
                bad.append((a, b))
    return bad


def is_glb(m: ExactStructure, e: ExactStructure, f: ExactStructure,
           lattice: Sequence[ExactStructure]) -> bool:
    if not (m <= e and m <= f):
        return False
    return all(s <= m for s in lattice if s <= e and s <= f)


def is_lub(j: ExactStructure, e: ExactStructure, f: ExactStructure,
           lattice: Sequence[ExactStructure]) -> bool:
    if not (e <= j and f <= j):
        return False
    return all(j <= s for s in lattice if e <= s and f <= s)
