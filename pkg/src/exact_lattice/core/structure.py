"""Exact structures as Ext^1-subgroups over the cells of a universe.

A structure is given intensionally, by a per-element predicate or a per-cell
function, and memoizes its extensional form.  Cells outside the pool are
evaluated on demand from the intensional description; ``overrides`` replace
individual pool cells (used to build deliberately broken structures).
"""
from __future__ import annotations

from typing import Any, Callable, Mapping

from ..linalg import abelian
from .universe import Elem, IncompletePool, Obj, Universe

Predicate = Callable[[Obj, Obj, Elem], bool]
CellFn = Callable[[Obj, Obj], frozenset]


class ExactStructure:
    def __init__(self, universe: Universe, *, predicate: Predicate | None = None,
                 cell_fn: CellFn | None = None, name: str = "",
                 provenance: Any = None, overrides: Mapping | None = None):
        if (predicate is None) == (cell_fn is None):
            raise ValueError("give exactly one of predicate / cell_fn")
        self.universe = universe
        self._predicate = predicate
        self._cell_fn = cell_fn
        self.name = name
        self.provenance = provenance
        self._overrides = dict(overrides or {})
        self._cells: dict = {}
        self._gens: dict = {}

    def __repr__(self) -> str:
        return f"ExactStructure({self.name!r})"

    def cell(self, C: Obj, A: Obj) -> frozenset:
        key = (C, A)
        if key in self._overrides:
            return self._overrides[key]
        hit = self._cells.get(key)
        if hit is None:
            if not self.universe.contains(C) or not self.universe.contains(A):
                raise IncompletePool(f"cell ({C}, {A}) outside the universe")
            if self._cell_fn is not None:
                hit = frozenset(self._cell_fn(C, A))
            else:
                hit = frozenset(x for x in self.universe.ext_elements(C, A) if self._predicate(C, A, x))
            self._cells[key] = hit
        return hit

    def member(self, C: Obj, A: Obj, x: Elem) -> bool:
        return tuple(x) in self.cell(C, A)

    def generators(self, C: Obj, A: Obj) -> list[Elem]:
        """A small generating set of the cell (assumes it is a subgroup)."""
        key = (C, A)
        if key not in self._gens:
            orders = self.universe.ext_orders(C, A)
            cell = self.cell(C, A)
            gens: list[Elem] = []
            span = {abelian.zero(orders)}
            for x in sorted(cell, key=lambda e: -abelian.element_order(e, orders)):
                if x not in span:
                    gens.append(x)
                    span = set(abelian.span(gens, orders))
                    if len(span) == len(cell):
                        break
            self._gens[key] = gens
        return self._gens[key]

    def bitmap(self) -> dict:
        return {cell: self.cell(*cell) for cell in self.universe.cells()}

    def members(self):
        for C, A in self.universe.cells():
            for x in sorted(self.cell(C, A)):
                yield C, A, x

    def size(self) -> int:
        return sum(len(s) for s in self.bitmap().values())

    def without(self, C: Obj, A: Obj, x: Elem, name: str | None = None) -> "ExactStructure":
        """Copy with a single class removed from one pool cell."""
        cell = self.cell(C, A) - {tuple(x)}
        overrides = dict(self._overrides)
        overrides[(C, A)] = cell
        return ExactStructure(self.universe, predicate=self._predicate, cell_fn=self._cell_fn,
                              name=name or f"{self.name} minus {x} in ({C},{A})",
                              provenance=None, overrides=overrides)

    def __le__(self, other: "ExactStructure") -> bool:
        check_same_universe(self, other)
        return all(self.cell(*c) <= other.cell(*c) for c in self.universe.cells())

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExactStructure):
            return NotImplemented
        check_same_universe(self, other)
        return all(self.cell(*c) == other.cell(*c) for c in self.universe.cells())

    def __hash__(self) -> int:
        return hash(tuple(sorted((repr(c), tuple(sorted(s))) for c, s in self.bitmap().items())))

    def to_json(self) -> dict:
        u = self.universe
        return {
            "name": self.name,
            "cells": [
                {"C": u.describe(C), "A": u.describe(A), "orders": list(u.ext_orders(C, A)),
                 "members": [list(x) for x in sorted(self.cell(C, A))]}
                for C, A in u.cells()
            ],
        }


def check_same_universe(e: ExactStructure, f: ExactStructure) -> None:
    if e.universe is not f.universe:
        raise ValueError("exact structures live on different universes")


def maximal(universe: Universe, name: str = "E_max") -> ExactStructure:
    return ExactStructure(universe, cell_fn=lambda C, A: frozenset(universe.ext_elements(C, A)),
                          name=name)


def split(universe: Universe, name: str = "split") -> ExactStructure:
    return ExactStructure(universe, cell_fn=lambda C, A: frozenset([universe.ext_zero(C, A)]),
                          name=name)


def hom_exact_structure(universe: Universe, points, connecting, name: str = "") -> ExactStructure:
    """Sequences on which ``Hom(-, U)`` is exact for every ``U`` in ``points``.

    ``connecting(U, C, A, x)`` must return True iff the connecting map
    ``Hom(A, U) -> Ext(C, U)`` vanishes on ``x``.
    """
    points = tuple(points)

    def pred(C, A, x):
        return all(connecting(U, C, A, x) for U in points)

    return ExactStructure(universe, predicate=pred, name=name or f"E^{list(points)}",
                          provenance=("points", points))
