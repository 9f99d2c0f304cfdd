"""Finite Krull-Schmidt universes.

A universe fixes a finite list of indecomposable objects (the *pool*), and for
every ordered pair of them a presentation of Ext^1 as a finite abelian group
(direct sum of cyclic groups).  Elements of Ext^1 are Yoneda classes; the
universe can realize each class as an explicit, certified short exact sequence
and can transport classes along morphisms (pushout and pullback).

Direct sums are handled additively: a sequence between decomposable objects is
in an exact structure iff all of its components are.
"""
from __future__ import annotations

import abc
from dataclasses import dataclass, field
from typing import Any, Hashable, Sequence

from ..linalg import abelian

Obj = Hashable
Elem = tuple[int, ...]


class StructuralError(ValueError):
    """Malformed input data (shapes, endpoints), as opposed to a mathematical rejection."""


class IncompletePool(RuntimeError):
    """A computation needed a cell that the universe does not represent."""


class NotEnoughInjectives(RuntimeError):
    def __init__(self, obj, reason: str = ""):
        super().__init__(f"no inflation of {obj} into an injective ({reason})")
        self.obj = obj
        self.reason = reason


@dataclass(frozen=True)
class Rejection:
    """A mathematically well-formed triple that is not short exact."""

    reason: str  # "not_composable_to_zero" | "not_injective" | "not_surjective" | "homology_nonzero"
    detail: str = ""

    def __bool__(self) -> bool:
        return False


@dataclass(frozen=True)
class ShortExactSeq:
    """``A --i--> B --d--> C`` together with the checks that certified it."""

    A: Any
    B: Any
    C: Any
    i: Any
    d: Any
    certificate: tuple[str, ...] = ("d_after_i_zero", "i_injective", "d_surjective", "ker_d_in_im_i")


@dataclass(frozen=True)
class Summand:
    obj: Obj
    inc: Any  # component of the inflation  A -> B_k
    proj: Any  # component of the deflation B_k -> C


@dataclass(frozen=True)
class Realization:
    """A realized Ext class with its middle term split into pool-indexed indecomposables."""

    C: Obj
    A: Obj
    x: Elem
    ses: ShortExactSeq
    summands: tuple[Summand, ...]

    @property
    def middle(self) -> tuple[Obj, ...]:
        return tuple(sorted((s.obj for s in self.summands), key=repr))


@dataclass(frozen=True)
class Step:
    """One injective coresolution step ``X >-> J ->> X'`` with summand ids."""

    source: tuple[Obj, ...]
    middle: tuple[Obj, ...]
    cokernel: tuple[Obj, ...]
    ses: Any = field(default=None, compare=False)


class Universe(abc.ABC):
    """Backend interface consumed by the generic exact-structure engine."""

    name: str = "universe"

    @property
    @abc.abstractmethod
    def pool(self) -> tuple[Obj, ...]:
        """Indecomposables whose Ext cells form the sequence pool."""

    @property
    def scan(self) -> tuple[Obj, ...]:
        """Indecomposables used as extra sources/targets by the axiom scan."""
        return self.pool

    @abc.abstractmethod
    def ext_orders(self, C: Obj, A: Obj) -> tuple[int, ...]:
        """Cyclic orders presenting Ext^1(C, A)."""

    @abc.abstractmethod
    def hom_gens(self, X: Obj, Y: Obj) -> list:
        """Generators of Hom(X, Y) as a module over the base ring."""

    @abc.abstractmethod
    def push(self, f, C: Obj, A: Obj, A2: Obj, x: Elem) -> Elem:
        """Class of the pushout of ``x`` in Ext(C, A) along ``f: A -> A2``."""

    @abc.abstractmethod
    def pull(self, g, C2: Obj, C: Obj, A: Obj, x: Elem) -> Elem:
        """Class of the pullback of ``x`` in Ext(C, A) along ``g: C2 -> C``."""

    @abc.abstractmethod
    def realize(self, C: Obj, A: Obj, x: Elem) -> Realization:
        """Certified sequence representing ``x`` with decomposed middle term."""

    def unit_scalars(self, C: Obj, A: Obj) -> list[int]:
        """Integers acting on Ext(C, A) through automorphisms (iso-closure scan)."""
        return [1]

    def describe(self, obj: Obj) -> str:
        return str(obj)

    def describe_morphism(self, f) -> Any:
        return repr(f)

    def contains(self, obj: Obj) -> bool:
        return obj in self.pool or obj in self.scan

    # injective coresolutions; backends that support them override this
    def coresolution_step(self, X: tuple[Obj, ...], injectives: Sequence[Obj], structure) -> Step:
        raise NotEnoughInjectives(X, "backend has no approximation routine")

    # helpers
    def ext_elements(self, C: Obj, A: Obj):
        return abelian.elements(self.ext_orders(C, A))

    def ext_zero(self, C: Obj, A: Obj) -> Elem:
        return abelian.zero(self.ext_orders(C, A))

    def cells(self, objs: Sequence[Obj] | None = None):
        objs = self.pool if objs is None else objs
        return [(C, A) for C in objs for A in objs]
