"""Ext^1 of an exact structure as a finite abelian group."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any

from ..linalg import abelian
from .structure import ExactStructure
from .universe import IncompletePool


@dataclass(frozen=True)
class ExtGroup:
    C: Any
    A: Any
    ambient: tuple[int, ...]  # cyclic orders of the full Ext^1(C, A)
    invariants: tuple[int, ...]  # prime-power cyclic orders of the subgroup
    elements: frozenset = field(repr=False)
    universe: Any = field(default=None, repr=False, compare=False)

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def zero(self):
        return abelian.zero(self.ambient)

    def add(self, x, y):
        return abelian.add(x, y, self.ambient)

    def neg(self, x):
        return abelian.neg(x, self.ambient)

    def representative(self, x):
        """Certified short exact sequence realizing the class ``x``."""
        if tuple(x) not in self.elements:
            raise KeyError(x)
        return self.universe.realize(self.C, self.A, tuple(x))


def _prime_factors(n: int) -> list[int]:
    out, q = [], 2
    while q * q <= n:
        if n % q == 0:
            out.append(q)
            while n % q == 0:
                n //= q
        q += 1
    if n > 1:
        out.append(n)
    return out


def _log(n: int, q: int) -> int:
    e = 0
    while n > 1:
        n //= q
        e += 1
    return e


def invariants(elements, orders) -> tuple[int, ...]:
    """Elementary divisors of a finite subgroup from its torsion counts."""
    elements = list(elements)
    out: list[int] = []
    for q in _prime_factors(len(elements)):
        top = max(_log(math.gcd(abelian.element_order(x, orders), q ** 64), q) for x in elements)
        # r[k] = log_q |H[q^k]|
        r = [0] + [_log(sum(1 for x in elements if not any(abelian.scale(q ** k, x, orders))), q)
                   for k in range(1, top + 1)]
        ge = [r[k] - r[k - 1] for k in range(1, top + 1)] + [0]
        for k in range(top):
            out += [q ** (k + 1)] * (ge[k] - ge[k + 1])
    return tuple(sorted(out))


def ext1(e: ExactStructure, C, A) -> ExtGroup:
    u = e.universe
    if not (u.contains(C) and u.contains(A)):
        raise IncompletePool(f"({u.describe(C)}, {u.describe(A)}) is outside the universe")
    orders = tuple(u.ext_orders(C, A))
    cell = e.cell(C, A)
    return ExtGroup(C, A, orders, invariants(cell, orders), cell, u)
