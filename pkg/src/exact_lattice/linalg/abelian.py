"""Finite abelian groups presented as direct sums of cyclic groups Z/n_1 + ... + Z/n_k.

Elements are tuples of residues.  Subgroups are described by generating sets.
"""
from __future__ import annotations

import itertools
import math
from typing import Iterable, Sequence

Elem = tuple[int, ...]


def order(orders: Sequence[int]) -> int:
    return math.prod(orders)


def zero(orders: Sequence[int]) -> Elem:
    return tuple(0 for _ in orders)


def add(x: Elem, y: Elem, orders: Sequence[int]) -> Elem:
    return tuple((a + b) % n for a, b, n in zip(x, y, orders))


def neg(x: Elem, orders: Sequence[int]) -> Elem:
    return tuple((-a) % n for a, n in zip(x, orders))


def scale(c: int, x: Elem, orders: Sequence[int]) -> Elem:
    return tuple((c * a) % n for a, n in zip(x, orders))


def elements(orders: Sequence[int]) -> Iterable[Elem]:
    return itertools.product(*(range(n) for n in orders))


def lattice_index(vectors: Iterable[Sequence[int]], k: int) -> int:
    """Index in Z^k of the lattice spanned by ``vectors`` (0 if not full rank)."""
    rows = [list(v) for v in vectors if any(v)]
    index = 1
    for c in range(k):
        pivot_rows = [r for r in rows if r[c] != 0]
        rest = [r for r in rows if r[c] == 0]
        while len(pivot_rows) > 1:
            pivot_rows.sort(key=lambda r: abs(r[c]))
            piv = pivot_rows[0]
            new = [piv]
            for r in pivot_rows[1:]:
                q = r[c] // piv[c]
                r2 = [a - q * b for a, b in zip(r, piv)]
                if r2[c] != 0:
                    new.append(r2)
                elif any(r2):
                    rest.append(r2)
            pivot_rows = new
        if not pivot_rows:
            return 0
        index *= abs(pivot_rows[0][c])
        rows = rest
    return index


def subgroup_order(gens: Iterable[Elem], orders: Sequence[int]) -> int:
    """Order of the subgroup generated by ``gens``."""
    k = len(orders)
    if k == 0:
        return 1
    vecs = [list(g) for g in gens]
    vecs += [[n if i == j else 0 for j in range(k)] for i, n in enumerate(orders)]
    return order(orders) // lattice_index(vecs, k)


def span(gens: Iterable[Elem], orders: Sequence[int]) -> frozenset[Elem]:
    """All elements of the subgroup generated by ``gens`` (small groups only)."""
    seen = {zero(orders)}
    frontier = list(seen)
    gens = [tuple(g) for g in gens]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = add(x, g, orders)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return frozenset(seen)


def is_subgroup(subset: frozenset[Elem] | set[Elem], orders: Sequence[int]) -> tuple[bool, tuple | None]:
    """Closure under the group law; returns a failing pair on violation."""
    if zero(orders) not in subset:
        return False, (zero(orders), zero(orders))
    for x in subset:
        for y in subset:
            if add(x, y, orders) not in subset:
                return False, (x, y)
    return True, None


def element_order(x: Elem, orders: Sequence[int]) -> int:
    o = 1
    for a, n in zip(x, orders):
        o = math.lcm(o, n // math.gcd(a, n))
    return o
