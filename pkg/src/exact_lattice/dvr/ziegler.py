"""Closed sets of the truncated DVR spectrum, their exact structures, gaps and gldim.

Points are the finite-length modules ``R/P^n`` (stored as the integer ``n``,
``1 <= n <= N``) and the adic point ``"adic"``.  The injective points
(quotient field and Pruefer module) lie in every closed set and are left
implicit.  A closed set ``S`` corresponds to the structure of sequences on
which ``Hom(-, R/P^n)`` is exact for ``n in S`` and, if ``"adic" in S``, the
torsion functor is exact as well.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable

from ..core.coresolution import Coresolution, GldimResult, gldim, PERIODIC
from ..core.lattice import ClosedProvenance, ziegler_set
from ..core.structure import ExactStructure
from ..core.universe import Step
from .modules import DvrModule, DvrMorphism, cokernel, hom_generators, hom_length, is_ses
from .structures import ExponentSet, is_exact_EL, is_exact_Eprime
from .universe import DvrUniverse, T

ADIC = "adic"


@dataclass(frozen=True)
class ClosedSet:
    finite: frozenset = frozenset()
    adic: bool = False

    @classmethod
    def of(cls, points: Iterable) -> "ClosedSet":
        pts = set(points)
        return cls(frozenset(p for p in pts if p != ADIC), ADIC in pts)

    @property
    def points(self) -> frozenset:
        return self.finite | ({ADIC} if self.adic else frozenset())

    def to_json(self) -> dict:
        return {"finite": sorted(self.finite), "adic": self.adic}

    def __str__(self) -> str:
        parts = [f"R/P^{n}" for n in sorted(self.finite)] + (["Adic"] if self.adic else [])
        return "{" + ", ".join(parts) + "}"


def space(N: int) -> tuple:
    return tuple(range(1, N + 1)) + (ADIC,)


def classify_closed_sets(N: int) -> list[ClosedSet]:
    """Every closed subset of the truncated space (relative to the injective points).

    Finite L gives ``U_L``; any L together with the adic point gives ``V_L``.
    """
    out = []
    for r in range(N + 1):
        for L in itertools.combinations(range(1, N + 1), r):
            out.append(ClosedSet(frozenset(L), False))
            out.append(ClosedSet(frozenset(L), True))
    return sorted(out, key=lambda c: (len(c.points), sorted(c.finite), c.adic))


def is_closed(points, infinite_tail: bool = False) -> bool:
    """An infinite set of finite-length points is only closed together with the adic point."""
    return ADIC in set(points) or not infinite_tail


def closure(points, N: int, infinite_tail: bool = False) -> ClosedSet:
    """Smallest listed closed set containing ``points`` (rule-based)."""
    pts = set(points)
    bad = [p for p in pts if p != ADIC and not (isinstance(p, int) and 1 <= p <= N)]
    if bad:
        raise ValueError(f"points {bad} outside the truncated space of size {N}")
    if infinite_tail:
        pts.add(ADIC)
    return ClosedSet.of(pts)


def gap_detect(L) -> tuple[int, int] | None:
    """Least interval [a, b] missing from L with b+1 in L and (a = 1 or a-1 in L)."""
    L = set(L)
    if not L:
        return None
    top = max(L)
    for a in range(1, top + 1):
        if a in L or not (a == 1 or a - 1 in L):
            continue
        b = a
        while b + 1 not in L:
            b += 1
        return (a, b)
    return None


class DvrModel:
    """Exact structures of the truncated universe indexed by closed sets."""

    def __init__(self, p: int = 2, N: int = 5, margin: int = 1):
        self.p, self.N = p, N
        self.universe = DvrUniverse(p, N, margin)
        self._structures: dict = {}
        self._eprime: dict = {}

    @property
    def points(self) -> tuple:
        return space(self.N)

    # membership ingredients, cached per class
    def _torsion_exact(self, C, A, x) -> bool:
        key = (C, A, x)
        if key not in self._eprime:
            self._eprime[key] = is_exact_Eprime(self.universe.realize(C, A, x).ses)
        return self._eprime[key]

    def member(self, closed: ClosedSet, C, A, x) -> bool:
        if not any(x):
            return True
        ses = self.universe.realize(C, A, x).ses
        for n in closed.finite:
            if hom_length(ses.B, n) != hom_length(ses.A, n) + hom_length(ses.C, n):
                return False
        return not closed.adic or self._torsion_exact(C, A, x)

    def structure(self, closed) -> ExactStructure:
        if not isinstance(closed, ClosedSet):
            closed = ClosedSet.of(closed)
        if closed not in self._structures:
            name = ("E'" if closed.adic else "E") + "_" + str(sorted(closed.finite))
            if not closed.points:
                name = "E_max"
            self._structures[closed] = ExactStructure(
                self.universe, predicate=lambda C, A, x, c=closed: self.member(c, C, A, x),
                name=name, provenance=ClosedProvenance(self, closed.points))
        return self._structures[closed]

    def E_L(self, L) -> ExactStructure:
        return self.structure(ClosedSet(frozenset(L), False))

    def E_prime(self, L=()) -> ExactStructure:
        return self.structure(ClosedSet(frozenset(L), True))

    def E_max(self) -> ExactStructure:
        return self.structure(ClosedSet())

    def point_structure(self, pt) -> ExactStructure:
        return self.structure(ClosedSet.of([pt]))

    def closed_set_of(self, e: ExactStructure) -> ClosedSet:
        """Points U with ``e <= E^U`` (structure-derived closed set)."""
        return ClosedSet.of(ziegler_set(e, self.points, self.point_structure))

    def closure(self, points) -> ClosedSet:
        """Closure computed through the structures: U_{E(S)}."""
        return self.closed_set_of(self.structure(ClosedSet.of(points)))

    def definitional(self, L, C, A, x) -> bool:
        """Membership in E_L decided by SNF surjectivity of Hom(-, R/P^n) on the realization."""
        return is_exact_EL(self.universe.realize(C, A, x).ses, L)


def _approx_map(X: DvrModule, targets: list[DvrModule], p: int) -> DvrMorphism:
    """Sum of the generating maps X -> J_k, with J = sum J_k in canonical order."""
    J = DvrModule()
    rows = []
    for t in sorted(targets, key=lambda m: -m.torsion[0]):
        J = J + t
        rows.append(list(hom_generators(X, t, p)[0].matrix[0]))
    return DvrMorphism.make(X, J, rows, p)


def periodic_coresolution(L, gap: tuple[int, int] | None = None, p: int = 2) -> Coresolution:
    """Explicit periodic injective E_L-coresolution attached to a gap of L.

    a = 1:        s = b,  R/P^b >-> R/P^{b+1} ->> R/P  and  R/P >-> R/P^{b+1} ->> R/P^b
    a + b even:   s = (a+b)/2,  R/P^s >-> R/P^{a-1} + R/P^{b+1} ->> R/P^s
    a + b odd:    s = (a+b-1)/2,  alternating between R/P^s and R/P^{s+1}
    """
    L = set(L)
    gap = gap or gap_detect(L)
    if gap is None:
        raise ValueError(f"L = {sorted(L)} has no gaps")
    a, b = gap
    if any(n in L for n in range(a, b + 1)) or b + 1 not in L or (a > 1 and a - 1 not in L):
        raise ValueError(f"{gap} is not a gap of {sorted(L)}")
    if a == 1:
        s = b
        middle = [T(b + 1)]
        chain = [T(b), T(1), T(b)]
    elif (a + b) % 2 == 0:
        s = (a + b) // 2
        middle = [T(a - 1), T(b + 1)]
        chain = [T(s), T(s)]
    else:
        s = (a + b - 1) // 2
        middle = [T(a - 1), T(b + 1)]
        chain = [T(s), T(s + 1), T(s)]
    co = Coresolution((T(s),))
    for src, dst in zip(chain, chain[1:]):
        i = _approx_map(src, middle, p)
        Y, d = cokernel(i)
        if Y != dst:
            raise AssertionError(f"cokernel {Y} differs from the expected {dst}")
        ses = is_ses(src, i.dst, Y, i, d)
        if not ses or not is_exact_EL(ses, L):
            raise AssertionError(f"step {src} -> {i.dst} -> {Y} is not an E_L sequence")
        co.steps.append(Step((src,), tuple(middle), (Y,), ses))
    co.status, co.period = PERIODIC, len(co.steps)
    return co


def injective_points(L) -> list[int]:
    """R/P^n with n in L are E_L-injective."""
    return sorted(L)


def gldim_EL(L, N: int | None = None, *, adic: bool = False, infinite_tail: bool = False,
             p: int = 2, check: bool = True) -> GldimResult:
    """Global dimension of E_L (or E'_L with ``adic``).

    Gaps give ``infinite`` with the explicit periodic witness; no gaps give 1,
    cross-checked on the truncated universe by the core engine when ``check``;
    every finite length plus the adic point gives the split structure.
    """
    L = ExponentSet.of(L, infinite_tail)
    fin = set(L.finite)
    if L.infinite_tail and not adic:
        raise ValueError("an infinite L is only closed together with the adic point")
    g = gap_detect(fin)
    if g is None and L.infinite_tail:
        if N is not None and fin >= set(range(1, N + 1)):
            return GldimResult(0, "exact", witness={"structure": "split"}, method="whole-spectrum")
    if g is not None:
        co = periodic_coresolution(fin, g, p)
        return GldimResult(None, "infinite", method="periodic-coresolution",
                           witness={"gap": list(g), "coresolution": co.to_json()})
    if check:
        N = N or max(fin | {1})
        model = DvrModel(p, N)
        e = model.E_prime(fin) if adic else model.E_L(fin)
        res = gldim(e)
        if res.status != "exact" or res.value > 1:
            raise AssertionError(f"core engine disagrees: {res}")
        return GldimResult(1 if res.value >= 1 else res.value, "exact", res.witness, res.method)
    return GldimResult(1, "exact", method="radical-formula")
