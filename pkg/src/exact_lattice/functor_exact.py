"""Exact structures induced by additive functors, and the torsion-pair instance.

For an additive functor ``f`` between two universes, a structure ``S`` on the
source and a structure ``T`` on the target, ``S_f`` keeps the sequences of
``S`` that ``f`` sends to sequences of ``T``.  ``S_f`` need not be exact; the
axiom checker decides, and a failing pullback or pushout is returned as the
witness.

The shipped functors live on truncated ``Z_(p)``-module universes, which stand
in for finitely generated abelian groups localized at ``p``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable

from .core import ExactStructure, check_exact_axioms, gldim, maximal
from .core.coresolution import GldimResult, right_exact
from .core.universe import Universe
from .dvr import ext as dext
from .dvr.modules import DvrModule, DvrMorphism, exactness_defects, is_injective, is_ses
from .dvr.structures import _sub, is_exact_Eprime, torsion_part
from .dvr.universe import R, DvrUniverse

EXACT, LEFT, RIGHT, UNKNOWN = "exact", "left-exact", "right-exact", "unknown"


class IncompatibleUniverses(ValueError):
    pass


@dataclass
class AdditiveFunctor:
    name: str
    source: Universe
    target: Universe
    obj: Callable[[DvrModule], DvrModule]
    mor: Callable[[DvrMorphism], DvrMorphism]

    def __call__(self, x):
        return self.mor(x) if isinstance(x, DvrMorphism) else self.obj(x)

    def on_sequence(self, ses):
        return (self.obj(ses.A), self.obj(ses.B), self.obj(ses.C), self.mor(ses.i), self.mor(ses.d))

    def functoriality_violations(self, limit: int = 5) -> list[dict]:
        """Identities and composites of hom generators over the pool."""
        u, p = self.source, self.source.p
        out = []
        for X in u.pool:
            if self.mor(DvrMorphism.identity(X, p)).matrix != DvrMorphism.identity(self.obj(X), p).matrix:
                out.append({"identity": str(X)})
        for X, Y, Z in itertools.product(u.pool, repeat=3):
            for g in u.hom_gens(X, Y):
                for h in u.hom_gens(Y, Z):
                    if self.mor(h @ g).matrix != (self.mor(h) @ self.mor(g)).matrix:
                        out.append({"composite": [str(X), str(Y), str(Z)]})
                        if len(out) >= limit:
                            return out
        return out

    def to_json(self) -> dict:
        return {"name": self.name, "source": self.source.name, "target": self.target.name}


def _blocks(M: DvrModule):
    return list(range(M.free_rank)), list(range(M.free_rank, M.ngens))


def identity_functor(u: DvrUniverse) -> AdditiveFunctor:
    return AdditiveFunctor("id", u, u, lambda X: X, lambda f: f)


def torsion_functor(u: DvrUniverse, target: DvrUniverse | None = None) -> AdditiveFunctor:
    """``X -> t(X)``, restricting morphisms to torsion submodules."""
    def obj(X):
        return DvrModule(0, X.torsion)

    def mor(f):
        src, dst = obj(f.src), obj(f.dst)
        return _sub(f, _blocks(f.dst)[1], _blocks(f.src)[1], src, dst)

    return AdditiveFunctor("t", u, target or torsion_universe(u), obj, mor)


def free_quotient_functor(u: DvrUniverse, target: DvrUniverse | None = None) -> AdditiveFunctor:
    """``X -> X / t(X)``."""
    def obj(X):
        return DvrModule(X.free_rank, ())

    def mor(f):
        return _sub(f, _blocks(f.dst)[0], _blocks(f.src)[0], obj(f.src), obj(f.dst))

    return AdditiveFunctor("1/t", u, target or free_universe(u), obj, mor)


class _Restricted(DvrUniverse):
    def __init__(self, base: DvrUniverse, pool, scan, tag: str):
        super().__init__(base.p, base.N, base.margin, base.free)
        self._pool, self._scan = tuple(pool), tuple(scan)
        self.name = f"{base.name}[{tag}]"


def torsion_universe(u: DvrUniverse) -> DvrUniverse:
    return _Restricted(u, [X for X in u.pool if X.is_torsion], [X for X in u.scan if X.is_torsion], "torsion")


def free_universe(u: DvrUniverse) -> DvrUniverse:
    return _Restricted(u, [R], [R], "free")


# membership of sequences with decomposable ends ------------------------------

def sequence_member(e: ExactStructure, ses) -> bool:
    """Is a certified sequence in ``e``?  Checked componentwise on its class."""
    p = e.universe.p
    C, A = ses.C, ses.A
    if not C.torsion or A.is_zero:
        return True
    x = dext.class_of(ses, p)
    objs = [R if a is None else DvrModule.cyclic(a) for a in A.exps]
    k = 0
    for m in C.torsion:
        for X in objs:
            if (x[k],) not in e.cell(DvrModule.cyclic(m), X):
                return False
            k += 1
    return True


def image_member(f: AdditiveFunctor, target: ExactStructure, ses) -> bool:
    fA, fB, fC, fi, fd = f.on_sequence(ses)
    s = is_ses(fA, fB, fC, fi, fd)
    return bool(s) and sequence_member(target, s)


# exactness class ---------------------------------------------------------------

@dataclass
class ExactnessClass:
    kind: str
    checked: int
    witnesses: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"kind": self.kind, "checked": self.checked, "witnesses": self.witnesses}


def exactness_class(f: AdditiveFunctor, S: ExactStructure | None = None) -> ExactnessClass:
    """Left/right exactness of ``f`` certified on every sequence of ``S`` over the pool."""
    u = f.source
    S = S or maximal(u)
    wit, n = {}, 0
    for C, A, x in S.members():
        n += 1
        bad = exactness_defects(*f.on_sequence(u.realize(C, A, x).ses))
        seq = {"C": str(C), "A": str(A), "class": list(x)}
        if bad & {"left", "middle", "complex"}:
            wit.setdefault("left", dict(seq, defects=sorted(bad)))
        if bad & {"right", "middle", "complex"}:
            wit.setdefault("right", dict(seq, defects=sorted(bad)))
        if len(wit) == 2:
            break
    kind = {(): EXACT, ("right",): LEFT, ("left",): RIGHT}.get(tuple(sorted(wit)), UNKNOWN)
    return ExactnessClass(kind, n, wit)


# induced structures ------------------------------------------------------------

@dataclass
class InvalidWitness:
    """``S_f`` fails an axiom; ``witness`` is the first failing pushout/pullback (or other axiom)."""

    name: str
    axiom: str
    witness: dict

    def __bool__(self) -> bool:
        return False

    def to_json(self) -> dict:
        return {"name": self.name, "valid": False, "axiom": self.axiom, "witness": self.witness}


def induced_structure(f: AdditiveFunctor, S: ExactStructure, target: ExactStructure,
                      check: bool = True) -> ExactStructure | InvalidWitness:
    if S.universe is not f.source or target.universe is not f.target:
        raise IncompatibleUniverses(f"{f.name}: {S.universe.name} -> {target.universe.name}")
    u = f.source
    name = f"{S.name}_{f.name}"

    def pred(C, A, x):
        if not S.member(C, A, x):
            return False
        return not any(x) or image_member(f, target, u.realize(C, A, x).ses)

    e = ExactStructure(u, predicate=pred, name=name, provenance=("induced", f.name, target.name))
    if check:
        report = check_exact_axioms(e, stop_at_first=True)
        if not report.ok:
            bad = report.failed[0]
            return InvalidWitness(name, bad.name, bad.witness)
    return e


# torsion pairs ------------------------------------------------------------------

@dataclass
class TorsionPair:
    """``(T, F)`` given by the torsion subobject functor on a DVR universe."""

    universe: DvrUniverse
    in_T: Callable[[DvrModule], bool]
    in_F: Callable[[DvrModule], bool]
    name: str = "(torsion, free)"

    def violations(self) -> list[dict]:
        u, out = self.universe, []
        for X, Y in itertools.product(u.pool, repeat=2):
            if self.in_T(X) and self.in_F(Y) and any(not g.is_zero() for g in u.hom_gens(X, Y)):
                out.append({"rule": "Hom(T,F)=0", "T": str(X), "F": str(Y)})
        for X in u.pool:
            if not (self.in_T(X) or self.in_F(X)):
                out.append({"rule": "every indecomposable in T or F", "object": str(X)})
        return out

    def hereditary_violations(self) -> list[dict]:
        """Monomorphisms ``Y >-> X`` with ``X`` in ``T`` and ``Y`` not in ``T``."""
        u, out = self.universe, []
        for X, Y in itertools.product(u.pool, repeat=2):
            if self.in_T(X) and not self.in_T(Y):
                for g in u.hom_gens(Y, X):
                    if is_injective(g):
                        out.append({"rule": "T closed under subobjects", "sub": str(Y), "object": str(X)})
        return out

    @property
    def hereditary(self) -> bool:
        return not self.hereditary_violations()

    def idempotent(self) -> bool:
        return all(DvrModule(0, DvrModule(0, X.torsion).torsion) == DvrModule(0, X.torsion)
                   for X in self.universe.pool)

    def to_json(self) -> dict:
        return {"name": self.name, "T": [str(X) for X in self.universe.pool if self.in_T(X)],
                "F": [str(X) for X in self.universe.pool if self.in_F(X)],
                "hereditary": self.hereditary, "violations": self.violations()}


def torsion_free_pair(u: DvrUniverse) -> TorsionPair:
    return TorsionPair(u, lambda X: X.is_torsion, lambda X: X.torsion == ())


class PairRejected(ValueError):
    def __init__(self, witness: list[dict]):
        super().__init__(f"torsion pair rejected: {witness[0]}")
        self.witness = witness


def torsion_structure(u: DvrUniverse, pair: TorsionPair) -> ExactStructure:
    """``B_t``: sequences whose torsion part and torsion-free quotient are both short exact."""
    bad = pair.violations() or pair.hereditary_violations()
    if bad:
        raise PairRejected(bad)

    def pred(C, A, x):
        return not any(x) or is_exact_Eprime(u.realize(C, A, x).ses)

    return ExactStructure(u, predicate=pred, name="B_t", provenance=("torsion pair", pair.name))


def in_torsion_structure(ses) -> bool:
    """Membership test for an explicit sequence, without reference to a universe."""
    return is_exact_Eprime(ses)


def split_by_pair(ses):
    """``(t(sigma), sigma / t(sigma))`` as raw triples of maps."""
    return torsion_part(ses)


@dataclass
class GldimIdentity:
    B_t: object
    T: object
    F: object
    ext1_witness: dict
    ext2_vanishes: bool

    @property
    def values(self) -> tuple:
        return (self.B_t.value, self.T.value, self.F.value)

    @property
    def holds(self) -> bool:
        exact = all(r.status == "exact" for r in (self.B_t, self.T, self.F))
        return exact and self.B_t.value == max(self.T.value, self.F.value)

    def to_json(self) -> dict:
        return {"gldim": {"B_t": self.B_t.to_json(), "T": self.T.to_json(), "F": self.F.to_json()},
                "values": list(self.values), "identity_holds": self.holds,
                "ext1_witness": self.ext1_witness, "ext2_vanishes": self.ext2_vanishes}


def _first_nonsplit(e: ExactStructure) -> dict | None:
    u = e.universe
    for C, A, x in e.members():
        if any(x):
            real = u.realize(C, A, x)
            return {"C": str(C), "A": str(A), "class": list(x), "middle": [str(m) for m in real.middle]}
    return None


def gldim_torsion_identity(u: DvrUniverse, pair: TorsionPair | None = None, bound: int = 10) -> GldimIdentity:
    """gldim of ``B_t``, of ``T`` and of ``F``, each computed by the core engine."""
    pair = pair or torsion_free_pair(u)
    Bt = torsion_structure(u, pair)
    uT = _Restricted(u, [X for X in u.pool if pair.in_T(X)], [X for X in u.scan if pair.in_T(X)], "T")
    uF = _Restricted(u, [X for X in u.pool if pair.in_F(X)], [X for X in u.scan if pair.in_F(X)], "F")
    gB = gldim(Bt, bound)
    gT = gldim(maximal(uT), bound) if uT.pool else GldimResult(0, "exact", method="empty class")
    gF = gldim(maximal(uF), bound) if uF.pool else GldimResult(0, "exact", method="empty class")
    return GldimIdentity(gB, gT, gF, _first_nonsplit(Bt), right_exact(Bt))


__all__ = [
    "AdditiveFunctor", "identity_functor", "torsion_functor", "free_quotient_functor", "torsion_universe",
    "free_universe", "sequence_member", "image_member", "ExactnessClass", "exactness_class", "InvalidWitness",
    "induced_structure", "IncompatibleUniverses", "TorsionPair", "torsion_free_pair", "PairRejected",
    "torsion_structure", "in_torsion_structure", "split_by_pair", "GldimIdentity", "gldim_torsion_identity",
    "EXACT", "LEFT", "RIGHT", "UNKNOWN",
]
