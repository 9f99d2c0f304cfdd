"""Representation-finite models: exact structures from generators containing the projectives.

A model is a data file listing the indecomposables of a path algebra with
their matrices, the expected Hom/Ext dimension tables, the AR sequences and
projective/injective flags.  Loading recomputes all of it and refuses a file
that disagrees.  A generator ``M`` (projectives plus some non-projectives)
gives the structure of sequences on which ``Hom(M, -)`` is exact for every
``M`` in it; its projectives are then exactly ``add(M)``.
"""
from __future__ import annotations

import itertools
import json
from collections import Counter
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

import numpy as np

from ..core.coresolution import gldim, injectives, projectives
from ..core.structure import ExactStructure
from ..core.universe import NotEnoughInjectives, Realization, Step, Summand, Universe
from ..linalg import modp
from .reps import (ExtSpace, QMorphism, QRep, Quiver, class_of, cokernel, direct_sum, hom_basis, hom_dim,
                   is_ses, realize)


class ModelError(ValueError):
    """The data file disagrees with the recomputed tables."""


@dataclass
class ARModel:
    name: str
    quiver: Quiver
    p: int
    ids: tuple[str, ...]
    reps: dict[str, QRep]
    projective: frozenset
    injective: frozenset
    homs: dict
    exts: dict
    ar_sequences: list
    description: str = ""

    @property
    def non_projective(self) -> tuple[str, ...]:
        return tuple(i for i in self.ids if i not in self.projective)

    def to_json(self) -> dict:
        return {
            "name": self.name, "description": self.description, "p": self.p,
            "quiver": {"vertices": self.quiver.n, "arrows": [list(a) for a in self.quiver.arrows]},
            "indecs": [{"id": i, "dims": list(self.reps[i].dims),
                        "mats": [m.tolist() for m in self.reps[i].mats]} for i in self.ids],
            "projective": sorted(self.projective), "injective": sorted(self.injective),
            "homs": self.homs, "exts": {c: {a: v for a, v in row.items() if v} for c, row in self.exts.items()},
            "ar_sequences": self.ar_sequences,
        }


def _table(data: dict, ids) -> dict:
    return {x: {y: int(data.get(x, {}).get(y, 0)) for y in ids} for x in ids}


def model_from_json(d: dict, p: int | None = None) -> ARModel:
    p = p or int(d.get("p", 2))
    Q = Quiver(int(d["quiver"]["vertices"]), tuple(tuple(a) for a in d["quiver"]["arrows"]))
    ids = tuple(e["id"] for e in d["indecs"])
    reps = {}
    for e in d["indecs"]:
        mats = [np.asarray(m, dtype=np.int64).reshape(e["dims"][t], e["dims"][s])
                for (s, t), m in zip(Q.arrows, e["mats"])]
        reps[e["id"]] = QRep.make(Q, e["dims"], mats, p)
    m = ARModel(d["name"], Q, p, ids, reps, frozenset(d["projective"]), frozenset(d["injective"]),
                _table(d["homs"], ids), _table(d.get("exts", {}), ids), list(d["ar_sequences"]),
                d.get("description", ""))
    certify(m)
    return m


def load_model(name_or_path: str, p: int | None = None) -> ARModel:
    path = Path(name_or_path)
    if path.suffix == ".json" and path.exists():
        text = path.read_text()
    else:
        text = resources.files("exact_lattice.data").joinpath(f"{name_or_path.lower()}.json").read_text()
    return model_from_json(json.loads(text), p)


def a3_model(p: int | None = None) -> ARModel:
    return load_model("a3", p)


def a2_model(p: int | None = None) -> ARModel:
    return load_model("a2", p)


def certify(m: ARModel) -> None:
    """Recompute every table in the model; raise ModelError on the first disagreement."""
    u = ModelUniverse(m)
    for x, y in itertools.product(m.ids, m.ids):
        h = hom_dim(m.reps[x], m.reps[y])
        if h != m.homs[x][y]:
            raise ModelError(f"hom({x}, {y}) = {h}, table says {m.homs[x][y]}")
        e = u.space(x, y).dim
        if e != m.exts[x][y]:
            raise ModelError(f"ext({x}, {y}) = {e}, table says {m.exts[x][y]}")
    for x in m.ids:
        if len(hom_basis(m.reps[x], m.reps[x])) != 1:
            raise ModelError(f"End({x}) is not the base field")
        proj = all(m.exts[x][y] == 0 for y in m.ids)
        inj = all(m.exts[y][x] == 0 for y in m.ids)
        if proj != (x in m.projective) or inj != (x in m.injective):
            raise ModelError(f"projective/injective flags of {x} are wrong")
    for seq in m.ar_sequences:
        C, A = seq["end"], seq["start"]
        sp = u.space(C, A)
        if sp.dim != 1:
            raise ModelError(f"Ext({C}, {A}) is not one-dimensional")
        real = u.realize(C, A, (1,))
        if sorted(real.middle) != sorted(seq["middle"]):
            raise ModelError(f"AR sequence {A} -> {C}: middle {real.middle}, file says {seq['middle']}")
    if len(m.ar_sequences) != len(m.non_projective):
        raise ModelError("one AR sequence per non-projective indecomposable expected")


class ModelUniverse(Universe):
    def __init__(self, model: ARModel, seed: int = 0):
        self.model = model
        self.name = model.name
        self.p = model.p
        self._spaces: dict = {}
        self._homs: dict = {}
        self._rng = np.random.default_rng(seed)

    @property
    def pool(self) -> tuple[str, ...]:
        return self.model.ids

    def rep(self, x: str) -> QRep:
        return self.model.reps[x]

    def space(self, C: str, A: str) -> ExtSpace:
        key = (C, A)
        if key not in self._spaces:
            self._spaces[key] = ExtSpace(self.rep(C), self.rep(A))
        return self._spaces[key]

    def ext_orders(self, C, A):
        return (self.p,) * self.space(C, A).dim

    def hom_gens(self, X, Y):
        key = (X, Y)
        if key not in self._homs:
            self._homs[key] = hom_basis(self.rep(X), self.rep(Y))
        return self._homs[key]

    def push(self, f, C, A, A2, x):
        v = self.space(C, A).vector(x)
        return self.space(C, A2).coords(self.space(C, A).push(f, v))

    def pull(self, g, C2, C, A, x):
        v = self.space(C, A).vector(x)
        return self.space(C2, A).coords(self.space(C, A).pull(g, v))

    def unit_scalars(self, C, A):
        return list(range(1, self.p))

    def contains(self, obj) -> bool:
        return obj in self.model.reps

    # decomposition -------------------------------------------------------------
    def multiplicities(self, M: QRep) -> dict[str, int]:
        ids = self.model.ids
        H = np.array([[self.model.homs[x][y] for y in ids] for x in ids], dtype=float)
        h = np.array([hom_dim(self.rep(x), M) for x in ids], dtype=float)
        m = np.rint(np.linalg.solve(H, h)).astype(int)
        if (m < 0).any() or not np.array_equal(H.astype(int) @ m, h.astype(int)):
            raise ModelError(f"{M} does not decompose over the model")
        return {x: int(k) for x, k in zip(ids, m) if k}

    def decompose(self, M: QRep, tries: int = 2000) -> list[tuple[str, QMorphism, QMorphism]]:
        """``[(id, inclusion, projection)]`` for an explicit decomposition of ``M``."""
        p = self.p
        mult = self.multiplicities(M)
        parts = [x for x in sorted(mult) for _ in range(mult[x])]
        if not parts:
            return []
        S = direct_sum([self.rep(x) for x in parts])
        bases = {x: hom_basis(self.rep(x), M) for x in mult}
        for _ in range(tries):
            comps = []
            for x in parts:
                c = self._rng.integers(0, p, len(bases[x]))
                f = bases[x][0].scale(int(c[0]))
                for b, cc in zip(bases[x][1:], c[1:]):
                    f = f + b.scale(int(cc))
                comps.append(f)
            F = QMorphism(S, M, tuple(np.hstack([f.maps[v] for f in comps]) for v in range(M.quiver.n)))
            if F.is_iso():
                break
        else:
            raise ModelError(f"no explicit decomposition of {M} found")
        Finv = [modp.inverse(F.maps[v], p) if M.dims[v] else F.maps[v] for v in range(M.quiver.n)]
        out, offs = [], [0] * M.quiver.n
        for x, f in zip(parts, comps):
            X = self.rep(x)
            proj = QMorphism(M, X, tuple(Finv[v][offs[v]:offs[v] + X.dims[v], :] for v in range(M.quiver.n)))
            out.append((x, f, proj))
            offs = [offs[v] + X.dims[v] for v in range(M.quiver.n)]
        return out

    def realize(self, C, A, x):
        sp = self.space(C, A)
        ses = realize(self.rep(C), self.rep(A), sp.vector(x))
        summ = tuple(Summand(obj, proj @ ses.i, ses.d @ inc) for obj, inc, proj in self.decompose(ses.B))
        return Realization(C, A, tuple(x), ses, summ)

    # injective coresolutions -----------------------------------------------------
    def _radical(self, I: str) -> list[QMorphism]:
        Y = self.rep(I)
        ident = QMorphism.identity(Y)
        out = []
        for phi in self.hom_gens(I, I):
            for c in range(self.p):
                psi = phi + ident.scale(-c % self.p)
                if not psi.is_iso():
                    out.append(psi)
                    break
        return out

    def approximation(self, X: str, inj) -> tuple[list[str], QMorphism | None]:
        """Minimal left ``add(inj)``-approximation of the indecomposable ``X``."""
        p = self.p
        comps, targets = [], []
        for I in inj:
            basis = self.hom_gens(X, I)
            if not basis:
                continue
            rad = []
            for I2 in inj:
                gs = self._radical(I) if I2 == I else self.hom_gens(I2, I)
                rad += [(g @ f).vector() for f in self.hom_gens(X, I2) for g in gs]
            cur = list(rad)
            r = modp.rank(np.stack(cur, axis=1), p) if cur else 0
            for f in basis:
                r2 = modp.rank(np.stack(cur + [f.vector()], axis=1), p)
                if r2 > r:
                    cur.append(f.vector())
                    r = r2
                    comps.append(f)
                    targets.append(I)
        if not comps:
            return [], None
        J = direct_sum([self.rep(t) for t in targets])
        F = QMorphism.make(self.rep(X), J, [np.vstack([f.maps[v] for f in comps]) for v in range(J.quiver.n)])
        return targets, F

    def coresolution_step(self, X, inj, structure) -> Step:
        middle, coker, seqs = [], [], []
        for obj in X:
            targets, f = self.approximation(obj, inj)
            if f is None or not f.is_injective():
                raise NotEnoughInjectives(obj, "approximation by E-injectives is not injective")
            Z, q = cokernel(f)
            ses = is_ses(f.src, f.dst, Z, f, q)
            assert ses
            parts = self.decompose(Z)
            v = class_of(ses)
            sp = ExtSpace(Z, f.src)
            for y, inc, _ in parts:
                x = self.space(y, obj).coords(sp.pull(inc, v))
                if not structure.member(y, obj, x):
                    raise NotEnoughInjectives(obj, f"hull is not an inflation (component {y})")
            middle += targets
            coker += [y for y, _, _ in parts]
            seqs.append(ses)
        return Step(tuple(X), tuple(middle), tuple(coker), tuple(seqs))


# generators and structures ------------------------------------------------------------

@dataclass
class GeneratorLattice:
    model: ARModel
    nodes: list[frozenset]
    edges: list[tuple[int, int]] = field(default_factory=list)

    def label(self, M: frozenset) -> str:
        extra = sorted(M - self.model.projective)
        return "P" + "".join(f"+{x}" for x in extra)


def enumerate_generators(model: ARModel) -> GeneratorLattice:
    """Projectives together with each subset of the non-projective indecomposables."""
    nonp = model.non_projective
    nodes = [frozenset(model.projective) | frozenset(s)
             for k in range(len(nonp) + 1) for s in itertools.combinations(nonp, k)]
    edges = [(i, j) for i, a in enumerate(nodes) for j, b in enumerate(nodes) if a < b and len(b - a) == 1]
    return GeneratorLattice(model, nodes, edges)


def structure_from_generator(model: ARModel, M, universe: ModelUniverse | None = None,
                             check: bool = True) -> ExactStructure:
    """Sequences on which ``Hom(G, -)`` is exact for every ``G`` in ``M``."""
    u = universe or ModelUniverse(model)
    M = frozenset(M)
    if not model.projective <= M:
        raise ValueError("a generator must contain all projectives")
    tests = sorted(M - model.projective)

    def pred(C, A, x):
        if not any(x):
            return True
        # the connecting map Hom(G, C) -> Ext(G, A) must vanish
        return all(not any(u.pull(g, G, C, A, x)) for G in tests for g in u.hom_gens(G, C))

    lab = GeneratorLattice(model, []).label(M)
    e = ExactStructure(u, predicate=pred, name=f"E[{lab}]", provenance=("generator", tuple(sorted(M))))
    if check and set(projectives(e)) != set(M):
        raise ModelError(f"projectives of {e.name} are {sorted(projectives(e))}, expected {sorted(M)}")
    return e


def classify_by_gldim(model: ARModel, bound: int = 10) -> list[dict]:
    u = ModelUniverse(model)
    lat = enumerate_generators(model)
    out = []
    for M in lat.nodes:
        e = structure_from_generator(model, M, u)
        g = gldim(e, bound)
        out.append({"generator": sorted(M), "label": lat.label(M), "name": e.name, "gldim": str(g),
                    "value": g.value, "status": g.status, "size": e.size(),
                    "projectives": sorted(projectives(e)), "injectives": sorted(injectives(e)),
                    "witness": g.witness})
    return out


def order_reversal(model: ARModel) -> list[dict]:
    """Pairs violating ``M <= M'  iff  E_M' <= E_M``; empty when the lattices are anti-isomorphic."""
    u = ModelUniverse(model)
    lat = enumerate_generators(model)
    es = [structure_from_generator(model, M, u, check=False) for M in lat.nodes]
    bad = []
    for (i, a), (j, b) in itertools.product(enumerate(lat.nodes), repeat=2):
        if (a <= b) != (es[j] <= es[i]):
            bad.append({"M": lat.label(a), "M'": lat.label(b)})
    return bad


def lattice_json(model: ARModel, rows: list[dict] | None = None) -> dict:
    lat = enumerate_generators(model)
    rows = rows or classify_by_gldim(model)
    by = {r["label"]: r for r in rows}
    return {
        "model": model.name,
        "nodes": [{"id": lat.label(M), "generator": sorted(M), "gldim": by[lat.label(M)]["gldim"],
                   "size": by[lat.label(M)]["size"]} for M in lat.nodes],
        "edges": [[lat.label(lat.nodes[i]), lat.label(lat.nodes[j])] for i, j in lat.edges],
        "counts": dict(sorted(Counter(r["gldim"] for r in rows).items())),
    }


def lattice_dot(model: ARModel, rows: list[dict] | None = None) -> str:
    js = lattice_json(model, rows)
    lines = [f'digraph "{model.name}" {{', "  rankdir=BT;"]
    for n in js["nodes"]:
        lines.append(f'  "{n["id"]}" [label="{n["id"]}\\ngldim {n["gldim"]}"];')
    for a, b in js["edges"]:
        lines.append(f'  "{a}" -> "{b}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


__all__ = [
    "ARModel", "ModelError", "ModelUniverse", "GeneratorLattice", "model_from_json", "load_model", "a3_model",
    "a2_model", "certify", "enumerate_generators", "structure_from_generator", "classify_by_gldim",
    "order_reversal", "lattice_json", "lattice_dot",
]
