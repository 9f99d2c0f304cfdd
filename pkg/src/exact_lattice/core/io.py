"""Universe files.

A universe file is a JSON object::

    {"kind": "dvr" | "quiver-model", "params": {...},
     "objects": [{"id", "summands"}],
     "homs": [{"src", "dst", "group", "generators"}],
     "ses": [{"A", "B", "C", "i", "d"}]}

``kind`` and ``params`` rebuild the universe.  The other three sections are
an exported snapshot.  On load they are recomputed and compared, and every
listed sequence is re-certified, so a stale or edited file is rejected.
"""
from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .universe import StructuralError, Universe


def _mor(f) -> list:
    if hasattr(f, "matrix"):
        return [[str(v) for v in row] for row in f.matrix]
    if hasattr(f, "maps"):
        return [np.asarray(m).tolist() for m in f.maps]
    return repr(f)


def universe_to_json(u: Universe, with_ses: bool = True) -> dict:
    kind, params = _identify(u)
    ids = [u.describe(X) for X in u.pool]
    homs = []
    for X in u.pool:
        for Y in u.pool:
            gens = u.hom_gens(X, Y)
            homs.append({"src": u.describe(X), "dst": u.describe(Y),
                         "group": _hom_group(u, X, Y, gens), "generators": [_mor(g) for g in gens]})
    seqs = []
    if with_ses:
        for C, A in u.cells():
            for x in u.ext_elements(C, A):
                r = u.realize(C, A, x)
                s = r.ses
                seqs.append({"A": u.describe(A), "C": u.describe(C), "class": list(x),
                             "B": [u.describe(m) for m in r.middle], "i": _mor(s.i), "d": _mor(s.d)})
    return {"kind": kind, "params": params, "objects": [{"id": i, "summands": [i]} for i in ids],
            "homs": homs, "ses": seqs}


def _hom_group(u: Universe, X, Y, gens) -> list[int]:
    p = getattr(u, "p", None)
    if hasattr(u, "model"):
        return [p] * len(gens)
    from ..dvr.modules import hom_group
    return list(hom_group(X, Y, p))


def _identify(u: Universe) -> tuple[str, dict]:
    from ..dvr.universe import DvrUniverse
    from ..enomoto.model import ModelUniverse
    if isinstance(u, DvrUniverse):
        return "dvr", {"p": u.p, "N": u.N, "margin": u.margin, "free": u.free}
    if isinstance(u, ModelUniverse):
        return "quiver-model", {"p": u.p, "model": u.model.to_json()}
    raise StructuralError(f"no file format for {type(u).__name__}")


def universe_from_json(d: dict, verify: bool = True) -> Universe:
    kind, params = d.get("kind"), d.get("params", {})
    if kind == "dvr":
        from ..dvr.universe import DvrUniverse
        u = DvrUniverse(params.get("p", 2), params.get("N", 5), params.get("margin", 1), params.get("free", True))
    elif kind == "quiver-model":
        from ..enomoto.model import ModelUniverse, model_from_json
        u = ModelUniverse(model_from_json(params["model"], params.get("p")))
    else:
        raise StructuralError(f"unknown universe kind {kind!r}")
    if verify and ("objects" in d or "homs" in d or "ses" in d):
        fresh = universe_to_json(u, with_ses="ses" in d)
        for key in ("objects", "homs", "ses"):
            if key in d and _canon(d[key]) != _canon(fresh[key]):
                raise StructuralError(f"section {key!r} does not match the recomputed universe")
    return u


def _canon(v):
    return json.dumps(v, sort_keys=True)


def dump_universe(u: Universe, path, with_ses: bool = True) -> None:
    Path(path).write_text(json.dumps(universe_to_json(u, with_ses), sort_keys=True, indent=1) + "\n")


def load_universe(path, verify: bool = True) -> Universe:
    return universe_from_json(json.loads(Path(path).read_text()), verify)


__all__ = ["universe_to_json", "universe_from_json", "dump_universe", "load_universe"]
