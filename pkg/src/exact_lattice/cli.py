"""``exact-lattice``: batch front end.

Exit codes: 0 on success, 1 when a verification fails (the report carries the
witness), 2 on a usage error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from pathlib import Path

from . import __version__
from .config import ENV_VAR, FORMATS, Config, load_config


class UsageError(ValueError):
    pass


# argument helpers ------------------------------------------------------------------

def _ints(text: str) -> list[int]:
    return [int(t) for t in text.replace(";", ",").split(",") if t.strip()] if text else []


def _pair(text: str) -> tuple[int, int]:
    a = _ints(text)
    if len(a) != 2:
        raise argparse.ArgumentTypeError("expected two integers, e.g. 6,6")
    return a[0], a[1]


def _points(text: str):
    from .dvr import ADIC
    out = []
    for t in filter(None, (s.strip() for s in (text or "").split(","))):
        out.append(ADIC if t.lower() in ("adic", "a") else int(t))
    return out


def _dvr_module(text: str):
    from .dvr import R, T
    t = text.strip()
    if t in ("R", "free", "Z"):
        return R
    return T(int(t.split("^")[-1]) if "^" in t else int(t))


def _descr(text: str | None, q: int):
    from .quiver import KClosedSetDescr
    if not text:
        return KClosedSetDescr.make(q, generic=True)
    src = Path(text).read_text() if Path(text).is_file() else text
    d = json.loads(src)
    d.setdefault("q", q)
    return KClosedSetDescr.from_json(d)


def _labels(text: str):
    from .quiver import parse_label
    return [parse_label(t.strip()) for t in text.split(";") if t.strip()]


# commands -----------------------------------------------------------------------------

def cmd_dvr(a, cfg: Config):
    from .dvr import (ExtElement, classify_closed_sets, closure, ext_group, gldim_EL, is_exact_EL,
                      is_exact_Eprime, rad_ext, realize)
    from .linalg import abelian
    p, N = cfg.p, cfg.N
    if a.action == "ext":
        C, A = _dvr_module(a.m), _dvr_module(a.l)
        orders = ext_group(C, A, p)
        elems = []
        for x in abelian.elements(orders):
            s = realize(C, A, x, p)
            row = {"class": list(x), "middle": str(s.B)}
            if len(x) == 1:
                row["label"] = ExtElement(C.torsion[0], A.exps[0], x[0], p).label_str()
            elems.append(row)
        return {"C": str(C), "A": str(A), "p": p, "orders": list(orders), "order": abelian.order(orders),
                "elements": elems}, 0
    if a.action == "rad":
        C, A = _dvr_module(a.m), _dvr_module(a.l)
        orders, gens = rad_ext(a.n, C, A, p)
        return {"C": str(C), "A": str(A), "n": a.n, "p": p, "orders": list(orders),
                "generators": [list(g) for g in gens], "order": abelian.order(orders)}, 0
    if a.action == "membership":
        C, A = _dvr_module(a.m), _dvr_module(a.l)
        x = tuple(_ints(a.cls))
        if len(x) != len(ext_group(C, A, p)):
            raise UsageError(f"class must have {len(ext_group(C, A, p))} coordinates")
        s = realize(C, A, x, p)
        L = _ints(a.L)
        member = is_exact_EL(s, L) and (not a.adic or is_exact_Eprime(s))
        return {"C": str(C), "A": str(A), "class": list(x), "middle": str(s.B), "L": L, "adic": a.adic,
                "member": member}, 0
    if a.action == "closed-sets":
        sets = classify_closed_sets(N)
        return {"N": N, "count": len(sets), "closed_sets": [c.to_json() for c in sets]}, 0
    if a.action == "closure":
        c = closure(_points(a.points), N, a.infinite_tail)
        return {"N": N, "points": a.points, "closure": c.to_json(), "display": str(c)}, 0
    if a.action == "gldim":
        r = gldim_EL(_ints(a.L), N, adic=a.adic, infinite_tail=a.infinite_tail, p=p)
        return {"L": _ints(a.L), "adic": a.adic, "infinite_tail": a.infinite_tail, "gldim": r.to_json()}, 0
    if a.action == "lattice":
        from .core.lattice import order_reversal_violations
        from .verify import _dvr_model
        model = _dvr_model(p, N)
        sets = classify_closed_sets(N)
        es = [model.structure(U) for U in sets]
        names = [e.name for e in es]
        le = {(i, j) for i in range(len(es)) for j in range(len(es)) if i != j and es[i] <= es[j]}
        covers = sorted((names[i], names[j]) for i, j in le
                        if not any((i, k) in le and (k, j) in le for k in range(len(es))))
        bad = order_reversal_violations([(e, U.points) for e, U in zip(es, sets)])
        return {"N": N, "p": p, "nodes": [{"name": n, "closed_set": U.to_json()} for n, U in zip(names, sets)],
                "covers": [list(c) for c in covers], "order_reversal_violations": len(bad)}, 1 if bad else 0
    raise UsageError(a.action)


def cmd_dedekind(a, cfg: Config):
    from .dvr import ZModule, dedekind_classify_closed, dedekind_ext_decompose
    primes = _ints(a.primes)
    if a.action == "ext":
        n = {}
        for item in filter(None, (a.n or "").split(",")):
            P, v = item.split("=")
            n[int(P)] = int(v)
        r = dedekind_ext_decompose(ZModule.parse(a.X), ZModule.parse(a.Y), primes, _ints(a.M), n)
        r["components"] = {str(k): v for k, v in r["components"].items()}
        return {"X": a.X, "Y": a.Y, "primes": primes, **r}, 0
    sets = dedekind_classify_closed(primes, cfg.N)
    return {"primes": primes, "N": cfg.N, "count": len(sets), "closed_sets": [s.to_json() for s in sets]}, 0


def cmd_kronecker(a, cfg: Config):
    from .quiver import (build_indec, ext_dim, gldim2_witness, hom_dim, is_ziegler_closed,
                         labels_within, typeI_ext_table, typeII_structure)
    q = cfg.q
    if a.action == "indec":
        labs = _labels(a.label) if a.label else labels_within(cfg.dim_bound, q)
        out = []
        for lab in labs:
            X = build_indec(lab, q)
            out.append({"label": str(lab), "dimv": list(X.dimv), "alpha": X.a.tolist(), "beta": X.b.tolist()})
        return {"q": q, "indecomposables": out}, 0
    if a.action in ("hom", "ext"):
        (X,), (Y,) = _labels(a.X), _labels(a.Y)
        fn = hom_dim if a.action == "hom" else ext_dim
        return {"X": str(X), "Y": str(Y), "q": q, a.action: fn(build_indec(X, q), build_indec(Y, q))}, 0
    U = _descr(a.descr, q)
    if a.action == "closed-check":
        ok, viol = is_ziegler_closed(U)
        return {"descr": U.to_json(), "closed": ok, "violations": viol}, 0
    if a.action == "ext-table":
        tb = typeI_ext_table(U, cfg.dim_bound, q, cfg.window, cfg.jobs)
        res = tb.to_json()
        res["text"] = tb.render()
        return res, 0 if tb.ok else 1
    if a.action == "gldim-witness":
        w = gldim2_witness(U, p=q, window=cfg.window)
        return w.to_json(), 0 if w.ok else 1
    if a.action == "typeII":
        if not a.H:
            raise UsageError("typeII needs --H, e.g. --H '(0,1);(1,2);(3,4)'")
        E = typeII_structure(_labels(a.H), q)
        if a.probe:
            return {"structure": E.to_json(),
                    "coresolutions": [E.coresolution(l, cfg.bound, not a.no_period).to_json()
                                      for l in _labels(a.probe)]}, 0
        return {"structure": E.to_json(), "probe": E.gldim_probe(cfg.dim_bound, q, cfg.bound)}, 0
    raise UsageError(a.action)


def cmd_enomoto(a, cfg: Config):
    from .enomoto import classify_by_gldim, enumerate_generators, lattice_dot, lattice_json, load_model
    model = load_model(a.model, cfg.p)
    action = "classify" if a.classify else (a.action or "enumerate")
    if action == "enumerate":
        lat = enumerate_generators(model)
        res = {"model": model.name, "p": model.p, "count": len(lat.nodes),
               "generators": [{"label": lat.label(M), "generator": sorted(M)} for M in lat.nodes],
               "edges": [[lat.label(lat.nodes[i]), lat.label(lat.nodes[j])] for i, j in lat.edges]}
        if a.dot:
            res["dot"] = lattice_dot(model)
        return res, 0
    rows = classify_by_gldim(model, cfg.bound)
    ok = [r for r in rows if r["status"] == "exact" and r["value"] <= 1]
    rest = sorted({r["gldim"] for r in rows if r not in ok})
    parts = [f"{len(ok)} hereditary"] + [f"{sum(r['gldim'] == g for r in rows)} of gldim {g}" for g in rest]
    res = {"model": model.name, "p": model.p, "count": len(rows), "summary": ", ".join(parts),
           "structures": [{k: r[k] for k in ("label", "name", "gldim", "size", "projectives", "injectives")}
                          for r in rows], "lattice": lattice_json(model, rows)}
    if a.dot:
        res["dot"] = lattice_dot(model, rows)
    return res, 0


def cmd_functor(a, cfg: Config):
    from .core import maximal, split
    from .dvr import DvrUniverse
    from .functor_exact import (exactness_class, free_quotient_functor, gldim_torsion_identity, identity_functor,
                                induced_structure, torsion_free_pair, torsion_functor, torsion_structure)
    u = DvrUniverse(cfg.p, N=a.N or 2, margin=cfg.margin)
    if a.action == "induce":
        f = {"id": identity_functor, "t": torsion_functor, "free": free_quotient_functor}[a.functor](u)
        src = maximal(u)
        tgt = {"max": maximal, "split": split}[a.target](f.target)
        e = induced_structure(f, src, tgt)
        res = {"functor": f.to_json(), "exactness": exactness_class(f).to_json(), "target": a.target,
               "functorial": not f.functoriality_violations()}
        if e:
            res.update(valid=True, name=e.name, size=e.size(),
                       equals_torsion_structure=e == torsion_structure(u, torsion_free_pair(u)))
        else:
            res.update(e.to_json())
        return res, 0
    if a.action == "torsion":
        pair = torsion_free_pair(u)
        Bt = torsion_structure(u, pair)
        return {"pair": pair.to_json(), "structure": Bt.name, "size": Bt.size(),
                "cells": {f"{C},{A}": [list(x) for x in sorted(Bt.cell(C, A))] for C, A in u.cells()}}, 0
    r = gldim_torsion_identity(u, bound=cfg.bound)
    return r.to_json(), 0 if r.holds and r.ext2_vanishes else 1


def cmd_verify(a, cfg: Config):
    from .verify import run_suite
    checks = run_suite(a.suite, cfg)
    failed = [c for c in checks if not c.passed]
    res = {"suite": a.suite, "passed": len(checks) - len(failed), "failed": len(failed),
           "checks": [c.to_json(a.timing) for c in checks], "lines": [c.line(a.timing) for c in checks]}
    return res, 1 if failed else 0


# output --------------------------------------------------------------------------------

def _rows_for_csv(res: dict) -> list[dict]:
    for key in ("structures", "closed_sets", "elements", "checks", "indecomposables", "generators", "coresolutions"):
        if isinstance(res.get(key), list) and res[key] and isinstance(res[key][0], dict):
            return res[key]
    return [{k: v for k, v in res.items() if not isinstance(v, (dict, list))}]


def render(report: dict, fmt: str) -> str:
    res = report["results"]
    if fmt == "json":
        return json.dumps(report, sort_keys=True, indent=2, default=str) + "\n"
    if fmt == "csv":
        rows = _rows_for_csv(res)
        cols = sorted({k for r in rows for k in r})
        buf = io.StringIO()
        w = csv.DictWriter(buf, cols, lineterminator="\n")
        w.writeheader()
        for r in rows:
            w.writerow({k: json.dumps(v, sort_keys=True) if isinstance(v, (dict, list)) else v for k, v in r.items()})
        return buf.getvalue()
    for key in ("text", "dot"):
        if key in res:
            return res[key].rstrip("\n") + "\n"
    if "lines" in res:
        return "\n".join(res["lines"] + [f"{res['passed']} passed, {res['failed']} failed"]) + "\n"
    if "summary" in res:
        return res["summary"] + "\n"
    return "\n".join(f"{k}: {json.dumps(v, sort_keys=True, default=str)}" for k, v in sorted(res.items())) + "\n"


# parser ----------------------------------------------------------------------------------

def _common() -> argparse.ArgumentParser:
    c = argparse.ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS)
    c.add_argument("--p", type=int, help="residue characteristic (default 2)")
    c.add_argument("--q", type=int, help="field size for the Kronecker quiver (default 5)")
    c.add_argument("--N", type=int, help="DVR truncation (default 5)")
    c.add_argument("--dim-bound", type=_pair, dest="dim_bound", help="Kronecker dimension bound, e.g. 6,6")
    c.add_argument("--window", type=int, help="extra tower levels (default 4)")
    c.add_argument("--format", choices=FORMATS, help="output format (default json)")
    c.add_argument("--out", help="write the report here instead of stdout")
    c.add_argument("--seed", type=int)
    c.add_argument("--jobs", type=int)
    c.add_argument("--config", help=f"config file (JSON or YAML); also ${ENV_VAR}")
    c.add_argument("--timing", action="store_true", help="include wall-clock timings (not deterministic)")
    return c


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    ap = argparse.ArgumentParser(prog="exact-lattice", parents=[common],
                                 description="Exact structures on small module categories.")
    ap.add_argument("--version", action="version", version=f"exact-lattice {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    d = sub.add_parser("dvr", parents=[common], help="discrete valuation ring Z_(p)")
    d.add_argument("action", choices=["ext", "rad", "membership", "closed-sets", "closure", "gldim", "lattice"])
    d.add_argument("--m", default="2", help="C = R/P^m (or R)")
    d.add_argument("--l", default="2", help="A = R/P^l (or R)")
    d.add_argument("--n", type=int, default=1, help="radical power")
    d.add_argument("--class", dest="cls", default="1", help="Ext coordinates, comma separated")
    d.add_argument("--L", default="", help="finite points, e.g. 1,3")
    d.add_argument("--adic", action="store_true")
    d.add_argument("--points", default="", help="points for closure, e.g. 1,adic")
    d.add_argument("--infinite-tail", action="store_true", dest="infinite_tail")

    dd = sub.add_parser("dedekind", parents=[common], help="finitely generated abelian groups")
    dd.add_argument("action", choices=["ext", "closed-sets"])
    dd.add_argument("--X", default="Z/4")
    dd.add_argument("--Y", default="Z/2")
    dd.add_argument("--primes", default="2")
    dd.add_argument("--M", default="", help="primes carrying an adic point")
    dd.add_argument("--n", default="", help="radical powers, e.g. 2=1,3=2")

    k = sub.add_parser("kronecker", parents=[common], help="Kronecker quiver over F_q")
    k.add_argument("action", choices=["indec", "hom", "ext", "closed-check", "ext-table", "gldim-witness", "typeII"])
    k.add_argument("--label", default="", help="labels separated by ';' (default: all within the bound)")
    k.add_argument("--X", default="(1,0)")
    k.add_argument("--Y", default="(0,1)")
    k.add_argument("--descr", default="", help="closed-set description as JSON text or file")
    k.add_argument("--H", default="", help="finite points of a type (II) structure, separated by ';'")
    k.add_argument("--probe", default="", help="labels to coresolve (default: all within the bound)")
    k.add_argument("--no-period", action="store_true", dest="no_period",
                   help="keep coresolving after a cosyzygy repeats")

    e = sub.add_parser("enomoto", parents=[common], help="exact structures of a representation-finite algebra")
    e.add_argument("action", nargs="?", choices=["enumerate", "classify"])
    e.add_argument("--model", default="a3", help="shipped model name or JSON file")
    e.add_argument("--classify", action="store_true", help="same as the classify action")
    e.add_argument("--dot", action="store_true", help="include the lattice as DOT text")

    f = sub.add_parser("functor", parents=[common], help="structures induced by additive functors")
    f.add_argument("action", choices=["induce", "torsion", "gldim-identity"])
    f.add_argument("--functor", choices=["id", "t", "free"], default="t")
    f.add_argument("--target", choices=["max", "split"], default="max")

    v = sub.add_parser("verify", parents=[common], help="run verification suites")
    v.add_argument("--suite", choices=["dvr", "kronecker", "enomoto", "lattice", "functor", "all"], default="all")
    return ap


COMMANDS = {"dvr": cmd_dvr, "dedekind": cmd_dedekind, "kronecker": cmd_kronecker, "enomoto": cmd_enomoto,
            "functor": cmd_functor, "verify": cmd_verify}


def main(argv=None) -> int:
    ap = build_parser()
    a = ap.parse_args(argv)
    opts = vars(a)
    try:
        cfg = load_config(opts.get("config"), **{k: opts.get(k) for k in
                                                 ("p", "q", "N", "dim_bound", "window", "format", "seed", "jobs")})
    except (ValueError, OSError) as exc:
        print(f"exact-lattice: {exc}", file=sys.stderr)
        return 2
    a.timing = opts.get("timing", False)
    if a.command == "functor":
        a.N = opts.get("N")
    t0 = time.perf_counter()
    try:
        results, code = COMMANDS[a.command](a, cfg)
    except (UsageError, ValueError, KeyError, FileNotFoundError) as exc:
        print(f"exact-lattice: {exc}", file=sys.stderr)
        return 2
    report = {"command": " ".join([a.command] + ([a.action] if getattr(a, "action", None) else [])),
              "config": cfg.to_json(), "results": results, "version": __version__, "exit_code": code}
    if a.timing:
        report["seconds"] = round(time.perf_counter() - t0, 3)
    text = render(report, cfg.format)
    out = opts.get("out")
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
