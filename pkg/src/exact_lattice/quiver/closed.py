"""Ziegler-closed subsets of the Kronecker spectrum, described symbolically."""
from __future__ import annotations

from dataclasses import dataclass, replace

from .kronecker import INF, Label, Preinj, Preproj, Regular, omega, parse_label

U_MAX = (Preinj(0), Preinj(1))


@dataclass(frozen=True)
class KClosedSetDescr:
    """``U = U_max + U_fin + {Pruefer t in T} + {adic m in M} (+ G)``.

    ``fin`` lists finitely many finite-dimensional points explicitly; the
    flags mark classes containing infinitely many of them.
    """

    q: int = 5
    fin: frozenset = frozenset()
    inf_P: bool = False
    inf_Q: bool = False
    inf_tubes: frozenset = frozenset()
    T: frozenset = frozenset()
    M: frozenset = frozenset()
    generic: bool = False

    @classmethod
    def make(cls, q: int = 5, fin=(), inf_P=False, inf_Q=False, inf_tubes=(), T=(), M=(),
             generic=False) -> "KClosedSetDescr":
        labs = frozenset(parse_label(x) if isinstance(x, str) else x for x in fin)
        Om = set(omega(q))
        for name, s in (("T", T), ("M", M), ("inf_tubes", inf_tubes)):
            bad = set(s) - Om
            if bad:
                raise ValueError(f"{name} contains {sorted(map(str, bad))} outside Omega")
        return cls(q, frozenset(l for l in labs if l not in U_MAX), bool(inf_P), bool(inf_Q),
                   frozenset(inf_tubes), frozenset(T), frozenset(M), bool(generic))

    @property
    def omega(self) -> frozenset:
        return frozenset(omega(self.q))

    @property
    def fin_infinite(self) -> bool:
        return self.inf_P or self.inf_Q or bool(self.inf_tubes)

    def __le__(self, other: "KClosedSetDescr") -> bool:
        return (self.fin <= other.fin and self.inf_P <= other.inf_P and self.inf_Q <= other.inf_Q
                and self.inf_tubes <= other.inf_tubes and self.T <= other.T and self.M <= other.M
                and self.generic <= other.generic)

    def to_json(self) -> dict:
        key = lambda v: (v == INF, v if v != INF else 0)
        fmt = lambda s: ["oo" if v == INF else v for v in sorted(s, key=key)]
        return {"fin": sorted(str(l) for l in self.fin), "inf_P": self.inf_P, "inf_Q": self.inf_Q,
                "inf_tubes": fmt(self.inf_tubes), "T": fmt(self.T), "M": fmt(self.M),
                "generic": self.generic, "q": self.q}

    @classmethod
    def from_json(cls, d: dict) -> "KClosedSetDescr":
        lam = lambda v: INF if v in ("oo", "inf") else int(v)
        return cls.make(d.get("q", 5), d.get("fin", ()), d.get("inf_P", False), d.get("inf_Q", False),
                        [lam(v) for v in d.get("inf_tubes", ())], [lam(v) for v in d.get("T", ())],
                        [lam(v) for v in d.get("M", ())], d.get("generic", False))


def is_ziegler_closed(U: KClosedSetDescr) -> tuple[bool, list[dict]]:
    """Closedness by the rules for the Kronecker spectrum, with every violated rule listed."""
    bad = []
    if not U.fin_infinite:
        if not U.generic and (U.T or U.M):
            bad.append({"rule": "a", "witness": "G", "reason": "Pruefer or adic points present without G"})
        return (not bad, bad)
    if not U.generic:
        bad.append({"rule": "b", "witness": "G", "reason": "infinite U_fin forces G"})
    Om = U.omega
    if U.inf_P and U.M != Om:
        missing = sorted(map(str, Om - U.M))
        bad.append({"rule": "c1", "witness": "P", "reason": f"adic points missing: {missing}"})
    if U.inf_Q and U.T != Om:
        missing = sorted(map(str, Om - U.T))
        bad.append({"rule": "c2", "witness": "Q", "reason": f"Pruefer points missing: {missing}"})
    for lam in sorted(U.inf_tubes, key=str):
        if lam not in U.T or lam not in U.M:
            bad.append({"rule": "c3", "witness": f"tube {lam}", "reason": "needs both Pruefer and adic"})
    return (not bad, bad)


def closure(U: KClosedSetDescr) -> KClosedSetDescr:
    """Smallest closed description containing ``U``."""
    if not U.fin_infinite:
        return replace(U, generic=U.generic or bool(U.T or U.M))
    T, M = set(U.T), set(U.M)
    if U.inf_P:
        M = set(U.omega)
    if U.inf_Q:
        T = set(U.omega)
    T |= U.inf_tubes
    M |= U.inf_tubes
    return replace(U, T=frozenset(T), M=frozenset(M), generic=True)


def fixtures(q: int = 5) -> list[tuple[str, KClosedSetDescr, bool, list[str]]]:
    """``(name, description, closed?, violated rules)`` used by the tests and the verifier."""
    Om = omega(q)
    mk = lambda **kw: KClosedSetDescr.make(q, **kw)
    return [
        ("generic only", mk(generic=True), True, []),
        ("U_max", mk(), True, []),
        ("single (2,1) without G", mk(fin=["(2,1)"]), True, []),
        ("all preprojectives, M != Omega", mk(inf_P=True, generic=True, M=[0]), False, ["c1"]),
        ("all preprojectives, M = Omega", mk(inf_P=True, generic=True, M=Om), True, []),
        ("all preinjectives, T = Omega", mk(inf_Q=True, generic=True, T=Om), True, []),
        ("all preinjectives, T empty", mk(inf_Q=True, generic=True), False, ["c2"]),
        ("tube 0 infinite, 0 in T and M", mk(inf_tubes=[0], T=[0], M=[0], generic=True), True, []),
        ("tube 0 infinite, only Pruefer", mk(inf_tubes=[0], T=[0], generic=True), False, ["c3"]),
        ("tube oo infinite, only adic", mk(inf_tubes=[INF], M=[INF], generic=True), False, ["c3"]),
        ("infinite without G", mk(inf_tubes=[1], T=[1], M=[1]), False, ["b"]),
        ("Pruefer without G", mk(T=[2]), False, ["a"]),
        ("adic without G", mk(M=[3]), False, ["a"]),
        ("adic with G", mk(M=[3], generic=True), True, []),
        ("finite list with everything", mk(fin=["(2,1)", "(3,4)", "S_1[2]"], T=Om, M=Om, generic=True),
         True, []),
        ("finite list, T and M arbitrary", mk(fin=["S_0", "(4,3)"], T=[1, 2], M=[INF], generic=True),
         True, []),
        ("P and Q infinite, all points", mk(inf_P=True, inf_Q=True, T=Om, M=Om, generic=True), True, []),
        ("P and Q infinite, M short", mk(inf_P=True, inf_Q=True, T=Om, M=Om[:-1], generic=True),
         False, ["c1"]),
        ("everything missing", mk(inf_P=True, inf_Q=True, inf_tubes=[0]), False, ["b", "c1", "c2", "c3"]),
        ("two tubes, one incomplete", mk(inf_tubes=[0, 4], T=[0, 4], M=[0], generic=True), False, ["c3"]),
        ("finite list with U_max members", mk(fin=["(0,1)", "(1,2)", "(1,0)"]), True, []),
        ("both Pruefer and adic, no G", mk(T=[0], M=[0]), False, ["a"]),
    ]


__all__ = ["KClosedSetDescr", "is_ziegler_closed", "closure", "fixtures", "U_MAX"]
