"""Finitely generated modules over Z with a finite prime support, by localization."""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field

from ..linalg import abelian
from .ext import rad_ext
from .modules import DvrModule, ext_group


@dataclass(frozen=True)
class ZModule:
    """``Z^free + sum_P sum_e Z/P^e``; ``torsion`` maps a prime to its exponent partition."""

    free: int = 0
    torsion: tuple = ()  # sorted ((P, (e1, e2, ...)), ...)

    @classmethod
    def make(cls, free: int = 0, torsion: dict | None = None) -> "ZModule":
        items = tuple(sorted((P, tuple(sorted(es, reverse=True))) for P, es in (torsion or {}).items() if es))
        return cls(free, items)

    @classmethod
    def parse(cls, text: str) -> "ZModule":
        """Parse e.g. ``"Z/4 + Z/9 + Z"`` (prime powers only)."""
        free, tors = 0, {}
        for part in filter(None, (t.strip() for t in text.replace("⊕", "+").split("+"))):
            if part in ("Z", "R"):
                free += 1
                continue
            m = re.fullmatch(r"Z/(\d+)", part)
            if not m:
                raise ValueError(f"cannot parse summand {part!r}")
            n = int(m.group(1))
            P = next(q for q in range(2, n + 1) if n % q == 0)
            e = 0
            while n % P == 0:
                n //= P
                e += 1
            if n != 1:
                raise ValueError(f"Z/{m.group(1)} is not a prime-power cyclic group")
            tors.setdefault(P, []).append(e)
        return cls.make(free, tors)

    @property
    def primes(self) -> set[int]:
        return {P for P, _ in self.torsion}

    def part(self, P: int) -> tuple[int, ...]:
        return dict(self.torsion).get(P, ())

    def localize(self, P: int, with_free: bool = True) -> DvrModule:
        return DvrModule(self.free if with_free else 0, self.part(P))

    def __str__(self) -> str:
        parts = ["Z"] * self.free + [f"Z/{P ** e}" for P, es in self.torsion for e in es]
        return " + ".join(parts) or "0"


def _check_support(X: ZModule, Y: ZModule, primes) -> None:
    outside = (X.primes | Y.primes) - set(primes)
    if outside:
        raise ValueError(f"primes {sorted(outside)} are outside the declared support {sorted(primes)}")


def dedekind_ext_decompose(X: ZModule, Y: ZModule, primes, M=None, n: dict | None = None) -> dict:
    """Per-prime components of Ext^1_Z(X, Y) and of the subfunctor attached to (M, n).

    The P-component is Ext^1(X_P, Y_P + Z^s) computed over Z_(P).  For P in M
    the structure keeps ``rad_P^{n_P}`` of it, for P outside M the whole
    component (the ``tor(M^c)`` part).
    """
    _check_support(X, Y, primes)
    M = set(M or ())
    n = dict(n or {})
    out = {}
    total_full, total_sub = 1, 1
    for P in sorted(primes):
        C = X.localize(P, with_free=False)
        A = Y.localize(P)
        full = ext_group(C, A, P)
        if P in M:
            sub, _ = rad_ext(n.get(P, 0), C, A, P)
        else:
            sub = full
        comp = {"full": [o for o in full if o > 1], "order": abelian.order(full),
                "structure": [o for o in sub if o > 1], "structure_order": abelian.order(sub),
                "kind": "rad" if P in M else "tor(M^c)"}
        out[P] = comp
        total_full *= comp["order"]
        total_sub *= comp["structure_order"]
    return {"components": out, "order": total_full, "structure_order": total_sub}


@dataclass(frozen=True)
class DedekindClosedSet:
    """``F_L`` (finite-length points per prime, with infinite-tail flags) plus adic points ``M``."""

    finite: tuple = ()  # ((P, frozenset of exponents), ...)
    tails: frozenset = frozenset()  # primes whose L_P is infinite
    adic: frozenset = frozenset()

    def L(self, P: int) -> frozenset:
        return dict(self.finite).get(P, frozenset())

    @property
    def type(self) -> int:
        if self.tails:
            return 3
        return 2 if any(es for _, es in self.finite) else 1

    def to_json(self) -> dict:
        return {"finite": {str(P): sorted(es) for P, es in self.finite if es},
                "infinite_tail": sorted(self.tails), "adic": sorted(self.adic)}


def is_dedekind_closed(U: DedekindClosedSet) -> tuple[bool, list[str]]:
    """Closed iff every prime with an infinite tail has its adic point."""
    missing = sorted(U.tails - U.adic)
    return (not missing, [f"infinite tail at {P} forces Adic_{P}" for P in missing])


def dedekind_classify_closed(primes, N: int) -> list[DedekindClosedSet]:
    primes = sorted(primes)
    per_prime = []
    for P in primes:
        opts = []
        for r in range(N + 1):
            for L in itertools.combinations(range(1, N + 1), r):
                for tail in (False, True):
                    for adic in (False, True):
                        if tail and not adic:
                            continue
                        opts.append((frozenset(L), tail, adic))
        per_prime.append(opts)
    out = []
    for choice in itertools.product(*per_prime):
        finite = tuple((P, L) for P, (L, _, _) in zip(primes, choice))
        tails = frozenset(P for P, (_, t, _) in zip(primes, choice) if t)
        adic = frozenset(P for P, (_, _, a) in zip(primes, choice) if a)
        out.append(DedekindClosedSet(finite, tails, adic))
    return out
