import pytest
from hypothesis import given, settings, strategies as st

from exact_lattice.core import check_exact_axioms, maximal, split
from exact_lattice.dvr import DvrUniverse, R, T, realize
from exact_lattice.dvr.ziegler import DvrModel
from exact_lattice.functor_exact import (EXACT, LEFT, UNKNOWN, IncompatibleUniverses, InvalidWitness,
                                         PairRejected, TorsionPair, exactness_class, free_quotient_functor,
                                         gldim_torsion_identity, identity_functor, in_torsion_structure,
                                         induced_structure, torsion_free_pair, torsion_functor,
                                         torsion_structure, torsion_universe)

P = 2


@pytest.fixture(scope="module")
def u():
    return DvrUniverse(P, N=2, margin=1)


@pytest.fixture(scope="module")
def model():
    return DvrModel(P, N=2)


def test_torsion_structure_examples():
    mult_p = realize(T(1), R, (1,), P)  # R --p--> R ->> R/P
    assert mult_p.B == R and not in_torsion_structure(mult_p)
    assert in_torsion_structure(realize(R, T(1), (), P))
    nonsplit = realize(T(1), T(1), (1,), P)
    assert nonsplit.B == T(2) and in_torsion_structure(nonsplit)


def test_torsion_structure_is_exact(u):
    Bt = torsion_structure(u, torsion_free_pair(u))
    assert check_exact_axioms(Bt).ok
    assert not Bt.member(T(1), R, (1,))
    assert Bt.member(T(1), T(1), (1,))


def test_gldim_identity_on_lattices(u):
    r = gldim_torsion_identity(u)
    assert r.values == (1, 1, 0) and r.holds and r.ext2_vanishes
    assert r.ext1_witness == {"C": "R/P", "A": "R/P", "class": [1], "middle": ["R/P^2"]}


@pytest.mark.parametrize("N", [1, 2])
def test_gldim_identity_without_free_part(N):
    u = DvrUniverse(P, N=N, margin=1, free=False)
    r = gldim_torsion_identity(u)
    assert r.F.value == 0 and r.B_t.value == r.T.value and r.holds
    assert torsion_structure(u, torsion_free_pair(u)) == maximal(u)


def test_functoriality_and_exactness_class(u):
    t, q = torsion_functor(u), free_quotient_functor(u)
    assert t.functoriality_violations() == [] and q.functoriality_violations() == []
    ec = exactness_class(t)
    assert ec.kind == LEFT
    assert ec.witnesses["right"]["C"] == "R/P" and ec.witnesses["right"]["A"] == "R"
    assert exactness_class(q).kind == UNKNOWN
    assert exactness_class(identity_functor(u)).kind == EXACT


def test_identity_functor_gives_target(u, model):
    mu = model.universe
    f = identity_functor(mu)
    for L in ([1], [2], [1, 3]):
        S = model.E_L(L)
        assert induced_structure(f, S, S) == S


def test_torsion_functor_induces_torsion_structure(u):
    t = torsion_functor(u)
    Sf = induced_structure(t, maximal(u), maximal(t.target))
    assert not isinstance(Sf, InvalidWitness)
    assert Sf == torsion_structure(u, torsion_free_pair(u))


def test_invalid_target_gives_witness(model):
    mu = model.universe
    broken = maximal(mu).without(T(1), T(1), (1,))
    res = induced_structure(identity_functor(mu), maximal(mu), broken)
    assert isinstance(res, InvalidWitness) and not res
    assert res.axiom in ("pushout", "pullback", "composition", "isomorphism", "baer_sum")
    assert res.to_json()["valid"] is False


def test_incompatible_universes(u, model):
    with pytest.raises(IncompatibleUniverses):
        induced_structure(identity_functor(u), maximal(model.universe), maximal(u))


def test_inclusions_preserve_and_reflect(u):
    Bt = torsion_structure(u, torsion_free_pair(u))
    uT = torsion_universe(u)
    tmax = maximal(uT)
    for C, A in uT.cells():
        assert Bt.cell(C, A) == tmax.cell(C, A)
    assert Bt.cell(R, R) == split(u).cell(R, R)


def test_pairs_are_checked(u):
    pair = torsion_free_pair(u)
    assert pair.violations() == [] and pair.hereditary and pair.idempotent()
    bad = TorsionPair(u, lambda X: X.torsion and X.torsion[0] >= 2, lambda X: X == T(1) or X == R, "fake")
    with pytest.raises(PairRejected) as exc:
        torsion_structure(u, bad)
    assert exc.value.witness[0]["rule"] == "Hom(T,F)=0"
    nonhered = TorsionPair(u, lambda X: X.is_torsion and X != T(1), lambda X: not X.is_torsion, "gap")
    assert nonhered.hereditary_violations()[0] == {"rule": "T closed under subobjects", "sub": "R/P",
                                                   "object": "R/P^2"}


@settings(max_examples=40, deadline=None)
@given(st.sets(st.integers(1, 3)), st.sets(st.integers(1, 3)))
def test_induced_is_monotone_in_target(L1, L2):
    model = _MODEL
    f = identity_functor(model.universe)
    S = model.E_L([1])
    small, large = model.E_L(L1 | L2), model.E_L(L1)
    assert small <= large
    assert induced_structure(f, S, small, check=False) <= induced_structure(f, S, large, check=False)


_MODEL = DvrModel(P, N=2)
