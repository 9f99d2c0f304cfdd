import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from exact_lattice.core import (GldimResult, IncompletePool, UnsupportedJoin, check_exact_axioms, ext1,
                                gldim, injective_coresolution, injectives, join, maximal, meet, split)
from exact_lattice.core.ext import invariants
from exact_lattice.core.lattice import is_glb, is_lub, order_reversal_violations
from exact_lattice.dvr import DvrModel, R, T
from exact_lattice.linalg import _pykernels, abelian, kernels, modp


def sympy_rank(a, p):
    from sympy import GF, Matrix
    from sympy.polys.matrices import DomainMatrix
    dm = DomainMatrix.from_Matrix(Matrix(a.tolist())).convert_to(GF(p))
    return dm.rank()


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 6), st.integers(1, 6), st.sampled_from([2, 3, 5, 7]), st.data())
def test_rref_backends_agree(rows, cols, p, data):
    entries = data.draw(st.lists(st.integers(0, p - 1), min_size=rows * cols, max_size=rows * cols))
    a = np.array(entries, dtype=np.int64).reshape(rows, cols)
    r1, piv1 = _pykernels.rref_modp(a, p)
    r2, piv2 = kernels.rref_modp(a, p)
    assert list(piv1) == list(piv2)
    assert (np.asarray(r1) % p == np.asarray(r2) % p).all()
    assert len(piv1) == sympy_rank(a, p)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 5), st.integers(1, 5), st.sampled_from([2, 3, 5]), st.data())
def test_nullspace_and_solve(rows, cols, p, data):
    entries = data.draw(st.lists(st.integers(0, p - 1), min_size=rows * cols, max_size=rows * cols))
    a = modp.mat(rows, cols, entries)
    ns = modp.nullspace(a, p)
    assert ns.shape[1] == cols - modp.rank(a, p)
    assert not modp.mul(a, ns, p).any()
    x = np.array(data.draw(st.lists(st.integers(0, p - 1), min_size=cols, max_size=cols)),
                 dtype=np.int64).reshape(cols, 1)
    b = modp.mul(a, x, p)
    y = modp.solve(a, b, p)
    assert y is not None and (modp.mul(a, y, p) == b).all()


def test_kernel_backend_reported():
    assert kernels.BACKEND in ("cython", "python")


def test_abelian_basics():
    orders = (2, 4)
    assert abelian.order(orders) == 8
    assert abelian.add((1, 3), (1, 2), orders) == (0, 1)
    assert abelian.neg((1, 1), orders) == (1, 3)
    assert abelian.element_order((1, 2), orders) == 2
    assert abelian.span([(0, 2)], orders) == {(0, 0), (0, 2)}
    assert abelian.subgroup_order([(1, 1)], orders) == 4
    ok, pair = abelian.is_subgroup(frozenset({(0, 0), (1, 0), (0, 1)}), orders)
    assert not ok and pair is not None


@settings(max_examples=50, deadline=None)
@given(st.lists(st.sampled_from([2, 3, 4, 8, 9]), min_size=1, max_size=3), st.data())
def test_span_order_matches_subgroup_order(orders, data):
    gens = data.draw(st.lists(st.tuples(*[st.integers(0, o - 1) for o in orders]), max_size=3))
    H = abelian.span(gens, orders)
    assert len(H) == abelian.subgroup_order(gens, orders)
    assert abelian.is_subgroup(H, orders)[0]
    inv = invariants(H, orders)
    assert abelian.order(inv) == len(H)


def test_invariants_frozen():
    assert invariants(list(abelian.elements((4, 2, 3))), (4, 2, 3)) == (2, 3, 4)
    assert invariants(abelian.span([(2, 0)], (4, 2)), (4, 2)) == (2,)
    assert invariants([(0,)], (8,)) == ()


@pytest.fixture(scope="module")
def model():
    return DvrModel(2, 3)


@pytest.fixture(scope="module")
def lattice(model):
    from exact_lattice.dvr import classify_closed_sets
    return [model.structure(c) for c in classify_closed_sets(3)]


def test_split_and_maximal(model):
    u = model.universe
    sp, mx = split(u), maximal(u)
    assert sp <= model.E_L({1, 2}) <= mx
    assert mx == model.E_max()
    assert sp.size() == len(list(u.cells()))


def test_meet_is_glb_and_join_is_lub(model, lattice):
    for e, f in itertools.combinations(lattice[::3], 2):
        assert is_glb(meet(e, f), e, f, lattice)
        assert is_lub(join(e, f), e, f, lattice)


def test_join_without_provenance_needs_lattice(model, lattice):
    e = maximal(model.universe)
    f = split(model.universe)
    with pytest.raises(UnsupportedJoin):
        join(e, f)
    assert join(e, f, lattice) == model.E_max()


def test_order_reversal(model, lattice):
    pairs = [(e, frozenset(model.closed_set_of(e).points)) for e in lattice]
    assert order_reversal_violations(pairs) == []


def test_ext1_outside_universe(model):
    with pytest.raises(IncompletePool):
        ext1(model.E_max(), R + T(1), T(1))


def test_axiom_report_json(model):
    rep = check_exact_axioms(model.E_L({2}))
    js = rep.to_json()
    assert js["ok"] is True
    assert {r["name"] for r in js["axioms"]} >= {"split", "baer_sum", "pushout", "pullback"}


def test_axiom_failure_witness(model):
    e = model.E_max().without(T(2), T(2), (1,))
    rep = check_exact_axioms(e, stop_at_first=True)
    assert not rep.ok
    w = rep.failed[0].witness
    assert w["axiom"] in ("baer_sum", "pushout", "pullback", "composition")
    assert set(w["sequence"]) == {"C", "A", "class"}


def test_injectives_and_coresolution(model):
    e = model.E_L({1, 3})
    assert set(injectives(e)) >= {T(1), T(3)}
    co = injective_coresolution(e, T(2))
    assert co.status == "Periodic" and co.period == 1
    assert co.to_json(model.universe)["steps"][0]["cokernel"] == ["R/P^2"]


def test_gldim_display():
    assert str(GldimResult(None, "infinite")) == "Infinite"
    assert str(GldimResult(4, "greater_than_bound")) == "GreaterThanBound(4)"
    assert str(GldimResult(2, "at_least")) == ">=2"
    assert str(GldimResult(1, "exact")) == "1"


def test_gldim_split_is_zero(model):
    assert gldim(split(model.universe)).value == 0
