import itertools
import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from exact_lattice.quiver import (INF, Adic, FiniteDim, Generic, KClosedSetDescr, Preinj, Preproj,
                                  Prufer, Regular, StabilizationFailure, ar_sequence, build_indec, class_of,
                                  closure, decompose, describe, end_is_local, euler, exact_subspace, ext_dim,
                                  ext_vanishes, expected_zero_cells, fixtures, gldim2_witness, hom_dim,
                                  hom_exactness_at_point, hom_vanishes, is_ziegler_closed, kernel,
                                  labels_within, omega, parse_label, realize, typeI_ext_table,
                                  typeII_structure)
from exact_lattice.quiver.kronecker import DimensionBoundError
from exact_lattice.quiver.rep import ExtSpace, cokernel, hom_basis
from exact_lattice.quiver.typeI import FULL, TRIVIAL, ZERO, block_pattern

P = 5
B = lambda lab: build_indec(lab, P)


def test_small_hom_ext_values():
    assert hom_dim(B(Preproj(0)), B(Preproj(1))) == 2
    assert ext_dim(B(Preinj(0)), B(Preproj(0))) == 2
    assert ext_dim(B(Regular(3, 1)), B(Regular(3, 1))) == 1
    assert ext_dim(B(Preproj(0)), B(Regular(2, 2))) == 0
    for n, m in itertools.product(range(4), repeat=2):
        assert hom_dim(B(Preinj(n)), B(Preproj(m))) == 0


def test_tubes_orthogonal():
    lams = [0, 1, INF]
    for lam, mu in itertools.permutations(lams, 2):
        for i, j in itertools.product(range(1, 5), repeat=2):
            assert hom_dim(B(Regular(lam, i)), B(Regular(mu, j))) == 0


def test_euler_identity_all_pairs():
    labs = labels_within((4, 4), P)
    for X, Y in itertools.product(labs, labs):
        h, e = hom_dim(B(X), B(Y)), ext_dim(B(X), B(Y))
        assert h - e == euler(X.dimv, Y.dimv)


def test_labels_and_parsing():
    assert len(labels_within((6, 6), P)) == 48
    assert str(Regular(INF, 1)) == "S_oo" and str(Regular(2, 3)) == "S_2[3]"
    for lab in labels_within((3, 3), P):
        assert parse_label(str(lab)) == lab
    with pytest.raises(ValueError):
        parse_label("(3,3)")
    with pytest.raises(DimensionBoundError):
        build_indec(Preproj(6), P, bound=(6, 6))


def test_indecomposables_have_local_end():
    for lab in labels_within((3, 3), P):
        assert end_is_local(B(lab))
    assert not end_is_local(B(Preproj(0)) + B(Preproj(0)))


def test_ar_sequences_and_decomposition():
    for lab in [Preproj(0), Preproj(2), Preinj(3), Regular(1, 1), Regular(INF, 3)]:
        ses = ar_sequence(lab, P)
        assert not ExtSpace(ses.C, ses.A).coords(class_of(ses)) == (0,) * ExtSpace(ses.C, ses.A).dim
    X = B(Preproj(1)) + B(Regular(2, 2)) + B(Preinj(0)) + B(Preinj(0))
    assert decompose(X) == {Preproj(1): 1, Regular(2, 2): 1, Preinj(0): 2}
    assert describe(decompose(X)) == "(2,1) + (0,1)^2 + S_2[2]"


def test_realize_roundtrip():
    C, A = B(Preinj(1)), B(Preproj(1))
    sp = ExtSpace(C, A)
    for x in itertools.product(range(P), repeat=sp.dim):
        ses = realize(C, A, sp.vector(x))
        assert sp.coords(class_of(ses)) == x


def test_kernel_and_cokernel():
    R = B(Regular(0, 1))
    (pi,) = hom_basis(B(Preproj(1)), R)
    K, i = kernel(pi)
    assert K.dimv == (1, 0) and (pi @ i).is_zero()
    Q, q = cokernel(i)
    assert Q.dimv == (1, 1) and decompose(Q) == {Regular(0, 1): 1}


# points --------------------------------------------------------------------

VANISHING = {
    # (hom vanishes, ext vanishes) at (G, adic lam, Pruefer lam), R_lam in the tube of the point
    "P": [(False, True)] * 3,
    "Q": [(True, False)] * 3,
    "R_lam": [(True, True), (True, False), (False, True)],
    "R_mu": [(True, True)] * 3,
}


def _class(lab, lam):
    if lab.kind != "R":
        return lab.kind
    return "R_lam" if lab.lam == lam else "R_mu"


@pytest.mark.parametrize("lam", [2, INF])
def test_vanishing_display(lam):
    pts = [Generic(), Adic(lam), Prufer(lam)]
    for lab in labels_within((4, 4), P):
        X = B(lab)
        got = [(hom_vanishes(X, pt), ext_vanishes(X, pt)) for pt in pts]
        assert got == VANISHING[_class(lab, lam)], lab


def test_split_sequences_are_exact_everywhere():
    C, A = B(Preinj(1)), B(Regular(1, 2))
    ses = realize(C, A, np.zeros(ExtSpace(C, A).ambient, dtype=np.int64))
    for pt in [Generic(), Adic(1), Prufer(1), FiniteDim(Preproj(2))]:
        assert hom_exactness_at_point(ses, pt)


def test_point_examples():
    assert hom_exactness_at_point(ar_sequence(Regular(3, 1), P), Generic())
    assert hom_exactness_at_point(ar_sequence(Preproj(1), P), Adic(0))
    assert hom_exactness_at_point(ar_sequence(Regular(3, 1), P), Adic(3))
    C, A = B(Regular(3, 1)), B(Preproj(0))
    sp = ExtSpace(C, A)
    ses = realize(C, A, sp.vector((1,)))
    assert not hom_exactness_at_point(ses, Adic(3))
    assert hom_exactness_at_point(ses, Adic(2)) and hom_exactness_at_point(ses, Prufer(3))


def test_tube_points_refine_generic():
    labs = labels_within((3, 3), P)
    for X, Y in itertools.product(labs, labs):
        C, A = B(X), B(Y)
        if not ExtSpace(C, A).dim:
            continue
        g = exact_subspace(C, A, Generic())
        for pt in (Adic(0), Prufer(0)):
            s = exact_subspace(C, A, pt)
            assert (s & g).dim == s.dim


def test_stabilization_failure_is_an_exception():
    err = StabilizationFailure(Prufer(1), "x", [3, 4])
    assert "did not stabilize" in str(err)


# closed sets ---------------------------------------------------------------

def test_closed_set_fixtures():
    fx = fixtures(P)
    assert len(fx) >= 20
    for name, U, ok, rules in fx:
        r, viol = is_ziegler_closed(U)
        assert r == ok and [v["rule"] for v in viol] == rules, name


def test_named_fixtures():
    gen = KClosedSetDescr.make(P, generic=True)
    assert is_ziegler_closed(gen)[0]
    bad = KClosedSetDescr.make(P, inf_P=True, generic=True, M=[0])
    assert [v["rule"] for v in is_ziegler_closed(bad)[1]] == ["c1"]
    assert is_ziegler_closed(KClosedSetDescr.make(P, fin=["(2,1)"]))[0]


def _descr(rnd):
    Om = omega(P)
    sub = lambda: [l for l in Om if rnd.random() < 0.3]
    return KClosedSetDescr.make(P, fin=[str(l) for l in labels_within((2, 2), P) if rnd.random() < 0.2],
                                inf_P=rnd.random() < 0.3, inf_Q=rnd.random() < 0.3, inf_tubes=sub(),
                                T=sub(), M=sub(), generic=rnd.random() < 0.5)


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 2 ** 32))
def test_closure_is_minimal_closed(seed):
    rnd = random.Random(seed)
    U = _descr(rnd)
    c = closure(U)
    assert is_ziegler_closed(c)[0] and U <= c and closure(c) == c
    # any closed description above U is above its closure
    V = closure(_descr(rnd))
    join = KClosedSetDescr.make(P, U.fin | V.fin, U.inf_P or V.inf_P, U.inf_Q or V.inf_Q,
                                U.inf_tubes | V.inf_tubes, U.T | V.T, U.M | V.M, U.generic or V.generic)
    assert c <= closure(join)
    assert KClosedSetDescr.from_json(c.to_json()) == c


# type (I) --------------------------------------------------------------------

@pytest.mark.parametrize("U", [
    KClosedSetDescr.make(P, generic=True),
    KClosedSetDescr.make(P, generic=True, M=[1]),
    KClosedSetDescr.make(P, generic=True, T=[INF]),
])
def test_type_one_tables_small(U):
    tb = typeI_ext_table(U, (3, 3), P)
    assert tb.ok, tb.mismatches
    for cell in expected_zero_cells(U):
        assert tb.cells[cell] in (ZERO, TRIVIAL)
    assert tb.cells[("P", "P")] == FULL


def test_union_tables_block_diagonal():
    Om = omega(P)
    tb = typeI_ext_table(KClosedSetDescr.make(P, generic=True, T=Om, M=Om), (2, 2), P)
    assert tb.ok and block_pattern(tb) == {}
    tb = typeI_ext_table(KClosedSetDescr.make(P, generic=True, M=Om), (2, 2), P)
    assert tb.ok and block_pattern(tb) == {"q->r": True}


def test_gldim2_witness():
    for U in (KClosedSetDescr.make(P, generic=True), KClosedSetDescr.make(P, generic=True, M=[0]),
              KClosedSetDescr.make(P, generic=True, T=[0])):
        w = gldim2_witness(U)
        assert w.ok and w.R.lam not in U.T | U.M
        assert w.to_json()["sequence"] == ["(1,0)", "(2,1)", "(1,2)", "(0,1)"]


# type (II) ---------------------------------------------------------------------

def test_type_two_staircase():
    E = typeII_structure([parse_label(x) for x in ["(0,1)", "(1,2)", "(3,4)"]], P)
    r = E.coresolution(Preinj(4))
    assert r.idim == 2
    assert r.shape() == "(4,5) >-> (3,4)^2 -> (1,2)^2 ->> (0,1)"


def test_type_two_hereditary_family():
    E = typeII_structure([Preinj(n) for n in range(4)], P)
    assert E.gldim_probe((3, 3))["max_idim"] == 1


def test_type_two_infinite_idim():
    E = typeII_structure([Regular(2, 1), Regular(2, 3)], P)
    r = E.coresolution(Regular(2, 2))
    assert r.infinite and r.idim is None


def test_type_two_membership():
    E = typeII_structure([Preinj(3)], P)
    for lab in (Preinj(3), Preinj(4), Preproj(0), Regular(0, 1)):
        ses = ar_sequence(lab, P)
        assert E.is_member(ses) == E.contains_class(ses.C, ses.A, class_of(ses))
    assert not E.is_member(ar_sequence(Preinj(3), P))


def test_type_two_runs_past_bound():
    E = typeII_structure([Regular(2, 1), Regular(2, 3)], P)
    r = E.coresolution(Regular(2, 2), bound=10, stop_on_period=False)
    assert r.status == "exceeded bound" and r.infinite and len(r.terms) == 11
