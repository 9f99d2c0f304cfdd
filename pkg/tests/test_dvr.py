import itertools
import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from exact_lattice.core import Rejection, StructuralError
from exact_lattice.dvr import (ADIC, ClosedSet, DvrModel, DvrModule, DvrMorphism, ExtElement, R, T,
                               baer_sum, class_of, classify_closed_sets, closure, ext_group, gap_detect,
                               gldim_EL, hom_group, is_exact_EL, is_exact_EL_by_count, is_exact_Eprime,
                               is_ses, p_action, periodic_coresolution, rad_elements, rad_ext, realize,
                               smith_normal_form)
from exact_lattice.dvr.modules import canonicalize, hom_generators
from exact_lattice.linalg import abelian


def snf_cokernel_order(m, l, p):
    """|A / p^m A| for A = R/P^l, read off the SNF of the relation matrix [p^l, p^m]."""
    mod, _, _ = canonicalize(1, [[Fraction(p ** l), Fraction(p ** m)]], p)
    return p ** sum(mod.torsion)


def test_snf_examples():
    assert smith_normal_form([[1, 0], [0, 1]], 2).valuations == (0, 0)
    assert smith_normal_form([[4]], 2).valuations == (2,)
    assert smith_normal_form([[2, 1], [0, 2]], 2).valuations == (0, 2)
    assert smith_normal_form([[3, 1], [0, 3]], 3).valuations == (0, 2)


def test_is_ses_examples():
    p = 2
    X = T(1)
    ok = is_ses(DvrModule(), X, X, DvrMorphism.zero(DvrModule(), X, p), DvrMorphism.identity(X, p))
    assert ok
    bad = is_ses(X, X, X, DvrMorphism.identity(X, p), DvrMorphism.zero(X, X, p))
    assert isinstance(bad, Rejection) and bad.reason == "not_surjective"
    i = DvrMorphism.make(T(1), T(2), [[2]], p)
    d = DvrMorphism.make(T(2), T(1), [[1]], p)
    assert is_ses(T(1), T(2), T(1), i, d)


def test_is_ses_rejections_and_structural_errors():
    p = 2
    i = DvrMorphism.make(T(1), T(2), [[2]], p)
    assert is_ses(T(1), T(2), T(1), i, DvrMorphism.make(T(2), T(1), [[0]], p)).reason == "not_surjective"
    assert is_ses(T(1), T(2), T(2), i, DvrMorphism.identity(T(2), p)).reason == "not_composable_to_zero"
    with pytest.raises(StructuralError):
        DvrMorphism.make(T(1), T(2), [[1]], p)  # not well defined on R/P
    with pytest.raises(StructuralError):
        DvrMorphism.make(T(1), R, [[1]], p)
    with pytest.raises(StructuralError):
        is_ses(T(1), T(3), T(1), i, DvrMorphism.make(T(2), T(1), [[1]], p))


def test_hom_group_examples():
    assert hom_group(T(3), T(2), 2) == (4,)
    assert hom_group(T(2), R, 2) == ()
    assert sorted(hom_group(R + T(1), T(2), 2)) == [2, 4]


def test_hom_group_matches_enumeration():
    # Hom(R + R/P, R/P^2) at p = 2 by brute force over matrices mod 4
    p, src, dst = 2, R + T(1), T(2)
    count = 0
    for a, b in itertools.product(range(4), repeat=2):
        try:
            DvrMorphism.make(src, dst, [[a, b]], p)
            count += 1
        except StructuralError:
            pass
    assert count == abelian.order(hom_group(src, dst, p)) == 8


def test_ext_group_examples():
    assert ext_group(T(3), T(2), 2) == (4,)
    assert ext_group(R, T(5), 2) == ()
    assert ext_group(T(2), R, 2) == (4,)


@pytest.mark.parametrize("p", [2, 3])
def test_ext_order_oracle(p):
    for m, l in itertools.product(range(1, 7), repeat=2):
        order = abelian.order(ext_group(T(m), T(l), p))
        assert order == p ** min(m, l) == snf_cokernel_order(m, l, p)


def test_labels_and_p_action():
    x = ExtElement.from_label(3, 2, (0, 5), 2)
    assert p_action(x).label == ("sigma", 1, 4)
    assert p_action(p_action(x)).is_split
    y = ExtElement.from_label(3, None, (0,), 2)
    assert p_action(y).label == ("sigma", 1)
    assert p_action(ExtElement.from_label(3, None, (2,), 2)).is_split
    z = ExtElement.from_label(2, 4, (6, 0), 2)
    assert z.case == "a2" and p_action(z).label == ("sigma", 5, 1)
    with pytest.raises(ValueError):
        ExtElement.from_label(3, 2, (1, 1), 2)


def test_realize_middle_terms():
    s = realize(T(3), T(2), (2,), 2)
    assert s.B == T(4) + T(1)
    s = realize(T(3), R, (2,), 2)
    assert s.B == R + T(1)
    assert realize(T(2), T(2), (0,), 2).B == T(2) + T(2)


def test_p_action_is_multiplication_by_p():
    p = 2
    for m in range(1, 6):
        for l in list(range(1, 6)) + [None]:
            A = R if l is None else T(l)
            for v in range(abelian.order(ext_group(T(m), A, p))):
                x = ExtElement(m, l, v, p)
                s = realize(T(m), A, (v,), p)
                assert s.B == x.middle
                acc = s
                for _ in range(p - 1):
                    acc = baer_sum(acc, s, p)
                assert class_of(acc, p) == p_action(x).coords()


def test_rad_ext_examples():
    orders, gens = rad_ext(1, T(3), T(2), 2)
    assert orders == (2,)
    assert ExtElement(3, 2, gens[0][0], 2).label == ("sigma", 1, 4)
    assert rad_ext(2, T(3), T(2), 2)[0] == (1,)
    assert rad_elements(0, T(3), T(2), 2) == frozenset(abelian.elements((4,)))


def test_is_exact_EL_examples():
    p = 2
    # the cited sequence R >-> R/P^m + R ->> R/P^n is Hom(-, R/P^l)-exact once m, n >= l
    s = realize(T(2), R, (0,), p)
    assert s.B == R + T(2) and is_exact_EL(s, [2])
    s = realize(T(3), R, (4,), p)
    assert s.B == R + T(2) and is_exact_EL(s, [2]) and not is_exact_EL(s, [3])
    assert not is_exact_EL(realize(T(2), T(1), (1,), p), [2])
    # R/P^2 >-> R/P^4 ->> R/P^2 is not Hom(-, R/P^2)-exact
    s = realize(T(2), T(2), (1,), p)
    assert s.B == T(4) and not is_exact_EL(s, [2])
    for m, l in itertools.product(range(1, 4), repeat=2):
        assert is_exact_EL(realize(T(m), T(l), (0,), p), [1, 2, 3])


def test_is_exact_Eprime_examples():
    p = 2
    assert not is_exact_Eprime(realize(T(3), R, (1,), p))
    assert is_exact_Eprime(realize(T(2), T(3), (1,), p))
    s = realize(T(3), R, (2,), p)
    assert s.B == R + T(1) and not is_exact_Eprime(s)
    assert is_exact_Eprime(realize(T(3), R, (0,), p))


def test_EL_routes_agree():
    p = 2
    for m in range(1, 5):
        for l in list(range(1, 5)) + [None]:
            A = R if l is None else T(l)
            for v in range(abelian.order(ext_group(T(m), A, p))):
                s = realize(T(m), A, (v,), p)
                for L in ([1], [2], [3], [1, 3], [2, 4]):
                    assert is_exact_EL(s, L) == is_exact_EL_by_count(s, L)


def test_classify_closed_sets_small():
    got = classify_closed_sets(1)
    assert len(got) == 4
    assert {c.points for c in got} == {frozenset(), frozenset({1}), frozenset({ADIC}), frozenset({1, ADIC})}


def test_closure_examples():
    assert closure([], 3).points == frozenset()
    assert closure([2], 3).points == frozenset({2})
    assert ADIC in closure([1, 2, 3], 3, infinite_tail=True).points
    with pytest.raises(ValueError):
        closure([7], 3)


def test_gap_detect_examples():
    assert gap_detect({1, 3}) == (2, 2)
    assert gap_detect({1, 2, 3}) is None
    assert gap_detect({2, 5}) == (1, 1)
    assert gap_detect(set()) is None
    assert gap_detect({1, 4}) == (2, 3)


def test_periodic_coresolutions():
    co = periodic_coresolution({1, 3})
    assert co.period == 1
    step = co.steps[0]
    assert step.source == (T(2),) and set(step.middle) == {T(1), T(3)} and step.cokernel == (T(2),)
    co = periodic_coresolution({2})
    assert co.period == 2 and all(s.middle == (T(2),) for s in co.steps)
    co = periodic_coresolution({1, 4})
    assert co.period == 2
    assert [s.cokernel for s in co.steps] == [(T(3),), (T(2),)]
    assert all(set(s.middle) == {T(1), T(4)} for s in co.steps)


def test_gldim_EL_examples():
    assert gldim_EL({1, 3}).status == "infinite"
    r = gldim_EL({1, 2}, 3)
    assert (r.status, r.value) == ("exact", 1)
    assert gldim_EL(range(1, 4), 3, adic=True, infinite_tail=True).value == 0
    with pytest.raises(ValueError):
        gldim_EL({1}, 3, infinite_tail=True)


@pytest.fixture(scope="module")
def model3():
    return DvrModel(2, 3)


def test_meet_examples(model3):
    from exact_lattice.core import join, meet
    m = model3
    assert meet(m.E_L({1}), m.E_L({2})) == m.E_L({1, 2})
    assert meet(m.E_max(), m.E_L({2})) == m.E_L({2})
    assert join(m.E_L({1, 2}), m.E_L({2, 3})) == m.E_L({2})


def test_split_and_EL_pass_axioms(model3):
    from exact_lattice.core import check_exact_axioms, split
    assert check_exact_axioms(split(model3.universe)).ok
    for n in (1, 2, 3):
        assert check_exact_axioms(model3.E_L(range(1, n + 1))).ok


def test_removal_from_maximal_structure_detected():
    from exact_lattice.core import check_exact_axioms
    m = DvrModel(2, 2)
    e = m.E_max()
    for C, A, x in list(e.members()):
        if any(x):
            rep = check_exact_axioms(e.without(C, A, x))
            assert not rep.ok
            assert any(r.witness for r in rep.failed)


def test_ext1_group_of_structures(model3):
    from exact_lattice.core import ext1
    assert ext1(model3.E_max(), T(3), T(2)).order == 4
    assert ext1(model3.E_L({1}), T(3), T(2)).order == 2
    assert ext1(model3.E_max(), R, T(2)).order == 1


@settings(max_examples=40, deadline=None)
@given(m=st.integers(1, 4), l=st.integers(1, 4), a=st.integers(0, 15), b=st.integers(0, 15),
       c=st.integers(0, 15))
def test_baer_sum_group_laws(m, l, a, b, c):
    p = 2
    C, A = T(m), T(l)
    n = p ** min(m, l)
    sa, sb, sc = (realize(C, A, (v % n,), p) for v in (a, b, c))
    ab = class_of(baer_sum(sa, sb, p), p)
    assert ab == class_of(baer_sum(sb, sa, p), p)
    left = class_of(baer_sum(realize(C, A, ab, p), sc, p), p)
    bc = class_of(baer_sum(sb, sc, p), p)
    assert left == class_of(baer_sum(sa, realize(C, A, bc, p), p), p)
    assert class_of(baer_sum(sa, realize(C, A, (0,), p), p), p) == (a % n,)
    assert class_of(baer_sum(sa, realize(C, A, ((-a) % n,), p), p), p) == (0,)


@settings(max_examples=30, deadline=None)
@given(rows=st.lists(st.lists(st.integers(-12, 12), min_size=3, max_size=3), min_size=1, max_size=3),
       p=st.sampled_from([2, 3, 5]))
def test_snf_certificate(rows, p):
    s = smith_normal_form(rows, p)
    assert list(s.valuations) == sorted(s.valuations)
    nz = [x for r in rows for x in r if x]
    if nz:
        # the first invariant is the minimal valuation of an entry
        assert s.valuations[0] == min(_v(x, p) for x in nz)


def _v(x, p):
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


def test_hom_generators_are_well_defined():
    for a, b in itertools.product(range(1, 4), repeat=2):
        for f in hom_generators(T(a), T(b), 2):
            assert f.src == T(a) and f.dst == T(b)
