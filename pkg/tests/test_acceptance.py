"""Acceptance suite: one check per criterion, printed as a PASS/FAIL line.

Run with ``pytest -s tests/test_acceptance.py`` to see the lines.
"""
import pytest

from exact_lattice.config import Config
from exact_lattice.verify import CRITERIA, removal_scan

CFG = Config()
_RESULTS = {}


def _check(i):
    if i not in _RESULTS:
        c = CRITERIA[i - 1](CFG)
        print("\n" + c.line())
        _RESULTS[i] = c
    return _RESULTS[i]


def _assert(c):
    assert c.ok, c.witness
    assert c.in_time, f"{c.seconds:.1f}s over the {c.limit}s budget"


def test_criterion_1_a3_lattice():
    c = _check(1)
    _assert(c)
    assert c.detail["structures"] == 8 and c.detail["gldim_le_1"] == 7


def test_criterion_2_dvr_ext_oracle():
    c = _check(2)
    _assert(c)
    assert c.detail["pairs"] == 72


def test_criterion_3_rad_identity():
    _assert(_check(3))


def test_criterion_4_gap():
    c = _check(4)
    _assert(c)
    assert c.detail["gap_{1,3}"] == "Infinite"
    assert c.detail["coresolution"]["period"] == 1


def test_criterion_5_topology():
    c = _check(5)
    _assert(c)
    assert c.detail["subsets"] == 64 and c.detail["meet_pairs"] == 4096


def test_criterion_6_order_reversal():
    _assert(_check(6))


def test_criterion_7_kronecker():
    c = _check(7)
    _assert(c)
    assert c.detail["stabilization_failures"] == 0 and c.detail["fixtures"] >= 20


def test_criterion_8_type_two():
    _assert(_check(8))


def test_criterion_9_torsion_identity():
    c = _check(9)
    _assert(c)
    assert c.detail["values"] == [1, 1, 0]


def test_criterion_10_removal_refined():
    _assert(_check(10))


@pytest.fixture(scope="module")
def scan():
    return removal_scan(2, 3)


@pytest.mark.xfail(strict=True, reason="some single removals land on another exact structure")
def test_criterion_10_literal(scan):
    ok = not scan["not_flagged"] and scan["flagged_other_only"] == 0
    print(f"\n[{'PASS' if ok else 'FAIL'}] criterion-10-literal every removal has a pushout/pullback witness "
          f"({len(scan['not_flagged'])} unflagged, {scan['flagged_other_only']} by composition only)")
    assert ok


def test_criterion_10_unflagged_are_structures(scan):
    assert scan["removals"] == 253
    assert scan["flagged_transport"] == 243 and scan["flagged_other_only"] == 4
    assert len(scan["not_flagged"]) == 6 and all(w["equals"] for w in scan["not_flagged"])


def test_summary():
    print()
    for i in range(1, 11):
        print(_check(i).line())
    assert all(_check(i).passed for i in range(1, 11))
