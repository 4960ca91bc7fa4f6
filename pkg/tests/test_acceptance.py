"""Acceptance suite: one test per criterion, with a printed verdict line.

All comparisons are exact (rational arithmetic, tolerance zero).  The
criteria run over every bundled (model, twist) pair plus a seeded sweep of
random models; the shared workspace caches the spectral sequences so the
whole battery stays fast.  Run with ``pytest tests/test_acceptance.py -v -s``
to see the per-criterion lines; ``twistss selftest`` drives the same
functions from the command line.
"""

import pytest

from twistss.selftest import CRITERIA, Workspace


@pytest.fixture(scope="module")
def workspace():
    return Workspace(seed=0)


def _run(workspace, index):
    description, fn = CRITERIA[index - 1]
    passed, detail = fn(workspace)
    print(f"{'PASS' if passed else 'FAIL'}  criterion {index:2d}: {description} -- {detail}")
    assert passed, f"criterion {index} failed: {detail}"


def test_criterion_01_structural_axioms(workspace):
    _run(workspace, 1)


def test_criterion_02_page_identifications(workspace):
    _run(workspace, 2)


def test_criterion_03_even_vanishing(workspace):
    _run(workspace, 3)


def test_criterion_04_convergence(workspace):
    _run(workspace, 4)


def test_criterion_05_d3_cup_rule(workspace):
    _run(workspace, 5)


def test_criterion_06_massey_banded_differentials(workspace):
    _run(workspace, 6)


def test_criterion_07_single_twist_case_table(workspace):
    _run(workspace, 7)


def test_criterion_08_route_compatibility(workspace):
    _run(workspace, 8)


def test_criterion_09_formality_collapse(workspace):
    _run(workspace, 9)


def test_criterion_10_triple_product(workspace):
    _run(workspace, 10)


def test_criterion_11_indeterminacy_coherence(workspace):
    _run(workspace, 11)


def test_criterion_12_page_construction_agreement(workspace):
    _run(workspace, 12)
