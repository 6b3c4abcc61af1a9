"""Verification harness: equivariance, immersion, negative controls."""

from fractions import Fraction

import pytest

from hopfon.classify import enumerate_structures, StructureRecord
from hopfon.devmaps import DevMap, UniPoly
from hopfon.group import GroupElt, Mat2
from hopfon.hopf import HopfSurface
from hopfon.verify import (
    VerifyConfig,
    check_equivariance,
    check_group_axioms,
    check_immersion,
    verify_structure,
)


def test_radial_equivariance_is_machine_precision():
    s = HopfSurface.diagonal(Fraction(1, 2), Fraction(1, 3))
    rec = enumerate_structures(s, 2)[0]
    rep = check_equivariance(rec, s, VerifyConfig(samples=100, seed=1))
    assert rep.passed
    assert rep.max_equivariance_residual < 1e-12


def test_hyper_row1_equivariance():
    s = HopfSurface.diagonal(Fraction(1, 4), Fraction(1, 2))
    recs = enumerate_structures(s, 2, hyper_params=[[1]])
    row1 = next(r for r in recs if r.kind == "hyperresonant")
    rep = check_equivariance(row1, s, VerifyConfig(samples=200, seed=2))
    assert rep.passed and rep.max_equivariance_residual < 1e-9


def test_corrupted_holonomy_fails():
    s = HopfSurface.diagonal(Fraction(1, 4), Fraction(1, 2))
    recs = enumerate_structures(s, 2, hyper_params=[[1]])
    row1 = next(r for r in recs if r.kind == "hyperresonant")
    g = row1.hol.g
    bad = Mat2.diag(
        g.entries[0][0] * g.basis.gauss(Fraction(1001, 1000)), g.entries[1][1]
    )
    bad_rec = StructureRecord(
        kind=row1.kind,
        dev=row1.dev,
        hol=GroupElt.of_matrix(bad, 2),
        complete=False,
        essential=False,
        provenance="negative control",
    )
    rep = check_equivariance(bad_rec, s, VerifyConfig(samples=100, seed=3))
    assert not rep.passed


def test_branched_exceptional_map_fails_immersion():
    # t1 = z1^2 on an exceptional surface branches along z1 = 0
    s = HopfSurface.exceptional(Fraction(1, 2), 1)
    branched = DevMap(2, 0, 0, 1, UniPoly([1]), UniPoly([1]), UniPoly([1]), None, 2)
    rep = check_immersion(branched, VerifyConfig(samples=50, seed=4), s)
    assert not rep.passed
    assert rep.min_jacobian_magnitude <= 1e-12


def test_double_root_map_fails_immersion():
    s = HopfSurface.diagonal(Fraction(1, 4), Fraction(1, 2))
    bad = DevMap(
        0, 3, 1, -2, UniPoly.from_roots([2, 2]), UniPoly([1]), UniPoly([1]), (1, 2), 2
    )
    # the double root makes R's pole cancel: the exact Jacobian vanishes at u=2
    rep = check_immersion(bad, VerifyConfig(samples=50, seed=5), s)
    from hopfon.devmaps import is_semiadmissible

    assert not is_semiadmissible(bad)


def test_eigen_immersion_det_is_one():
    s = HopfSurface.diagonal(Fraction(1, 2), Fraction(1, 3))
    rec = next(r for r in enumerate_structures(s, 2) if r.kind == "eigen")
    rep = check_immersion(rec, VerifyConfig(samples=80, seed=6), s)
    assert rep.passed
    assert abs(rep.min_jacobian_magnitude - 1.0) < 1e-9


def test_radial_immersion_includes_axis_points():
    s = HopfSurface.diagonal(Fraction(1, 2), Fraction(1, 3))
    rec = enumerate_structures(s, 1)[0]
    rep = check_immersion(rec, VerifyConfig(samples=60, seed=7), s)
    assert rep.passed
    assert rep.min_jacobian_magnitude > 0.5  # |det| = |z2|^-3 or chart image


def test_group_axioms_pass():
    for n in (1, 2, 3):
        rep = check_group_axioms(n, trials=120, seed=8)
        assert rep.passed, rep.checks


def test_verify_structure_bundle():
    s = HopfSurface.exceptional(Fraction(1, 2), 2)
    rec = enumerate_structures(s, 2)[0]
    reports = verify_structure(rec, s, VerifyConfig(samples=100, seed=9))
    assert all(r.passed for r in reports)
    recd = [r.to_record() for r in reports]
    assert {r["check"] for r in recd} == {"equivariance", "immersion"}


def test_annulus_validation():
    with pytest.raises(ValueError):
        VerifyConfig(annulus=(1.0, 0.5)).resolve_annulus()
