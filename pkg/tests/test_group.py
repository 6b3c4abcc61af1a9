"""Group law, inverses, and the affine action on O(n)."""

import cmath
import random
from fractions import Fraction

import pytest

from hopfon.group import (
    AffinePoint,
    GroupElt,
    HomogPoly,
    Mat2,
    act_affine,
    chordal,
    compose,
    inverse,
    random_group_elt,
)
from hopfon.scalars import EigenBasis, GaussRat, Scalar


def free_basis():
    return EigenBasis(("l1", "l2"), (), (0.5, 0.3))


def test_compose_translation_example():
    # n=1: (diag(2,1), Z1) * (I, Z2) = (diag(2,1), Z1 + Z2)
    b = free_basis()
    x = GroupElt(
        Mat2.diag(b.gauss(2), b.one()), HomogPoly.monomial(b, 1, 1, b.one())
    )
    y = GroupElt(Mat2.identity(b), HomogPoly.monomial(b, 1, 0, b.one()))
    z = compose(x, y)
    assert z.g == x.g
    assert z.p == HomogPoly(b, 1, [b.one(), b.one()])


def test_compose_with_pure_matrix():
    # (I, p) * (g, 0) = (g, p)
    b = free_basis()
    rng = random.Random(0)
    for n in (1, 2, 3):
        x = random_group_elt(b, n, rng)
        left = GroupElt(Mat2.identity(b), x.p).compose(GroupElt.of_matrix(x.g, n))
        assert left == x


def test_inverse_examples():
    b = free_basis()
    p = HomogPoly.monomial(b, 2, 1, b.gauss(5))
    x = GroupElt(Mat2.identity(b), p)
    assert inverse(x) == GroupElt(Mat2.identity(b), -p)

    y = GroupElt.of_matrix(Mat2.diag(b.gauss(2), b.one()), 1)
    assert inverse(y) == GroupElt.of_matrix(
        Mat2.diag(b.gauss(Fraction(1, 2)), b.one()), 1
    )


def test_inverse_law_random():
    b = free_basis()
    rng = random.Random(1)
    for n in (1, 2, 3):
        e = GroupElt.identity(b, n)
        for _ in range(25):
            x = random_group_elt(b, n, rng)
            assert compose(x, inverse(x)) == e
            assert compose(inverse(x), x) == e


def test_associativity_random():
    b = free_basis()
    rng = random.Random(2)
    for n in (1, 2, 3):
        for _ in range(30):
            x, y, z = (random_group_elt(b, n, rng) for _ in range(3))
            assert compose(compose(x, y), z) == compose(x, compose(y, z))


def test_mu_n_quotient_equality():
    b = free_basis()
    n = 2
    x = random_group_elt(b, n, random.Random(3))
    minus = Scalar.monomial(b, -1)
    assert x == GroupElt(x.g.scale(minus), x.p)
    # scaling by i is not a square root of unity
    eye = Scalar.monomial(b, GaussRat(0, 1))
    assert x != GroupElt(x.g.scale(eye), x.p)


def test_act_affine_swap_example():
    # g = [[0,1],[1,0]], n=1, (2,3) -> (1/2, 3/2)
    b = free_basis()
    g = Mat2.from_gauss(b, ((0, 1), (1, 0)))
    x = GroupElt.of_matrix(g, 1)
    out = act_affine(x, AffinePoint("T", 2, 3))
    assert out.chart == "T"
    assert abs(out.c1 - 0.5) < 1e-14 and abs(out.c2 - 1.5) < 1e-14


def test_act_affine_poly_example():
    # n=2, (I, Z1 Z2) at (3,5) -> (3, 8)
    b = free_basis()
    x = GroupElt(Mat2.identity(b), HomogPoly.monomial(b, 2, 1, b.one()))
    out = act_affine(x, AffinePoint("T", 3, 5))
    assert abs(out.c1 - 3) < 1e-14 and abs(out.c2 - 8) < 1e-14


def test_act_affine_exceptional_generator():
    # g = diag(lam/eps, 1/eps), p = (1/lam^m) Z1^m Z2^(n-m), eps^n = lam^m
    # acts by (t1, t2) -> (lam t1, lam^m t2 + t1^m)
    lam_val = 0.5
    b = EigenBasis(("lam", "mu"), (), (lam_val, 1.0))
    for n, m in ((2, 1), (3, 2), (2, 2)):
        eps = Scalar.monomial(b, 1, (Fraction(m, n), 0))
        lam = b.gen(0)
        g = Mat2.diag(lam * eps.inverse(), eps.inverse())
        p = HomogPoly.monomial(b, n, m, lam.inverse() ** m)
        x = GroupElt(g, p)
        t1, t2 = 0.7 + 0.2j, -1.1 + 0.4j
        out = act_affine(x, AffinePoint("T", t1, t2))
        assert abs(out.c1 - lam_val * t1) < 1e-12
        assert abs(out.c2 - (lam_val**m * t2 + t1**m)) < 1e-12


def test_action_axiom_numeric():
    b = free_basis()
    rng = random.Random(4)
    for n in (1, 2):
        for _ in range(40):
            x = random_group_elt(b, n, rng)
            y = random_group_elt(b, n, rng)
            pt = AffinePoint(
                "T", rng.uniform(-2, 2) + 1j * rng.uniform(-2, 2), rng.uniform(-2, 2)
            )
            lhs = act_affine(compose(x, y), pt)
            rhs = act_affine(x, act_affine(y, pt))
            res = point_residual(lhs, rhs, n)
            assert res < 1e-10


def point_residual(p, q, n):
    t1p = p.c1 if p.chart == "T" else (1 / p.c1 if p.c1 != 0 else complex("inf"))
    t1q = q.c1 if q.chart == "T" else (1 / q.c1 if q.c1 != 0 else complex("inf"))
    res = chordal(t1p, t1q)
    try:
        qq = q.in_chart(p.chart, n)
        res += abs(p.c2 - qq.c2) / (1 + max(abs(p.c2), abs(qq.c2)))
    except ZeroDivisionError:
        res += 1.0
    return res


def test_mu_n_invariance_of_action():
    # replacing g by z*g with z^n = 1 leaves the action unchanged
    n = 3
    zeta = cmath.exp(2j * cmath.pi / n)
    b = EigenBasis(("z", "w"), [(n, 0)], (zeta, 0.5))
    rng = random.Random(5)
    for _ in range(30):
        x = random_group_elt(b, n, rng)
        xz = GroupElt(x.g.scale(b.gen(0)), x.p)
        assert x == xz
        pt = AffinePoint("T", rng.uniform(-2, 2) + 1j * rng.uniform(-2, 2), 1.3)
        a, bb = act_affine(x, pt), act_affine(xz, pt)
        assert point_residual(a, bb, n) < 1e-12


def test_chart_transition():
    pt = AffinePoint("T", 4.0, 32.0)
    s = pt.in_chart("S", 2)
    assert abs(s.c1 - 0.25) < 1e-15 and abs(s.c2 - 2.0) < 1e-15
    back = s.in_chart("T", 2)
    assert abs(back.c1 - 4.0) < 1e-15 and abs(back.c2 - 32.0) < 1e-15


def test_action_lands_in_s_chart_near_pole():
    b = free_basis()
    g = Mat2.from_gauss(b, ((1, 0), (1, 1)))  # t1 -> t1/(t1+1), pole at t1 = -1
    x = GroupElt.of_matrix(g, 1)
    out = act_affine(x, AffinePoint("T", -1.0, 2.0))
    assert out.chart == "S"
    assert abs(out.c1) < 1e-12  # image has t1 = infinity


def test_compose_degree_mismatch():
    b = free_basis()
    with pytest.raises(ValueError):
        compose(GroupElt.identity(b, 1), GroupElt.identity(b, 2))


def test_act_affine_agrees_across_input_charts():
    # acting on the same point presented in either chart gives the same image
    b = free_basis()
    rng = random.Random(6)
    for n in (1, 2, 3):
        for _ in range(40):
            x = random_group_elt(b, n, rng)
            t1 = rng.uniform(0.3, 2.0) + 1j * rng.uniform(-1.0, 1.0)
            t2 = rng.uniform(-2.0, 2.0) + 1j * rng.uniform(-1.0, 1.0)
            pt_t = AffinePoint("T", t1, t2)
            pt_s = pt_t.in_chart("S", n)
            out_t = act_affine(x, pt_t, n)
            out_s = act_affine(x, pt_s, n)
            assert point_residual(out_t, out_s, n) < 1e-10


def test_act_affine_s_chart_point_at_infinity():
    # s1 = 0 is the point over infinity; only the S input path can see it
    b = free_basis()
    g = Mat2.from_gauss(b, ((2, 1), (1, 1)))  # infinity maps to a/c = 2
    x = GroupElt.of_matrix(g, 2)
    out = act_affine(x, AffinePoint("S", 0.0, 3.0), 2)
    out_t = out.in_chart("T", 2)
    assert abs(out_t.c1 - 2.0) < 1e-12
    assert abs(out_t.c2 - 3.0) < 1e-12  # t2' = s2/(c + d s1)^n = 3/1
