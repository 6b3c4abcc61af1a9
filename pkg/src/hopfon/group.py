"""The symmetry group of the total space of O(n) -> P^1.

Elements are pairs (g, p): an invertible 2x2 scalar matrix g, taken
modulo n-th roots of unity, together with a degree-n homogeneous
polynomial p.  The product is

    (g0, p0) (g1, p1) = (g0 g1, p0 + p1 . g0^{-1})

where p . g denotes precomposition, (p . g)(Z) = p(g Z), and the
inverse is (g, p)^{-1} = (g^{-1}, -p . g).

Affine coordinates (t1, t2) cover the part of O(n) over the affine
line; the second chart is (s1, s2) = (1/t1, t2/t1^n).  A matrix acts
on chart T by

    (g, 0)(t1, t2) = ((a t1 + b)/(c t1 + d), t2/(c t1 + d)^n)

and the polynomial part acts by (I, p)(t1, t2) = (t1, t2 + p(t1, 1)).
A general element acts as (I, p) after (g, 0), since (g, p) =
(I, p) (g, 0).
"""

from __future__ import annotations

from fractions import Fraction
from math import comb

from .scalars import (
    BasisMismatchError,
    EigenBasis,
    GaussRat,
    Scalar,
    ScalarDomainError,
)


class HomogPoly:
    """Homogeneous polynomial sum(a_k Z1^k Z2^(n-k)) with scalar coefficients."""

    __slots__ = ("basis", "degree", "coeffs")

    def __init__(self, basis: EigenBasis, degree: int, coeffs):
        coeffs = tuple(coeffs)
        if degree < 1 or len(coeffs) != degree + 1:
            raise ValueError("degree-n polynomial needs exactly n+1 coefficients")
        for c in coeffs:
            if not isinstance(c, Scalar) or c.basis != basis:
                raise BasisMismatchError("coefficients must be scalars over the basis")
        object.__setattr__(self, "basis", basis)
        object.__setattr__(self, "degree", degree)
        object.__setattr__(self, "coeffs", coeffs)

    def __setattr__(self, name, value):
        raise AttributeError("HomogPoly is immutable")

    @classmethod
    def zero(cls, basis, degree):
        return cls(basis, degree, [basis.zero()] * (degree + 1))

    @classmethod
    def monomial(cls, basis, degree, k, coeff):
        cs = [basis.zero()] * (degree + 1)
        cs[k] = coeff if isinstance(coeff, Scalar) else basis.gauss(coeff)
        return cls(basis, degree, cs)

    def is_zero(self):
        return all(c.is_zero() for c in self.coeffs)

    def __add__(self, other):
        self._compat(other)
        return HomogPoly(
            self.basis, self.degree, [a + b for a, b in zip(self.coeffs, other.coeffs)]
        )

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return HomogPoly(self.basis, self.degree, [-c for c in self.coeffs])

    def scale(self, s: Scalar):
        return HomogPoly(self.basis, self.degree, [s * c for c in self.coeffs])

    def _compat(self, other):
        if not isinstance(other, HomogPoly) or other.degree != self.degree:
            raise ValueError("degree mismatch between homogeneous polynomials")
        if other.basis != self.basis:
            raise BasisMismatchError("polynomials over different bases")

    def precompose(self, m: "Mat2") -> "HomogPoly":
        """p(M Z): substitute Z1 -> m11 Z1 + m12 Z2, Z2 -> m21 Z1 + m22 Z2."""
        n = self.degree
        basis = self.basis
        if self.is_zero():
            return self
        (m11, m12), (m21, m22) = m.entries
        if m12.is_zero() and m21.is_zero():
            # diagonal substitution scales each coefficient independently
            cs = []
            for k, a in enumerate(self.coeffs):
                if a.is_zero():
                    cs.append(a)
                else:
                    cs.append(a * m11**k * m22 ** (n - k))
            return HomogPoly(basis, n, cs)
        # (a Z1 + b Z2)^j as coefficient vectors, built once per row.
        out = [basis.zero() for _ in range(n + 1)]
        pow1 = _binom_powers(m11, m12, n, basis)
        pow2 = _binom_powers(m21, m22, n, basis)
        for k, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            v1 = pow1[k]
            v2 = pow2[n - k]
            for i, c1 in enumerate(v1):
                if c1.is_zero():
                    continue
                for j, c2 in enumerate(v2):
                    if c2.is_zero():
                        continue
                    out[i + j] = out[i + j] + a * c1 * c2
        return HomogPoly(basis, n, out)

    def eval_t(self, t1: complex) -> complex:
        """Numeric p(t1, 1)."""
        total = 0j
        power = 1.0 + 0j
        for k in range(self.degree + 1):
            c = self.coeffs[k]
            if not c.is_zero():
                total += c.numeric() * power
            power *= t1
        return total

    def eval_s(self, s1: complex) -> complex:
        """Numeric p(1, s1)."""
        total = 0j
        power = 1.0 + 0j
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if not c.is_zero():
                total += c.numeric() * power
            power *= s1
        return total

    def __eq__(self, other):
        return (
            isinstance(other, HomogPoly)
            and other.degree == self.degree
            and other.coeffs == self.coeffs
        )

    def __hash__(self):
        return hash((self.degree, self.coeffs))

    def __repr__(self):
        bits = [
            "(%r)*Z1^%d*Z2^%d" % (c, k, self.degree - k)
            for k, c in enumerate(self.coeffs)
            if not c.is_zero()
        ]
        return "HomogPoly<%s>" % (" + ".join(bits) or "0")


def _binom_powers(a: Scalar, b: Scalar, n: int, basis):
    """Coefficient vectors of (a Z1 + b Z2)^j for j = 0..n."""
    apow = [basis.one()]
    bpow = [basis.one()]
    for _ in range(n):
        apow.append(apow[-1] * a)
        bpow.append(bpow[-1] * b)
    table = []
    for j in range(n + 1):
        table.append([basis.gauss(comb(j, i)) * apow[i] * bpow[j - i] for i in range(j + 1)])
    return table


class Mat2:
    """Invertible 2x2 matrix of scalars."""

    __slots__ = ("basis", "entries")

    def __init__(self, basis: EigenBasis, entries):
        rows = tuple(tuple(e for e in row) for row in entries)
        if len(rows) != 2 or any(len(r) != 2 for r in rows):
            raise ValueError("need a 2x2 matrix")
        for row in rows:
            for e in row:
                if not isinstance(e, Scalar) or e.basis != basis:
                    raise BasisMismatchError("entries must be scalars over the basis")
        object.__setattr__(self, "basis", basis)
        object.__setattr__(self, "entries", rows)
        if self.det().is_zero():
            raise ValueError("matrix must be invertible")

    def __setattr__(self, name, value):
        raise AttributeError("Mat2 is immutable")

    @classmethod
    def identity(cls, basis):
        return cls.diag(basis.one(), basis.one(), basis)

    @classmethod
    def diag(cls, a, d, basis=None):
        basis = basis or a.basis
        z = basis.zero()
        return cls(basis, ((a, z), (z, d)))

    @classmethod
    def from_gauss(cls, basis, rows):
        return cls(basis, tuple(tuple(basis.gauss(e) for e in r) for r in rows))

    def det(self) -> Scalar:
        (a, b), (c, d) = self.entries
        return a * d - b * c

    def __mul__(self, other: "Mat2") -> "Mat2":
        if other.basis != self.basis:
            raise BasisMismatchError("matrices over different bases")
        (a, b), (c, d) = self.entries
        (e, f), (g, h) = other.entries
        return Mat2(
            self.basis,
            ((a * e + b * g, a * f + b * h), (c * e + d * g, c * f + d * h)),
        )

    def inverse(self) -> "Mat2":
        det = self.det()
        if not det.is_unit():
            raise ScalarDomainError(
                "matrix determinant is not a monomial; inverse leaves the domain"
            )
        inv = det.inverse()
        (a, b), (c, d) = self.entries
        return Mat2(self.basis, ((inv * d, -(inv * b)), (-(inv * c), inv * a)))

    def scale(self, s: Scalar) -> "Mat2":
        return Mat2(self.basis, tuple(tuple(s * e for e in row) for row in self.entries))

    def is_diagonal(self):
        return self.entries[0][1].is_zero() and self.entries[1][0].is_zero()

    def is_upper_triangular(self):
        return self.entries[1][0].is_zero()

    def is_lower_triangular(self):
        return self.entries[0][1].is_zero()

    def numeric(self):
        return tuple(tuple(e.numeric() for e in row) for row in self.entries)

    def __eq__(self, other):
        return isinstance(other, Mat2) and other.entries == self.entries

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        return "Mat2(%r)" % (self.entries,)


class GroupElt:
    """An element (g, p): matrix modulo n-th roots of unity plus degree-n polynomial."""

    __slots__ = ("g", "p")

    def __init__(self, g: Mat2, p: HomogPoly):
        if g.basis != p.basis:
            raise BasisMismatchError("matrix and polynomial over different bases")
        object.__setattr__(self, "g", g)
        object.__setattr__(self, "p", p)

    def __setattr__(self, name, value):
        raise AttributeError("GroupElt is immutable")

    @property
    def degree(self) -> int:
        return self.p.degree

    @property
    def basis(self) -> EigenBasis:
        return self.g.basis

    @classmethod
    def identity(cls, basis, n):
        return cls(Mat2.identity(basis), HomogPoly.zero(basis, n))

    @classmethod
    def of_matrix(cls, g: Mat2, n: int):
        return cls(g, HomogPoly.zero(g.basis, n))

    def compose(self, other: "GroupElt") -> "GroupElt":
        """(g0, p0)(g1, p1) = (g0 g1, p0 + p1 . g0^{-1})."""
        if other.degree != self.degree:
            raise ValueError("degree mismatch between group elements")
        if other.basis != self.basis:
            raise BasisMismatchError("group elements over different bases")
        if other.p.is_zero():
            return GroupElt(self.g * other.g, self.p)
        g0inv = self.g.inverse()
        return GroupElt(self.g * other.g, self.p + other.p.precompose(g0inv))

    def inverse(self) -> "GroupElt":
        """(g, p)^{-1} = (g^{-1}, -p . g)."""
        if self.p.is_zero():
            return GroupElt(self.g.inverse(), self.p)
        return GroupElt(self.g.inverse(), -self.p.precompose(self.g))

    def conjugate_by(self, h: "GroupElt") -> "GroupElt":
        return h.compose(self).compose(h.inverse())

    def __eq__(self, other):
        """(g, p) = (g', p') iff p = p' and g' = z g for an n-th root of unity z."""
        if not isinstance(other, GroupElt) or other.degree != self.degree:
            return NotImplemented
        if other.basis != self.basis or self.p != other.p:
            return False
        flat = [e for row in self.g.entries for e in row]
        flat2 = [e for row in other.g.entries for e in row]
        ref = next(i for i, e in enumerate(flat) if not e.is_zero())
        if flat2[ref].is_zero():
            return False
        r, r2 = flat[ref], flat2[ref]
        # g' = (r2/r) g entrywise, tested by cross-multiplication.
        for e, e2 in zip(flat, flat2):
            if e2 * r != e * r2:
                return False
        n = self.degree
        # the ratio must be an n-th root of unity: r2^n = r^n
        return (r2**n) == (r**n)

    __hash__ = None

    def __repr__(self):
        return "GroupElt(g=%r, p=%r)" % (self.g, self.p)


# ---------------------------------------------------------------------------
# Affine points and the numeric action


class AffinePoint:
    """A point of O(n) in one of the two affine charts."""

    __slots__ = ("chart", "c1", "c2")

    def __init__(self, chart: str, c1: complex, c2: complex):
        if chart not in ("T", "S"):
            raise ValueError("chart must be 'T' or 'S'")
        object.__setattr__(self, "chart", chart)
        object.__setattr__(self, "c1", complex(c1))
        object.__setattr__(self, "c2", complex(c2))

    def __setattr__(self, name, value):
        raise AttributeError("AffinePoint is immutable")

    def in_chart(self, chart: str, n: int) -> "AffinePoint":
        """The same point in the requested chart; (s1, s2) = (1/t1, t2/t1^n)."""
        if chart == self.chart:
            return self
        if self.c1 == 0:
            raise ZeroDivisionError("point is not visible in the other chart")
        return AffinePoint(chart, 1 / self.c1, self.c2 / self.c1**n)

    def __repr__(self):
        return "AffinePoint(%s, %r, %r)" % (self.chart, self.c1, self.c2)


def chordal(a: complex, b: complex) -> float:
    """Chordal distance between two points of P^1 given as affine values (inf allowed)."""
    from math import inf, isinf, sqrt

    a_inf = isinf(a.real) or isinf(a.imag) if isinstance(a, complex) else a == inf
    b_inf = isinf(b.real) or isinf(b.imag) if isinstance(b, complex) else b == inf
    if a_inf and b_inf:
        return 0.0
    if a_inf:
        return 1 / sqrt(1 + abs(b) ** 2)
    if b_inf:
        return 1 / sqrt(1 + abs(a) ** 2)
    return abs(a - b) / sqrt((1 + abs(a) ** 2) * (1 + abs(b) ** 2))


_T1_MAX = 1e6
_DEN_MIN = 1e-9


def act_affine(x: GroupElt, pt: AffinePoint, n: int = None) -> AffinePoint:
    """Numeric action of a group element on an affine point of O(n).

    Computed in chart T unless the result is large or the chart
    denominator is unsafe, in which case chart S is used.  For a
    diagonal matrix the action only involves the quotient-invariant
    pair (a/d, d^n), so it is independent of the root-of-unity
    representative.
    """
    if n is None:
        n = x.degree
    elif n != x.degree:
        raise ValueError("point and element live on different O(n)")
    (ea, eb), (ec, ed) = x.g.entries
    if x.g.is_diagonal():
        ratio = (ea / ed).numeric()
        dn = (ed**n).numeric()
        if pt.chart == "T":
            out = AffinePoint("T", ratio * pt.c1, pt.c2 / dn)
        else:
            an = ratio**n * dn
            out = AffinePoint("S", pt.c1 / ratio, pt.c2 / an)
        return _apply_poly(x.p, out, n)

    a, b = ea.numeric(), eb.numeric()
    c, d = ec.numeric(), ed.numeric()
    if pt.chart == "T":
        num = a * pt.c1 + b
        den = c * pt.c1 + d
    else:
        num = a + b * pt.c1
        den = c + d * pt.c1
    scale = max(abs(num), abs(den))
    if scale == 0:
        raise ArithmeticError("degenerate image point; matrix is singular numerically")
    use_t = abs(den) >= _DEN_MIN * scale and abs(num) <= _T1_MAX * abs(den)
    if use_t:
        out = AffinePoint("T", num / den, pt.c2 / den**n)
    else:
        out = AffinePoint("S", den / num, pt.c2 / num**n)
    return _apply_poly(x.p, out, n)


def _apply_poly(p: HomogPoly, pt: AffinePoint, n: int) -> AffinePoint:
    if p.is_zero():
        return pt
    if pt.chart == "T":
        return AffinePoint("T", pt.c1, pt.c2 + p.eval_t(pt.c1))
    return AffinePoint("S", pt.c1, pt.c2 + p.eval_s(pt.c1))


def compose(x: GroupElt, y: GroupElt) -> GroupElt:
    return x.compose(y)


def inverse(x: GroupElt) -> GroupElt:
    return x.inverse()


def random_group_elt(basis, n, rng, scale=3) -> GroupElt:
    """A random element with small Gaussian-rational entries (for property tests)."""

    def small():
        return GaussRat(
            Fraction(rng.randint(-scale, scale), rng.randint(1, scale)),
            Fraction(rng.randint(-scale, scale), rng.randint(1, scale)),
        )

    while True:
        rows = ((small(), small()), (small(), small()))
        det = rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
        if not det.is_zero():
            break
    g = Mat2.from_gauss(basis, rows)
    p = HomogPoly(basis, n, [basis.gauss(small()) for _ in range(n + 1)])
    return GroupElt(g, p)
