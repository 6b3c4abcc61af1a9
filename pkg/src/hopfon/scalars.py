"""Exact arithmetic for eigenvalue monomials.

Scalars are finite sums of monomials  c * l1^e1 * l2^e2  with
Gaussian-rational coefficients c and rational exponents (e1, e2) over
two formal generators l1, l2.  A declared integer relation lattice
(the pairs (a, b) with l1^a l2^b = 1) makes equality decidable: two
monomials agree exactly when their coefficients match and their
exponent difference is an integer vector of the lattice.  Every
resonance question reduces to such a lattice membership test.

Each generator also carries a numeric witness (a complex double) used
only for floating-point evaluation; witnesses never influence exact
decisions.  Rational powers of a witness are taken on the principal
branch, so the same root symbol always evaluates to the same value.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction


class ScalarDomainError(ArithmeticError):
    """An exact operation left the representable scalar domain."""


class BasisMismatchError(ValueError):
    """Operands were built over different eigenvalue bases."""


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError("expected an exact rational, got %r" % (x,))


def _exp(x):
    """Exponent entry: plain int when integral, Fraction otherwise."""
    if isinstance(x, int):
        return x
    x = _frac(x)
    return x.numerator if x.denominator == 1 else x


_E00 = (0, 0)


class GaussRat:
    """A Gaussian rational re + i*im, stored as an integer triple.

    The value is (x + i y)/z with z > 0 and gcd(x, y, z) = 1, which
    keeps every field operation to a single gcd normalization.
    """

    __slots__ = ("x", "y", "z")

    def __init__(self, re=0, im=0):
        re, im = _frac(re), _frac(im)
        z = math.lcm(re.denominator, im.denominator)
        object.__setattr__(self, "x", re.numerator * (z // re.denominator))
        object.__setattr__(self, "y", im.numerator * (z // im.denominator))
        object.__setattr__(self, "z", z)

    @classmethod
    def _raw(cls, x: int, y: int, z: int):
        if z < 0:
            x, y, z = -x, -y, -z
        g = math.gcd(math.gcd(x, y), z)
        if g > 1:
            x, y, z = x // g, y // g, z // g
        out = object.__new__(cls)
        object.__setattr__(out, "x", x)
        object.__setattr__(out, "y", y)
        object.__setattr__(out, "z", z)
        return out

    def __setattr__(self, name, value):
        raise AttributeError("GaussRat is immutable")

    @property
    def re(self) -> Fraction:
        return Fraction(self.x, self.z)

    @property
    def im(self) -> Fraction:
        return Fraction(self.y, self.z)

    # -- ring / field operations -------------------------------------

    def __add__(self, other):
        other = as_gauss(other)
        return GaussRat._raw(
            self.x * other.z + other.x * self.z,
            self.y * other.z + other.y * self.z,
            self.z * other.z,
        )

    __radd__ = __add__

    def __sub__(self, other):
        other = as_gauss(other)
        return GaussRat._raw(
            self.x * other.z - other.x * self.z,
            self.y * other.z - other.y * self.z,
            self.z * other.z,
        )

    def __rsub__(self, other):
        return as_gauss(other) - self

    def __neg__(self):
        return GaussRat._raw(-self.x, -self.y, self.z)

    def __mul__(self, other):
        other = as_gauss(other)
        return GaussRat._raw(
            self.x * other.x - self.y * other.y,
            self.x * other.y + self.y * other.x,
            self.z * other.z,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = as_gauss(other)
        n = other.x * other.x + other.y * other.y
        if n == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        return GaussRat._raw(
            (self.x * other.x + self.y * other.y) * other.z,
            (self.y * other.x - self.x * other.y) * other.z,
            self.z * n,
        )

    def __rtruediv__(self, other):
        return as_gauss(other) / self

    def __pow__(self, k: int):
        if not isinstance(k, int):
            raise TypeError("only integer powers of GaussRat")
        if k < 0:
            return (GaussRat(1) / self) ** (-k)
        out = GaussRat(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conjugate(self):
        return GaussRat._raw(self.x, -self.y, self.z)

    def norm2(self) -> Fraction:
        return Fraction(self.x * self.x + self.y * self.y, self.z * self.z)

    # -- predicates ----------------------------------------------------

    def is_zero(self) -> bool:
        return self.x == 0 and self.y == 0

    def is_one(self) -> bool:
        return self.y == 0 and self.x == self.z

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        try:
            other = as_gauss(other)
        except TypeError:
            return NotImplemented
        return self.x == other.x and self.y == other.y and self.z == other.z

    def __hash__(self):
        return hash((self.x, self.y, self.z))

    # -- conversions -----------------------------------------------------

    def to_complex(self) -> complex:
        return complex(self.x / self.z, self.y / self.z)

    __complex__ = to_complex

    def as_quad(self):
        """[re_num, re_den, im_num, im_den] for JSON interchange."""
        return [
            self.re.numerator,
            self.re.denominator,
            self.im.numerator,
            self.im.denominator,
        ]

    @classmethod
    def from_quad(cls, quad):
        if len(quad) != 4:
            raise ValueError("Gaussian rational quadruple must have 4 entries")
        return cls(Fraction(quad[0], quad[1]), Fraction(quad[2], quad[3]))

    def nth_root(self, k: int):
        """An exact k-th root in Q(i), or None when no such root exists.

        The principal numeric root is reconstructed with bounded
        denominators and verified exactly, then its unit rotations by
        i are tried (any two Q(i)-valued roots differ by such a unit
        only when the rotation itself lies in Q(i)).
        """
        if k <= 0:
            raise ValueError("root order must be positive")
        if k == 1 or self.is_zero():
            return self
        w = self.to_complex() ** (1.0 / k)
        units = (1, 1j, -1, -1j)
        for bound in (10**6, 10**12):
            for u in units:
                cand_c = w * u
                cand = GaussRat(
                    Fraction(cand_c.real).limit_denominator(bound),
                    Fraction(cand_c.imag).limit_denominator(bound),
                )
                if cand**k == self:
                    return cand
        return None

    def __repr__(self):
        if self.im == 0:
            return "GaussRat(%s)" % (self.re,)
        return "GaussRat(%s, %s)" % (self.re, self.im)


def as_gauss(x) -> GaussRat:
    if isinstance(x, GaussRat):
        return x
    if isinstance(x, (int, Fraction)):
        return GaussRat(x)
    raise TypeError("cannot interpret %r as a Gaussian rational" % (x,))


GR_ZERO = GaussRat(0)
GR_ONE = GaussRat(1)
GR_I = GaussRat(0, 1)


def gauss_roots_of_unity(n: int):
    """The n-th roots of unity that exist inside Q(i)."""
    roots = [GR_ONE]
    if n % 2 == 0:
        roots.append(GaussRat(-1))
    if n % 4 == 0:
        roots.extend([GR_I, GaussRat(0, -1)])
    return roots


# ---------------------------------------------------------------------------
# Integer relation lattices in Z^2


def _hnf(rows):
    """Row Hermite normal form of an integer 2-column matrix, rank <= 2."""
    rows = [tuple(int(c) for c in r) for r in rows]
    rows = [r for r in rows if r != (0, 0)]
    if not rows:
        return ()
    # Clear the first column with the gcd pivot.
    while sum(1 for r in rows if r[0] != 0) > 1:
        rows.sort(key=lambda r: (r[0] == 0, abs(r[0])))
        a = rows[0]
        rest = []
        for r in rows[1:]:
            if r[0] != 0:
                q = r[0] // a[0]
                r = (r[0] - q * a[0], r[1] - q * a[1])
            if r != (0, 0):
                rest.append(r)
        rows = [a] + rest
    pivot = [r for r in rows if r[0] != 0]
    others = [r for r in rows if r[0] == 0]
    if others:
        g = 0
        for r in others:
            g = math.gcd(g, r[1])
        others = [(0, g)] if g else []
    basis = pivot + others
    # Normalize signs and reduce the off-diagonal entry.
    out = []
    for a, b in basis:
        if a < 0 or (a == 0 and b < 0):
            a, b = -a, -b
        out.append((a, b))
    if len(out) == 2:
        (a, b), (z, c) = out
        b = b % c
        out = [(a, b), (0, c)]
    return tuple(out)


class RelationLattice:
    """A subgroup of Z^2 given by a canonical (HNF) basis of rank 0..2."""

    __slots__ = ("rows",)

    def __init__(self, generators=()):
        object.__setattr__(self, "rows", _hnf(generators))

    def __setattr__(self, name, value):
        raise AttributeError("RelationLattice is immutable")

    @property
    def rank(self) -> int:
        return len(self.rows)

    def contains(self, v) -> bool:
        """Membership of an integer (or integral rational) pair."""
        v1, v2 = _frac(v[0]), _frac(v[1])
        if v1.denominator != 1 or v2.denominator != 1:
            return False
        v1, v2 = int(v1), int(v2)
        if self.rank == 0:
            return v1 == 0 and v2 == 0
        if self.rank == 1:
            a, b = self.rows[0]
            if a != 0:
                if v1 % a:
                    return False
                t = v1 // a
                return v2 == t * b
            return v1 == 0 and v2 % b == 0
        (a, b), (_, c) = self.rows
        if v1 % a:
            return False
        t = v1 // a
        return (v2 - t * b) % c == 0

    def solve(self, v):
        """Integer coordinates of v in the basis, or None."""
        if not self.contains(v):
            return None
        v1, v2 = int(v[0]), int(v[1])
        if self.rank == 0:
            return ()
        if self.rank == 1:
            a, b = self.rows[0]
            return ((v1 // a) if a else (v2 // b),)
        (a, b), (_, c) = self.rows
        t = v1 // a
        return (t, (v2 - t * b) // c)

    def reduce_exponents(self, e):
        """Canonical representative of e (rational pair) modulo the lattice."""
        e1, e2 = e
        if self.rank >= 1:
            a, b = self.rows[0]
            if a != 0:
                t = e1 // a if isinstance(e1, int) else math.floor(e1 / a)
                e1, e2 = e1 - t * a, e2 - t * b
            else:
                t = e2 // b if isinstance(e2, int) else math.floor(e2 / b)
                e2 = e2 - t * b
        if self.rank == 2:
            _, c = self.rows[1]
            t = e2 // c if isinstance(e2, int) else math.floor(e2 / c)
            e2 = e2 - t * c
        return (_exp(e1), _exp(e2))

    def coset_order(self, v):
        """Least t >= 1 with t*v in the lattice (v a rational pair); None if infinite."""
        v1, v2 = _frac(v[0]), _frac(v[1])
        if v1 == 0 and v2 == 0:
            return 1
        if self.rank == 0:
            return None
        if self.rank == 1:
            a, b = self.rows[0]
            if v1 * b != v2 * a:
                return None
            alpha = v1 / a if a else v2 / b
            return alpha.denominator
        (a, b), (_, c) = self.rows
        alpha = v1 / a
        beta = (v2 - alpha * b) / c
        return math.lcm(alpha.denominator, beta.denominator)

    def minimal_positive_pair(self):
        """Smallest m1 >= 1 with (m1, -m2) in the lattice and m2 >= 1, as (m1, m2)."""
        if self.rank == 0:
            return None
        if self.rank == 1:
            a, b = self.rows[0]
            if a > 0 and b < 0:
                return (a, -b)
            if a == 0 or b >= 0:
                return None
            return None
        (a, b), (_, c) = self.rows
        # m1 must be a positive multiple of a; the m2 residue is fixed mod c.
        for t in range(1, abs(a) * abs(c) + 2):
            m1 = t * a
            r = (-t * b) % c
            m2 = r if r > 0 else c
            if m2 > 0:
                return (m1, m2)
        return None

    def __eq__(self, other):
        return isinstance(other, RelationLattice) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return "RelationLattice(%r)" % (list(self.rows),)


# ---------------------------------------------------------------------------
# Eigenvalue bases

_WITNESS_TOL = 1e-12


def find_relations(v1: GaussRat, v2: GaussRat, bound: int = 64) -> RelationLattice:
    """Relation lattice of two nonzero Gaussian rationals by bounded search.

    All pairs (a, b) with |a|, |b| <= bound and v1^a v2^b = 1 are
    located with a floating prescreen and confirmed by exact power
    comparison.
    """
    if v1.is_zero() or v2.is_zero():
        raise ValueError("eigenvalues must be nonzero")
    la = math.log(abs(complex(v1))) if complex(v1) != 0 else 0.0
    lb = math.log(abs(complex(v2)))
    gens = []
    p1 = {0: GR_ONE}
    p2 = {0: GR_ONE}

    def pw(cache, base, k):
        if k not in cache:
            cache[k] = base**k
        return cache[k]

    for a in range(-bound, bound + 1):
        for b in range(-bound, bound + 1):
            if a == 0 and b == 0:
                continue
            if abs(a * la + b * lb) > 1e-9 * (1 + abs(a) + abs(b)):
                continue
            if (pw(p1, v1, a) * pw(p2, v2, b)).is_one():
                gens.append((a, b))
    return RelationLattice(gens)


class EigenBasis:
    """Two formal eigenvalue generators with a relation lattice and witnesses."""

    __slots__ = ("names", "lattice", "witness", "exact", "_cache")

    def __init__(self, names=("l1", "l2"), relations=(), witness=(0.5, 0.5), exact=None):
        lattice = relations if isinstance(relations, RelationLattice) else RelationLattice(relations)
        witness = (complex(witness[0]), complex(witness[1]))
        if witness[0] == 0 or witness[1] == 0:
            raise ValueError("numeric witnesses must be nonzero")
        for a, b in lattice.rows:
            val = witness[0] ** a * witness[1] ** b
            if abs(val - 1.0) > _WITNESS_TOL * (1 + abs(val)):
                raise ValueError(
                    "witness %r violates declared relation (%d, %d)" % (witness, a, b)
                )
        object.__setattr__(self, "names", (str(names[0]), str(names[1])))
        object.__setattr__(self, "lattice", lattice)
        object.__setattr__(self, "witness", witness)
        object.__setattr__(self, "exact", exact)
        object.__setattr__(self, "_cache", {})

    def __setattr__(self, name, value):
        raise AttributeError("EigenBasis is immutable")

    @classmethod
    def from_gauss_values(cls, v1, v2, bound: int = 64, names=("l1", "l2")):
        """Basis for concrete Gaussian-rational eigenvalues.

        The relation lattice is computed by bounded search with exact
        power comparison.
        """
        v1, v2 = as_gauss(v1), as_gauss(v2)
        lat = find_relations(v1, v2, bound)
        return cls(names, lat, (v1.to_complex(), v2.to_complex()), exact=(v1, v2))

    @property
    def rank(self) -> int:
        return self.lattice.rank

    def hyperresonance(self):
        """Minimal positive pair (m1, m2) with l1^m1 = l2^m2, or None."""
        return self.lattice.minimal_positive_pair()

    def zero(self):
        out = self._cache.get("zero")
        if out is None:
            out = self._cache["zero"] = Scalar._raw(self, ())
        return out

    def one(self):
        out = self._cache.get("one")
        if out is None:
            out = self._cache["one"] = Scalar._raw(self, ((GR_ONE, _E00),))
        return out

    def gauss(self, c):
        if isinstance(c, int) and -16 <= c <= 16:
            out = self._cache.get(c)
            if out is None:
                out = self._cache[c] = Scalar.monomial(self, c)
            return out
        return Scalar.monomial(self, as_gauss(c))

    def gen(self, i: int, power=1):
        """The generator l1 (i=0) or l2 (i=1) raised to a rational power."""
        e = [0, 0]
        e[i] = _exp(power)
        return Scalar.monomial(self, GR_ONE, tuple(e))

    def __eq__(self, other):
        if self is other:
            return True
        return (
            isinstance(other, EigenBasis)
            and self.lattice == other.lattice
            and self.witness == other.witness
            and self.exact == other.exact
        )

    def __hash__(self):
        return hash((self.lattice, self.witness))

    def __repr__(self):
        return "EigenBasis(names=%r, lattice=%r, witness=%r)" % (
            self.names,
            self.lattice,
            self.witness,
        )


# ---------------------------------------------------------------------------
# Scalars


def _merge_terms(basis, raw_terms):
    acc = {}
    for coeff, exps in raw_terms:
        if coeff.is_zero():
            continue
        key = basis.lattice.reduce_exponents(exps)
        if key in acc:
            acc[key] = acc[key] + coeff
        else:
            acc[key] = coeff
    items = [(c, e) for e, c in acc.items() if not c.is_zero()]
    items.sort(key=lambda t: t[1])
    return tuple(items)


class Scalar:
    """A finite sum of eigenvalue monomials over a fixed basis.

    The canonical form stores lattice-reduced exponents, merged and
    sorted, with zero represented by the empty sum.  Single-term
    values are the units of the ring; only those admit inverses and
    roots.
    """

    __slots__ = ("basis", "terms")

    def __init__(self, basis: EigenBasis, terms):
        object.__setattr__(self, "basis", basis)
        object.__setattr__(self, "terms", _merge_terms(basis, terms))

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    @classmethod
    def _raw(cls, basis, terms):
        """Internal constructor for already-canonical term tuples."""
        out = object.__new__(cls)
        object.__setattr__(out, "basis", basis)
        object.__setattr__(out, "terms", terms)
        return out

    @classmethod
    def monomial(cls, basis, coeff, exps=(0, 0)):
        coeff = as_gauss(coeff)
        if coeff.is_zero():
            return cls._raw(basis, ())
        key = basis.lattice.reduce_exponents((_exp(exps[0]), _exp(exps[1])))
        return cls._raw(basis, ((coeff, key),))

    # -- structure -------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_unit(self) -> bool:
        return len(self.terms) == 1

    def is_one(self) -> bool:
        return (
            len(self.terms) == 1
            and self.terms[0][0].is_one()
            and self.terms[0][1] == (0, 0)
        )

    @property
    def coeff(self) -> GaussRat:
        """Coefficient of a monomial scalar."""
        if self.is_zero():
            return GR_ZERO
        if not self.is_unit():
            raise ScalarDomainError("scalar is a sum of monomials, not a monomial")
        return self.terms[0][0]

    @property
    def exps(self):
        """Exponent pair of a monomial scalar (canonical representative)."""
        if self.is_zero():
            return (_frac(0), _frac(0))
        if not self.is_unit():
            raise ScalarDomainError("scalar is a sum of monomials, not a monomial")
        return self.terms[0][1]

    def _check(self, other) -> "Scalar":
        if isinstance(other, Scalar):
            if other.basis is not self.basis and other.basis != self.basis:
                raise BasisMismatchError("scalars over different eigenvalue bases")
            return other
        if isinstance(other, int):
            return self.basis.gauss(other)
        return Scalar.monomial(self.basis, as_gauss(other))

    # -- ring operations ---------------------------------------------------

    def __add__(self, other):
        other = self._check(other)
        # both term lists are canonical: merge without re-reducing exponents
        acc = dict(self.terms and ((e, c) for c, e in self.terms) or ())
        for c, e in other.terms:
            if e in acc:
                acc[e] = acc[e] + c
            else:
                acc[e] = c
        items = [(c, e) for e, c in acc.items() if not c.is_zero()]
        items.sort(key=lambda t: t[1])
        return Scalar._raw(self.basis, tuple(items))

    __radd__ = __add__

    def __neg__(self):
        return Scalar._raw(self.basis, tuple((-c, e) for c, e in self.terms))

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        other = self._check(other)
        ts, to = self.terms, other.terms
        if len(ts) == 1 and len(to) == 1:
            (c1, e1), (c2, e2) = ts[0], to[0]
            c = c1 * c2
            if c.is_zero():
                return Scalar._raw(self.basis, ())
            e = (e1[0] + e2[0], e1[1] + e2[1])
            if e != (0, 0):
                e = self.basis.lattice.reduce_exponents(e)
            return Scalar._raw(self.basis, ((c, e),))
        prod = []
        for c1, e1 in ts:
            for c2, e2 in to:
                prod.append((c1 * c2, (e1[0] + e2[0], e1[1] + e2[1])))
        return Scalar(self.basis, prod)

    __rmul__ = __mul__

    def __pow__(self, k):
        k = _frac(k)
        if k.denominator != 1:
            return self.nth_root(k.denominator) ** k.numerator
        k = int(k)
        if k < 0:
            return self.inverse() ** (-k)
        out = self.basis.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def inverse(self) -> "Scalar":
        if self.is_zero():
            raise ZeroDivisionError("zero scalar has no inverse")
        if not self.is_unit():
            raise ScalarDomainError("only monomial scalars are invertible")
        c, e = self.terms[0]
        return Scalar.monomial(self.basis, GR_ONE / c, (-e[0], -e[1]))

    def __truediv__(self, other):
        other = self._check(other)
        if other.is_unit():
            return self * other.inverse()
        return exact_divide(self, other)

    def __rtruediv__(self, other):
        return self._check(other) / self

    def nth_root(self, k: int) -> "Scalar":
        """Some exact k-th root of a monomial scalar.

        The exponent part divides freely; the coefficient root must
        exist in Q(i), otherwise the value is outside the domain.
        """
        if not self.is_unit():
            raise ScalarDomainError("roots are only taken of monomial scalars")
        c, e = self.terms[0]
        root = c.nth_root(k)
        if root is None:
            raise ScalarDomainError("no exact %d-th root of %r in Q(i)" % (k, c))
        return Scalar.monomial(self.basis, root, (_frac(e[0]) / k, _frac(e[1]) / k))

    # -- predicates, conversions -----------------------------------------

    def __eq__(self, other):
        try:
            other = self._check(other)
        except (BasisMismatchError, TypeError):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash((self.basis, self.terms))

    def __bool__(self):
        return not self.is_zero()

    def sort_key(self):
        return tuple((e, c.re, c.im) for c, e in self.terms)

    def numeric(self) -> complex:
        w1, w2 = self.basis.witness
        total = 0j
        for c, (e1, e2) in self.terms:
            val = c.to_complex()
            if e1:
                val *= cmath.exp(float(e1) * cmath.log(w1))
            if e2:
                val *= cmath.exp(float(e2) * cmath.log(w2))
            total += val
        return total

    def __repr__(self):
        if self.is_zero():
            return "Scalar<0>"
        bits = []
        for c, (e1, e2) in self.terms:
            s = repr(c)
            if e1:
                s += "*%s^%s" % (self.basis.names[0], e1)
            if e2:
                s += "*%s^%s" % (self.basis.names[1], e2)
            bits.append(s)
        return "Scalar<%s>" % " + ".join(bits)


# ---------------------------------------------------------------------------
# Spec operations


def scalar_mul(a: Scalar, b: Scalar) -> Scalar:
    """Product of two scalars over one basis (coefficients multiply, exponents add)."""
    if not isinstance(b, Scalar) or a.basis != b.basis:
        raise BasisMismatchError("scalar_mul needs two scalars over one basis")
    return a * b


def is_root_of_unity(a: Scalar, n: int) -> bool:
    """Exact test for a^n = 1.

    Requires a monomial whose coefficient is an n-th root of unity in
    Q(i) and whose exponents, scaled by n, form an integer lattice
    vector.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if a.is_zero() or not a.is_unit():
        return False
    c, (e1, e2) = a.terms[0]
    if not (c**n).is_one():
        return False
    return a.basis.lattice.contains((n * e1, n * e2))


def numeric_eval(a: Scalar) -> complex:
    """Floating-point value of a scalar from the basis witnesses."""
    return a.numeric()


# ---------------------------------------------------------------------------
# Exact division by a binomial (needed by conjugacy normal forms)


def _chain_split(basis, support, v):
    """Partition exponent keys into chains gamma, gamma+v, ... modulo the lattice."""
    lattice = basis.lattice
    chains = []
    for key in support:
        placed = False
        for chain in chains:
            anchor = chain[0][1]
            diff = (key[0] - anchor[0], key[1] - anchor[1])
            j = _solve_step(lattice, diff, v)
            if j is not None:
                chain.append((j, key))
                placed = True
                break
        if not placed:
            chains.append([(0, key)])
    return chains


def _solve_step(lattice, diff, v):
    """Integer j with diff - j*v in the lattice, or None."""
    v1, v2 = _frac(v[0]), _frac(v[1])
    d1, d2 = _frac(diff[0]), _frac(diff[1])
    order = lattice.coset_order(v)
    if order is not None:
        for j in range(order):
            if lattice.contains((d1 - j * v1, d2 - j * v2)):
                return j
        return None
    # v has infinite order modulo the lattice: at most one valid j.
    if lattice.rank == 0:
        if v1 != 0:
            j = d1 / v1
        else:
            j = d2 / v2
        if j.denominator == 1 and d1 == j * v1 and d2 == j * v2:
            return int(j)
        return None
    # rank 1, v independent of the generator
    a, b = lattice.rows[0]
    det = v1 * b - v2 * a
    j = (d1 * b - d2 * a) / det
    x = (v1 * d2 - v2 * d1) / det
    if j.denominator == 1 and x.denominator == 1:
        return int(j)
    return None


def exact_divide(a: Scalar, d: Scalar) -> Scalar:
    """Solve x * d = a exactly, for d a monomial or a binomial.

    Division by a binomial c1*m1 + c2*m2 factors out the leading
    monomial and solves the telescoping system x - w*l^v*x = a/u term
    by term along translation chains of the exponent group; when v has
    finite order modulo the lattice the cyclic system is solved in
    closed form.  Raises ScalarDomainError when no exact quotient
    exists in the monomial-sum ring.
    """
    if d.is_zero():
        raise ZeroDivisionError("division by zero scalar")
    if d.is_unit():
        return a * d.inverse()
    if len(d.terms) != 2:
        raise ScalarDomainError("exact division only implemented for binomial divisors")
    basis = a.basis
    if a.is_zero():
        return basis.zero()
    (c1, e1), (c2, e2) = d.terms
    # d = u * (1 - w * l^v) with u the first monomial.
    u = Scalar.monomial(basis, c1, e1)
    w = -(c2 / c1)
    v = (e2[0] - e1[0], e2[1] - e1[1])
    rhs = a * u.inverse()
    order = basis.lattice.coset_order(v)
    coeffs = {e: c for c, e in rhs.terms}
    chains = _chain_split(basis, list(coeffs), v)
    x_terms = []
    if order is None:
        for chain in chains:
            chain.sort()
            jmin = chain[0][0]
            jmax = chain[-1][0]
            by_j = {j: coeffs[key] for j, key in chain}
            anchor_j, anchor_key = chain[0]
            run = GR_ZERO
            for j in range(jmin, jmax + 1):
                run = by_j.get(j, GR_ZERO) + w * run
                if not run.is_zero() and j < jmax:
                    x_terms.append(
                        (
                            run,
                            (
                                anchor_key[0] + (j - anchor_j) * v[0],
                                anchor_key[1] + (j - anchor_j) * v[1],
                            ),
                        )
                    )
            if not run.is_zero():
                raise ScalarDomainError("scalar not divisible by binomial")
    else:
        wt = w**order
        for chain in chains:
            by_j = {}
            anchor_j, anchor_key = chain[0]
            for j, key in chain:
                by_j[(j - anchor_j) % order] = by_j.get((j - anchor_j) % order, GR_ZERO) + coeffs[key]
            if not wt.is_one():
                denom = GR_ONE - wt
                for j in range(order):
                    s = GR_ZERO
                    for i in range(order):
                        s = s + (w**i) * by_j.get((j - i) % order, GR_ZERO)
                    val = s / denom
                    if not val.is_zero():
                        x_terms.append(
                            (val, (anchor_key[0] + j * v[0], anchor_key[1] + j * v[1]))
                        )
            else:
                # Singular cyclic system: solvable only for compatible data,
                # and then x is determined up to an additive multiple of the
                # kernel; anchor it by x_0 = 0.
                total = GR_ZERO
                for j in range(order):
                    total = total + by_j.get(j, GR_ZERO) / (w**j)
                if not total.is_zero():
                    raise ScalarDomainError("scalar not divisible by binomial (torsion)")
                run = GR_ZERO
                for j in range(1, order):
                    run = by_j.get(j, GR_ZERO) + w * run
                    if not run.is_zero():
                        x_terms.append(
                            (run, (anchor_key[0] + j * v[0], anchor_key[1] + j * v[1]))
                        )
    x = Scalar(basis, x_terms)
    if x * d != a:
        raise ScalarDomainError("scalar not divisible by binomial")
    return x
