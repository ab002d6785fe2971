"""Exact arithmetic cores shared across the toolkit.

Provides Gaussian rationals, sparse polynomials with Gaussian-rational
coefficients, formal quadratic/biquadratic radical rings, and exact
rational/integer linear solvers.  Everything here refuses floats on input:
these types exist so that algebraic identities can be checked with no
tolerance at all.
"""

from __future__ import annotations

import math
from fractions import Fraction


def as_fraction(x):
    """Coerce int/Fraction (or a fraction string like '2/3') to Fraction.

    Floats are rejected: silent float->Fraction conversion would defeat the
    exactness guarantees of every class in this module.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"exact rational required, got {type(x).__name__}")


class QI:
    """Gaussian rational re + im*i with exact Fraction components."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = as_fraction(re)
        self.im = as_fraction(im)

    @staticmethod
    def coerce(x):
        if isinstance(x, QI):
            return x
        return QI(as_fraction(x))

    @staticmethod
    def _try_coerce(x):
        if isinstance(x, QI):
            return x
        if isinstance(x, (int, Fraction)):
            return QI(x)
        return None

    def __add__(self, other):
        other = QI._try_coerce(other)
        if other is None:
            return NotImplemented
        return QI(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = QI._try_coerce(other)
        if other is None:
            return NotImplemented
        return QI(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return QI.coerce(other) - self

    def __mul__(self, other):
        other = QI._try_coerce(other)
        if other is None:
            return NotImplemented
        return QI(self.re * other.re - self.im * other.im,
                  self.re * other.im + self.im * other.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = QI.coerce(other)
        n2 = other.re * other.re + other.im * other.im
        if n2 == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        return QI((self.re * other.re + self.im * other.im) / n2,
                  (self.im * other.re - self.re * other.im) / n2)

    def __neg__(self):
        return QI(-self.re, -self.im)

    def conj(self):
        return QI(self.re, -self.im)

    def is_zero(self):
        return self.re == 0 and self.im == 0

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = QI(other)
        if not isinstance(other, QI):
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def to_complex(self):
        return complex(self.re) + 1j * complex(self.im)

    def __repr__(self):
        return f"QI({self.re}, {self.im})"


QI_ZERO = QI(0)
QI_ONE = QI(1)
QI_I = QI(0, 1)


class VarTable:
    """Variable layout for coordinate polynomials at a fixed fiber dimension n.

    Variables, in index order: the holomorphic base coordinates X_1..X_{n-1},
    their conjugates, the fiber coordinates w_0..w_{n-1}, their conjugates,
    and the deformation parameter c (kept symbolic).  Total 4n-1 variables.
    """

    __slots__ = ("n", "nvars")

    def __init__(self, n):
        if n < 1:
            raise ValueError("n must be >= 1")
        self.n = n
        self.nvars = 4 * n - 1

    def x(self, a):
        if not 1 <= a <= self.n - 1:
            raise IndexError(f"X index {a} out of range 1..{self.n - 1}")
        return a - 1

    def xb(self, a):
        return (self.n - 1) + self.x(a)

    def w(self, k):
        if not 0 <= k <= self.n - 1:
            raise IndexError(f"w index {k} out of range 0..{self.n - 1}")
        return 2 * (self.n - 1) + k

    def wb(self, k):
        return self.w(k) + self.n

    @property
    def c(self):
        return self.nvars - 1

    def conj_perm(self):
        """Index permutation swapping each variable with its conjugate (c is fixed)."""
        perm = list(range(self.nvars))
        for a in range(1, self.n):
            perm[self.x(a)], perm[self.xb(a)] = perm[self.xb(a)], perm[self.x(a)]
        for k in range(self.n):
            perm[self.w(k)], perm[self.wb(k)] = perm[self.wb(k)], perm[self.w(k)]
        return tuple(perm)


class Poly:
    """Sparse multivariate polynomial with QI coefficients.

    terms maps exponent tuples (length nvars) to nonzero QI coefficients.
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars, terms=None):
        self.nvars = nvars
        self.terms = {}
        if terms:
            for mono, coeff in terms.items():
                coeff = QI.coerce(coeff)
                if not coeff.is_zero():
                    self.terms[tuple(mono)] = coeff

    @staticmethod
    def zero(nvars):
        return Poly(nvars)

    @staticmethod
    def const(nvars, coeff):
        return Poly(nvars, {(0,) * nvars: QI.coerce(coeff)})

    @staticmethod
    def variable(nvars, i):
        mono = [0] * nvars
        mono[i] = 1
        return Poly(nvars, {tuple(mono): QI_ONE})

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def _check(self, other):
        if self.nvars != other.nvars:
            raise ValueError("polynomials over different variable tables")

    def __add__(self, other):
        if not isinstance(other, Poly):
            other = Poly.const(self.nvars, other)
        self._check(other)
        terms = dict(self.terms)
        for mono, coeff in other.terms.items():
            acc = terms.get(mono, QI_ZERO) + coeff
            if acc.is_zero():
                terms.pop(mono, None)
            else:
                terms[mono] = acc
        out = Poly(self.nvars)
        out.terms = terms
        return out

    def __sub__(self, other):
        if not isinstance(other, Poly):
            other = Poly.const(self.nvars, other)
        return self + (-other)

    def __neg__(self):
        out = Poly(self.nvars)
        out.terms = {m: -c for m, c in self.terms.items()}
        return out

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, QI)):
            return self.scale(other)
        self._check(other)
        terms = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                mono = tuple(e1 + e2 for e1, e2 in zip(m1, m2))
                acc = terms.get(mono, QI_ZERO) + c1 * c2
                if acc.is_zero():
                    terms.pop(mono, None)
                else:
                    terms[mono] = acc
        out = Poly(self.nvars)
        out.terms = terms
        return out

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, coeff):
        coeff = QI.coerce(coeff)
        if coeff.is_zero():
            return Poly(self.nvars)
        out = Poly(self.nvars)
        out.terms = {m: c * coeff for m, c in self.terms.items()}
        return out

    def diff(self, i):
        """Partial derivative with respect to variable i."""
        terms = {}
        for mono, coeff in self.terms.items():
            e = mono[i]
            if e == 0:
                continue
            new = list(mono)
            new[i] = e - 1
            terms[tuple(new)] = coeff * e
        out = Poly(self.nvars)
        out.terms = terms
        return out

    def subs(self, assign):
        """Substitute exact QI values for some variables; returns a Poly.

        assign maps variable index -> QI/int/Fraction value.
        """
        assign = {i: QI.coerce(v) for i, v in assign.items()}
        out = Poly.zero(self.nvars)
        for mono, coeff in self.terms.items():
            factor = coeff
            new = list(mono)
            for i, val in assign.items():
                for _ in range(mono[i]):
                    factor = factor * val
                new[i] = 0
            out = out + Poly(self.nvars, {tuple(new): factor})
        return out

    def eval_complex(self, values):
        """Numeric evaluation; values is a sequence of complex, one per variable."""
        total = 0j
        for mono, coeff in self.terms.items():
            term = coeff.to_complex()
            for i, e in enumerate(mono):
                if e:
                    term *= values[i] ** e
            total += term
        return total

    def conj_swap(self, perm):
        """Conjugate coefficients and permute variables by perm (bar-partner swap)."""
        terms = {}
        for mono, coeff in self.terms.items():
            new = [0] * self.nvars
            for i, e in enumerate(mono):
                new[perm[i]] = e
            terms[tuple(new)] = coeff.conj()
        out = Poly(self.nvars)
        out.terms = terms
        return out

    def degree_in(self, i):
        return max((m[i] for m in self.terms), default=0)

    def total_degree(self, indices):
        """Max total degree over the given variable indices."""
        return max((sum(m[i] for i in indices) for m in self.terms), default=0)

    def constant_term(self):
        return self.terms.get((0,) * self.nvars, QI_ZERO)

    def sorted_items(self):
        return sorted(self.terms.items())

    def __repr__(self):
        if not self.terms:
            return "Poly(0)"
        bits = [f"{c!r}*{m}" for m, c in self.sorted_items()]
        return "Poly(" + " + ".join(bits) + ")"


class Rad:
    """Element of the formal radical ring Q + Q*sa + Q*sb + Q*sab.

    sa, sb are formal square roots of the positive integers a and b with
    sa*sa = a, sb*sb = b, sa*sb = sab, sa*sab = a*sb, sb*sab = b*sa,
    sab*sab = a*b.  No squarefreeness of a, b is assumed; equality is
    componentwise in this formal ring.
    """

    __slots__ = ("a", "b", "r1", "ra", "rb", "rab")

    def __init__(self, a, b, r1=0, ra=0, rb=0, rab=0):
        if not (isinstance(a, int) and isinstance(b, int) and a > 0 and b > 0):
            raise ValueError("radical parameters must be positive integers")
        self.a = a
        self.b = b
        self.r1 = as_fraction(r1)
        self.ra = as_fraction(ra)
        self.rb = as_fraction(rb)
        self.rab = as_fraction(rab)

    def _check(self, other):
        if not isinstance(other, Rad):
            raise TypeError("Rad arithmetic requires Rad operands")
        if self.a != other.a or self.b != other.b:
            raise ValueError("mixed radical parameters")

    def __add__(self, other):
        self._check(other)
        return Rad(self.a, self.b, self.r1 + other.r1, self.ra + other.ra,
                   self.rb + other.rb, self.rab + other.rab)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return Rad(self.a, self.b, -self.r1, -self.ra, -self.rb, -self.rab)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        self._check(other)
        a, b = self.a, self.b
        u1, ua, ub, uab = self.r1, self.ra, self.rb, self.rab
        v1, va, vb, vab = other.r1, other.ra, other.rb, other.rab
        return Rad(
            a, b,
            u1 * v1 + a * ua * va + b * ub * vb + a * b * uab * vab,
            u1 * va + ua * v1 + b * (ub * vab + uab * vb),
            u1 * vb + ub * v1 + a * (ua * vab + uab * va),
            u1 * vab + uab * v1 + ua * vb + ub * va,
        )

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, k):
        k = as_fraction(k)
        return Rad(self.a, self.b, self.r1 * k, self.ra * k, self.rb * k, self.rab * k)

    def is_zero(self):
        return self.r1 == 0 and self.ra == 0 and self.rb == 0 and self.rab == 0

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Rad(self.a, self.b, other)
        if not isinstance(other, Rad):
            return NotImplemented
        return (self.a == other.a and self.b == other.b and self.r1 == other.r1
                and self.ra == other.ra and self.rb == other.rb and self.rab == other.rab)

    def __hash__(self):
        return hash((self.a, self.b, self.r1, self.ra, self.rb, self.rab))

    def components(self):
        return (self.r1, self.ra, self.rb, self.rab)

    def to_float(self):
        sa = math.sqrt(self.a)
        sb = math.sqrt(self.b)
        return (float(self.r1) + float(self.ra) * sa + float(self.rb) * sb
                + float(self.rab) * sa * sb)

    def __repr__(self):
        return (f"Rad[{self.a},{self.b}]({self.r1} + {self.ra}*sa"
                f" + {self.rb}*sb + {self.rab}*sab)")


class RadC:
    """Complex number re + i*im with Rad real and imaginary parts."""

    __slots__ = ("re", "im")

    def __init__(self, re, im=None):
        if not isinstance(re, Rad):
            raise TypeError("RadC requires Rad components")
        if im is None:
            im = Rad(re.a, re.b)
        self.re = re
        self.im = im

    def __add__(self, other):
        return RadC(self.re + other.re, self.im + other.im)

    def __sub__(self, other):
        return RadC(self.re - other.re, self.im - other.im)

    def __neg__(self):
        return RadC(-self.re, -self.im)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return RadC(self.re * other, self.im * other)
        return RadC(self.re * other.re - self.im * other.im,
                    self.re * other.im + self.im * other.re)

    __rmul__ = __mul__

    def conj(self):
        return RadC(self.re, -self.im)

    def is_zero(self):
        return self.re.is_zero() and self.im.is_zero()

    def __eq__(self, other):
        if not isinstance(other, RadC):
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def components(self):
        return self.re.components() + self.im.components()

    def to_complex(self):
        return self.re.to_float() + 1j * self.im.to_float()

    def __repr__(self):
        return f"RadC({self.re!r}, {self.im!r})"


class Quad:
    """p + q*sqrt(d) with exact rational p, q and a positive integer d.

    d = 1 folds into the rational part (sqrt(1) = 1), so Quad(p, q, 1)
    normalizes to p + q with no radical component.
    """

    __slots__ = ("p", "q", "d")

    def __init__(self, p=0, q=0, d=1):
        if not (isinstance(d, int) and d >= 1):
            raise ValueError("d must be a positive integer")
        p = as_fraction(p)
        q = as_fraction(q)
        if d == 1 and q != 0:
            p, q = p + q, Fraction(0)
        self.p = p
        self.q = q
        self.d = d

    def _check(self, other):
        if not isinstance(other, Quad):
            raise TypeError("Quad arithmetic requires Quad operands")
        if self.d != other.d:
            raise ValueError("mixed radical parameters")

    def __add__(self, other):
        self._check(other)
        return Quad(self.p + other.p, self.q + other.q, self.d)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return Quad(-self.p, -self.q, self.d)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Quad(self.p * other, self.q * other, self.d)
        self._check(other)
        return Quad(self.p * other.p + self.d * self.q * other.q,
                    self.p * other.q + self.q * other.p, self.d)

    __rmul__ = __mul__

    def is_zero(self):
        return self.p == 0 and self.q == 0

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Quad(other, 0, self.d)
        if not isinstance(other, Quad):
            return NotImplemented
        return self.d == other.d and self.p == other.p and self.q == other.q

    def __hash__(self):
        return hash((self.d, self.p, self.q))

    def components(self):
        return (self.p, self.q)

    def to_float(self):
        return float(self.p) + float(self.q) * math.sqrt(self.d)

    def __repr__(self):
        return f"Quad({self.p}, {self.q}, d={self.d})"


class QuadC:
    """Complex number re + i*im with Quad real and imaginary parts."""

    __slots__ = ("re", "im")

    def __init__(self, re, im=None):
        if not isinstance(re, Quad):
            raise TypeError("QuadC requires Quad components")
        if im is None:
            im = Quad(0, 0, re.d)
        self.re = re
        self.im = im

    def __add__(self, other):
        return QuadC(self.re + other.re, self.im + other.im)

    def __sub__(self, other):
        return QuadC(self.re - other.re, self.im - other.im)

    def __neg__(self):
        return QuadC(-self.re, -self.im)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return QuadC(self.re * other, self.im * other)
        return QuadC(self.re * other.re - self.im * other.im,
                     self.re * other.im + self.im * other.re)

    __rmul__ = __mul__

    def conj(self):
        return QuadC(self.re, -self.im)

    def is_zero(self):
        return self.re.is_zero() and self.im.is_zero()

    def __eq__(self, other):
        if not isinstance(other, QuadC):
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def components(self):
        return self.re.components() + self.im.components()

    def to_complex(self):
        return self.re.to_float() + 1j * self.im.to_float()

    def __repr__(self):
        return f"QuadC({self.re!r}, {self.im!r})"


def solve_rational(matrix, rhs):
    """Solve M x = rhs exactly over the rationals.

    matrix is a list of rows (each a list of Fractions/ints), possibly with
    more rows than columns; the columns must be linearly independent.
    Returns the unique solution as a list of Fractions, or None if the
    system is inconsistent.  Raises ValueError on dependent columns.
    """
    rows = [[as_fraction(x) for x in row] + [as_fraction(r)]
            for row, r in zip(matrix, rhs)]
    if len(rows) != len(rhs) or (rows and len({len(r) for r in rows}) != 1):
        raise ValueError("ragged system")
    ncols = len(rows[0]) - 1 if rows else 0
    pivot_rows = []
    r = 0
    for col in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][col] != 0), None)
        if pivot is None:
            raise ValueError("linearly dependent columns: no unique solution")
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = 1 / rows[r][col]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col] != 0:
                factor = rows[i][col]
                rows[i] = [x - factor * y for x, y in zip(rows[i], rows[r])]
        pivot_rows.append((r, col))
        r += 1
    for i in range(r, len(rows)):
        if rows[i][-1] != 0:
            return None
    return [rows[i][-1] for i, _ in pivot_rows]


def integer_solution(matrix, rhs):
    """Exact solve, accepted only if every coefficient is an integer.

    Returns a list of ints, or None (inconsistent or non-integral).
    """
    sol = solve_rational(matrix, rhs)
    if sol is None or any(f.denominator != 1 for f in sol):
        return None
    return [int(f) for f in sol]


def frac_gcd(values):
    """Positive generator of the Z-module of rationals generated by values.

    Returns Fraction(0) when all values vanish.
    """
    vals = [as_fraction(v) for v in values]
    vals = [v for v in vals if v != 0]
    if not vals:
        return Fraction(0)
    den = 1
    for v in vals:
        den = den * v.denominator // math.gcd(den, v.denominator)
    g = 0
    for v in vals:
        g = math.gcd(g, abs(int(v * den)))
    return Fraction(g, den)
