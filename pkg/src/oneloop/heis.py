"""Heisenberg group on C^n x R, its exact lattices, and a unipotent witness.

The fiber symmetries of the deformed metric at fixed base point form a
Heisenberg group: points (v, t) in C^n x R multiply by adding the vectors
and twisting the center coordinate by half the symplectic area between
them.  The symplectic form is the imaginary part of an indefinite
Hermitian form of signature (1, n-1), so discrete subgroups are governed
by exact radical arithmetic rather than floating point.

This module provides:

* the Hermitian form and its symplectic imaginary part,
* the group law, exactly on rational/radical inputs,
* square-root-lattice constructions ``lattice_Ld`` (basis e_j, sqrt(d)*i*e_j)
  with decidable exact membership,
* the linear action of form-preserving matrices on the group, and
* an explicit unipotent form-preserving matrix g = 1 + A (A^2 = 0) that
  maps the lattice to itself exactly, witnessing that the lattice's
  stabilizer contains non-semisimple elements.

Sign convention: the Hermitian form is antilinear in its *first* slot,
h(v, w) = sum_j eps_j * conj(v_j) * w_j with eps = (+1, -1, ..., -1), and
the symplectic form omega = Im(h) is oriented so that omega(e_1, i*e_1) > 0.
All signed omega tables in this package are stated relative to this choice;
only up-to-sign statements are convention-independent.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .exact import QI, Quad, QuadC, Rad, RadC, integer_solution

__all__ = [
    "HermForm",
    "HeisPoint",
    "HeisLatticePoint",
    "LatticeDescription",
    "heis_mul",
    "heis_identity",
    "heis_inverse",
    "lattice_Ld",
    "lattice_contains",
    "lattice_coordinates",
    "su_action",
    "unipotent_witness",
]


# ---------------------------------------------------------------------------
# generic helpers over the mixed scalar kinds (complex floats, QI, QuadC, RadC)
# ---------------------------------------------------------------------------

_EXACT_COMPLEX = (QI, QuadC, RadC)
_EXACT_REAL = (int, Fraction, Quad, Rad)


def _conj(z):
    if isinstance(z, _EXACT_COMPLEX):
        return z.conj()
    return complex(z).conjugate()


def _im_part(z):
    if isinstance(z, _EXACT_COMPLEX):
        return z.im
    return complex(z).imag


def _real_to_float(t):
    if isinstance(t, (Quad, Rad)):
        return t.to_float()
    return float(t)


def _lift_real(value, template):
    """Coerce an int/Fraction into the exact real ring of ``template``."""
    if isinstance(value, (int, Fraction)):
        if isinstance(template, Quad):
            return Quad(value, 0, template.d)
        if isinstance(template, Rad):
            return Rad(template.a, template.b, value)
    return value


def _scalar_sum(*values):
    """Add real scalars of possibly mixed kinds.

    Exact kinds (int/Fraction/Quad/Rad) combine exactly, lifting rationals
    into whichever radical ring appears; any float degrades the sum to float.
    """
    if any(isinstance(v, float) for v in values):
        return sum(_real_to_float(v) for v in values)
    template = next((v for v in values if isinstance(v, (Quad, Rad))), None)
    if template is None:
        return sum(values, Fraction(0))
    total = _lift_real(0, template)
    for v in values:
        total = total + _lift_real(v, template)
    return total


def _half(value):
    if isinstance(value, float):
        return 0.5 * value
    if isinstance(value, (int, Fraction)):
        return Fraction(value, 2)
    return value * Fraction(1, 2)


class HermForm:
    """Indefinite Hermitian form of signature (1, n-1) on C^n.

    h(v, w) = conj(v_1) w_1 - sum_{j>=2} conj(v_j) w_j, antilinear in the
    first slot, and omega = Im(h).  Works uniformly on float-complex and
    exact (QI / QuadC / RadC) vectors; on exact vectors both h and omega
    are exact.
    """

    def __init__(self, n: int):
        if n < 1:
            raise ValueError("the form needs at least one complex dimension")
        self.n = n
        self.signs: Tuple[int, ...] = (1,) + (-1,) * (n - 1)

    def h(self, v: Sequence, w: Sequence):
        if len(v) != self.n or len(w) != self.n:
            raise ValueError("vector length does not match the form dimension")
        total = None
        for sign, vj, wj in zip(self.signs, v, w):
            term = _conj(vj) * wj
            if sign < 0:
                term = -term
            total = term if total is None else total + term
        return total

    def omega(self, v: Sequence, w: Sequence):
        return _im_part(self.h(v, w))


@dataclass(frozen=True)
class HeisPoint:
    """Group element (v, t) with v in C^n and t a real center coordinate.

    Entries of ``v`` may be float complex or exact (QI / QuadC / RadC);
    ``t`` may be float, int, Fraction, Quad, or Rad.  Exact inputs keep the
    group law exact.
    """

    v: Tuple
    t: object

    def __post_init__(self):
        object.__setattr__(self, "v", tuple(self.v))

    @property
    def n(self) -> int:
        return len(self.v)


def heis_identity(n: int) -> HeisPoint:
    """The unit element (0, 0) with rational-exact zero entries."""
    return HeisPoint(tuple(QI(0) for _ in range(n)), Fraction(0))


def heis_mul(x: HeisPoint, y: HeisPoint) -> HeisPoint:
    """Group law (v, t)(v', t') = (v + v', t + t' + omega(v, v')/2)."""
    if x.n != y.n:
        raise ValueError("points live on groups of different dimension")
    form = HermForm(x.n)
    twist = _half(form.omega(x.v, y.v))
    vsum = tuple(a + b for a, b in zip(x.v, y.v))
    return HeisPoint(vsum, _scalar_sum(x.t, y.t, twist))


def heis_inverse(p: HeisPoint) -> HeisPoint:
    """Inverse (-v, -t); the symplectic twist vanishes since omega(v, v) = 0."""
    return HeisPoint(tuple(-z for z in p.v), -p.t)


# ---------------------------------------------------------------------------
# lattices
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LatticeDescription:
    """A Z-lattice Lambda in C^n together with the center scale it generates.

    ``basis`` is a tuple of C^n vectors with exact entries (all QuadC with a
    common d, or all RadC with common (a, b)).  ``r`` is the exact positive
    generator of the value group omega(Lambda x Lambda) = r * Z; the group
    generated by (basis, 0) inside the Heisenberg group meets the center in
    (r/2) * Z.  ``labels`` names the basis vectors for tables and JSON.
    """

    n: int
    basis: Tuple[Tuple, ...]
    r: object
    labels: Tuple[str, ...]

    def __post_init__(self):
        if len(self.labels) != len(self.basis):
            raise ValueError("one label per basis vector required")
        for vec in self.basis:
            if len(vec) != self.n:
                raise ValueError("basis vector length does not match n")

    @property
    def rank(self) -> int:
        return len(self.basis)

    def center_generator(self):
        """Exact generator r/2 of the center intersection (r/2) * Z."""
        return self.r * Fraction(1, 2)

    def omega_table(self) -> List[List[object]]:
        """Exact matrix omega(B_i, B_j) over the lattice basis."""
        form = HermForm(self.n)
        return [[form.omega(bi, bj) for bj in self.basis] for bi in self.basis]

    def serialize(self) -> str:
        """JSON with exact coefficient arrays per complex component.

        Each complex entry contributes ``re`` and ``im`` coefficient arrays
        over the lattice's radical basis: ``[p, q]`` meaning p + q*sqrt(d)
        for square-root lattices, and four coefficients over
        {1, sqrt(a), sqrt(b), sqrt(ab)} for quaternionic ones.  Fractions
        are rendered as exact strings.
        """
        def coeffs(real_part):
            return [str(c) for c in real_part.components()]

        def entry(z):
            return {"re": coeffs(z.re), "im": coeffs(z.im)}

        sample = self.basis[0][0]
        if isinstance(sample, QuadC):
            radical = {"kind": "sqrt_d", "d": sample.re.d}
        else:
            radical = {"kind": "sqrt_ab", "a": sample.re.a, "b": sample.re.b}
        payload = {
            "n": self.n,
            "radical": radical,
            "labels": list(self.labels),
            "basis": [[entry(z) for z in vec] for vec in self.basis],
            "r": coeffs(self.r),
        }
        return json.dumps(payload, sort_keys=True)


@dataclass(frozen=True)
class HeisLatticePoint:
    """Integer coordinates over a lattice basis plus an integer center slot.

    ``coords`` are Z-coefficients over ``LatticeDescription.basis`` and
    ``center`` counts multiples of r/2.  ``embed`` reconstructs the exact
    group element.
    """

    coords: Tuple[int, ...]
    center: int

    def __post_init__(self):
        if not all(isinstance(c, int) for c in self.coords):
            raise ValueError("lattice coordinates must be integers")
        if not isinstance(self.center, int):
            raise ValueError("center coordinate must be an integer")
        object.__setattr__(self, "coords", tuple(self.coords))

    def embed(self, lattice: LatticeDescription) -> HeisPoint:
        if len(self.coords) != lattice.rank:
            raise ValueError("coordinate count does not match the basis")
        vec = [z * 0 for z in lattice.basis[0]]
        for c, bvec in zip(self.coords, lattice.basis):
            vec = [acc + z * c for acc, z in zip(vec, bvec)]
        return HeisPoint(tuple(vec), lattice.r * Fraction(self.center, 2))


def _validate_d(d: int) -> None:
    if not isinstance(d, int) or d < 1:
        raise ValueError("d must be a positive integer")
    if d % 4 == 3:
        raise ValueError(
            f"d = {d} has d % 4 == 3; the construction uses the integer "
            "ring Z[i*sqrt(d)], which requires d % 4 in (1, 2)"
        )
    p = 2
    m = d
    while p * p <= m:
        if m % (p * p) == 0:
            raise ValueError(f"d = {d} is not squarefree (divisible by {p}**2)")
        if m % p == 0:
            m //= p
        p += 1


def lattice_Ld(n: int, d: int) -> LatticeDescription:
    """Square-root lattice spanned by e_j and sqrt(d)*i*e_j in C^n.

    Requires squarefree d with d % 4 in (1, 2), so that the coefficient ring
    Z[i*sqrt(d)] is the full integer ring of its fraction field.  The lattice
    is stable under multiplication by i*sqrt(d) and under componentwise
    conjugation, its omega values lie in sqrt(d) * Z with
    omega(e_j, sqrt(d)*i*e_j) = +-sqrt(d), and it meets the center of the
    Heisenberg group in (sqrt(d)/2) * Z.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    _validate_d(d)
    zero = QuadC(Quad(0, 0, d))
    one = QuadC(Quad(1, 0, d))
    i_root = QuadC(Quad(0, 0, d), Quad(0, 1, d))

    def unit_vector(j, value):
        return tuple(value if k == j else zero for k in range(n))

    basis = tuple(unit_vector(j, one) for j in range(n)) + tuple(
        unit_vector(j, i_root) for j in range(n)
    )
    labels = tuple(f"e{j + 1}" for j in range(n)) + tuple(
        f"sqrt({d})*f{j + 1}" for j in range(n)
    )
    return LatticeDescription(n=n, basis=basis, r=Quad(0, 1, d), labels=labels)


def _lift_complex(entry, template):
    """Coerce an exact complex scalar into the ring of ``template``.

    Rational-only values (int, Fraction, QI) lift into QuadC/RadC; matching
    radical rings pass through; floats and mismatched radicals are rejected
    so that lattice decisions stay exact.
    """
    if isinstance(template, QuadC):
        if isinstance(entry, QuadC):
            if entry.re.d != template.re.d:
                raise ValueError("mixed radical parameters in lattice input")
            return entry
        d = template.re.d
        if isinstance(entry, QI):
            return QuadC(Quad(entry.re, 0, d), Quad(entry.im, 0, d))
        if isinstance(entry, (int, Fraction)):
            return QuadC(Quad(entry, 0, d))
    if isinstance(template, RadC):
        if isinstance(entry, RadC):
            if (entry.re.a, entry.re.b) != (template.re.a, template.re.b):
                raise ValueError("mixed radical parameters in lattice input")
            return entry
        a, b = template.re.a, template.re.b
        if isinstance(entry, QI):
            return RadC(Rad(a, b, entry.re), Rad(a, b, entry.im))
        if isinstance(entry, (int, Fraction)):
            return RadC(Rad(a, b, entry))
    raise ValueError(
        "exact coefficients over the lattice's radical are required; "
        f"got {type(entry).__name__}"
    )


def _lift_center(t, r):
    if isinstance(r, Quad):
        if isinstance(t, Quad):
            if t.d != r.d:
                raise ValueError("mixed radical parameters in lattice input")
            return t
        if isinstance(t, (int, Fraction)):
            return Quad(t, 0, r.d)
    if isinstance(r, Rad):
        if isinstance(t, Rad):
            if (t.a, t.b) != (r.a, r.b):
                raise ValueError("mixed radical parameters in lattice input")
            return t
        if isinstance(t, (int, Fraction)):
            return Rad(r.a, r.b, t)
    raise ValueError(
        "exact center coordinate over the lattice's radical is required; "
        f"got {type(t).__name__}"
    )


def lattice_coordinates(
    lattice: LatticeDescription, p: HeisPoint
) -> Optional[HeisLatticePoint]:
    """Exact lattice coordinates of p, or None when p is not in the lattice.

    The vector part is solved as an integer linear system over the rational
    coordinates of the radical ring; the center part must be an integer
    multiple of r/2.  Floating-point input is rejected.
    """
    if p.n != lattice.n:
        raise ValueError("point dimension does not match the lattice")
    template = lattice.basis[0][0]
    lifted = [_lift_complex(z, template) for z in p.v]
    t = _lift_center(p.t, lattice.r)

    matrix = []
    rhs = []
    ncomp = len(template.components())
    for j in range(lattice.n):
        for comp in range(ncomp):
            matrix.append([vec[j].components()[comp] for vec in lattice.basis])
            rhs.append(lifted[j].components()[comp])
    coords = integer_solution(matrix, rhs)
    if coords is None:
        return None

    double_t = t * 2
    center = integer_solution(
        [[rc] for rc in lattice.r.components()], list(double_t.components())
    )
    if center is None:
        return None
    return HeisLatticePoint(tuple(coords), center[0])


def lattice_contains(lattice: LatticeDescription, p: HeisPoint) -> bool:
    """Exact membership: is (v, t) an integer point of the lattice group?"""
    return lattice_coordinates(lattice, p) is not None


# ---------------------------------------------------------------------------
# group action of form-preserving matrices
# ---------------------------------------------------------------------------


def _ring_zero(template):
    if isinstance(template, QuadC):
        return QuadC(Quad(0, 0, template.re.d))
    if isinstance(template, RadC):
        return RadC(Rad(template.re.a, template.re.b))
    return QI(0)


def _ring_one(template):
    if isinstance(template, QuadC):
        return QuadC(Quad(1, 0, template.re.d))
    if isinstance(template, RadC):
        return RadC(Rad(template.re.a, template.re.b, 1))
    return QI(1)


def _is_exact_matrix(g) -> bool:
    return (
        isinstance(g, (tuple, list))
        and len(g) > 0
        and isinstance(g[0], (tuple, list))
        and isinstance(g[0][0], _EXACT_COMPLEX)
    )


def _check_exact_form_preserving(g, n: int) -> None:
    form = HermForm(n)
    template = g[0][0]
    zero = _ring_zero(template)
    one = _ring_one(template)
    for j in range(n):
        for k in range(n):
            total = zero
            for m in range(n):
                term = g[m][j].conj() * g[m][k]
                total = total + (-term if form.signs[m] < 0 else term)
            expected = zero if j != k else (one if form.signs[j] > 0 else -one)
            if total != expected:
                raise ValueError(
                    "matrix does not preserve the Hermitian form "
                    f"(entry ({j}, {k}) of the conjugated form is off)"
                )


def su_action(g, p: HeisPoint) -> HeisPoint:
    """Linear action (g, (v, t)) -> (g v, t) of a form-preserving matrix.

    ``g`` is either an exact matrix (nested tuples/lists of QI / QuadC /
    RadC entries) or a float/complex array.  Preservation of the Hermitian
    form is verified exactly in the first case and to 1e-9 in the second;
    a matrix that fails the check is rejected.  Because g preserves h, it
    preserves omega, so the action is a group automorphism fixing the
    center.
    """
    n = p.n
    if _is_exact_matrix(g):
        if len(g) != n or any(len(row) != n for row in g):
            raise ValueError("matrix size does not match the point dimension")
        _check_exact_form_preserving(g, n)
        template = g[0][0]
        lifted = [_lift_complex(z, template) for z in p.v]
        gv = []
        for j in range(n):
            acc = _ring_zero(template)
            for k in range(n):
                acc = acc + g[j][k] * lifted[k]
            gv.append(acc)
        return HeisPoint(tuple(gv), p.t)

    G = np.asarray(g, dtype=complex)
    if G.shape != (n, n):
        raise ValueError("matrix size does not match the point dimension")
    signs = np.array((1.0,) + (-1.0,) * (n - 1), dtype=complex)
    H = np.diag(signs)
    deviation = np.max(np.abs(G.conj().T @ H @ G - H))
    if deviation > 1e-9:
        raise ValueError(
            "matrix does not preserve the Hermitian form "
            f"(max deviation {deviation:.3e})"
        )
    vec = np.array([complex(z) if not isinstance(z, _EXACT_COMPLEX) else z.to_complex()
                    for z in p.v])
    gv = G @ vec
    return HeisPoint(tuple(complex(z) for z in gv), p.t)


# ---------------------------------------------------------------------------
# unipotent witness
# ---------------------------------------------------------------------------


def unipotent_witness(n: int, d: int):
    """A nonzero nilpotent A (A^2 = 0) with g = 1 + A preserving lattice_Ld.

    Built from the isotropic vector v = e_1 + e_2 and w = i*sqrt(d) * v as
    A(x) = h(v, x) w - h(w, x) v, which is complex-linear (h is antilinear
    in the first slot), skew-Hermitian for h, and kills both v and w; its
    image lies in the span of v, so A^2 = 0 and exp(A) = 1 + A exactly.
    g and its inverse 1 - A map every lattice basis vector to an integer
    lattice combination, so g stabilizes the lattice while being unipotent
    and different from the identity.

    Returns (A, g) as n x n nested tuples of exact QuadC entries.
    """
    if n < 2:
        raise ValueError("a nontrivial isotropic vector needs n >= 2")
    _validate_d(d)
    zero = QuadC(Quad(0, 0, d))
    one = QuadC(Quad(1, 0, d))
    i_root = QuadC(Quad(0, 0, d), Quad(0, 1, d))
    v = tuple(one if j < 2 else zero for j in range(n))
    w = tuple(i_root * vj for vj in v)
    signs = HermForm(n).signs
    A = tuple(
        tuple(
            (w[j] * v[k].conj() - v[j] * w[k].conj()) * signs[k]
            for k in range(n)
        )
        for j in range(n)
    )
    g = tuple(
        tuple(A[j][k] + (one if j == k else zero) for k in range(n))
        for j in range(n)
    )
    return A, g
