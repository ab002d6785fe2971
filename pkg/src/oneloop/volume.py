"""Fiber volume density, closed-form slab/tail volumes, and asymptotics.

Integrating the metric volume form over a fundamental domain in a fixed
rho-level set leaves a one-dimensional integral in rho: the density
factorizes as rho^-(n+2) * P(c/rho) times an invariant fiber density,
where P(x) = (1+x)^(n-1) * (1+2x) is a degree-n polynomial with positive
integer coefficients and constant term 1.  This module expands P exactly,
evaluates the density, integrates it in closed form over slabs
[rho1, rho0] and tails [rho0, infinity), cross-checks the closed forms by
adaptive quadrature, and exposes the asymptotic constants:

* the tail coefficient V_D / (n+1): rho0^(n+1) * tail -> V_D/(n+1);
* the near-origin slab coefficient 2 c^n V_D / (2n+1): for c > 0,
  rho1^(2n+1) * slab -> that value as rho1 -> 0 (the x^n coefficient of P
  is 2);
* the claimed near-origin constant ``near_zero_constant`` =
  2 c^n V_D / ((2n+1)(n+1)), kept as stated even though it is smaller than
  the measured limit by exactly the factor n+1 -- the characterization
  tests document the discrepancy rather than hide it.

The fundamental-domain volume V_D is a caller-supplied positive scalar;
computing it from a lattice is out of scope.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Tuple

from scipy import integrate

from .geometry import ModelParams

__all__ = [
    "VolumePolynomial",
    "poly_P",
    "density",
    "slab_closed",
    "tail_closed",
    "slab_quadrature",
    "tail_quadrature",
    "near_zero_constant",
    "slab_leading_coefficient",
    "upper_bound_constant",
    "bounds_check",
    "volume_table_csv",
]


@dataclass(frozen=True)
class VolumePolynomial:
    """Exact integer coefficients p_0..p_n of P(x) = (1+x)^(n-1) (1+2x).

    Always monic in the sense p_0 = 1, with all coefficients positive and
    degree exactly n.
    """

    n: int
    coefficients: Tuple[int, ...]

    def __post_init__(self):
        if len(self.coefficients) != self.n + 1:
            raise ValueError("a degree-n polynomial needs n + 1 coefficients")
        if self.coefficients[0] != 1:
            raise ValueError("the constant term must be 1")
        if any(c <= 0 for c in self.coefficients):
            raise ValueError("all coefficients must be positive")
        object.__setattr__(self, "coefficients", tuple(self.coefficients))

    @property
    def degree(self) -> int:
        return self.n

    def eval_float(self, x: float) -> float:
        total = 0.0
        for coeff in reversed(self.coefficients):
            total = total * x + coeff
        return total

    def eval_exact(self, x) -> Fraction:
        x = Fraction(x)
        total = Fraction(0)
        for coeff in reversed(self.coefficients):
            total = total * x + coeff
        return total


def poly_P(n: int) -> VolumePolynomial:
    """Exact binomial expansion of (1+x)^(n-1) * (1+2x) for n >= 1.

    The coefficient of x^k is C(n-1, k) + 2*C(n-1, k-1).
    """
    if not isinstance(n, int) or n < 1:
        raise ValueError("n must be a positive integer")
    coeffs = tuple(
        math.comb(n - 1, k) + 2 * (math.comb(n - 1, k - 1) if k >= 1 else 0)
        for k in range(n + 1)
    )
    return VolumePolynomial(n=n, coefficients=coeffs)


def density(rho: float, params: ModelParams) -> float:
    """The rho-dependent volume density factor rho^-(n+2) * P(c/rho).

    The full density sqrt(det g) is this factor times the rho-independent
    invariant fiber density, so slab volumes are V_D times the integral of
    this function.
    """
    if rho <= 0:
        raise ValueError(f"rho must be positive, got {rho}")
    poly = poly_P(params.n)
    return rho ** (-(params.n + 2)) * poly.eval_float(params.c / rho)


def _check_vd(V_D: float) -> None:
    if V_D <= 0:
        raise ValueError("the fundamental-domain volume V_D must be positive")


def tail_closed(rho0: float, params: ModelParams, V_D: float) -> float:
    """Exact antiderivative of the density over [rho0, infinity).

    Equals V_D * sum_k p_k c^k / ((n+1+k) * rho0^(n+1+k)); the k = 0 term
    V_D / ((n+1) rho0^(n+1)) dominates as rho0 grows.
    """
    if rho0 <= 0:
        raise ValueError(f"rho0 must be positive, got {rho0}")
    _check_vd(V_D)
    n, c = params.n, params.c
    poly = poly_P(n)
    total = 0.0
    for k, p_k in enumerate(poly.coefficients):
        total += p_k * c**k / ((n + 1 + k) * rho0 ** (n + 1 + k))
    return V_D * total


def slab_closed(rho1: float, rho0: float, params: ModelParams, V_D: float) -> float:
    """Exact antiderivative of the density over [rho1, rho0], 0 < rho1 < rho0."""
    if not 0 < rho1 < rho0:
        raise ValueError(
            f"slab bounds must satisfy 0 < rho1 < rho0, got [{rho1}, {rho0}]"
        )
    _check_vd(V_D)
    n, c = params.n, params.c
    poly = poly_P(n)
    total = 0.0
    for k, p_k in enumerate(poly.coefficients):
        power = n + 1 + k
        total += p_k * c**k / power * (rho1 ** (-power) - rho0 ** (-power))
    return V_D * total


def slab_quadrature(
    rho1: float, rho0: float, params: ModelParams, V_D: float
) -> float:
    """Adaptive-quadrature oracle for slab_closed (relative target 1e-10)."""
    if not 0 < rho1 < rho0:
        raise ValueError(
            f"slab bounds must satisfy 0 < rho1 < rho0, got [{rho1}, {rho0}]"
        )
    _check_vd(V_D)
    value, _ = integrate.quad(
        lambda rho: density(rho, params), rho1, rho0,
        epsabs=0.0, epsrel=1e-10, limit=200,
    )
    return V_D * value


def tail_quadrature(rho0: float, params: ModelParams, V_D: float) -> float:
    """Adaptive-quadrature oracle for tail_closed on [rho0, infinity)."""
    if rho0 <= 0:
        raise ValueError(f"rho0 must be positive, got {rho0}")
    _check_vd(V_D)
    value, _ = integrate.quad(
        lambda rho: density(rho, params), rho0, math.inf,
        epsabs=0.0, epsrel=1e-10, limit=200,
    )
    return V_D * value


def near_zero_constant(params: ModelParams, V_D: float) -> float:
    """The claimed near-origin constant 2 c^n V_D / ((2n+1)(n+1)), c > 0.

    Stated as the limit of rho1^(2n+1) * slab volume for rho1 -> 0.  The
    measured limit is ``slab_leading_coefficient``, which is larger by
    exactly the factor n+1; this function keeps the claimed value so the
    discrepancy stays visible in the verification suites.  c = 0 is a
    different asymptotic regime (the slab then grows like rho1^-(n+1)) and
    is rejected.
    """
    _check_vd(V_D)
    n, c = params.n, params.c
    if c == 0:
        raise ValueError(
            "the near-origin constant applies to c > 0 only; for c = 0 the "
            "slab volume grows like V_D * rho1**-(n+1) / (n+1) instead"
        )
    return 2 * c**n * V_D / ((2 * n + 1) * (n + 1))


def slab_leading_coefficient(params: ModelParams, V_D: float) -> float:
    """The measured near-origin limit of rho1^(2n+1) * slab volume, c > 0.

    The density's strongest pole at rho = 0 comes from the top coefficient
    p_n = 2 of P, giving 2 c^n / rho^(2n+2); integrating yields the limit
    2 c^n V_D / (2n+1).
    """
    _check_vd(V_D)
    n, c = params.n, params.c
    if c == 0:
        raise ValueError(
            "the near-origin coefficient applies to c > 0 only; for c = 0 "
            "the slab volume grows like V_D * rho1**-(n+1) / (n+1) instead"
        )
    return 2 * c**n * V_D / (2 * n + 1)


def upper_bound_constant(rho_floor: float, params: ModelParams) -> float:
    """C(rho_floor) = (1 + c/rho_floor)^(n-1) * (1 + 2c/rho_floor).

    For rho >= rho_floor the density is at most C(rho_floor) * rho^-(n+2);
    this is P evaluated at c/rho_floor.
    """
    if rho_floor <= 0:
        raise ValueError(f"rho_floor must be positive, got {rho_floor}")
    return poly_P(params.n).eval_float(params.c / rho_floor)


_BOUND_SLACK = 1e-12


def bounds_check(
    rho: float, rho_floor: float, params: ModelParams
) -> Tuple[bool, bool]:
    """Verify the two density bounds at rho, relative to the floor rho_floor.

    Lower: density * rho^(n+2) >= 1 for every rho > 0 (P has constant term
    1 and positive coefficients).  Upper: density * rho^(n+2) <=
    C(rho_floor) for rho >= rho_floor (P is increasing).  Returns the pair
    (lower_ok, upper_ok), each decided with relative slack 1e-12 for
    floating-point round-off.  rho < rho_floor is rejected because the
    upper bound is only claimed above the floor.
    """
    if rho <= 0:
        raise ValueError(f"rho must be positive, got {rho}")
    if rho < rho_floor:
        raise ValueError(
            f"the upper bound applies for rho >= rho_floor, got rho = {rho} "
            f"< rho_floor = {rho_floor}"
        )
    normalized = density(rho, params) * rho ** (params.n + 2)
    ceiling = upper_bound_constant(rho_floor, params)
    lower_ok = normalized >= 1.0 - _BOUND_SLACK
    upper_ok = normalized <= ceiling * (1.0 + _BOUND_SLACK)
    return lower_ok, upper_ok


def volume_table_csv(
    rho_grid: Sequence[float], params: ModelParams, V_D: float
) -> str:
    """CSV table over the rho grid, one row per value.

    Columns: rho, density, closed_tail, quadrature_tail,
    ratio_to_asymptote, where the last column divides the closed tail by
    its leading asymptote V_D / ((n+1) rho^(n+1)) and tends to 1 for large
    rho.
    """
    _check_vd(V_D)
    n = params.n
    lines = ["rho,density,closed_tail,quadrature_tail,ratio_to_asymptote"]
    for rho in rho_grid:
        closed = tail_closed(rho, params, V_D)
        quad = tail_quadrature(rho, params, V_D)
        asymptote = V_D / ((n + 1) * rho ** (n + 1))
        lines.append(
            f"{rho:.12g},{density(rho, params):.12g},{closed:.12g},"
            f"{quad:.12g},{closed / asymptote:.12g}"
        )
    return "\n".join(lines) + "\n"
