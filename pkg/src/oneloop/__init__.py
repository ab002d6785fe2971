"""Verification toolkit for one-loop deformed c-map quaternionic Kahler metrics.

Modules:
    exact      exact arithmetic (Gaussian rationals, polynomials, radical rings)
    geometry   the metric family, Gram matrices, determinants, FD curvature
    fields     polynomial Killing fields, brackets, flows, stabilizer
    liealg     exact matrix model of the isometry algebra and center lattices
    heis       Heisenberg groups, arithmetic lattices, unipotent witness
    quatarith  quaternion algebras over Q and their norm-one lattices
    volume     fiber volume density, closed-form and quadrature volumes
    cli        batch driver with deterministic machine-readable reports
"""

__version__ = "0.1.0"
