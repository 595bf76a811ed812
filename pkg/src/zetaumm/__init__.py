"""Numerical toolkit for the unitary-matrix-model construction over the
Riemann zeta function's local factors: p-adic wavelets and Vladimirov
operators, resolvents and contour-extracted model coefficients,
renormalized critical-line data, trace-formula checks, and random-matrix
statistics."""

__version__ = "0.1.0"

from . import ensemble, output, padics, resolvent, traceform, wavelets, zeta

__all__ = [
    "__version__",
    "ensemble",
    "output",
    "padics",
    "resolvent",
    "traceform",
    "wavelets",
    "zeta",
]
