"""Solver and contraction certifier for stationary nonlinear
integro-differential systems.

The heavy lifting lives in the compiled extension; this package re-exports
the small functional surface: domain construction, the unitary transform
pair, the H2 norm, and the check/solve pipelines driven by the same JSON
configuration format the command line tool accepts.
"""

from ._core import (
    CertificateError,
    ConfigError,
    ConvergenceError,
    Domain,
    SolvabilityError,
    __version__,
    check,
    forward_transform,
    h2_norm,
    inverse_transform,
    manufactured_check,
    solve,
)

__all__ = [
    "CertificateError",
    "ConfigError",
    "ConvergenceError",
    "Domain",
    "SolvabilityError",
    "__version__",
    "check",
    "forward_transform",
    "h2_norm",
    "inverse_transform",
    "manufactured_check",
    "solve",
]
