"""Signed-sum toolkit: exact enumeration over sign assignments of vector
configurations, extremal constructions, constructive sign-balancing
algorithms, and adversarial search over unit-vector configurations."""

from .core import (
    ENUMERATION_CAP,
    CoefficientVector,
    EnumerationReport,
    SignAssignment,
    VectorConfig,
    enumerate_signed_sums,
    min_signed_norm,
    signed_sum,
    validate_config,
)
from .precision import PrecisionPolicy

__version__ = "0.1.0"

__all__ = [
    "ENUMERATION_CAP",
    "CoefficientVector",
    "EnumerationReport",
    "PrecisionPolicy",
    "SignAssignment",
    "VectorConfig",
    "enumerate_signed_sums",
    "min_signed_norm",
    "signed_sum",
    "validate_config",
    "__version__",
]
