"""Generalized numerical radius under unitarily invariant norms, with a
certified randomized verification suite for the associated inequalities."""

__version__ = "0.1.0"

from .enclosure import Enclosure, norm_enclosure
from .errors import (
    ConfigError,
    DimensionMismatch,
    InvalidSpec,
    IterationLimit,
    NonFinite,
    NotHermitian,
    NotPositiveDefinite,
    NotSquare,
    NumericalError,
    NumradError,
)
from .norms import FROBENIUS, OPERATOR, TRACE, NormSpec, matrix_norm, parse_norm
from .radius import (
    GridConfig,
    RadiusEstimate,
    classical_radius_lower_oracle,
    frobenius_closed_form,
    generalized_radii,
    generalized_radius,
)

__all__ = [
    "__version__",
    "ConfigError",
    "DimensionMismatch",
    "Enclosure",
    "FROBENIUS",
    "GridConfig",
    "InvalidSpec",
    "IterationLimit",
    "NonFinite",
    "NormSpec",
    "NotHermitian",
    "NotPositiveDefinite",
    "NotSquare",
    "NumericalError",
    "NumradError",
    "OPERATOR",
    "RadiusEstimate",
    "TRACE",
    "classical_radius_lower_oracle",
    "frobenius_closed_form",
    "generalized_radii",
    "generalized_radius",
    "matrix_norm",
    "norm_enclosure",
    "parse_norm",
]
