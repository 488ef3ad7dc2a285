"""Complete Spatial Randomness tests from two-dimensional spacings."""
from ._accel import BACKEND
from .errors import (
    ContractError,
    DegenerateSpacingError,
    DegenerateStatisticError,
    DomainError,
    EmptyPatternError,
    InfeasibleError,
    NumericalConsistencyError,
    NumericalDomainError,
    ParseError,
    SpacingsError,
    UnknownKernelError,
)
from .gfun import GFunction, builtin, evaluate
from .moments import MomentSet, compute_moments, mc_oracle
from .pattern import PointPattern, Window, load_pattern, rescale_to_unit
from .spacings import SpacingsGrid, axis_spacings, compute_grid, scaled_spacings
from .stat import TestResult, asymptotic_test, v2_statistic

__version__ = "0.1.0"
