"""Gaussian-state simulator for Stokes-operator entanglement in squeezed cylindrical modes."""

from .criteria import (
    CriterionResult,
    CriterionSpec,
    bright_limit,
    duan_simon,
    equal_intensity_value,
    scan_combinations,
)
from .errors import (
    AsymmetricNormalization,
    DegenerateNormalization,
    InvalidArgument,
    TruncationError,
)
from .gaussian import GaussianState, prepare_bright_squeezed_cyl, vacuum
from .modes import AZIMUTHAL, RADIAL, cylindrical_coefficients, mode_index
from .networks import MeasurementNetwork, PipelineConfig, build_measurement_network
from .scenario import Scenario, load_scenario

__version__ = "0.1.0"
