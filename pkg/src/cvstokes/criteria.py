"""Stokes-operator inseparability criterion across polarization and spatial DOFs.

For arms a and b and a Stokes pair (sigma, rho) the criterion value is

    [V(S_sigma^a + S_sigma^b) + V(S_rho^a - S_rho^b)] / (4 |alpha|)

with alpha = <dS_sigma^a dS_rho^a> the (unsymmetrized) covariance of the
two Stokes operators in one arm. Its imaginary part is half the mean of the
commutator, which sets the separable bound. A value below one certifies
entanglement between the arms.
"""

from dataclasses import dataclass
from itertools import product

import numpy as np

from .errors import AsymmetricNormalization, DegenerateNormalization, InvalidArgument
from .stokes import Arm, ArmSpec, Dof, complex_covariance, stokes, variance

PAIRS = ((1, 2), (1, 3), (2, 3))
DOF_PAIRINGS = ((Dof.POL, Dof.POL), (Dof.SPA, Dof.SPA), (Dof.POL, Dof.SPA), (Dof.SPA, Dof.POL))

ALPHA_FLOOR = 1e-12
ARM_TOL = 1e-9
VIOLATION_MARGIN = 1e-9


@dataclass(frozen=True)
class CriterionSpec:
    sigma: int
    rho: int
    arm_a: ArmSpec
    arm_b: ArmSpec

    def __post_init__(self):
        if (self.sigma, self.rho) not in PAIRS:
            raise InvalidArgument(
                f"(sigma, rho) must be one of {PAIRS}, got ({self.sigma}, {self.rho})"
            )
        if self.arm_a.arm is not Arm.A or self.arm_b.arm is not Arm.B:
            raise InvalidArgument("arm_a must address arm a and arm_b arm b")

    @classmethod
    def of(cls, sigma, rho, dof_a="pol", dof_b="pol"):
        return cls(sigma, rho, ArmSpec(Arm.A, dof_a), ArmSpec(Arm.B, dof_b))

    @property
    def dof_a(self):
        return self.arm_a.dof

    @property
    def dof_b(self):
        return self.arm_b.dof


@dataclass(frozen=True)
class CriterionResult:
    value: float
    alpha: complex
    alpha_b: complex
    components: tuple
    combination: CriterionSpec

    @property
    def violated(self):
        return bool(self.value < 1.0 - VIOLATION_MARGIN)


def duan_simon(state, spec):
    """Evaluate the criterion for one (sigma, rho) and DOF pairing.

    Raises:
        DegenerateNormalization: |alpha| < 1e-12.
        AsymmetricNormalization: the arms' alpha values differ by more than
            1e-9 (relative to their size when it exceeds one).
    """
    n = state.n_modes
    sa, ra = stokes(spec.arm_a, spec.sigma, n), stokes(spec.arm_a, spec.rho, n)
    sb, rb = stokes(spec.arm_b, spec.sigma, n), stokes(spec.arm_b, spec.rho, n)

    alpha_a = complex_covariance(sa, ra, state)
    alpha_b = complex_covariance(sb, rb, state)
    if abs(alpha_a) < ALPHA_FLOOR:
        raise DegenerateNormalization(abs(alpha_a))
    if abs(alpha_a - alpha_b) > ARM_TOL * max(1.0, abs(alpha_a)):
        raise AsymmetricNormalization(alpha_a, alpha_b)

    v_sum = variance(sa + sb, state)
    v_diff = variance(ra - rb, state)
    value = (v_sum + v_diff) / (4 * abs(alpha_a))
    return CriterionResult(value, alpha_a, alpha_b, (v_sum, v_diff), spec)


def bright_limit(r):
    """Criterion value for the (2, 3) pair with coherent beams much brighter."""
    if r < 0:
        raise InvalidArgument("r must be non-negative")
    return float(np.exp(-r) * np.cosh(r))


def equal_intensity_value(n, r):
    """Criterion value for the (1, 3) pair with coherent and squeezed beams equally bright."""
    if n <= 0:
        raise InvalidArgument("n must be positive")
    bracket = (
        12 * n
        + 2 * (1 + 2 * n) * np.cosh(2 * r)
        + np.cosh(4 * r)
        - 3
        - 4 * n * np.sinh(2 * r)
    )
    return float(bracket / (16 * n))


@dataclass(frozen=True)
class ScanRow:
    spec: CriterionSpec
    result: CriterionResult | None
    status: str = "ok"
    message: str = ""

    def as_record(self):
        res = self.result
        return {
            "sigma": self.spec.sigma,
            "rho": self.spec.rho,
            "dof_a": self.spec.dof_a.value,
            "dof_b": self.spec.dof_b.value,
            "value": res.value if res else float("nan"),
            "alpha": abs(res.alpha) if res else float("nan"),
            "violated": res.violated if res else False,
            "status": self.status,
        }


def combinations():
    """The 12 (sigma, rho) x DOF-pairing specs in fixed output order."""
    return [CriterionSpec.of(s, r, da, db) for (s, r), (da, db) in product(PAIRS, DOF_PAIRINGS)]


def scan_combinations(state, specs=None):
    """Evaluate every combination on one network state.

    Rows whose normalization is degenerate or asymmetric carry that status
    instead of a result, so one bad row does not hide the rest.
    """
    rows = []
    for spec in specs or combinations():
        try:
            rows.append(ScanRow(spec, duan_simon(state, spec)))
        except DegenerateNormalization as exc:
            rows.append(ScanRow(spec, None, "degenerate", str(exc)))
        except AsymmetricNormalization as exc:
            rows.append(ScanRow(spec, None, "asymmetric", str(exc)))
    return rows
