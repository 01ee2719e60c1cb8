"""Experimental loss chain and the Stokes measurement networks.

The squeezing chain treats the source as an ideal amplitude-squeezed
Gaussian mode at a given dB level and degrades it by pure-loss channels.
The measurement networks split a cylindrical state by polarization into two
arms, inject coherent reference beams and route modes into the four-slot
layout ``[a_coh, a_sq, b_coh, b_sq]`` read by :mod:`cvstokes.stokes`.
"""

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from . import gaussian as g
from .errors import InvalidArgument
from .modes import Polarization, family, mode_index
from .ops import Displace, PhaseShift, Squeeze, TwoModeSqueeze
from .stokes import Arm, ArmSpec, Dof

MEASURED_SOURCE_DB = -4.3
MEASURED_OUTPUT_DB = -1.2
CONVERSION_ETA = 0.7
REFLECTION_ETA = 0.7


def db_to_variance(db):
    """Quadrature variance relative to shot noise for a level in dB."""
    return 10.0 ** (db / 10.0)


def variance_to_db(v):
    if v <= 0:
        raise InvalidArgument(f"variance must be positive, got {v}")
    return 10.0 * np.log10(v)


@dataclass(frozen=True)
class PipelineConfig:
    input_squeezing_db: float = MEASURED_SOURCE_DB
    eta_conversion: float = CONVERSION_ETA
    eta_reflection: float = REFLECTION_ETA
    extra_eta: float = 1.0
    measured_output_db: float | None = None

    def __post_init__(self):
        for name in ("eta_conversion", "eta_reflection", "extra_eta"):
            eta = getattr(self, name)
            if not 0.0 <= eta <= 1.0:
                raise InvalidArgument(f"{name} must lie in [0, 1], got {eta}")

    @property
    def eta_total(self):
        return self.eta_conversion * self.eta_reflection * self.extra_eta


@dataclass(frozen=True)
class PipelineResult:
    config: PipelineConfig
    predicted_db: float
    anti_squeezing_in_db: float
    anti_squeezing_out_db: float
    implied_eta: float | None

    @property
    def gap_db(self):
        """Predicted minus measured output level, when a measurement is given."""
        if self.config.measured_output_db is None:
            return None
        return self.predicted_db - self.config.measured_output_db

    def summary(self):
        cfg = self.config
        lines = [
            f"input squeezing      {cfg.input_squeezing_db:.4f} dB",
            f"eta_total            {cfg.eta_total:.6f}",
            f"predicted output     {self.predicted_db:.4f} dB",
            f"anti-squeezing       {self.anti_squeezing_in_db:.4f} dB -> "
            f"{self.anti_squeezing_out_db:.4f} dB",
        ]
        if cfg.measured_output_db is not None:
            lines += [
                f"measured output      {cfg.measured_output_db:.4f} dB",
                f"gap (pred - meas)    {self.gap_db:+.4f} dB",
                f"implied_eta          {self.implied_eta:.5f}",
                "forward prediction and measurement are reported side by side; "
                "the loss figures are approximate and are not fitted",
            ]
        return "\n".join(lines)


def _squeezed_source(db):
    """Minimum-uncertainty single mode with Var(X) at the given dB level."""
    r = -0.5 * np.log(db_to_variance(db))
    return g.squeeze_single(g.vacuum(1), 0, r)


def run_squeezing_pipeline(cfg):
    """Propagate the source through the converter and reflection losses.

    Returns:
        PipelineResult: predicted amplitude-noise level (dB) and the matching
        anti-squeezing levels. ``implied_eta`` is filled in when the config
        carries a measured output level.
    """
    state = _squeezed_source(cfg.input_squeezing_db)
    anti_in = variance_to_db(state.cov[1, 1])
    for eta in (cfg.eta_conversion, cfg.eta_reflection, cfg.extra_eta):
        state = g.loss(state, 0, eta)
    implied = None
    if cfg.measured_output_db is not None:
        implied = implied_efficiency(cfg.input_squeezing_db, cfg.measured_output_db)
    return PipelineResult(
        cfg,
        variance_to_db(state.cov[0, 0]),
        anti_in,
        variance_to_db(state.cov[1, 1]),
        implied,
    )


def implied_efficiency(input_db, output_db):
    """Total transmission that turns ``input_db`` of squeezing into ``output_db``."""
    if not (input_db < 0 and output_db < 0 and abs(output_db) <= abs(input_db)):
        raise InvalidArgument(
            f"need input_db <= output_db < 0, got input {input_db}, output {output_db}"
        )
    return (1.0 - db_to_variance(output_db)) / (1.0 - db_to_variance(input_db))


class Topology(str, Enum):
    POL_POL = "PolPol"
    SPA_SPA = "SpaSpa"
    POL_SPA = "PolSpa"
    SPA_POL = "SpaPol"

    @property
    def dofs(self):
        return {
            Topology.POL_POL: (Dof.POL, Dof.POL),
            Topology.SPA_SPA: (Dof.SPA, Dof.SPA),
            Topology.POL_SPA: (Dof.POL, Dof.SPA),
            Topology.SPA_POL: (Dof.SPA, Dof.POL),
        }[self]

    @classmethod
    def from_dofs(cls, dof_a, dof_b):
        for top in cls:
            if top.dofs == (Dof(dof_a), Dof(dof_b)):
                return top
        raise InvalidArgument(f"no topology for ({dof_a}, {dof_b})")


def network_arms(topology):
    dof_a, dof_b = Topology(topology).dofs
    return ArmSpec(Arm.A, dof_a), ArmSpec(Arm.B, dof_b)


@dataclass(frozen=True)
class MeasurementNetwork:
    """Arm split, coherent injection and mode routing for one DOF pairing.

    The coherent amplitudes are nominal: arm a receives -w1 and arm b
    receives w2, which makes the two arms mirror images of each other.
    """

    topology: Topology = Topology.POL_POL
    w1: complex = 0.0
    w2: complex = 0.0
    hwp_in_b: bool = True
    elements: tuple = field(init=False)

    def __post_init__(self):
        top = Topology(self.topology)
        object.__setattr__(self, "topology", top)
        if not (np.isfinite(self.w1) and np.isfinite(self.w2)):
            raise InvalidArgument("coherent amplitudes must be finite")
        els = ["PBS(split x/y into arms b/a)"]
        for arm, dof in zip("ab", top.dofs):
            if dof is Dof.POL:
                els.append(f"PBS(inject coherent, arm {arm})")
            else:
                els.append(f"asymmetric MZ(sort HG10/HG01, arm {arm})")
        if self.hwp_in_b:
            els.append("HWP@45(arm b)")
        object.__setattr__(self, "elements", tuple(els))

    @classmethod
    def symmetric(cls, topology, m, hwp_in_b=True):
        """Equal coherent beams w1 = w2 = sqrt(m/2)."""
        if m < 0:
            raise InvalidArgument("m must be non-negative")
        w = np.sqrt(m / 2)
        return cls(topology, w, w, hwp_in_b)


def _arm_modes(fam):
    """HG-basis indices sent to arm a (y polarization) and arm b (x polarization)."""
    by_pol = {label.polarization: mode_index(label) for label in fam.pair}
    return by_pol[Polarization.Y], by_pol[Polarization.X]


def _arm_b_phase(fam):
    # Mirror symmetry between arms needs opposite displacement signs in a and b.
    sign_y = dict(zip((lab.polarization for lab in fam.pair), fam.signs))
    return 0.0 if sign_y[Polarization.Y] * sign_y[Polarization.X] < 0 else np.pi


def build_measurement_network(state4, net, fam="azimuthal"):
    """Route a four-mode HG-basis state through a measurement network.

    The polarizing splitter sends the y-polarized member of the family pair
    to arm a and the x-polarized member to arm b; the two unused HG modes
    are discarded. Coherent beams are injected into the first slot of each
    arm. The half-wave plate in arm b and the spatial-mode sorters are
    ideal relabelings.

    Returns:
        GaussianState: four slots ``[a_coh, a_sq, b_coh, b_sq]``.
    """
    if state4.n_modes != 4:
        raise InvalidArgument(f"network expects a 4-mode state, got {state4.n_modes}")
    fam = family(fam)
    ia, ib = _arm_modes(fam)
    pair = g.permute(state4, [ia, ib])
    phi = _arm_b_phase(fam)
    if phi:
        pair = g.phase_shift(pair, 1, phi)

    coh_a = g.displace(g.vacuum(1), 0, -net.w1)
    coh_b = g.displace(g.vacuum(1), 0, net.w2)
    # joint order [a_coh, b_coh, a_sq, b_sq] -> slots
    joint = g.permute(g.tensor(coh_a, coh_b, pair), [0, 2, 1, 3])

    dof_b = net.topology.dofs[1]
    if not net.hwp_in_b:
        if dof_b is Dof.SPA:
            raise InvalidArgument("spatial Stokes pair in arm b needs the half-wave plate")
        # squeezed light stays x01 and lands in the first slot of (x01, y01)
        joint = g.permute(joint, [0, 1, 3, 2])
    return joint


def network_sequence(fam, v0, zeta0, net):
    """Op list preparing the network output directly in slot layout.

    Mirrors the operator product of the post-splitter state: one two-mode
    squeezer across the arms, single-mode squeezers, then displacements.
    """
    fam = family(fam)
    if not net.hwp_in_b:
        raise InvalidArgument("sequence form is defined for the symmetric network")
    zeta, v = zeta0 / 2, v0 / np.sqrt(2)
    sign_y = dict(zip((lab.polarization for lab in fam.pair), fam.signs))
    s_a, s_b = sign_y[Polarization.Y], sign_y[Polarization.X]
    seq = [
        TwoModeSqueeze(1, 3, s_a * s_b * zeta),
        Squeeze(1, zeta),
        Squeeze(3, zeta),
        Displace(1, s_a * v),
        Displace(3, s_b * v),
    ]
    phi = _arm_b_phase(fam)
    if phi:
        seq.append(PhaseShift(3, phi))
    seq += [Displace(0, -net.w1), Displace(2, net.w2)]
    return seq


def prepare_network(fam, v0, zeta0, net):
    """Cylindrical state preparation followed by the measurement network."""
    state4 = g.prepare_bright_squeezed_cyl(fam, v0, zeta0)
    return build_measurement_network(state4, net, fam)
