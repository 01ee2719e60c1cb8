"""Operation sequences shared by the Gaussian engine and the Fock oracle.

A sequence is a plain list of the op records below; each engine interprets
it with its own machinery, so a scenario is described once and simulated
twice.
"""

from dataclasses import dataclass

from . import gaussian as g


@dataclass(frozen=True)
class Displace:
    mode: int
    v: complex


@dataclass(frozen=True)
class Squeeze:
    mode: int
    zeta: complex


@dataclass(frozen=True)
class TwoModeSqueeze:
    i: int
    j: int
    zeta: complex


@dataclass(frozen=True)
class BeamSplitter:
    i: int
    j: int
    t: float
    phase: float = 0.0


@dataclass(frozen=True)
class PhaseShift:
    mode: int
    phi: float


@dataclass(frozen=True)
class Relabel:
    """Full permutation of modes: new mode k is old mode ``order[k]``."""

    order: tuple


def run_gaussian(seq, n_modes, state=None):
    """Apply ``seq`` to ``state`` (vacuum by default) with the moment engine."""
    state = g.vacuum(n_modes) if state is None else state
    for op in seq:
        if isinstance(op, Displace):
            state = g.displace(state, op.mode, op.v)
        elif isinstance(op, Squeeze):
            state = g.squeeze_single(state, op.mode, op.zeta)
        elif isinstance(op, TwoModeSqueeze):
            state = g.squeeze_two(state, op.i, op.j, op.zeta)
        elif isinstance(op, BeamSplitter):
            state = g.beamsplitter(state, op.i, op.j, op.t, op.phase)
        elif isinstance(op, PhaseShift):
            state = g.phase_shift(state, op.mode, op.phi)
        elif isinstance(op, Relabel):
            if sorted(op.order) != list(range(state.n_modes)):
                raise g.InvalidArgument("relabel must be a full permutation")
            state = g.permute(state, op.order)
        else:
            raise g.InvalidArgument(f"unknown op {op!r}")
    return state
