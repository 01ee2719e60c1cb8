"""Brute-force truncated Fock-space oracle.

States are dense amplitude tensors of shape ``(d,) * N``. Every op is the
exponential of its generator built from truncated ladder matrices (Pade
scaling and squaring via :func:`scipy.linalg.expm`), applied to the tensor
along the affected axes. Nothing here uses the moment engine.
"""

from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import expm, logm

from .errors import InvalidArgument, TruncationError
from .gaussian import beamsplitter_matrix
from .ops import BeamSplitter, Displace, PhaseShift, Relabel, Squeeze, TwoModeSqueeze

DEFAULT_DIM = 12
LEAKAGE_BOUND = 1e-4


def annihilator(d):
    return np.diag(np.sqrt(np.arange(1, d, dtype=float)), 1).astype(complex)


@dataclass(frozen=True, eq=False)
class FockState:
    """Amplitudes over ``dims``; ``leakage`` is the weight in the top level of each mode."""

    amps: np.ndarray
    leakage: float = 0.0

    @property
    def dims(self):
        return self.amps.shape

    @property
    def n_modes(self):
        return self.amps.ndim

    def norm(self):
        return float(np.sqrt(np.vdot(self.amps, self.amps).real))


def fock_vacuum(n_modes, d=DEFAULT_DIM):
    amps = np.zeros((d,) * n_modes, dtype=complex)
    amps[(0,) * n_modes] = 1.0
    return FockState(amps)


def _apply_local(amps, U, axes):
    """Contract a local operator on ``axes`` into the state tensor."""
    k = len(axes)
    d = amps.shape[axes[0]]
    U = U.reshape((d,) * (2 * k))
    out = np.tensordot(U, amps, axes=(list(range(k, 2 * k)), list(axes)))
    # tensordot puts the new axes first; move them back.
    return np.moveaxis(out, list(range(k)), list(axes))


def _generator(op, d):
    a = annihilator(d)
    ad = a.conj().T
    eye = np.eye(d)
    if isinstance(op, Displace):
        return op.v * ad - np.conj(op.v) * a, (op.mode,)
    if isinstance(op, Squeeze):
        z = op.zeta
        return (np.conj(z) * a @ a - z * ad @ ad) / 2, (op.mode,)
    if isinstance(op, TwoModeSqueeze):
        z = op.zeta
        G = np.conj(z) * np.kron(a, a) - z * np.kron(ad, ad)
        return G, (op.i, op.j)
    if isinstance(op, BeamSplitter):
        K = logm(beamsplitter_matrix(op.t, op.phase))
        lad = [np.kron(a, eye), np.kron(eye, a)]
        G = sum(
            K[j, k] * lad[j].conj().T @ lad[k] for j in range(2) for k in range(2)
        )
        return G, (op.i, op.j)
    if isinstance(op, PhaseShift):
        return 1j * op.phi * ad @ a, (op.mode,)
    raise InvalidArgument(f"unknown op {op!r}")


def top_level_weight(amps):
    """Sum over modes of the probability of occupying the highest kept level."""
    p = np.abs(amps) ** 2
    total = 0.0
    for ax in range(amps.ndim):
        total += float(np.take(p, -1, axis=ax).sum())
    return total


def oracle_prepare(seq, n_modes, d=DEFAULT_DIM, bound=LEAKAGE_BOUND):
    """Apply ``seq`` to the vacuum by exponentiating truncated generators.

    Raises:
        TruncationError: if the top-level weight of the result reaches ``bound``.
    """
    amps = fock_vacuum(n_modes, d).amps
    for op in seq:
        if isinstance(op, Relabel):
            if sorted(op.order) != list(range(n_modes)):
                raise InvalidArgument("relabel must be a full permutation")
            amps = np.transpose(amps, op.order)
            continue
        G, axes = _generator(op, d)
        if any(not 0 <= ax < n_modes for ax in axes):
            raise InvalidArgument(f"op {op!r} addresses a missing mode")
        amps = _apply_local(amps, expm(G), axes)
    leakage = top_level_weight(amps)
    if leakage >= bound:
        raise TruncationError(leakage, bound)
    amps = amps / np.sqrt(np.vdot(amps, amps).real)
    return FockState(np.ascontiguousarray(amps), leakage)


def _apply_ladder(amps, mode, dagger):
    d = amps.shape[mode]
    a = annihilator(d)
    return _apply_local(amps, a.conj().T if dagger else a, (mode,))


def apply_observable(obs, state):
    """Return Q|psi> for Q = sum_jk M_jk a_j^dagger a_k + offset."""
    if obs.n_modes != state.n_modes:
        raise InvalidArgument(
            f"observable acts on {obs.n_modes} modes, state has {state.n_modes}"
        )
    out = obs.offset * state.amps
    M = obs.coeff
    for j, k in zip(*np.nonzero(M)):
        term = _apply_ladder(_apply_ladder(state.amps, k, False), j, True)
        out = out + M[j, k] * term
    return out


@dataclass
class OracleMoments:
    """Cache of Q|psi> vectors so several moments reuse one application."""

    state: FockState
    _cache: dict = field(default_factory=dict)

    def _vec(self, obs):
        key = id(obs)
        if key not in self._cache:
            self._cache[key] = (obs, apply_observable(obs, self.state))
        return self._cache[key][1]

    def expect(self, obs):
        z = np.vdot(self.state.amps, self._vec(obs))
        return float(z.real)

    def raw_covariance(self, obs1, obs2):
        # <Q1 Q2> = <Q1 psi | Q2 psi> for Hermitian Q1
        z = np.vdot(self._vec(obs1), self._vec(obs2))
        return complex(z - self.expect(obs1) * self.expect(obs2))

    def covariance(self, obs1, obs2):
        return self.raw_covariance(obs1, obs2).real

    def variance(self, obs):
        return self.covariance(obs, obs)


def oracle_expect(obs, state):
    z = np.vdot(state.amps, apply_observable(obs, state))
    if abs(z.imag) > 1e-9:
        raise InvalidArgument(f"expectation has imaginary part {z.imag:.3e}")
    return float(z.real)


def oracle_variance(obs, state):
    return OracleMoments(state).variance(obs)


def oracle_covariance(obs1, obs2, state):
    return OracleMoments(state).covariance(obs1, obs2)


def oracle_photon_number(state, mode):
    p = np.abs(state.amps) ** 2
    marg = p.sum(axis=tuple(ax for ax in range(state.n_modes) if ax != mode))
    return float(np.arange(marg.size) @ marg)
