"""Polarization and spatial Stokes operators on Gaussian states.

A Stokes operator is a Hermitian quadratic form sum_jk M_jk a_j^dagger a_k.
Its moments on a Gaussian state follow from the mean amplitudes and the
central second moments by Wick pairing, so no sampling is involved.

Network states use a four-slot layout: slots 0, 1 hold the mode pair of
arm ``a`` and slots 2, 3 the pair of arm ``b`` (see :class:`ArmSpec`).
"""

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .errors import InvalidArgument
from .gaussian import complex_moments
from .modes import X01, X10, Y01, Y10

HERM_TOL = 1e-12


class Arm(str, Enum):
    A = "a"
    B = "b"


class Dof(str, Enum):
    POL = "pol"
    SPA = "spa"


ARM_PAIRS = {
    (Arm.A, Dof.POL): (X10, Y10),
    (Arm.B, Dof.POL): (X01, Y01),
    (Arm.A, Dof.SPA): (X10, X01),
    (Arm.B, Dof.SPA): (Y10, Y01),
}


@dataclass(frozen=True)
class ArmSpec:
    arm: Arm
    dof: Dof

    def __post_init__(self):
        object.__setattr__(self, "arm", Arm(self.arm))
        object.__setattr__(self, "dof", Dof(self.dof))

    @property
    def mode_pair(self):
        return ARM_PAIRS[(self.arm, self.dof)]

    @property
    def slots(self):
        return (0, 1) if self.arm is Arm.A else (2, 3)

    def __str__(self):
        return f"{self.dof.value}.{self.arm.value}"


@dataclass(frozen=True, eq=False)
class QuadraticObservable:
    """Hermitian form sum_jk coeff[j, k] a_j^dagger a_k + offset."""

    coeff: np.ndarray
    offset: float = 0.0
    name: str = field(default="", compare=False)

    def __post_init__(self):
        M = np.asarray(self.coeff, dtype=complex)
        if M.ndim != 2 or M.shape[0] != M.shape[1]:
            raise InvalidArgument("coefficient matrix must be square")
        if not np.allclose(M, M.conj().T, rtol=0, atol=HERM_TOL):
            raise InvalidArgument("coefficient matrix is not Hermitian")
        M.setflags(write=False)
        object.__setattr__(self, "coeff", M)
        object.__setattr__(self, "offset", float(self.offset))

    @property
    def n_modes(self):
        return self.coeff.shape[0]

    def __add__(self, other):
        return QuadraticObservable(
            self.coeff + other.coeff, self.offset + other.offset, f"{self.name}+{other.name}"
        )

    def __sub__(self, other):
        return QuadraticObservable(
            self.coeff - other.coeff, self.offset - other.offset, f"{self.name}-{other.name}"
        )

    def __neg__(self):
        return QuadraticObservable(-self.coeff, -self.offset, f"-{self.name}")

    def to_dict(self):
        return {
            "matrix": [[{"re": z.real, "im": z.imag} for z in row] for row in self.coeff],
            "offset": self.offset,
        }

    @classmethod
    def from_dict(cls, data):
        M = np.array([[z["re"] + 1j * z["im"] for z in row] for row in data["matrix"]])
        return cls(M, data.get("offset", 0.0))


def pair_stokes(i, j, index, n_modes):
    """Stokes operator ``index`` on the ordered mode pair (i, j)."""
    if index not in (0, 1, 2, 3):
        raise InvalidArgument(f"Stokes index must be 0..3, got {index}")
    if i == j or not (0 <= i < n_modes and 0 <= j < n_modes):
        raise InvalidArgument(f"invalid mode pair ({i}, {j}) for {n_modes} modes")
    M = np.zeros((n_modes, n_modes), dtype=complex)
    if index == 0:
        M[i, i], M[j, j] = 1, 1
    elif index == 1:
        M[i, i], M[j, j] = 1, -1
    elif index == 2:
        M[i, j], M[j, i] = 1, 1
    else:
        # (1/i)(a_i^dag a_j - a_j^dag a_i)
        M[i, j], M[j, i] = -1j, 1j
    return M


def stokes(arm_spec, index, n_modes=4):
    """Stokes operator S_index for one arm, placed on that arm's slots."""
    if not isinstance(arm_spec, ArmSpec):
        arm_spec = ArmSpec(*arm_spec)
    i, j = arm_spec.slots
    if n_modes < j + 1:
        raise InvalidArgument(f"arm {arm_spec.arm.value} needs at least {j + 1} modes")
    return QuadraticObservable(pair_stokes(i, j, index, n_modes), name=f"{arm_spec}.S{index}")


def preset(key, n_modes=4):
    """Look up observables by keys such as ``"pol.a.S2"``."""
    try:
        dof, arm, s = key.split(".")
        if s[0] != "S":
            raise ValueError
        return stokes(ArmSpec(Arm(arm), Dof(dof)), int(s[1:]), n_modes)
    except (ValueError, IndexError) as exc:
        raise InvalidArgument(f"unknown Stokes preset {key!r}") from exc


def _check_dims(obs, state):
    if obs.n_modes != state.n_modes:
        raise InvalidArgument(
            f"observable acts on {obs.n_modes} modes, state has {state.n_modes}"
        )


def _linear_coeffs(M, alpha):
    # Displaced part of Q: sum_j conj(c_j) da_j + c_j da_j^dag with c = M alpha.
    return M @ alpha


def expectation(obs, state):
    _check_dims(obs, state)
    alpha, N, _ = complex_moments(state)
    M = obs.coeff
    value = alpha.conj() @ M @ alpha + np.sum(M * N) + obs.offset
    return float(value.real)


def _raw_covariance(obs1, obs2, state):
    """<dQ1 dQ2> for Hermitian quadratic forms on a Gaussian state.

    Wick pairing with ordered contractions:
    <da_j^dag da_k> = N_jk, <da_j da_k> = M_jk, <da_k da_l^dag> = N_lk + delta_kl.
    """
    _check_dims(obs1, state)
    _check_dims(obs2, state)
    alpha, N, Mc = complex_moments(state)
    A, B = obs1.coeff, obs2.coeff
    eye = np.eye(state.n_modes)
    NT = N.T

    quad = np.trace(Mc.conj() @ A @ Mc @ B.T) + np.trace(A @ (NT + eye) @ B @ NT)

    c1 = _linear_coeffs(A, alpha)
    c2 = _linear_coeffs(B, alpha)
    lin = (
        c1.conj() @ Mc @ c2.conj()
        + c1.conj() @ (NT + eye) @ c2
        + c1 @ N @ c2.conj()
        + c1 @ Mc.conj() @ c2
    )
    return complex(quad + lin)


def covariance(obs1, obs2, state):
    """Symmetrized covariance 1/2 <{dQ1, dQ2}>."""
    return _raw_covariance(obs1, obs2, state).real


def variance(obs, state):
    return covariance(obs, obs, state)


def commutator_expectation(obs1, obs2, state):
    """Im <dQ1 dQ2> = <[Q1, Q2]> / 2i, the antisymmetric part of the covariance."""
    return _raw_covariance(obs1, obs2, state).imag


def complex_covariance(obs1, obs2, state):
    """Unsymmetrized <dQ1 dQ2>; real part symmetric, imaginary part from the commutator."""
    return _raw_covariance(obs1, obs2, state)


@dataclass(frozen=True)
class SqueezeParams:
    r: float
    theta: float = 0.0

    def __post_init__(self):
        if self.r < 0:
            raise InvalidArgument("r must be non-negative")

    @property
    def mu(self):
        return np.cosh(self.r / 2)

    @property
    def nu(self):
        return np.sinh(self.r / 2) * np.exp(1j * self.theta)


@dataclass(frozen=True)
class BrightnessParams:
    """Photon-number parameters: v0 = sqrt(n), w1 = w2 = sqrt(m/2)."""

    n: float
    m: float

    def __post_init__(self):
        if self.n < 0 or self.m < 0:
            raise InvalidArgument("n and m must be non-negative")

    @property
    def v0(self):
        return np.sqrt(self.n)

    @property
    def w(self):
        return np.sqrt(self.m / 2)


def closed_form_variances(p, r):
    """Printed closed forms (V(S0) = V(S1), V(S2), V(S3)) at zero squeezing angle."""
    n, m = p.n, p.m
    c2, s2, c4 = np.cosh(2 * r), np.sinh(2 * r), np.cosh(4 * r)
    v01 = (4 * n + 8 * m - 3 + 2 * (1 + 2 * n) * c2 + c4 - 4 * n * s2) / 16
    v2 = (2 * n + m + (1 + m) * c2 - 1 - m * s2) / 4
    v3 = (2 * n + m + (1 + m) * c2 - 1 + m * s2) / 4
    return v01, v2, v3


@dataclass(frozen=True)
class ClosedFormMeans:
    """The four printed mean values and how the intensity term compares.

    ``printed_term`` is the printed 2 mu nu (complex when theta != 0);
    ``moment_term`` is the value the moment calculus gives for the same slot,
    sinh(r)^2 / 2. ``discrepancy`` is their difference.
    """

    values: tuple
    printed_term: complex
    moment_term: float

    @property
    def discrepancy(self):
        return self.printed_term - self.moment_term

    @property
    def flagged(self):
        return abs(self.discrepancy) > 1e-12


def closed_form_means(w, v0, sq):
    """Mean Stokes values of one arm as printed, for coherent amplitude w.

    ``w`` and ``v0`` are complex amplitudes; their arguments enter the S2/S3
    expressions. The S0/S1 entries use the real part of the printed 2 mu nu
    term; the full complex term is kept on the result.
    """
    term = 2 * sq.mu * sq.nu
    aw, av = abs(w), abs(v0)
    dphi = np.angle(w) - np.angle(v0)
    values = (
        aw**2 + av**2 / 2 + term.real,
        aw**2 - av**2 / 2 - term.real,
        -np.sqrt(2) * aw * av * np.cos(dphi),
        np.sqrt(2) * aw * av * np.sin(dphi),
    )
    return ClosedFormMeans(
        tuple(float(x) for x in values), complex(term), float(np.sinh(sq.r) ** 2 / 2)
    )


def moment_means(w, v0, sq):
    """Mean Stokes values of one arm from the moment calculus, same layout as printed."""
    s = float(np.sinh(sq.r) ** 2 / 2)
    aw, av = abs(w), abs(v0)
    dphi = np.angle(w) - np.angle(v0)
    return (
        aw**2 + av**2 / 2 + s,
        aw**2 - av**2 / 2 - s,
        -np.sqrt(2) * aw * av * np.cos(dphi),
        np.sqrt(2) * aw * av * np.sin(dphi),
    )
