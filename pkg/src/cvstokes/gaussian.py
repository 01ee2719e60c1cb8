"""Multimode Gaussian states in moment form.

Quadratures follow X = a + a^dagger and P = i(a^dagger - a), so the vacuum
has unit variance in every quadrature (shot noise = 1). Vectors are ordered
``(x_1, p_1, ..., x_N, p_N)``. All operations are pure: they return a new
state and never modify their input.
"""

from dataclasses import dataclass

import numpy as np

from .errors import InvalidArgument
from .modes import cylindrical_coefficients, family, mode_index

SYM_TOL = 1e-12
EIG_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class GaussianState:
    """First and second quadrature moments of an N-mode Gaussian state.

    Attributes:
        mean (ndarray): length-2N mean vector.
        cov (ndarray): 2N x 2N symmetrized covariance, vacuum = identity.
    """

    mean: np.ndarray
    cov: np.ndarray

    def __post_init__(self):
        mean = np.asarray(self.mean, dtype=float).reshape(-1)
        cov = np.asarray(self.cov, dtype=float)
        if mean.size % 2 or cov.shape != (mean.size, mean.size):
            raise InvalidArgument(
                f"inconsistent shapes: mean {mean.shape}, cov {cov.shape}"
            )
        scale = max(1.0, float(np.abs(cov).max(initial=0.0)))
        if not np.allclose(cov, cov.T, rtol=0, atol=1e-9 * scale):
            raise InvalidArgument("covariance matrix is not symmetric")
        mean.setflags(write=False)
        cov.setflags(write=False)
        object.__setattr__(self, "mean", mean)
        object.__setattr__(self, "cov", cov)

    @property
    def n_modes(self):
        return self.mean.size // 2

    def to_dict(self):
        return {
            "n_modes": self.n_modes,
            "mean": self.mean.tolist(),
            "cov": self.cov.tolist(),
        }

    @classmethod
    def from_dict(cls, data):
        state = cls(np.asarray(data["mean"]), np.asarray(data["cov"]))
        if int(data.get("n_modes", state.n_modes)) != state.n_modes:
            raise InvalidArgument("n_modes does not match the mean vector length")
        return state


@dataclass(frozen=True, eq=False)
class SymplecticMap:
    matrix: np.ndarray
    displacement: np.ndarray

    def is_symplectic(self, tol=SYM_TOL):
        omega = symplectic_form(self.matrix.shape[0] // 2)
        return np.allclose(self.matrix @ omega @ self.matrix.T, omega, rtol=0, atol=tol)

    def apply(self, state):
        return GaussianState(
            self.matrix @ state.mean + self.displacement,
            self.matrix @ state.cov @ self.matrix.T,
        )


@dataclass(frozen=True)
class SqueezeSpec:
    """Squeezing of a cylindrical mode: zeta0 = r e^{i theta} = 2 zeta."""

    r: float
    theta: float = 0.0

    def __post_init__(self):
        if self.r < 0:
            raise InvalidArgument("squeezing degree r must be non-negative")

    @property
    def zeta0(self):
        return self.r * np.exp(1j * self.theta)

    @property
    def zeta(self):
        return self.zeta0 / 2


def symplectic_form(n_modes):
    """Block-diagonal form J with [R_i, R_j] = 2i J_ij in this convention."""
    return np.kron(np.eye(n_modes), np.array([[0.0, 1.0], [-1.0, 0.0]]))


def vacuum(n_modes):
    if int(n_modes) < 1:
        raise InvalidArgument("n_modes must be >= 1")
    n = int(n_modes)
    return GaussianState(np.zeros(2 * n), np.eye(2 * n))


def _check_mode(state, mode):
    if not 0 <= int(mode) < state.n_modes:
        raise InvalidArgument(f"mode {mode} out of range for {state.n_modes} modes")
    return int(mode)


def _check_pair(state, i, j):
    i, j = _check_mode(state, i), _check_mode(state, j)
    if i == j:
        raise InvalidArgument("two-mode operation needs distinct modes")
    return i, j


def bogoliubov_map(n_modes, modes, A, B):
    """Symplectic image of the Heisenberg map a -> A a + B a^dagger on ``modes``.

    Uses a = L R with L[j, 2j] = 1/2, L[j, 2j+1] = i/2; then the new X and P
    rows are 2 Re(C) and 2 Im(C) for C = A L + B conj(L).
    """
    modes = list(modes)
    k = len(modes)
    L = np.zeros((k, 2 * k), dtype=complex)
    for j in range(k):
        L[j, 2 * j] = 0.5
        L[j, 2 * j + 1] = 0.5j
    C = np.asarray(A) @ L + np.asarray(B) @ L.conj()
    local = np.empty((2 * k, 2 * k))
    local[0::2] = 2 * C.real
    local[1::2] = 2 * C.imag

    idx = np.array([[2 * m, 2 * m + 1] for m in modes]).reshape(-1)
    S = np.eye(2 * n_modes)
    S[np.ix_(idx, idx)] = local
    return SymplecticMap(S, np.zeros(2 * n_modes))


def displace(state, mode, v):
    m = _check_mode(state, mode)
    mean = state.mean.copy()
    mean[2 * m] += 2 * np.real(v)
    mean[2 * m + 1] += 2 * np.imag(v)
    return GaussianState(mean, state.cov)


def squeeze_single(state, mode, zeta):
    """Apply exp((zeta* a^2 - zeta a^dagger^2)/2); real zeta > 0 squeezes X."""
    m = _check_mode(state, mode)
    r, phi = abs(zeta), np.angle(zeta)
    A = [[np.cosh(r)]]
    B = [[-np.exp(1j * phi) * np.sinh(r)]]
    return bogoliubov_map(state.n_modes, [m], A, B).apply(state)


def squeeze_two(state, mode_i, mode_j, zeta):
    """Apply exp(zeta* a_i a_j - zeta a_i^dagger a_j^dagger).

    For real zeta > 0 the joint quadrature X_i + X_j is squeezed.
    """
    i, j = _check_pair(state, mode_i, mode_j)
    r, phi = abs(zeta), np.angle(zeta)
    A = np.cosh(r) * np.eye(2)
    B = -np.exp(1j * phi) * np.sinh(r) * np.array([[0.0, 1.0], [1.0, 0.0]])
    return bogoliubov_map(state.n_modes, [i, j], A, B).apply(state)


def passive(state, modes, U):
    """Apply the passive linear map a -> U a on ``modes``; U must be unitary."""
    U = np.asarray(U, dtype=complex)
    if not np.allclose(U @ U.conj().T, np.eye(U.shape[0]), atol=SYM_TOL):
        raise InvalidArgument("passive transformation is not unitary")
    modes = [_check_mode(state, m) for m in modes]
    if len(set(modes)) != len(modes):
        raise InvalidArgument("repeated mode in passive transformation")
    return bogoliubov_map(state.n_modes, modes, U, np.zeros_like(U)).apply(state)


def beamsplitter_matrix(t, phase=0.0):
    """Mode matrix of a lossless beam splitter with power transmissivity t."""
    if not 0.0 <= t <= 1.0:
        raise InvalidArgument(f"transmissivity must lie in [0, 1], got {t}")
    c, s = np.sqrt(t), np.sqrt(1.0 - t)
    e = np.exp(1j * phase)
    return np.array([[c, e * s], [-np.conj(e) * s, c]])


def beamsplitter(state, i, j, t, phase=0.0):
    i, j = _check_pair(state, i, j)
    return passive(state, [i, j], beamsplitter_matrix(t, phase))


def phase_shift(state, mode, phi):
    m = _check_mode(state, mode)
    return passive(state, [m], [[np.exp(1j * phi)]])


def permute(state, order):
    """Reorder modes: new mode k is old mode ``order[k]``.

    A subset of modes may be given, which traces out the rest.
    """
    order = [_check_mode(state, m) for m in order]
    if len(set(order)) != len(order):
        raise InvalidArgument("repeated mode in permutation")
    idx = np.array([[2 * m, 2 * m + 1] for m in order]).reshape(-1)
    return GaussianState(state.mean[idx], state.cov[np.ix_(idx, idx)])


def loss(state, mode, eta):
    """Pure-loss channel of transmission ``eta`` on one mode."""
    if not 0.0 <= eta <= 1.0:
        raise InvalidArgument(f"loss transmission must lie in [0, 1], got {eta}")
    m = _check_mode(state, mode)
    scale = np.ones(2 * state.n_modes)
    scale[2 * m : 2 * m + 2] = np.sqrt(eta)
    cov = scale[:, None] * state.cov * scale[None, :]
    cov[2 * m : 2 * m + 2, 2 * m : 2 * m + 2] += (1.0 - eta) * np.eye(2)
    return GaussianState(scale * state.mean, cov)


def tensor(*states):
    """Direct sum of independent states (joint state of separate systems)."""
    mean = np.concatenate([s.mean for s in states])
    cov = np.zeros((mean.size, mean.size))
    k = 0
    for s in states:
        n = s.mean.size
        cov[k : k + n, k : k + n] = s.cov
        k += n
    return GaussianState(mean, cov)


def physicality_check(state, tol=EIG_TOL):
    if not np.allclose(state.cov, state.cov.T, rtol=0, atol=SYM_TOL):
        return False
    herm = state.cov + 1j * symplectic_form(state.n_modes)
    return bool(np.linalg.eigvalsh(herm).min() >= -tol)


def complex_moments(state):
    """Mode-operator moments of a Gaussian state.

    Returns:
        tuple: ``(alpha, N, M)`` with alpha_j = <a_j>, and central moments
        N_jk = <da_j^dagger da_k>, M_jk = <da_j da_k>.
    """
    n = state.n_modes
    mean = state.mean.reshape(n, 2)
    alpha = (mean[:, 0] + 1j * mean[:, 1]) / 2
    V = state.cov.reshape(n, 2, n, 2)
    xx, pp = V[:, 0, :, 0], V[:, 1, :, 1]
    xp, px = V[:, 0, :, 1], V[:, 1, :, 0]
    N = (xx + pp + 1j * (xp - px)) / 4 - np.eye(n) / 2
    M = (xx - pp + 1j * (xp + px)) / 4
    return alpha, N, M


def mode_quadrature_variance(state, coeffs, angle=0.0):
    """Variance of e^{-i angle} a_c + h.c. for the superposition a_c = c . a."""
    c = np.asarray(coeffs, dtype=complex)
    _, N, M = complex_moments(state)
    e = np.exp(-1j * angle)
    # <(e A + e* A^dag)^2> with A = c.a centered
    aa = c @ M @ c
    ad_a = c.conj() @ N @ c
    return float(np.real(2 * np.real(e * e * aa) + 2 * ad_a + 1))


def squeeze_superposition(state, coeffs, zeta):
    """Single-mode squeezing of the superposition mode a_c = sum_k c_k a_k."""
    c = np.asarray(coeffs, dtype=complex)
    if c.size != state.n_modes or not np.isclose(np.vdot(c, c).real, 1.0, atol=SYM_TOL):
        raise InvalidArgument("superposition coefficients must be a unit vector")
    r, phi = abs(zeta), np.angle(zeta)
    P = np.outer(c.conj(), c)
    A = np.eye(c.size) + (np.cosh(r) - 1.0) * P
    B = -np.exp(1j * phi) * np.sinh(r) * np.outer(c.conj(), c.conj())
    return bogoliubov_map(state.n_modes, range(state.n_modes), A, B).apply(state)


def displace_superposition(state, coeffs, v):
    c = np.asarray(coeffs, dtype=complex)
    out = state
    for k, ck in enumerate(c):
        if ck != 0:
            out = displace(out, k, np.conj(ck) * v)
    return out


def prepare_bright_squeezed_cyl(fam, v0, zeta0, route="superposition"):
    """Displaced squeezed cylindrical mode, expressed in the HG basis.

    ``route="superposition"`` squeezes and displaces the cylindrical mode
    directly. ``route="factorized"`` builds the same state from one two-mode
    squeezer and single-mode squeezers/displacements on the HG pair with
    zeta = zeta0/2 and v = v0/sqrt(2).
    """
    fam = family(fam)
    c = cylindrical_coefficients(fam)
    state = vacuum(c.size)
    if route == "superposition":
        state = squeeze_superposition(state, c, zeta0)
        return displace_superposition(state, c, v0)
    if route != "factorized":
        raise InvalidArgument(f"unknown preparation route {route!r}")

    p, q = (mode_index(label) for label in fam.pair)
    zeta, v = zeta0 / 2, v0 / np.sqrt(2)
    state = squeeze_two(state, p, q, fam.sign_product * zeta)
    for k, sign in zip((p, q), fam.signs):
        state = squeeze_single(state, k, zeta)
        state = displace(state, k, sign * v)
    return state
