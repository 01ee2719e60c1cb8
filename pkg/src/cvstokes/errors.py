"""Exception types raised across the package."""


class CVStokesError(Exception):
    """Base class for all package errors."""


class InvalidArgument(CVStokesError, ValueError):
    """An argument is outside the domain an operation accepts."""


class DegenerateNormalization(CVStokesError):
    """The criterion normalization |alpha| vanishes, so the value is undefined."""

    def __init__(self, alpha):
        self.alpha = alpha
        super().__init__(f"normalization |alpha| = {abs(alpha):.3e} is below 1e-12")


class AsymmetricNormalization(CVStokesError):
    """Arms a and b disagree on the normalization alpha."""

    def __init__(self, alpha_a, alpha_b):
        self.alpha_a = alpha_a
        self.alpha_b = alpha_b
        super().__init__(
            f"arm normalizations differ: alpha_a = {alpha_a:.12g}, alpha_b = {alpha_b:.12g}"
        )


class TruncationError(CVStokesError):
    """Fock-space truncation leaks more weight than the accepted bound."""

    def __init__(self, leakage, bound=1e-4):
        self.leakage = leakage
        self.bound = bound
        super().__init__(f"truncation leakage {leakage:.3e} exceeds {bound:.0e}")
