"""Four-mode Hermite-Gauss basis and the cylindrical superposition modes.

The basis is fixed to the order ``(x10, y10, x01, y01)``: polarization
``x``/``y`` crossed with the first-order Hermite-Gauss spatial modes
``HG10``/``HG01``.
"""

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import InvalidArgument


class Polarization(str, Enum):
    X = "x"
    Y = "y"


class Spatial(str, Enum):
    HG10 = "10"
    HG01 = "01"


@dataclass(frozen=True)
class ModeLabel:
    polarization: Polarization
    spatial: Spatial

    def __str__(self):
        return self.polarization.value + self.spatial.value

    @classmethod
    def parse(cls, text):
        """Parse ``"x10"``-style strings."""
        if not isinstance(text, str) or len(text) != 3:
            raise InvalidArgument(f"not a mode label: {text!r}")
        try:
            return cls(Polarization(text[0]), Spatial(text[1:]))
        except ValueError as exc:
            raise InvalidArgument(f"not a mode label: {text!r}") from exc


X10 = ModeLabel(Polarization.X, Spatial.HG10)
Y10 = ModeLabel(Polarization.Y, Spatial.HG10)
X01 = ModeLabel(Polarization.X, Spatial.HG01)
Y01 = ModeLabel(Polarization.Y, Spatial.HG01)

MODES = (X10, Y10, X01, Y01)
N_MODES = len(MODES)
_INDEX = {label: k for k, label in enumerate(MODES)}


def mode_index(label):
    """Index of ``label`` in the fixed basis order; accepts a string too."""
    if isinstance(label, str):
        label = ModeLabel.parse(label)
    try:
        return _INDEX[label]
    except KeyError as exc:
        raise InvalidArgument(f"unknown mode label {label!r}") from exc


def mode_label(index):
    """Inverse of :func:`mode_index`."""
    if not 0 <= int(index) < N_MODES:
        raise InvalidArgument(f"mode index {index} out of range")
    return MODES[int(index)]


class CylKind(str, Enum):
    AZIMUTHAL = "azimuthal"
    RADIAL = "radial"


@dataclass(frozen=True)
class CylFamily:
    kind: CylKind
    pair: tuple
    signs: tuple

    @property
    def sign_product(self):
        return self.signs[0] * self.signs[1]


AZIMUTHAL = CylFamily(CylKind.AZIMUTHAL, (X01, Y10), (-1.0, 1.0))
RADIAL = CylFamily(CylKind.RADIAL, (Y01, X10), (1.0, 1.0))


def family(kind):
    """Look up a family by kind or by name (``"azimuthal"``/``"radial"``)."""
    if isinstance(kind, CylFamily):
        return kind
    try:
        kind = CylKind(kind)
    except ValueError as exc:
        raise InvalidArgument(f"unknown cylindrical family {kind!r}") from exc
    return AZIMUTHAL if kind is CylKind.AZIMUTHAL else RADIAL


def cylindrical_coefficients(fam):
    """Coefficients c with a_F = sum_k c_k a_k, in basis order.

    Normalized to unit length so that [a_F, a_F^dagger] = 1.
    """
    fam = family(fam)
    c = np.zeros(N_MODES, dtype=complex)
    for label, sign in zip(fam.pair, fam.signs):
        c[mode_index(label)] = sign / np.sqrt(2.0)
    return c
