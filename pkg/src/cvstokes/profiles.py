"""Transverse intensity and polarization maps of cylindrical modes."""

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import InvalidArgument
from .modes import Polarization, Spatial, family

BLOCK = 16
ARROW_THRESHOLD = 0.1


@dataclass(frozen=True)
class GridSpec:
    half_width: float = 4.0
    samples: int = 256
    waist: float = 1.0

    def __post_init__(self):
        if self.samples < 16:
            raise InvalidArgument("grid needs at least 16 samples per axis")
        if self.half_width <= 0 or self.waist <= 0:
            raise InvalidArgument("half_width and waist must be positive")

    @property
    def step(self):
        return 2 * self.half_width / self.samples

    def axis(self):
        """Sample coordinates; index samples // 2 sits exactly on the axis."""
        k = np.arange(self.samples) - self.samples // 2
        return k * self.step


@dataclass(frozen=True, eq=False)
class ProfileImage:
    """Intensity (max 1) on the grid and decimated unit polarization arrows.

    ``arrows`` is an (n, 4) array of rows (x, y, dx, dy).
    """

    intensity: np.ndarray
    arrows: np.ndarray
    grid: GridSpec


def hg_amplitude(which, x, y, w=1.0):
    """Unit-normalized first-order Hermite-Gauss amplitude HG10 or HG01."""
    if w <= 0:
        raise InvalidArgument("waist must be positive")
    which = Spatial(which) if not isinstance(which, Spatial) else which
    x, y = np.asarray(x, dtype=float), np.asarray(y, dtype=float)
    coord = x if which is Spatial.HG10 else y
    norm = np.sqrt(2 / np.pi) / w
    return norm * (2 * coord / w) * np.exp(-(x**2 + y**2) / w**2)


def polarization_field(fam, x, y, w=1.0):
    """Transverse field (E_x, E_y) of the family's superposition mode."""
    fam = family(fam)
    ex = np.zeros(np.broadcast(x, y).shape)
    ey = np.zeros_like(ex)
    for label, sign in zip(fam.pair, fam.signs):
        u = sign * hg_amplitude(label.spatial, x, y, w) / np.sqrt(2)
        if label.polarization is Polarization.X:
            ex = ex + u
        else:
            ey = ey + u
    return ex, ey


def render(fam, grid=GridSpec()):
    fam = family(fam)
    ax = grid.axis()
    X, Y = np.meshgrid(ax, ax, indexing="xy")
    ex, ey = polarization_field(fam, X, Y, grid.waist)
    intensity = ex**2 + ey**2
    intensity = intensity / intensity.max()

    arrows = []
    c = BLOCK // 2
    for i in range(c, grid.samples, BLOCK):
        for j in range(c, grid.samples, BLOCK):
            if intensity[i, j] <= ARROW_THRESHOLD:
                continue
            norm = np.hypot(ex[i, j], ey[i, j])
            arrows.append((X[i, j], Y[i, j], ex[i, j] / norm, ey[i, j] / norm))
    return ProfileImage(intensity, np.array(arrows).reshape(-1, 4), grid)


def write_pgm(path, intensity, binary=False, maxval=65535):
    """Write a grayscale PGM; row 0 of ``intensity`` is the bottom of the image."""
    img = np.rint(np.clip(intensity, 0, 1) * maxval).astype(np.uint16)[::-1]
    h, w = img.shape
    path = Path(path)
    if binary:
        with path.open("wb") as fh:
            fh.write(f"P5\n{w} {h}\n{maxval}\n".encode())
            fh.write(img.astype(">u2").tobytes())
    else:
        rows = "\n".join(" ".join(str(v) for v in row) for row in img)
        path.write_text(f"P2\n{w} {h}\n{maxval}\n{rows}\n")


def read_pgm(path):
    """Read back a P2/P5 file written by :func:`write_pgm` (bottom row first)."""
    data = Path(path).read_bytes()
    magic = data[:2]
    if magic == b"P2":
        tokens = data.split()
        w, h, maxval = int(tokens[1]), int(tokens[2]), int(tokens[3])
        img = np.array([int(t) for t in tokens[4:]], dtype=np.uint16).reshape(h, w)
    elif magic == b"P5":
        head = data.split(b"\n", 3)
        w, h = (int(t) for t in head[1].split())
        maxval = int(head[2])
        img = np.frombuffer(head[3], dtype=">u2").reshape(h, w)
    else:
        raise InvalidArgument(f"{path}: not a PGM file")
    return img[::-1].astype(float) / maxval


def write_intensity_csv(path, image):
    ax = image.grid.axis()
    with Path(path).open("w") as fh:
        fh.write("x,y,intensity\n")
        for i, y in enumerate(ax):
            for j, x in enumerate(ax):
                fh.write(f"{x:.9g},{y:.9g},{image.intensity[i, j]:.9g}\n")


def write_arrows_csv(path, image):
    with Path(path).open("w") as fh:
        fh.write("x,y,dx,dy\n")
        for x, y, dx, dy in image.arrows:
            fh.write(f"{x:.9g},{y:.9g},{dx:.9g},{dy:.9g}\n")

