"""Scenario files: parsing, validation and state construction."""

import json
from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np

from .errors import InvalidArgument
from .modes import family
from .networks import MeasurementNetwork, PipelineConfig, Topology, prepare_network

SWEEPABLE = ("r", "theta", "v0", "m")


def _complex(x, name):
    if isinstance(x, (int, float)):
        return complex(x)
    if isinstance(x, dict) and set(x) <= {"re", "im"}:
        return complex(x.get("re", 0.0), x.get("im", 0.0))
    if isinstance(x, (list, tuple)) and len(x) == 2:
        return complex(float(x[0]), float(x[1]))
    raise InvalidArgument(f"{name} must be a number, [re, im] or {{re, im}}, got {x!r}")


@dataclass(frozen=True)
class Sweep:
    param: str
    start: float
    stop: float
    steps: int

    def __post_init__(self):
        if self.param not in SWEEPABLE:
            raise InvalidArgument(f"cannot sweep {self.param!r}; choose from {SWEEPABLE}")
        if int(self.steps) < 1:
            raise InvalidArgument("sweep steps must be >= 1")

    def values(self):
        if self.steps == 1:
            return np.array([self.start])
        return np.linspace(self.start, self.stop, int(self.steps))

    @classmethod
    def from_dict(cls, d):
        try:
            return cls(str(d["param"]), float(d["from"]), float(d["to"]), int(d["steps"]))
        except KeyError as exc:
            raise InvalidArgument(f"sweep is missing {exc.args[0]!r}") from exc


@dataclass(frozen=True)
class Scenario:
    family: str = "azimuthal"
    r: float = 0.0
    theta: float = 0.0
    v0: complex = 0.0
    topology: Topology = Topology.POL_POL
    m: float = 0.0
    w1: complex | None = None
    w2: complex | None = None
    hwp_in_b: bool = True
    pipeline: PipelineConfig | None = None
    sweep: Sweep | None = None

    def __post_init__(self):
        family(self.family)
        object.__setattr__(self, "topology", Topology(self.topology))
        if self.r < 0:
            raise InvalidArgument("r must be non-negative")
        if self.m < 0:
            raise InvalidArgument("m must be non-negative")

    @property
    def zeta0(self):
        return self.r * np.exp(1j * self.theta)

    def network(self):
        w = np.sqrt(self.m / 2)
        w1 = w if self.w1 is None else self.w1
        w2 = w if self.w2 is None else self.w2
        return MeasurementNetwork(self.topology, w1, w2, self.hwp_in_b)

    def state(self):
        return prepare_network(self.family, self.v0, self.zeta0, self.network())

    def with_param(self, name, value):
        if name not in SWEEPABLE:
            raise InvalidArgument(f"unknown parameter {name!r}")
        return replace(self, **{name: value})

    @classmethod
    def from_dict(cls, d):
        if not isinstance(d, dict):
            raise InvalidArgument("scenario must be a JSON object")
        net = d.get("network", {}) or {}
        pipe = d.get("pipeline")
        kwargs = dict(
            family=str(d.get("family", "azimuthal")),
            r=float(d.get("r", 0.0)),
            theta=float(d.get("theta", 0.0)),
            v0=_complex(d.get("v0", 0.0), "v0"),
            topology=net.get("topology", "PolPol"),
            m=float(net.get("m", 0.0)),
            hwp_in_b=bool(net.get("hwp_in_b", True)),
        )
        for key in ("w1", "w2"):
            if key in net:
                kwargs[key] = _complex(net[key], key)
        if pipe is not None:
            kwargs["pipeline"] = PipelineConfig(
                input_squeezing_db=float(pipe.get("input_db", -4.3)),
                eta_conversion=float(pipe.get("eta_conversion", 1.0)),
                eta_reflection=float(pipe.get("eta_reflection", 1.0)),
                extra_eta=float(pipe.get("extra_eta", 1.0)),
                measured_output_db=(
                    float(pipe["measured_db"]) if "measured_db" in pipe else None
                ),
            )
        if d.get("sweep") is not None:
            kwargs["sweep"] = Sweep.from_dict(d["sweep"])
        try:
            return cls(**kwargs)
        except ValueError as exc:
            raise InvalidArgument(str(exc)) from exc


def load_scenario(path):
    """Read a scenario JSON file.

    Raises:
        InvalidArgument: unreadable file, malformed JSON or bad fields.
    """
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InvalidArgument(f"cannot read scenario {path}: {exc.strerror}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidArgument(f"{path}: invalid JSON ({exc.msg})") from exc
    return Scenario.from_dict(data)
