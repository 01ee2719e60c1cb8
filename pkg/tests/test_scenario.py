import json

import numpy as np
import pytest

from cvstokes.errors import InvalidArgument
from cvstokes.networks import Topology
from cvstokes.scenario import Scenario, Sweep, load_scenario


def _write(tmp_path, data):
    p = tmp_path / "s.json"
    p.write_text(json.dumps(data) if not isinstance(data, str) else data)
    return p


def test_full_scenario(tmp_path):
    sc = load_scenario(_write(tmp_path, {
        "family": "radial", "r": 0.5, "theta": 0.1, "v0": [1.0, 0.5],
        "network": {"topology": "SpaPol", "m": 4, "w2": {"re": 0, "im": 1}},
        "pipeline": {"input_db": -4.3, "eta_conversion": 0.7, "eta_reflection": 0.7},
        "sweep": {"param": "m", "from": 1, "to": 2, "steps": 3},
    }))
    assert sc.family == "radial" and sc.topology is Topology.SPA_POL
    assert sc.v0 == 1 + 0.5j and sc.zeta0 == pytest.approx(0.5 * np.exp(0.1j))
    net = sc.network()
    assert net.w1 == pytest.approx(np.sqrt(2)) and net.w2 == 1j
    assert sc.pipeline.eta_total == pytest.approx(0.49)
    assert list(sc.sweep.values()) == [1.0, 1.5, 2.0]
    assert sc.state().n_modes == 4


def test_defaults():
    sc = Scenario.from_dict({})
    assert sc.family == "azimuthal" and sc.r == 0 and sc.pipeline is None


@pytest.mark.parametrize("data", [
    "{not json",
    "[1, 2]",
    {"family": "helical"},
    {"r": -1},
    {"v0": "big"},
    {"network": {"topology": "PolFoo"}},
    {"network": {"m": -2}},
    {"sweep": {"param": "eta", "from": 0, "to": 1, "steps": 3}},
    {"sweep": {"param": "r", "from": 0, "steps": 3}},
    {"sweep": {"param": "r", "from": 0, "to": 1, "steps": 0}},
])
def test_invalid_scenarios(tmp_path, data):
    with pytest.raises(InvalidArgument):
        load_scenario(_write(tmp_path, data))


def test_missing_file(tmp_path):
    with pytest.raises(InvalidArgument):
        load_scenario(tmp_path / "nope.json")


def test_with_param():
    sc = Scenario(r=0.1).with_param("r", 0.9)
    assert sc.r == 0.9
    with pytest.raises(InvalidArgument):
        sc.with_param("family", "radial")


def test_single_step_sweep():
    assert list(Sweep("r", 0.3, 9.0, 1).values()) == [0.3]
