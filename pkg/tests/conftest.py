import numpy as np
import pytest

from cvstokes.networks import MeasurementNetwork, Topology, prepare_network


@pytest.fixture
def rng():
    return np.random.default_rng(20261016)


def network_state(r, n, m, topology=Topology.POL_POL, fam="azimuthal", theta=0.0):
    """Network output for v0 = sqrt(n) and equal coherent beams w = sqrt(m/2)."""
    net = MeasurementNetwork.symmetric(topology, m)
    return prepare_network(fam, np.sqrt(n), r * np.exp(1j * theta), net)
