import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cvstokes import gaussian as g
from cvstokes.criteria import (
    DOF_PAIRINGS,
    PAIRS,
    CriterionSpec,
    bright_limit,
    combinations,
    duan_simon,
    equal_intensity_value,
    scan_combinations,
)
from cvstokes.errors import AsymmetricNormalization, DegenerateNormalization, InvalidArgument
from cvstokes.networks import MeasurementNetwork, Topology, prepare_network
from cvstokes.stokes import ArmSpec, complex_covariance, expectation, stokes

from conftest import network_state


def test_combination_table_order():
    rows = combinations()
    assert len(rows) == 12
    assert [(c.sigma, c.rho) for c in rows[::4]] == list(PAIRS)
    assert [(c.dof_a, c.dof_b) for c in rows[:4]] == list(DOF_PAIRINGS)


def test_spec_validation():
    with pytest.raises(InvalidArgument):
        CriterionSpec.of(2, 1)
    with pytest.raises(InvalidArgument):
        CriterionSpec(1, 2, ArmSpec("b", "pol"), ArmSpec("a", "pol"))


def test_bright_limit_formula():
    assert bright_limit(0) == 1.0
    assert np.isclose(bright_limit(1.0), np.exp(-1) * np.cosh(1))
    assert bright_limit(10) == pytest.approx(0.5, abs=1e-8)
    with pytest.raises(InvalidArgument):
        bright_limit(-1)


def test_equal_intensity_formula():
    assert equal_intensity_value(1, 0) == pytest.approx(1.0, abs=1e-15)
    assert equal_intensity_value(10, 0.5) == pytest.approx(0.866022, abs=1e-6)
    with pytest.raises(InvalidArgument):
        equal_intensity_value(0, 0.5)


def test_normalization_imaginary_part_is_half_commutator():
    s = network_state(0.5, 1.0, 2.0)
    spec = CriterionSpec.of(2, 3)
    sa, ra = stokes(spec.arm_a, 2), stokes(spec.arm_a, 3)
    alpha = complex_covariance(sa, ra, s)
    # [S2, S3] = 2i S1, so Im alpha = <S1>
    assert np.isclose(alpha.imag, expectation(stokes(spec.arm_a, 1), s))
    res = duan_simon(s, spec)
    assert res.alpha == pytest.approx(alpha)


def test_vacuum_degenerate():
    with pytest.raises(DegenerateNormalization):
        duan_simon(g.vacuum(4), CriterionSpec.of(1, 2))
    rows = scan_combinations(g.vacuum(4))
    assert all(r.status == "degenerate" for r in rows)
    rec = rows[0].as_record()
    assert np.isnan(rec["value"]) and rec["violated"] is False


def test_asymmetric_arms_rejected():
    s = g.displace(g.vacuum(4), 0, 1.0)
    with pytest.raises(AsymmetricNormalization):
        duan_simon(s, CriterionSpec.of(2, 3))


@pytest.mark.parametrize("r", [0.5, 1.0])
def test_bright_configuration_approaches_limit(r):
    s = network_state(r, 1.0, 1e6)
    res = duan_simon(s, CriterionSpec.of(2, 3))
    assert abs(res.value - bright_limit(r)) < 1e-3
    assert res.violated


@pytest.mark.parametrize("n, r", [(10, 0.5), (1, 0.5), (2, 0.2), (5, 1.0)])
def test_equal_intensity_matches_network(n, r):
    s = network_state(r, n, n)
    res = duan_simon(s, CriterionSpec.of(1, 3))
    assert res.value == pytest.approx(equal_intensity_value(n, r), abs=1e-9)


def test_single_photon_equal_intensity_not_violated():
    res = duan_simon(network_state(0.5, 1, 1), CriterionSpec.of(1, 3))
    assert not res.violated and res.value == pytest.approx(1.082492, abs=1e-6)


@settings(max_examples=25, deadline=None)
@given(r=st.floats(0, 1.5), n=st.floats(0.1, 20), m=st.floats(0.1, 50),
       theta=st.floats(0, 2 * np.pi))
def test_dof_pairings_agree(r, n, m, theta):
    rows = scan_combinations(network_state(r, n, m, theta=theta))
    for k in range(0, 12, 4):
        block = rows[k : k + 4]
        statuses = {row.status for row in block}
        assert len(statuses) == 1
        if statuses == {"ok"}:
            vals = [row.result.value for row in block]
            assert max(vals) - min(vals) <= 1e-9 * max(1.0, abs(vals[0]))


@pytest.mark.parametrize("top", list(Topology))
def test_topologies_give_same_table(top):
    ref = scan_combinations(network_state(0.7, 2.0, 3.0))
    got = scan_combinations(network_state(0.7, 2.0, 3.0, topology=top))
    for a, b in zip(ref, got):
        assert a.status == b.status
        if a.result:
            assert a.result.value == pytest.approx(b.result.value, abs=1e-9)


def test_unsqueezed_boundary_per_configuration():
    # With r = 0 each Stokes pair reaches 1 in its aligned configuration.
    cases = {
        (2, 3): network_state(0.0, 0.0, 2.0),
        (1, 3): network_state(0.0, 1.0, 1.0),
    }
    w = np.exp(1j * np.pi / 2) * np.sqrt(0.5)
    cases[(1, 2)] = prepare_network(
        "azimuthal", 1.0, 0.0, MeasurementNetwork(Topology.POL_POL, w, w)
    )
    for (s, r), state in cases.items():
        for da, db in DOF_PAIRINGS:
            res = duan_simon(state, CriterionSpec.of(s, r, da, db))
            assert res.value == pytest.approx(1.0, abs=1e-9)
