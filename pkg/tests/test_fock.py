import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from cvstokes import gaussian as g
from cvstokes.errors import InvalidArgument, TruncationError
from cvstokes.fock import (
    OracleMoments,
    annihilator,
    oracle_expect,
    oracle_photon_number,
    oracle_prepare,
    oracle_variance,
)
from cvstokes.ops import BeamSplitter, Displace, PhaseShift, Relabel, Squeeze, TwoModeSqueeze, run_gaussian
from cvstokes.stokes import ArmSpec, QuadraticObservable, covariance, expectation, pair_stokes, stokes, variance


def test_empty_sequence_is_vacuum():
    st_ = oracle_prepare([], 2, 8)
    assert st_.leakage == 0
    assert st_.amps[0, 0] == 1 and np.isclose(st_.norm(), 1)


def test_annihilator_action():
    a = annihilator(5)
    e3 = np.zeros(5)
    e3[3] = 1
    assert np.allclose(a @ e3, np.sqrt(3) * np.eye(5)[2])


def test_coherent_photon_number():
    st_ = oracle_prepare([Displace(0, 0.5)], 1, 12)
    assert abs(oracle_photon_number(st_, 0) - 0.25) < 1e-6


def test_squeezed_photon_number():
    st_ = oracle_prepare([Squeeze(0, 0.3)], 1, 12)
    assert abs(oracle_photon_number(st_, 0) - np.sinh(0.3) ** 2) < 1e-6


def test_two_mode_squeezed_photon_numbers():
    st_ = oracle_prepare([TwoModeSqueeze(0, 1, 0.3)], 2, 14)
    assert abs(oracle_photon_number(st_, 0) - np.sinh(0.3) ** 2) < 1e-6
    assert abs(oracle_photon_number(st_, 1) - np.sinh(0.3) ** 2) < 1e-6


def test_truncation_guard():
    with pytest.raises(TruncationError) as info:
        oracle_prepare([Displace(0, 2.5)], 1, 8)
    assert info.value.leakage >= 1e-4


def test_relabel_must_be_permutation():
    with pytest.raises(InvalidArgument):
        oracle_prepare([Relabel((0, 0))], 2, 4)


def test_dimension_mismatch():
    st_ = oracle_prepare([], 2, 4)
    with pytest.raises(InvalidArgument):
        oracle_expect(QuadraticObservable(np.eye(3)), st_)


def test_single_coherent_stokes():
    st_ = oracle_prepare([Displace(0, 1.0)], 4, 12)
    spec = ArmSpec("a", "pol")
    assert abs(oracle_expect(stokes(spec, 1), st_) - 1.0) < 1e-6
    assert abs(oracle_variance(stokes(spec, 2), st_) - 1.0) < 1e-6


def test_vacuum_s0_zero():
    st_ = oracle_prepare([], 4, 6)
    assert oracle_expect(stokes(ArmSpec("a", "pol"), 0), st_) == 0


op_strategy = st.one_of(
    st.builds(Displace, st.integers(0, 2), st.complex_numbers(max_magnitude=0.5)),
    st.builds(Squeeze, st.integers(0, 2), st.complex_numbers(max_magnitude=0.3)),
    st.builds(
        TwoModeSqueeze, st.just(0), st.integers(1, 2), st.complex_numbers(max_magnitude=0.25)
    ),
    st.builds(BeamSplitter, st.just(1), st.just(2), st.floats(0, 1), st.floats(0, 6.2)),
    st.builds(PhaseShift, st.integers(0, 2), st.floats(-3, 3)),
    st.just(Relabel((2, 0, 1))),
)


@settings(max_examples=25, deadline=None)
@given(seq=st.lists(op_strategy, min_size=1, max_size=4))
def test_random_sequences_match_gaussian(seq):
    # Independent engines: truncated Fock exponentials vs symplectic moments.
    # Stay inside the guarded regime: total squeezing <= 0.4, total |v| <= 1.
    sq = sum(abs(op.zeta) for op in seq if isinstance(op, (Squeeze, TwoModeSqueeze)))
    dv = sum(abs(op.v) for op in seq if isinstance(op, Displace))
    assume(sq <= 0.4 and dv <= 1.0)
    try:
        fs = oracle_prepare(seq, 3, 12)
    except TruncationError:
        return
    gs = run_gaussian(seq, 3)
    om = OracleMoments(fs)
    obs = [QuadraticObservable(pair_stokes(i, j, k, 3)) for i, j in ((0, 1), (1, 2)) for k in range(4)]
    for q in obs:
        assert abs(expectation(q, gs) - om.expect(q)) < 1e-3
        assert abs(variance(q, gs) - om.variance(q)) < 1e-3
    assert abs(covariance(obs[1], obs[6], gs) - om.covariance(obs[1], obs[6])) < 1e-3


def test_truncation_convergence():
    seq = [Squeeze(0, 0.3), Displace(0, 0.5), BeamSplitter(0, 1, 0.5, 0.3), TwoModeSqueeze(1, 2, 0.2)]
    q = QuadraticObservable(pair_stokes(0, 1, 2, 3))
    v12 = OracleMoments(oracle_prepare(seq, 3, 12)).variance(q)
    v16 = OracleMoments(oracle_prepare(seq, 3, 16)).variance(q)
    assert abs(v12 - v16) < 1e-5


def test_state_stays_normalized():
    seq = [Squeeze(0, 0.2), BeamSplitter(0, 1, 0.3, 1.0), Displace(1, 0.4j)]
    fs = oracle_prepare(seq, 2, 12)
    assert abs(fs.norm() - 1) < 1e-9
    assert 0 <= fs.leakage < 1e-4
    gs = run_gaussian(seq, 2)
    assert g.physicality_check(gs)
