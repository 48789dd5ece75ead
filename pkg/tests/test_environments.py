##########################################################################
#
# Unit tests (pytest) for environments.py
#
##########################################################################
# SimDuel - Simple dueling-bandit simulations for Python.
# See README.md for instructions and LICENSE.txt for license details.
##########################################################################

import json

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import simduel as sd
from simduel.exceptions import ParamError, HorizonError, GapViolation
from simduel.exceptions import ParseError, ValidationError
from simduel.utils import make_rng

##########################################################################
# Test configuration.

sd.set_verbose(False)

##########################################################################
# Test functions.

def test_stationary_env():
    """Test a constant sequence returns the same matrix in every round."""
    m = sd.lower_bound_instance(k=4, epsilon=0.05)
    stream = sd.stationary_env(m, horizon=100)

    assert stream.matrix_at(1) == m
    assert stream.matrix_at(100) == m
    assert stream.k == 4

    with pytest.raises(HorizonError):
        stream.matrix_at(101)

    with pytest.raises(HorizonError):
        stream.matrix_at(0)

    stream = sd.stationary_env(sd.symmetric_instance(k=3), horizon=10)
    for t, m in stream.matrices():
        np.testing.assert_array_equal(m.p, 0.5)


def test_lower_bound_instance():
    """Test the shifted scores of the block-structured instances."""
    m = sd.lower_bound_instance(k=4, epsilon=0.07, m=0)
    np.testing.assert_allclose(sd.shifted_scores(m).values, [0.7, 0.7, 0.3, 0.3])

    m = sd.lower_bound_instance(k=4, epsilon=0.05, m=1)
    s = sd.shifted_scores(m).values
    assert s[0] == pytest.approx(0.725)
    assert s[2] == pytest.approx(0.2875)
    assert s[3] == pytest.approx(0.2875)
    assert int(np.argmax(s)) == 0

    # The perturbed item is the unique best for every m.
    for m_item in range(1, 6):
        m = sd.lower_bound_instance(k=10, epsilon=0.1, m=m_item)
        s = sd.shifted_scores(m).values
        assert int(np.argmax(s)) == m_item - 1
        assert np.sum(s == s.max()) == 1


def test_lower_bound_instance_errors():
    """Test invalid arguments for lower_bound_instance()"""
    with pytest.raises(ParamError):
        sd.lower_bound_instance(k=5, epsilon=0.05)

    with pytest.raises(ParamError):
        sd.lower_bound_instance(k=2, epsilon=0.05)

    with pytest.raises(ParamError):
        sd.lower_bound_instance(k=4, epsilon=0.2)

    with pytest.raises(ParamError):
        sd.lower_bound_instance(k=4, epsilon=0.0)

    with pytest.raises(ParamError):
        sd.lower_bound_instance(k=4, epsilon=0.05, m=3)


def test_tuned_epsilon():
    """Test the perturbation tuned to the horizon."""
    assert sd.tuned_epsilon(k=8, horizon=8000) == pytest.approx(0.1)
    assert sd.tuned_epsilon(k=4, horizon=4) == 0.1
    assert sd.tuned_epsilon(k=10, horizon=10 ** 7) == pytest.approx(0.01)

    with pytest.raises(ParamError):
        sd.tuned_epsilon(k=10, horizon=5)


def test_hidden_best_env():
    """Test the hidden best item is drawn reproducibly from the good block."""
    items = set()

    for seed in range(40):
        stream = sd.hidden_best_env(k=6, epsilon=0.05, horizon=10, seed=seed)
        m = stream.params['m']
        assert 1 <= m <= 3
        items.add(m)

        b = sd.borda_scores(stream.matrix_at(1)).values
        assert int(np.argmax(b)) == m - 1

        again = sd.hidden_best_env(k=6, epsilon=0.05, horizon=10, seed=seed)
        assert again.params['m'] == m

    # Every good item is drawn for some seed.
    assert items == {1, 2, 3}


def test_adv_borda_env():
    """Test the adversarial hard instance uses the tuned epsilon."""
    stream = sd.adv_borda_env(k=8, horizon=8000, seed=3)
    assert stream.label == 'adv-borda'
    assert stream.params['epsilon'] == pytest.approx(0.1)

    stream = sd.adv_borda_env(k=10, horizon=10 ** 7, seed=3)
    assert stream.params['epsilon'] == pytest.approx(0.01)


def test_random_instance():
    """Test random instances are valid and reproducible."""
    m1 = sd.random_instance(k=6, seed=11)
    m2 = sd.random_instance(k=6, seed=11)
    m3 = sd.random_instance(k=6, seed=12)

    assert m1 == m2
    assert m1 != m3
    assert m1.k == 6


def test_check_fixed_gap():
    """Test the fixed-gap certificate on constant sequences."""
    stream = sd.stationary_env(sd.lower_bound_instance(k=4, epsilon=0.05), horizon=50)
    cert = sd.check_fixed_gap(stream, i_star=0, delta=0.01)
    assert not cert.valid
    assert cert.min_observed_gap == pytest.approx(0.0)
    assert cert.first_violation == 1

    m = sd.lower_bound_instance(k=4, epsilon=0.05, m=1)
    stream = sd.stationary_env(m, horizon=50)
    cert = sd.check_fixed_gap(stream, i_star=0, delta=0.02)
    assert cert.valid
    assert cert.min_observed_gap == pytest.approx(0.05 * 2 / 3)
    assert cert.verified_through == 50
    assert cert.first_violation is None

    # Delta 0 is valid for the weak maximizer.
    stream = sd.stationary_env(sd.symmetric_instance(k=3), horizon=20)
    assert sd.check_fixed_gap(stream, i_star=0, delta=0.0).valid

    d = cert.to_dict()
    assert d['i_star'] == 1
    assert d['valid'] is True


def test_fixed_gap_env_stationary():
    """Test a fixed-gap sequence without noise has the gap 2 delta."""
    stream, cert = sd.fixed_gap_env(k=5, delta=0.1, horizon=100,
                                    perturbation_scale=0.0, seed=0)
    assert cert.valid
    assert cert.min_observed_gap == pytest.approx(0.2)
    assert stream.matrix_at(1) is stream.matrix_at(100)


def test_fixed_gap_env_drifting():
    """Test a drifting fixed-gap sequence is valid and reproducible."""
    stream, cert = sd.fixed_gap_env(k=5, delta=0.1, horizon=3000,
                                    perturbation_scale=0.05, seed=7)
    assert cert.valid
    assert cert.min_observed_gap >= 0.1

    # The matrices drift.
    assert stream.matrix_at(1) != stream.matrix_at(2)

    # Any round can be regenerated, in any order.
    again, _ = sd.fixed_gap_env(k=5, delta=0.1, horizon=3000,
                                perturbation_scale=0.05, seed=7)
    for t in [2500, 3, 1025, 1024, 1]:
        assert again.matrix_at(t) == stream.matrix_at(t)
        assert stream.matrix_at(t) == stream.matrix_at(t)

    # Entries stay inside the clamp.
    for t in range(1, 3001, 97):
        p = stream.matrix_at(t).p
        off = p[~np.eye(5, dtype=bool)]
        assert off.min() >= 0.02 - 1e-15
        assert off.max() <= 0.98 + 1e-15


def test_round_at():
    """Test round_at() returns the matrix of the round with its scores."""
    m = sd.lower_bound_instance(k=4, epsilon=0.05)
    stream = sd.stationary_env(m, horizon=10)

    # Constant sequences reuse the scores of the previous round.
    first = stream.round_at(1)
    assert stream.round_at(2) is first
    assert first[0] == m
    np.testing.assert_array_equal(first[1].values, sd.borda_scores(m).values)

    stream, _ = sd.fixed_gap_env(k=4, delta=0.1, horizon=3000,
                                 perturbation_scale=0.05, seed=3)
    again, _ = sd.fixed_gap_env(k=4, delta=0.1, horizon=3000,
                                perturbation_scale=0.05, seed=3)

    # Rounds in different noise blocks, in any order.
    for t in [1, 2000, 2, 1025, 2000, 1]:
        m, borda, shifted = stream.round_at(t)
        assert m == again.matrix_at(t)
        np.testing.assert_array_equal(borda.values, sd.borda_scores(m).values)
        np.testing.assert_array_equal(shifted.values,
                                      sd.shifted_scores(m).values)


def test_fixed_gap_env_violation():
    """Test a large perturbation breaks the certificate."""
    with pytest.raises(GapViolation) as e:
        sd.fixed_gap_env(k=5, delta=0.3, horizon=5000,
                         perturbation_scale=1.0, seed=0)

    assert e.value.round is not None
    assert 1 <= e.value.round <= 5000


def test_fixed_gap_env_errors():
    """Test invalid arguments for fixed_gap_env()"""
    with pytest.raises(ParamError):
        sd.fixed_gap_env(k=5, delta=0.6, horizon=10, perturbation_scale=0.0, seed=0)

    with pytest.raises(ParamError):
        sd.fixed_gap_env(k=5, delta=0.1, horizon=10, perturbation_scale=-0.1, seed=0)

    # Base matrix above the clamp.
    with pytest.raises(ParamError):
        sd.fixed_gap_env(k=2, delta=0.49, horizon=10, perturbation_scale=0.0, seed=0)


def test_env_from_file(tmp_path):
    """Test sequence-files are replayed round by round."""
    m1 = sd.validate_matrix([[0.5, 0.7], [0.3, 0.5]])
    m2 = sd.validate_matrix([[0.5, 0.2], [0.8, 0.5]])
    m3 = sd.validate_matrix([[0.5, 0.5], [0.5, 0.5]])

    path = tmp_path / 'seq.json'
    sd.save_sequence(str(path), [m1, m2, m3])

    stream = sd.env_from_file(str(path), horizon=3)
    assert [stream.matrix_at(t) for t in (1, 2, 3)] == [m1, m2, m3]

    with pytest.raises(HorizonError):
        sd.env_from_file(str(path), horizon=4)

    sd.save_sequence(str(path), [m1, m2], cycle=True)
    stream = sd.env_from_file(str(path), horizon=5)
    assert [stream.matrix_at(t) for t in range(1, 6)] == [m1, m2, m1, m2, m1]


def test_env_from_file_errors(tmp_path):
    """Test invalid sequence-files."""
    path = tmp_path / 'bad.json'
    data = {'k': 2, 'cycle': False,
            'matrices': [[[0.5, 0.7], [0.3, 0.5]],
                         {'k': 2, 'p': [[0.5, 0.7], [0.4, 0.5]]},
                         [[0.5, 0.7], [0.3, 0.5]]]}
    path.write_text(json.dumps(data))

    with pytest.raises(ValidationError) as e:
        sd.env_from_file(str(path), horizon=3)
    assert e.value.round == 2

    path.write_text('{"k": 2, "matrices": [')
    with pytest.raises(ParseError):
        sd.env_from_file(str(path), horizon=1)

    path.write_text('{"k": 2, "matrices": []}')
    with pytest.raises(ParseError):
        sd.env_from_file(str(path), horizon=1)

    # Invalid UTF-8.
    path.write_bytes(b'\xff\xfe{"matrices": []}')
    with pytest.raises(ParseError):
        sd.env_from_file(str(path), horizon=1)

    # Missing file.
    with pytest.raises(ParseError):
        sd.env_from_file(str(tmp_path / 'missing.json'), horizon=1)

    # "cycle" must be a JSON boolean.
    data = {'k': 2, 'cycle': 'false', 'matrices': [[[0.5, 0.7], [0.3, 0.5]]]}
    path.write_text(json.dumps(data))
    with pytest.raises(ParseError):
        sd.env_from_file(str(path), horizon=3)

    data['cycle'] = 1
    path.write_text(json.dumps(data))
    with pytest.raises(ParseError):
        sd.env_from_file(str(path), horizon=3)


def test_sample_feedback():
    """Test duel outcomes for degenerate and typical probabilities."""
    m = sd.validate_matrix([[0.5, 1.0, 0.9], [0.0, 0.5, 0.5], [0.1, 0.5, 0.5]])
    rng = make_rng(0)

    assert all(sd.sample_feedback(m, 0, 1, rng) == 1 for _ in range(1000))
    assert all(sd.sample_feedback(m, 1, 0, rng) == 0 for _ in range(1000))

    with pytest.raises(IndexError):
        sd.sample_feedback(m, 3, 0, rng)


@pytest.mark.slow
def test_sample_feedback_mean():
    """Test the empirical win-rate of a duel with probability 0.9"""
    m = sd.validate_matrix([[0.5, 0.9], [0.1, 0.5]])
    rng = make_rng(1)
    n = 10 ** 6

    wins = sum(sd.sample_feedback(m, 0, 1, rng) for _ in range(n))
    assert abs(wins / n - 0.9) <= 0.001

##########################################################################
# Property tests.

@settings(max_examples=1000, deadline=None)
@given(st.integers(min_value=2, max_value=8),
       st.integers(min_value=0, max_value=2 ** 32),
       st.integers(min_value=1, max_value=200))
def test_stream_determinism(k, seed, t):
    """Test two streams with the same parameters give identical matrices."""
    delta = 0.05
    stream1, _ = sd.fixed_gap_env(k=k, delta=delta, horizon=200,
                                  perturbation_scale=delta / 2, seed=seed)
    stream2, _ = sd.fixed_gap_env(k=k, delta=delta, horizon=200,
                                  perturbation_scale=delta / 2, seed=seed)
    assert stream1.matrix_at(t) == stream2.matrix_at(t)

    m1 = sd.random_instance(k=k, seed=seed)
    m2 = sd.random_instance(k=k, seed=seed)
    assert m1 == m2

##########################################################################
