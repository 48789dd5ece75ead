##########################################################################
#
# Unit tests (pytest) for regret.py
#
##########################################################################
# SimDuel - Simple dueling-bandit simulations for Python.
# See README.md for instructions and LICENSE.txt for license details.
##########################################################################

import numpy as np
import pandas as pd
import pytest
from hypothesis import given, settings, strategies as st

import simduel as sd
from simduel.exceptions import HorizonError, IncompleteTrace, ParamError
from simduel.names import TRACE_COLUMNS

from tests.oracles import reference_borda
from tests.test_preferences import valid_matrices

##########################################################################
# Helper functions.

M_FIRST = sd.validate_matrix([[0.5, 0.7], [0.3, 0.5]])
M_SECOND = sd.validate_matrix([[0.5, 0.2], [0.8, 0.5]])


def _run(matrices, pairs, checkpoints=None, diagnostics=None):
    """
    Record a sequence of rounds and return the finalized result.
    """
    trace = sd.RegretTrace(k=matrices[0].k, horizon=len(matrices),
                           checkpoints=checkpoints)

    for m, (x, y) in zip(matrices, pairs):
        trace.record_round(sd.borda_scores(m), sd.shifted_scores(m),
                           x=x, y=y, o=1, diagnostics=diagnostics)

    return trace.finalize(seed=0)

##########################################################################
# Test functions.

def test_regret_stationary():
    """Test the regret of always playing the worse item."""
    result = _run([M_FIRST] * 3, [(1, 1)] * 3, checkpoints=[1, 2, 3])

    assert result.i_star == 0
    assert result.regret == pytest.approx(1.2)
    assert result.regret_shifted == pytest.approx(0.6)

    df = result.checkpoints
    np.testing.assert_allclose(df['R_t'], [0.4, 0.8, 1.2])
    np.testing.assert_allclose(df['r_t'], 0.4)
    np.testing.assert_allclose(df['R_s_t'], [0.2, 0.4, 0.6])

    # Items are 1-based in the output.
    np.testing.assert_array_equal(df['x'], 2)
    np.testing.assert_array_equal(df['y'], 2)


def test_regret_best_item_is_zero():
    """Test always playing the hindsight winner gives zero regret."""
    result = _run([M_FIRST] * 5, [(0, 0)] * 5)
    assert result.regret == 0.0
    assert result.regret_shifted == 0.0


def test_regret_hindsight_winner():
    """Test the winner is resolved from the scores summed over all rounds."""
    matrices = [M_FIRST, M_FIRST, M_SECOND]

    result = _run(matrices, [(1, 1)] * 3, checkpoints=[1, 2, 3])
    np.testing.assert_allclose(result.cumulative_borda, [1.6, 1.4])
    assert result.i_star == 0
    assert result.regret == pytest.approx(0.2)

    # The regret of a single round can be negative.
    df = result.checkpoints
    assert df['r_t'].iloc[-1] == pytest.approx(-0.6)

    # Playing the winner of the last round only.
    result = _run(matrices, [(0, 0), (0, 0), (0, 0)])
    assert result.regret == pytest.approx(0.0)


def test_regret_tie():
    """Test ties in the summed scores are broken by the lowest index."""
    m_sym = sd.symmetric_instance(k=3)
    result = _run([m_sym] * 4, [(2, 1)] * 4)

    assert result.i_star == 0
    assert result.regret == pytest.approx(0.0)


def test_checkpoint_frame():
    """Test the checkpoint rounds and the diagnostics columns."""
    counter = iter(range(100))

    def _diag():
        return {'q_min': 0.1, 'calls': next(counter)}

    result = _run([M_FIRST] * 10, [(0, 1)] * 10, checkpoints=[2, 5, 10],
                  diagnostics=_diag)
    df = result.checkpoints

    assert list(df['t']) == [2, 5, 10]
    assert list(df.columns) == TRACE_COLUMNS + ['diag_q_min', 'diag_calls']

    # Only called in the checkpoint rounds.
    assert list(df['diag_calls']) == [0, 1, 2]

    np.testing.assert_allclose(df['R_t'], 0.2 * df['t'])


def test_checkpoint_frame_empty():
    """Test a trace without checkpoints has a header-only DataFrame."""
    result = _run([M_FIRST] * 3, [(0, 1)] * 3)

    assert isinstance(result.checkpoints, pd.DataFrame)
    assert len(result.checkpoints) == 0
    assert list(result.checkpoints.columns) == TRACE_COLUMNS


def test_trace_errors():
    """Test the errors of RegretTrace."""
    with pytest.raises(ParamError):
        sd.RegretTrace(k=2, horizon=0)

    with pytest.raises(ParamError):
        sd.RegretTrace(k=2, horizon=10, checkpoints=[0, 5])

    with pytest.raises(ParamError):
        sd.RegretTrace(k=2, horizon=10, checkpoints=[5, 11])

    b = sd.borda_scores(M_FIRST)
    s = sd.shifted_scores(M_FIRST)

    trace = sd.RegretTrace(k=2, horizon=2)
    trace.record_round(b, s, x=0, y=1, o=1)

    with pytest.raises(IncompleteTrace):
        trace.finalize()

    with pytest.raises(IndexError):
        trace.record_round(b, s, x=2, y=1, o=1)

    trace.record_round(b, s, x=0, y=1, o=1)

    with pytest.raises(HorizonError):
        trace.record_round(b, s, x=0, y=1, o=1)

    assert trace.finalize().regret == pytest.approx(0.4)


def test_regret_long_run():
    """Test the compensated sums stay accurate over many rounds."""
    horizon = 10 ** 5
    trace = sd.RegretTrace(k=2, horizon=horizon, checkpoints=[horizon])
    b = sd.borda_scores(M_FIRST)
    s = sd.shifted_scores(M_FIRST)

    for _ in range(horizon):
        trace.record_round(b, s, x=0, y=1, o=0)

    result = trace.finalize()
    assert result.regret == pytest.approx(0.2 * horizon, rel=1e-12)
    assert result.checkpoints['R_t'].iloc[0] == pytest.approx(0.2 * horizon, rel=1e-12)


def test_regret_repeated_scores():
    """Test runs of rounds with the same score vectors are summed correctly."""
    b1, s1 = sd.borda_scores(M_FIRST), sd.shifted_scores(M_FIRST)
    b2, s2 = sd.borda_scores(M_SECOND), sd.shifted_scores(M_SECOND)

    # Runs of length 1, 3 and 2 with checkpoints inside the runs.
    rounds = [(b1, s1), (b2, s2), (b2, s2), (b2, s2), (b1, s1), (b1, s1)]
    pairs = [(0, 1), (0, 0), (1, 1), (0, 1), (1, 1), (0, 0)]

    trace = sd.RegretTrace(k=2, horizon=len(rounds), checkpoints=[3, 6])
    for (b, s), (x, y) in zip(rounds, pairs):
        trace.record_round(b, s, x=x, y=y, o=1)
    result = trace.finalize()

    # Same rounds with new score vectors in every round.
    matrices = [M_FIRST, M_SECOND, M_SECOND, M_SECOND, M_FIRST, M_FIRST]
    expected = _run(matrices, pairs, checkpoints=[3, 6])

    assert result.i_star == expected.i_star
    assert result.regret == pytest.approx(expected.regret, abs=1e-12)
    assert result.regret_shifted == pytest.approx(expected.regret_shifted,
                                                  abs=1e-12)
    np.testing.assert_allclose(result.checkpoints['R_t'],
                               expected.checkpoints['R_t'], atol=1e-12)

##########################################################################
# Property tests.

@settings(max_examples=1000, deadline=None)
@given(st.lists(valid_matrices(max_k=4), min_size=1, max_size=10), st.data())
def test_regret_matches_reference(matrices, data):
    """
    Test the regret agrees with a loop-based computation and the Borda
    and shifted regret satisfy R_T = K/(K-1) R_s_T.
    """
    # Use the first matrix's K for every round.
    k = matrices[0].k
    matrices = [m for m in matrices if m.k == k]
    horizon = len(matrices)

    item = st.integers(min_value=0, max_value=k - 1)
    pairs = [(data.draw(item), data.draw(item)) for _ in range(horizon)]

    result = _run(matrices, pairs, checkpoints=[horizon])

    scores = [reference_borda(m) for m in matrices]
    totals = [sum(b[i] for b in scores) for i in range(k)]
    i_star = totals.index(max(totals))
    pair_total = sum(0.5 * (b[x] + b[y]) for b, (x, y) in zip(scores, pairs))

    assert result.i_star == i_star or \
        totals[result.i_star] == pytest.approx(totals[i_star], abs=1e-12)
    assert result.regret == pytest.approx(totals[i_star] - pair_total, abs=1e-9)
    assert result.regret == pytest.approx(k / (k - 1) * result.regret_shifted,
                                          rel=1e-9, abs=1e-9)
    assert result.checkpoints['R_t'].iloc[-1] == pytest.approx(result.regret)

##########################################################################
