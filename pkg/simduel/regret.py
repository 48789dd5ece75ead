##########################################################################
#
# Ground-truth Borda regret of a run, computed by the simulator and never
# visible to the policies.
#
# The best item is only known after the last round, because it is the
# item with the largest Borda score summed over all rounds. The trace
# therefore accumulates the per-item score sums and the scores of the
# played pairs online, and resolves the regret when it is finalized.
# Only the checkpoint rounds are stored, so memory does not grow with T.
#
##########################################################################
# SimDuel - Simple dueling-bandit simulations for Python.
# See README.md for instructions and LICENSE.txt for license details.
##########################################################################

import math

import numpy as np
import pandas as pd

from simduel.exceptions import HorizonError, IncompleteTrace, ParamError
from simduel.names import ROUND, ITEM_X, ITEM_Y, OUTCOME
from simduel.names import REGRET_ROUND, REGRET, REGRET_SHIFTED
from simduel.names import TRACE_COLUMNS, DIAG_PREFIX
from simduel.preferences import hindsight_best
from simduel.utils import CompensatedSum, _check_item

##########################################################################

class RegretResult:
    """
    Finalized and immutable regret of one run.

    :ivar k: Integer with the number of items K.
    :ivar horizon: Integer with the number of rounds T.
    :ivar regret: Float with the Borda regret R_T.
    :ivar regret_shifted: Float with the shifted Borda regret.
    :ivar i_star: Integer with the 0-based hindsight winner.
    :ivar checkpoints: Pandas DataFrame with one row per checkpoint round
        and the columns `t,x,y,o,r_t,R_t,R_s_t[,diag_*]` (items 1-based).
    :ivar cumulative_borda: NumPy array with the Borda scores summed
        over all rounds.
    :ivar seed: Integer with the seed of the run, or `None`.
    :ivar snapshot: Dict with the final policy state, or `None`.
    :ivar env_params: Dict with the resolved environment parameters.
    :ivar policy_params: Dict with the resolved policy parameters.
    """

    def __init__(self, k, horizon, regret, regret_shifted, i_star,
                 checkpoints, cumulative_borda, seed=None, snapshot=None,
                 env_params=None, policy_params=None):
        self.k = k
        self.horizon = horizon
        self.regret = regret
        self.regret_shifted = regret_shifted
        self.i_star = i_star
        self.checkpoints = checkpoints
        self.cumulative_borda = cumulative_borda
        self.seed = seed
        self.snapshot = snapshot
        self.env_params = env_params if env_params is not None else {}
        self.policy_params = policy_params if policy_params is not None else {}

    def __repr__(self):
        msg = 'RegretResult(seed={0}, horizon={1}, regret={2:.6g}, i_star={3})'
        return msg.format(self.seed, self.horizon, self.regret, self.i_star + 1)

##########################################################################

class RegretTrace:
    """
    Online bookkeeping of the Borda regret for one run. Record every round
    with :obj:`record_round` and call :obj:`finalize` after round T.

    The regret against item i over the rounds 1, ..., t is:

        sum_s b_s(i) - sum_s (b_s(x_s) + b_s(y_s)) / 2

    so it is enough to keep the per-item sums of the Borda scores and the
    sum of the played pairs' scores, and the same for the shifted scores.
    All sums use compensated summation.
    """

    def __init__(self, k, horizon, checkpoints=None):
        """
        :param k:
            Integer with the number of items K.

        :param horizon:
            Integer with the number of rounds T >= 1.

        :param checkpoints:
            Optional array-like with the 1-based rounds that are stored
            for the output. If `None` then no rounds are stored.

        :raises ParamError: If T < 1 or a checkpoint is outside [1, T].
        """
        if horizon < 1:
            raise ParamError('horizon must be >= 1, got {0}'.format(horizon))

        if checkpoints is None:
            checkpoints = []

        checkpoints = np.unique(np.asarray(checkpoints, dtype=np.int64))
        if len(checkpoints) > 0 and (checkpoints[0] < 1 or checkpoints[-1] > horizon):
            msg = 'checkpoints must be in [1, {0}], got {1}'
            raise ParamError(msg.format(horizon, checkpoints))

        self.k = k
        self.horizon = horizon

        # Number of rounds recorded so far.
        self.t = 0

        self._checkpoints = set(checkpoints.tolist())

        self._cum_borda = CompensatedSum(shape=k)
        self._cum_shifted = CompensatedSum(shape=k)
        self._pair_borda = CompensatedSum()
        self._pair_shifted = CompensatedSum()

        # Run of consecutive rounds with the same score vectors, which are
        # added to the per-item sums once for the whole run.
        self._run_borda = None
        self._run_shifted = None
        self._run_b = None
        self._run_s = None
        self._run_count = 0

        # One dict per checkpoint round.
        self._records = []

    def record_round(self, borda, shifted, x, y, o, diagnostics=None):
        """
        Record one round.

        :param borda: `ScoreVector` with the Borda scores of the round.
        :param shifted: `ScoreVector` with the shifted Borda scores.
        :param x: Integer with the 0-based first item.
        :param y: Integer with the 0-based second item.
        :param o: Integer 1 if x won, otherwise 0.
        :param diagnostics:
            Optional function returning a dict of numbers, which is only
            called in checkpoint rounds, e.g. `policy.diagnostics`.
        :raises HorizonError: If T rounds have already been recorded.
        :return: `None`
        """
        if self.t >= self.horizon:
            msg = 'cannot record round {0} past the horizon T={1}'
            raise HorizonError(msg.format(self.t + 1, self.horizon))

        k = self.k
        if not (0 <= x < k and 0 <= y < k):
            _check_item(x, k, name='x')
            _check_item(y, k, name='y')

        if borda is not self._run_borda or shifted is not self._run_shifted:
            self._flush_run()
            self._run_borda = borda
            self._run_shifted = shifted
            self._run_b = borda.values.tolist()
            self._run_s = shifted.values.tolist()

        self._run_count += 1

        b = self._run_b
        s = self._run_s
        pair_b = 0.5 * (b[x] + b[y])
        pair_s = 0.5 * (s[x] + s[y])

        self._pair_borda.add(pair_b)
        self._pair_shifted.add(pair_s)

        self.t += 1

        if self.t in self._checkpoints:
            self._flush_run()
            record = {'t': self.t, 'x': x, 'y': y, 'o': o,
                      'borda': borda.values.copy(),
                      'pair_borda': pair_b,
                      'cum_borda': self._cum_borda.value(),
                      'cum_shifted': self._cum_shifted.value(),
                      'pair_borda_sum': self._pair_borda.value(),
                      'pair_shifted_sum': self._pair_shifted.value(),
                      'diag': diagnostics() if diagnostics is not None else {}}
            self._records.append(record)

    def _flush_run(self):
        """
        Add the scores of the current run of rounds to the per-item sums.
        """
        n = self._run_count
        if n > 0:
            self._cum_borda.add(n * self._run_borda.values)
            self._cum_shifted.add(n * self._run_shifted.values)
            self._run_count = 0

    def finalize(self, seed=None, snapshot=None, env_params=None,
                 policy_params=None):
        """
        Resolve the hindsight winner and the regret of all checkpoints.

        :param seed: Optional integer with the seed, stored in the result.
        :param snapshot: Optional dict with the final policy state.
        :param env_params: Optional dict with resolved environment parameters.
        :param policy_params: Optional dict with resolved policy parameters.
        :raises IncompleteTrace: If not exactly T rounds were recorded.
        :return: `RegretResult`
        """
        if self.t != self.horizon:
            msg = 'trace has {0} rounds but the horizon is T={1}'
            raise IncompleteTrace(msg.format(self.t, self.horizon))

        self._flush_run()

        cum_borda = self._cum_borda.value()
        cum_shifted = self._cum_shifted.value()
        i_star = hindsight_best(cum_borda)

        regret = float(cum_borda[i_star] - self._pair_borda.value())
        regret_shifted = float(cum_shifted[i_star] - self._pair_shifted.value())

        # Borda and shifted scores are affine in each other.
        scale = self.k / (self.k - 1)
        assert math.isclose(regret, scale * regret_shifted,
                            rel_tol=1e-9, abs_tol=1e-9), \
            'R_T={0} and K/(K-1) R_s_T={1} differ'.format(regret, scale * regret_shifted)

        checkpoints = self._checkpoint_frame(i_star=i_star)

        return RegretResult(k=self.k, horizon=self.horizon, regret=regret,
                            regret_shifted=regret_shifted, i_star=i_star,
                            checkpoints=checkpoints,
                            cumulative_borda=cum_borda, seed=seed,
                            snapshot=snapshot, env_params=env_params,
                            policy_params=policy_params)

    def _checkpoint_frame(self, i_star):
        """
        Create the DataFrame with the regret at the checkpoint rounds.
        """
        rows = []
        for rec in self._records:
            row = {ROUND: rec['t'],
                   ITEM_X: rec['x'] + 1,
                   ITEM_Y: rec['y'] + 1,
                   OUTCOME: rec['o'],
                   REGRET_ROUND: float(rec['borda'][i_star] - rec['pair_borda']),
                   REGRET: float(rec['cum_borda'][i_star] - rec['pair_borda_sum']),
                   REGRET_SHIFTED: float(rec['cum_shifted'][i_star] - rec['pair_shifted_sum'])}

            for name, value in rec['diag'].items():
                row[DIAG_PREFIX + name] = value

            rows.append(row)

        if len(rows) == 0:
            return pd.DataFrame(columns=TRACE_COLUMNS)

        return pd.DataFrame(rows)

##########################################################################
