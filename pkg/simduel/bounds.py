##########################################################################
#
# Closed-form regret bounds evaluated at checkpoint rounds, used for the
# bound-comparison columns of the aggregate output.
#
##########################################################################
# SimDuel - Simple dueling-bandit simulations for Python.
# See README.md for instructions and LICENSE.txt for license details.
##########################################################################

import math

import numpy as np

from simduel.exceptions import ParamError
from simduel.names import DEXP3, DEXP3_HP, BCB, UNIFORM, POLICY_KINDS

##########################################################################

#: Descriptions of the bounds, echoed into the resolved config.
BOUND_LABELS = {
    DEXP3: '6 (K log K)^(1/3) t^(2/3)',
    DEXP3_HP: '2 (3 (2 log K)^(1/3) + 2^(5/6) sqrt(log(K/delta)) / '
              '(log K)^(1/6)) K^(1/3) t^(2/3)  [explicit constant of '
              'O~(K^(1/3) T^(2/3))]',
    BCB: '64 (K / Delta^2) log(2KT/delta)',
    UNIFORM: 'none',
}

##########################################################################

def _check_bound_args(k, horizon, checkpoints):
    if k < 2:
        raise ParamError('K must be >= 2, got K={0}'.format(k))

    if horizon < 1:
        raise ParamError('horizon must be >= 1, got {0}'.format(horizon))

    t = np.asarray(checkpoints, dtype=np.float64)
    if np.any(t < 1) or np.any(t > horizon):
        msg = 'checkpoints must be in [1, {0}]'.format(horizon)
        raise ParamError(msg)

    return t


def bound_curve(policy_kind, k, horizon, checkpoints, delta=None, gap=None):
    """
    Evaluate the regret bound of a policy at the checkpoint rounds t,
    substituting t for T in the bounds that grow with the horizon:

    - 'dexp3': 6 (K log K)^(1/3) t^(2/3)
    - 'dexp3-hp': 2 (3 (2 log K)^(1/3)
      + 2^(5/6) sqrt(log(K/delta)) / (log K)^(1/6)) K^(1/3) t^(2/3)
    - 'bcb': 64 (K / gap^2) log(2KT/delta), the same for all t.
    - 'uniform': NaN, there is no bound.

    :param policy_kind: String with the policy kind, see `names.py`
    :param k: Integer with the number of items K >= 2.
    :param horizon: Integer with the number of rounds T.
    :param checkpoints: Array-like with the 1-based rounds.
    :param delta: Float with the confidence, required for 'dexp3-hp' and 'bcb'.
    :param gap: Float with the Borda gap, required for 'bcb'.
    :raises ParamError: For an unknown kind or missing / invalid parameters.
    :return: NumPy array with one bound per checkpoint.
    """
    t = _check_bound_args(k=k, horizon=horizon, checkpoints=checkpoints)
    log_k = math.log(k)

    if policy_kind == DEXP3:
        return 6.0 * (k * log_k) ** (1.0 / 3.0) * t ** (2.0 / 3.0)

    elif policy_kind == DEXP3_HP:
        if delta is None or not 0.0 < delta < 1.0:
            raise ParamError('delta must be in (0, 1), got {0}'.format(delta))

        const = 3.0 * (2.0 * log_k) ** (1.0 / 3.0) \
              + 2.0 ** (5.0 / 6.0) * math.sqrt(math.log(k / delta)) / log_k ** (1.0 / 6.0)

        # Factor 2 converts the shifted regret to the Borda regret.
        return 2.0 * const * k ** (1.0 / 3.0) * t ** (2.0 / 3.0)

    elif policy_kind == BCB:
        if delta is None or not 0.0 < delta < 1.0:
            raise ParamError('delta must be in (0, 1), got {0}'.format(delta))

        if gap is None or not 0.0 < gap <= 1.0:
            raise ParamError('gap must be in (0, 1], got {0}'.format(gap))

        value = 64.0 * k / gap ** 2 * math.log(2.0 * k * horizon / delta)

        return np.full(len(t), value)

    elif policy_kind == UNIFORM:
        return np.full(len(t), np.nan)

    msg = 'unknown policy kind \'{0}\', valid kinds: {1}'
    raise ParamError(msg.format(policy_kind, ', '.join(POLICY_KINDS)))


def lower_bound_curve(k, horizon, epsilon, checkpoints):
    """
    Reference curve for the regret any policy must suffer on the hard
    instances with perturbation epsilon: min(epsilon * t, K / epsilon^2).

    :param k: Integer with the number of items K >= 2.
    :param horizon: Integer with the number of rounds T.
    :param epsilon: Float with the perturbation in (0, 1].
    :param checkpoints: Array-like with the 1-based rounds.
    :return: NumPy array with one value per checkpoint.
    """
    t = _check_bound_args(k=k, horizon=horizon, checkpoints=checkpoints)

    if not 0.0 < epsilon <= 1.0:
        raise ParamError('epsilon must be in (0, 1], got {0}'.format(epsilon))

    return np.minimum(epsilon * t, k / epsilon ** 2)

##########################################################################
