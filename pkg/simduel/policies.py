##########################################################################
#
# Policies for adversarial dueling bandits:
#
# - Dueling-EXP3: exponential weights over importance-weighted estimates
#   of the shifted Borda scores, mixed with uniform exploration.
# - Dueling-EXP3 with high probability: same but with biased estimates.
# - Borda-Confidence-Bound: uniform duels until one item's lower
#   confidence bound beats every other item's upper confidence bound,
#   after which that item is played for the rest of the rounds.
# - Uniform baseline for regret comparisons.
#
# All policies share the same interface: select_pair(rng) returns a pair
# (x, y) of 0-based items, and observe(x, y, o) receives the outcome with
# o=1 meaning that x won. Policies never see the preference matrices.
#
# Logarithms are natural logarithms everywhere.
#
##########################################################################
# SimDuel - Simple dueling-bandit simulations for Python.
# See README.md for instructions and LICENSE.txt for license details.
##########################################################################

import math
import warnings
from bisect import bisect_right
from itertools import accumulate

import numpy as np

from simduel.config import get_default_delta
from simduel.exceptions import ParamError, ProtocolError, ShapeError
from simduel.exceptions import DegenerateDistribution, ScheduleWarning
from simduel.names import DEXP3, DEXP3_HP, BCB, UNIFORM, POLICY_KINDS
from simduel.names import KIND_ESTIMATED
from simduel.preferences import ScoreVector
from simduel.utils import _check_item

##########################################################################
# Constants.

#: Largest exponent of a D-EXP3 weight before all weights are rescaled.
MAX_EXPONENT = 300.0

##########################################################################
# Argument checks.

def _check_k(k):
    if k < 2:
        raise ShapeError('K must be >= 2, got K={0}'.format(k))


def _check_delta(delta):
    if not 0.0 < delta < 1.0:
        raise ParamError('delta must be in (0, 1), got {0}'.format(delta))


def _check_outcome(o):
    if o not in (0, 1):
        raise ParamError('outcome must be 0 or 1, got {0}'.format(o))

##########################################################################
# Parameter schedules.

def dexp3_default_params(k, horizon):
    """
    Default learning-rate and exploration for Dueling-EXP3 with a known
    horizon T:

        eta = (log(K) / (T * sqrt(K)))^(2/3)
        gamma = sqrt(eta * K)

    A `ScheduleWarning` is issued if T < K log(K), because gamma is then
    not guaranteed to be at most 1.

    :param k: Integer with the number of items K >= 2.
    :param horizon: Integer with the number of rounds T >= 1.
    :raises ParamError: If gamma > 1, i.e. the horizon is too short.
    :return: Tuple (eta, gamma).
    """
    _check_k(k)

    if horizon < 1:
        raise ParamError('horizon must be >= 1, got {0}'.format(horizon))

    if horizon < k * math.log(k):
        msg = 'horizon T={0} < K log K={1:.2f}: the default D-EXP3 ' \
              'exploration may exceed 1'.format(horizon, k * math.log(k))
        warnings.warn(msg, ScheduleWarning)

    eta = (math.log(k) / (horizon * math.sqrt(k))) ** (2.0 / 3.0)
    gamma = math.sqrt(eta * k)

    if gamma > 1.0:
        msg = 'default D-EXP3 exploration gamma={0:.4f} > 1 for K={1}, ' \
              'T={2}: the horizon is too short'.format(gamma, k, horizon)
        raise ParamError(msg)

    return eta, gamma


def hp_default_params(k, horizon, delta):
    """
    Default parameters for the high-probability variant of Dueling-EXP3:

        eta = (log(K) / (T * sqrt(2K)))^(2/3)
        gamma = sqrt(2 * eta * K)
        beta = sqrt(log(K/delta)) / ((2 eta)^(1/4) * K^(3/4) * sqrt(T))

    A `ScheduleWarning` is issued if T < 2K log(K).

    :param k: Integer with the number of items K >= 2.
    :param horizon: Integer with the number of rounds T >= 1.
    :param delta: Float with the confidence in (0, 1).
    :raises ParamError: If gamma > 1 or beta is not in (0, 1).
    :return: Tuple (eta, gamma, beta).
    """
    _check_k(k)
    _check_delta(delta)

    if horizon < 1:
        raise ParamError('horizon must be >= 1, got {0}'.format(horizon))

    if horizon < 2 * k * math.log(k):
        msg = 'horizon T={0} < 2K log K={1:.2f}: the default exploration ' \
              'may exceed 1'.format(horizon, 2 * k * math.log(k))
        warnings.warn(msg, ScheduleWarning)

    eta = (math.log(k) / (horizon * math.sqrt(2 * k))) ** (2.0 / 3.0)
    gamma = math.sqrt(2 * eta * k)
    beta = math.sqrt(math.log(k / delta)) \
         / ((2 * eta) ** 0.25 * k ** 0.75 * math.sqrt(horizon))

    if gamma > 1.0:
        msg = 'default exploration gamma={0:.4f} > 1 for K={1}, T={2}: ' \
              'the horizon is too short'.format(gamma, k, horizon)
        raise ParamError(msg)

    if not 0.0 < beta < 1.0:
        msg = 'default bias beta={0:.4g} is not in (0, 1) for K={1}, T={2}, ' \
              'delta={3}'.format(beta, k, horizon, delta)
        raise ParamError(msg)

    return eta, gamma, beta

##########################################################################
# Dueling-EXP3.

class Dexp3State:
    """
    Mutable state of Dueling-EXP3: the cumulative estimated scores and the
    sampling distribution `q` derived from them:

        q_tilde(i) = exp(eta * S(i)) / sum_j exp(eta * S(j))
        q(i) = (1 - gamma) * q_tilde(i) + gamma / K

    The weights exp(eta * (S(i) - ref)) are kept as Python floats relative
    to a reference score `ref`. An estimate which is non-zero for a single
    item only changes that item's weight, and all the weights are only
    recomputed with the largest score as the new reference when an exponent
    would exceed `MAX_EXPONENT`.
    """

    def __init__(self, k, eta, gamma):
        """
        :param k: Integer with the number of items K >= 2.
        :param eta: Float with the learning-rate > 0.
        :param gamma: Float with the exploration in (0, 1].
        """
        _check_k(k)

        if not eta > 0.0:
            raise ParamError('eta must be > 0, got {0}'.format(eta))

        if not 0.0 < gamma <= 1.0:
            raise ParamError('gamma must be in (0, 1], got {0}'.format(gamma))

        self.k = k
        self.eta = eta
        self.gamma = gamma

        self.cum_scores = np.zeros(k, dtype=np.float64)

    @property
    def cum_scores(self):
        """NumPy array with the sum of the estimated scores of all past rounds."""
        return np.array(self._cum, dtype=np.float64)

    @cum_scores.setter
    def cum_scores(self, cum_scores):
        self._cum = [float(s) for s in cum_scores]
        self._reweight()

    @property
    def q(self):
        """NumPy array with the sampling distribution over the items."""
        if self._q_array is None:
            self._q_array = np.array(self._q, dtype=np.float64)
        return self._q_array

    @q.setter
    def q(self, q):
        self._set_q([float(p) for p in q])

    @property
    def q_list(self):
        """Read-only list of floats with the sampling distribution."""
        return self._q

    def cdf(self):
        """
        :return: List of floats with the cumulative distribution of `q`.
        """
        if self._cdf is None:
            self._cdf = list(accumulate(self._q))
        return self._cdf

    def add_score(self, i, value):
        """
        Add to the cumulative score of a single item and update `q`.

        :param i: Integer with the 0-based item.
        :param value: Float with the estimated score.
        :return: `None`
        """
        self._cum[i] += value
        z = self.eta * (self._cum[i] - self._ref)

        if z > MAX_EXPONENT:
            self._reweight()
        else:
            self._w[i] = math.exp(z)
            self._mix()

    def add_scores(self, values):
        """
        Add to the cumulative scores of all items and update `q`.

        :param values: List of K floats with the estimated scores.
        :return: `None`
        """
        self._cum = [s + v for s, v in zip(self._cum, values)]
        self._reweight()

    def _reweight(self):
        ref = max(self._cum)
        eta = self.eta

        self._ref = ref
        self._w = [math.exp(eta * (s - ref)) for s in self._cum]
        self._mix()

    def _mix(self):
        total = sum(self._w)
        assert math.isfinite(total) and total > 0.0, 'invalid exponential weights'

        scale = (1.0 - self.gamma) / total
        floor = self.gamma / self.k
        self._set_q([scale * w + floor for w in self._w])

    def _set_q(self, q):
        # List of floats, with the NumPy array and the cumulative
        # distribution created when first needed.
        self._q = q
        self._q_array = None
        self._cdf = None


class Dexp3HpState(Dexp3State):
    """
    Mutable state of the high-probability Dueling-EXP3 variant, which adds
    the bias `beta` and the confidence `delta` to :obj:`Dexp3State`.
    """

    def __init__(self, k, eta, gamma, beta, delta):
        """
        :param k: Integer with the number of items K >= 2.
        :param eta: Float with the learning-rate > 0.
        :param gamma: Float with the exploration in (0, 1].
        :param beta: Float with the bias in (0, 1).
        :param delta: Float with the confidence in (0, 1).
        """
        Dexp3State.__init__(self, k=k, eta=eta, gamma=gamma)

        if not 0.0 < beta < 1.0:
            raise ParamError('beta must be in (0, 1), got {0}'.format(beta))

        _check_delta(delta)

        self.beta = beta
        self.delta = delta


def _check_estimate_args(q, x, y, o):
    q = np.asarray(q, dtype=np.float64)
    k = len(q)

    _check_item(x, k, name='x')
    _check_item(y, k, name='y')
    _check_outcome(o)

    if np.any(q <= 0.0):
        msg = 'sampling distribution has a zero or negative entry: {0}'
        raise DegenerateDistribution(msg.format(q))

    return q, k


def dexp3_estimate(q, x, y, o):
    """
    Importance-weighted estimate of the shifted Borda scores from one duel
    where x and y were drawn independently from `q`:

        s_tilde(i) = 1(x = i) / (K q(i)) * sum_j 1(y = j) o / q(j)

    so only the entry for x can be non-zero, and only when x won. The
    estimate is unbiased for the shifted Borda scores of the round.

    :param q: Array-like with the sampling distribution, all entries > 0.
    :param x: Integer with the 0-based first item.
    :param y: Integer with the 0-based second item.
    :param o: Integer 1 if x won, otherwise 0.
    :raises DegenerateDistribution: If an entry of `q` is <= 0.
    :return: `ScoreVector` of kind 'estimated'.
    """
    q, k = _check_estimate_args(q, x, y, o)

    values = np.zeros(k, dtype=np.float64)
    if o == 1:
        values[x] = 1.0 / (k * q[x] * q[y])

    return ScoreVector(values=values, kind=KIND_ESTIMATED)


def dexp3_update(state, estimate):
    """
    Add the estimate to the cumulative scores and recompute the sampling
    distribution. Every entry of the new distribution is at least gamma / K.

    :param state: `Dexp3State` or `Dexp3HpState`, updated in-place.
    :param estimate: `ScoreVector` from :obj:`dexp3_estimate` or
        :obj:`hp_estimate` using the `q` stored in `state`.
    :return: The updated `state`.
    """
    values = estimate.values
    nonzero = np.flatnonzero(values)

    # An all-zero estimate leaves the distribution unchanged.
    if len(nonzero) == 0:
        return state

    if len(nonzero) == 1:
        i = int(nonzero[0])
        state.add_score(i, float(values[i]))
    else:
        state.add_scores(values.tolist())

    return state


def dexp3_select(state, rng):
    """
    Draw x and y independently from the sampling distribution, so x == y
    is possible.

    :param state: `Dexp3State` or `Dexp3HpState`.
    :param rng: `numpy.random.Generator`
    :return: Tuple (x, y) of 0-based items.
    """
    cdf = state.cdf()
    total = cdf[-1]
    last = state.k - 1

    x = min(bisect_right(cdf, rng.random() * total), last)
    y = min(bisect_right(cdf, rng.random() * total), last)

    return x, y

##########################################################################
# Dueling-EXP3 with high probability.

def hp_estimate(q, x, y, o, beta):
    """
    Biased estimate used by the high-probability variant:

        s'(i) = s_tilde(i) + beta / q(i)

    where `s_tilde` is :obj:`dexp3_estimate`. Its conditional mean is the
    shifted Borda score plus beta / q(i).

    :param q: Array-like with the sampling distribution, all entries > 0.
    :param x: Integer with the 0-based first item.
    :param y: Integer with the 0-based second item.
    :param o: Integer 1 if x won, otherwise 0.
    :param beta: Float with the bias in [0, 1).
    :return: `ScoreVector` of kind 'estimated'.
    """
    if not 0.0 <= beta < 1.0:
        raise ParamError('beta must be in [0, 1), got {0}'.format(beta))

    q, k = _check_estimate_args(q, x, y, o)

    values = beta / q
    if o == 1:
        values[x] += 1.0 / (k * q[x] * q[y])

    return ScoreVector(values=values, kind=KIND_ESTIMATED)


def hp_update(state, estimate):
    """
    Update of the high-probability variant, which is the same exponential
    weights update as :obj:`dexp3_update` on the biased estimates.

    :param state: `Dexp3HpState`, updated in-place.
    :param estimate: `ScoreVector` from :obj:`hp_estimate`.
    :return: The updated `state`.
    """
    assert isinstance(state, Dexp3HpState)
    return dexp3_update(state, estimate)

##########################################################################
# Borda-Confidence-Bound.

class BcbState:
    """
    Mutable state of Borda-Confidence-Bound: the cumulative Borda estimates
    and, once it has happened, the committed item and round.
    """

    def __init__(self, k, horizon, delta, clamp=False):
        """
        :param k: Integer with the number of items K >= 2.
        :param horizon: Integer with the number of rounds T >= 1.
        :param delta: Float with the confidence in (0, 1).
        :param clamp: Boolean whether to clamp the confidence bounds to [0, 1].
        """
        _check_k(k)
        _check_delta(delta)

        if horizon < 1:
            raise ParamError('horizon must be >= 1, got {0}'.format(horizon))

        self.k = k
        self.horizon = horizon
        self.delta = delta
        self.clamp = clamp

        # Number of rounds observed so far.
        self.t = 0

        self.cum_estimates = np.zeros(k, dtype=np.float64)
        self.committed = None
        self.commit_round = None


def bcb_select(state, rng):
    """
    Before commit: x uniform on all items, y uniform on the other items.
    After commit: the committed item twice.

    :param state: `BcbState`
    :param rng: `numpy.random.Generator`
    :return: Tuple (x, y) of 0-based items.
    """
    if state.committed is not None:
        return state.committed, state.committed

    x = int(rng.integers(state.k))
    y = int(rng.integers(state.k - 1))

    # Skip over x so y is uniform on the other K-1 items.
    if y >= x:
        y += 1

    return x, y


def bcb_estimate(x, o, k):
    """
    Unbiased estimate of the Borda scores from one uniform duel:

        b_hat(i) = K * o * 1(x = i)

    :param x: Integer with the 0-based first item.
    :param o: Integer 1 if x won, otherwise 0.
    :param k: Integer with the number of items K.
    :return: `ScoreVector` of kind 'estimated'.
    """
    _check_item(x, k, name='x')
    _check_outcome(o)

    values = np.zeros(k, dtype=np.float64)
    values[x] = k * o

    return ScoreVector(values=values, kind=KIND_ESTIMATED)


def bcb_radius(t, k, horizon, delta):
    """
    Confidence radius 2 * sqrt((K/t) * log(2KT/delta)).
    For t <= 4K log(2KT/delta) the radius is at least 1.

    :return: Float.
    """
    if t < 1:
        raise ParamError('t must be >= 1, got {0}'.format(t))

    _check_delta(delta)

    return 2.0 * math.sqrt(k / t * math.log(2.0 * k * horizon / delta))


def bcb_bounds(cum_estimates, t, k, horizon, delta, clamp=False):
    """
    Lower and upper confidence bounds on the average Borda scores:

        b_tilde(i) = cum_estimates(i) / t
        LCB(i) = b_tilde(i) - r,  UCB(i) = b_tilde(i) + r

    with the radius r from :obj:`bcb_radius`.

    :param cum_estimates: Array-like with the cumulative estimates.
    :param t: Integer with the number of rounds so far, t >= 1.
    :param k: Integer with the number of items K.
    :param horizon: Integer with the number of rounds T.
    :param delta: Float with the confidence in (0, 1).
    :param clamp: Boolean whether to clamp the bounds to [0, 1].
    :raises ParamError: If t < 1 or delta is not in (0, 1).
    :return: Tuple of NumPy arrays (LCB, UCB).
    """
    r = bcb_radius(t=t, k=k, horizon=horizon, delta=delta)
    b_tilde = np.asarray(cum_estimates, dtype=np.float64) / t

    lcb = b_tilde - r
    ucb = b_tilde + r

    if clamp:
        lcb = np.clip(lcb, 0.0, 1.0)
        ucb = np.clip(ucb, 0.0, 1.0)

    return lcb, ucb


def bcb_commit_check(lcb, ucb):
    """
    Find the item whose lower confidence bound is strictly larger than the
    upper confidence bound of every other item. If LCB <= UCB for all
    items then at most one item can satisfy this.

    :param lcb: NumPy array with the lower confidence bounds.
    :param ucb: NumPy array with the upper confidence bounds.
    :return: Integer with the 0-based item, or `None`.
    """
    lcb = np.asarray(lcb, dtype=np.float64)
    ucb = np.asarray(ucb, dtype=np.float64)
    assert lcb.shape == ucb.shape and len(ucb) >= 2

    # Largest UCB of the other items: the overall max, except for the
    # item holding the max where it is the second largest.
    top = int(np.argmax(ucb))
    second = np.max(np.delete(ucb, top))
    max_others = np.full(len(ucb), ucb[top])
    max_others[top] = second

    winners = np.flatnonzero(lcb > max_others)
    assert len(winners) <= 1, 'more than one item passed the commit check'

    if len(winners) == 0:
        return None

    return int(winners[0])


def bcb_update(state, x, y, o):
    """
    Count the round and, before commit, add the estimate of this duel and
    check whether an item can be committed.

    :param state: `BcbState`, updated in-place.
    :param x: Integer with the 0-based first item.
    :param y: Integer with the 0-based second item.
    :param o: Integer 1 if x won, otherwise 0.
    :return: The updated `state`.
    """
    state.t += 1

    # The committed item is fixed for the rest of the run.
    if state.committed is not None:
        return state

    estimate = bcb_estimate(x=x, o=o, k=state.k)
    state.cum_estimates += estimate.values

    lcb, ucb = bcb_bounds(cum_estimates=state.cum_estimates, t=state.t,
                          k=state.k, horizon=state.horizon,
                          delta=state.delta, clamp=state.clamp)

    i_hat = bcb_commit_check(lcb, ucb)
    if i_hat is not None:
        state.committed = i_hat
        state.commit_round = state.t

    return state


def bcb_commit_time_bound(k, horizon, delta, gap):
    """
    Round by which BCB commits to the best item on a fixed-gap sequence
    with gap `gap`, with probability at least 1 - delta:

        ceil(64 K log(2KT/delta) / gap^2)

    :param k: Integer with the number of items K.
    :param horizon: Integer with the number of rounds T.
    :param delta: Float with the confidence in (0, 1).
    :param gap: Float with the Borda gap in (0, 1].
    :raises ParamError: For invalid delta or gap.
    :return: Integer.
    """
    _check_delta(delta)

    if not 0.0 < gap <= 1.0:
        raise ParamError('gap must be in (0, 1], got {0}'.format(gap))

    bound = 64.0 * k * math.log(2.0 * k * horizon / delta) / gap ** 2

    return int(math.ceil(bound))

##########################################################################
# Uniform baseline.

def uniform_baseline_select(k, rng):
    """
    Two independent uniform draws over all items.

    :param k: Integer with the number of items K >= 2.
    :param rng: `numpy.random.Generator`
    :raises ShapeError: If K < 2.
    :return: Tuple (x, y) of 0-based items.
    """
    _check_k(k)

    x, y = rng.integers(k, size=2)

    return int(x), int(y)

##########################################################################
# Policy classes.

class Policy:
    """
    Base-class for sequential dueling policies.

    Every round the caller must first call :obj:`select_pair` and then
    :obj:`observe` exactly once with the same pair, otherwise a
    `ProtocolError` is raised.
    """

    #: String with the kind of policy, see `names.py`
    kind = None

    def __init__(self, k):
        _check_k(k)

        self.k = k

        # Number of completed rounds.
        self.t = 0

        # Pair selected but not yet observed.
        self._pending = None

    def select_pair(self, rng):
        """
        :param rng: `numpy.random.Generator` owned by the caller.
        :return: Tuple (x, y) of 0-based items.
        """
        if self._pending is not None:
            raise ProtocolError('select_pair called twice without observe')

        pair = self._select(rng)
        self._pending = pair

        return pair

    def observe(self, x, y, o):
        """
        :param x: Integer with the 0-based first item.
        :param y: Integer with the 0-based second item.
        :param o: Integer 1 if x won, otherwise 0.
        """
        if self._pending is None:
            raise ProtocolError('observe called without select_pair')

        if self._pending != (x, y):
            msg = 'observe({0}, {1}) does not match the selected pair {2}'
            raise ProtocolError(msg.format(x, y, self._pending))

        _check_outcome(o)

        self._update(x, y, o)
        self._pending = None
        self.t += 1

    def pair_distribution(self):
        """
        Exact probability of each ordered pair in the next round.

        :return: Dict mapping (x, y) to a float.
        """
        raise NotImplementedError

    def resolved_params(self):
        """
        :return: Dict with all parameters including resolved defaults.
        """
        return {'kind': self.kind}

    def snapshot(self):
        """
        :return: JSON-serializable dict with the policy's state.
        """
        return {'kind': self.kind, 't': self.t}

    def diagnostics(self):
        """
        :return: Dict with a few numbers for the trace's diag_* columns.
        """
        return {}

    def _select(self, rng):
        raise NotImplementedError

    def _update(self, x, y, o):
        raise NotImplementedError


class DuelingExp3(Policy):
    """
    Dueling-EXP3 for arbitrary (oblivious) sequences of preference matrices.
    """

    kind = DEXP3

    def __init__(self, k, horizon, eta=None, gamma=None):
        """
        :param k: Integer with the number of items K >= 2.
        :param horizon: Integer with the number of rounds T.
        :param eta: Optional float with the learning-rate. If both `eta`
            and `gamma` are `None` then :obj:`dexp3_default_params` is used.
        :param gamma: Optional float with the exploration in (0, 1].
        """
        Policy.__init__(self, k=k)

        if eta is None or gamma is None:
            default_eta, default_gamma = dexp3_default_params(k=k, horizon=horizon)
            eta = default_eta if eta is None else eta
            gamma = default_gamma if gamma is None else gamma

        self.horizon = horizon
        self.state = Dexp3State(k=k, eta=eta, gamma=gamma)

    def _select(self, rng):
        return dexp3_select(self.state, rng)

    def _update(self, x, y, o):
        # Same as dexp3_estimate and dexp3_update. Only item x can have a
        # non-zero estimate, and q(i) >= gamma / K > 0 for all items.
        if o == 1:
            q = self.state.q_list
            self.state.add_score(x, 1.0 / (self.k * q[x] * q[y]))

    def pair_distribution(self):
        q = self.state.q
        return {(x, y): float(q[x] * q[y])
                for x in range(self.k) for y in range(self.k)}

    def resolved_params(self):
        return {'kind': self.kind, 'eta': self.state.eta,
                'gamma': self.state.gamma}

    def snapshot(self):
        return {'kind': self.kind, 't': self.t,
                'q': self.state.q.tolist(),
                'cum_scores': self.state.cum_scores.tolist()}

    def diagnostics(self):
        q = self.state.q
        return {'q_min': float(q.min()), 'q_max': float(q.max()),
                'leader': int(np.argmax(q)) + 1}


class DuelingExp3HP(DuelingExp3):
    """
    High-probability variant of Dueling-EXP3 using biased score estimates.
    """

    kind = DEXP3_HP

    def __init__(self, k, horizon, delta=None, eta=None, gamma=None, beta=None):
        """
        :param k: Integer with the number of items K >= 2.
        :param horizon: Integer with the number of rounds T.
        :param delta: Optional float with the confidence. If `None` then
            use :obj:`~simduel.config.get_default_delta`.
        :param eta: Optional float with the learning-rate.
        :param gamma: Optional float with the exploration.
        :param beta: Optional float with the bias. Missing values are taken
            from :obj:`hp_default_params`.
        """
        Policy.__init__(self, k=k)

        if delta is None:
            delta = get_default_delta()

        if eta is None or gamma is None or beta is None:
            defaults = hp_default_params(k=k, horizon=horizon, delta=delta)
            eta = defaults[0] if eta is None else eta
            gamma = defaults[1] if gamma is None else gamma
            beta = defaults[2] if beta is None else beta

        self.horizon = horizon
        self.state = Dexp3HpState(k=k, eta=eta, gamma=gamma,
                                  beta=beta, delta=delta)

    def _update(self, x, y, o):
        # Same as hp_estimate and hp_update.
        state = self.state
        q = state.q_list
        values = [state.beta / p for p in q]

        if o == 1:
            values[x] += 1.0 / (self.k * q[x] * q[y])

        state.add_scores(values)

    def resolved_params(self):
        return {'kind': self.kind, 'eta': self.state.eta,
                'gamma': self.state.gamma, 'beta': self.state.beta,
                'delta': self.state.delta}


class BordaConfidenceBound(Policy):
    """
    Borda-Confidence-Bound for sequences with a fixed gap in average
    Borda score. If no item is committed within the horizon, the policy
    keeps playing uniform duels and `commit_round` stays `None`.
    """

    kind = BCB

    def __init__(self, k, horizon, delta=None, clamp=False):
        """
        :param k: Integer with the number of items K >= 2.
        :param horizon: Integer with the number of rounds T.
        :param delta: Optional float with the confidence. If `None` then
            use :obj:`~simduel.config.get_default_delta`.
        :param clamp: Boolean whether to clamp the bounds to [0, 1].
        """
        Policy.__init__(self, k=k)

        if delta is None:
            delta = get_default_delta()

        self.horizon = horizon
        self.state = BcbState(k=k, horizon=horizon, delta=delta, clamp=clamp)

    @property
    def committed(self):
        """0-based committed item or `None`."""
        return self.state.committed

    @property
    def commit_round(self):
        """Round of the commit or `None`."""
        return self.state.commit_round

    def _select(self, rng):
        return bcb_select(self.state, rng)

    def _update(self, x, y, o):
        bcb_update(self.state, x=x, y=y, o=o)

    def pair_distribution(self):
        i_hat = self.state.committed

        if i_hat is not None:
            return {(i_hat, i_hat): 1.0}

        prob = 1.0 / (self.k * (self.k - 1))
        return {(x, y): prob
                for x in range(self.k) for y in range(self.k) if x != y}

    def resolved_params(self):
        return {'kind': self.kind, 'delta': self.state.delta,
                'clamp': self.state.clamp}

    def snapshot(self):
        t = max(self.state.t, 1)
        committed = self.state.committed

        return {'kind': self.kind, 't': self.t,
                'b_tilde': (self.state.cum_estimates / t).tolist(),
                'committed': None if committed is None else committed + 1,
                'commit_round': self.state.commit_round}

    def diagnostics(self):
        committed = self.state.committed
        return {'committed': 0 if committed is None else committed + 1}


class UniformBaseline(Policy):
    """
    Control policy that plays two independent uniform items every round.
    """

    kind = UNIFORM

    def __init__(self, k, horizon=None):
        """
        :param k: Integer with the number of items K >= 2.
        :param horizon: Ignored, accepted for a uniform constructor.
        """
        Policy.__init__(self, k=k)

    def _select(self, rng):
        return uniform_baseline_select(self.k, rng)

    def _update(self, x, y, o):
        pass

    def pair_distribution(self):
        prob = 1.0 / self.k ** 2
        return {(x, y): prob for x in range(self.k) for y in range(self.k)}

##########################################################################

def make_policy(kind, k, horizon, **params):
    """
    Create a policy from its kind and parameters.

    :param kind: String with the kind, see `POLICY_KINDS` in `names.py`
    :param k: Integer with the number of items K.
    :param horizon: Integer with the number of rounds T.
    :param params: Keyword args passed to the policy's constructor.
    :return: `Policy`
    """
    classes = {DEXP3: DuelingExp3,
               DEXP3_HP: DuelingExp3HP,
               BCB: BordaConfidenceBound,
               UNIFORM: UniformBaseline}

    if kind not in classes:
        msg = 'unknown policy kind \'{0}\', valid kinds: {1}'
        raise ParamError(msg.format(kind, ', '.join(POLICY_KINDS)))

    return classes[kind](k=k, horizon=horizon, **params)

##########################################################################
