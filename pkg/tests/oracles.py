##########################################################################
#
# Brute-force and Monte-Carlo oracles used by the tests.
#
# The analytic targets are computed here with plain loops directly from
# the definitions, so they share no code with the estimators and scores
# they are used to check.
#
##########################################################################
# SimDuel - Simple dueling-bandit simulations for Python.
# See README.md for instructions and LICENSE.txt for license details.
##########################################################################

import copy
import math

import numpy as np

from simduel.environments import sample_feedback
from simduel.exceptions import ParamError
from simduel.policies import dexp3_estimate, hp_estimate, bcb_estimate
from simduel.policies import make_policy
from simduel.regret import RegretTrace
from simduel.preferences import borda_scores, shifted_scores
from simduel.utils import make_rng, FEEDBACK_STREAM, POLICY_STREAM

##########################################################################
# Constants.

#: Smallest number of Monte-Carlo samples accepted by the oracles.
MIN_SAMPLES = 10 ** 4

#: Estimators that can be checked with :obj:`mc_expectation`.
ESTIMATORS = ('dexp3', 'hp', 'bcb')

##########################################################################
# Helper functions.

def _raw(m):
    """
    The NumPy array of a `PreferenceMatrix`, or the array itself. Raw arrays
    let the tests inject matrices that are not valid preference matrices.
    """
    return np.asarray(getattr(m, 'p', m), dtype=np.float64)


def _check_samples(n):
    if n < MIN_SAMPLES:
        msg = 'need at least {0} samples, got {1}'.format(MIN_SAMPLES, n)
        raise ParamError(msg)


def _sample_duels(p, q, n, rng, uniform_distinct=False):
    """
    Sample n duels (x, y, o) and count how often each distinct duel occurs.

    :return: Tuple of arrays (x, y, o, counts) with one entry per distinct duel.
    """
    k = len(p)

    if uniform_distinct:
        x = rng.integers(k, size=n)
        y = rng.integers(k - 1, size=n)
        y = y + (y >= x)
    else:
        x = rng.choice(k, size=n, p=q)
        y = rng.choice(k, size=n, p=q)

    o = (rng.random(n) < p[x, y]).astype(np.int64)

    code = (x * k + y) * 2 + o
    code, counts = np.unique(code, return_counts=True)

    return code // 2 // k, code // 2 % k, code % 2, counts

##########################################################################
# Reference scores.

def reference_borda(m):
    """
    Borda scores with explicit loops: b(i) = 1/(K-1) sum_{j != i} p(i,j)

    :param m: `PreferenceMatrix` or NumPy array.
    :return: List of floats.
    """
    p = _raw(m)
    k = len(p)

    scores = []
    for i in range(k):
        total = 0.0
        for j in range(k):
            if j != i:
                total += p[i, j]
        scores.append(total / (k - 1))

    return scores


def reference_shifted(m):
    """
    Shifted Borda scores with explicit loops: s(i) = 1/K sum_j p(i,j)

    :param m: `PreferenceMatrix` or NumPy array.
    :return: List of floats.
    """
    p = _raw(m)
    k = len(p)

    scores = []
    for i in range(k):
        total = 0.0
        for j in range(k):
            total += p[i, j]
        scores.append(total / k)

    return scores

##########################################################################
# Monte-Carlo oracles.

def mc_expectation(estimator, m, q=None, n=10 ** 6, seed=0, beta=0.0):
    """
    Monte-Carlo mean of an estimator over n simulated rounds with a fixed
    sampling distribution.

    For 'dexp3' and 'hp' the pair is drawn i.i.d. from `q`. For 'bcb' the
    pair is x uniform and y uniform over the other items, and `q` is ignored.

    Each distinct duel (x, y, o) is evaluated once with the estimator
    and weighted by how often it was sampled.

    :param estimator: String 'dexp3', 'hp' or 'bcb'.
    :param m: `PreferenceMatrix` or NumPy array.
    :param q: Array-like with the sampling distribution. Default uniform.
    :param n: Integer with the number of samples >= 10^4.
    :param seed: Integer with the seed.
    :param beta: Float with the bias of the 'hp' estimator.
    :raises ParamError: For too few samples or an unknown estimator.
    :return: Tuple of NumPy arrays (mean, stderr).
    """
    _check_samples(n)

    if estimator not in ESTIMATORS:
        msg = 'unknown estimator \'{0}\', valid: {1}'
        raise ParamError(msg.format(estimator, ', '.join(ESTIMATORS)))

    p = _raw(m)
    k = len(p)
    q = np.full(k, 1.0 / k) if q is None else np.asarray(q, dtype=np.float64)
    rng = make_rng(seed)

    xs, ys, os, counts = _sample_duels(p=p, q=q, n=n, rng=rng,
                                       uniform_distinct=(estimator == 'bcb'))

    total = np.zeros(k)
    total_sq = np.zeros(k)

    for x, y, o, count in zip(xs, ys, os, counts):
        x, y, o = int(x), int(y), int(o)

        if estimator == 'dexp3':
            values = dexp3_estimate(q=q, x=x, y=y, o=o).values
        elif estimator == 'hp':
            values = hp_estimate(q=q, x=x, y=y, o=o, beta=beta).values
        else:
            values = bcb_estimate(x=x, o=o, k=k).values

        total += count * values
        total_sq += count * values ** 2

    mean = total / n
    var = np.maximum(total_sq / n - mean ** 2, 0.0)
    stderr = np.sqrt(var / n)

    return mean, stderr


def mc_second_moment(m, q, gamma, n=10 ** 6, seed=0):
    """
    Monte-Carlo estimate of sum_i q(i) E[s(i)^2] for the D-EXP3 estimate s,
    which is at most K / gamma when min q >= gamma / K.

    :param m: `PreferenceMatrix` or NumPy array.
    :param q: Array-like with the sampling distribution.
    :param gamma: Float with the exploration in (0, 1].
    :param n: Integer with the number of samples >= 10^4.
    :param seed: Integer with the seed.
    :return: Tuple of floats (estimate, stderr).
    """
    _check_samples(n)

    if not 0.0 < gamma <= 1.0:
        raise ParamError('gamma must be in (0, 1], got {0}'.format(gamma))

    p = _raw(m)
    q = np.asarray(q, dtype=np.float64)
    rng = make_rng(seed)

    xs, ys, os, counts = _sample_duels(p=p, q=q, n=n, rng=rng)

    total = 0.0
    total_sq = 0.0

    for x, y, o, count in zip(xs, ys, os, counts):
        values = dexp3_estimate(q=q, x=int(x), y=int(y), o=int(o)).values
        weighted = float(np.sum(q * values ** 2))

        total += count * weighted
        total_sq += count * weighted ** 2

    mean = total / n
    var = max(total_sq / n - mean ** 2, 0.0)

    return mean, math.sqrt(var / n)

##########################################################################
# Exhaustive enumeration.

def _force_observe(policy, x, y, o):
    """
    Feed a chosen duel to a policy as if `select_pair` had returned it.
    """
    policy._pending = (x, y)
    policy.observe(x, y, o)


def exhaustive_tiny_check(policy_kind, m, horizon, **params):
    """
    Exact expected regret of a policy on a constant sequence of a small
    matrix, by enumerating every (pair, outcome) path and weighting it with
    the exact pair probabilities from `policy.pair_distribution()`.

    :param policy_kind: String with the policy kind e.g. 'dexp3'.
    :param m: `PreferenceMatrix` with K=2 items.
    :param horizon: Integer with the number of rounds T <= 4.
    :param params: Keyword args for the policy's constructor.
    :raises ParamError: If K != 2 or T is not in [1, 4].
    :return: Tuple of floats (expected regret, total path probability).
    """
    p = _raw(m)

    if len(p) != 2:
        raise ParamError('exhaustive enumeration needs K=2, got K={0}'.format(len(p)))

    if not 1 <= horizon <= 4:
        raise ParamError('exhaustive enumeration needs T in [1, 4]')

    b = reference_borda(p)

    # Lowest index wins ties.
    i_star = b.index(max(b))

    def _expand(policy, rounds_left):
        if rounds_left == 0:
            return 0.0, 1.0

        expected = 0.0
        total_prob = 0.0

        for (x, y), prob_pair in policy.pair_distribution().items():
            if prob_pair == 0.0:
                continue

            r = b[i_star] - 0.5 * (b[x] + b[y])

            for o, prob_o in ((1, p[x, y]), (0, 1.0 - p[x, y])):
                if prob_o == 0.0:
                    continue

                child = copy.deepcopy(policy)
                _force_observe(child, x, y, o)
                rest, rest_prob = _expand(child, rounds_left - 1)

                prob = prob_pair * prob_o
                expected += prob * (r * rest_prob + rest)
                total_prob += prob * rest_prob

        return expected, total_prob

    policy = make_policy(kind=policy_kind, k=2, horizon=horizon, **params)

    return _expand(policy, horizon)


def mc_expected_regret(policy_kind, m, horizon, runs, seed=0, **params):
    """
    Monte-Carlo mean of the regret of the real implementation on a constant
    sequence, running the policy, the feedback and the regret trace.

    :param policy_kind: String with the policy kind.
    :param m: `PreferenceMatrix`
    :param horizon: Integer with the number of rounds T.
    :param runs: Integer with the number of independent runs.
    :param seed: Integer with the first seed; run i uses seed + i.
    :param params: Keyword args for the policy's constructor.
    :return: Tuple of floats (mean, stderr).
    """
    borda = borda_scores(m)
    shifted = shifted_scores(m)

    regrets = np.zeros(runs)

    for i in range(runs):
        policy = make_policy(kind=policy_kind, k=m.k, horizon=horizon, **params)
        trace = RegretTrace(k=m.k, horizon=horizon)
        feedback_rng = make_rng(seed + i, stream=FEEDBACK_STREAM)
        policy_rng = make_rng(seed + i, stream=POLICY_STREAM)

        for _ in range(horizon):
            x, y = policy.select_pair(policy_rng)
            o = sample_feedback(m, x, y, feedback_rng)
            policy.observe(x, y, o)
            trace.record_round(borda, shifted, x, y, o)

        regrets[i] = trace.finalize().regret

    return float(regrets.mean()), float(regrets.std() / math.sqrt(runs))

##########################################################################
