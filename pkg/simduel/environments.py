##########################################################################
#
# Environments: obliviously fixed sequences of preference matrices.
#
# The whole sequence is a deterministic function of the round and the
# seed given at construction, so it is fixed before play begins and
# never depends on the learner's actions. Matrices are generated lazily
# per round, so memory does not grow with the horizon.
#
##########################################################################
# SimDuel - Simple dueling-bandit simulations for Python.
# See README.md for instructions and LICENSE.txt for license details.
##########################################################################

import json

import numpy as np

from simduel.config import get_epsilon_constant
from simduel.exceptions import ParamError, HorizonError, GapViolation
from simduel.exceptions import ParseError, ValidationError, MatrixError
from simduel.preferences import PreferenceMatrix, validate_matrix
from simduel.preferences import borda_scores, shifted_scores
from simduel.preferences import matrix_from_dict, matrix_to_dict
from simduel.utils import CompensatedSum, make_rng, _check_item, _print_status
from simduel.utils import ENVIRONMENT_STREAM

##########################################################################
# Constants.

#: Entries of a fixed-gap sequence are clamped to [LOWER_CLAMP, UPPER_CLAMP].
LOWER_CLAMP = 0.02
UPPER_CLAMP = 0.98

#: Number of rounds of perturbations drawn at once in a fixed-gap sequence.
NOISE_BLOCK = 1024

##########################################################################
# Types.

class EnvironmentStream:
    """
    A lazily generated, obliviously fixed sequence of preference matrices
    for the rounds t = 1, ..., T.

    The generator is a deterministic function of the round, so calling
    :obj:`matrix_at` twice with the same round gives identical matrices.
    There is no way to feed information from the learner back into the
    generator.
    """

    def __init__(self, horizon, k, generator, label, params=None):
        """
        :param horizon:
            Integer with the number of rounds T >= 1.

        :param k:
            Integer with the number of items K.

        :param generator:
            Function taking a 1-based round and returning a
            `PreferenceMatrix` with K items.

        :param label:
            String with a descriptive name of the environment.

        :param params:
            Optional dict with resolved parameters that are echoed into the
            output, e.g. the hidden best item of a random instance.
        """
        if horizon < 1:
            raise ParamError('horizon must be >= 1, got {0}'.format(horizon))

        self._horizon = int(horizon)
        self._k = int(k)
        self._generator = generator
        self._label = label
        self._params = dict(params) if params is not None else {}

        # Tuple (matrix, borda, shifted) of the most recent round, replaced
        # as a whole. Constant sequences return the same matrix object every
        # round, so the scores are only computed once.
        self._last_round = None

    @property
    def horizon(self):
        """Number of rounds T."""
        return self._horizon

    @property
    def k(self):
        """Number of items K."""
        return self._k

    @property
    def label(self):
        """Descriptive name of the environment."""
        return self._label

    @property
    def params(self):
        """Dict with the resolved parameters of the environment."""
        return dict(self._params)

    def matrix_at(self, t):
        """
        :param t: Integer with the 1-based round.
        :raises HorizonError: If `t` is outside [1, T].
        :return: `PreferenceMatrix` for round `t`.
        """
        if not 1 <= t <= self._horizon:
            msg = 'round {0} is outside the horizon [1, {1}]'
            msg = msg.format(t, self._horizon)
            raise HorizonError(msg)

        return self._generator(t)

    def scores_at(self, t):
        """
        :param t: Integer with the 1-based round.
        :return: Tuple with the Borda and shifted `ScoreVector` for round `t`.
        """
        _, borda, shifted = self.round_at(t)
        return borda, shifted

    def round_at(self, t):
        """
        The matrix of one round together with its scores, generating the
        matrix only once.

        :param t: Integer with the 1-based round.
        :return: Tuple with `PreferenceMatrix`, Borda and shifted `ScoreVector`.
        """
        m = self.matrix_at(t)

        last = self._last_round
        if last is None or last[0] is not m:
            last = (m, borda_scores(m), shifted_scores(m))
            self._last_round = last

        return last

    def matrices(self):
        """
        Generator for iterating over all rounds:

        .. code-block:: python

            for t, m in stream.matrices():
                print(t, m.p)
        """
        for t in range(1, self._horizon + 1):
            yield t, self.matrix_at(t)

    def __repr__(self):
        msg = 'EnvironmentStream(label={0}, k={1}, horizon={2})'
        return msg.format(self._label, self._k, self._horizon)


class FixedGapCertificate:
    """
    Result of scanning a sequence for the fixed-gap condition: the
    running-average Borda score of `i_star` exceeds that of every other
    item by at least `delta` in every round.
    """

    def __init__(self, i_star, delta, min_observed_gap, verified_through,
                 first_violation=None):
        """
        :param i_star: Integer with the 0-based item being certified.
        :param delta: Float with the required gap.
        :param min_observed_gap: Float with the smallest gap seen in any round.
        :param verified_through: Integer with the last round scanned.
        :param first_violation: Integer with the first round whose gap
            was below `delta`, or `None`.
        """
        self.i_star = i_star
        self.delta = delta
        self.min_observed_gap = min_observed_gap
        self.verified_through = verified_through
        self.first_violation = first_violation

    @property
    def valid(self):
        """Boolean whether the gap held in every round scanned."""
        return self.min_observed_gap >= self.delta

    def to_dict(self):
        """
        :return: Python dict with 1-based item for JSON output.
        """
        return {'i_star': self.i_star + 1,
                'delta': self.delta,
                'min_observed_gap': self.min_observed_gap,
                'verified_through': self.verified_through,
                'first_violation': self.first_violation,
                'valid': self.valid}

    def __repr__(self):
        msg = 'FixedGapCertificate(i_star={0}, delta={1}, ' \
              'min_observed_gap={2}, valid={3})'
        return msg.format(self.i_star, self.delta,
                          self.min_observed_gap, self.valid)

##########################################################################
# Constant sequences.

def stationary_env(m, horizon, label='stationary', params=None):
    """
    The degenerate adversary that plays the same matrix in every round.

    :param m: `PreferenceMatrix`
    :param horizon: Integer with the number of rounds T.
    :param label: String with a descriptive name.
    :param params: Optional dict with resolved parameters.
    :return: `EnvironmentStream`
    """
    return EnvironmentStream(horizon=horizon, k=m.k, generator=lambda t: m,
                             label=label, params=params)


def symmetric_instance(k):
    """
    :param k: Integer with the number of items K >= 2.
    :return: `PreferenceMatrix` where every entry is 0.5
    """
    return validate_matrix(np.full((k, k), 0.5))


def random_instance(k, seed):
    """
    Random valid preference matrix. The entries above the diagonal are
    drawn uniformly from [0, 1] and the entries below are their complements.

    :param k: Integer with the number of items K >= 2.
    :param seed: Integer with the seed.
    :return: `PreferenceMatrix`
    """
    if k < 2:
        raise ParamError('K must be >= 2, got {0}'.format(k))

    rng = make_rng(seed)

    p = np.full((k, k), 0.5)
    iu = np.triu_indices(k, 1)
    upper = rng.uniform(0.0, 1.0, size=len(iu[0]))
    p[iu] = upper
    p[(iu[1], iu[0])] = 1.0 - upper

    return validate_matrix(p)

##########################################################################
# Lower-bound instances.

def lower_bound_instance(k, epsilon, m=0):
    """
    Block-structured hard instance. The items are split into a good block
    (the first K/2 items) and a bad block (the last K/2 items):

    - Duels within a block are fair: p(i,j) = 0.5
    - A good item beats a bad item with probability 0.9
    - If `m >= 1` then good item `m` (1-based) beats every bad item with
      probability 0.9 + epsilon, which makes it the unique best item.
      If `m == 0` all good items are tied.

    For K=4 and m=0 the shifted Borda scores are (0.7, 0.7, 0.3, 0.3).

    :param k: Even integer K >= 4.
    :param epsilon: Float with the perturbation in (0, 0.1].
    :param m: Integer in {0, 1, ..., K/2} with the perturbed good item.
    :raises ParamError: For odd K, K < 4, or epsilon or m out of range.
    :return: `PreferenceMatrix`
    """

    if k < 4 or k % 2 != 0:
        msg = 'K must be an even integer >= 4, got K={0}'.format(k)
        raise ParamError(msg)

    if not 0.0 < epsilon <= 0.1:
        msg = 'epsilon must be in (0, 0.1], got {0}'.format(epsilon)
        raise ParamError(msg)

    half = k // 2

    if not 0 <= m <= half:
        msg = 'm must be in {{0, ..., {0}}}, got {1}'.format(half, m)
        raise ParamError(msg)

    p = np.full((k, k), 0.5)

    # Good items beat bad items.
    p[:half, half:] = 0.9

    # The perturbed good item beats bad items more often.
    if m >= 1:
        p[m - 1, half:] = 0.9 + epsilon

    # Complements below the good/bad block.
    p[half:, :half] = 1.0 - p[:half, half:].T

    return validate_matrix(p)


def tuned_epsilon(k, horizon, c=None):
    """
    Perturbation of the lower-bound instance tuned to the horizon, which
    makes the instance hard for every learner over T rounds:

        epsilon = min(0.1, c * (K/T)^(1/3))

    :param k: Integer with the number of items K.
    :param horizon: Integer with the number of rounds T >= K.
    :param c: Float with the constant. If `None` then use
        :obj:`~simduel.config.get_epsilon_constant`.
    :raises ParamError: If T < K.
    :return: Float.
    """
    if c is None:
        c = get_epsilon_constant()

    if horizon < k:
        msg = 'horizon T={0} must be >= K={1}'.format(horizon, k)
        raise ParamError(msg)

    return min(0.1, c * (k / horizon) ** (1.0 / 3.0))


def hidden_best_env(k, epsilon, horizon, seed, label='hidden-best'):
    """
    Constant sequence of a lower-bound instance whose perturbed good item
    is drawn uniformly at random from the good block. The drawn item is
    recorded in the stream's `params` as 'm' (1-based).

    :param k: Even integer K >= 4.
    :param epsilon: Float with the perturbation in (0, 0.1].
    :param horizon: Integer with the number of rounds T.
    :param seed: Integer with the seed for drawing the hidden item.
    :param label: String with a descriptive name.
    :return: `EnvironmentStream`
    """
    if k < 4 or k % 2 != 0:
        msg = 'K must be an even integer >= 4, got K={0}'.format(k)
        raise ParamError(msg)

    rng = make_rng(seed)
    m = int(rng.integers(1, k // 2 + 1))

    matrix = lower_bound_instance(k=k, epsilon=epsilon, m=m)
    params = {'m': m, 'epsilon': epsilon}

    return stationary_env(matrix, horizon=horizon, label=label,
                          params=params)


def adv_borda_env(k, horizon, seed, c=None):
    """
    Hidden-best instance with epsilon tuned to the horizon by
    :obj:`tuned_epsilon`. This is the hard instance for the general
    adversarial setting.

    :param k: Even integer K >= 4.
    :param horizon: Integer with the number of rounds T >= K.
    :param seed: Integer with the seed for drawing the hidden item.
    :param c: Optional float with the constant of `tuned_epsilon`.
    :return: `EnvironmentStream`
    """
    epsilon = tuned_epsilon(k=k, horizon=horizon, c=c)

    return hidden_best_env(k=k, epsilon=epsilon, horizon=horizon, seed=seed,
                           label='adv-borda')

##########################################################################
# Fixed-gap sequences.

def check_fixed_gap(stream, i_star, delta):
    """
    Scan all rounds of a sequence and check the fixed-gap condition:

        avg_b_t(i_star) >= avg_b_t(j) + delta  for all j != i_star, all t

    where `avg_b_t(j)` is the average Borda score of item `j` over the
    rounds 1, ..., t.

    :param stream: `EnvironmentStream`
    :param i_star: Integer with the 0-based item to certify.
    :param delta: Float with the required gap.
    :return: `FixedGapCertificate`
    """
    _check_item(i_star, stream.k, name='i_star')

    # Running sum of the Borda scores of all items.
    cum_borda = CompensatedSum(shape=stream.k)

    # Mask for all items except i_star.
    others = np.ones(stream.k, dtype=bool)
    others[i_star] = False

    min_gap = np.inf
    first_violation = None

    for t in range(1, stream.horizon + 1):
        borda, _ = stream.scores_at(t)
        cum_borda.add(borda.values)

        avg = cum_borda.value() / t
        gap = float(avg[i_star] - np.max(avg[others]))

        if gap < min_gap:
            min_gap = gap

        if first_violation is None and gap < delta:
            first_violation = t

    return FixedGapCertificate(i_star=i_star, delta=delta,
                               min_observed_gap=min_gap,
                               verified_through=stream.horizon,
                               first_violation=first_violation)


def fixed_gap_env(k, delta, horizon, perturbation_scale, seed):
    """
    Drifting sequence whose first item (index 0) has a fixed gap `delta`
    in running-average Borda score over every other item.

    The base matrix lets item 0 beat every other item with probability
    0.5 + a, where a = 2 * delta * (K-1) / K, and all other duels are
    fair. Its instantaneous Borda gap is therefore 2 * delta. In every
    round, uniform noise in [-scale, scale] is added to each pair above
    the diagonal, the entries are clamped to [0.02, 0.98], and the entries
    below the diagonal are set to the complements.

    After construction the whole sequence is scanned with
    :obj:`check_fixed_gap` and rejected if the gap fails in any round.
    A scale of at most `delta / 2` always passes.

    :param k: Integer with the number of items K >= 2.
    :param delta: Float with the gap in (0, 0.5).
    :param horizon: Integer with the number of rounds T.
    :param perturbation_scale: Non-negative float with the noise magnitude.
    :param seed: Integer with the seed of the noise.
    :raises ParamError: For invalid parameters.
    :raises GapViolation: If the generated sequence fails the certificate.
    :return: Tuple with `EnvironmentStream` and `FixedGapCertificate`.
    """

    if k < 2:
        raise ParamError('K must be >= 2, got {0}'.format(k))

    if not 0.0 < delta < 0.5:
        raise ParamError('delta must be in (0, 0.5), got {0}'.format(delta))

    if perturbation_scale < 0.0:
        msg = 'perturbation_scale must be >= 0, got {0}'
        raise ParamError(msg.format(perturbation_scale))

    # Advantage of item 0 in every duel giving an instantaneous gap 2*delta.
    a = 2.0 * delta * (k - 1) / k

    if 0.5 + a > UPPER_CLAMP:
        msg = 'delta={0} is too large for K={1}: the base matrix needs ' \
              'p(1,j)={2:.4f} above the clamp {3}'
        raise ParamError(msg.format(delta, k, 0.5 + a, UPPER_CLAMP))

    base = np.full((k, k), 0.5)
    base[0, 1:] = 0.5 + a
    base[1:, 0] = 0.5 - a
    base_matrix = validate_matrix(base)

    params = {'delta': delta, 'perturbation_scale': perturbation_scale}

    if perturbation_scale == 0.0:
        stream = stationary_env(base_matrix, horizon=horizon,
                                label='fixed-gap', params=params)
    else:
        iu = np.triu_indices(k, 1)
        il = (iu[1], iu[0])
        base_upper = base[iu]

        # Noise is drawn in blocks of rounds from a seed that depends only
        # on the block index, so any round can be regenerated on its own.
        # Holds one tuple (block, noise), replaced as a whole.
        cache = [None]

        def _generator(t):
            block, row = divmod(t - 1, NOISE_BLOCK)

            last = cache[0]
            if last is None or last[0] != block:
                rng = make_rng(seed, stream=(ENVIRONMENT_STREAM, block))
                noise = rng.uniform(-perturbation_scale, perturbation_scale,
                                    size=(NOISE_BLOCK, len(base_upper)))
                last = (block, noise)
                cache[0] = last

            upper = np.clip(base_upper + last[1][row],
                            LOWER_CLAMP, UPPER_CLAMP)

            p = np.full((k, k), 0.5)
            p[iu] = upper
            p[il] = 1.0 - upper

            # Valid by construction, so the validation is skipped.
            return PreferenceMatrix(p)

        stream = EnvironmentStream(horizon=horizon, k=k, generator=_generator,
                                   label='fixed-gap', params=params)

    certificate = check_fixed_gap(stream, i_star=0, delta=delta)

    if not certificate.valid:
        msg = 'fixed-gap sequence violates gap delta={0} first in round {1} ' \
              '(min observed gap {2:.6f})'
        msg = msg.format(delta, certificate.first_violation,
                         certificate.min_observed_gap)
        raise GapViolation(msg, round=certificate.first_violation)

    return stream, certificate

##########################################################################
# Sequence-files.

def env_from_file(path, horizon, repair=False):
    """
    Load a sequence of matrices from a JSON sequence-file and replay it.

    The file has the form:

    .. code-block:: json

        {"k": 3, "cycle": false,
         "matrices": [[[0.5, 0.7, 0.6], [0.3, 0.5, 0.4], [0.4, 0.6, 0.5]],
                      {"k": 3, "p": [[...], ...]}]}

    Each element of "matrices" is either a nested list or a matrix object
    `{"k": K, "p": [[...], ...]}`. If "cycle" is true then the matrices
    are repeated when the horizon is longer than the file.

    :param path: String with the path of the sequence-file.
    :param horizon: Integer with the number of rounds T.
    :param repair: Boolean passed to :obj:`~simduel.preferences.validate_matrix`.
    :raises ParseError: If the file cannot be read or parsed.
    :raises ValidationError: If a matrix is invalid; `round` is 1-based.
    :raises HorizonError: If the file is too short and does not cycle.
    :return: `EnvironmentStream`
    """

    _print_status('- Loading sequence-file {0} ... '.format(path), end='')

    try:
        with open(path, encoding='utf-8') as file:
            data = json.load(file)
    except (UnicodeDecodeError, json.JSONDecodeError) as e:
        msg = 'sequence-file {0} is not valid UTF-8 JSON: {1}'.format(path, e)
        raise ParseError(msg) from e
    except OSError as e:
        raise ParseError('cannot read sequence-file {0}: {1}'.format(path, e)) from e

    if not isinstance(data, dict) or 'matrices' not in data:
        msg = 'sequence-file {0} must be an object with key "matrices"'
        raise ParseError(msg.format(path))

    raw_matrices = data['matrices']
    cycle = data.get('cycle', False)
    if not isinstance(cycle, bool):
        msg = 'sequence-file {0}: "cycle" must be true or false, got {1!r}'
        raise ParseError(msg.format(path, cycle))

    k = data.get('k')

    if not isinstance(raw_matrices, list) or len(raw_matrices) == 0:
        msg = 'sequence-file {0} has no matrices'.format(path)
        raise ParseError(msg)

    matrices = []
    for i, raw in enumerate(raw_matrices):
        try:
            if isinstance(raw, dict):
                m = matrix_from_dict(raw, repair=repair)
            else:
                m = validate_matrix(raw, repair=repair)
        except (MatrixError, ParseError) as e:
            msg = 'matrix in round {0} is invalid: {1}'.format(i + 1, e)
            raise ValidationError(msg, round=i + 1) from e

        if k is not None and m.k != k:
            msg = 'matrix in round {0} has K={1} but the file declares k={2}'
            raise ValidationError(msg.format(i + 1, m.k, k), round=i + 1)

        matrices.append(m)

    if len(matrices) < horizon and not cycle:
        msg = 'sequence-file {0} has {1} matrices but the horizon is {2} ' \
              'and "cycle" is false'
        raise HorizonError(msg.format(path, len(matrices), horizon))

    _print_status('Done!')

    n = len(matrices)
    params = {'path': str(path), 'cycle': cycle, 'count': n}

    return EnvironmentStream(horizon=horizon, k=matrices[0].k,
                             generator=lambda t: matrices[(t - 1) % n],
                             label='file', params=params)


def save_sequence(path, matrices, cycle=False):
    """
    Save matrices to a JSON sequence-file that can be loaded with
    :obj:`env_from_file`.

    :param path: String with the path of the sequence-file.
    :param matrices: List of `PreferenceMatrix` with the same K.
    :param cycle: Boolean whether the sequence repeats.
    :return: `None`
    """
    assert len(matrices) > 0

    data = {'k': matrices[0].k,
            'cycle': bool(cycle),
            'matrices': [matrix_to_dict(m)['p'] for m in matrices]}

    with open(path, 'w') as file:
        json.dump(data, file)

##########################################################################
# Feedback.

def sample_feedback(m, x, y, rng):
    """
    Sample the outcome of a duel between items x and y.

    :param m: `PreferenceMatrix` for the current round.
    :param x: Integer with the 0-based first item.
    :param y: Integer with the 0-based second item.
    :param rng: `numpy.random.Generator` owned by the caller.
    :return: Integer 1 if x wins, otherwise 0.
    """
    k = m.k
    if not (0 <= x < k and 0 <= y < k):
        _check_item(x, k, name='x')
        _check_item(y, k, name='y')

    return 1 if rng.random() < m.p[x, y] else 0

##########################################################################
