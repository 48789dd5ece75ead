##########################################################################
#
# Various utility functions.
#
##########################################################################
# SimDuel - Simple dueling-bandit simulations for Python.
# See README.md for instructions and LICENSE.txt for license details.
##########################################################################

import math

import numpy as np

from simduel.config import get_verbose

##########################################################################
# Constants.

#: Sub-stream of a run's root seed used for sampling duel outcomes.
FEEDBACK_STREAM = 0

#: Sub-stream of a run's root seed used for the policy's own sampling.
POLICY_STREAM = 1

#: Sub-stream of an environment seed used for the per-round noise.
ENVIRONMENT_STREAM = 2

#: Number of additions summed plainly before being folded into the
#: compensated total.
BLOCK_SIZE = 1024

##########################################################################
# Random number generators.

def make_rng(seed, stream=None):
    """
    Create a NumPy random number generator for the given seed.

    A run uses one root seed and derives independent sub-streams from it
    with a fixed offset in the `SeedSequence` spawn-key, so the policy can
    be swapped without changing the randomness of the duel outcomes.

    :param seed:
        Non-negative integer with the root seed.

    :param stream:
        Optional integer with the sub-stream, e.g. FEEDBACK_STREAM or
        POLICY_STREAM, or a tuple of integers for nested sub-streams.
        If `None` then the root seed is used directly.

    :return:
        `numpy.random.Generator`
    """
    if stream is None:
        seed_seq = np.random.SeedSequence(entropy=seed)
    else:
        spawn_key = tuple(stream) if isinstance(stream, tuple) else (stream,)
        seed_seq = np.random.SeedSequence(entropy=seed, spawn_key=spawn_key)

    return np.random.default_rng(seed_seq)

##########################################################################
# Compensated summation.

class CompensatedSum:
    """
    Running sum of scalars or equally shaped arrays, accurate for very
    long horizons (10^7 rounds and more).

    Additions are first summed plainly into a small block, and every
    `block_size` additions the block is folded into the total using
    Kahan's compensated summation. Reading the value never changes the
    internal state, so the result does not depend on how often it is read.
    """

    def __init__(self, shape=None, block_size=BLOCK_SIZE):
        """
        :param shape:
            `None` for a running sum of Python floats, otherwise an integer
            or tuple with the shape of the NumPy arrays being summed.

        :param block_size:
            Integer with the number of additions per block.
        """
        self._scalar = shape is None
        self._block_size = block_size
        self._count = 0

        if self._scalar:
            self._total = 0.0
            self._comp = 0.0
            self._block = 0.0
        else:
            self._total = np.zeros(shape, dtype=np.float64)
            self._comp = np.zeros(shape, dtype=np.float64)
            self._block = np.zeros(shape, dtype=np.float64)

    def add(self, value):
        """
        Add a scalar or array to the running sum.

        :param value: Float or NumPy array with the same shape as the sum.
        :return: `None`
        """
        if self._scalar:
            self._block += value
        else:
            # In-place so no new array is allocated every round.
            np.add(self._block, value, out=self._block)

        self._count += 1

        if self._count >= self._block_size:
            self._fold()

    def _fold(self):
        """
        Fold the current block into the total with Kahan's summation.
        """
        y = self._block - self._comp
        t = self._total + y
        self._comp = (t - self._total) - y
        self._total = t

        if self._scalar:
            self._block = 0.0
        else:
            self._block = np.zeros_like(self._total)

        self._count = 0

    def value(self):
        """
        :return: Float or NumPy array with the current sum.
        """
        result = self._total + (self._block - self._comp)

        if self._scalar:
            return float(result)

        return np.array(result, dtype=np.float64)

##########################################################################
# Statistics.

def nearest_rank_percentile(values, percent, axis=0):
    """
    Nearest-rank percentile: the smallest value such that at least
    `percent` percent of the values are less than or equal to it.

    :param values:
        NumPy array with the values.

    :param percent:
        Float between 0 and 100.

    :param axis:
        Integer with the axis along which the percentile is taken.

    :return:
        NumPy array (or float for 1-dim input) with the percentiles.
    """
    values = np.sort(np.asarray(values, dtype=np.float64), axis=axis)
    n = values.shape[axis]

    # Rank is 1-based and at least 1.
    rank = max(1, int(math.ceil(percent / 100.0 * n)))

    return np.take(values, rank - 1, axis=axis)

##########################################################################
# Checkpoints.

def geometric_checkpoints(horizon, count):
    """
    Rounds for compact trace output: `count` geometrically spaced rounds
    between 1 and `horizon`, always including the final round.

    :param horizon:
        Integer with the number of rounds T.

    :param count:
        Integer with the number of checkpoints. If 0 then no checkpoints.

    :return:
        Sorted NumPy array of unique 1-based rounds.
    """
    if count <= 0:
        return np.zeros(0, dtype=np.int64)

    rounds = np.geomspace(1, horizon, num=count)
    rounds = np.round(rounds).astype(np.int64)

    # Rounding can produce duplicates for the first rounds.
    rounds = np.union1d(rounds, [horizon])

    return rounds.astype(np.int64)

##########################################################################
# Argument checks.

def _check_item(item, k, name='item'):
    """
    Raise an IndexError if `item` is not a 0-based index into `k` items.
    """
    if not 0 <= item < k:
        msg = '{0}={1} is out of range for K={2} items'
        msg = msg.format(name, item, k)
        raise IndexError(msg)

##########################################################################
# Status messages.

def _print_status(msg, end='\n'):
    """
    Print a status message if verbose output is enabled.
    """
    if get_verbose():
        print(msg, end=end, flush=True)

##########################################################################
