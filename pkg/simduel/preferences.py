##########################################################################
#
# Validated preference matrices and the Borda score / regret formulas.
#
# Items are indexed from 0 in Python and from 1 in all files and on the
# command-line. The conversion is done in the file readers and writers.
#
##########################################################################
# SimDuel - Simple dueling-bandit simulations for Python.
# See README.md for instructions and LICENSE.txt for license details.
##########################################################################

import numpy as np

from simduel.config import get_tolerance
from simduel.exceptions import ShapeError, AsymmetryError, DiagonalError
from simduel.exceptions import RangeError, ParseError
from simduel.names import KIND_BORDA, KIND_SHIFTED, KIND_ESTIMATED
from simduel.utils import _check_item

##########################################################################
# Types.

class PreferenceMatrix:
    """
    One round's K x K matrix of pairwise win-probabilities, where `p[i, j]`
    is the probability that item `i` beats item `j` in a duel.

    Instances are immutable: the underlying NumPy array is read-only.
    Create them with :obj:`~simduel.preferences.validate_matrix`.
    """

    def __init__(self, p):
        """
        :param p:
            NumPy array which has already been validated.
        """
        p = np.array(p, dtype=np.float64)
        p.setflags(write=False)

        self._p = p
        self._k = p.shape[0]

    @property
    def k(self):
        """Number of items K."""
        return self._k

    @property
    def p(self):
        """Read-only NumPy array with the win-probabilities."""
        return self._p

    def __eq__(self, other):
        if not isinstance(other, PreferenceMatrix):
            return NotImplemented
        return np.array_equal(self._p, other._p)

    def __hash__(self):
        return hash(self._p.tobytes())

    def __repr__(self):
        return 'PreferenceMatrix(k={0})'.format(self._k)


class ScoreVector:
    """
    Length-K vector of per-item scores tagged with its kind:

    - 'borda': true Borda scores, all values in [0, 1].
    - 'shifted': true shifted Borda scores, all values in [0, 1].
    - 'estimated': estimates from a policy, finite and non-negative
      but possibly above 1 because of importance weighting.
    """

    def __init__(self, values, kind):
        """
        :param values: NumPy array with the scores.
        :param kind: String with the kind of scores, see `names.py`
        """
        assert kind in (KIND_BORDA, KIND_SHIFTED, KIND_ESTIMATED)

        # Copy so the caller's array stays writable.
        values = np.array(values, dtype=np.float64)
        values.setflags(write=False)

        self.values = values
        self.kind = kind

    def __len__(self):
        return len(self.values)

    def __getitem__(self, item):
        return self.values[item]

    def __repr__(self):
        return 'ScoreVector(kind={0}, values={1})'.format(self.kind, self.values)

##########################################################################
# Validation.

def validate_matrix(p, repair=False, tol=None):
    """
    Validate a raw K x K array and return it as a `PreferenceMatrix`.

    The constraints are:

    - The array is square with K >= 2.
    - All entries are in [0, 1].
    - The diagonal is exactly 0.5
    - `p[i, j] + p[j, i] == 1` within the absolute tolerance `tol`.

    Matrices read from text-files may carry decimal rounding. With
    `repair=True` the array is symmetrized as `(p + (1 - p.T)) / 2`
    before validation, which fixes both the diagonal and small
    asymmetries.

    :param p:
        Array-like with the win-probabilities.

    :param repair:
        Boolean whether to symmetrize the array before validating it.

    :param tol:
        Float with the absolute tolerance. If `None` then use the
        tolerance from :obj:`~simduel.config.get_tolerance`.

    :raises ShapeError: Not square, or fewer than 2 items.
    :raises RangeError: An entry outside [0, 1] or not finite.
    :raises DiagonalError: A diagonal entry different from 0.5
    :raises AsymmetryError: `p[i, j] + p[j, i]` differs from 1.

    :return:
        `PreferenceMatrix`
    """

    if tol is None:
        tol = get_tolerance()

    try:
        p = np.array(p, dtype=np.float64)
    except (TypeError, ValueError) as e:
        raise ShapeError('matrix is not a rectangular numeric array') from e

    if p.ndim != 2 or p.shape[0] != p.shape[1]:
        msg = 'matrix must be square, got shape {0}'.format(p.shape)
        raise ShapeError(msg)

    k = p.shape[0]
    if k < 2:
        msg = 'matrix must have K >= 2 items, got K={0}'.format(k)
        raise ShapeError(msg)

    if not np.all(np.isfinite(p)) or np.any(p < 0.0) or np.any(p > 1.0):
        i, j = np.argwhere(~((p >= 0.0) & (p <= 1.0)))[0]
        msg = 'entry p[{0},{1}]={2} is outside [0, 1]'.format(i, j, p[i, j])
        raise RangeError(msg)

    if repair:
        p = (p + (1.0 - p.T)) / 2.0

    diag = np.diagonal(p)
    if np.any(diag != 0.5):
        i = int(np.flatnonzero(diag != 0.5)[0])
        msg = 'diagonal entry p[{0},{0}]={1} is not 0.5'.format(i, diag[i])
        raise DiagonalError(msg)

    dev = np.abs(p + p.T - 1.0)
    if np.any(dev > tol):
        i, j = np.unravel_index(np.argmax(dev), dev.shape)
        msg = 'p[{0},{1}] + p[{1},{0}] = {2} is not 1'
        msg = msg.format(i, j, p[i, j] + p[j, i])
        raise AsymmetryError(msg)

    return PreferenceMatrix(p)

##########################################################################
# Scores.

def borda_scores(m):
    """
    Borda score of each item: the probability that it beats an item chosen
    uniformly at random among the other K-1 items.

        b(i) = 1/(K-1) * sum_{j != i} p(i,j)

    :param m: `PreferenceMatrix`
    :return: `ScoreVector` of kind 'borda'.
    """
    # The diagonal is exactly 0.5 so it is removed from the row-sums.
    values = (m.p.sum(axis=1) - 0.5) / (m.k - 1)
    return ScoreVector(values=values, kind=KIND_BORDA)


def shifted_scores(m):
    """
    Shifted Borda score of each item: the average of row `i` including
    the diagonal entry.

        s(i) = 1/K * sum_j p(i,j) = ((K-1) * b(i) + 0.5) / K

    :param m: `PreferenceMatrix`
    :return: `ScoreVector` of kind 'shifted'.
    """
    values = m.p.sum(axis=1) / m.k
    return ScoreVector(values=values, kind=KIND_SHIFTED)

##########################################################################
# Regret.

def regret_increment(b, i_star, x, y):
    """
    Regret of playing the pair (x, y) in one round, measured against the
    item `i_star`:

        r = b(i_star) - (b(x) + b(y)) / 2

    Because `i_star` is the hindsight winner over all rounds and not the
    winner of this round, the result may be negative.

    :param b: `ScoreVector` with Borda scores (or shifted scores).
    :param i_star: Integer with the 0-based reference item.
    :param x: Integer with the 0-based first item.
    :param y: Integer with the 0-based second item.
    :return: Float.
    """
    k = len(b)
    _check_item(i_star, k, name='i_star')
    _check_item(x, k, name='x')
    _check_item(y, k, name='y')

    return float(b[i_star] - 0.5 * (b[x] + b[y]))


def hindsight_best(cumulative_borda):
    """
    The hindsight winner: the item with the largest cumulative Borda score.
    Ties are broken by the lowest index, so runs are reproducible.

    :param cumulative_borda: Array-like with K cumulative scores.
    :return: Integer with the 0-based item.
    """
    cumulative_borda = np.asarray(cumulative_borda, dtype=np.float64)
    assert cumulative_borda.size > 0

    # np.argmax returns the first occurrence of the maximum.
    return int(np.argmax(cumulative_borda))

##########################################################################
# JSON conversion.

def matrix_to_dict(m):
    """
    Convert a matrix to the JSON object `{"k": K, "p": [[...], ...]}`

    :param m: `PreferenceMatrix`
    :return: Python dict.
    """
    return {'k': m.k, 'p': m.p.tolist()}


def matrix_from_dict(d, repair=False):
    """
    Convert the JSON object `{"k": K, "p": [[...], ...]}` to a validated
    matrix.

    :param d: Python dict.
    :param repair: Boolean passed to :obj:`validate_matrix`.
    :return: `PreferenceMatrix`
    """
    try:
        k = int(d['k'])
        p = d['p']
    except (KeyError, TypeError, ValueError) as e:
        raise ParseError('matrix object must have keys "k" and "p"') from e

    m = validate_matrix(p, repair=repair)

    if m.k != k:
        msg = 'matrix declares k={0} but has {1} rows'.format(k, m.k)
        raise ParseError(msg)

    return m

##########################################################################
