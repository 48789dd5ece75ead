##########################################################################
#
# Exceptions.
#
##########################################################################
# SimDuel - Simple dueling-bandit simulations for Python.
# See README.md for instructions and LICENSE.txt for license details.
##########################################################################

class SimDuelError(Exception):
    """
    Base-class for all exceptions raised by the simduel package.
    """

    def __init__(self, error):
        """
        :param error: String with the error message.
        """
        Exception.__init__(self, error)

##########################################################################
# Preference matrices.

class MatrixError(SimDuelError):
    """
    Exception for when a preference matrix is invalid.
    """


class ShapeError(MatrixError):
    """
    Exception for when a matrix is not square or has fewer than 2 items.
    """


class AsymmetryError(MatrixError):
    """
    Exception for when `p(i,j) + p(j,i) != 1` beyond the tolerance.
    """


class DiagonalError(MatrixError):
    """
    Exception for when a diagonal entry is not exactly 0.5
    """


class RangeError(MatrixError):
    """
    Exception for when a matrix entry is outside [0, 1] or not finite.
    """

##########################################################################
# Parameters and horizons.

class ParamError(SimDuelError, ValueError):
    """
    Exception for invalid parameters, e.g. a learning-rate schedule
    which is not valid for the given horizon.
    """


class HorizonError(SimDuelError):
    """
    Exception for when a round is requested outside the horizon [1, T].
    """


class GapViolation(SimDuelError):
    """
    Exception for when a generated sequence fails its fixed-gap certificate.
    """

    def __init__(self, error, round=None):
        """
        :param error: String with the error message.
        :param round: Integer with the first violating round (1-based).
        """
        SimDuelError.__init__(self, error)
        self.round = round

##########################################################################
# Files and configurations.

class ParseError(SimDuelError):
    """
    Exception for when a sequence-file or config-file cannot be parsed.
    """


class ValidationError(SimDuelError):
    """
    Exception for when a matrix in a sequence-file is invalid.
    """

    def __init__(self, error, round=None):
        """
        :param error: String with the error message.
        :param round: Integer with the round (1-based) of the invalid matrix.
        """
        SimDuelError.__init__(self, error)
        self.round = round


class ConfigError(SimDuelError):
    """
    Exception for an invalid experiment configuration.
    """

##########################################################################
# Policies, traces and sweeps.

class DegenerateDistribution(SimDuelError):
    """
    Exception for a sampling distribution with a zero or negative entry,
    which cannot be used for importance weighting.
    """


class ProtocolError(SimDuelError):
    """
    Exception for calling `select_pair` and `observe` out of order.
    """


class IncompleteTrace(SimDuelError):
    """
    Exception for finalizing a regret trace before all rounds are recorded.
    """


class SweepError(SimDuelError):
    """
    Exception for when one seed of a sweep failed.
    """

    def __init__(self, error, seed=None):
        """
        :param error: String with the error message.
        :param seed: Integer with the failing seed.
        """
        SimDuelError.__init__(self, error)
        self.seed = seed

##########################################################################
# Warnings.

class ScheduleWarning(UserWarning):
    """
    Warning for a parameter schedule used outside its validity window.
    """

##########################################################################
