##########################################################################
#
# Global configuration variables such as the output directory and the
# defaults used when an experiment config leaves a value unspecified.
# Use the set/get functions for correct access to these variables.
#
##########################################################################
# SimDuel - Simple dueling-bandit simulations for Python.
# See README.md for instructions and LICENSE.txt for license details.
##########################################################################

import os

from simduel.exceptions import ConfigError, ParamError

##########################################################################
# Output directory.

# Directory where traces, summaries and manifests are written.
_output_dir = None


def set_output_dir(output_dir='~/simduel_output/'):
    """
    Set the directory where experiment results are written
    and create the directory if it does not exist.

    :param output_dir: String with the directory-name.
    :return: `None`
    """
    global _output_dir

    # Expand directory if it begins with ~
    _output_dir = os.path.expanduser(output_dir)

    # This also creates all parent directories if they don't exist.
    if not os.path.exists(_output_dir):
        os.makedirs(_output_dir)


def get_output_dir():
    """
    Get the full path for the directory where results are written.

    :return: String with the path for the output-directory.
    """
    if _output_dir is None:
        msg = 'The simduel output directory has not been set. ' \
              'Please call the function sd.set_output_dir() first, ' \
              'or pass an output directory explicitly.'
        raise ConfigError(msg)

    return _output_dir

##########################################################################
# Defaults for algorithms and environments.

# Confidence parameter for the high-probability D-EXP3 variant and BCB.
_default_delta = 0.05

# Constant c in the tuned perturbation epsilon = c * (K/T)^(1/3).
_epsilon_constant = 1.0

# Number of geometrically spaced checkpoint rounds.
_checkpoint_count = 100

# Absolute tolerance for p(i,j) + p(j,i) == 1 in matrix validation.
_tolerance = 1e-12

# Whether status messages are printed.
_verbose = True


def set_default_delta(delta=0.05):
    """
    Set the default confidence parameter delta.

    :param delta: Float strictly between 0 and 1.
    :return: `None`
    """
    global _default_delta

    if not 0.0 < delta < 1.0:
        raise ParamError('delta must be in (0, 1), got {0}'.format(delta))

    _default_delta = delta


def get_default_delta():
    """
    :return: Float with the default confidence parameter delta.
    """
    return _default_delta


def set_epsilon_constant(c=1.0):
    """
    Set the constant used by :obj:`~simduel.environments.tuned_epsilon`.

    :param c: Positive float.
    :return: `None`
    """
    global _epsilon_constant

    if not c > 0.0:
        raise ParamError('epsilon constant must be positive, got {0}'.format(c))

    _epsilon_constant = c


def get_epsilon_constant():
    """
    :return: Float with the constant of the tuned perturbation epsilon.
    """
    return _epsilon_constant


def set_checkpoint_count(count=100):
    """
    Set the default number of geometrically spaced checkpoint rounds.

    :param count: Non-negative integer.
    :return: `None`
    """
    global _checkpoint_count

    if count < 0:
        raise ParamError('checkpoint count must be >= 0, got {0}'.format(count))

    _checkpoint_count = int(count)


def get_checkpoint_count():
    """
    :return: Integer with the default number of checkpoint rounds.
    """
    return _checkpoint_count


def set_tolerance(tol=1e-12):
    """
    Set the absolute tolerance used when validating preference matrices.

    :param tol: Non-negative float.
    :return: `None`
    """
    global _tolerance

    if tol < 0:
        raise ParamError('tolerance must be >= 0, got {0}'.format(tol))

    _tolerance = tol


def get_tolerance():
    """
    :return: Float with the matrix validation tolerance.
    """
    return _tolerance


def set_verbose(verbose=True):
    """
    Set whether status messages are printed.

    :param verbose: Boolean.
    :return: `None`
    """
    global _verbose
    _verbose = bool(verbose)


def get_verbose():
    """
    :return: Boolean whether status messages are printed.
    """
    return _verbose

##########################################################################
# All settings together.

def get_settings():
    """
    Get all the settings that affect the results of a run, e.g. for
    copying them into the worker-processes of a parallel sweep.

    :return: Dict with the settings.
    """
    return {'default_delta': _default_delta,
            'epsilon_constant': _epsilon_constant,
            'checkpoint_count': _checkpoint_count,
            'tolerance': _tolerance}


def set_settings(settings):
    """
    Set all the settings from a dict made by :obj:`get_settings`.

    :param settings: Dict with the settings.
    :return: `None`
    """
    set_default_delta(settings['default_delta'])
    set_epsilon_constant(settings['epsilon_constant'])
    set_checkpoint_count(settings['checkpoint_count'])
    set_tolerance(settings['tolerance'])

##########################################################################
