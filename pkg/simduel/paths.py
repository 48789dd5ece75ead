##########################################################################
#
# Functions for composing file-paths for storing experiment results.
#
##########################################################################
# SimDuel - Simple dueling-bandit simulations for Python.
# See README.md for instructions and LICENSE.txt for license details.
##########################################################################

import os

##########################################################################
# Compose filenames.

def _filename_trace(seed, extension='csv'):
    """
    Compose the filename for the trace of a single run.

    :param seed: Integer with the seed of the run.
    :param extension: String with filename extension e.g. 'csv' or 'json'.
    :return: String with filename for the trace-file.
    """
    return 'trace-seed{0}.{1}'.format(seed, extension)


def _filename_aggregate():
    """
    :return: String with filename for the aggregate summary of a sweep.
    """
    return 'aggregate.csv'


def _filename_info(name):
    """
    Compose the filename for an info-file given its name.

    :param name: String with name of the info-file e.g. 'config'.
    :return: String with filename for the info-file.
    """
    return name + '.json'

##########################################################################
# Compose the full paths for where files are stored on disk.

def _path_trace(output_dir, seed, extension='csv'):
    """
    :param output_dir: String with the output directory.
    :param seed: Integer with the seed of the run.
    :param extension: String with filename extension.
    :return: String with full path for the trace-file.
    """
    filename = _filename_trace(seed=seed, extension=extension)
    return os.path.join(output_dir, filename)


def _path_aggregate(output_dir):
    """
    :param output_dir: String with the output directory.
    :return: String with full path for the aggregate-file.
    """
    return os.path.join(output_dir, _filename_aggregate())


def _path_info(output_dir, name):
    """
    :param output_dir: String with the output directory.
    :param name: String with name of the info-file e.g. 'manifest'.
    :return: String with full path for the info-file.
    """
    return os.path.join(output_dir, _filename_info(name=name))

##########################################################################
