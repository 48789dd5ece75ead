##########################################################################
#
# Write the results of a sweep to disk:
#
# - trace-seed{seed}.csv (or .json) for each seed.
# - aggregate.csv with the summary across seeds.
# - config.json with the resolved experiment config.
# - manifest.json with the software version, wall-clock and timestamp.
#
# Everything except the manifest is bit-identical for identical inputs.
#
##########################################################################
# SimDuel - Simple dueling-bandit simulations for Python.
# See README.md for instructions and LICENSE.txt for license details.
##########################################################################

import json
import os
from datetime import datetime, timezone

from simduel.config import get_output_dir
from simduel.paths import _path_trace, _path_aggregate, _path_info
from simduel.utils import _print_status

##########################################################################
# Constants.

#: Format of floats in the CSV-files, so the files are bit-stable.
FLOAT_FORMAT = '%.10g'

##########################################################################
# Helper functions.

def _write_json(path, data):
    """
    Write a dict to a JSON-file with sorted keys.
    """
    with open(path, 'w') as file:
        json.dump(data, file, sort_keys=True, indent=2)
        file.write('\n')


def _trace_to_dict(result):
    """
    Convert the result of a run to a Python dict for JSON output.
    Items are 1-based.
    """
    return {'seed': result.seed,
            'k': result.k,
            'horizon': result.horizon,
            'R_T': result.regret,
            'R_s_T': result.regret_shifted,
            'i_star': result.i_star + 1,
            'snapshot': result.snapshot,
            'checkpoints': result.checkpoints.to_dict(orient='records')}


def _write_trace(result, output_dir, fmt):
    """
    Write the trace of a single run as CSV or JSON.
    """
    path = _path_trace(output_dir=output_dir, seed=result.seed, extension=fmt)

    if fmt == 'csv':
        result.checkpoints.to_csv(path, index=False, float_format=FLOAT_FORMAT)
    else:
        _write_json(path=path, data=_trace_to_dict(result))

    return path

##########################################################################

def emit_outputs(sweep, output_dir=None, wall_clock=None):
    """
    Write all output files of a sweep.

    :param sweep:
        `SweepResult` from :obj:`~simduel.harness.run_sweep`.

    :param output_dir:
        String with the output directory. If `None` then use the 'dir'
        of the config's output, or :obj:`~simduel.config.get_output_dir`.

    :param wall_clock:
        Optional float with the seconds the sweep took, for the manifest.

    :raises OSError: If the files cannot be written.
    :return: List of strings with the paths of the written files.
    """
    # Import here to avoid a cyclic import.
    from simduel import __version__

    if output_dir is None:
        output_dir = sweep.config.output.get('dir')
    if output_dir is None:
        output_dir = get_output_dir()

    output_dir = os.path.expanduser(output_dir)
    os.makedirs(output_dir, exist_ok=True)

    _print_status('- Writing results to {0} ... '.format(output_dir), end='')

    paths = []

    for result in sweep.results:
        for fmt in sweep.config.output_formats():
            paths.append(_write_trace(result=result, output_dir=output_dir,
                                      fmt=fmt))

    path = _path_aggregate(output_dir=output_dir)
    sweep.summary.to_csv(path, index=False, float_format=FLOAT_FORMAT)
    paths.append(path)

    path = _path_info(output_dir=output_dir, name='config')
    _write_json(path=path, data=sweep.resolved_config())
    paths.append(path)

    manifest = {'software': 'simduel',
                'version': __version__,
                'seeds': sweep.seeds,
                'wall_clock_seconds': wall_clock,
                'timestamp': datetime.now(timezone.utc).isoformat()}
    path = _path_info(output_dir=output_dir, name='manifest')
    _write_json(path=path, data=manifest)
    paths.append(path)

    _print_status('Done!')

    return paths

##########################################################################
