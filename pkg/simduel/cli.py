##########################################################################
#
# Command-line interface. Examples:
#
#   simduel run --config exp.json --seed 3 --out results/
#   simduel sweep --config exp.json --seeds 0-49 --threads 8
#   simduel bounds --policy dexp3 --k 10 --horizon 1000000
#   simduel bounds --policy bcb --k 10 --horizon 1000000 --gap 0.2 --lower --epsilon 0.1
#   simduel validate-env --config fixed_gap.json
#   simduel gen-instance --k 10 --epsilon 0.1 --m 1 --out instance.json
#
# Items are 1-based on the command-line.
#
# Exit codes: 0 for success, 2 for config errors, 3 for runtime errors.
#
##########################################################################
# SimDuel - Simple dueling-bandit simulations for Python.
# See README.md for instructions and LICENSE.txt for license details.
##########################################################################

import argparse
import json
import sys
import time

import pandas as pd

from simduel.bounds import bound_curve, lower_bound_curve
from simduel.config import get_default_delta
from simduel.environments import check_fixed_gap, lower_bound_instance
from simduel.environments import save_sequence
from simduel.exceptions import SimDuelError, ConfigError, ParamError
from simduel.exceptions import SweepError, GapViolation
from simduel.harness import ExperimentConfig, run_sweep, build_environment
from simduel.harness import OUTPUT_FORMATS
from simduel.names import POLICY_KINDS, ENV_FIXED_GAP, ROUND, BOUND
from simduel.output import emit_outputs, FLOAT_FORMAT
from simduel.preferences import borda_scores
from simduel.utils import geometric_checkpoints, _print_status

##########################################################################
# Constants.

EXIT_OK = 0
EXIT_CONFIG_ERROR = 2
EXIT_RUNTIME_ERROR = 3

##########################################################################
# Helper functions.

def _parse_seeds(text):
    """
    Parse seeds written as '7', '1,2,5' or the inclusive range '0-49'.

    :param text: String with the seeds.
    :return: List of integers.
    """
    try:
        if '-' in text:
            first, last = text.split('-')
            return list(range(int(first), int(last) + 1))

        return [int(s) for s in text.split(',')]
    except ValueError as e:
        raise argparse.ArgumentTypeError('invalid seeds: {0}'.format(text)) from e


def _load_config(args, seeds=None):
    """
    Load the experiment config and apply the command-line overrides.
    """
    config = ExperimentConfig.from_json(args.config)
    overrides = {}

    if seeds is not None:
        overrides['seeds'] = seeds

    if args.checkpoints is not None:
        overrides['checkpoints'] = {'count': args.checkpoints}

    if args.out is not None or args.format is not None:
        output = dict(config.output)
        if args.out is not None:
            output['dir'] = args.out
        if args.format is not None:
            output['formats'] = [args.format]
        overrides['output'] = output

    if overrides:
        config = config.replace(**overrides)

    return config


def _is_config_error(e):
    """
    Whether an exception, or the exception that caused a failed sweep,
    came from an invalid config.
    """
    if isinstance(e, SweepError) and e.__cause__ is not None:
        e = e.__cause__

    return isinstance(e, (ConfigError, ParamError))

##########################################################################
# Sub-commands.

def _cmd_sweep(args, seeds=None, threads=1):
    config = _load_config(args, seeds=seeds)

    start = time.perf_counter()
    sweep = run_sweep(config, threads=threads)
    wall_clock = time.perf_counter() - start

    emit_outputs(sweep, wall_clock=wall_clock)

    return EXIT_OK


def cmd_run(args):
    return _cmd_sweep(args, seeds=[args.seed])


def cmd_sweep(args):
    return _cmd_sweep(args, seeds=args.seeds, threads=args.threads)


def cmd_bounds(args):
    checkpoints = geometric_checkpoints(horizon=args.horizon,
                                        count=args.checkpoints)

    delta = args.delta if args.delta is not None else get_default_delta()

    df = pd.DataFrame({ROUND: checkpoints})
    df[BOUND] = bound_curve(policy_kind=args.policy, k=args.k,
                            horizon=args.horizon, checkpoints=checkpoints,
                            delta=delta, gap=args.gap)

    if args.lower:
        if args.epsilon is None:
            raise ParamError('--lower requires --epsilon')

        df['lower'] = lower_bound_curve(k=args.k, horizon=args.horizon,
                                        epsilon=args.epsilon,
                                        checkpoints=checkpoints)

    df.to_csv(sys.stdout, index=False, float_format=FLOAT_FORMAT)

    return EXIT_OK


def cmd_validate_env(args):
    config = ExperimentConfig.from_json(args.config)
    kind = config.environment['kind']

    try:
        stream, certificate = build_environment(config, seed=args.seed)
    except GapViolation as e:
        print('Fixed-gap certificate failed: {0}'.format(e))
        return EXIT_RUNTIME_ERROR

    if certificate is None:
        # Certify the best item of the first round if none is given.
        if args.item is not None:
            if not 1 <= args.item <= stream.k:
                msg = '--item must be in [1, {0}], got {1}'
                raise ConfigError(msg.format(stream.k, args.item))
            i_star = args.item - 1
        else:
            i_star = int(borda_scores(stream.matrix_at(1)).values.argmax())

        if args.delta is not None:
            delta = args.delta
        elif kind == ENV_FIXED_GAP:
            delta = config.environment['params']['delta']
        else:
            raise ConfigError('validate-env requires --delta for '
                              'environment kind \'{0}\''.format(kind))

        _print_status('- Checking fixed-gap condition ... ', end='')
        certificate = check_fixed_gap(stream, i_star=i_star, delta=delta)
        _print_status('Done!')

    print(json.dumps(certificate.to_dict(), sort_keys=True, indent=2))

    return EXIT_OK if certificate.valid else EXIT_RUNTIME_ERROR


def cmd_gen_instance(args):
    m = lower_bound_instance(k=args.k, epsilon=args.epsilon, m=args.m)

    _print_status('- Writing instance to {0} ... '.format(args.out), end='')
    save_sequence(args.out, [m], cycle=True)
    _print_status('Done!')

    return EXIT_OK

##########################################################################
# Parser.

def _add_run_args(p):
    p.add_argument('--config', required=True,
                   help='JSON-file with the experiment config.')
    p.add_argument('--out', default=None, help='Output directory.')
    p.add_argument('--format', choices=OUTPUT_FORMATS, default=None,
                   help='Format of the per-seed traces.')
    p.add_argument('--checkpoints', type=int, default=None,
                   help='Number of geometric checkpoint rounds.')


def build_parser():
    """
    :return: `argparse.ArgumentParser` for the command-line.
    """
    p = argparse.ArgumentParser(prog='simduel',
                                description='Simple dueling-bandit simulations.')
    sub = p.add_subparsers(dest='cmd', required=True)

    p_run = sub.add_parser('run', help='Run one seed of a config.')
    _add_run_args(p_run)
    p_run.add_argument('--seed', type=int, default=0)
    p_run.set_defaults(func=cmd_run)

    p_sweep = sub.add_parser('sweep', help='Run a config for many seeds.')
    _add_run_args(p_sweep)
    p_sweep.add_argument('--seeds', type=_parse_seeds, default=None,
                         help="Seeds e.g. '0-49' or '1,2,5'. Default from config.")
    p_sweep.add_argument('--threads', type=int, default=1,
                         help='Number of parallel processes.')
    p_sweep.set_defaults(func=cmd_sweep)

    p_bounds = sub.add_parser('bounds', help='Print a regret bound curve as CSV.')
    p_bounds.add_argument('--policy', choices=POLICY_KINDS, required=True)
    p_bounds.add_argument('--k', type=int, required=True)
    p_bounds.add_argument('--horizon', type=int, required=True)
    p_bounds.add_argument('--delta', type=float, default=None)
    p_bounds.add_argument('--gap', type=float, default=None)
    p_bounds.add_argument('--checkpoints', type=int, default=100)
    p_bounds.add_argument('--lower', action='store_true',
                          help='Add the lower-bound reference curve.')
    p_bounds.add_argument('--epsilon', type=float, default=None)
    p_bounds.set_defaults(func=cmd_bounds)

    p_valid = sub.add_parser('validate-env',
                             help='Check the fixed-gap certificate of an environment.')
    p_valid.add_argument('--config', required=True)
    p_valid.add_argument('--seed', type=int, default=0)
    p_valid.add_argument('--item', type=int, default=None,
                         help='1-based item to certify.')
    p_valid.add_argument('--delta', type=float, default=None)
    p_valid.set_defaults(func=cmd_validate_env)

    p_gen = sub.add_parser('gen-instance',
                           help='Write a lower-bound instance to a sequence-file.')
    p_gen.add_argument('--k', type=int, required=True)
    p_gen.add_argument('--epsilon', type=float, required=True)
    p_gen.add_argument('--m', type=int, default=0,
                       help='1-based perturbed good item, 0 for none.')
    p_gen.add_argument('--out', required=True)
    p_gen.set_defaults(func=cmd_gen_instance)

    return p


def main(argv=None):
    """
    Entry point of the `simduel` command.

    :param argv: Optional list of strings with the arguments.
    :return: Integer with the exit code.
    """
    args = build_parser().parse_args(argv)

    try:
        return args.func(args)
    except SimDuelError as e:
        print('Error: {0}'.format(e), file=sys.stderr)
        if _is_config_error(e):
            return EXIT_CONFIG_ERROR
        return EXIT_RUNTIME_ERROR
    except OSError as e:
        print('Error: {0}'.format(e), file=sys.stderr)
        return EXIT_RUNTIME_ERROR


if __name__ == '__main__':
    sys.exit(main())

##########################################################################
