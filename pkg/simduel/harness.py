##########################################################################
#
# Experiment orchestration: parse an experiment config, run single seeds
# or sweeps of seeds in parallel, and aggregate the regret across seeds.
#
# An experiment config is a JSON object such as:
#
#   {"environment": {"kind": "lower-bound",
#                    "params": {"k": 10, "epsilon": 0.1, "m": 1}},
#    "policy": {"kind": "dexp3", "params": {}},
#    "horizon": 100000,
#    "seeds": {"base": 0, "count": 50},
#    "checkpoints": {"count": 100},
#    "output": {"dir": "~/simduel_output/exp1", "formats": ["csv"]}}
#
# Items are 1-based in the config, e.g. the perturbed item "m" above.
#
##########################################################################
# SimDuel - Simple dueling-bandit simulations for Python.
# See README.md for instructions and LICENSE.txt for license details.
##########################################################################

import copy
import json
from concurrent.futures import ProcessPoolExecutor
from functools import partial

import numpy as np
import pandas as pd

from simduel.bounds import bound_curve, BOUND_LABELS
from simduel.config import get_checkpoint_count, get_default_delta
from simduel.config import set_verbose, get_settings, set_settings
from simduel.environments import stationary_env, symmetric_instance
from simduel.environments import random_instance, lower_bound_instance
from simduel.environments import hidden_best_env, adv_borda_env
from simduel.environments import fixed_gap_env, env_from_file
from simduel.environments import sample_feedback
from simduel.exceptions import SimDuelError, ConfigError, SweepError
from simduel.names import ENV_STATIONARY, ENV_SYMMETRIC, ENV_LOWER_BOUND
from simduel.names import ENV_HIDDEN_BEST, ENV_ADV_BORDA, ENV_FIXED_GAP
from simduel.names import ENV_RANDOM, ENV_FILE, ENV_KINDS
from simduel.names import POLICY_KINDS, BCB, DEXP3_HP
from simduel.names import ROUND, REGRET, MEAN_R, STD_R, P10, P50, P90
from simduel.names import BOUND, FRAC_UNDER_BOUND, AGGREGATE_COLUMNS
from simduel.policies import make_policy
from simduel.preferences import validate_matrix, borda_scores
from simduel.regret import RegretTrace
from simduel.utils import make_rng, FEEDBACK_STREAM, POLICY_STREAM
from simduel.utils import geometric_checkpoints, nearest_rank_percentile
from simduel.utils import _print_status

##########################################################################
# Constants.

#: Checkpoint rule that stores every round.
CHECKPOINTS_ALL = 'all'

#: Valid output formats for the per-seed traces.
OUTPUT_FORMATS = ('csv', 'json')

# Environment kinds whose sequence is one matrix repeated every round.
_STATIONARY_KINDS = (ENV_STATIONARY, ENV_SYMMETRIC, ENV_LOWER_BOUND,
                     ENV_HIDDEN_BEST, ENV_ADV_BORDA, ENV_RANDOM)

##########################################################################
# Experiment config.

class ExperimentConfig:
    """
    Fully serializable description of an experiment. Use
    :obj:`from_dict` or :obj:`from_json` to create it, which also
    validates the config.
    """

    def __init__(self, environment, policy, horizon, seeds=None,
                 checkpoints=None, output=None):
        """
        :param environment:
            Dict with keys 'kind', 'params' and optionally 'seed'. If the
            seed is missing then every run uses its own seed.

        :param policy:
            Dict with keys 'kind' and 'params'. Missing parameters are
            resolved to their defaults. The key 'gap' in 'params' is not
            passed to the policy but used for the BCB bound.

        :param horizon:
            Integer with the number of rounds T >= 1.

        :param seeds:
            List of integers, or dict `{"base": b, "count": n}` for the
            seeds b, b+1, ..., b+n-1. Default is the single seed 0.

        :param checkpoints:
            Dict `{"count": n}` for n geometrically spaced rounds,
            dict `{"rounds": [...]}` for explicit 1-based rounds,
            or the string 'all'. The final round T is always included
            except for `{"count": 0}` and `{"rounds": []}`.
            Default is `{"count": get_checkpoint_count()}`.

        :param output:
            Dict with keys 'dir' and 'formats'.
        """
        self.environment = environment
        self.policy = policy
        self.horizon = horizon
        self.seeds = seeds if seeds is not None else [0]
        self.checkpoints = checkpoints if checkpoints is not None \
            else {'count': get_checkpoint_count()}
        self.output = output if output is not None else {}

        self._validate()

    @classmethod
    def from_dict(cls, d):
        """
        :param d: Python dict e.g. loaded from a JSON-file.
        :raises ConfigError: If the config is invalid.
        :return: `ExperimentConfig`
        """
        if not isinstance(d, dict):
            raise ConfigError('experiment config must be a JSON object')

        unknown = set(d) - {'environment', 'policy', 'horizon', 'seeds',
                            'checkpoints', 'output'}
        if unknown:
            msg = 'unknown keys in experiment config: {0}'
            raise ConfigError(msg.format(', '.join(sorted(unknown))))

        for key in ('environment', 'policy', 'horizon'):
            if key not in d:
                msg = 'experiment config is missing the key \'{0}\''
                raise ConfigError(msg.format(key))

        return cls(environment=copy.deepcopy(d['environment']),
                   policy=copy.deepcopy(d['policy']),
                   horizon=d['horizon'],
                   seeds=copy.deepcopy(d.get('seeds')),
                   checkpoints=copy.deepcopy(d.get('checkpoints')),
                   output=copy.deepcopy(d.get('output')))

    @classmethod
    def from_json(cls, path):
        """
        :param path: String with the path of a JSON config-file.
        :raises ConfigError: If the file cannot be read or is invalid.
        :return: `ExperimentConfig`
        """
        try:
            with open(path) as file:
                d = json.load(file)
        except (OSError, json.JSONDecodeError) as e:
            msg = 'cannot read experiment config {0}: {1}'.format(path, e)
            raise ConfigError(msg) from e

        return cls.from_dict(d)

    def to_dict(self):
        """
        :return: Python dict that can be saved as JSON.
        """
        return {'environment': copy.deepcopy(self.environment),
                'policy': copy.deepcopy(self.policy),
                'horizon': self.horizon,
                'seeds': copy.deepcopy(self.seeds),
                'checkpoints': copy.deepcopy(self.checkpoints),
                'output': copy.deepcopy(self.output)}

    def replace(self, **kwargs):
        """
        Copy of this config with some of the top-level fields replaced,
        e.g. `config.replace(seeds=[1, 2, 3])`

        :return: `ExperimentConfig`
        """
        d = self.to_dict()
        d.update(kwargs)
        return ExperimentConfig.from_dict(d)

    def seed_list(self):
        """
        :return: Sorted list of unique integer seeds.
        """
        seeds = self.seeds
        if isinstance(seeds, dict):
            seeds = range(seeds['base'], seeds['base'] + seeds['count'])

        return sorted(set(int(s) for s in seeds))

    def checkpoint_rounds(self):
        """
        :return: Sorted NumPy array with the 1-based checkpoint rounds.
        """
        checkpoints = self.checkpoints
        horizon = self.horizon

        if checkpoints == CHECKPOINTS_ALL:
            return np.arange(1, horizon + 1, dtype=np.int64)

        if 'rounds' in checkpoints:
            rounds = checkpoints['rounds']
            if len(rounds) == 0:
                return np.zeros(0, dtype=np.int64)
            return np.union1d(rounds, [horizon]).astype(np.int64)

        return geometric_checkpoints(horizon=horizon, count=checkpoints['count'])

    def output_formats(self):
        """
        :return: List of strings with the trace formats, default ['csv'].
        """
        return list(self.output.get('formats', ['csv']))

    def _validate(self):
        env = self.environment
        if not isinstance(env, dict) or env.get('kind') not in ENV_KINDS:
            msg = 'environment kind must be one of: {0}'
            raise ConfigError(msg.format(', '.join(ENV_KINDS)))

        if not isinstance(env.get('params', {}), dict):
            raise ConfigError('environment params must be a JSON object')

        pol = self.policy
        if not isinstance(pol, dict) or pol.get('kind') not in POLICY_KINDS:
            msg = 'policy kind must be one of: {0}'
            raise ConfigError(msg.format(', '.join(POLICY_KINDS)))

        if not isinstance(pol.get('params', {}), dict):
            raise ConfigError('policy params must be a JSON object')

        if not isinstance(self.horizon, int) or isinstance(self.horizon, bool) \
                or self.horizon < 1:
            msg = 'horizon must be an integer >= 1, got {0}'
            raise ConfigError(msg.format(self.horizon))

        seeds = self.seeds
        if isinstance(seeds, dict):
            if set(seeds) != {'base', 'count'} or seeds['count'] < 1:
                raise ConfigError('seeds must be {"base": b, "count": n} with n >= 1')
        elif not isinstance(seeds, list) or len(seeds) == 0 \
                or not all(isinstance(s, int) and s >= 0 for s in seeds):
            raise ConfigError('seeds must be a non-empty list of integers >= 0')

        checkpoints = self.checkpoints
        if checkpoints != CHECKPOINTS_ALL:
            if not isinstance(checkpoints, dict) \
                    or len(set(checkpoints) & {'count', 'rounds'}) != 1:
                msg = 'checkpoints must be "all", {"count": n} or {"rounds": [...]}'
                raise ConfigError(msg)

            if 'count' in checkpoints and checkpoints['count'] < 0:
                raise ConfigError('checkpoint count must be >= 0')

            rounds = checkpoints.get('rounds', [])
            if any(not 1 <= r <= self.horizon for r in rounds):
                msg = 'checkpoint rounds must be in [1, {0}]'
                raise ConfigError(msg.format(self.horizon))

        formats = self.output_formats()
        if not set(formats) <= set(OUTPUT_FORMATS):
            msg = 'output formats must be among: {0}'
            raise ConfigError(msg.format(', '.join(OUTPUT_FORMATS)))

##########################################################################
# Build environments and policies from a config.

def build_environment(config, seed):
    """
    Create the environment of a run.

    :param config: `ExperimentConfig`
    :param seed: Integer with the run's seed, used for the random
        environment kinds if the config has no environment seed.
    :return: Tuple with `EnvironmentStream` and a `FixedGapCertificate`
        for the 'fixed-gap' kind, otherwise `None`.
    """
    kind = config.environment['kind']
    params = dict(config.environment.get('params', {}))
    env_seed = config.environment.get('seed', seed)
    horizon = config.horizon

    try:
        if kind == ENV_STATIONARY:
            m = validate_matrix(params['matrix'], repair=params.get('repair', False))
            return stationary_env(m, horizon=horizon), None

        elif kind == ENV_SYMMETRIC:
            m = symmetric_instance(k=params['k'])
            return stationary_env(m, horizon=horizon, label=kind), None

        elif kind == ENV_LOWER_BOUND:
            m = lower_bound_instance(k=params['k'], epsilon=params['epsilon'],
                                     m=params.get('m', 0))
            return stationary_env(m, horizon=horizon, label=kind), None

        elif kind == ENV_HIDDEN_BEST:
            stream = hidden_best_env(k=params['k'], epsilon=params['epsilon'],
                                     horizon=horizon, seed=env_seed)
            return stream, None

        elif kind == ENV_ADV_BORDA:
            stream = adv_borda_env(k=params['k'], horizon=horizon,
                                   seed=env_seed, c=params.get('c'))
            return stream, None

        elif kind == ENV_FIXED_GAP:
            return fixed_gap_env(k=params['k'], delta=params['delta'],
                                 horizon=horizon,
                                 perturbation_scale=params.get('perturbation_scale', 0.0),
                                 seed=env_seed)

        elif kind == ENV_RANDOM:
            m = random_instance(k=params['k'], seed=env_seed)
            return stationary_env(m, horizon=horizon, label=kind), None

        elif kind == ENV_FILE:
            stream = env_from_file(path=params['path'], horizon=horizon,
                                   repair=params.get('repair', False))
            return stream, None

    except KeyError as e:
        msg = 'environment kind \'{0}\' requires the param {1}'.format(kind, e)
        raise ConfigError(msg) from e

    # ExperimentConfig has already validated the kind.
    raise AssertionError(kind)


def _policy_params(config):
    """
    Policy params from the config without the 'gap' of the bound.
    """
    params = dict(config.policy.get('params', {}))
    params.pop('gap', None)
    return params


def build_policy(config, k):
    """
    :param config: `ExperimentConfig`
    :param k: Integer with the number of items K of the environment.
    :return: `Policy`
    """
    return make_policy(kind=config.policy['kind'], k=k,
                       horizon=config.horizon, **_policy_params(config))

##########################################################################
# Single runs.

def run_single(config, seed):
    """
    Run one full experiment for the given seed. The run is deterministic:
    the same config and seed always give the same result.

    The seed's sub-streams FEEDBACK_STREAM and POLICY_STREAM are used for
    the duel outcomes and the policy's own sampling, so the outcomes are
    the same for every policy with the same choices.

    If the run fails, a note with the config and seed is added to the
    exception, which is then re-raised.

    :param config: `ExperimentConfig`
    :param seed: Integer with the seed.
    :return: `RegretResult`
    """
    try:
        stream, certificate = build_environment(config=config, seed=seed)
        policy = build_policy(config=config, k=stream.k)

        trace = RegretTrace(k=stream.k, horizon=config.horizon,
                            checkpoints=config.checkpoint_rounds())

        feedback_rng = make_rng(seed, stream=FEEDBACK_STREAM)
        policy_rng = make_rng(seed, stream=POLICY_STREAM)

        for t in range(1, config.horizon + 1):
            x, y = policy.select_pair(policy_rng)
            m, borda, shifted = stream.round_at(t)
            o = sample_feedback(m, x, y, feedback_rng)
            policy.observe(x, y, o)
            trace.record_round(borda, shifted, x, y, o,
                               diagnostics=policy.diagnostics)

        env_params = stream.params
        if certificate is not None:
            env_params['certificate'] = certificate.to_dict()

        return trace.finalize(seed=seed, snapshot=policy.snapshot(),
                              env_params=env_params,
                              policy_params=policy.resolved_params())

    except SimDuelError as e:
        e.add_note('while running seed {0} of config {1}'.format(
            seed, json.dumps(config.to_dict(), sort_keys=True)))
        raise

##########################################################################
# Sweeps.

class SweepResult:
    """
    Results of a sweep over seeds.

    :ivar config: `ExperimentConfig` of the sweep.
    :ivar results: List of `RegretResult` sorted by seed.
    :ivar summary: Pandas DataFrame with the aggregate summary.
    """

    def __init__(self, config, results, summary):
        self.config = config
        self.results = results
        self.summary = summary

    @property
    def seeds(self):
        """List with the seeds in sorted order."""
        return [result.seed for result in self.results]

    def resolved_config(self):
        """
        The config with every default resolved, which together with the
        seeds fully determines the results.

        :return: Python dict that can be saved as JSON.
        """
        d = self.config.to_dict()
        kind = self.config.policy['kind']

        resolved = {'seeds': self.seeds,
                    'checkpoints': self.config.checkpoint_rounds().tolist(),
                    'policy': self.results[0].policy_params,
                    'bound': BOUND_LABELS[kind],
                    'bound_gap': _bound_gap(self.config, self.results[0]),
                    'environments': {str(r.seed): r.env_params
                                     for r in self.results}}
        d['resolved'] = resolved

        return d


def _bound_gap(config, result):
    """
    Gap for the BCB bound: the 'gap' in the policy params, or the delta of
    a fixed-gap environment, or the Borda gap of a constant sequence.
    Returns `None` if no gap is known.
    """
    params = config.policy.get('params', {})
    if 'gap' in params:
        return params['gap']

    env = config.environment
    kind = env['kind']

    if kind == ENV_FIXED_GAP:
        return env['params']['delta']

    if kind in _STATIONARY_KINDS:
        stream, _ = build_environment(config=config, seed=result.seed)
        b = np.sort(borda_scores(stream.matrix_at(1)).values)
        gap = float(b[-1] - b[-2])
        return gap if gap > 0.0 else None

    return None


def aggregate(results, config):
    """
    Aggregate the regret of the checkpoint rounds across seeds. The
    results are reduced in the order of their seeds, so the summary does
    not depend on the order in which the seeds were run.

    :param results: List of `RegretResult`
    :param config: `ExperimentConfig`
    :return: Pandas DataFrame with one row per checkpoint and the
        columns `t,mean_R,std_R,p10,p50,p90,bound,frac_under_bound`.
    """
    assert len(results) >= 1

    results = sorted(results, key=lambda r: r.seed)
    rounds = config.checkpoint_rounds()

    if len(rounds) == 0:
        return pd.DataFrame(columns=AGGREGATE_COLUMNS)

    # Cumulative regret with one row per seed and one column per checkpoint.
    regret = np.stack([r.checkpoints[REGRET].to_numpy(dtype=np.float64)
                       for r in results])

    kind = config.policy['kind']
    params = config.policy.get('params', {})
    delta = params.get('delta', get_default_delta())

    if kind == BCB:
        gap = _bound_gap(config, results[0])
    else:
        gap = None

    if kind == BCB and gap is None:
        bound = np.full(len(rounds), np.nan)
    else:
        bound = bound_curve(policy_kind=kind, k=results[0].k,
                            horizon=config.horizon, checkpoints=rounds,
                            delta=delta if kind in (BCB, DEXP3_HP) else None,
                            gap=gap)

    # Fraction of seeds under the bound, NaN if there is no bound.
    under = (regret <= bound).mean(axis=0)
    under = np.where(np.isnan(bound), np.nan, under)

    data = {ROUND: rounds,
            MEAN_R: regret.mean(axis=0),
            STD_R: regret.std(axis=0, ddof=0),
            P10: nearest_rank_percentile(regret, 10, axis=0),
            P50: nearest_rank_percentile(regret, 50, axis=0),
            P90: nearest_rank_percentile(regret, 90, axis=0),
            BOUND: bound,
            FRAC_UNDER_BOUND: under}

    return pd.DataFrame(data, columns=AGGREGATE_COLUMNS)


def _init_worker(settings):
    # Workers use the parent's settings and never print status messages.
    set_settings(settings)
    set_verbose(False)


def run_sweep(config, threads=1, mp_context=None):
    """
    Run all seeds of the config and aggregate the results.

    With `threads > 1` the seeds are run in parallel processes. Each run
    is single-threaded and deterministic, so the results are the same as
    running the seeds serially.

    :param config: `ExperimentConfig`
    :param threads: Integer with the number of parallel processes.
    :param mp_context: Optional `multiprocessing` context for starting
        the processes, e.g. `multiprocessing.get_context('spawn')`. The
        settings in `config.py` are copied into the processes.
    :raises SweepError: If a seed fails. The sweep is aborted.
    :return: `SweepResult`
    """
    seeds = config.seed_list()

    msg = '- Running sweep with {0} seeds ... '.format(len(seeds))
    _print_status(msg, end='')

    run = partial(run_single, config)

    results = []
    if threads <= 1:
        for seed in seeds:
            try:
                results.append(run(seed))
            except SimDuelError as e:
                msg = 'seed {0} failed: {1}'.format(seed, e)
                raise SweepError(msg, seed=seed) from e
    else:
        with ProcessPoolExecutor(max_workers=threads, mp_context=mp_context,
                                 initializer=_init_worker,
                                 initargs=(get_settings(),)) as executor:
            futures = {seed: executor.submit(run, seed) for seed in seeds}

            for seed in seeds:
                try:
                    results.append(futures[seed].result())
                except SimDuelError as e:
                    for future in futures.values():
                        future.cancel()
                    msg = 'seed {0} failed: {1}'.format(seed, e)
                    raise SweepError(msg, seed=seed) from e

    summary = aggregate(results=results, config=config)

    _print_status('Done!')

    return SweepResult(config=config, results=results, summary=summary)

##########################################################################
