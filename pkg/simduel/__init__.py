##########################################################################
# This is also defined in setup.py and must be updated in both places.
__version__ = "0.1.0"

# Expose the following as top-level imports.

from simduel.bounds import bound_curve, lower_bound_curve
from simduel.config import set_output_dir, get_output_dir
from simduel.config import set_default_delta, get_default_delta
from simduel.config import set_epsilon_constant, get_epsilon_constant
from simduel.config import set_checkpoint_count, get_checkpoint_count
from simduel.config import set_tolerance, get_tolerance
from simduel.config import set_verbose, get_verbose
from simduel.environments import EnvironmentStream, FixedGapCertificate
from simduel.environments import stationary_env, symmetric_instance, random_instance
from simduel.environments import lower_bound_instance, tuned_epsilon
from simduel.environments import hidden_best_env, adv_borda_env
from simduel.environments import check_fixed_gap, fixed_gap_env
from simduel.environments import env_from_file, save_sequence, sample_feedback
from simduel.exceptions import SimDuelError
from simduel.harness import ExperimentConfig, run_single, run_sweep, aggregate
from simduel.output import emit_outputs
from simduel.policies import DuelingExp3, DuelingExp3HP
from simduel.policies import BordaConfidenceBound, UniformBaseline, make_policy
from simduel.preferences import PreferenceMatrix, ScoreVector, validate_matrix
from simduel.preferences import borda_scores, shifted_scores
from simduel.preferences import regret_increment, hindsight_best
from simduel.regret import RegretTrace, RegretResult
