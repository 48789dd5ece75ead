##########################################################################
#
# Names that make it easier to address the kinds of environments and
# policies in experiment configs, and the columns of the output files.
# For example, you can write df[MEAN_R] instead of df['mean_R'].
#
##########################################################################
# SimDuel - Simple dueling-bandit simulations for Python.
# See README.md for instructions and LICENSE.txt for license details.
##########################################################################

##########################################################################
# Kinds of policies.

#: Dueling-EXP3 with importance-weighted shifted Borda estimates.
DEXP3 = 'dexp3'

#: High-probability variant of Dueling-EXP3 with biased estimates.
DEXP3_HP = 'dexp3-hp'

#: Borda-Confidence-Bound for the fixed-gap setting.
BCB = 'bcb'

#: Control policy that plays two independent uniform items.
UNIFORM = 'uniform'

#: All valid policy kinds.
POLICY_KINDS = (DEXP3, DEXP3_HP, BCB, UNIFORM)

##########################################################################
# Kinds of environments.

#: Constant sequence of a matrix given explicitly in the config.
ENV_STATIONARY = 'stationary'

#: Constant sequence of the all-0.5 matrix.
ENV_SYMMETRIC = 'symmetric'

#: Constant sequence of a block-structured lower-bound instance.
ENV_LOWER_BOUND = 'lower-bound'

#: Lower-bound instance whose perturbed good item is drawn at random.
ENV_HIDDEN_BEST = 'hidden-best'

#: Hidden-best instance with epsilon tuned to the horizon.
ENV_ADV_BORDA = 'adv-borda'

#: Drifting sequence with a certified fixed gap.
ENV_FIXED_GAP = 'fixed-gap'

#: Constant sequence of a random valid matrix.
ENV_RANDOM = 'random'

#: Sequence replayed from a JSON sequence-file.
ENV_FILE = 'file'

#: All valid environment kinds.
ENV_KINDS = (ENV_STATIONARY, ENV_SYMMETRIC, ENV_LOWER_BOUND, ENV_HIDDEN_BEST,
             ENV_ADV_BORDA, ENV_FIXED_GAP, ENV_RANDOM, ENV_FILE)

##########################################################################
# Kinds of score vectors.

KIND_BORDA = 'borda'
KIND_SHIFTED = 'shifted'
KIND_ESTIMATED = 'estimated'

##########################################################################
# Columns of the trace output.

ROUND = 't'
ITEM_X = 'x'
ITEM_Y = 'y'
OUTCOME = 'o'
REGRET_ROUND = 'r_t'
REGRET = 'R_t'
REGRET_SHIFTED = 'R_s_t'

#: Prefix for optional policy diagnostics columns.
DIAG_PREFIX = 'diag_'

#: Fixed columns of the trace CSV.
TRACE_COLUMNS = [ROUND, ITEM_X, ITEM_Y, OUTCOME,
                 REGRET_ROUND, REGRET, REGRET_SHIFTED]

##########################################################################
# Columns of the aggregate output.

MEAN_R = 'mean_R'
STD_R = 'std_R'
P10 = 'p10'
P50 = 'p50'
P90 = 'p90'
BOUND = 'bound'
FRAC_UNDER_BOUND = 'frac_under_bound'

#: Columns of the aggregate CSV.
AGGREGATE_COLUMNS = [ROUND, MEAN_R, STD_R, P10, P50, P90,
                     BOUND, FRAC_UNDER_BOUND]

##########################################################################
