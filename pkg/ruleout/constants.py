VALID_LOG_LEVEL_VALUES = ['debug', 'info', 'warning', 'error', 'critical']
"""List of all the supported log level values for the CLI"""

VALID_OUTPUT_FORMATS = ['table', 'json', 'csv']
"""Output formats understood by every subcommand"""

VALID_BOOTSTRAP_MODES = ['conditional', 'unconditional']
"""Whether class sizes are held fixed (conditional) or resampled"""

DEFAULT_BOOTSTRAP_SAMPLES = 5000
"""Number of bootstrap resamples when neither a flag nor the config sets it"""

DEFAULT_BOOTSTRAP_SEED = 0
"""Seed of the counter-based generator when none is given"""

DEFAULT_CI_LEVEL = 0.95
"""Two-sided percentile interval level"""

UNDEFINED_REPLICATE_CEILING = 0.01
"""Largest tolerated fraction of replicates on which a metric is undefined"""

REL_TOL = 1e-12
"""Relative tolerance for exact-algebra consistency checks"""

COHORT_HEADER = ['patient_id', 'truth', 'reader_decision', 'ai_score']
"""Required columns of a cohort file, in order"""

CURVE_HEADER = ['x', 'y']
"""Required columns of a performance curve file"""

RD_SPACE = 'rd'
"""Recall rate (x) versus cancer detection rate (y)"""

ROC_SPACE = 'roc'
"""False-positive rate (x) versus true-positive rate (y)"""

PAGER_COMMAND = 'less -R'
"""Command used to page long output on a terminal"""
