'''Tolerances, size caps and environment defaults'''

import os

from .msg import warn

# Width of certified radius intervals
DEFAULT_TOL = 1e-12
# Power-iteration tolerance for candidate screening
SCREEN_TOL = 1e-10
# Slack added to the best certified upper bound before a screened candidate is dropped
SCREEN_MARGIN = 1e-6
# Oracle candidates (non-trees) closer than this are re-checked
NEAR_TIE_GAP = 1e-8
# Perron entries this close count as equal when choosing a split pivot
PERRON_TIE_TOL = 1e-9
POWER_ITERATION_CAP = 10**6

# Size caps
EXACT_MIS_CAP = 24
FREE_TREE_CAP = 18
CONNECTED_CAP = 9
MAIN_TREE_CAP = 10
KERNEL_EXHAUSTIVE_CAP = 7

# Closed-form comparisons
CLOSED_FORM_TOL = 1e-10
# Published 4-decimal values are checked to half a unit in the last place
DECIMAL_TOL = 5e-5

# Bisection rounds `compare_radii` may spend separating two intervals
SEPARATION_ROUNDS = 200

JOBS_ENV = "SPECMIN_JOBS"


def default_jobs():
    '''Worker count from the SPECMIN_JOBS environment variable (default 1)'''
    raw = os.environ.get(JOBS_ENV)
    if raw is None or raw.strip() == "":
        return 1
    try:
        jobs = int(raw)
    except ValueError:
        jobs = 0
    if jobs < 1:
        warn(f"Ignoring invalid {JOBS_ENV} value: {raw!r}")
        return 1
    return jobs
