"""Runtime settings for vmlab.

Values come from the environment (useful for batch runs and for tests) or,
if not set there, fall back to the defaults below.
"""

import os

# Worker count used by `--jobs` when the flag is omitted.
JOBS = int(os.environ.get('VMLAB_JOBS', 1))

# Expanded recursion nodes allowed per minor query.
MINOR_BUDGET = int(os.environ.get('VMLAB_MINOR_BUDGET', 10 ** 8))

# rank_census enumerates 2^C(k,2) graphs; 6 means 32768.
CENSUS_MAX_K = int(os.environ.get('VMLAB_CENSUS_MAX_K', 6))

ORBIT_CAP = int(os.environ.get('VMLAB_ORBIT_CAP', 3 ** 10))

# Exact walk vectors have 2^bits entries.
WALK_MAX_EDGES = int(os.environ.get('VMLAB_WALK_MAX_EDGES', 20))

LOG_LEVEL = os.environ.get('VMLAB_LOG_LEVEL', 'WARNING')

##############################################################################
# Fixed constants (not configurable)

# Counter-based generator behind every seeded draw; changing it changes
# every recorded experiment.
PRNG_NAME = "Philox4x32-10"

MATROID_SAMPLE_TRIES = 1000
MAX_GADGET_VHAT = 4
MAX_GADGET_COMPOSITE_VHAT = 3
MAX_BASIS_GROUND = 24
MAX_RAMSEY_K = 3
