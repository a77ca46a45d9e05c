"""
Configuration settings for the bilinear-form moment bound toolkit.
"""

import os
from dotenv import load_dotenv

load_dotenv()

# Exact enumeration limits
ENUM_CAP = int(os.getenv("RBF_ENUM_CAP", str(10**8)))

# Tolerances (relative)
CONSTRUCTION_RTOL = 1e-12
SOLVE_RTOL = 1e-10
VIOLATION_RTOL = float(os.getenv("RBF_VIOLATION_RTOL", "1e-9"))

# Random class-member sampling
SAMPLER_MAX_ROUNDS = 200
SAMPLER_DEFAULT_MAGNITUDES = 2
BOUNDARY_PROBABILITY = 0.2

# Verification defaults
DEFAULT_SEED = 7
DEFAULT_LEMMA_TRIALS = 50
DEFAULT_EXTREMALITY_TRIALS = 1000
DEFAULT_ROSENTHAL_TRIALS = 500
DEFAULT_COORDINATE_TRIALS = 200
SEED_RETRIES = 5

# Approximating sequence for the 2 < t < 4 supremum
WITNESS_M = 10**4
WITNESS_MIN_FRACTION = 0.99
CONVERGENCE_SCHEDULE = (10, 100, 1000, 10000)
CONVERGENCE_REL_THRESHOLD = 1e-2

# Output formatting
PRINT_DIGITS = 12
PROBLEM_FORMAT = "rbf-v1"
CSV_COLUMNS = ['which', 't', 'n', 'literal', 'derived', 'gap']

# File paths
DATA_DIR = "data"
PROBLEMS_DIR = os.path.join(DATA_DIR, "problems")
REPORTS_DIR = os.path.join(DATA_DIR, "reports")

# Logging configuration
LOG_LEVEL = os.getenv("RBF_LOG_LEVEL", "INFO")
LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
# an empty RBF_LOG_FILE turns the file log off
LOG_DIR = os.getenv("RBF_LOG_DIR", "logs")
LOG_FILE = os.getenv("RBF_LOG_FILE", os.path.join(LOG_DIR, "rbf.log"))
