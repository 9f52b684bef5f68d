# Enumeration
POINT_BUDGET = 10**7  # Maximum candidate points or forms per exhaustive scan
EXT_BOUND = 3  # Extension degree bound for enumeration oracles
CANDIDATE_BUDGET = 2000  # Maximum pencils tried per extension level

# Local analysis
JET_BOUND = 4  # Highest degree absorbed by coordinate changes
NZD_DEGREE = 6  # Degree slice for nonzerodivisor certification

# Groebner
GROEBNER_STEPS = 20000  # Critical pairs processed before giving up

# Sampling
SAMPLE_SIZE = 500  # Random forms tried when exhaustive search is over budget

# Finite fields
FIELD_TABLE_LIMIT = 4096  # Largest field order with log/antilog tables

# Settings
ENV_FILE = ".dvrgeom.env"  # Default dotenv file with runtime overrides
ENV_PREFIX = "DVRGEOM_"  # Prefix of environment overrides

# Exit codes
EXIT_POSITIVE = 0  # Verdict holds
EXIT_NEGATIVE = 1  # Verdict fails
EXIT_UNDECIDABLE = 2  # Undecidable, budget, precision or exhausted search
EXIT_INPUT_ERROR = 3  # Malformed input or inconsistent declarations
