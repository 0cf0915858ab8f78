"""Constants for the RT-surface toolkit."""
import logging
import math

_LOGGER = logging.getLogger(__package__)

DOMAIN = "rt_surfaces"

# Commands exposed by the command line front end
COMMAND_GENERATE = "generate"
COMMAND_VERIFY = "verify"
COMMAND_ROTATION = "rotation"
COMMAND_SINGULAR = "singular"

COMMANDS = [
    COMMAND_GENERATE,
    COMMAND_VERIFY,
    COMMAND_ROTATION,
    COMMAND_SINGULAR,
]

CONF_A = "a"
CONF_B = "b"
CONF_CSV = "csv"
CONF_DEBUG = "debug"
CONF_F = "f"
CONF_G = "g"
CONF_MAX_CONDITION = "max_condition"
CONF_OUT = "out"
CONF_RANGE = "range"
CONF_SAMPLES = "samples"
CONF_STEP = "step"
CONF_TOL_DET = "tol_det"
CONF_TOL_EQUIVALENCE = "tol_equivalence"
CONF_TOL_GAUSS = "tol_gauss"
CONF_TOL_ORACLE = "tol_oracle"
CONF_TOL_POSITION = "tol_position"
CONF_TOL_RESIDUAL = "tol_residual"
CONF_U1 = "u1"
CONF_U2 = "u2"

# Degeneracy thresholds
DEFAULT_GAUSS_EPS = 1e-12
DEFAULT_DET_EPS = 1e-12

# Internal consistency tolerances (relative)
DEFAULT_DET_RTOL = 1e-10
DEFAULT_POSITION_RTOL = 1e-10
DEFAULT_FORMS_RTOL = 1e-9
DEFAULT_REGULARITY_RTOL = 1e-9

# Verification tolerances
DEFAULT_FD_STEP = 1e-4
DEFAULT_RESIDUAL_TOL = 1e-9
DEFAULT_ORACLE_TOL = 1e-5
DEFAULT_EQUIVALENCE_TOL = 1e-9
DEFAULT_MAX_CONDITION = math.inf

# Floor for every relative comparison
MAGNITUDE_FLOOR = 1e-30

# Cross products below this norm make the oracle refuse the point
DEGENERATE_TANGENT_NORM = 1e-12

# Singular parallel search on the rotation family
DEFAULT_SCAN_SAMPLES = 2048
DEFAULT_ROOT_XTOL = 1e-12
CERTIFY_OFFSET = 1e-9
CANDIDATE_MATCH_TOL = 1e-6
DEFAULT_SINGULAR_RANGE = "-3:3"

# Default grids
DEFAULT_ROTATION_U1 = "-3:3:65"
DEFAULT_ROTATION_U2 = f"0:{2 * math.pi!r}:65"

# Output formats
FLOAT_FORMAT = ".17g"
CSV_COLUMNS = [
    "u1",
    "u2",
    "x",
    "y",
    "z",
    "H",
    "K",
    "psi",
    "lambda",
    "detV",
    "residual",
    "regularity",
]

# Expression grammar
VARIABLE_NAME = "z"
IMAGINARY_UNIT = "i"
MAX_TOWER_BITS = 1024

# Reference generator pairs, as (f, g) text
REFERENCE_PAIRS = [
    ("z", "z"),
    ("z^2", "z"),
    ("z", "z^2"),
]

# Exit codes
EXIT_OK = 0
EXIT_USAGE = 1
EXIT_TOLERANCE = 2
