""" This module stores the default config settings for the minimizer.
It is optionally overriden by a local_config module in the same directory.
The local configs are for dev debugging/testing.
"""
import importlib

TOOL_VERSION = "0.3.0"
VERBOSE = False
LOG_LEVEL = "INFO"

# Scheduler settings
MAX_SWEEPS = 10  # Per pass per phase, also the round cap of a phase
TIMEOUT_MULTIPLIER = 3  # Per-check timeout = multiplier * initial fail-leg wall time
TIMEOUT_FLOOR_SECONDS = 10
DEFAULT_WALL_BUDGET = 6 * 60 * 60  # seconds, None means unbounded
COMPILE_TIME_RUNS = 3  # Median of this many final fail-leg runs goes in the header
ORACLE_CACHE_SIZE = 4096  # Outcomes kept per oracle

# Inlining settings
WRAPPER_PREFIX = "__vermin_inline_"
STDLIB_PREFIXES = ["Coq", "Stdlib", "Corelib"]
EMIT_NAMES_FLAG = "--emit-names"
SEARCH_PATH_ENV = "VERMIN_PATH"  # Directories searched like `-R dir ""`

# Error matching
FORGOTTEN_UNIVERSE_PATTERN = r"forgotten universe"  # matched case-insensitively
UNIVERSE_INCONSISTENCY_TEXT = "Universe inconsistency"
UNIVERSE_LENGTH_TEXT = "Universe instance should have length"
BUGGED_TACTIC_TEXTS = ["Unsatisfied constraints", "maybe a bugged tactic"]

# Checker arguments the minimizer never passes along
FILTERED_FLAGS = ["-batch", "-time", "-noglob"]
FILTERED_FLAGS_WITH_VALUE = ["-o", "-dump-glob"]
SEARCH_PATH_FLAGS = ["-Q", "-R"]

# Build log wrapper printout
INVOCATION_MARKER = "VERMIN_CALL:"

CHECKPOINT_FORMAT_VERSION = 1

# If the local_config module is found, import all those settings, overriding any here that overlap.
if importlib.util.find_spec("configs.local_config") is not None:
    from configs.local_config import *  # pylint: disable=unused-wildcard-import
