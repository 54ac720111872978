import importlib

# Path Settings
SCRATCH_DIR = None  # Parent of each oracle's scratch directory, None for the system temp dir
DEFAULT_CHECKPOINT = "vermin_checkpoint.sqlite"
DEFAULT_OUTPUT_SUFFIX = ".min.v"
DEFAULT_STATS_SUFFIX = ".stats.csv"
ECHO_SQL = False

# If the local_config module is found, import all those settings, overriding any here that overlap.
if importlib.util.find_spec("configs.local_config") is not None:
    from configs.local_config import *  # pylint: disable=unused-wildcard-import
