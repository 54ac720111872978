"""
Domain objects shared by the scheduler, the inliner and the driver.
"""
from dataclasses import dataclass, field
from typing import List, NamedTuple, Optional, Tuple
import pandas as pd

from configs import minimizer_config, path_config
from utils.common import format_ratio  # pylint: disable=no-name-in-module


class LedgerEntry(NamedTuple):
    pass_name: str
    lines_before: int
    lines_after: int


@dataclass
class Cursor:
    """Where the scheduler is, precise enough to resume between two acceptances."""

    phase: int = 0
    round: int = 0
    pass_idx: int = 0
    sweep: int = 0
    position: Optional[Tuple[int, int]] = None  # next candidate sites are strictly before this site
    sweep_dirty: bool = False  # an acceptance happened in the current sweep
    round_dirty: bool = False  # an acceptance happened in the current phase round
    pass_dirty: bool = False  # the current pass accepted something already


@dataclass
class MinimizationState:
    current: object  # Document
    expected: object  # ErrorSignature
    ledger: List[LedgerEntry] = field(default_factory=list)
    preserve_error_script: bool = False
    checkpoint_path: Optional[str] = None
    last_error: Optional[object] = None  # RawError of the current document's fail-leg run
    cursor: Cursor = field(default_factory=Cursor)
    inlined: List[str] = field(default_factory=list)
    failed_inlines: List[str] = field(default_factory=list)
    requires_inserted: bool = False
    wrapper_counter: int = 0
    original_lines: int = 0  # target plus every inlined dependency
    oracle_calls: int = 0
    done: bool = False

    def record(self, pass_name, lines_before, lines_after):
        self.ledger.append(LedgerEntry(pass_name, lines_before, lines_after))


@dataclass
class RunConfig:
    target_file: str
    fail_checker: object  # CheckerSpec
    pass_checker: Optional[object] = None
    build_log_path: Optional[str] = None
    cwd: Optional[str] = None
    inline_all_first: bool = False
    preserve_error_script: bool = False
    wall_budget: Optional[float] = minimizer_config.DEFAULT_WALL_BUDGET
    check_timeout: Optional[float] = None
    checkpoint_path: str = path_config.DEFAULT_CHECKPOINT
    output_path: Optional[str] = None
    stats_path: Optional[str] = None
    resume: bool = False

    @property
    def single_version(self):
        return self.pass_checker is None


class RunStats:
    """Line statistics of a finished run, computed from the ledger."""

    def __init__(self, ledger, final_size, failed_inlines=(), final_compile_time=0.0):
        self.ledger = list(ledger)
        self.final_size = final_size
        self.failed_inlines = list(failed_inlines)
        self.final_compile_time = final_compile_time

    def to_frame(self):
        return pd.DataFrame(
            [e._asdict() for e in self.ledger],
            columns=["pass_name", "lines_before", "lines_after"],
        )

    @property
    def total_removed(self):
        return total_removed(self.to_frame())

    @property
    def reduction_ratio(self):
        return reduction_ratio(self.final_size, self.total_removed)

    @property
    def ratio_text(self):
        return format_ratio(self.reduction_ratio)


def total_removed(frame):
    """Sum of the line decreases in a ledger frame; growth from inlining counts as zero."""
    if frame.empty:
        return 0
    deltas = (frame["lines_before"] - frame["lines_after"]).clip(lower=0)
    return int(deltas.sum())


def reduction_ratio(final_size, removed):
    if final_size + removed == 0:
        return 1.0
    return final_size / (final_size + removed)
