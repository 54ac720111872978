"""
Run orchestration: find the failing invocation in a build log, verify the
starting file, drive the scheduler and write the minimized file with its
statistics.
"""
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional
import logging
import os
import re
import shlex

from checkpoint import load_checkpoint
from configs import minimizer_config
from data_objects import MinimizationState, RunStats
from error_equivalence import extract_error, normalize
from errors import NoMatchingInvocation, OutputWriteFailed
from inliner import project_index
from oracle import Oracle
from scheduler import schedule
from sentences import Document, render
from utils.common import count_lines, median_seconds, read_text, write_text  # pylint: disable=no-name-in-module

logger = logging.getLogger(__name__)

_RE_HEADER_LINE = re.compile(r"^\(\* [a-z-]+: .* \*\)$")


@dataclass
class DiscoveredTask:
    file: str
    args: List[str]  # checker executable and arguments, without the file
    cwd: Optional[str]
    env_path: str
    error: object  # RawError


@dataclass
class MinimizationResult:
    state: MinimizationState
    stats: RunStats
    output_path: Optional[Path] = None
    stats_path: Optional[Path] = None


def _invocation_file(args):
    for a in reversed(args):
        if a.endswith(".v"):
            return a
    return None


def _same_path(cwd, a, b):
    base = cwd or "."
    return a == b or os.path.normpath(os.path.join(base, a)) == os.path.normpath(os.path.join(base, b))


def discover_task(log):
    """The failing file, its checker invocation and its error, from a build log.

    The error is the last error report in the log; the invocation is the last
    wrapper printout naming the same file. A printout whose file only shares
    the base name is used when no printout names the same path.

    Arguments:
        log {str} -- build log text

    Returns:
        DiscoveredTask

    Raises:
        NoErrorFound, NoMatchingInvocation
    """
    error = extract_error(log)
    found = same_name = None
    for line in log.splitlines():
        if not line.startswith(minimizer_config.INVOCATION_MARKER):
            continue
        fields = shlex.split(line[len(minimizer_config.INVOCATION_MARKER) :])
        cwd, env_path, args = None, "", []
        for k, f in enumerate(fields):
            if f.startswith("cwd="):
                cwd = f[len("cwd=") :] or None
            elif f.startswith("env_path="):
                env_path = f[len("env_path=") :]
            elif f.startswith("args="):
                args = [f[len("args=") :]] + fields[k + 1 :]
                break
        file = _invocation_file(args)
        if file is None:
            continue
        rest = list(args)
        rest.remove(file)
        if _same_path(cwd, file, error.file):
            found = DiscoveredTask(file, rest, cwd, env_path, error)
        elif Path(file).name == Path(error.file).name:
            same_name = DiscoveredTask(file, rest, cwd, env_path, error)
    found = found or same_name
    if found is None:
        raise NoMatchingInvocation(error.file)
    return found


def strip_header(text):
    """A written output file without its header comment lines."""
    lines = text.split("\n")
    k = 0
    while k < len(lines) and _RE_HEADER_LINE.match(lines[k]):
        k += 1
    return "\n".join(lines[k:])


def pass_summary(stats):
    frame = stats.to_frame()
    if frame.empty:
        return "none"
    frame["removed"] = (frame["lines_before"] - frame["lines_after"]).clip(lower=0)
    totals = frame.groupby("pass_name", sort=False)["removed"].sum()
    return ", ".join(f"{name}={int(removed)}" for name, removed in totals.items())


def header_lines(state, stats, original_file):
    failed = ", ".join(stats.failed_inlines) if stats.failed_inlines else "none"
    fields = [
        ("tool-version", minimizer_config.TOOL_VERSION),
        ("original-file", str(original_file)),
        ("original-lines", state.original_lines),
        ("final-lines", stats.final_size),
        ("total-removed", stats.total_removed),
        ("reduction-ratio", stats.ratio_text),
        ("expected-compile-time-seconds", f"{stats.final_compile_time:.3f}"),
        ("failed-inlines", failed),
        ("passes", pass_summary(stats)),
    ]
    return [f"(* {key}: {value} *)" for key, value in fields]


def write_output(state, stats, output_path, original_file, stats_path=None):
    """Write the minimized file with its header, and the ledger sidecar.

    Raises:
        OutputWriteFailed
    """
    text = "\n".join(header_lines(state, stats, original_file)) + "\n" + render(state.current)
    try:
        write_text(output_path, text)
        if stats_path is not None:
            Path(stats_path).parent.mkdir(parents=True, exist_ok=True)
            stats.to_frame().to_csv(stats_path, index=False)
    except OSError as e:
        raise OutputWriteFailed(output_path, f"Could not write {output_path}: {e}")
    logger.info("Wrote %s (%d lines, ratio %s)", output_path, stats.final_size, stats.ratio_text)


def final_compile_time(oracle, doc):
    samples = [
        oracle.check(doc, oracle.fail_checker, use_cache=False).wall_time
        for _ in range(minimizer_config.COMPILE_TIME_RUNS)
    ]
    return median_seconds(samples)


def start_state(config, oracle, expected):
    """Verify the target file and build the starting state."""
    target = Path(config.cwd or ".") / config.target_file
    text = read_text(target)
    doc = Document.parse(text, Path(config.target_file).name)
    verification = oracle.verify_initial(doc, expected)
    return MinimizationState(
        current=doc,
        expected=verification.expected,
        preserve_error_script=config.preserve_error_script,
        checkpoint_path=config.checkpoint_path,
        last_error=verification.fail_outcome.raw_error,
        original_lines=count_lines(text),
    )


def minimize(config, expected_error=None, stop_after=None, oracle=None):
    """Minimize `config.target_file` end to end.

    Arguments:
        config {RunConfig} -- what to minimize and how

    Keyword Arguments:
        expected_error {RawError} -- error from the build log; taken from the first fail-leg run when None
        stop_after {int} -- stop after this many acceptances (default: {None})
        oracle {Oracle} -- reuse an oracle, mostly for tests (default: {None})

    Returns:
        MinimizationResult

    Raises:
        InitialVerificationError, BudgetExhausted, CheckpointError, OutputWriteFailed
    """
    owned = oracle is None
    oracle = oracle or Oracle(
        config.fail_checker,
        None if config.single_version else config.pass_checker,
        target_name=config.target_file,
        cwd=config.cwd,
        timeout=config.check_timeout,
    )
    try:
        return _minimize(config, oracle, expected_error, stop_after)
    finally:
        if owned:
            oracle.close()


def _minimize(config, oracle, expected_error, stop_after):
    expected = normalize(expected_error.message) if expected_error is not None else None
    if config.resume and Path(config.checkpoint_path).exists():
        state, _ = load_checkpoint(config.checkpoint_path)
        oracle.verify_initial(state.current, state.expected)
        logger.info("Resuming from %s", config.checkpoint_path)
    else:
        state = start_state(config, oracle, expected)
    if not state.done:
        schedule(
            state,
            oracle,
            project_index(config.fail_checker, config.cwd),
            config.target_file,
            inline_all_first=config.inline_all_first,
            wall_budget=config.wall_budget,
            stop_after=stop_after,
        )
    stats = RunStats(
        state.ledger,
        count_lines(render(state.current)),
        state.failed_inlines,
        final_compile_time(oracle, state.current),
    )
    result = MinimizationResult(state, stats)
    if config.output_path:
        write_output(state, stats, config.output_path, config.target_file, config.stats_path)
        result.output_path = Path(config.output_path)
        result.stats_path = Path(config.stats_path) if config.stats_path else None
    return result
