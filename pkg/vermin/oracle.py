"""
Run checker executables on candidate documents and decide whether a candidate
still reproduces the bug.
"""
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import NamedTuple, Optional, Tuple
import logging
import os
import shutil
import subprocess
import tempfile
import time

from configs import minimizer_config, path_config
from error_equivalence import equivalent, signature_of_log
from errors import (
    CheckerNotFound,
    FailLegSucceeds,
    NoErrorFound,
    PassLegFails,
    ScratchWriteFailed,
    SignatureMismatch,
)
from sentences import render
from utils.common import count_lines, text_digest, write_text  # pylint: disable=no-name-in-module

logger = logging.getLogger(__name__)


class SearchPath(NamedTuple):
    flag: str  # -Q or -R
    directory: str
    prefix: str


class CheckStatus(Enum):
    SUCCESS = "Success"
    FAILURE = "Failure"
    TIMEOUT = "Timeout"
    CRASH = "Crash"


@dataclass(frozen=True)
class CheckerSpec:
    executable: str
    extra_args: Tuple[str, ...] = ()
    search_paths: Tuple[SearchPath, ...] = ()
    env_additions: Tuple[Tuple[str, str], ...] = ()
    label: str = "checker"

    def __post_init__(self):
        object.__setattr__(self, "extra_args", tuple(filter_args(self.extra_args)))
        object.__setattr__(self, "search_paths", tuple(SearchPath(*p) for p in self.search_paths))
        object.__setattr__(self, "env_additions", tuple(sorted(dict(self.env_additions).items())))

    @property
    def identity(self):
        return (self.executable, self.extra_args, self.search_paths, self.env_additions)

    def command(self, file, extra=()):
        """`<executable> <filtered-args> <search-path-flags> [extra] <file>`"""
        cmd = [self.executable, *self.extra_args]
        for p in self.search_paths:
            cmd.extend([p.flag, p.directory, p.prefix])
        cmd.extend(extra)
        cmd.append(str(file))
        return cmd

    def environment(self):
        env = dict(os.environ)
        env.update(dict(self.env_additions))
        return env


@dataclass(frozen=True)
class CheckOutcome:
    status: CheckStatus
    signature: Optional[object] = None
    wall_time: float = 0.0
    log: str = ""
    raw_error: Optional[object] = None


@dataclass
class InitialVerification:
    fail_outcome: CheckOutcome
    pass_outcome: Optional[CheckOutcome]
    expected: object
    timeout: Optional[float] = None


def filter_args(args):
    """Drop checker flags that interfere with minimization, keeping the rest in order.

    Relative paths are passed through untouched.

    Arguments:
        args {list of str} -- checker arguments from the build log or the command line

    Returns:
        list of str
    """
    out, skip = [], False
    for a in args:
        if skip:
            skip = False
            continue
        if a in minimizer_config.FILTERED_FLAGS:
            continue
        if a in minimizer_config.FILTERED_FLAGS_WITH_VALUE:
            skip = True
            continue
        out.append(a)
    return out


def default_timeout(fail_wall_time):
    return max(
        minimizer_config.TIMEOUT_MULTIPLIER * fail_wall_time,
        minimizer_config.TIMEOUT_FLOOR_SECONDS,
    )


class Oracle:
    """Checks documents against a fail checker and an optional pass checker.

    Candidates are written to a scratch file named like the target, so the
    checker reports errors against the same basename. Outcomes are cached by
    rendered text and checker identity, oldest first out once the cache is full.
    Call `close()` to remove the scratch directory.
    """

    def __init__(
        self,
        fail_checker,
        pass_checker=None,
        target_name="bug.v",
        cwd=None,
        timeout=None,
        scratch_dir=None,
    ):
        self.fail_checker = fail_checker
        self.pass_checker = pass_checker
        self.cwd = str(cwd) if cwd else None
        self.timeout = timeout
        self.scratch = Path(tempfile.mkdtemp(prefix="vermin_", dir=scratch_dir or path_config.SCRATCH_DIR))
        self.scratch_file = self.scratch / Path(target_name).name
        self.cache = {}
        self.calls = 0

    @property
    def single_version(self):
        return self.pass_checker is None

    def close(self):
        shutil.rmtree(self.scratch, ignore_errors=True)
        self.cache.clear()

    def _launch(self, cmd, cwd, env, timeout):
        """Run one checker process.

        Returns:
            (int or None, str, bool) -- exit code, combined output, whether the deadline hit
        """
        logger.debug("Launching %s", " ".join(cmd))
        try:
            proc = subprocess.run(
                cmd,
                cwd=cwd,
                env=env,
                stdout=subprocess.PIPE,
                stderr=subprocess.STDOUT,
                timeout=timeout,
                text=True,
            )
        except subprocess.TimeoutExpired as e:
            out = e.stdout or ""
            if isinstance(out, bytes):
                out = out.decode("utf-8", errors="replace")
            return None, out, True
        except (FileNotFoundError, PermissionError):
            raise CheckerNotFound(cmd[0])
        return proc.returncode, proc.stdout, False

    def run_file(self, path, checker, timeout=None, extra=()):
        """Run a checker on a file on disk and classify the result (uncached)."""
        self.calls += 1
        start = time.monotonic()
        code, log, timed_out = self._launch(
            checker.command(path, extra), self.cwd, checker.environment(), timeout
        )
        wall = time.monotonic() - start
        if timed_out:
            logger.warning("%s timed out after %.1fs", checker.label, wall)
            return CheckOutcome(CheckStatus.TIMEOUT, wall_time=wall, log=log)
        if code == 0:
            return CheckOutcome(CheckStatus.SUCCESS, wall_time=wall, log=log)
        try:
            signature, raw = signature_of_log(log)
        except NoErrorFound:
            return CheckOutcome(CheckStatus.CRASH, wall_time=wall, log=log)
        return CheckOutcome(CheckStatus.FAILURE, signature, wall, log, raw)

    def check(self, doc, checker, timeout=None, use_cache=True):
        """Render a document to the scratch file and run one checker on it.

        Arguments:
            doc {Document} -- candidate
            checker {CheckerSpec} -- which leg to run

        Keyword Arguments:
            timeout {float} -- seconds, defaults to the oracle's per-check timeout
            use_cache {bool} -- reuse earlier outcomes for identical renders (default: {True})

        Returns:
            CheckOutcome
        """
        text = render(doc)
        key = (text_digest(text), checker.identity)
        if use_cache and key in self.cache:
            return self.cache[key]
        try:
            write_text(self.scratch_file, text)
        except OSError:
            raise ScratchWriteFailed(self.scratch_file)
        outcome = self.run_file(
            self.scratch_file, checker, timeout if timeout is not None else self.timeout
        )
        self.cache[key] = outcome
        if len(self.cache) > minimizer_config.ORACLE_CACHE_SIZE:
            del self.cache[next(iter(self.cache))]
        return outcome

    def emit_names(self, path, checker=None, sidecar=None):
        """Name-resolution table of a dependency file, produced by the checker's sidecar.

        Returns:
            dict -- short name as written -> fully qualified logical name
        """
        checker = checker or self.fail_checker
        sidecar = Path(sidecar or self.scratch / (Path(path).stem + ".names"))
        self.run_file(path, checker, self.timeout, (minimizer_config.EMIT_NAMES_FLAG, str(sidecar)))
        table = {}
        if sidecar.exists():
            for line in sidecar.read_text(encoding="utf-8").splitlines():
                parts = line.split()
                if len(parts) == 2:
                    table[parts[0]] = parts[1]
        return table

    def verify_initial(self, doc, expected=None):
        """Check the two-leg contract on the starting document.

        When no expected signature is given it is taken from the fail-leg run.
        Also fixes the per-check timeout if none was configured.

        Raises:
            FailLegSucceeds, SignatureMismatch, PassLegFails
        """
        fail_outcome = self.check(doc, self.fail_checker, timeout=self.timeout)
        if fail_outcome.status != CheckStatus.FAILURE:
            raise FailLegSucceeds(
                fail_outcome,
                f"The fail checker did not report an error ({fail_outcome.status.value})",
            )
        if expected is None:
            expected = fail_outcome.signature
        elif not equivalent(fail_outcome.signature, expected):
            raise SignatureMismatch(
                fail_outcome,
                f"Could not reproduce the error message: got {fail_outcome.signature}, expected {expected}",
            )
        pass_outcome = None
        if self.pass_checker is not None:
            pass_outcome = self.check(doc, self.pass_checker, timeout=self.timeout)
            if pass_outcome.status != CheckStatus.SUCCESS:
                raise PassLegFails(
                    pass_outcome,
                    f"The pass checker did not accept the file ({pass_outcome.status.value})",
                )
        if self.timeout is None:
            self.timeout = default_timeout(fail_outcome.wall_time)
            logger.debug("Per-check timeout set to %.1fs", self.timeout)
        return InitialVerification(fail_outcome, pass_outcome, expected, self.timeout)

    def reproduces(self, doc, expected):
        """Whether a document keeps the contract, and the fail-leg outcome."""
        fail_outcome = self.check(doc, self.fail_checker)
        if fail_outcome.status != CheckStatus.FAILURE or not equivalent(
            fail_outcome.signature, expected
        ):
            return False, fail_outcome
        if self.pass_checker is not None:
            pass_outcome = self.check(doc, self.pass_checker)
            if pass_outcome.status == CheckStatus.TIMEOUT:
                logger.warning("Pass leg timed out; candidate rejected")
            if pass_outcome.status != CheckStatus.SUCCESS:
                return False, fail_outcome
        return True, fail_outcome

    def accept_candidate(self, state, candidate, pass_name):
        """Replace the state's document by the candidate if it still reproduces the bug.

        Arguments:
            state {MinimizationState} -- holds the current document and the ledger
            candidate {Document} -- proposed replacement
            pass_name {str} -- recorded in the ledger on acceptance

        Returns:
            (MinimizationState, bool) -- the same state object, and whether it changed
        """
        before = count_lines(render(state.current))
        if render(candidate) == render(state.current):
            state.record(pass_name, before, before)
            return state, True
        ok, fail_outcome = self.reproduces(candidate, state.expected)
        state.oracle_calls = self.calls
        if not ok:
            return state, False
        after = count_lines(render(candidate))
        state.current = candidate
        state.last_error = fail_outcome.raw_error
        state.record(pass_name, before, after)
        logger.info("%s: accepted, %d -> %d lines", pass_name, before, after)
        return state, True
