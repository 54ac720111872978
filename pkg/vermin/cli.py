"""
Command-line driver.

Usage:
    python cli.py --file bug.v --fail-checker "coqc-8.x" --pass-checker "coqc-8.y" \
        --fail-path=-Q,.,Top --pass-path=-Q,.,Top
    python cli.py --build-log ci.log --pass-checker "coqc-8.y"
"""
from pathlib import Path
import argparse
import logging
import shlex
import sys

from configs import minimizer_config, path_config
from data_objects import RunConfig
from errors import (
    BudgetExhausted,
    CheckerNotFound,
    CheckpointError,
    ConfigurationError,
    CyclicDependency,
    InitialVerificationError,
    NoErrorFound,
    NoMatchingInvocation,
    OutputWriteFailed,
    ScratchWriteFailed,
    UnresolvableRequire,
    UnterminatedComment,
    UnterminatedString,
)
from oracle import CheckerSpec, SearchPath
from process import discover_task, minimize
from utils.common import read_text  # pylint: disable=no-name-in-module

logger = logging.getLogger(__name__)

EXIT_SUCCESS = 0
EXIT_NOT_REPRODUCED = 10
EXIT_RESUMABLE = 11
EXIT_CONFIGURATION = 12


def parse_search_path(value):
    """`-Q,dir,prefix` -> SearchPath"""
    parts = value.split(",")
    if len(parts) != 3 or parts[0] not in minimizer_config.SEARCH_PATH_FLAGS:
        raise argparse.ArgumentTypeError(f"expected <-Q|-R>,<dir>,<prefix>, got {value!r}")
    return SearchPath(*parts)


def split_invocation(args):
    """Separate `-Q/-R dir prefix` triples from the other checker arguments."""
    rest, paths, k = [], [], 0
    while k < len(args):
        if args[k] in minimizer_config.SEARCH_PATH_FLAGS and k + 2 < len(args):
            paths.append(SearchPath(args[k], args[k + 1], args[k + 2]))
            k += 3
        else:
            rest.append(args[k])
            k += 1
    return rest, paths


def join_passthrough(argv):
    """`--arg -w` -> `--arg=-w`; argparse refuses a separate value that starts with a dash."""
    joined, args = [], iter(argv)
    for a in args:
        joined.append(f"--arg={next(args, '')}" if a == "--arg" else a)
    return joined


def build_parser():
    parser = argparse.ArgumentParser(
        prog="vermin", description="Minimize a file that triggers a checker bug."
    )
    parser.add_argument("--file", help="file to minimize")
    parser.add_argument("--build-log", help="build log holding the error and the checker invocation")
    parser.add_argument("--fail-checker", help="checker command that exhibits the bug")
    parser.add_argument("--pass-checker", help="checker command that accepts the file")
    parser.add_argument("--fail-path", action="append", default=[], type=parse_search_path)
    parser.add_argument("--pass-path", action="append", default=[], type=parse_search_path)
    parser.add_argument("--arg", action="append", default=[], help="passed to both checkers")
    parser.add_argument("--inline-all-first", action="store_true")
    parser.add_argument("--single-version", action="store_true")
    parser.add_argument("--preserve-error-script", action="store_true")
    parser.add_argument("--wall-budget", type=float, default=minimizer_config.DEFAULT_WALL_BUDGET)
    parser.add_argument("--check-timeout", type=float, default=None)
    parser.add_argument("--resume", action="store_true")
    parser.add_argument("--output")
    parser.add_argument("--stats")
    parser.add_argument("--checkpoint", default=path_config.DEFAULT_CHECKPOINT)
    parser.add_argument("--verbose", action="store_true")
    return parser


def config_from_args(options):
    """(RunConfig, expected RawError or None) for parsed command-line options."""
    task = None
    if options.build_log:
        task = discover_task(read_text(options.build_log))
    target = options.file or (task.file if task else None)
    if target is None:
        raise ConfigurationError("--file or --build-log is required")

    env = ()
    if task is not None and task.env_path:
        env = ((minimizer_config.SEARCH_PATH_ENV, task.env_path),)

    if options.fail_checker:
        fail_words = shlex.split(options.fail_checker)
        fail_paths = []
    elif task is not None and task.args:
        fail_words, fail_paths = split_invocation(task.args)
    else:
        raise ConfigurationError("--fail-checker or a build log invocation is required")
    fail_checker = CheckerSpec(
        fail_words[0],
        tuple(fail_words[1:] + options.arg),
        tuple(options.fail_path or fail_paths),
        env,
        "fail",
    )
    pass_checker = None
    if options.pass_checker and not options.single_version:
        pass_words = shlex.split(options.pass_checker)
        pass_checker = CheckerSpec(
            pass_words[0],
            tuple(pass_words[1:] + options.arg),
            tuple(options.pass_path or options.fail_path or fail_paths),
            env,
            "pass",
        )

    base = Path(task.cwd) if task is not None and task.cwd else Path(".")
    output = options.output or str(base / Path(target).with_suffix(path_config.DEFAULT_OUTPUT_SUFFIX))
    stats = options.stats or str(base / Path(target).with_suffix(path_config.DEFAULT_STATS_SUFFIX))
    config = RunConfig(
        target_file=target,
        fail_checker=fail_checker,
        pass_checker=pass_checker,
        build_log_path=options.build_log,
        cwd=task.cwd if task is not None else None,
        inline_all_first=options.inline_all_first,
        preserve_error_script=options.preserve_error_script,
        wall_budget=options.wall_budget,
        check_timeout=options.check_timeout,
        checkpoint_path=options.checkpoint,
        output_path=output,
        stats_path=stats,
        resume=options.resume,
    )
    return config, task.error if task is not None else None


def configure_logging(verbose=False):
    level = logging.DEBUG if verbose or minimizer_config.VERBOSE else minimizer_config.LOG_LEVEL
    logging.basicConfig(level=level, format="%(asctime)s %(levelname)s %(name)s: %(message)s")


def run(config, expected_error=None):
    """Minimize and map the outcome to an exit status."""
    try:
        minimize(config, expected_error)
    except InitialVerificationError as e:
        logger.error("Could not minimize file: %s", e.message)
        return EXIT_NOT_REPRODUCED
    except (UnterminatedComment, UnterminatedString) as e:
        logger.error("Cannot split %s into sentences: %s", config.target_file, e.message)
        return EXIT_NOT_REPRODUCED
    except BudgetExhausted as e:
        logger.warning("%s; resume with --resume --checkpoint %s", e.message, config.checkpoint_path)
        return EXIT_RESUMABLE
    except (
        CheckerNotFound,
        CheckpointError,
        CyclicDependency,
        OutputWriteFailed,
        ScratchWriteFailed,
        UnresolvableRequire,
    ) as e:
        logger.error(e.message)
        return EXIT_CONFIGURATION
    except OSError as e:
        logger.error("Cannot read input: %s", e)
        return EXIT_CONFIGURATION
    return EXIT_SUCCESS


def main(argv=None):
    argv = sys.argv[1:] if argv is None else argv
    options = build_parser().parse_args(join_passthrough(argv))
    configure_logging(options.verbose)
    try:
        config, expected_error = config_from_args(options)
    except (NoErrorFound, NoMatchingInvocation) as e:
        logger.error(e.message)
        return EXIT_CONFIGURATION
    except ConfigurationError as e:
        logger.error(e.message)
        return EXIT_CONFIGURATION
    except OSError as e:
        logger.error("Cannot read build log: %s", e)
        return EXIT_CONFIGURATION
    return run(config, expected_error)


if __name__ == "__main__":
    sys.exit(main())
