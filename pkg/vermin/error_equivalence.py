"""
Extract the target error from checker logs and decide when two errors count
as the same buggy behaviour.
"""
from dataclasses import dataclass
from enum import Enum
from typing import Tuple
import logging
import re

from configs import minimizer_config
from errors import NoErrorFound

logger = logging.getLogger(__name__)

_RE_LOCATION = re.compile(r'^File "([^"]*)", line (\d+), characters (\d+)-(\d+):\s*$')
_RE_LOCATION_FRAGMENT = re.compile(r'File "[^"]*", line \d+, characters \d+-\d+:?')
_RE_DIGITS = re.compile(r"[0-9]+")
_RE_FORGOTTEN = re.compile(minimizer_config.FORGOTTEN_UNIVERSE_PATTERN, re.IGNORECASE)


class ErrorClass(Enum):
    UNIVERSE_INCONSISTENCY = "UniverseInconsistency"
    FORGOTTEN_UNIVERSE = "ForgottenUniverse"
    BUGGED_TACTIC_CONSTRAINTS = "BuggedTacticConstraints"
    NORMALIZED = "Normalized"


@dataclass(frozen=True)
class RawError:
    file: str
    line: int
    char_range: Tuple[int, int]
    message: str


@dataclass(frozen=True)
class ErrorSignature:
    error_class: ErrorClass
    normalized_text: str = ""
    number_sensitive: bool = False

    def __str__(self):
        if self.error_class == ErrorClass.NORMALIZED:
            return self.normalized_text
        return f"<{self.error_class.value}>"


def extract_error(log):
    """Find the last error report in a checker log.

    A report is a `File "f", line L, characters N-M:` header immediately
    followed by a line starting with `Error`. Headers followed by anything
    else (warnings) are skipped.

    Arguments:
        log {str} -- combined stdout and stderr of one checker run

    Returns:
        RawError -- the message runs from the Error line to the end of its non-empty block

    Raises:
        NoErrorFound
    """
    lines = log.splitlines()
    found = None
    for i, line in enumerate(lines[:-1]):
        m = _RE_LOCATION.match(line)
        if not m or not lines[i + 1].startswith("Error"):
            continue
        body = []
        for follow in lines[i + 1 :]:
            if not follow.strip():
                break
            body.append(follow)
        found = RawError(
            file=m.group(1),
            line=int(m.group(2)),
            char_range=(int(m.group(3)), int(m.group(4))),
            message="\n".join(body),
        )
    if found is None:
        raise NoErrorFound()
    return found


def normalize(message):
    """Quotient an error message by the incidental differences between runs.

    Arguments:
        message {str} -- starts with "Error"

    Returns:
        ErrorSignature
    """
    number_sensitive = minimizer_config.UNIVERSE_LENGTH_TEXT in message
    if minimizer_config.UNIVERSE_INCONSISTENCY_TEXT in message:
        return ErrorSignature(ErrorClass.UNIVERSE_INCONSISTENCY, "", number_sensitive)
    if _RE_FORGOTTEN.search(message):
        return ErrorSignature(ErrorClass.FORGOTTEN_UNIVERSE, "", number_sensitive)
    if all(t in message for t in minimizer_config.BUGGED_TACTIC_TEXTS):
        return ErrorSignature(ErrorClass.BUGGED_TACTIC_CONSTRAINTS, "", number_sensitive)

    text = _RE_LOCATION_FRAGMENT.sub(" ", message)
    text = " ".join(text.split())
    if not number_sensitive:
        text = _RE_DIGITS.sub("#", text)
    return ErrorSignature(ErrorClass.NORMALIZED, text, number_sensitive)


def equivalent(a, b):
    if a.error_class != b.error_class:
        return False
    if a.error_class != ErrorClass.NORMALIZED:
        return True
    return a.normalized_text == b.normalized_text


def signature_of_log(log):
    """Signature of the last error in a log, together with the raw error."""
    raw = extract_error(log)
    return normalize(raw.message), raw
