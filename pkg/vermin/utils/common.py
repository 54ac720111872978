"""
Common utility functions.
"""
from pathlib import Path
import hashlib
import statistics


def count_lines(text):
    """Number of lines a rendered document occupies

    Arguments:
        text {str} -- rendered document

    Returns:
        int -- line count, where a missing final newline still counts the last line
    """
    return len(text.splitlines())


def text_digest(text):
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def median_seconds(samples):
    if not samples:
        return 0.0
    return float(statistics.median(samples))


def format_ratio(ratio):
    """The single place a reduction ratio is turned into text, so header and sidecar agree."""
    return f"{ratio:.6f}"


def read_text(p):
    with open(p, encoding="utf-8") as f:
        return f.read()


def write_text(p, text):
    p = Path(p)
    p.parent.mkdir(parents=True, exist_ok=True)
    with open(p, "w", encoding="utf-8", newline="") as f:
        f.write(text)
    return p
