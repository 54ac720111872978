""" Testing error extraction and the error equivalence relation """
import pytest
import random
import sys
from pathlib import Path

sys.path.append(str(Path(__file__).parent.parent / "vermin"))
from error_equivalence import (  # pylint: disable=import-error
    ErrorClass,
    RawError,
    equivalent,
    extract_error,
    normalize,
    signature_of_log,
)
from errors import NoErrorFound


@pytest.fixture
def warning_then_errors_log():
    return (
        'File "bug.v", line 3, characters 0-5:\n'
        "Warning: There is no flag or option with this name.\n"
        "\n"
        'File "bug.v", line 4, characters 1-2:\n'
        "Error: first\n"
        "\n"
        'File "bug.v", line 7, characters 2-9:\n'
        "Error: The reference x was not found\n"
        "in the current environment.\n"
        "\n"
        "trailing noise\n"
    )


def test_extract_last_error(warning_then_errors_log):
    assert extract_error(warning_then_errors_log) == RawError(
        "bug.v",
        7,
        (2, 9),
        "Error: The reference x was not found\nin the current environment.",
    )


def test_extract_without_error():
    with pytest.raises(NoErrorFound):
        extract_error("")
    with pytest.raises(NoErrorFound):
        extract_error('File "bug.v", line 3, characters 0-5:\nWarning: only a warning\n')


def test_signature_of_log(warning_then_errors_log):
    signature, raw = signature_of_log(warning_then_errors_log)
    assert raw.line == 7
    assert signature.error_class == ErrorClass.NORMALIZED
    assert signature.normalized_text == "Error: The reference x was not found in the current environment."


EQUIVALENT_PAIRS = [
    (
        "Error: Universe inconsistency. Cannot enforce a.u1 < b.v2.",
        "Error: Universe inconsistency. Cannot enforce c <= d because d < c.",
    ),
    ("Anomaly: Forgotten universe u.1", "Error: forgotten universe Top.5 in the environment."),
    (
        "Error: Unsatisfied constraints: u1 <= v2 (maybe a bugged tactic).",
        "Error: Unsatisfied constraints: a <= b (maybe a bugged tactic).",
    ),
    (
        "Error: Cannot infer the implicit parameter H12 of ?f3.",
        "Error: Cannot infer the implicit parameter H7 of ?f99.",
    ),
    (
        'Error: In File "a.v", line 3, characters 1-2: bad',
        'Error: In File "b.v", line 9, characters 4-8: bad',
    ),
    ("Error:  the   term\n  is ill-typed", "Error: the term is ill-typed"),
    (
        "Error: Universe instance should have length 2.",
        "Error:   Universe instance should have length 2.",
    ),
    (
        "Error: Universe inconsistency. Universe instance should have length 1.",
        "Error: Universe inconsistency. Universe instance should have length 3.",
    ),
]

DISTINCT_PAIRS = [
    ("Error: foo", "Error: bar"),
    ("Error: Universe inconsistency.", "Anomaly: forgotten universe u1."),
    ("Error: Universe inconsistency.", "Error: Universe is inconsistent."),
    (
        "Error: Universe instance should have length 2.",
        "Error: Universe instance should have length 3.",
    ),
    (
        "Error: Unsatisfied constraints: x.",
        "Error: Unsatisfied constraints: y (maybe a bugged tactic).",
    ),
    ("Error: The reference x was not found.", "Error: The reference y was not found."),
]


@pytest.mark.parametrize("a,b", EQUIVALENT_PAIRS)
def test_equivalent_pairs(a, b):
    assert equivalent(normalize(a), normalize(b))


@pytest.mark.parametrize("a,b", DISTINCT_PAIRS)
def test_distinct_pairs(a, b):
    assert not equivalent(normalize(a), normalize(b))


def test_number_sensitive_messages_keep_digits():
    signature = normalize("Error: Universe instance should have length 2.")
    assert signature.number_sensitive
    assert signature.normalized_text == "Error: Universe instance should have length 2."
    assert normalize("Error: H12").normalized_text == "Error: H#"


TEMPLATES = [
    "Error: Universe inconsistency. Cannot enforce u{n} < v{m}.",
    "Anomaly: forgotten universe u{n}.",
    "Error: Unsatisfied constraints: u{n} <= v{m} (maybe a bugged tactic).",
    "Error: Universe instance should have length {n}.",
    "Error: Cannot infer H{n} of ?f{m}.",
    'Error: In File "f{n}.v", line {m}, characters 0-{n}: oops',
    "Error: {word} {n}",
]


def _random_message(rng):
    return rng.choice(TEMPLATES).format(
        n=rng.randint(0, 3), m=rng.randint(0, 3), word=rng.choice(["foo", "bar"])
    )


def test_equivalence_laws():
    rng = random.Random(0)
    for _ in range(10000):
        a, b, c = (normalize(_random_message(rng)) for _ in range(3))
        assert equivalent(a, a)
        assert equivalent(a, b) == equivalent(b, a)
        if equivalent(a, b) and equivalent(b, c):
            assert equivalent(a, c)
