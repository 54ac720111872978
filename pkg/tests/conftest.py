import pytest

from harness import in_process_launch
from oracle import Oracle  # pylint: disable=import-error


@pytest.fixture
def toy_launch(monkeypatch):
    """Route every oracle launch to the in-process toy checker."""
    monkeypatch.setattr(Oracle, "_launch", in_process_launch)
