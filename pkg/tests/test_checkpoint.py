""" Testing that a run state survives a checkpoint round trip """
import pytest
import sys
from pathlib import Path

sys.path.append(str(Path(__file__).parent.parent / "vermin"))
from alchemy import Checkpoint  # pylint: disable=import-error
from checkpoint import load_checkpoint, save_checkpoint
from configs import minimizer_config
from data_objects import Cursor, LedgerEntry, MinimizationState
from db_connection import session_scope
from error_equivalence import ErrorClass, ErrorSignature, RawError
from errors import CheckpointError
from sentences import Document, render


@pytest.fixture
def state(tmp_path):
    doc = Document.parse("Definition a := 0.  (* kept *)\nLemma l : a = a.\nProof. trigger. Qed.\n\n", "bug.v")
    return MinimizationState(
        current=doc,
        expected=ErrorSignature(ErrorClass.NORMALIZED, "Error: boom", False),
        ledger=[LedgerEntry("truncate_after_error", 10, 4), LedgerEntry("inline", 4, 12)],
        preserve_error_script=True,
        checkpoint_path=str(tmp_path / "run.sqlite"),
        last_error=RawError("/tmp/x/bug.v", 3, (7, 15), "Error: boom"),
        cursor=Cursor(phase=1, round=2, pass_idx=3, sweep=1, position=(5, 0), sweep_dirty=True, round_dirty=True),
        inlined=["Top.B"],
        failed_inlines=["Top.Legacy"],
        requires_inserted=True,
        wrapper_counter=2,
        original_lines=14,
        oracle_calls=37,
    )


def test_round_trip_pristine(state):
    save_checkpoint(state, state.checkpoint_path, "bug.v")
    loaded, target = load_checkpoint(state.checkpoint_path)
    assert target == "bug.v"
    assert render(loaded.current) == render(state.current)
    assert loaded.current.pristine
    for attr in [
        "expected",
        "ledger",
        "preserve_error_script",
        "checkpoint_path",
        "last_error",
        "cursor",
        "inlined",
        "failed_inlines",
        "requires_inserted",
        "wrapper_counter",
        "original_lines",
        "oracle_calls",
        "done",
    ]:
        assert getattr(loaded, attr) == getattr(state, attr), attr


def test_round_trip_transformed(state):
    state.current = state.current.replace(0, 1, ["(* c *) Definition a := 1."])
    state.cursor = Cursor()
    state.last_error = None
    state.done = True
    save_checkpoint(state, state.checkpoint_path, "bug.v")
    loaded, _ = load_checkpoint(state.checkpoint_path)
    assert loaded.current.texts == state.current.texts
    assert not loaded.current.pristine
    assert loaded.cursor.position is None
    assert loaded.last_error is None
    assert loaded.done


def test_saving_replaces_the_previous_checkpoint(state):
    save_checkpoint(state, state.checkpoint_path, "bug.v")
    state.ledger.append(LedgerEntry("remove_blocks_backward", 12, 9))
    save_checkpoint(state, state.checkpoint_path, "bug.v")
    with session_scope(state.checkpoint_path) as sess:
        assert sess.query(Checkpoint).count() == 1
        assert len(sess.query(Checkpoint).one().ledger) == 3


def test_unusable_checkpoints(state, tmp_path):
    with pytest.raises(CheckpointError):
        load_checkpoint(tmp_path / "missing.sqlite")

    empty = tmp_path / "empty.sqlite"
    with session_scope(empty):
        pass
    with pytest.raises(CheckpointError):
        load_checkpoint(empty)

    save_checkpoint(state, state.checkpoint_path, "bug.v")
    with session_scope(state.checkpoint_path) as sess:
        sess.query(Checkpoint).one().format_version = minimizer_config.CHECKPOINT_FORMAT_VERSION + 1
    with pytest.raises(CheckpointError):
        load_checkpoint(state.checkpoint_path)

    garbage = tmp_path / "garbage.sqlite"
    garbage.write_text("not a database", encoding="utf-8")
    with pytest.raises(CheckpointError):
        load_checkpoint(garbage)
