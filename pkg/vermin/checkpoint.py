"""
Save and restore a minimization run so an interrupted job can resume between
two acceptances.
"""
from pathlib import Path
import logging

from sqlalchemy.exc import SQLAlchemyError

from alchemy import Checkpoint, LedgerEntryRow
from configs import minimizer_config
from data_objects import Cursor, LedgerEntry, MinimizationState
from db_connection import session_scope
from error_equivalence import ErrorClass, ErrorSignature, RawError
from errors import CheckpointError
from sentences import Document, render

logger = logging.getLogger(__name__)


def _to_row(state, target_file):
    doc = state.current
    cursor = state.cursor
    position = cursor.position or (None, None)
    error = state.last_error
    row = Checkpoint(
        format_version=minimizer_config.CHECKPOINT_FORMAT_VERSION,
        target_file=str(target_file),
        document=render(doc),
        sentences=list(doc.texts),
        source_name=doc.source_name,
        pristine=doc.pristine,
        expected_class=state.expected.error_class.value,
        expected_text=state.expected.normalized_text,
        expected_number_sensitive=state.expected.number_sensitive,
        error_file=error.file if error else None,
        error_line=error.line if error else None,
        error_start=error.char_range[0] if error else None,
        error_end=error.char_range[1] if error else None,
        error_message=error.message if error else None,
        phase=cursor.phase,
        round=cursor.round,
        pass_idx=cursor.pass_idx,
        sweep=cursor.sweep,
        position_index=position[0],
        position_offset=position[1],
        sweep_dirty=cursor.sweep_dirty,
        round_dirty=cursor.round_dirty,
        pass_dirty=cursor.pass_dirty,
        inlined=list(state.inlined),
        failed_inlines=list(state.failed_inlines),
        requires_inserted=state.requires_inserted,
        wrapper_counter=state.wrapper_counter,
        original_lines=state.original_lines,
        oracle_calls=state.oracle_calls,
        preserve_error_script=state.preserve_error_script,
        done=state.done,
    )
    row.ledger = [
        LedgerEntryRow(seq=i, pass_name=e.pass_name, lines_before=e.lines_before, lines_after=e.lines_after)
        for i, e in enumerate(state.ledger)
    ]
    return row


def _from_row(row, path):
    if row.pristine:
        doc = Document.parse(row.document, row.source_name)
    else:
        doc = Document.from_texts(list(row.sentences), row.source_name)
    expected = ErrorSignature(
        ErrorClass(row.expected_class), row.expected_text or "", bool(row.expected_number_sensitive)
    )
    last_error = None
    if row.error_file is not None:
        last_error = RawError(row.error_file, row.error_line, (row.error_start, row.error_end), row.error_message)
    position = None
    if row.position_index is not None:
        position = (row.position_index, row.position_offset)
    cursor = Cursor(
        phase=row.phase,
        round=row.round,
        pass_idx=row.pass_idx,
        sweep=row.sweep,
        position=position,
        sweep_dirty=row.sweep_dirty,
        round_dirty=row.round_dirty,
        pass_dirty=row.pass_dirty,
    )
    return MinimizationState(
        current=doc,
        expected=expected,
        ledger=[LedgerEntry(e.pass_name, e.lines_before, e.lines_after) for e in row.ledger],
        preserve_error_script=row.preserve_error_script,
        checkpoint_path=str(path),
        last_error=last_error,
        cursor=cursor,
        inlined=list(row.inlined or []),
        failed_inlines=list(row.failed_inlines or []),
        requires_inserted=row.requires_inserted,
        wrapper_counter=row.wrapper_counter,
        original_lines=row.original_lines,
        oracle_calls=row.oracle_calls,
        done=row.done,
    )


def save_checkpoint(state, path, target_file):
    """Replace the checkpoint stored at `path` by the current state.

    Raises:
        CheckpointError
    """
    try:
        with session_scope(path) as sess:
            for old in sess.query(Checkpoint).all():
                sess.delete(old)
            sess.add(_to_row(state, target_file))
    except (SQLAlchemyError, OSError) as e:
        raise CheckpointError(path, f"Could not write checkpoint {path}: {e}")
    logger.debug("Checkpoint written to %s", path)


def load_checkpoint(path):
    """The run state stored at `path`, and the target file it belongs to.

    Returns:
        (MinimizationState, str)

    Raises:
        CheckpointError
    """
    if not Path(path).exists():
        raise CheckpointError(path, f"No checkpoint at {path}")
    try:
        with session_scope(path) as sess:
            row = sess.query(Checkpoint).one_or_none()
            if row is None:
                raise CheckpointError(path, f"Checkpoint {path} is empty")
            if row.format_version != minimizer_config.CHECKPOINT_FORMAT_VERSION:
                raise CheckpointError(
                    path, f"Checkpoint format {row.format_version} is not supported"
                )
            return _from_row(row, path), row.target_file
    except SQLAlchemyError as e:
        raise CheckpointError(path, f"Could not read checkpoint {path}: {e}")
