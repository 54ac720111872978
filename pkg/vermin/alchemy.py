from sqlalchemy import (
    Column,
    Integer,
    String,
    Text,
    ForeignKey,
    JSON,
    Boolean,
)
from sqlalchemy.orm import declarative_base, relationship

Base = declarative_base()


class SmartBase(Base):
    __abstract__ = True
    __tablename__ = "NO_TABLE_NAME_SET"

    def __repr__(self):
        return f"<{self.__tablename__} {self.id}>"


class Checkpoint(SmartBase):
    """One resumable minimization run; a checkpoint file holds a single row."""

    __tablename__ = "checkpoint"
    id = Column(Integer, primary_key=True)
    format_version = Column(Integer, nullable=False)
    target_file = Column(String, nullable=False)

    document = Column(Text)  # rendered text, for inspection and pristine reparse
    sentences = Column(JSON)  # sentence texts of a transformed document
    source_name = Column(String)
    pristine = Column(Boolean, default=True)

    expected_class = Column(String)
    expected_text = Column(Text)
    expected_number_sensitive = Column(Boolean, default=False)

    error_file = Column(String)
    error_line = Column(Integer)
    error_start = Column(Integer)
    error_end = Column(Integer)
    error_message = Column(Text)

    phase = Column(Integer, default=0)
    round = Column(Integer, default=0)
    pass_idx = Column(Integer, default=0)
    sweep = Column(Integer, default=0)
    position_index = Column(Integer)
    position_offset = Column(Integer)
    sweep_dirty = Column(Boolean, default=False)
    round_dirty = Column(Boolean, default=False)
    pass_dirty = Column(Boolean, default=False)

    inlined = Column(JSON, default=list)
    failed_inlines = Column(JSON, default=list)
    requires_inserted = Column(Boolean, default=False)
    wrapper_counter = Column(Integer, default=0)
    original_lines = Column(Integer, default=0)
    oracle_calls = Column(Integer, default=0)
    preserve_error_script = Column(Boolean, default=False)
    done = Column(Boolean, default=False)

    ledger = relationship(
        "LedgerEntryRow",
        back_populates="checkpoint",
        order_by="LedgerEntryRow.seq",
        cascade="all, delete-orphan",
    )


class LedgerEntryRow(SmartBase):
    __tablename__ = "ledger_entry"
    id = Column(Integer, primary_key=True)
    checkpoint__id = Column(Integer, ForeignKey("checkpoint.id"), nullable=False)
    seq = Column(Integer, nullable=False)
    pass_name = Column(String, nullable=False)
    lines_before = Column(Integer, nullable=False)
    lines_after = Column(Integer, nullable=False)

    checkpoint = relationship("Checkpoint", back_populates="ledger")
