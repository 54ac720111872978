from contextlib import contextmanager
from pathlib import Path

from sqlalchemy import create_engine
from sqlalchemy.orm import sessionmaker

from alchemy import Base
from configs import path_config


class DBConnection:
    """A class that knows how to connect to and manage connections to a checkpoint file
    """

    def __init__(self, path=path_config.DEFAULT_CHECKPOINT, echo=path_config.ECHO_SQL):
        Path(path).parent.mkdir(parents=True, exist_ok=True)
        self.engine = create_engine(f"sqlite:///{path}", echo=echo)
        Base.metadata.create_all(self.engine)
        self.sess = sessionmaker(bind=self.engine)()


@contextmanager
def session_scope(path=path_config.DEFAULT_CHECKPOINT):
    """Provide a transactional scope around a series of operations."""
    db = DBConnection(path)
    try:
        yield db.sess
        db.sess.commit()
    except:
        db.sess.rollback()
        raise
    finally:
        db.sess.close()
        db.engine.dispose()
