from contextlib import contextmanager
from typing import Iterator

from sqlalchemy import create_engine
from sqlalchemy.engine import Engine
from sqlalchemy.orm import Session, declarative_base, sessionmaker

DEFAULT_CATALOG_URL = "sqlite:///./jack_laurent.db"

Base = declarative_base()


def make_engine(url: str = DEFAULT_CATALOG_URL) -> Engine:
    connect_args = {"check_same_thread": False} if url.startswith("sqlite") else {}
    return create_engine(url, connect_args=connect_args)


@contextmanager
def get_db(url: str = DEFAULT_CATALOG_URL) -> Iterator[Session]:
    """Provide a session on the results catalog, creating the tables on first use."""
    engine = make_engine(url)
    Base.metadata.create_all(bind=engine)
    SessionLocal = sessionmaker(autocommit=False, autoflush=False, bind=engine)
    db = SessionLocal()
    try:
        yield db
    finally:
        db.close()
        engine.dispose()
