import pytest
from sqlalchemy import event
from sqlalchemy.orm import Session
from typer.testing import CliRunner

from app.database import Base, make_engine
from app.exact_arith import CoefficientField

# In-memory catalog shared by the CRUD tests
CATALOG_TEST_URL = "sqlite:///:memory:"


@pytest.fixture(scope="session")
def symbolic():
    """Coefficients in Q(k, p0)."""
    return CoefficientField.symbolic()


@pytest.fixture(scope="session")
def numeric():
    """Coefficients in Q with k = 2/11 and p0 = 5/13, away from every resonance used in the tests."""
    return CoefficientField.numeric("2/11", "5/13")


@pytest.fixture(scope="session")
def db_engine():
    """One catalog engine for the whole session; tables live as long as it does."""
    engine = make_engine(CATALOG_TEST_URL)
    Base.metadata.create_all(bind=engine)
    yield engine
    Base.metadata.drop_all(bind=engine)
    engine.dispose()


@pytest.fixture
def db_session(db_engine):
    """A session whose writes are rolled back after each test.

    Commits inside crud only release a savepoint, which is reopened at once.
    """
    with db_engine.connect() as connection:
        outer = connection.begin()
        session = Session(bind=connection)
        connection.begin_nested()

        @event.listens_for(session, "after_transaction_end")
        def reopen_savepoint(session, transaction):
            if transaction.nested and not transaction._parent.nested:
                session.begin_nested()

        try:
            yield session
        finally:
            session.close()
            outer.rollback()


@pytest.fixture
def runner():
    """Invoke the CLI in-process."""
    return CliRunner()


@pytest.fixture
def catalog_url(tmp_path):
    """A fresh file-backed catalog for CLI runs, which open their own sessions."""
    return f"sqlite:///{tmp_path / 'catalog.db'}"
