import pytest
from sqlalchemy.exc import IntegrityError
from sqlalchemy.orm import Session

from app import crud
from app.schemas.schemas import JackFunctionCreate, JackFunctionEntry, JackLaurentSchema

# Test data
TEST_ENTRY_DATA = {
    "lam": "1",
    "mu": "1",
    "mode": "symbolic",
    "eigenvalue": "-2*k*p0 + 2*k + 2",
    "payload": (
        '{"index": {"lam": [1], "mu": [1]}, "mode": "symbolic", '
        '"eigenvalue": "-2*k*p0 + 2*k + 2", "m_coeffs": [], '
        '"p_form": {"text": "p_1*p_-1", "terms": []}}'
    ),
}


def test_create_jack_function_success(db_session: Session):
    """Test storing a computed function with all fields."""
    # Arrange
    entry = JackFunctionCreate(**TEST_ENTRY_DATA)

    # Act
    record = crud.create_jack_function(db_session, entry)

    # Assert
    assert record is not None
    assert record.id is not None
    assert record.lam == TEST_ENTRY_DATA["lam"]
    assert record.mode == TEST_ENTRY_DATA["mode"]
    assert JackLaurentSchema.model_validate_json(record.payload).index.lam == [1]


def test_create_jack_function_rejects_empty_mode():
    """Test the validation of the mode label."""
    with pytest.raises(ValueError):
        JackFunctionCreate(**{**TEST_ENTRY_DATA, "mode": ""})


def test_create_jack_function_duplicate(db_session: Session):
    """Test that an index is stored once per coefficient mode."""
    # Arrange
    crud.create_jack_function(db_session, JackFunctionCreate(**TEST_ENTRY_DATA))

    # Act & Assert
    crud.create_jack_function(
        db_session, JackFunctionCreate(**{**TEST_ENTRY_DATA, "mode": "numeric(k=1/3,p0=2)"})
    )
    with pytest.raises(IntegrityError):
        crud.create_jack_function(db_session, JackFunctionCreate(**TEST_ENTRY_DATA))


def test_store_jack_function_returns_existing_row(db_session: Session):
    """Test that storing an index twice keeps one row and returns it."""
    # Arrange
    first = crud.store_jack_function(db_session, JackFunctionCreate(**TEST_ENTRY_DATA))

    # Act
    second = crud.store_jack_function(db_session, JackFunctionCreate(**TEST_ENTRY_DATA))

    # Assert
    assert second is not None
    assert second.id == first.id
    assert len(crud.get_jack_functions(db_session)) == 1


def test_get_jack_function_success(db_session: Session):
    """Test looking up a stored function by index and mode."""
    # Arrange
    created = crud.create_jack_function(db_session, JackFunctionCreate(**TEST_ENTRY_DATA))

    # Act
    result = crud.get_jack_function(db_session, lam="1", mu="1", mode="symbolic")

    # Assert
    assert result is not None
    assert result.id == created.id


def test_get_jack_function_not_found(db_session: Session):
    """Test looking up an index that was never stored."""
    crud.create_jack_function(db_session, JackFunctionCreate(**TEST_ENTRY_DATA))
    assert crud.get_jack_function(db_session, lam="1", mu="", mode="symbolic") is None
    assert crud.get_jack_function(db_session, lam="1", mu="1", mode="numeric(k=1,p0=1)") is None


def test_get_jack_functions_empty(db_session: Session):
    """Test listing an empty catalog."""
    assert crud.get_jack_functions(db_session) == []


def test_get_jack_functions_with_pagination(db_session: Session):
    """Test listing the catalog page by page."""
    # Create test data
    for i in range(1, 11):
        crud.create_jack_function(
            db_session, JackFunctionCreate(**{**TEST_ENTRY_DATA, "lam": str(i)})
        )

    # First page
    records = crud.get_jack_functions(db_session, skip=0, limit=5)
    assert len(records) == 5
    assert records[0].lam == "1"
    assert records[4].lam == "5"

    # Second page
    records = crud.get_jack_functions(db_session, skip=5, limit=5)
    assert [record.lam for record in records] == ["6", "7", "8", "9", "10"]

    # Skip beyond available
    assert crud.get_jack_functions(db_session, skip=15, limit=5) == []


def test_entry_schema_reads_records(db_session: Session):
    """Test the listing schema built from ORM attributes."""
    record = crud.create_jack_function(db_session, JackFunctionCreate(**TEST_ENTRY_DATA))
    entry = JackFunctionEntry.model_validate(record)
    assert entry.id == record.id
    assert entry.eigenvalue == TEST_ENTRY_DATA["eigenvalue"]


def test_delete_jack_function_success(db_session: Session):
    """Test deleting a stored function."""
    # Arrange
    created = crud.create_jack_function(db_session, JackFunctionCreate(**TEST_ENTRY_DATA))

    # Act
    deleted = crud.delete_jack_function(db_session, created.id)

    # Assert
    assert deleted is not None
    assert crud.get_jack_function(db_session, lam="1", mu="1", mode="symbolic") is None


def test_delete_jack_function_not_found(db_session: Session):
    """Test deleting a non-existent entry."""
    assert crud.delete_jack_function(db_session, 9999) is None
