from sqlalchemy.exc import IntegrityError
from sqlalchemy.orm import Session

from . import models
from .schemas import schemas


def get_jack_function(db: Session, lam: str, mu: str, mode: str):
    """Retrieves a stored Jack–Laurent function by its index and coefficient mode.

    Args:
        db (Session): Db session for executing db operations.
        lam (str): Parts of λ, comma-separated ("" for the empty partition).
        mu (str): Parts of μ, comma-separated.
        mode (str): "symbolic" or the numeric mode description.

    Returns:
        models.JackFunctionRecord: The stored record, or None if not found.
    """
    return (
        db.query(models.JackFunctionRecord)
        .filter(
            models.JackFunctionRecord.lam == lam,
            models.JackFunctionRecord.mu == mu,
            models.JackFunctionRecord.mode == mode,
        )
        .first()
    )


def get_jack_functions(db: Session, skip: int = 0, limit: int = 100):
    """Retrieves stored Jack–Laurent functions in insertion order.

    Args:
        db (Session): Db session for executing db operations.
        skip (int): Number of records to skip.
        limit (int): Maximum number of records to return.

    Returns:
        list[models.JackFunctionRecord]: A list of records.
    """
    return (
        db.query(models.JackFunctionRecord)
        .order_by(models.JackFunctionRecord.id)
        .offset(skip)
        .limit(limit)
        .all()
    )


def create_jack_function(db: Session, entry: schemas.JackFunctionCreate):
    """Stores a computed Jack–Laurent function.

    Args:
        db (Session): Db session for executing db operations.
        entry (schemas.JackFunctionCreate): Index, mode, eigenvalue and JSON payload.

    Returns:
        models.JackFunctionRecord: The newly created record.
    """
    record = models.JackFunctionRecord(**entry.model_dump())
    db.add(record)
    db.commit()
    db.refresh(record)
    return record


def store_jack_function(db: Session, entry: schemas.JackFunctionCreate):
    """Stores a computed function unless its (lam, mu, mode) row already exists.

    A concurrent writer may insert the same row between lookup and insert; the
    unique constraint then rejects ours and the stored row is returned instead.

    Returns:
        models.JackFunctionRecord: The new or the existing record.
    """
    try:
        return create_jack_function(db, entry)
    except IntegrityError:
        db.rollback()
        return get_jack_function(db, lam=entry.lam, mu=entry.mu, mode=entry.mode)


def delete_jack_function(db: Session, entry_id: int):
    """Deletes a stored Jack–Laurent function.

    Args:
        db (Session): Db session for executing db operations.
        entry_id (int): The ID of the record to delete.

    Returns:
        models.JackFunctionRecord: The deleted record, or None if not found.
    """
    record = db.query(models.JackFunctionRecord).filter(models.JackFunctionRecord.id == entry_id).first()
    if record:
        db.delete(record)
        db.commit()
    return record
