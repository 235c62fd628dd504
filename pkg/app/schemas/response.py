from typing import Any, Generic, Optional, TypeVar, Union

from pydantic import BaseModel, Field

EXIT_SUCCESS = 0
EXIT_CHECK_FAILED = 1
EXIT_PRECONDITION = 2


class ErrorDetail(BaseModel):
    """One problem reported by a command."""
    field: Optional[str] = Field(None, description="Option the problem is attached to, if any")
    message: str = Field(..., description="What went wrong")
    type: Optional[str] = Field(None, description="error_type of the raised exception, or a validation code")


ErrorLike = Union[dict[str, Any], ErrorDetail]

T = TypeVar('T')


class JobResponse(BaseModel, Generic[T]):
    """Envelope printed by every command.

    The exit code of the process is carried along so that the JSON alone tells
    whether a check failed (1) or a precondition was violated (2).
    """
    success: bool = Field(..., description="Whether the command produced its result")
    message: str = Field(..., description="One-line summary")
    data: Optional[T] = Field(None, description="The command payload")
    errors: Optional[list[ErrorDetail]] = Field(None, description="Problems, when there were any")
    exit_code: int = Field(EXIT_SUCCESS, description="Process exit code")

    @classmethod
    def success_response(
        cls, message: str = "Command completed successfully", data: Optional[Any] = None
    ) -> 'JobResponse':
        return cls(success=True, message=message, data=data, exit_code=EXIT_SUCCESS)

    @classmethod
    def failure_response(
        cls, message: str = "Some checks failed", data: Optional[Any] = None
    ) -> 'JobResponse':
        """A computation that ran to the end but whose checks did not all hold.

        Args:
            message: Which checks failed.
            data: Every report, the failing ones included.

        Returns:
            Envelope with exit code 1 that still carries the data.
        """
        return cls(
            success=False,
            message=message,
            data=data,
            errors=[ErrorDetail(message=message, type="check_failed")],
            exit_code=EXIT_CHECK_FAILED,
        )

    @classmethod
    def error_response(
        cls,
        message: str = "An error occurred",
        errors: Optional[list[ErrorLike]] = None,
        exit_code: int = EXIT_PRECONDITION,
    ) -> 'JobResponse':
        """A command that stopped without a result.

        Args:
            message: Summary of the failure.
            errors: Details as dicts or ErrorDetail objects; defaults to the message alone.
            exit_code: 2 for precondition violations, 1 for sentinels and internal errors.
        """
        details = [ErrorDetail.model_validate(error) for error in errors or [{"message": message}]]
        return cls(success=False, message=message, errors=details, exit_code=exit_code)

    @classmethod
    def not_found_response(cls, resource: str = "Resource") -> 'JobResponse':
        return cls.error_response(
            message=f"{resource} not found",
            errors=[{"message": f"{resource} not found", "type": "not_found"}],
            exit_code=EXIT_CHECK_FAILED,
        )
