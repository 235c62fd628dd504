from .schemas.response import JobResponse

__all__ = ["JobResponse"]
