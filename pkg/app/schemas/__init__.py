from .response import JobResponse

__all__ = ["JobResponse", "schemas"]
