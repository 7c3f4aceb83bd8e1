"""
Response schema - standardized JSON envelope for command output.
"""
from pydantic import BaseModel
from typing import Optional, Any


class StandardResponse(BaseModel):
    """
    Standard envelope for every command run with --format json.
    """
    status: str  # "success", "error", "failed"
    message: str
    data: Optional[Any] = None  # Can be dict, list, or any other type
    count: Optional[int] = None  # Number of items in data, when it is a list
    error_code: Optional[str] = None

    class Config:
        json_schema_extra = {
            "example": {
                "status": "success",
                "message": "Enumerated 2 diagrams",
                "data": ["1 x 1 : {1,1'}", "1 x 1 : {1}{1'}"],
                "count": 2
            }
        }
