"""
Report schemas - verification results, Gram ranks and block tables.
"""
from typing import List, Optional

from pydantic import BaseModel


class CheckResultSchema(BaseModel):
    """Outcome of one check inside a verification suite."""
    suite: str
    name: str
    passed: bool
    detail: Optional[str] = None

    class Config:
        json_schema_extra = {
            "example": {
                "suite": "basis",
                "name": "bell(2 x 2)",
                "passed": True,
                "detail": "15 diagrams"
            }
        }


class VerificationReportSchema(BaseModel):
    """All checks of one suite run."""
    suite: str
    bounds: str
    checks: List[CheckResultSchema] = []

    @property
    def failed(self) -> List[CheckResultSchema]:
        return [c for c in self.checks if not c.passed]

    @property
    def ok(self) -> bool:
        return not self.failed

    class Config:
        json_schema_extra = {
            "example": {
                "suite": "relations",
                "bounds": "small",
                "checks": [{"suite": "relations", "name": "merge.split = id", "passed": True}]
            }
        }


class GramReportSchema(BaseModel):
    """Rank data of one Gram matrix."""
    partition: str
    m: int
    t: str
    dimension: int
    rank: int

    class Config:
        json_schema_extra = {
            "example": {"partition": "()", "m": 1, "t": "0", "dimension": 1, "rank": 0}
        }


class BlockRowSchema(BaseModel):
    """One partition in the block table."""
    block: int
    partition: str
    typical: bool
    kappa: Optional[str] = None
    n: Optional[int] = None
    window: str

    class Config:
        json_schema_extra = {
            "example": {
                "block": 0,
                "partition": "(3)",
                "typical": False,
                "kappa": "(2)",
                "n": 1,
                "window": "{-1,2}"
            }
        }


class BlockCheckSchema(BaseModel):
    n: int
    m: int
    partition: str
    rank: int
    predicted: int
    passed: bool


class BlockStructureReportSchema(BaseModel):
    """Per-(n, m) comparison of Gram ranks with alternating sums along a kappa orbit."""
    kappa: str
    t: str
    rows: List[BlockCheckSchema] = []

    @property
    def ok(self) -> bool:
        return all(r.passed for r in self.rows)

    class Config:
        json_schema_extra = {
            "example": {
                "kappa": "(2)",
                "t": "2",
                "rows": [{"n": 0, "m": 1, "partition": "()", "rank": 1, "predicted": 1, "passed": True}]
            }
        }
