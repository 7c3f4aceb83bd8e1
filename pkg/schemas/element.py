"""
Element schemas - JSON form of diagrams and algebra elements.
"""
from fractions import Fraction
from typing import List, Optional

from pydantic import BaseModel, field_validator

from models.algebra import AlgebraElement, format_coefficient
from models.diagram import PartitionDiagram
from models.exact import Poly
from utils.exceptions import ParseError
from utils.validators import format_rational, parse_rational


class DiagramSchema(BaseModel):
    """A diagram in its text format, with its classification."""
    diagram: str
    kind: Optional[str] = None
    propagating_rank: Optional[int] = None

    @field_validator("diagram")
    @classmethod
    def validate_diagram(cls, v: str) -> str:
        """Normalize to the canonical printed form."""
        try:
            return str(PartitionDiagram.parse(v))
        except ParseError as e:
            raise ValueError(str(e))

    class Config:
        json_schema_extra = {
            "example": {
                "diagram": "2 x 1 : {1,1',2'}",
                "kind": "StrictlyUpward",
                "propagating_rank": 1
            }
        }


class TermSchema(BaseModel):
    """One diagram with its coefficient (rational, or polynomial in T)."""
    coeff: str
    diagram: str

    class Config:
        json_schema_extra = {
            "example": {"coeff": "T-1", "diagram": "2 x 2 : {1,1'}{2,2'}"}
        }


class AlgebraElementSchema(BaseModel):
    """A morphism n -> m; t is null for coefficients in Q[T]."""
    m: int
    n: int
    t: Optional[str] = None
    terms: List[TermSchema] = []

    @classmethod
    def from_element(cls, f: AlgebraElement) -> "AlgebraElementSchema":
        return cls(
            m=f.m,
            n=f.n,
            t=None if f.t is None else format_rational(f.t),
            terms=[TermSchema(coeff=_compact(format_coefficient(c)), diagram=str(d)) for d, c in f.sorted_terms()],
        )

    def to_element(self) -> AlgebraElement:
        """
        Rebuild the element.

        Raises:
            ParseError: On a malformed diagram or coefficient
        """
        t = None if self.t is None else parse_rational(self.t)
        terms = {}
        for term in self.terms:
            d = PartitionDiagram.parse(term.diagram)
            coeff = Poly.parse(term.coeff) if t is None else parse_rational(term.coeff)
            terms[d] = terms[d] + coeff if d in terms else coeff
        return AlgebraElement(self.m, self.n, terms, t)

    class Config:
        json_schema_extra = {
            "example": {
                "m": 2,
                "n": 2,
                "terms": [{"coeff": "T-1", "diagram": "2 x 2 : {1,1'}{2,2'}"}]
            }
        }


def _compact(text: str) -> str:
    """Drop the spaces of the printed polynomial form."""
    return text.replace(" ", "")
