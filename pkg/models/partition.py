"""
Partition and symmetric-function models.

Partitions print as `(5,3,3,2)` and the empty partition as `()`. A node in
row i, column j (both from 1) has content j - i.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, Iterable, List, Optional, Tuple

from utils.exceptions import ParseError, PreconditionError
from utils.validators import format_rational, parse_partition_parts

Tableau = Tuple[Tuple[int, ...], ...]


@dataclass(frozen=True, order=True)
class Partition:
    """Weakly decreasing tuple of positive parts."""
    parts: Tuple[int, ...] = field(default=())

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        if any(p <= 0 for p in parts) or any(a < b for a, b in zip(parts, parts[1:])):
            raise PreconditionError(f"{parts} is not a partition")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def of(cls, *parts: int) -> "Partition":
        return cls(tuple(parts))

    @classmethod
    def from_parts(cls, parts: Iterable[int]) -> "Partition":
        """Sort and drop zeros."""
        return cls(tuple(sorted((p for p in parts if p), reverse=True)))

    @classmethod
    def parse(cls, text: str) -> "Partition":
        """
        Parse `(3,1)` or `()`.

        Raises:
            ParseError: If the text is not a partition
        """
        parts = parse_partition_parts(text)
        try:
            return cls(tuple(parts))
        except PreconditionError as exc:
            raise ParseError(str(exc))

    @property
    def size(self) -> int:
        return sum(self.parts)

    @property
    def length(self) -> int:
        return len(self.parts)

    def part(self, i: int) -> int:
        """lambda_i with 1-based i; zero past the length."""
        return self.parts[i - 1] if 1 <= i <= len(self.parts) else 0

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def conjugate(self) -> "Partition":
        if not self.parts:
            return self
        return Partition(tuple(sum(1 for p in self.parts if p >= j) for j in range(1, self.parts[0] + 1)))

    def boxes(self) -> List[Tuple[int, int]]:
        return [(i, j) for i, p in enumerate(self.parts, start=1) for j in range(1, p + 1)]

    def contents(self) -> List[int]:
        return [j - i for i, j in self.boxes()]

    # -- addable and removable nodes ----------------------------------------

    def addable_rows(self) -> List[int]:
        """Rows (1-based) where a box can be added."""
        rows = [1]
        for i in range(2, len(self.parts) + 2):
            if self.part(i - 1) > self.part(i):
                rows.append(i)
        return sorted(set(rows))

    def removable_rows(self) -> List[int]:
        return [i for i in range(1, len(self.parts) + 1) if self.part(i) > self.part(i + 1)]

    def addable_contents(self) -> List[int]:
        return [self.part(i) + 1 - i for i in self.addable_rows()]

    def removable_contents(self) -> List[int]:
        return [self.part(i) - i for i in self.removable_rows()]

    def add_content(self, content: Any) -> Optional["Partition"]:
        """lambda with a box of the given content added, or None."""
        for i in self.addable_rows():
            if self.part(i) + 1 - i == content:
                parts = list(self.parts) + [0]
                parts[i - 1] += 1
                return Partition.from_parts(parts)
        return None

    def remove_content(self, content: Any) -> Optional["Partition"]:
        """lambda with the removable box of the given content removed, or None."""
        for i in self.removable_rows():
            if self.part(i) - i == content:
                parts = list(self.parts)
                parts[i - 1] -= 1
                return Partition.from_parts(parts)
        return None

    def padded(self, n: int) -> "Partition":
        """(n - |lambda|, lambda_1, lambda_2, ...)."""
        first = n - self.size
        if first < self.part(1):
            raise PreconditionError(f"Cannot pad {self} to size {n}")
        return Partition.from_parts((first,) + self.parts)

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.parts)) + ")"

    def __repr__(self) -> str:
        return f"Partition{self}"


def standard_tableaux(shape: Partition) -> List[Tableau]:
    """
    Standard Young tableaux of a shape, as tuples of rows.

    The row-reading tableau (1..lambda_1 in the first row and so on) comes first.
    """
    n = shape.size
    if n == 0:
        return [()]
    out: List[Tableau] = []
    for row in shape.removable_rows():
        parts = list(shape.parts)
        parts[row - 1] -= 1
        for smaller in standard_tableaux(Partition.from_parts(parts)):
            rows = [list(r) for r in smaller] + [[] for _ in range(len(shape.parts) - len(smaller))]
            rows[row - 1].append(n)
            out.append(tuple(tuple(r) for r in rows))
    out.sort(key=lambda tab: tuple(v for r in tab for v in r))
    return out


def tableau_position(tab: Tableau, value: int) -> Tuple[int, int]:
    """(row, column) of a value, both 1-based."""
    for i, row in enumerate(tab, start=1):
        if value in row:
            return i, row.index(value) + 1
    raise ValueError(f"{value} not in tableau")


def tableau_content(tab: Tableau, value: int) -> int:
    i, j = tableau_position(tab, value)
    return j - i


def swap_entries(tab: Tableau, a: int, b: int) -> Tableau:
    return tuple(tuple(b if v == a else a if v == b else v for v in row) for row in tab)


class SchurPoly:
    """
    Finite linear combination of Schur functions s_lambda over Q.

    The same container holds combinations of deformed Schur functions; which
    basis is meant is up to the caller.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Dict[Partition, Any]] = None):
        self.terms = {p: Fraction(c) for p, c in (terms or {}).items() if c}

    @classmethod
    def basis(cls, shape: Partition) -> "SchurPoly":
        return cls({shape: 1})

    def coefficient(self, shape: Partition) -> Fraction:
        return self.terms.get(shape, Fraction(0))

    def degree(self) -> int:
        return max((p.size for p in self.terms), default=-1)

    def __add__(self, other: "SchurPoly") -> "SchurPoly":
        out = dict(self.terms)
        for p, c in other.terms.items():
            out[p] = out.get(p, 0) + c
        return SchurPoly(out)

    def __sub__(self, other: "SchurPoly") -> "SchurPoly":
        return self + other * -1

    def __mul__(self, scalar: Any) -> "SchurPoly":
        if isinstance(scalar, SchurPoly):
            return NotImplemented
        return SchurPoly({p: c * scalar for p, c in self.terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other: Any) -> bool:
        if not isinstance(other, SchurPoly):
            return NotImplemented
        return self.terms == other.terms

    __hash__ = None

    def __bool__(self) -> bool:
        return bool(self.terms)

    def sorted_terms(self) -> List[Tuple[Partition, Fraction]]:
        """Higher degree first, then dominance-like reverse lexicographic order."""
        return sorted(self.terms.items(), key=lambda item: (-item[0].size, tuple(-p for p in item[0].parts)))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for k, (shape, c) in enumerate(self.sorted_terms()):
            sign = "-" if c < 0 else "+"
            magnitude = abs(c)
            body = f"s{shape}" if magnitude == 1 else f"{format_rational(magnitude)}*s{shape}"
            if k == 0:
                pieces.append(("-" if sign == "-" else "") + body)
            else:
                pieces.append(f" {sign} {body}")
        return "".join(pieces)

    def __repr__(self) -> str:
        return f"SchurPoly({self})"
