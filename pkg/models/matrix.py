"""
Sparse exact matrices.

Entries are Fractions keyed by (row, col); zeros are never stored. Rank uses
fraction-free elimination on integer-scaled rows, so no pivot thresholds exist.
"""
from fractions import Fraction
from math import gcd, lcm
from typing import Dict, Hashable, Iterable, List, Sequence, Tuple

Entry = Tuple[int, int]


def _integer_row(vector: Dict[Hashable, Fraction]) -> Dict[Hashable, int]:
    """Scale a rational vector to a primitive integer vector."""
    scale = 1
    for value in vector.values():
        scale = lcm(scale, Fraction(value).denominator)
    row = {k: int(Fraction(v) * scale) for k, v in vector.items() if v}
    content = 0
    for value in row.values():
        content = gcd(content, value)
    if content > 1:
        row = {k: v // content for k, v in row.items()}
    return row


def sparse_rank(vectors: Iterable[Dict[Hashable, Fraction]]) -> int:
    """
    Rank of the span of sparse vectors with comparable keys.

    Each incoming row is reduced against the stored pivots (keyed by their least
    key) with integer cross-multiplication, then stored if anything survives.
    """
    pivots: Dict[Hashable, Dict[Hashable, int]] = {}
    for vector in vectors:
        row = _integer_row(vector)
        while row:
            lead = min(row)
            pivot = pivots.get(lead)
            if pivot is None:
                pivots[lead] = row
                break
            a, b = row[lead], pivot[lead]
            combined = {k: b * v for k, v in row.items()}
            for k, v in pivot.items():
                combined[k] = combined.get(k, 0) - a * v
            row = _integer_row({k: v for k, v in combined.items() if v})
    return len(pivots)


class SparseMatrix:
    """rows x cols matrix over Q."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: Dict[Entry, Fraction] = None):
        self.rows = rows
        self.cols = cols
        self.entries = {}
        for (r, c), value in (entries or {}).items():
            if not (0 <= r < rows and 0 <= c < cols):
                raise IndexError(f"Entry ({r}, {c}) outside a {rows} x {cols} matrix")
            if value:
                self.entries[(r, c)] = Fraction(value)

    @classmethod
    def identity(cls, size: int) -> "SparseMatrix":
        return cls(size, size, {(i, i): 1 for i in range(size)})

    @classmethod
    def from_dense(cls, data: Sequence[Sequence]) -> "SparseMatrix":
        rows = len(data)
        cols = len(data[0]) if rows else 0
        return cls(rows, cols, {(r, c): v for r, row in enumerate(data) for c, v in enumerate(row)})

    def get(self, r: int, c: int) -> Fraction:
        return self.entries.get((r, c), Fraction(0))

    def to_dense(self) -> List[List[Fraction]]:
        return [[self.get(r, c) for c in range(self.cols)] for r in range(self.rows)]

    def _check_shape(self, other: "SparseMatrix") -> None:
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError(
                f"Shape mismatch: {self.rows} x {self.cols} vs {other.rows} x {other.cols}"
            )

    def __add__(self, other: "SparseMatrix") -> "SparseMatrix":
        self._check_shape(other)
        out = dict(self.entries)
        for key, value in other.entries.items():
            out[key] = out.get(key, 0) + value
        return SparseMatrix(self.rows, self.cols, out)

    def __sub__(self, other: "SparseMatrix") -> "SparseMatrix":
        return self + other.scale(-1)

    def scale(self, scalar) -> "SparseMatrix":
        return SparseMatrix(self.rows, self.cols, {k: v * scalar for k, v in self.entries.items()})

    def __matmul__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.cols != other.rows:
            raise ValueError(f"Cannot multiply {self.rows} x {self.cols} by {other.rows} x {other.cols}")
        by_row: Dict[int, List[Tuple[int, Fraction]]] = {}
        for (r, c), value in other.entries.items():
            by_row.setdefault(r, []).append((c, value))
        out: Dict[Entry, Fraction] = {}
        for (r, k), a in self.entries.items():
            for c, b in by_row.get(k, ()):
                out[(r, c)] = out.get((r, c), 0) + a * b
        return SparseMatrix(self.rows, other.cols, out)

    def transpose(self) -> "SparseMatrix":
        return SparseMatrix(self.cols, self.rows, {(c, r): v for (r, c), v in self.entries.items()})

    def kron(self, other: "SparseMatrix") -> "SparseMatrix":
        """Kronecker product; `other` varies fastest in both indices."""
        out = {}
        for (ra, ca), a in self.entries.items():
            for (rb, cb), b in other.entries.items():
                out[(ra * other.rows + rb, ca * other.cols + cb)] = a * b
        return SparseMatrix(self.rows * other.rows, self.cols * other.cols, out)

    def is_symmetric(self) -> bool:
        return self.rows == self.cols and all(
            self.entries.get((c, r)) == v for (r, c), v in self.entries.items()
        )

    def rank(self) -> int:
        rows: Dict[int, Dict[int, Fraction]] = {}
        for (r, c), value in self.entries.items():
            rows.setdefault(r, {})[c] = value
        return sparse_rank(rows[r] for r in sorted(rows))

    def apply(self, vector: Dict[int, Fraction]) -> Dict[int, Fraction]:
        """Matrix times a sparse column vector."""
        out: Dict[int, Fraction] = {}
        for (r, c), value in self.entries.items():
            x = vector.get(c)
            if x:
                out[r] = out.get(r, 0) + value * x
        return {k: v for k, v in out.items() if v}

    def __eq__(self, other) -> bool:
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return (self.rows, self.cols, self.entries) == (other.rows, other.cols, other.entries)

    __hash__ = None

    def to_coordinate_text(self) -> str:
        """`rows cols` header, then one `row col value` line per nonzero entry."""
        lines = [f"{self.rows} {self.cols}"]
        for (r, c) in sorted(self.entries):
            value = self.entries[(r, c)]
            text = str(value.numerator) if value.denominator == 1 else str(value)
            lines.append(f"{r} {c} {text}")
        return "\n".join(lines)

    def __repr__(self) -> str:
        return f"SparseMatrix({self.rows} x {self.cols}, {len(self.entries)} nonzeros)"
