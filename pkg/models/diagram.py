"""
Partition diagram model - basis morphisms of the partition category.

Vertices are encoded as integers: bottom vertex k is k (1..n) and top vertex k
is n + k. Strands are numbered from right to left, so strand 1 is the
rightmost one. Blocks are sorted tuples and the block tuple is sorted by least
vertex, which makes the representation canonical.
"""
import enum
import re
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Sequence, Tuple

from utils.exceptions import ParseError

Block = Tuple[int, ...]

_HEADER_RE = re.compile(r"^\s*(\d+)\s*x\s*(\d+)\s*:\s*(.*?)\s*$")
_BLOCK_RE = re.compile(r"\{([^{}]*)\}")
_VERTEX_RE = re.compile(r"^(\d+)('?)$")


class DiagramKind(str, enum.Enum):
    """Diagram classification."""
    PERMUTATION = "Permutation"
    UPWARD = "Upward"
    DOWNWARD = "Downward"
    STRICTLY_UPWARD = "StrictlyUpward"
    STRICTLY_DOWNWARD = "StrictlyDownward"
    GENERAL = "General"


@dataclass(frozen=True)
class DiagramClass:
    """Kind of a diagram together with its propagating rank."""
    kind: DiagramKind
    propagating_rank: int

    @property
    def is_upward(self) -> bool:
        return self.kind in (DiagramKind.PERMUTATION, DiagramKind.UPWARD, DiagramKind.STRICTLY_UPWARD)

    @property
    def is_downward(self) -> bool:
        return self.kind in (DiagramKind.PERMUTATION, DiagramKind.DOWNWARD, DiagramKind.STRICTLY_DOWNWARD)


@dataclass(frozen=True, order=True)
class PartitionDiagram:
    """
    Set partition of n bottom and m top vertices; a basis morphism n -> m.

    Fields:
        m: Top arity (codomain)
        n: Bottom arity (domain)
        blocks: Canonical blocks over the integer vertex encoding
    """
    m: int
    n: int
    blocks: Tuple[Block, ...] = field(default=())

    # -- construction -------------------------------------------------------

    @classmethod
    def from_blocks(cls, m: int, n: int, blocks: Iterable[Iterable[int]]) -> "PartitionDiagram":
        """
        Build the canonical diagram from any block listing.

        Raises:
            ParseError: If the blocks are empty, overlap or miss a vertex
        """
        canonical = sorted(tuple(sorted(b)) for b in blocks)
        seen = [v for b in canonical for v in b]
        if any(len(b) == 0 for b in canonical):
            raise ParseError("Diagram blocks must be nonempty")
        if sorted(seen) != list(range(1, m + n + 1)):
            raise ParseError(f"Blocks do not partition the {m + n} vertices of a {m} x {n} diagram")
        return cls(m, n, tuple(canonical))

    @classmethod
    def from_vertex_blocks(
        cls, m: int, n: int, blocks: Iterable[Iterable[Tuple[str, int]]]
    ) -> "PartitionDiagram":
        """Build from blocks of ('b', k) / ('t', k) vertex labels."""
        return cls.from_blocks(
            m, n, ([k if side == "b" else n + k for side, k in b] for b in blocks)
        )

    # -- vertices -----------------------------------------------------------

    def is_bottom(self, v: int) -> bool:
        return v <= self.n

    def label(self, v: int) -> Tuple[str, int]:
        """('b', k) for bottom vertex k, ('t', k) for top vertex k."""
        return ("b", v) if v <= self.n else ("t", v - self.n)

    def bottoms(self, block: Block) -> List[int]:
        return [v for v in block if v <= self.n]

    def tops(self, block: Block) -> List[int]:
        return [v - self.n for v in block if v > self.n]

    def block_index(self) -> Dict[int, int]:
        """Vertex -> index of its block."""
        return {v: i for i, b in enumerate(self.blocks) for v in b}

    @property
    def propagating_rank(self) -> int:
        return sum(1 for b in self.blocks if b[0] <= self.n < b[-1])

    def is_permutation(self) -> bool:
        if self.m != self.n:
            return False
        return all(len(b) == 2 and b[0] <= self.n < b[1] for b in self.blocks)

    def permutation(self) -> Tuple[int, ...]:
        """
        The permutation g with bottom k joined to top g(k).

        Raises:
            ValueError: If the diagram is not a permutation diagram
        """
        if not self.is_permutation():
            raise ValueError(f"{self} is not a permutation diagram")
        images = [0] * self.n
        for lo, hi in self.blocks:
            images[lo - 1] = hi - self.n
        return tuple(images)

    # -- text ---------------------------------------------------------------

    def format_vertex(self, v: int) -> str:
        return str(v) if v <= self.n else f"{v - self.n}'"

    def __str__(self) -> str:
        if not self.blocks:
            return f"{self.m} x {self.n} : (empty)"
        body = "".join(
            "{" + ",".join(self.format_vertex(v) for v in b) + "}" for b in self.blocks
        )
        return f"{self.m} x {self.n} : {body}"

    @classmethod
    def parse(cls, text: str) -> "PartitionDiagram":
        """
        Parse `m x n : {1,4,1',2'}{2,6}`; unprimed labels are bottoms.

        Raises:
            ParseError: On malformed text or a non-partition
        """
        match = _HEADER_RE.match(text or "")
        if not match:
            raise ParseError(f"Not a diagram: {text!r} (expected 'm x n : {{...}}...')")
        m, n, body = int(match.group(1)), int(match.group(2)), match.group(3)
        if body in ("", "(empty)"):
            if m + n:
                raise ParseError(f"A {m} x {n} diagram cannot be empty")
            return cls(0, 0, ())
        if _BLOCK_RE.sub("", body).strip():
            raise ParseError(f"Unexpected text between blocks in {text!r}")
        blocks: List[List[int]] = []
        for raw in _BLOCK_RE.findall(body):
            block = []
            for token in raw.split(","):
                vm = _VERTEX_RE.match(token.strip())
                if not vm:
                    raise ParseError(f"Bad vertex {token!r} in {text!r}")
                k, primed = int(vm.group(1)), bool(vm.group(2))
                bound = m if primed else n
                if not 1 <= k <= bound:
                    raise ParseError(f"Vertex {token.strip()} out of range for {m} x {n}")
                block.append(n + k if primed else k)
            blocks.append(block)
        return cls.from_blocks(m, n, blocks)


def permutation_diagram(g: Sequence[int]) -> PartitionDiagram:
    """Diagram joining bottom k to top g(k); g is given as its image tuple."""
    n = len(g)
    if sorted(g) != list(range(1, n + 1)):
        raise ValueError(f"Not a permutation of 1..{n}: {tuple(g)}")
    return PartitionDiagram.from_blocks(n, n, ((k, n + g[k - 1]) for k in range(1, n + 1)))


def identity_diagram(n: int) -> PartitionDiagram:
    return permutation_diagram(tuple(range(1, n + 1)))
