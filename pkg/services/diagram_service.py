"""
Diagram service - composition, monoidal product, flip, classification and
enumeration of partition diagrams, plus the elementary layers.
"""
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Dict, Iterator, List, Sequence, Tuple

from models.diagram import (
    DiagramClass,
    DiagramKind,
    PartitionDiagram,
    identity_diagram,
    permutation_diagram,
)
from utils.exceptions import ArityError, ParseError, PreconditionError
from utils.logger import get_logger
from utils.union_find import UnionFind

logger = get_logger("diagram_service")

SetPartition = Tuple[Tuple[int, ...], ...]


def restricted_growth_strings(k: int) -> Iterator[Tuple[int, ...]]:
    """Restricted growth strings of length k in lexicographic order."""
    if k == 0:
        yield ()
        return
    word = [0] * k

    def extend(pos: int, top: int) -> Iterator[Tuple[int, ...]]:
        if pos == k:
            yield tuple(word)
            return
        for value in range(top + 2):
            word[pos] = value
            yield from extend(pos + 1, max(top, value))

    yield from extend(1, 0)


def set_partitions(elements: Sequence[int]) -> List[SetPartition]:
    """
    All set partitions of `elements`, blocks ordered by first element.

    Order follows restricted growth strings over the given element order.
    """
    result = []
    for word in restricted_growth_strings(len(elements)):
        blocks: List[List[int]] = [[] for _ in range(max(word, default=-1) + 1)]
        for element, label in zip(elements, word):
            blocks[label].append(element)
        result.append(tuple(tuple(b) for b in blocks))
    return result


@dataclass(frozen=True)
class UpwardOrbit:
    """
    Orbit of upward m x n diagrams under the free right S_n-action.

    Fields:
        m: Number of top vertices
        top_partition: Set partition of the top labels 1..m
        marked: The n blocks of top_partition that meet the bottom, sorted
    """
    m: int
    top_partition: SetPartition
    marked: SetPartition

    @property
    def n(self) -> int:
        return len(self.marked)

    def representative(self) -> PartitionDiagram:
        """Normally ordered representative: marked block k receives bottom k."""
        n = self.n
        blocks = []
        position = {b: k for k, b in enumerate(self.marked, start=1)}
        for block in self.top_partition:
            tops = [n + v for v in block]
            if block in position:
                tops.append(position[block])
            blocks.append(tops)
        return PartitionDiagram.from_blocks(self.m, n, blocks)

    def __str__(self) -> str:
        def fmt(p: SetPartition) -> str:
            return "".join("{" + ",".join(f"{v}'" for v in b) + "}" for b in p) or "(empty)"
        return f"{fmt(self.top_partition)} marked {fmt(self.marked)}"


class DiagramService:
    """Operations on partition diagrams."""

    @staticmethod
    @lru_cache(maxsize=1 << 20)
    def compose(f: PartitionDiagram, g: PartitionDiagram) -> Tuple[PartitionDiagram, int]:
        """
        Stack f on top of g and remove closed components.

        Args:
            f: Diagram k -> m (upper)
            g: Diagram n -> k (lower)

        Returns:
            Tuple of (composite diagram n -> m, number of loops removed)

        Raises:
            ArityError: If f.n != g.m
        """
        if f.n != g.m:
            raise ArityError(f"Cannot compose {f.m} x {f.n} with {g.m} x {g.n}")
        m, k, n = f.m, f.n, g.n

        def lower(v: int) -> Tuple[str, int]:
            return ("b", v) if v <= n else ("m", v - n)

        def upper(v: int) -> Tuple[str, int]:
            return ("m", v) if v <= k else ("t", v - k)

        vertices = (
            [("b", i) for i in range(1, n + 1)]
            + [("m", i) for i in range(1, k + 1)]
            + [("t", i) for i in range(1, m + 1)]
        )
        uf = UnionFind(vertices)
        for block in g.blocks:
            uf.union_all([lower(v) for v in block])
        for block in f.blocks:
            uf.union_all([upper(v) for v in block])

        loops = 0
        blocks = []
        for component in uf.classes():
            outer = [v if side == "b" else n + v for side, v in component if side != "m"]
            if outer:
                blocks.append(outer)
            else:
                loops += 1
        return PartitionDiagram.from_blocks(m, n, blocks), loops

    @staticmethod
    def tensor(f: PartitionDiagram, g: PartitionDiagram) -> PartitionDiagram:
        """
        Place g to the right of f; g keeps the low strand labels.
        """
        big_n = f.n + g.n
        blocks = []
        for block in g.blocks:
            blocks.append([v if v <= g.n else big_n + (v - g.n) for v in block])
        for block in f.blocks:
            blocks.append([g.n + v if v <= f.n else big_n + g.m + (v - f.n) for v in block])
        return PartitionDiagram.from_blocks(f.m + g.m, big_n, blocks)

    @staticmethod
    def tensor_all(diagrams: Sequence[PartitionDiagram]) -> PartitionDiagram:
        """Left-to-right tensor product; the last diagram sits on strand 1."""
        result = PartitionDiagram(0, 0, ())
        for d in diagrams:
            result = DiagramService.tensor(result, d)
        return result

    @staticmethod
    def flip_sigma(d: PartitionDiagram) -> PartitionDiagram:
        """Reflect in a horizontal axis: an m x n diagram becomes n x m."""
        return PartitionDiagram.from_blocks(
            d.n, d.m, ([d.m + v if v <= d.n else v - d.n for v in block] for block in d.blocks)
        )

    @staticmethod
    @lru_cache(maxsize=None)
    def enumerate_diagrams(m: int, n: int) -> Tuple[PartitionDiagram, ...]:
        """
        Every m x n diagram exactly once, in restricted-growth order over the
        vertices B1..Bn, T1..Tm.
        """
        diagrams = tuple(
            PartitionDiagram.from_blocks(m, n, p) for p in set_partitions(range(1, m + n + 1))
        )
        logger.debug(f"Enumerated {len(diagrams)} diagrams of shape {m} x {n}")
        return diagrams

    @staticmethod
    def classify(d: PartitionDiagram) -> DiagramClass:
        """
        Classify a diagram.

        Upward means every block has at most one bottom vertex and none is
        bottom-only; downward is the flipped condition. The strict variants
        are the ones with m != n, so merge() (1 x 2) is StrictlyDownward and
        plain Upward/Downward only occur for non-permutation m x m diagrams.
        """
        upward = downward = True
        for block in d.blocks:
            bottoms = len(d.bottoms(block))
            tops = len(block) - bottoms
            if bottoms > 1 or (bottoms and not tops):
                upward = False
            if tops > 1 or (tops and not bottoms):
                downward = False
        rank = d.propagating_rank
        if upward and downward:
            kind = DiagramKind.PERMUTATION
        elif upward:
            kind = DiagramKind.STRICTLY_UPWARD if d.m != d.n else DiagramKind.UPWARD
        elif downward:
            kind = DiagramKind.STRICTLY_DOWNWARD if d.m != d.n else DiagramKind.DOWNWARD
        else:
            kind = DiagramKind.GENERAL
        return DiagramClass(kind, rank)

    @staticmethod
    @lru_cache(maxsize=None)
    def enumerate_upward_orbits(m: int, n: int) -> Tuple[UpwardOrbit, ...]:
        """
        Orbit representatives of upward m x n diagrams under right S_n-action:
        a set partition of the tops with n marked blocks.
        """
        orbits = []
        for partition in set_partitions(range(1, m + 1)):
            for marked in combinations(partition, n):
                orbits.append(UpwardOrbit(m, partition, tuple(marked)))
        return tuple(orbits)

    @staticmethod
    def orbit_of(d: PartitionDiagram) -> Tuple[UpwardOrbit, Tuple[int, ...]]:
        """
        Write an upward diagram d as representative(orbit) composed with a
        permutation g, returning (orbit, g).

        Raises:
            PreconditionError: If d is not upward
        """
        if not DiagramService.classify(d).is_upward:
            raise PreconditionError(f"{d} is not upward")
        top_partition = tuple(sorted(tuple(d.tops(b)) for b in d.blocks))
        marked = tuple(sorted(tuple(d.tops(b)) for b in d.blocks if d.bottoms(b)))
        position = {b: k for k, b in enumerate(marked, start=1)}
        g = [0] * d.n
        for block in d.blocks:
            for v in d.bottoms(block):
                g[v - 1] = position[tuple(d.tops(block))]
        return UpwardOrbit(d.m, top_partition, marked), tuple(g)

    @staticmethod
    def triangular_factor(
        d: PartitionDiagram,
    ) -> Tuple[PartitionDiagram, PartitionDiagram, PartitionDiagram]:
        """
        Factor d as up . perm . down with normally ordered upward `up`,
        permutation `perm` and normally ordered downward `down`.

        The middle object has size equal to the propagating rank.
        """
        propagating = [b for b in d.blocks if d.bottoms(b) and d.tops(b)]
        k = len(propagating)
        by_top = sorted(propagating, key=lambda b: min(d.tops(b)))
        by_bottom = sorted(propagating, key=lambda b: min(d.bottoms(b)))
        top_rank = {b: r for r, b in enumerate(by_top, start=1)}
        bottom_rank = {b: r for r, b in enumerate(by_bottom, start=1)}

        up_blocks = []
        for block in d.blocks:
            tops = [k + v for v in d.tops(block)]
            if block in top_rank:
                up_blocks.append(tops + [top_rank[block]])
            elif tops:
                up_blocks.append(tops)
        down_blocks = []
        for block in d.blocks:
            bottoms = d.bottoms(block)
            if block in bottom_rank:
                down_blocks.append(bottoms + [d.n + bottom_rank[block]])
            elif bottoms:
                down_blocks.append(bottoms)

        up = PartitionDiagram.from_blocks(d.m, k, up_blocks)
        down = PartitionDiagram.from_blocks(k, d.n, down_blocks)
        perm = permutation_diagram(tuple(top_rank[b] for b in by_bottom))
        return up, perm, down

    # -- text ---------------------------------------------------------------

    @staticmethod
    def parse_diagram(text: str) -> PartitionDiagram:
        return PartitionDiagram.parse(text)

    @staticmethod
    def format_diagram(d: PartitionDiagram) -> str:
        return str(d)


# -- elementary layers ----------------------------------------------------------
#
# Layer helpers act on n strands, with strand i counted from the right.


def _check_strand(n: int, i: int, span: int = 1) -> None:
    if not 1 <= i <= n - span + 1:
        raise PreconditionError(f"Strand position {i} out of range for {n} strands")


def _with_identity(n: int, skip: Sequence[int], shift_top: Dict[int, int]) -> List[List[int]]:
    """Through-strands for every bottom strand not in `skip`."""
    return [[k, shift_top[k]] for k in range(1, n + 1) if k not in skip]


def identity(n: int) -> PartitionDiagram:
    return identity_diagram(n)


def transposition(n: int, i: int, j: int) -> PartitionDiagram:
    """Permutation diagram of the transposition (i j) on n strands."""
    g = list(range(1, n + 1))
    g[i - 1], g[j - 1] = j, i
    return permutation_diagram(g)


def crossing_i(n: int, i: int) -> PartitionDiagram:
    """Swap strands i and i+1."""
    _check_strand(n, i, 2)
    return transposition(n, i, i + 1)


def merge_i(n: int, i: int) -> PartitionDiagram:
    """Merge strands i and i+1 of n strands into one (n -> n-1)."""
    _check_strand(n, i, 2)
    top = {k: n + (k if k <= i else k - 1) for k in range(1, n + 1)}
    blocks = _with_identity(n, (i, i + 1), top)
    blocks.append([i, i + 1, n + i])
    return PartitionDiagram.from_blocks(n - 1, n, blocks)


def split_i(n: int, i: int) -> PartitionDiagram:
    """Split strand i of n strands into two (n -> n+1)."""
    return DiagramService.flip_sigma(merge_i(n + 1, i))


def leaf_down_i(n: int, i: int) -> PartitionDiagram:
    """End strand i of n strands in a leaf (n -> n-1)."""
    _check_strand(n, i)
    top = {k: n + (k if k < i else k - 1) for k in range(1, n + 1)}
    blocks = _with_identity(n, (i,), top)
    blocks.append([i])
    return PartitionDiagram.from_blocks(n - 1, n, blocks)


def leaf_up_i(n: int, i: int) -> PartitionDiagram:
    """Start a new strand at position i from a leaf (n -> n+1)."""
    return DiagramService.flip_sigma(leaf_down_i(n + 1, i))


def double_leaf_i(n: int, i: int) -> PartitionDiagram:
    """Strand i cut into a bottom leaf and a top leaf."""
    return DiagramService.compose(leaf_up_i(n - 1, i), leaf_down_i(n, i))[0]


def equalizer(n: int, p: int, q: int) -> PartitionDiagram:
    """Identity on n strands with strands p and q joined into a single block."""
    blocks = [[k, n + k] for k in range(1, n + 1) if k not in (p, q)]
    blocks.append([p, q, n + p, n + q])
    return PartitionDiagram.from_blocks(n, n, blocks)


def copy_strand(n: int, source: int, target: int) -> PartitionDiagram:
    """Identity except that strand `target` is cut and fed from strand `source`."""
    blocks = [[k, n + k] for k in range(1, n + 1) if k not in (source, target)]
    blocks.append([source, n + source, n + target])
    blocks.append([target])
    return PartitionDiagram.from_blocks(n, n, blocks)


def cup() -> PartitionDiagram:
    return PartitionDiagram.from_blocks(2, 0, [[1, 2]])


def cap() -> PartitionDiagram:
    return PartitionDiagram.from_blocks(0, 2, [[1, 2]])


def merge() -> PartitionDiagram:
    return merge_i(2, 1)


def split() -> PartitionDiagram:
    return split_i(1, 1)


def leaf_up() -> PartitionDiagram:
    return PartitionDiagram.from_blocks(1, 0, [[1]])


def leaf_down() -> PartitionDiagram:
    return PartitionDiagram.from_blocks(0, 1, [[1]])


def parse_diagram_list(texts: Sequence[str]) -> List[PartitionDiagram]:
    """Parse several diagrams, naming the offending argument on failure."""
    out = []
    for position, text in enumerate(texts, start=1):
        try:
            out.append(DiagramService.parse_diagram(text))
        except ParseError as e:
            raise ParseError(f"Argument {position}: {e}") from e
    return out
