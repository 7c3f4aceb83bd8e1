"""
Schur-Weyl service - the functor psi_t from diagrams to S_t-equivariant
matrices on tensor powers of the permutation module U_t.

A label tuple (i_1, ..., i_n) with labels in 0..t-1 has index
sum(i_k * t^(k-1)): strand 1 (rightmost) is the least significant digit.
"""
import enum
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Callable, List, Sequence, Tuple

from models.algebra import AlgebraElement
from models.diagram import PartitionDiagram
from models.matrix import SparseMatrix, sparse_rank
from services.algebra_service import AlgebraService
from services.diagram_service import DiagramService
from utils.exceptions import ArityError, PreconditionError
from utils.logger import get_logger

logger = get_logger("schurweyl_service")


class OracleKind(str, enum.Enum):
    """Jucys-Murphy generator read off the matrix dictionary."""
    LEFT_DOT = "LeftDot"
    RIGHT_DOT = "RightDot"
    LEFT_CROSS = "LeftCross"
    RIGHT_CROSS = "RightCross"


def encode_labels(labels: Sequence[int], t: int) -> int:
    index = 0
    for label in reversed(labels):
        index = index * t + label
    return index


def decode_labels(index: int, length: int, t: int) -> List[int]:
    labels = []
    for _ in range(length):
        index, label = divmod(index, t)
        labels.append(label)
    return labels


def _swap(a: int, b: int, x: int) -> int:
    if x == a:
        return b
    if x == b:
        return a
    return x


class SchurWeylService:
    """Matrices of morphisms under psi_t."""

    @staticmethod
    @lru_cache(maxsize=4096)
    def psi_diagram(d: PartitionDiagram, t: int) -> SparseMatrix:
        """
        0/1 matrix of a diagram: the entry at (top labels, bottom labels) is 1
        iff the joint labeling is constant on every block.

        Args:
            d: Diagram n -> m
            t: Nonnegative integer dimension of U_t

        Returns:
            t^m x t^n sparse matrix
        """
        if t < 0:
            raise PreconditionError(f"psi_t needs t >= 0, got {t}")
        index = d.block_index()
        top_blocks = [index[d.n + k] for k in range(1, d.m + 1)]
        bottom_blocks = [index[k] for k in range(1, d.n + 1)]
        entries = {}
        for labels in product(range(t), repeat=len(d.blocks)):
            row = encode_labels([labels[b] for b in top_blocks], t)
            col = encode_labels([labels[b] for b in bottom_blocks], t)
            entries[(row, col)] = 1
        return SparseMatrix(t ** d.m, t ** d.n, entries)

    @staticmethod
    def psi_element(f: AlgebraElement, t: int) -> SparseMatrix:
        """Matrix of f at T = t (loop scalars are already in the coefficients)."""
        if f.t is not None and f.t != t:
            raise ArityError(f"Element is specialized at {f.t}, cannot apply psi_{t}")
        out = SparseMatrix(t ** f.m, t ** f.n)
        for d, c in f.terms.items():
            value = c.evaluate(t) if f.t is None else c
            if value:
                out = out + SchurWeylService.psi_diagram(d, t).scale(value)
        return out

    @staticmethod
    def hom_rank(m: int, n: int, t: int) -> int:
        """Rank of the span of all diagram matrices n -> m at t."""
        diagrams = DiagramService.enumerate_diagrams(m, n)
        rank = sparse_rank(SchurWeylService.psi_diagram(d, t).entries for d in diagrams)
        logger.info(f"hom_rank({m}, {n}, t={t}) = {rank} over {len(diagrams)} diagrams")
        return rank

    @staticmethod
    def kron(a: SparseMatrix, b: SparseMatrix) -> SparseMatrix:
        return a.kron(b)

    @staticmethod
    def matmul(a: SparseMatrix, b: SparseMatrix) -> SparseMatrix:
        return a @ b

    @staticmethod
    def label_permutation_matrix(n: int, t: int, g: Sequence[int]) -> SparseMatrix:
        """
        Diagonal action of the label permutation g (image tuple on 1..t) on
        U_t^{(x) n}.
        """
        if sorted(g) != list(range(1, t + 1)):
            raise PreconditionError(f"{tuple(g)} is not a permutation of 1..{t}")
        size = t ** n
        entries = {}
        for col in range(size):
            labels = decode_labels(col, n, t)
            entries[(encode_labels([g[x] - 1 for x in labels], t), col)] = 1
        return SparseMatrix(size, size, entries)

    @staticmethod
    def jm_matrix_oracle(n: int, j: int, t: int, kind: OracleKind) -> SparseMatrix:
        """
        Direct matrix of a dot or crossing via label transpositions.

        LeftDot and RightDot sum, over all labels i, the swap of labels i and
        i_j applied to strands 1..j and 1..j-1 respectively. LeftCross and
        RightCross apply the swap of i_k and i_(k+1) to strands 1..k-1 and
        1..k+1.

        Raises:
            PreconditionError: If j is out of range for the kind
        """
        kind = OracleKind(kind)
        crossing = kind in (OracleKind.LEFT_CROSS, OracleKind.RIGHT_CROSS)
        upper = n - 1 if crossing else n
        if not 1 <= j <= upper:
            raise PreconditionError(f"{kind.value} needs 1 <= j <= {upper}, got {j}")
        size = t ** n
        entries = {}

        def add(labels: List[int], col: int) -> None:
            key = (encode_labels(labels, t), col)
            entries[key] = entries.get(key, 0) + 1

        for col in range(size):
            labels = decode_labels(col, n, t)
            if kind is OracleKind.LEFT_DOT or kind is OracleKind.RIGHT_DOT:
                span = j if kind is OracleKind.LEFT_DOT else j - 1
                for i in range(t):
                    add([_swap(i, labels[j - 1], x) if s < span else x for s, x in enumerate(labels)], col)
            else:
                span = j - 1 if kind is OracleKind.LEFT_CROSS else j + 1
                a, b = labels[j - 1], labels[j]
                add([_swap(a, b, x) if s < span else x for s, x in enumerate(labels)], col)
        return SparseMatrix(size, size, entries)

    @staticmethod
    def construct(n: int, j: int, kind: OracleKind) -> AlgebraElement:
        """The recurrence-built element matching an oracle kind."""
        kind = OracleKind(kind)
        builders = {
            OracleKind.LEFT_DOT: AlgebraService.jm_left,
            OracleKind.RIGHT_DOT: AlgebraService.jm_right,
            OracleKind.LEFT_CROSS: AlgebraService.cross_left,
            OracleKind.RIGHT_CROSS: AlgebraService.cross_right,
        }
        return builders[kind](n, j)

    @staticmethod
    def oracle(n: int, j: int, kind: OracleKind) -> Callable[[int], SparseMatrix]:
        """t -> jm_matrix_oracle(n, j, t, kind), the input shape interpolation expects."""
        return lambda t: SchurWeylService.jm_matrix_oracle(n, j, t, kind)

    @staticmethod
    def oracle_agreement(n: int, j: int, kind: OracleKind, t_values: Sequence[int]) -> List[Tuple[int, bool]]:
        """Per-t comparison of the constructed element against the oracle."""
        element = SchurWeylService.construct(n, j, kind)
        return [
            (t, SchurWeylService.psi_element(element, t) == SchurWeylService.jm_matrix_oracle(n, j, t, kind))
            for t in t_values
        ]
