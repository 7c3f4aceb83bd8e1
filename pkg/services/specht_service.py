"""
Specht service - Young's seminormal form over Q.

For a standard tableau T and adjacent transposition s_i with i, i+1 in
different rows and columns, let rho = cont_{i+1}(T) - cont_i(T) and T' the
tableau with i, i+1 swapped. Then

    s_i v_T = (1/rho) v_T + v_{T'}                 if i+1 lies lower in T
    s_i v_T = (1/rho) v_T + (1 - 1/rho^2) v_{T'}   otherwise

and s_i acts by +1 (same row) or -1 (same column) in the remaining cases.
"""
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Sequence, Tuple

from models.matrix import SparseMatrix
from models.partition import (
    Partition,
    Tableau,
    standard_tableaux,
    swap_entries,
    tableau_content,
    tableau_position,
)
from utils.exceptions import PreconditionError
from utils.logger import get_logger

logger = get_logger("specht_service")


@dataclass
class SeminormalRep:
    """
    Seminormal Specht representation.

    Fields:
        shape: The partition lambda
        basis: Standard tableaux, row-reading tableau first
        gens: gens[i-1] is the matrix of s_i; entry (r, c) is the coefficient
            of v_r in s_i v_c
        form_weights: <v_T, v_T> of the diagonal invariant form
    """
    shape: Partition
    basis: List[Tableau]
    gens: List[SparseMatrix]
    form_weights: List[Fraction]
    _cache: Dict[Tuple[int, ...], SparseMatrix] = field(default_factory=dict, repr=False)

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def n(self) -> int:
        return self.shape.size

    def matrix(self, g: Sequence[int]) -> SparseMatrix:
        """
        Matrix of a permutation (image tuple).

        g is reduced to the identity by right multiplication with s_k at
        descents; the generators are then applied in the order found.
        """
        g = tuple(g)
        if g in self._cache:
            return self._cache[g]
        word = []
        current = list(g)
        while True:
            for k in range(1, len(current)):
                if current[k - 1] > current[k]:
                    current[k - 1], current[k] = current[k], current[k - 1]
                    word.append(k)
                    break
            else:
                break
        result = SparseMatrix.identity(self.dim)
        for k in word:
            result = self.gens[k - 1] @ result
        self._cache[g] = result
        return result

    def apply(self, g: Sequence[int], vector: Dict[int, Fraction]) -> Dict[int, Fraction]:
        return self.matrix(g).apply(vector)

    def form(self, u: Dict[int, Fraction], v: Dict[int, Fraction]) -> Fraction:
        return sum((u[k] * v[k] * self.form_weights[k] for k in u if k in v), Fraction(0))


class SpechtService:
    """Construction of Specht modules."""

    @staticmethod
    def specht_dim(shape: Partition) -> int:
        return len(standard_tableaux(shape))

    @staticmethod
    @lru_cache(maxsize=None)
    def specht_rep(shape: Partition) -> SeminormalRep:
        """
        Build the seminormal representation and its invariant form.

        Form weights satisfy w_{T'} = w_T (1 - 1/rho_T^2) whenever T has i+1
        lower than i; they are propagated from the row-reading tableau.
        """
        basis = standard_tableaux(shape)
        index = {tab: k for k, tab in enumerate(basis)}
        n = shape.size
        gens = []
        for i in range(1, n):
            entries: Dict[Tuple[int, int], Fraction] = {}
            for c, tab in enumerate(basis):
                (r1, c1), (r2, c2) = tableau_position(tab, i), tableau_position(tab, i + 1)
                if r1 == r2:
                    entries[(c, c)] = Fraction(1)
                elif c1 == c2:
                    entries[(c, c)] = Fraction(-1)
                else:
                    rho = Fraction(tableau_content(tab, i + 1) - tableau_content(tab, i))
                    other = index[swap_entries(tab, i, i + 1)]
                    entries[(c, c)] = 1 / rho
                    entries[(other, c)] = Fraction(1) if r2 > r1 else 1 - 1 / rho ** 2
            gens.append(SparseMatrix(len(basis), len(basis), entries))

        weights: List[Fraction] = [None] * len(basis)
        if basis:
            weights[0] = Fraction(1)
            queue = deque([0])
            while queue:
                k = queue.popleft()
                tab = basis[k]
                for i in range(1, n):
                    (r1, c1), (r2, c2) = tableau_position(tab, i), tableau_position(tab, i + 1)
                    if r1 == r2 or c1 == c2:
                        continue
                    other = index[swap_entries(tab, i, i + 1)]
                    if weights[other] is not None:
                        continue
                    rho = Fraction(tableau_content(tab, i + 1) - tableau_content(tab, i))
                    if r2 > r1:
                        weights[other] = weights[k] * (1 - 1 / rho ** 2)
                    else:
                        weights[other] = weights[k] / (1 - 1 / rho ** 2)
                    queue.append(other)
        logger.debug(f"Built seminormal representation of {shape} (dimension {len(basis)})")
        return SeminormalRep(shape, basis, gens, weights)

    @staticmethod
    def jucys_murphy_matrix(rep: SeminormalRep, j: int) -> SparseMatrix:
        """Matrix of x_j = sum_{i<j} (i j)."""
        if not 1 <= j <= rep.n:
            raise PreconditionError(f"x_j needs 1 <= j <= {rep.n}")
        out = SparseMatrix(rep.dim, rep.dim)
        for i in range(1, j):
            g = list(range(1, rep.n + 1))
            g[i - 1], g[j - 1] = j, i
            out = out + rep.matrix(g)
        return out

    @staticmethod
    def character(rep: SeminormalRep, g: Sequence[int]) -> Fraction:
        """Trace of a permutation; used to cross-check Murnaghan-Nakayama values."""
        m = rep.matrix(g)
        return sum((m.get(k, k) for k in range(rep.dim)), Fraction(0))
