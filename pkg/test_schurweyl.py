#!/usr/bin/env python3
"""
Tests for the Schur-Weyl matrices of diagrams and elements, hom-space ranks
and the direct matrix formulas for dots and crossings.
"""
import logging
import random
import sys
from fractions import Fraction

import pytest

from models.algebra import AlgebraElement
from models.diagram import PartitionDiagram
from models.exact import Poly
from models.matrix import SparseMatrix
from services.algebra_service import AlgebraService
from services.diagram_service import DiagramService, identity, merge
from services.schurweyl_service import OracleKind, SchurWeylService, decode_labels, encode_labels
from services.symfun_service import SymfunService
from utils.exceptions import PreconditionError

logging.basicConfig(level=logging.INFO)
logger = logging.getLogger(__name__)

LEAF_LEAF = PartitionDiagram.parse("1 x 1 : {1}{1'}")


def _random_element(rng: random.Random, m: int, n: int) -> AlgebraElement:
    diagrams = DiagramService.enumerate_diagrams(m, n)
    terms = {d: Poly((rng.randint(-2, 2), rng.randint(-1, 1))) for d in rng.sample(diagrams, min(3, len(diagrams)))}
    return AlgebraElement(m, n, terms)


def test_label_encoding():
    assert encode_labels([1, 0], 3) == 1
    assert encode_labels([0, 1], 3) == 3
    for index in range(27):
        assert encode_labels(decode_labels(index, 3, 3), 3) == index


def test_psi_of_merge():
    """u_i (x) u_j goes to delta_ij u_i."""
    for t in (1, 2, 3):
        matrix = SchurWeylService.psi_diagram(merge(), t)
        expected = {(i, encode_labels([i, i], t)): 1 for i in range(t)}
        assert matrix == SparseMatrix(t, t * t, expected)


def test_psi_small_cases():
    assert SchurWeylService.psi_diagram(identity(1), 2) == SparseMatrix.identity(2)
    assert SchurWeylService.psi_diagram(LEAF_LEAF, 2) == SparseMatrix.from_dense([[1, 1], [1, 1]])
    f = AlgebraElement.generic_parameter(1)
    assert SchurWeylService.psi_element(f, 3) == SparseMatrix.identity(3).scale(3)
    assert SchurWeylService.psi_diagram(PartitionDiagram(0, 0, ()), 0) == SparseMatrix.identity(1)
    assert SchurWeylService.psi_diagram(identity(1), 0).rows == 0


def test_functoriality():
    rng = random.Random(21)
    for _ in range(25):
        a, b, c = (rng.randint(0, 2) for _ in range(3))
        f, g = _random_element(rng, a, b), _random_element(rng, b, c)
        t = rng.randint(1, 3)
        assert SchurWeylService.psi_element(f * g, t) == (
            SchurWeylService.psi_element(f, t) @ SchurWeylService.psi_element(g, t)
        )


def test_monoidal_compatibility():
    rng = random.Random(22)
    for _ in range(15):
        f = _random_element(rng, rng.randint(0, 2), rng.randint(0, 1))
        g = _random_element(rng, rng.randint(0, 1), rng.randint(0, 2))
        t = rng.randint(1, 3)
        assert SchurWeylService.psi_element(AlgebraService.tensor(f, g), t) == SchurWeylService.kron(
            SchurWeylService.psi_element(f, t), SchurWeylService.psi_element(g, t)
        )


def test_equivariance():
    rng = random.Random(23)
    t = 3
    for _ in range(15):
        m, n = rng.randint(0, 2), rng.randint(0, 2)
        d = rng.choice(DiagramService.enumerate_diagrams(m, n))
        g = list(range(1, t + 1))
        rng.shuffle(g)
        matrix = SchurWeylService.psi_diagram(d, t)
        left = SchurWeylService.label_permutation_matrix(m, t, g) @ matrix
        right = matrix @ SchurWeylService.label_permutation_matrix(n, t, g)
        assert left == right


def test_hom_rank():
    assert SchurWeylService.hom_rank(2, 2, 4) == 15
    assert SchurWeylService.hom_rank(2, 2, 1) == 1
    assert SchurWeylService.hom_rank(0, 0, 3) == 1
    assert SchurWeylService.hom_rank(2, 2, 2) < 15
    for total in range(5):
        for m in range(total + 1):
            assert SchurWeylService.hom_rank(m, total - m, total) == SymfunService.bell(total)


def test_oracle_base_cases():
    assert SchurWeylService.jm_matrix_oracle(1, 1, 2, OracleKind.LEFT_DOT) == SparseMatrix.from_dense([[1, 1], [1, 1]])
    assert SchurWeylService.jm_matrix_oracle(1, 1, 3, OracleKind.RIGHT_DOT) == SparseMatrix.identity(3).scale(3)
    with pytest.raises(PreconditionError):
        SchurWeylService.jm_matrix_oracle(2, 2, 3, OracleKind.RIGHT_CROSS)


def test_right_crossing_oracle_is_swap():
    t = 3
    swap = {}
    for i in range(t):
        for j in range(t):
            swap[(encode_labels([j, i], t), encode_labels([i, j], t))] = 1
    assert SchurWeylService.jm_matrix_oracle(2, 1, t, OracleKind.RIGHT_CROSS) == SparseMatrix(t * t, t * t, swap)


def test_oracle_agreement():
    """Recurrence-built elements match the direct matrix formulas."""
    for n in (1, 2):
        for kind in OracleKind:
            crossing = kind in (OracleKind.LEFT_CROSS, OracleKind.RIGHT_CROSS)
            for j in range(1, n if crossing else n + 1):
                results = SchurWeylService.oracle_agreement(n, j, kind, range(1, n + 3))
                assert all(ok for _, ok in results), (n, j, kind, results)


def test_oracle_agreement_on_three_strands():
    for kind in OracleKind:
        crossing = kind in (OracleKind.LEFT_CROSS, OracleKind.RIGHT_CROSS)
        for j in range(1, 3 if crossing else 4):
            results = SchurWeylService.oracle_agreement(3, j, kind, range(1, 6))
            assert all(ok for _, ok in results), (j, kind, results)


def test_central_z_acts_by_transposition_sums():
    """z^(1) on two strands acts on U_3^(x)2 through the diagonal S_3 action."""
    t = 3
    z = SchurWeylService.psi_element(AlgebraService.central_z(2, 1), t)
    expected = SparseMatrix(t * t, t * t)
    for i in range(1, t + 1):
        for j in range(i + 1, t + 1):
            g = list(range(1, t + 1))
            g[i - 1], g[j - 1] = j, i
            expected = expected + SchurWeylService.label_permutation_matrix(2, t, g) - SparseMatrix.identity(t * t)
    assert z == expected


def test_coordinate_export():
    text = SchurWeylService.psi_diagram(merge(), 2).to_coordinate_text()
    assert text.splitlines() == ["2 4", "0 0 1", "1 3 1"]
    assert SparseMatrix.identity(2).scale(Fraction(1, 2)).to_coordinate_text().splitlines()[1] == "0 0 1/2"


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v"]))
