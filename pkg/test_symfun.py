#!/usr/bin/env python3
"""
Tests for symmetric-group combinatorics: partitions, seminormal Specht
representations, characters, Littlewood-Richardson and Kronecker
coefficients, the Cartan matrix and deformed Schur functions.
"""
import logging
import random
import sys
from fractions import Fraction
from itertools import permutations

import pytest

from models.matrix import SparseMatrix
from models.partition import Partition, SchurPoly, tableau_content
from services.specht_service import SpechtService
from services.symfun_service import ReducedKroneckerMethod, SymfunService, _cycle_permutation
from utils.exceptions import ParseError, PreconditionError

logging.basicConfig(level=logging.INFO)
logger = logging.getLogger(__name__)

P = Partition.of
EMPTY = Partition()


def _sign(cycle_type: Partition) -> int:
    return (-1) ** (cycle_type.size - cycle_type.length)


def test_partition_text():
    assert str(P(5, 3, 3, 2)) == "(5,3,3,2)"
    assert str(EMPTY) == "()"
    assert Partition.parse("(3,1)") == P(3, 1)
    assert Partition.parse("()") == EMPTY
    with pytest.raises(ParseError):
        Partition.parse("(1,3)")
    with pytest.raises(PreconditionError):
        P(2, 0)


def test_partitions_of():
    assert [len(SymfunService.partitions_of(n)) for n in range(8)] == [1, 1, 2, 3, 5, 7, 11, 15]
    assert SymfunService.partitions_of(3) == (P(3), P(2, 1), P(1, 1, 1))


def test_add_rem():
    assert SymfunService.add_rem(EMPTY) == (frozenset({0}), frozenset())
    assert SymfunService.add_rem(P(1)) == (frozenset({1, -1}), frozenset({0}))
    assert SymfunService.add_rem(P(2, 1)) == (frozenset({2, 0, -2}), frozenset({1, -1}))


def test_bell():
    assert SymfunService.bell(0) == 1
    assert SymfunService.bell(4) == 15
    assert SymfunService.bell(6) == 203


def test_specht_dimensions():
    assert SpechtService.specht_dim(P(4)) == 1
    assert SpechtService.specht_dim(P(2, 1)) == 2
    assert SpechtService.specht_dim(P(3, 2)) == 5
    assert SpechtService.specht_dim(EMPTY) == 1


def test_trivial_and_sign_representations():
    trivial = SpechtService.specht_rep(P(3))
    sign = SpechtService.specht_rep(P(1, 1, 1))
    for gen in trivial.gens:
        assert gen.to_dense() == [[1]]
    for gen in sign.gens:
        assert gen.to_dense() == [[-1]]


def test_seminormal_relations():
    for n in range(1, 6):
        for shape in SymfunService.partitions_of(n):
            rep = SpechtService.specht_rep(shape)
            one = SparseMatrix.identity(rep.dim)
            gens = rep.gens
            for i, s in enumerate(gens):
                assert s @ s == one
                if i + 1 < len(gens):
                    t = gens[i + 1]
                    assert s @ t @ s == t @ s @ t
                for far in gens[i + 2:]:
                    assert s @ far == far @ s


def test_jucys_murphy_is_diagonal_by_contents():
    for shape in (P(2, 1), P(3, 1), P(2, 2), P(3, 1, 1)):
        rep = SpechtService.specht_rep(shape)
        for j in range(1, rep.n + 1):
            x = SpechtService.jucys_murphy_matrix(rep, j)
            expected = {(k, k): tableau_content(tab, j) for k, tab in enumerate(rep.basis)}
            assert x.entries == {key: Fraction(v) for key, v in expected.items() if v}


def test_form_is_contravariant():
    """<s v, w> = <v, s w> on basis vectors."""
    for shape in (P(2, 1), P(3, 2), P(2, 2, 1)):
        rep = SpechtService.specht_rep(shape)
        for s in rep.gens:
            for r in range(rep.dim):
                for c in range(rep.dim):
                    assert rep.form_weights[r] * s.get(r, c) == rep.form_weights[c] * s.get(c, r)


def test_characters():
    assert SymfunService.char_value(P(2, 1), P(3)) == -1
    for n in range(1, 6):
        for shape in SymfunService.partitions_of(n):
            assert SymfunService.char_value(shape, P(*([1] * n))) == SpechtService.specht_dim(shape)
        for cycle_type in SymfunService.partitions_of(n):
            assert SymfunService.char_value(P(*([1] * n)), cycle_type) == _sign(cycle_type)
    with pytest.raises(PreconditionError):
        SymfunService.char_value(P(2), P(1))


def test_characters_match_seminormal_traces():
    for n in range(1, 5):
        for shape in SymfunService.partitions_of(n):
            rep = SpechtService.specht_rep(shape)
            for cycle_type in SymfunService.partitions_of(n):
                g = _cycle_permutation(cycle_type)
                assert SpechtService.character(rep, g) == SymfunService.char_value(shape, cycle_type)


def test_class_sizes_sum_to_factorial():
    assert sum(SymfunService.class_size(c) for c in SymfunService.partitions_of(5)) == 120
    assert SymfunService.z(P(2, 2, 1)) == 8


def test_littlewood_richardson():
    assert SymfunService.lr_coeff(P(2), P(1), P(1)) == 1
    assert SymfunService.lr_coeff(P(1, 1), P(1), P(1)) == 1
    assert SymfunService.lr_coeff(P(2, 1), P(1), P(1, 1)) == 1
    assert SymfunService.lr_coeff(P(3, 2, 1), P(2, 1), P(2, 1)) == 2
    assert SymfunService.lr_coeff(P(3, 1), P(3, 1), EMPTY) == 1
    assert SymfunService.lr_coeff(P(3), P(1), P(1)) == 0
    assert SymfunService.lr_triple(P(2, 1), P(1), P(1), P(1)) == 2


def test_kronecker():
    for n in range(1, 5):
        shapes = SymfunService.partitions_of(n)
        for mu in shapes:
            for nu in shapes:
                assert SymfunService.kronecker(P(n), mu, nu) == (1 if mu == nu else 0)
    assert SymfunService.kronecker(P(1, 1), P(2), P(1, 1)) == 1
    with pytest.raises(PreconditionError):
        SymfunService.kronecker(P(2), P(1), P(1))


def test_kronecker_symmetry():
    rng = random.Random(31)
    shapes = SymfunService.partitions_of(5)
    for _ in range(20):
        triple = [rng.choice(shapes) for _ in range(3)]
        value = SymfunService.kronecker(*triple)
        for order in permutations(triple):
            assert SymfunService.kronecker(*order) == value


def test_reduced_kronecker_examples():
    assert SymfunService.reduced_kronecker(P(2, 1), P(1), P(2, 1)) == 2
    assert SymfunService.reduced_kronecker(P(2), P(1), P(1)) == 1
    assert SymfunService.reduced_kronecker(P(1), P(1), P(1)) == 1
    assert SymfunService.reduced_kronecker(P(2, 1), P(1), P(1, 1)) == SymfunService.lr_coeff(P(2, 1), P(1), P(1, 1))


def test_reduced_kronecker_removable_boxes():
    for n in range(1, 5):
        for shape in SymfunService.partitions_of(n):
            assert SymfunService.reduced_kronecker(shape, P(1), shape) == len(shape.removable_rows())


def test_reduced_kronecker_methods_agree():
    shapes = SymfunService.partitions_up_to(2)
    for lam in shapes:
        for mu in shapes:
            for nu in shapes:
                stable = SymfunService.reduced_kronecker(lam, mu, nu, ReducedKroneckerMethod.STABILIZE)
                littlewood = SymfunService.reduced_kronecker(lam, mu, nu, ReducedKroneckerMethod.LITTLEWOOD)
                assert stable == littlewood, (lam, mu, nu)


def test_reduced_kronecker_of_empty_triple():
    empty = Partition.of()
    assert empty.padded(0) == empty
    assert empty.padded(3) == P(3)
    for method in ReducedKroneckerMethod:
        assert SymfunService.reduced_kronecker(empty, empty, empty, method) == 1


def test_parse_method():
    assert SymfunService.parse_method(None) is ReducedKroneckerMethod.STABILIZE
    assert SymfunService.parse_method("littlewood") is ReducedKroneckerMethod.LITTLEWOOD
    with pytest.raises(PreconditionError):
        SymfunService.parse_method("guess")


def test_cartan_matrix():
    for n in range(5):
        for lam in SymfunService.partitions_of(n):
            assert SymfunService.cartan_B(lam, lam) == 1
            for mu in SymfunService.partitions_of(n):
                if mu != lam:
                    assert SymfunService.cartan_B(lam, mu) == 0
            for mu in SymfunService.partitions_of(n + 1):
                assert SymfunService.cartan_B(lam, mu) == 0
    assert SymfunService.cartan_B(P(1), EMPTY) == 1


def test_cartan_column_shapes():
    """For (1^n) the nonzero entries sit at (1^n) and (1^(n-1))."""
    for n in range(1, 5):
        column = P(*([1] * n))
        for mu in SymfunService.partitions_up_to(n):
            expected = 1 if mu in (column, P(*([1] * (n - 1)))) else 0
            assert SymfunService.cartan_B(column, mu) == expected


def test_deformed_schur():
    assert SymfunService.deformed_schur(EMPTY) == SchurPoly.basis(EMPTY)
    assert SymfunService.deformed_schur(P(1)) == SchurPoly({P(1): 1, EMPTY: -1})
    assert str(SymfunService.deformed_schur(P(1))) == "s(1) - s()"


def test_deformed_product():
    product = SymfunService.deformed_structure_constants(P(1), P(1))
    assert product == SchurPoly({P(2): 1, P(1, 1): 1, P(1): 1, EMPTY: 1})


def test_deformed_structure_constants_are_reduced_kronecker():
    for mu in SymfunService.partitions_up_to(2):
        for nu in SymfunService.partitions_up_to(1):
            product = SymfunService.deformed_structure_constants(mu, nu)
            expected = {
                lam: SymfunService.reduced_kronecker(lam, mu, nu)
                for lam in SymfunService.partitions_up_to(mu.size + nu.size)
            }
            assert product == SchurPoly(expected), (mu, nu)


def test_basis_change_round_trip():
    for lam in SymfunService.partitions_up_to(4):
        s = SchurPoly.basis(lam)
        assert SymfunService.deformed_to_schur(SymfunService.schur_to_deformed(s)) == s
        assert SymfunService.schur_to_deformed(SymfunService.deformed_schur(lam)) == s


def test_restriction():
    for n in range(1, 6):
        for shape in SymfunService.partitions_of(n):
            expected = {shape.remove_content(b): 1 for b in shape.removable_contents()}
            assert SymfunService.restriction_multiplicities(shape) == expected


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v"]))
