#!/usr/bin/env python3
"""
Tests for morphisms of the partition category: multiplication, the
Harish-Chandra projection, Jucys-Murphy elements, central elements and
interpolation from Schur-Weyl matrices.
"""
import logging
import random
import sys
from fractions import Fraction

import pytest

from models.algebra import AlgebraElement, GroupAlgebraElement
from models.diagram import PartitionDiagram, permutation_diagram
from models.exact import Poly
from models.matrix import SparseMatrix
from schemas.element import AlgebraElementSchema
from services.algebra_service import AlgebraService
from services.diagram_service import DiagramService, crossing_i, identity, merge, split
from services.schurweyl_service import OracleKind, SchurWeylService
from utils.exceptions import ArityError, PreconditionError

logging.basicConfig(level=logging.INFO)
logger = logging.getLogger(__name__)

T = Poly.T()
LEAF_LEAF = PartitionDiagram.parse("1 x 1 : {1}{1'}")


def _element(d: PartitionDiagram, coeff=1) -> AlgebraElement:
    return AlgebraElement.from_diagram(d, coeff)


def _random_element(rng: random.Random, m: int, n: int) -> AlgebraElement:
    diagrams = DiagramService.enumerate_diagrams(m, n)
    terms = {}
    for d in rng.sample(diagrams, min(3, len(diagrams))):
        terms[d] = Poly((rng.randint(-3, 3), rng.randint(-2, 2)))
    return AlgebraElement(m, n, terms)


def _transposition(n: int, i: int, j: int) -> tuple:
    g = list(range(1, n + 1))
    g[i - 1], g[j - 1] = j, i
    return tuple(g)


def test_leaf_leaf_squares_to_t_times_itself():
    e = _element(LEAF_LEAF)
    assert e * e == e * T


def test_identity_and_frobenius_relations():
    rng = random.Random(4)
    f = _random_element(rng, 2, 2)
    assert AlgebraElement.identity(2) * f == f
    assert f * AlgebraElement.identity(2) == f
    assert _element(merge()) * _element(split()) == AlgebraElement.identity(1)


def test_mul_arity_and_ring_mismatch():
    with pytest.raises(ArityError):
        _element(merge()) * _element(merge())
    specialized = AlgebraElement.identity(1, Fraction(2))
    with pytest.raises(ArityError):
        AlgebraElement.identity(1) * specialized


def test_mul_is_associative():
    rng = random.Random(8)
    for _ in range(10):
        a, b, c, d = (rng.randint(0, 2) for _ in range(4))
        f, g, h = _random_element(rng, a, b), _random_element(rng, b, c), _random_element(rng, c, d)
        assert (f * g) * h == f * (g * h)


def test_flip_is_anti_automorphism():
    rng = random.Random(12)
    flip = AlgebraService.flip_element
    for _ in range(10):
        a, b, c = (rng.randint(0, 2) for _ in range(3))
        f, g = _random_element(rng, a, b), _random_element(rng, b, c)
        assert flip(f * g) == flip(g) * flip(f)
    for j in (1, 2):
        assert flip(AlgebraService.jm_left(2, j)) == AlgebraService.jm_left(2, j)
        assert flip(AlgebraService.jm_right(2, j)) == AlgebraService.jm_right(2, j)


def test_specialize():
    f = AlgebraElement.generic_parameter(1) - _element(LEAF_LEAF)
    at_three = AlgebraService.specialize(f, Fraction(3))
    assert at_three.t == 3
    assert at_three.coefficient(identity(1)) == 3
    assert at_three.coefficient(LEAF_LEAF) == -1
    assert AlgebraService.specialize(at_three, Fraction(3)) is at_three
    with pytest.raises(ArityError):
        AlgebraService.specialize(at_three, Fraction(2))


def test_hc_project():
    g = (2, 3, 1)
    assert AlgebraService.hc_project(_element(permutation_diagram(g))) == GroupAlgebraElement(3, {g: 1})
    assert AlgebraService.hc_project(_element(LEAF_LEAF)) == 0
    assert AlgebraService.hc_project(AlgebraService.jm_left(2, 2)) == GroupAlgebraElement(
        2, {_transposition(2, 1, 2): 1}
    )
    with pytest.raises(PreconditionError):
        AlgebraService.hc_project(_element(merge()))
    x = GroupAlgebraElement(3, {g: 2, (1, 2, 3): Fraction(-1, 2)})
    assert AlgebraService.hc_project(AlgebraService.from_group_element(x)) == x


def test_jm_base_cases():
    assert AlgebraService.jm_left(1, 1) == _element(LEAF_LEAF)
    assert AlgebraService.jm_right(1, 1) == AlgebraElement.generic_parameter(1)
    assert AlgebraService.cross_left(2, 1) == AlgebraElement.identity(2)
    assert AlgebraService.cross_right(2, 1) == _element(crossing_i(2, 1))


def test_jm_ranges():
    with pytest.raises(PreconditionError):
        AlgebraService.jm_left(2, 3)
    with pytest.raises(PreconditionError):
        AlgebraService.jm_right(2, 0)
    with pytest.raises(PreconditionError):
        AlgebraService.cross_right(2, 2)


def test_hc_images_of_jm_elements():
    """Left dots map to Jucys-Murphy sums, right dots to T - j + 1."""
    for n in range(1, 4):
        for j in range(1, n + 1):
            assert AlgebraService.hc_project(AlgebraService.jm_left(n, j)) == GroupAlgebraElement.jucys_murphy(n, j)
            assert AlgebraService.hc_project(AlgebraService.jm_right(n, j)) == (
                GroupAlgebraElement.identity(n) * Poly((1 - j, 1))
            )
        for k in range(1, n):
            assert AlgebraService.hc_project(AlgebraService.cross_left(n, k)) == GroupAlgebraElement.identity(n)
            assert AlgebraService.hc_project(AlgebraService.cross_right(n, k)) == GroupAlgebraElement(
                n, {_transposition(n, k, k + 1): 1}
            )
    assert AlgebraService.hc_project(AlgebraService.cross_right(3, 2)) == GroupAlgebraElement(3, {(1, 3, 2): 1})


def test_jm_elements_commute():
    n = 2
    family = [AlgebraService.jm_left(n, j) for j in range(1, n + 1)]
    family += [AlgebraService.jm_right(n, j) for j in range(1, n + 1)]
    for a in family:
        for b in family:
            assert a * b == b * a


def test_right_crossing_is_involution():
    s = AlgebraService.cross_right(2, 1)
    assert s * s == AlgebraElement.identity(2)
    assert s * AlgebraService.jm_left(2, 1) * s != AlgebraService.jm_left(2, 1)


def test_central_z():
    assert AlgebraService.central_z(1, 1) == _element(LEAF_LEAF) - AlgebraElement.generic_parameter(1)
    assert AlgebraService.central_z(0, 1) == 0
    z = AlgebraService.central_z(2, 1)
    for d in DiagramService.enumerate_diagrams(2, 2):
        h = _element(d)
        assert z * h == h * z


def test_hc_central_z():
    for n in (1, 2):
        for r in (1, 2):
            assert AlgebraService.hc_project(AlgebraService.central_z(n, r)) == AlgebraService.hc_central_z(n, r)


def test_central_c_low_orders():
    for n in (1, 2):
        assert AlgebraService.central_c(n, 0) == AlgebraElement.identity(n)
        assert AlgebraService.central_c(n, 1) == 0
        assert AlgebraService.central_c(n, 2) == 0
        assert AlgebraService.central_c(n, 3) == AlgebraService.central_z(n, 1) * -2
        assert AlgebraService.central_c(n, 4) == AlgebraService.central_z(n, 2) * -3
        assert AlgebraService.central_c(n, 5) == (
            AlgebraService.central_z(n, 3) * -4 - AlgebraService.central_z(n, 1) * 2
        )


def test_check_centrality():
    assert AlgebraService.check_centrality(lambda k: AlgebraService.central_z(k, 1), 2)
    assert AlgebraService.check_centrality(lambda k: AlgebraService.central_c(k, 3), 2)
    assert AlgebraService.check_centrality(AlgebraElement.identity, 2)

    def first_left_dot(k: int) -> AlgebraElement:
        return AlgebraService.jm_left(k, 1) if k else AlgebraElement.identity(0)

    assert not AlgebraService.check_centrality(first_left_dot, 2)


def test_classical_dictionaries():
    left, half = AlgebraService.enyang_dictionary(1, 1)
    assert left == _element(LEAF_LEAF)
    assert half == 0
    elements = AlgebraService.creedon_elements(2)
    assert len(elements) == 4
    assert elements[0] == AlgebraElement.generic_parameter(2) * Fraction(-1, 2)


def test_interpolate_scalar_oracle():
    recovered = AlgebraService.interpolate_element(
        lambda t: SparseMatrix.identity(t).scale(t), 1, 1, range(2, 12)
    )
    assert recovered == AlgebraElement.generic_parameter(1)


def test_interpolate_recovers_dots():
    left = AlgebraService.interpolate_element(SchurWeylService.oracle(1, 1, OracleKind.LEFT_DOT), 1, 1, range(2, 12))
    assert left == AlgebraService.jm_left(1, 1)
    right = AlgebraService.interpolate_element(
        SchurWeylService.oracle(2, 2, OracleKind.RIGHT_DOT), 2, 2, range(4, 16)
    )
    assert right == AlgebraService.jm_right(2, 2)


def test_second_left_dot_by_hand():
    expected = AlgebraElement.zero(2, 2)
    for text, coeff in [
        ("2 x 2 : {1,1'}{2}{2'}", 1),
        ("2 x 2 : {1,2'}{2,1'}", 1),
        ("2 x 2 : {1,1',2'}{2}", -1),
        ("2 x 2 : {1,2}{1',2'}", 1),
        ("2 x 2 : {1,2,1'}{2'}", -1),
    ]:
        expected = expected + _element(PartitionDiagram.parse(text), coeff)
    assert AlgebraService.jm_left(2, 2) == expected


@pytest.mark.parametrize("n", [1, 2])
def test_interpolation_matches_every_recurrence(n):
    for kind in OracleKind:
        crossing = kind in (OracleKind.LEFT_CROSS, OracleKind.RIGHT_CROSS)
        build = {
            OracleKind.LEFT_DOT: AlgebraService.jm_left,
            OracleKind.RIGHT_DOT: AlgebraService.jm_right,
            OracleKind.LEFT_CROSS: AlgebraService.cross_left,
            OracleKind.RIGHT_CROSS: AlgebraService.cross_right,
        }[kind]
        for j in range(1, n if crossing else n + 1):
            recovered = AlgebraService.interpolate_element(
                SchurWeylService.oracle(n, j, kind), n, n, range(2 * n, 2 * n + 12)
            )
            assert recovered == build(n, j), (n, j, kind)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_relation_identities(n):
    identities = AlgebraService.relation_identities(n)
    assert len(identities) >= 10 * n
    for name, lhs, rhs in identities:
        assert lhs == rhs, name


def test_relation_identities_need_a_strand():
    with pytest.raises(PreconditionError):
        AlgebraService.relation_identities(0)


def test_higher_central_elements_are_central():
    assert AlgebraService.check_centrality(lambda k: AlgebraService.central_z(k, 1), 3)
    assert AlgebraService.check_centrality(lambda k: AlgebraService.central_z(k, 2), 3)
    assert AlgebraService.check_centrality(lambda k: AlgebraService.central_c(k, 3), 3)


def test_element_text_and_json_round_trip():
    f = AlgebraService.jm_right(2, 2)
    assert AlgebraService.parse_element(str(f)) == f
    assert AlgebraElementSchema.from_element(f).to_element() == f
    zero = AlgebraElement.zero(2, 1)
    assert AlgebraService.parse_element(str(zero)) == zero
    at_half = AlgebraService.specialize(f, Fraction(1, 2))
    assert AlgebraService.parse_element(str(at_half), Fraction(1, 2)) == at_half


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v"]))
