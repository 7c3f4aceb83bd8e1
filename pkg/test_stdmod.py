#!/usr/bin/env python3
"""
Tests for weight spaces of standard modules: dimensions, the diagram action,
Gram ranks and the block-structure comparison.
"""
import logging
import random
import sys
from fractions import Fraction

import pytest

from models.algebra import AlgebraElement
from models.exact import Poly
from models.partition import Partition
from services.diagram_service import DiagramService, merge
from services.stdmod_service import StdmodService
from services.symfun_service import SymfunService
from utils.exceptions import ArityError, PreconditionError

logging.basicConfig(level=logging.INFO)
logger = logging.getLogger(__name__)

P = Partition.of
EMPTY = Partition()


def _random_element(rng: random.Random, m: int, n: int) -> AlgebraElement:
    diagrams = DiagramService.enumerate_diagrams(m, n)
    terms = {d: Poly((rng.randint(-2, 2), rng.randint(-1, 1))) for d in rng.sample(diagrams, min(3, len(diagrams)))}
    return AlgebraElement(m, n, terms)


def test_delta_dim():
    assert [StdmodService.delta_dim(EMPTY, m) for m in range(5)] == [1, 1, 2, 5, 15]
    assert StdmodService.delta_dim(P(1), 0) == 0
    assert StdmodService.delta_dim(P(1), 2) == 3
    assert StdmodService.delta_dim(P(3), 4) == 10
    assert StdmodService.delta_dim(P(2, 1), 3) == 2


def test_space_matches_delta_dim():
    for shape in SymfunService.partitions_up_to(2):
        for m in range(4):
            space = StdmodService.space(shape, m, Fraction(3))
            assert space.dimension == StdmodService.delta_dim(shape, m)
    with pytest.raises(PreconditionError):
        StdmodService.space(P(1), 1, None)


def test_gram_small_cases():
    assert StdmodService.gram_matrix(EMPTY, 0, Fraction(0)).rank == 1
    assert StdmodService.gram_matrix(EMPTY, 1, Fraction(0)).rank == 0
    assert StdmodService.gram_matrix(EMPTY, 1, Fraction(1)).rank == 1
    assert StdmodService.gram_matrix(P(1), 1, Fraction(0)).rank == 1
    assert StdmodService.gram_matrix(P(2, 1), 3, Fraction(5)).rank == 2


def test_gram_is_symmetric():
    for shape in (EMPTY, P(1), P(1, 1)):
        assert StdmodService.gram_matrix(shape, 3, Fraction(2)).matrix.is_symmetric()


def test_semisimple_parameter_gives_full_rank():
    t = Fraction(1, 2)
    for shape in SymfunService.partitions_up_to(2):
        for m in range(4):
            assert StdmodService.simple_dim(shape, m, t) == StdmodService.delta_dim(shape, m)


def test_identity_acts_as_identity():
    space = StdmodService.space(P(1), 2, Fraction(3))
    vector = {0: Fraction(1), 2: Fraction(-2)}
    target, image = StdmodService.act(AlgebraElement.identity(2), space, vector)
    assert target == space
    assert image == vector


def test_merge_kills_antisymmetric_pair():
    space = StdmodService.space(P(1, 1), 2, Fraction(3))
    assert space.dimension == 1
    target, image = StdmodService.act(AlgebraElement.from_diagram(merge()), space, {0: Fraction(1)})
    assert target.m == 1
    assert target.dimension == 0
    assert image == {}


def test_act_arity_and_parameter():
    space = StdmodService.space(P(1), 2, Fraction(3))
    with pytest.raises(ArityError):
        StdmodService.act(AlgebraElement.identity(1), space, {0: Fraction(1)})
    with pytest.raises(ArityError):
        StdmodService.act(AlgebraElement.identity(2, Fraction(2)), space, {0: Fraction(1)})


def test_action_is_functorial():
    rng = random.Random(41)
    t = Fraction(3)
    for shape in (EMPTY, P(1), P(1, 1)):
        for _ in range(8):
            a, b, c = (rng.randint(shape.size, 3) for _ in range(3))
            f, g = _random_element(rng, a, b), _random_element(rng, b, c)
            source = StdmodService.space(shape, c, t)
            middle = StdmodService.space(shape, b, t)
            assert StdmodService.action_matrix(f * g, source) == (
                StdmodService.action_matrix(f, middle) @ StdmodService.action_matrix(g, source)
            )


def test_central_elements_act_by_scalars():
    assert StdmodService.hc_central_check(P(1), 2, 1, Fraction(3))
    assert StdmodService.hc_central_check(EMPTY, 2, 1, Fraction(1, 2))
    assert StdmodService.hc_central_check(P(1, 1), 2, 2, Fraction(2))
    assert StdmodService.hc_central_check(P(2), 3, 1, Fraction(0))


def test_predicted_simple_dim():
    orbit = [EMPTY, P(1), P(1, 1), P(1, 1, 1)]
    assert StdmodService.predicted_simple_dim(orbit, 0, 2) == 0
    assert StdmodService.predicted_simple_dim(orbit, 1, 1) == 1


def test_block_structure():
    for kappa in (EMPTY, P(2)):
        checks = StdmodService.verify_block_structure(kappa, 3, 2)
        assert len(checks) == 12
        failures = [c for c in checks if not c.ok]
        assert not failures, failures


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v"]))
