#!/usr/bin/env python3
"""
Tests for partition diagrams: composition with loop counting, tensor product,
flip, enumeration, classification, upward orbits and triangular factorization.
"""
import logging
import random
import sys
from itertools import permutations

import pytest

from models.diagram import DiagramKind, PartitionDiagram, identity_diagram, permutation_diagram
from services.diagram_service import (
    DiagramService,
    cap,
    crossing_i,
    cup,
    double_leaf_i,
    equalizer,
    identity,
    leaf_down,
    leaf_down_i,
    leaf_up,
    leaf_up_i,
    merge,
    merge_i,
    parse_diagram_list,
    split,
    split_i,
)
from services.symfun_service import SymfunService
from utils.exceptions import ArityError, ParseError, PreconditionError
from utils.union_find import UnionFind

logging.basicConfig(level=logging.INFO)
logger = logging.getLogger(__name__)

EMPTY = PartitionDiagram(0, 0, ())

EXAMPLE_9X7 = "9 x 7 : {1,4,1',2',3',4',6',8'}{2,6}{3,5,9'}{7,5'}{7'}"


def _random_diagram(rng: random.Random, m: int, n: int) -> PartitionDiagram:
    return rng.choice(DiagramService.enumerate_diagrams(m, n))


def test_union_find_classes():
    uf = UnionFind(range(6))
    uf.union(0, 3)
    uf.union_all([1, 4, 5])
    classes = sorted(sorted(c) for c in uf.classes())
    assert classes == [[0, 3], [1, 4, 5], [2]]


def test_cap_after_cup_closes_one_loop():
    assert DiagramService.compose(cap(), cup()) == (EMPTY, 1)


def test_identity_law():
    rng = random.Random(1)
    for _ in range(20):
        m, n = rng.randint(0, 3), rng.randint(0, 3)
        d = _random_diagram(rng, m, n)
        assert DiagramService.compose(identity(m), d) == (d, 0)
        assert DiagramService.compose(d, identity(n)) == (d, 0)


def test_compose_arity_mismatch():
    with pytest.raises(ArityError):
        DiagramService.compose(merge(), merge())


def test_compose_is_associative_with_loops():
    rng = random.Random(5)
    for _ in range(60):
        a, b, c, d = (rng.randint(0, 3) for _ in range(4))
        f, g, h = _random_diagram(rng, a, b), _random_diagram(rng, b, c), _random_diagram(rng, c, d)
        fg, l1 = DiagramService.compose(f, g)
        left, l2 = DiagramService.compose(fg, h)
        gh, r1 = DiagramService.compose(g, h)
        right, r2 = DiagramService.compose(f, gh)
        assert left == right
        assert l1 + l2 == r1 + r2


def test_merge_after_split_is_identity():
    assert DiagramService.compose(merge(), split()) == (identity(1), 0)


def test_canonical_form_of_large_example():
    """Block order in the input does not matter; printing is canonical."""
    shuffled = "9 x 7 : {7'}{2,6}{3,5,9'}{7,5'}{1,4,1',2',3',4',6',8'}"
    d = PartitionDiagram.parse(shuffled)
    assert d == PartitionDiagram.parse(EXAMPLE_9X7)
    assert str(d) == EXAMPLE_9X7
    assert d.propagating_rank == 3


def test_parse_round_trip():
    rng = random.Random(2)
    for _ in range(30):
        d = _random_diagram(rng, rng.randint(0, 3), rng.randint(0, 3))
        assert PartitionDiagram.parse(str(d)) == d
        assert DiagramService.parse_diagram(DiagramService.format_diagram(d)) == d
    assert PartitionDiagram.parse("0 x 0 : (empty)") == EMPTY


def test_parse_errors():
    with pytest.raises(ParseError):
        PartitionDiagram.parse("1 x 1 : {1}")
    with pytest.raises(ParseError):
        PartitionDiagram.parse("not a diagram")
    with pytest.raises(ParseError):
        PartitionDiagram.parse("1 x 1 : {1,2'}")
    with pytest.raises(ParseError) as exc:
        parse_diagram_list(["1 x 1 : {1,1'}", "1 x 1 : {1,1',1}"])
    assert "Argument 2" in str(exc.value)


def test_tensor():
    assert DiagramService.tensor(identity(1), identity(1)) == identity(2)
    d = PartitionDiagram.parse(EXAMPLE_9X7)
    assert DiagramService.tensor(d, EMPTY) == d
    assert DiagramService.tensor(EMPTY, d) == d
    # split sits on strand 1, merge on strands 2 and 3
    expected = PartitionDiagram.from_blocks(3, 3, [[1, 4, 5], [2, 3, 6]])
    assert DiagramService.tensor(merge(), split()) == expected
    assert DiagramService.tensor_all([merge(), split()]) == expected
    assert DiagramService.tensor_all([identity(1)] * 3) == identity(3)
    assert DiagramService.tensor_all([]) == EMPTY


def test_flip():
    assert DiagramService.flip_sigma(cup()) == cap()
    assert DiagramService.flip_sigma(merge()) == split()
    for g in permutations(range(1, 4)):
        inverse = [0] * 3
        for k, image in enumerate(g, start=1):
            inverse[image - 1] = k
        assert DiagramService.flip_sigma(permutation_diagram(g)) == permutation_diagram(inverse)


def test_flip_is_contravariant_involution():
    rng = random.Random(9)
    flip = DiagramService.flip_sigma
    for _ in range(40):
        a, b, c = (rng.randint(0, 3) for _ in range(3))
        f, g = _random_diagram(rng, a, b), _random_diagram(rng, b, c)
        assert flip(flip(f)) == f
        fg, loops = DiagramService.compose(f, g)
        assert DiagramService.compose(flip(g), flip(f)) == (flip(fg), loops)


def test_enumerate_counts():
    assert DiagramService.enumerate_diagrams(0, 0) == (EMPTY,)
    assert set(DiagramService.enumerate_diagrams(1, 1)) == {
        PartitionDiagram.parse("1 x 1 : {1,1'}"),
        PartitionDiagram.parse("1 x 1 : {1}{1'}"),
    }
    assert len(DiagramService.enumerate_diagrams(2, 2)) == 15
    for total in range(8):
        for m in range(total + 1):
            diagrams = DiagramService.enumerate_diagrams(m, total - m)
            assert len(diagrams) == SymfunService.bell(total)
            assert len(set(diagrams)) == len(diagrams)


def test_classify():
    assert DiagramService.classify(identity(3)).kind is DiagramKind.PERMUTATION
    assert DiagramService.classify(identity(3)).propagating_rank == 3

    leaf = DiagramService.classify(leaf_up())
    assert leaf.kind is DiagramKind.STRICTLY_UPWARD
    assert leaf.propagating_rank == 0
    assert DiagramService.classify(leaf_down()).kind is DiagramKind.STRICTLY_DOWNWARD

    merged = DiagramService.classify(merge())
    assert merged.kind is DiagramKind.STRICTLY_DOWNWARD
    assert merged.propagating_rank == 1
    assert merged.is_downward and not merged.is_upward

    assert DiagramService.classify(double_leaf_i(1, 1)).kind is DiagramKind.GENERAL
    assert DiagramService.classify(equalizer(2, 1, 2)).kind is DiagramKind.GENERAL
    assert DiagramService.classify(crossing_i(3, 2)).kind is DiagramKind.PERMUTATION


def test_classify_upward_is_closed_under_permutations():
    for d in DiagramService.enumerate_diagrams(3, 2):
        if not DiagramService.classify(d).is_upward:
            continue
        for g in permutations(range(1, 3)):
            composite, loops = DiagramService.compose(d, permutation_diagram(g))
            assert loops == 0
            assert DiagramService.classify(composite).is_upward


def test_upward_orbits():
    assert len(DiagramService.enumerate_upward_orbits(0, 0)) == 1
    (trunk,) = DiagramService.enumerate_upward_orbits(1, 1)
    assert trunk.top_partition == ((1,),)
    assert trunk.marked == ((1,),)
    assert trunk.representative() == identity(1)
    assert len(DiagramService.enumerate_upward_orbits(4, 3)) == 10
    assert DiagramService.enumerate_upward_orbits(2, 3) == ()


def test_upward_action_is_free():
    """Right permutations move every upward diagram to a distinct one in its orbit."""
    for m in range(5):
        for n in range(min(m, 3) + 1):
            for d in DiagramService.enumerate_diagrams(m, n):
                if not DiagramService.classify(d).is_upward:
                    continue
                orbit, g = DiagramService.orbit_of(d)
                assert DiagramService.compose(orbit.representative(), permutation_diagram(g)) == (d, 0)
                images = set()
                for h in permutations(range(1, n + 1)):
                    moved, _ = DiagramService.compose(d, permutation_diagram(h))
                    assert DiagramService.orbit_of(moved)[0] == orbit
                    images.add(moved)
                assert len(images) == len(list(permutations(range(n))))


def test_orbit_of_rejects_non_upward():
    with pytest.raises(PreconditionError):
        DiagramService.orbit_of(merge())


def test_triangular_factor():
    for d in (identity(2), merge(), PartitionDiagram.parse(EXAMPLE_9X7)):
        up, perm, down = DiagramService.triangular_factor(d)
        middle, loops = DiagramService.compose(perm, down)
        assert loops == 0
        assert DiagramService.compose(up, middle) == (d, 0)
        assert DiagramService.classify(up).is_upward
        assert DiagramService.classify(down).is_downward
        assert perm.is_permutation()
        assert perm.n == d.propagating_rank

    up, perm, down = DiagramService.triangular_factor(merge())
    assert (up, perm, down) == (identity(1), identity(1), merge())


def test_triangular_factor_all_small_diagrams():
    for m in range(3):
        for n in range(3):
            for d in DiagramService.enumerate_diagrams(m, n):
                up, perm, down = DiagramService.triangular_factor(d)
                middle, _ = DiagramService.compose(perm, down)
                assert DiagramService.compose(up, middle) == (d, 0)


def test_layer_ranges():
    with pytest.raises(PreconditionError):
        merge_i(3, 3)
    with pytest.raises(PreconditionError):
        crossing_i(1, 1)
    assert merge_i(3, 2).m == 2
    assert identity_diagram(0) == EMPTY


def test_layer_generators_by_hand():
    assert merge() == PartitionDiagram.parse("1 x 2 : {1,2,1'}")
    assert split() == PartitionDiagram.parse("2 x 1 : {1,1',2'}")
    assert merge_i(3, 1) == PartitionDiagram.parse("2 x 3 : {1,2,1'}{3,2'}")
    assert merge_i(3, 2) == PartitionDiagram.parse("2 x 3 : {1,1'}{2,3,2'}")
    assert split_i(2, 2) == PartitionDiagram.parse("3 x 2 : {1,1'}{2,2',3'}")
    assert leaf_down_i(3, 2) == PartitionDiagram.parse("2 x 3 : {1,1'}{2}{3,2'}")
    assert leaf_down_i(2, 1) == PartitionDiagram.parse("1 x 2 : {1}{2,1'}")
    assert leaf_up_i(1, 1) == PartitionDiagram.parse("2 x 1 : {1'}{1,2'}")
    assert leaf_up_i(1, 2) == PartitionDiagram.parse("2 x 1 : {1,1'}{2'}")
    assert double_leaf_i(2, 1) == PartitionDiagram.parse("2 x 2 : {1}{1'}{2,2'}")


def test_layer_generators_on_every_strand():
    for n in (1, 2, 3):
        for i in range(1, n):
            m = merge_i(n, i)
            assert (m.m, m.n) == (n - 1, n)
            assert DiagramService.compose(m, split_i(n - 1, i)) == (identity(n - 1), 0)
            assert DiagramService.compose(m, crossing_i(n, i)) == (m, 0)
            assert DiagramService.classify(m).propagating_rank == n - 1
            assert DiagramService.compose(crossing_i(n, i), crossing_i(n, i)) == (identity(n), 0)
        for i in range(1, n + 1):
            assert (split_i(n, i).m, split_i(n, i).n) == (n + 1, n)
            down = leaf_down_i(n, i)
            assert (down.m, down.n) == (n - 1, n)
            assert DiagramService.compose(down, leaf_up_i(n - 1, i)) == (identity(n - 1), 1)
            assert DiagramService.classify(double_leaf_i(n, i)).propagating_rank == n - 1
        for i in range(1, n + 2):
            assert (leaf_up_i(n, i).m, leaf_up_i(n, i).n) == (n + 1, n)


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v"]))
