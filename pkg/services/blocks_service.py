"""
Blocks service - weights, block equivalence, kappa orbits, typicality,
central characters on standard modules and the branching layers of the
special projective functors.
"""
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

from models.exact import Poly
from models.partition import Partition
from services.symfun_service import SymfunService
from utils.exceptions import PreconditionError
from utils.logger import get_logger
from utils.validators import format_rational

logger = get_logger("blocks_service")

Divisor = Tuple[Tuple[Fraction, int], ...]


def _is_integer(value: Fraction) -> bool:
    return Fraction(value).denominator == 1


@dataclass(frozen=True)
class WeightKey:
    """Sorted window {t - |lambda|} + {lambda_i - i : i <= size}."""
    size: int
    entries: Tuple[Fraction, ...]

    def __str__(self) -> str:
        return "{" + ",".join(format_rational(e) for e in self.entries) + "}"


@dataclass
class BranchLayers:
    """Top, middle and bottom layers of a filtration, as multisets."""
    top: Counter = field(default_factory=Counter)
    middle: Counter = field(default_factory=Counter)
    bottom: Counter = field(default_factory=Counter)

    def __iadd__(self, other: "BranchLayers") -> "BranchLayers":
        self.top.update(other.top)
        self.middle.update(other.middle)
        self.bottom.update(other.bottom)
        return self

    def is_empty(self) -> bool:
        return not (+self.top or +self.middle or +self.bottom)

    def __eq__(self, other: Any) -> bool:
        if not isinstance(other, BranchLayers):
            return NotImplemented
        return (+self.top, +self.middle, +self.bottom) == (+other.top, +other.middle, +other.bottom)


@dataclass(frozen=True)
class BlockRow:
    partition: Partition
    typical: bool
    kappa: Optional[Partition]
    n: Optional[int]
    window: WeightKey


class BlocksService:
    """Block combinatorics of the partition category."""

    @staticmethod
    def weight_window(shape: Partition, t: Fraction, size: int) -> WeightKey:
        """
        Raises:
            PreconditionError: If the window is shorter than the partition
        """
        if size < shape.length:
            raise PreconditionError(f"Window {size} is shorter than {shape}")
        t = Fraction(t)
        entries = [t - shape.size] + [Fraction(shape.part(i) - i) for i in range(1, size + 1)]
        return WeightKey(size, tuple(sorted(entries)))

    @staticmethod
    def same_block(lam: Partition, mu: Partition, t: Fraction) -> bool:
        size = max(lam.length, mu.length)
        return BlocksService.weight_window(lam, t, size) == BlocksService.weight_window(mu, t, size)

    @staticmethod
    def kappa_orbit(kappa: Partition, n_max: int, t: Optional[Fraction] = None) -> List[Partition]:
        """
        kappa^(n) = (kappa_1+1, ..., kappa_n+1, kappa_{n+2}, kappa_{n+3}, ...)
        for n = 0..n_max.

        Raises:
            PreconditionError: If t is given and differs from |kappa|
        """
        if t is not None and Fraction(t) != kappa.size:
            raise PreconditionError(f"kappa_orbit needs |kappa| = t, got |{kappa}| = {kappa.size}, t = {t}")
        orbit = []
        for n in range(n_max + 1):
            head = [kappa.part(i) + 1 for i in range(1, n + 1)]
            tail = list(kappa.parts[n + 1:])
            orbit.append(Partition.from_parts(head + tail))
        return orbit

    @staticmethod
    def recover_kappa(shape: Partition, t: Fraction) -> Optional[Tuple[Partition, int]]:
        """
        The pair (kappa, n) with shape = kappa^(n), or None when shape is typical.

        Raises:
            PreconditionError: If t is not a nonnegative integer
        """
        t = Fraction(t)
        if not _is_integer(t) or t < 0:
            raise PreconditionError(f"recover_kappa needs t in N, got {format_rational(t)}")
        t = int(t)
        length = shape.length
        for n in range(length + 1):
            parts = [shape.part(i) - 1 for i in range(1, n + 1)]
            parts.append(t + n - shape.size)
            parts.extend(shape.part(i - 1) for i in range(n + 2, length + 2))
            if any(p < 0 for p in parts) or any(a < b for a, b in zip(parts, parts[1:])):
                continue
            kappa = Partition.from_parts(parts)
            if BlocksService.kappa_orbit(kappa, n)[n] == shape:
                return kappa, n
        return None

    @staticmethod
    def is_typical(shape: Partition, t: Fraction) -> bool:
        """
        At integer t, typical iff t - |lambda| equals lambda_i - i for some
        i >= 1; every partition is typical at non-integer t.
        """
        t = Fraction(t)
        if not _is_integer(t):
            return True
        gap = t - shape.size
        length = shape.length
        if gap <= -(length + 1):
            return True
        return any(gap == shape.part(i) - i for i in range(1, length + 1))

    @staticmethod
    def central_char_z(shape: Partition, r: int, t: Optional[Fraction]) -> Union[Fraction, Poly]:
        """
        sum over boxes of content^r minus sum_{i=1}^{|lambda|} (t - i + 1)^r;
        a polynomial in T when t is None.
        """
        if r < 1:
            raise PreconditionError("central_char_z needs r >= 1")
        boxes = sum(Fraction(c) ** r for c in shape.contents())
        if t is None:
            total = Poly.constant(boxes)
            for i in range(1, shape.size + 1):
                total = total - Poly((1 - i, 1)) ** r
            return total
        t = Fraction(t)
        return boxes - sum((t - i + 1) ** r for i in range(1, shape.size + 1))

    @staticmethod
    def central_char_c(shape: Partition, t: Fraction) -> Divisor:
        """
        Divisor of prod_i alpha_{cont_i}(u) / alpha_{t-i+1}(u) in the
        coordinates 2 L_c - L_{c+1} - L_{c-1} per factor; zero multiplicities
        are dropped and points are sorted.
        """
        t = Fraction(t)
        divisor: Dict[Fraction, int] = {}

        def add(point: Fraction, sign: int) -> None:
            for shift, weight in ((0, 2), (1, -1), (-1, -1)):
                key = point + shift
                divisor[key] = divisor.get(key, 0) + sign * weight

        for c in shape.contents():
            add(Fraction(c), 1)
        for i in range(1, shape.size + 1):
            add(t - i + 1, -1)
        return tuple(sorted((p, k) for p, k in divisor.items() if k))

    # -- branching ----------------------------------------------------------

    @staticmethod
    def branch_hood(shape: Partition) -> BranchLayers:
        """Layers of D applied to a standard module, before splitting by eigenvalues."""
        layers = BranchLayers()
        for a in shape.addable_contents():
            layers.top[shape.add_content(a)] += 1
        layers.middle[shape] += 1
        for b in shape.removable_contents():
            smaller = shape.remove_content(b)
            layers.bottom[smaller] += 1
            for a in smaller.addable_contents():
                layers.middle[smaller.add_content(a)] += 1
        return layers

    @staticmethod
    def branch_D(shape: Partition, a: Fraction, b: Fraction, t: Fraction) -> BranchLayers:
        """
        Layers of the summand of D with left eigenvalue a and right eigenvalue b.

        top:    lambda + a when a is addable and b = t - |lambda|
        middle: lambda twice when t - |lambda| = a = b is removable;
                lambda once when a = b is removable and differs from t - |lambda|,
                or when a = b = t - |lambda| is not removable;
                (lambda - b) + a when a != b, b removable, a addable to lambda - b
        bottom: lambda - b when a = t - |lambda| + 1 and b is removable
        """
        a, b, t = Fraction(a), Fraction(b), Fraction(t)
        layers = BranchLayers()
        if _is_integer(t) and not (_is_integer(a) and _is_integer(b)):
            return layers
        gap = t - shape.size
        add = set(shape.addable_contents())
        rem = set(shape.removable_contents())

        if a in add and b == gap:
            layers.top[shape.add_content(a)] += 1
        if a == b:
            if a == gap and a in rem:
                layers.middle[shape] += 2
            elif (a != gap and a in rem) or (a == gap and a not in rem):
                layers.middle[shape] += 1
        elif b in rem:
            smaller = shape.remove_content(b)
            if a in smaller.addable_contents():
                layers.middle[smaller.add_content(a)] += 1
        if a == gap + 1 and b in rem:
            layers.bottom[shape.remove_content(b)] += 1
        return layers

    @staticmethod
    def branch_support(shape: Partition, t: Fraction) -> List[Tuple[Fraction, Fraction]]:
        """Every (a, b) for which branch_D can be nonempty."""
        t = Fraction(t)
        gap = t - shape.size
        candidates = set(shape.addable_contents()) | set(shape.removable_contents())
        for b in shape.removable_contents():
            candidates.update(shape.remove_content(b).addable_contents())
        candidates.update((gap, gap + 1))
        ordered = sorted(Fraction(c) for c in candidates)
        return list(product(ordered, ordered))

    @staticmethod
    def branch_union(shape: Partition, t: Fraction) -> BranchLayers:
        total = BranchLayers()
        for a, b in BlocksService.branch_support(shape, t):
            total += BlocksService.branch_D(shape, a, b, t)
        return total

    # -- tables -------------------------------------------------------------

    @staticmethod
    def block_groups(shapes: Sequence[Partition], t: Fraction) -> List[List[Partition]]:
        """Group partitions by same_block, keeping first-appearance order."""
        groups: List[List[Partition]] = []
        for shape in shapes:
            for group in groups:
                if BlocksService.same_block(group[0], shape, t):
                    group.append(shape)
                    break
            else:
                groups.append([shape])
        return groups

    @staticmethod
    def block_table(t: Fraction, max_size: int) -> List[List[BlockRow]]:
        """Partitions of size <= max_size grouped into blocks, one row each."""
        t = Fraction(t)
        shapes = SymfunService.partitions_up_to(max_size)
        natural = _is_integer(t) and t >= 0
        window = max((p.length for p in shapes), default=0)
        table = []
        for group in BlocksService.block_groups(shapes, t):
            rows = []
            for shape in group:
                recovered = BlocksService.recover_kappa(shape, t) if natural else None
                rows.append(
                    BlockRow(
                        partition=shape,
                        typical=BlocksService.is_typical(shape, t),
                        kappa=recovered[0] if recovered else None,
                        n=recovered[1] if recovered else None,
                        window=BlocksService.weight_window(shape, t, window),
                    )
                )
            table.append(rows)
        logger.info(f"Block table at t={format_rational(t)}: {len(table)} blocks over {len(shapes)} partitions")
        return table
