"""
Symmetric-function service - characters, Littlewood-Richardson, Kronecker and
reduced Kronecker coefficients, the Cartan matrix of downward diagrams and the
deformed Schur basis.

One engine serves everything: Murnaghan-Nakayama character values combined
through class-weighted inner products.
"""
import enum
from collections import Counter
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from math import factorial
from typing import Dict, List, Optional, Sequence, Tuple

from models.partition import Partition, SchurPoly, Tableau, standard_tableaux
from services.diagram_service import set_partitions
from utils.exceptions import PreconditionError, StabilizationError
from utils.logger import get_logger

logger = get_logger("symfun_service")


class ReducedKroneckerMethod(str, enum.Enum):
    STABILIZE = "Stabilize"
    LITTLEWOOD = "Littlewood"


def _cycle_permutation(cycle_type: Partition) -> Tuple[int, ...]:
    """A permutation of the given cycle type built from consecutive cycles."""
    images = []
    start = 1
    for length in cycle_type.parts:
        for k in range(length):
            images.append(start + (k + 1) % length)
        start += length
    return tuple(images)


def _as_int(value: Fraction, what: str) -> int:
    if value.denominator != 1:
        raise ArithmeticError(f"{what} came out non-integral: {value}")
    return value.numerator


class SymfunService:
    """Symmetric group and symmetric function combinatorics."""

    # -- partitions ---------------------------------------------------------

    @staticmethod
    @lru_cache(maxsize=None)
    def partitions_of(n: int) -> Tuple[Partition, ...]:
        """Partitions of n in reverse lexicographic order, (n) first."""
        if n < 0:
            raise PreconditionError("n must be nonnegative")

        def build(remaining: int, largest: int) -> List[Tuple[int, ...]]:
            if remaining == 0:
                return [()]
            out = []
            for first in range(min(remaining, largest), 0, -1):
                out.extend((first,) + rest for rest in build(remaining - first, first))
            return out

        return tuple(Partition(p) for p in build(n, n))

    @staticmethod
    def partitions_up_to(max_size: int) -> List[Partition]:
        return [p for n in range(max_size + 1) for p in SymfunService.partitions_of(n)]

    @staticmethod
    def standard_tableaux(shape: Partition) -> List[Tableau]:
        return standard_tableaux(shape)

    @staticmethod
    def add_rem(shape: Partition) -> Tuple[frozenset, frozenset]:
        """Contents of the addable and of the removable nodes."""
        return frozenset(shape.addable_contents()), frozenset(shape.removable_contents())

    @staticmethod
    @lru_cache(maxsize=None)
    def bell(k: int) -> int:
        """Bell numbers by the Bell triangle."""
        if k < 0:
            raise PreconditionError("bell(k) needs k >= 0")
        row = [1]
        for _ in range(k):
            nxt = [row[-1]]
            for value in row:
                nxt.append(nxt[-1] + value)
            row = nxt
        return row[0]

    @staticmethod
    def z(cycle_type: Partition) -> int:
        """Centralizer order prod_i i^{m_i} m_i!."""
        out = 1
        for part, mult in Counter(cycle_type.parts).items():
            out *= part ** mult * factorial(mult)
        return out

    @staticmethod
    def class_size(cycle_type: Partition) -> int:
        return factorial(cycle_type.size) // SymfunService.z(cycle_type)

    # -- characters ---------------------------------------------------------

    @staticmethod
    @lru_cache(maxsize=None)
    def char_value(shape: Partition, cycle_type: Partition) -> int:
        """
        chi^shape at the class of the given cycle type (Murnaghan-Nakayama).

        Rim hooks of length r are removed on the beta-set: an entry b moves to
        b - r when that slot is free, with sign (-1)^(entries strictly between).

        Raises:
            PreconditionError: If the sizes differ
        """
        if shape.size != cycle_type.size:
            raise PreconditionError(f"char_value needs |{shape}| = |{cycle_type}|")
        if shape.size == 0:
            return 1
        r = cycle_type.parts[0]
        rest = Partition(cycle_type.parts[1:])
        length = shape.length
        beta = [p + length - 1 - i for i, p in enumerate(shape.parts)]
        occupied = set(beta)
        total = 0
        for b in beta:
            target = b - r
            if target < 0 or target in occupied:
                continue
            sign = (-1) ** sum(1 for x in beta if target < x < b)
            moved = sorted((target if x == b else x for x in beta), reverse=True)
            smaller = Partition.from_parts(x - (length - 1 - i) for i, x in enumerate(moved))
            total += sign * SymfunService.char_value(smaller, rest)
        return total

    @staticmethod
    @lru_cache(maxsize=None)
    def lr_coeff(shape: Partition, mu: Partition, nu: Partition) -> int:
        """
        c^shape_{mu,nu}, the multiplicity of S(shape) in the induction of
        S(mu) x S(nu); zero when the sizes do not add up.
        """
        if shape.size != mu.size + nu.size:
            return 0
        total = Fraction(0)
        for rho in SymfunService.partitions_of(mu.size):
            a = SymfunService.char_value(mu, rho)
            if not a:
                continue
            for tau in SymfunService.partitions_of(nu.size):
                b = SymfunService.char_value(nu, tau)
                if not b:
                    continue
                joined = Partition.from_parts(rho.parts + tau.parts)
                total += Fraction(
                    a * b * SymfunService.char_value(shape, joined),
                    SymfunService.z(rho) * SymfunService.z(tau),
                )
        return _as_int(total, "Littlewood-Richardson coefficient")

    @staticmethod
    @lru_cache(maxsize=None)
    def lr_triple(kappa: Partition, lam: Partition, mu: Partition, nu: Partition) -> int:
        """sum_gamma c^gamma_{lam,mu} c^kappa_{gamma,nu}."""
        if kappa.size != lam.size + mu.size + nu.size:
            return 0
        return sum(
            SymfunService.lr_coeff(gamma, lam, mu) * SymfunService.lr_coeff(kappa, gamma, nu)
            for gamma in SymfunService.partitions_of(lam.size + mu.size)
        )

    @staticmethod
    @lru_cache(maxsize=None)
    def kronecker(lam: Partition, mu: Partition, nu: Partition) -> int:
        """
        Kronecker coefficient (1/n!) sum_g chi^lam(g) chi^mu(g) chi^nu(g).

        Raises:
            PreconditionError: If the three sizes differ
        """
        if not lam.size == mu.size == nu.size:
            raise PreconditionError(f"kronecker needs equal sizes, got {lam}, {mu}, {nu}")
        total = Fraction(0)
        for rho in SymfunService.partitions_of(lam.size):
            total += Fraction(
                SymfunService.char_value(lam, rho)
                * SymfunService.char_value(mu, rho)
                * SymfunService.char_value(nu, rho),
                SymfunService.z(rho),
            )
        return _as_int(total, "Kronecker coefficient")

    @staticmethod
    @lru_cache(maxsize=None)
    def reduced_kronecker(
        lam: Partition,
        mu: Partition,
        nu: Partition,
        method: ReducedKroneckerMethod = ReducedKroneckerMethod.STABILIZE,
    ) -> int:
        """
        Stable value of kronecker(lam(N), mu(N), nu(N)) with the first-row
        padding lam(N) = (N - |lam|, lam_1, ...).

        Stabilize evaluates at N0 = max(|lam|+|mu|+|nu|+lam_1+mu_1+nu_1, 1)
        and N0 + 1.
        Littlewood sums products of triple Littlewood-Richardson coefficients
        against Kronecker coefficients of the overlap.

        Raises:
            StabilizationError: If the two Stabilize evaluations differ
        """
        method = ReducedKroneckerMethod(method)
        if method is ReducedKroneckerMethod.STABILIZE:
            n0 = max(lam.size + mu.size + nu.size + lam.part(1) + mu.part(1) + nu.part(1), 1)
            values = [
                SymfunService.kronecker(lam.padded(n), mu.padded(n), nu.padded(n))
                for n in (n0, n0 + 1)
            ]
            if values[0] != values[1]:
                raise StabilizationError(
                    f"Kronecker values {values} for {lam}, {mu}, {nu} differ at N = {n0}, {n0 + 1}"
                )
            return values[0]

        big_l, big_m, big_n = lam.size, mu.size, nu.size
        partitions_of = SymfunService.partitions_of
        total = 0
        for d in range(min(big_l, big_m, big_n) + 1):
            twice = (big_m + big_n - big_l - d, big_l + big_n - big_m - d, big_l + big_m - big_n - d)
            if any(x < 0 or x % 2 for x in twice):
                continue
            a, b, c = (x // 2 for x in twice)
            deltas = partitions_of(d)
            for alpha in partitions_of(a):
                for beta in partitions_of(b):
                    for gamma in partitions_of(c):
                        for delta in deltas:
                            first = SymfunService.lr_triple(lam, beta, gamma, delta)
                            if not first:
                                continue
                            for delta1 in deltas:
                                second = SymfunService.lr_triple(mu, alpha, gamma, delta1)
                                if not second:
                                    continue
                                for delta2 in deltas:
                                    third = SymfunService.lr_triple(nu, alpha, beta, delta2)
                                    if third:
                                        total += first * second * third * SymfunService.kronecker(
                                            delta, delta1, delta2
                                        )
        return total

    # -- Cartan matrix of the downward category ----------------------------

    @staticmethod
    @lru_cache(maxsize=None)
    def _downward_classes(m: int, n: int) -> Tuple[frozenset, ...]:
        """
        Downward m x n diagrams: a set partition of the bottoms 1..n with the
        tops injected into distinct blocks. Each is a frozenset of
        (bottom set, top or 0) pairs.
        """
        out = []
        for blocks in set_partitions(range(1, n + 1)):
            for chosen in permutations(range(len(blocks)), m):
                top_of = {block: 0 for block in range(len(blocks))}
                for top, block in enumerate(chosen, start=1):
                    top_of[block] = top
                out.append(frozenset((frozenset(blocks[k]), top_of[k]) for k in range(len(blocks))))
        return tuple(out)

    @staticmethod
    @lru_cache(maxsize=None)
    def _fixed_points(m: int, n: int, top_type: Partition, bottom_type: Partition) -> int:
        g = _cycle_permutation(top_type)
        h = _cycle_permutation(bottom_type)
        count = 0
        for diagram in SymfunService._downward_classes(m, n):
            moved = frozenset(
                (frozenset(h[v - 1] for v in bottoms), g[top - 1] if top else 0)
                for bottoms, top in diagram
            )
            if moved == diagram:
                count += 1
        return count

    @staticmethod
    @lru_cache(maxsize=None)
    def cartan_B(lam: Partition, mu: Partition) -> int:
        """
        Multiplicity of chi^mu x chi^lam in the permutation character of
        S_|mu| x S_|lam| on downward |mu| x |lam| diagrams.
        """
        m, n = mu.size, lam.size
        if m > n:
            return 0
        total = Fraction(0)
        for rho in SymfunService.partitions_of(m):
            a = SymfunService.char_value(mu, rho)
            if not a:
                continue
            for tau in SymfunService.partitions_of(n):
                b = SymfunService.char_value(lam, tau)
                if not b:
                    continue
                total += Fraction(
                    a * b * SymfunService._fixed_points(m, n, rho, tau),
                    SymfunService.z(rho) * SymfunService.z(tau),
                )
        return _as_int(total, "Cartan entry")

    @staticmethod
    def cartan_table(max_size: int) -> Dict[Tuple[Partition, Partition], int]:
        """Nonzero entries B[lam, mu] for |mu| <= |lam| <= max_size."""
        shapes = SymfunService.partitions_up_to(max_size)
        table = {}
        for lam in shapes:
            for mu in shapes:
                if mu.size <= lam.size:
                    value = SymfunService.cartan_B(lam, mu)
                    if value:
                        table[(lam, mu)] = value
        logger.info(f"Cartan table up to size {max_size}: {len(table)} nonzero entries")
        return table

    # -- Schur and deformed Schur functions ---------------------------------

    @staticmethod
    def schur_product(p: SchurPoly, q: SchurPoly) -> SchurPoly:
        """Product in the Schur basis via Littlewood-Richardson coefficients."""
        out: Dict[Partition, Fraction] = {}
        for mu, a in p.terms.items():
            for nu, b in q.terms.items():
                for lam in SymfunService.partitions_of(mu.size + nu.size):
                    c = SymfunService.lr_coeff(lam, mu, nu)
                    if c:
                        out[lam] = out.get(lam, 0) + a * b * c
        return SchurPoly(out)

    @staticmethod
    @lru_cache(maxsize=None)
    def deformed_schur(shape: Partition) -> SchurPoly:
        """s~_shape in the Schur basis: s_shape minus sum_{|mu|<|shape|} B[shape, mu] s~_mu."""
        result = SchurPoly.basis(shape)
        for size in range(shape.size):
            for mu in SymfunService.partitions_of(size):
                b = SymfunService.cartan_B(shape, mu)
                if b:
                    result = result - SymfunService.deformed_schur(mu) * b
        return result

    @staticmethod
    def schur_to_deformed(p: SchurPoly) -> SchurPoly:
        """Rewrite a Schur-basis combination in the deformed basis: s_lam = sum B[lam, mu] s~_mu."""
        out: Dict[Partition, Fraction] = {}
        for lam, c in p.terms.items():
            for size in range(lam.size + 1):
                for mu in SymfunService.partitions_of(size):
                    b = SymfunService.cartan_B(lam, mu)
                    if b:
                        out[mu] = out.get(mu, 0) + c * b
        return SchurPoly(out)

    @staticmethod
    def deformed_to_schur(p: SchurPoly) -> SchurPoly:
        """Expand a deformed-basis combination in Schur functions."""
        out = SchurPoly()
        for lam, c in p.terms.items():
            out = out + SymfunService.deformed_schur(lam) * c
        return out

    @staticmethod
    def deformed_structure_constants(mu: Partition, nu: Partition) -> SchurPoly:
        """s~_mu s~_nu written in the deformed basis."""
        product = SymfunService.schur_product(
            SymfunService.deformed_schur(mu), SymfunService.deformed_schur(nu)
        )
        return SymfunService.schur_to_deformed(product)

    @staticmethod
    def restriction_multiplicities(shape: Partition) -> Dict[Partition, int]:
        """Restriction of S(shape) to S_{n-1}, decomposed by character inner products."""
        n = shape.size
        if n == 0:
            return {}
        out = {}
        for target in SymfunService.partitions_of(n - 1):
            total = Fraction(0)
            for rho in SymfunService.partitions_of(n - 1):
                extended = Partition.from_parts(rho.parts + (1,))
                total += Fraction(
                    SymfunService.char_value(shape, extended) * SymfunService.char_value(target, rho),
                    SymfunService.z(rho),
                )
            if total:
                out[target] = _as_int(total, "restriction multiplicity")
        return out

    @staticmethod
    def parse_method(text: Optional[str]) -> ReducedKroneckerMethod:
        if text is None:
            return ReducedKroneckerMethod.STABILIZE
        for method in ReducedKroneckerMethod:
            if method.value.lower() == text.strip().lower():
                return method
        raise PreconditionError(f"Unknown reduced Kronecker method {text!r}")

    @staticmethod
    def sizes_bounded(shapes: Sequence[Partition], bound: int) -> bool:
        return all(p.size <= bound for p in shapes)
