"""
Standard module service - weight spaces of Delta(lambda), the action of
diagrams on them, contravariant Gram forms and the block-structure check.

A basis vector of 1_m Delta(lambda) is (orbit, tableau): the normally ordered
upward representative of an orbit tensored with a seminormal basis vector.
Its index is orbit_index * specht_dim + tableau_index.
"""
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Tuple

from models.algebra import AlgebraElement
from models.matrix import SparseMatrix
from models.partition import Partition
from services.algebra_service import AlgebraService
from services.blocks_service import BlocksService
from services.diagram_service import DiagramService, UpwardOrbit
from services.specht_service import SeminormalRep, SpechtService
from utils.exceptions import ArityError, PreconditionError
from utils.logger import get_logger
from utils.validators import format_rational

logger = get_logger("stdmod_service")

Vector = Dict[int, Fraction]


@dataclass(frozen=True)
class DeltaWeightSpace:
    """The weight space 1_m Delta(lambda) at a rational t."""
    shape: Partition
    m: int
    t: Fraction

    @property
    def orbits(self) -> Tuple[UpwardOrbit, ...]:
        if self.m < self.shape.size:
            return ()
        return DiagramService.enumerate_upward_orbits(self.m, self.shape.size)

    @property
    def specht(self) -> SeminormalRep:
        return SpechtService.specht_rep(self.shape)

    @property
    def dimension(self) -> int:
        return len(self.orbits) * self.specht.dim

    def orbit_index(self) -> Dict[UpwardOrbit, int]:
        return {o: k for k, o in enumerate(self.orbits)}

    def basis_label(self, index: int) -> str:
        o, k = divmod(index, self.specht.dim)
        return f"{self.orbits[o]} | T{k}"


@dataclass(frozen=True)
class GramMatrix:
    shape: Partition
    m: int
    t: Fraction
    matrix: SparseMatrix
    rank: int


@dataclass(frozen=True)
class BlockCheck:
    n: int
    m: int
    shape: Partition
    rank: int
    predicted: int

    @property
    def ok(self) -> bool:
        return self.rank == self.predicted


class StdmodService:
    """Computations on weight spaces of standard modules."""

    @staticmethod
    def space(shape: Partition, m: int, t: Fraction) -> DeltaWeightSpace:
        if t is None:
            raise PreconditionError("Standard-module computations need a rational t")
        return DeltaWeightSpace(shape, m, Fraction(t))

    @staticmethod
    def delta_dim(shape: Partition, m: int) -> int:
        """#upward orbits times the Specht dimension; 0 when m < |lambda|."""
        if m < shape.size:
            return 0
        return len(DiagramService.enumerate_upward_orbits(m, shape.size)) * SpechtService.specht_dim(shape)

    @staticmethod
    def act(f: AlgebraElement, space: DeltaWeightSpace, vector: Vector) -> Tuple[DeltaWeightSpace, Vector]:
        """
        Apply a morphism m -> m' to a vector of 1_m Delta(lambda).

        Each term is composed with the orbit representative. A composite of
        propagating rank below |lambda| acts as zero; otherwise it equals
        representative(o') . g and contributes t^loops e_o' (x) g.v.

        Raises:
            ArityError: On arity or parameter mismatch
        """
        if f.n != space.m:
            raise ArityError(f"Cannot apply Hom({f.n}, {f.m}) to a weight space at m = {space.m}")
        if f.t is not None and f.t != space.t:
            raise ArityError(f"Element specialized at {f.t}, module at t = {space.t}")
        target = DeltaWeightSpace(space.shape, f.m, space.t)
        rep = space.specht
        dim = rep.dim
        n = space.shape.size
        target_index = target.orbit_index()
        out: Vector = {}
        by_orbit: Dict[int, Vector] = {}
        for index, x in vector.items():
            if x:
                o, k = divmod(index, dim)
                by_orbit.setdefault(o, {})[k] = x
        for o, local in by_orbit.items():
            upward = space.orbits[o].representative()
            for d, c in f.terms.items():
                coeff = c.evaluate(space.t) if f.t is None else c
                composite, loops = DiagramService.compose(d, upward)
                if composite.propagating_rank < n:
                    continue
                orbit, g = DiagramService.orbit_of(composite)
                scale = coeff * space.t ** loops
                if not scale:
                    continue
                base = target_index[orbit] * dim
                for k, value in rep.apply(g, local).items():
                    out[base + k] = out.get(base + k, 0) + scale * value
        return target, {k: v for k, v in out.items() if v}

    @staticmethod
    def action_matrix(f: AlgebraElement, space: DeltaWeightSpace) -> SparseMatrix:
        target = None
        entries = {}
        for col in range(space.dimension):
            target, image = StdmodService.act(f, space, {col: Fraction(1)})
            for row, value in image.items():
                entries[(row, col)] = value
        rows = target.dimension if target else DeltaWeightSpace(space.shape, f.m, space.t).dimension
        return SparseMatrix(rows, space.dimension, entries)

    @staticmethod
    @lru_cache(maxsize=None)
    def gram_matrix(shape: Partition, m: int, t: Fraction) -> GramMatrix:
        """
        Contravariant form on 1_m Delta(lambda).

        The entry at ((o, T), (o', T')) pairs v_T with g.v_T' in the Specht form
        whenever flip(rep o) . rep o' is t^loops times a permutation g, and is
        zero otherwise.
        """
        space = StdmodService.space(shape, m, t)
        rep = space.specht
        dim = rep.dim
        orbits = space.orbits
        entries = {}
        for a, left in enumerate(orbits):
            flipped = DiagramService.flip_sigma(left.representative())
            for b, right in enumerate(orbits):
                composite, loops = DiagramService.compose(flipped, right.representative())
                if not composite.is_permutation():
                    continue
                scale = space.t ** loops
                if not scale:
                    continue
                g_matrix = rep.matrix(composite.permutation())
                for (r, c), value in g_matrix.entries.items():
                    entries[(a * dim + r, b * dim + c)] = scale * rep.form_weights[r] * value
        matrix = SparseMatrix(space.dimension, space.dimension, entries)
        rank = matrix.rank()
        logger.info(
            f"Gram matrix of {shape} at m={m}, t={format_rational(space.t)}: "
            f"dimension {space.dimension}, rank {rank}"
        )
        return GramMatrix(shape, m, space.t, matrix, rank)

    @staticmethod
    def simple_dim(shape: Partition, m: int, t: Fraction) -> int:
        """dim 1_m L(lambda), the rank of the Gram matrix."""
        return StdmodService.gram_matrix(shape, m, Fraction(t)).rank

    @staticmethod
    def predicted_simple_dim(orbit: List[Partition], n: int, m: int) -> int:
        """sum_{j >= n} (-1)^(j-n) delta_dim(kappa^(j), m)."""
        return sum((-1) ** (j - n) * StdmodService.delta_dim(orbit[j], m) for j in range(n, len(orbit)))

    @staticmethod
    def verify_block_structure(kappa: Partition, m_max: int, j_max: int) -> List[BlockCheck]:
        """
        Compare Gram ranks on the kappa orbit with the alternating sums of
        standard-module dimensions. Failures are reported, never raised.
        """
        t = Fraction(kappa.size)
        orbit = BlocksService.kappa_orbit(kappa, j_max + m_max + kappa.part(1) + 1)
        checks = []
        for n in range(j_max + 1):
            for m in range(m_max + 1):
                check = BlockCheck(
                    n=n,
                    m=m,
                    shape=orbit[n],
                    rank=StdmodService.simple_dim(orbit[n], m, t),
                    predicted=StdmodService.predicted_simple_dim(orbit, n, m),
                )
                if not check.ok:
                    logger.warning(
                        f"Block structure mismatch for kappa={kappa}, n={n}, m={m}: "
                        f"rank {check.rank}, predicted {check.predicted}"
                    )
                checks.append(check)
        return checks

    @staticmethod
    def hc_central_check(shape: Partition, m: int, r: int, t: Fraction) -> bool:
        """Whether central_z(m, r) acts on 1_m Delta(lambda) as central_char_z times the identity."""
        space = StdmodService.space(shape, m, t)
        scalar = BlocksService.central_char_z(shape, r, space.t)
        matrix = StdmodService.action_matrix(AlgebraService.central_z(m, r), space)
        return matrix == SparseMatrix.identity(space.dimension).scale(scalar)
