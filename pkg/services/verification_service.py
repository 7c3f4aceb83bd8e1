"""
Verification service - the named invariant suites behind `parcat verify`.

Every suite returns a report; failing checks are recorded, never raised.
"""
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List

from config.settings import settings
from models.algebra import AlgebraElement, GroupAlgebraElement
from models.exact import Poly
from models.matrix import SparseMatrix
from models.partition import Partition, SchurPoly, tableau_content
from schemas.report import CheckResultSchema, VerificationReportSchema
from services.algebra_service import AlgebraService
from services.blocks_service import BlocksService
from services.diagram_service import DiagramService, double_leaf_i, merge, split
from services.schurweyl_service import OracleKind, SchurWeylService
from services.specht_service import SpechtService
from services.stdmod_service import StdmodService
from services.symfun_service import ReducedKroneckerMethod, SymfunService, _cycle_permutation
from utils.exceptions import PreconditionError
from utils.logger import get_logger

logger = get_logger("verification_service")


@dataclass(frozen=True)
class Bounds:
    """Size limits of one preset."""
    basis_total: int
    sw_total: int
    random_pairs: int
    oracle_n: int
    oracle_t_max: int
    interpolation_n: int
    hc_n: int
    centrality_n: int
    z_r: int
    c_r: int
    relations_n: int
    specht_size: int
    kronecker_n: int
    reduced_size: int
    deformed_degree: int
    blocks_size: int
    blocks_r: int
    branching_size: int
    central_action_size: int
    central_action_m: int
    central_action_r: int
    semisimple_size: int
    semisimple_m: int
    block_m: int
    block_j: int


BOUNDS = {
    "small": Bounds(
        basis_total=5, sw_total=3, random_pairs=12, oracle_n=2, oracle_t_max=4,
        interpolation_n=1, hc_n=3, centrality_n=2, z_r=2, c_r=4, relations_n=2,
        specht_size=4, kronecker_n=3, reduced_size=2, deformed_degree=2,
        blocks_size=4, blocks_r=6, branching_size=4, central_action_size=2,
        central_action_m=2, central_action_r=1,
        semisimple_size=2, semisimple_m=3, block_m=3, block_j=2,
    ),
    "full": Bounds(
        basis_total=8, sw_total=5, random_pairs=200, oracle_n=3, oracle_t_max=5,
        interpolation_n=2, hc_n=4, centrality_n=3, z_r=4, c_r=5, relations_n=3,
        specht_size=5, kronecker_n=5, reduced_size=4, deformed_degree=4,
        blocks_size=6, blocks_r=6, branching_size=6, central_action_size=3,
        central_action_m=4, central_action_r=2,
        semisimple_size=3, semisimple_m=5, block_m=4, block_j=3,
    ),
}

BLOCK_STRUCTURE_CASES = (Partition(), Partition.of(1), Partition.of(2), Partition.of(1, 1))


class _Recorder:
    """Collects the check results of one suite."""

    def __init__(self, suite: str):
        self.suite = suite
        self.checks: List[CheckResultSchema] = []

    def check(self, name: str, passed: bool, detail: str = None) -> None:
        self.checks.append(CheckResultSchema(suite=self.suite, name=name, passed=bool(passed), detail=detail))
        if not passed:
            logger.warning(f"[{self.suite}] {name} failed" + (f": {detail}" if detail else ""))


def _random_element(rng: random.Random, m: int, n: int) -> AlgebraElement:
    diagrams = DiagramService.enumerate_diagrams(m, n)
    terms = {}
    for _ in range(rng.randint(1, 3)):
        terms[rng.choice(diagrams)] = rng.randint(-3, 3) or 1
    return AlgebraElement(m, n, terms)


def _transposition(n: int, k: int) -> tuple:
    g = list(range(1, n + 1))
    g[k - 1], g[k] = k + 1, k
    return tuple(g)


class VerificationService:
    """Runs the named verification suites."""

    @staticmethod
    def suites() -> Dict[str, Callable[[_Recorder, Bounds, random.Random], None]]:
        return {
            "basis": VerificationService._basis,
            "schurweyl": VerificationService._schurweyl,
            "oracle": VerificationService._oracle,
            "interpolation": VerificationService._interpolation,
            "hc": VerificationService._hc,
            "centrality": VerificationService._centrality,
            "relations": VerificationService._relations,
            "specht": VerificationService._specht,
            "kronecker": VerificationService._kronecker,
            "deformed": VerificationService._deformed,
            "blocks": VerificationService._blocks,
            "branching": VerificationService._branching,
            "central-action": VerificationService._central_action,
            "semisimple": VerificationService._semisimple,
            "block-structure": VerificationService._block_structure,
        }

    @staticmethod
    def suite_names() -> List[str]:
        return list(VerificationService.suites()) + ["all"]

    @staticmethod
    def run(suite: str, bounds: str = None, seed: int = None) -> List[VerificationReportSchema]:
        """
        Run one suite, or every suite for "all".

        Args:
            suite: Suite name or "all"
            bounds: "small" or "full"; defaults to settings.verify_bounds
            seed: Seed of the randomized checks; defaults to settings.seed

        Returns:
            One report per suite run

        Raises:
            PreconditionError: For an unknown suite or bounds preset
        """
        bounds = bounds or settings.verify_bounds
        seed = settings.seed if seed is None else seed
        if bounds not in BOUNDS:
            raise PreconditionError(f"Unknown bounds preset {bounds!r}")
        table = VerificationService.suites()
        if suite != "all" and suite not in table:
            raise PreconditionError(f"Unknown suite {suite!r}; choose from {', '.join(VerificationService.suite_names())}")
        names = list(table) if suite == "all" else [suite]

        reports = []
        for name in names:
            recorder = _Recorder(name)
            logger.info(f"Running suite {name} ({bounds} bounds, seed {seed})")
            table[name](recorder, BOUNDS[bounds], random.Random(seed))
            report = VerificationReportSchema(suite=name, bounds=bounds, checks=recorder.checks)
            passed = len(report.checks) - len(report.failed)
            logger.info(f"Suite {name}: {passed}/{len(report.checks)} checks passed")
            reports.append(report)
        return reports

    # -- diagrams and the Schur-Weyl functor ---------------------------------

    @staticmethod
    def _basis(rec: _Recorder, b: Bounds, rng: random.Random) -> None:
        for total in range(b.basis_total + 1):
            for m in range(total + 1):
                count = len(DiagramService.enumerate_diagrams(m, total - m))
                rec.check(f"|Hom({total - m}, {m})| = B({total})", count == SymfunService.bell(total), f"{count} diagrams")

    @staticmethod
    def _schurweyl(rec: _Recorder, b: Bounds, rng: random.Random) -> None:
        for total in range(b.sw_total + 1):
            for m in range(total + 1):
                n = total - m
                for t in (total, total + 1):
                    rank = SchurWeylService.hom_rank(m, n, t)
                    rec.check(f"rank psi on Hom({n}, {m}) at t={t}", rank == SymfunService.bell(total), f"rank {rank}")

        for k in range(b.random_pairs):
            t = rng.randint(1, 3)
            m, mid, n = (rng.randint(0, 2) for _ in range(3))
            f, g = _random_element(rng, m, mid), _random_element(rng, mid, n)
            lhs = SchurWeylService.psi_element(f * g, t)
            rhs = SchurWeylService.matmul(SchurWeylService.psi_element(f, t), SchurWeylService.psi_element(g, t))
            rec.check(f"psi(f g) = psi(f) psi(g) #{k}", lhs == rhs, f"{m} x {mid} by {mid} x {n}, t={t}")

        for k in range(max(2, b.random_pairs // 4)):
            t = rng.randint(1, 3)
            f = _random_element(rng, rng.randint(0, 1), rng.randint(0, 1))
            g = _random_element(rng, rng.randint(0, 2), rng.randint(0, 1))
            lhs = SchurWeylService.psi_element(AlgebraService.tensor(f, g), t)
            rhs = SchurWeylService.kron(SchurWeylService.psi_element(f, t), SchurWeylService.psi_element(g, t))
            rec.check(f"psi(f x g) = psi(f) x psi(g) #{k}", lhs == rhs, f"t={t}")

        for k in range(max(2, b.random_pairs // 4)):
            t = rng.randint(2, 3)
            m, n = rng.randint(0, 2), rng.randint(0, 2)
            d = rng.choice(DiagramService.enumerate_diagrams(m, n))
            g = list(range(1, t + 1))
            rng.shuffle(g)
            psi = SchurWeylService.psi_diagram(d, t)
            lhs = SchurWeylService.label_permutation_matrix(m, t, g) @ psi
            rhs = psi @ SchurWeylService.label_permutation_matrix(n, t, g)
            rec.check(f"S_t-equivariance #{k}", lhs == rhs, f"{d} at t={t}")

    @staticmethod
    def _oracle(rec: _Recorder, b: Bounds, rng: random.Random) -> None:
        for n in range(1, b.oracle_n + 1):
            for kind in OracleKind:
                crossing = kind in (OracleKind.LEFT_CROSS, OracleKind.RIGHT_CROSS)
                for j in range(1, (n - 1 if crossing else n) + 1):
                    for t, ok in SchurWeylService.oracle_agreement(n, j, kind, range(1, b.oracle_t_max + 1)):
                        rec.check(f"{kind.value}(n={n}, j={j}) at t={t}", ok)

    @staticmethod
    def _interpolation(rec: _Recorder, b: Bounds, rng: random.Random) -> None:
        scalar = AlgebraService.interpolate_element(
            lambda t: SparseMatrix.identity(t).scale(t), 1, 1, range(2, 10)
        )
        rec.check("T * id_1 recovered", scalar == AlgebraElement.generic_parameter(1), str(scalar))
        for n in range(1, b.interpolation_n + 1):
            for kind in OracleKind:
                crossing = kind in (OracleKind.LEFT_CROSS, OracleKind.RIGHT_CROSS)
                for j in range(1, (n - 1 if crossing else n) + 1):
                    built = SchurWeylService.construct(n, j, kind)
                    recovered = AlgebraService.interpolate_element(
                        SchurWeylService.oracle(n, j, kind), n, n, range(2 * n, 2 * n + 12)
                    )
                    rec.check(f"{kind.value}(n={n}, j={j}) recovered", recovered == built, f"{len(recovered)} terms")

    # -- partition algebra elements ------------------------------------------

    @staticmethod
    def _hc(rec: _Recorder, b: Bounds, rng: random.Random) -> None:
        for n in range(1, b.hc_n + 1):
            identity = GroupAlgebraElement.identity(n)
            for j in range(1, n + 1):
                rec.check(
                    f"HC(x_{j}^L) = x_{j} in S_{n}",
                    AlgebraService.hc_project(AlgebraService.jm_left(n, j)) == GroupAlgebraElement.jucys_murphy(n, j),
                )
                rec.check(
                    f"HC(x_{j}^R) = T - {j - 1} in S_{n}",
                    AlgebraService.hc_project(AlgebraService.jm_right(n, j)) == identity * Poly((1 - j, 1)),
                )
            for k in range(1, n):
                rec.check(f"HC(s_{k}^L) = 1 in S_{n}", AlgebraService.hc_project(AlgebraService.cross_left(n, k)) == identity)
                rec.check(
                    f"HC(s_{k}^R) = ({k} {k + 1}) in S_{n}",
                    AlgebraService.hc_project(AlgebraService.cross_right(n, k))
                    == GroupAlgebraElement(n, {_transposition(n, k): 1}),
                )
            rec.check(
                f"HC(z^(1)) in S_{n}",
                AlgebraService.hc_project(AlgebraService.central_z(n, 1)) == AlgebraService.hc_central_z(n, 1),
            )

    @staticmethod
    def _centrality(rec: _Recorder, b: Bounds, rng: random.Random) -> None:
        n_max = b.centrality_n
        for r in range(1, b.z_r + 1):
            rec.check(
                f"z^({r}) central up to n={n_max}",
                AlgebraService.check_centrality(lambda n: AlgebraService.central_z(n, r), n_max),
            )
        for r in range(b.c_r + 1):
            rec.check(
                f"c^({r}) central up to n={n_max}",
                AlgebraService.check_centrality(lambda n: AlgebraService.central_c(n, r), n_max),
            )
        for n in range(n_max + 1):
            c = [AlgebraService.central_c(n, r) for r in range(b.c_r + 1)]
            z = [None] + [AlgebraService.central_z(n, r) for r in range(1, 4)]
            rec.check(f"c^(0) = 1 (n={n})", c[0] == AlgebraElement.identity(n))
            rec.check(f"c^(1) = c^(2) = 0 (n={n})", c[1] == 0 and c[2] == 0)
            rec.check(f"c^(3) = -2 z^(1) (n={n})", c[3] == z[1] * -2)
            rec.check(f"c^(4) = -3 z^(2) (n={n})", c[4] == z[2] * -3)
            if b.c_r >= 5:
                rec.check(f"c^(5) = -4 z^(3) - 2 z^(1) (n={n})", c[5] == z[3] * -4 - z[1] * 2)
        rec.check(
            "x_1^L is not central",
            not AlgebraService.check_centrality(
                lambda n: AlgebraService.jm_left(n, 1) if n else AlgebraElement.identity(0), 2
            ),
        )

    @staticmethod
    def _relations(rec: _Recorder, b: Bounds, rng: random.Random) -> None:
        e = AlgebraElement.from_diagram(double_leaf_i(1, 1))
        rec.check("e e = T e", e * e == e * Poly.T())
        rec.check(
            "merge split = id_1",
            AlgebraElement.from_diagram(merge()) * AlgebraElement.from_diagram(split()) == AlgebraElement.identity(1),
        )

        for n in range(1, b.relations_n + 1):
            one = AlgebraElement.identity(n)
            for k in range(1, n):
                for side, s in (("L", AlgebraService.cross_left(n, k)), ("R", AlgebraService.cross_right(n, k))):
                    rec.check(f"(s_{k}^{side})^2 = 1 (n={n})", s * s == one)
            dots = [(f"x_{j}^L", AlgebraService.jm_left(n, j)) for j in range(1, n + 1)]
            dots += [(f"x_{j}^R", AlgebraService.jm_right(n, j)) for j in range(1, n + 1)]
            for a, (name_a, x) in enumerate(dots):
                rec.check(f"sigma fixes {name_a} (n={n})", AlgebraService.flip_element(x) == x)
                for name_b, y in dots[a + 1:]:
                    rec.check(f"{name_a} {name_b} commute (n={n})", x * y == y * x)

            for name, lhs, rhs in AlgebraService.relation_identities(n):
                rec.check(name, lhs == rhs)

        for k in range(max(2, b.random_pairs // 4)):
            sizes = [rng.randint(0, 2) for _ in range(4)]
            f = _random_element(rng, sizes[0], sizes[1])
            g = _random_element(rng, sizes[1], sizes[2])
            h = _random_element(rng, sizes[2], sizes[3])
            rec.check(f"associativity #{k}", (f * g) * h == f * (g * h))
            rec.check(
                f"sigma reverses products #{k}",
                AlgebraService.flip_element(f * g) == AlgebraService.flip_element(g) * AlgebraService.flip_element(f),
            )

    # -- symmetric groups and symmetric functions ----------------------------

    @staticmethod
    def _specht(rec: _Recorder, b: Bounds, rng: random.Random) -> None:
        for shape in SymfunService.partitions_up_to(b.specht_size):
            rep = SpechtService.specht_rep(shape)
            n, gens = shape.size, rep.gens
            identity = SparseMatrix.identity(rep.dim)
            coxeter = all(s @ s == identity for s in gens)
            coxeter = coxeter and all(
                gens[i] @ gens[i + 1] @ gens[i] == gens[i + 1] @ gens[i] @ gens[i + 1] for i in range(n - 2)
            )
            coxeter = coxeter and all(
                gens[i] @ gens[j] == gens[j] @ gens[i] for i in range(n - 1) for j in range(i + 2, n - 1)
            )
            rec.check(f"Coxeter relations on S{shape}", coxeter)

            diagonal = True
            for j in range(1, n + 1):
                x = SpechtService.jucys_murphy_matrix(rep, j)
                expected = {(k, k): Fraction(tableau_content(rep.basis[k], j)) for k in range(rep.dim)}
                diagonal = diagonal and x.entries == {key: v for key, v in expected.items() if v}
            rec.check(f"x_j acts by contents on S{shape}", diagonal)

            contravariant = all(
                rep.form_weights[r] * s.get(r, c) == rep.form_weights[c] * s.get(c, r)
                for s in gens for r in range(rep.dim) for c in range(rep.dim)
            )
            rec.check(f"form on S{shape} is contravariant", contravariant)

            for rho in SymfunService.partitions_of(n):
                trace = SpechtService.character(rep, _cycle_permutation(rho))
                value = SymfunService.char_value(shape, rho)
                rec.check(f"chi^{shape}{rho}", trace == value, f"trace {trace}, Murnaghan-Nakayama {value}")
            if n:
                expected = {shape.remove_content(c): 1 for c in shape.removable_contents()}
                rec.check(f"restriction of S{shape}", SymfunService.restriction_multiplicities(shape) == expected)

    @staticmethod
    def _kronecker(rec: _Recorder, b: Bounds, rng: random.Random) -> None:
        for n in range(b.kronecker_n + 1):
            shapes = SymfunService.partitions_of(n)
            for lam in shapes:
                for mu in shapes:
                    for nu in shapes:
                        if not lam <= mu <= nu:
                            continue
                        value = SymfunService.kronecker(lam, mu, nu)
                        others = [(lam, nu, mu), (mu, lam, nu), (mu, nu, lam), (nu, lam, mu), (nu, mu, lam)]
                        rec.check(
                            f"g{lam}{mu}{nu} symmetric",
                            value >= 0 and all(SymfunService.kronecker(*p) == value for p in others),
                            str(value),
                        )

        shapes = SymfunService.partitions_up_to(b.reduced_size)
        for lam in shapes:
            for mu in shapes:
                for nu in shapes:
                    if not mu <= nu:
                        continue
                    stable = SymfunService.reduced_kronecker(lam, mu, nu, ReducedKroneckerMethod.STABILIZE)
                    littlewood = SymfunService.reduced_kronecker(lam, mu, nu, ReducedKroneckerMethod.LITTLEWOOD)
                    rec.check(f"G{lam}{mu}{nu} by both methods", stable == littlewood, f"{stable} vs {littlewood}")
        one = Partition.of(1)
        for lam in shapes:
            value = SymfunService.reduced_kronecker(lam, one, lam)
            rec.check(f"G{lam}(1){lam} = |rem{lam}|", value == len(lam.removable_contents()), str(value))

    @staticmethod
    def _deformed(rec: _Recorder, b: Bounds, rng: random.Random) -> None:
        shapes = SymfunService.partitions_up_to(b.deformed_degree)
        for lam in shapes:
            unitriangular = all(
                SymfunService.cartan_B(lam, mu) == (1 if mu == lam else 0)
                for mu in shapes
                if mu.size >= lam.size
            )
            rec.check(f"B row of {lam} is unitriangular", unitriangular)
            basis = SchurPoly.basis(lam)
            rec.check(
                f"deformed basis change inverts at {lam}",
                SymfunService.deformed_to_schur(SymfunService.schur_to_deformed(basis)) == basis,
            )
        for mu in shapes:
            for nu in shapes:
                if mu.size + nu.size > b.deformed_degree or not mu <= nu:
                    continue
                product = SymfunService.deformed_structure_constants(mu, nu)
                expected = SchurPoly({
                    lam: SymfunService.reduced_kronecker(lam, mu, nu)
                    for lam in SymfunService.partitions_up_to(mu.size + nu.size)
                })
                rec.check(f"s~{mu} s~{nu} has reduced Kronecker constants", product == expected, str(product))

    # -- blocks and branching ------------------------------------------------

    @staticmethod
    def _blocks(rec: _Recorder, b: Bounds, rng: random.Random) -> None:
        shapes = SymfunService.partitions_up_to(b.blocks_size)
        for value in range(4):
            t = Fraction(value)
            groups = BlocksService.block_groups(shapes, t)
            signatures = set()
            for group in groups:
                if len(group) > 1:
                    kappas = {r[0] if r else None for r in (BlocksService.recover_kappa(s, t) for s in group)}
                    rec.check(
                        f"block of {group[0]} at t={value} is one kappa orbit",
                        None not in kappas and len(kappas) == 1,
                        ", ".join(map(str, group)),
                    )
                characters = {
                    tuple(BlocksService.central_char_z(shape, r, t) for r in range(1, b.blocks_r + 1)) for shape in group
                }
                rec.check(f"central character constant on block of {group[0]} at t={value}", len(characters) == 1)
                signatures.update(characters)
            rec.check(
                f"central characters separate the {len(groups)} blocks at t={value}",
                len(signatures) == len(groups),
            )
            for shape in shapes:
                rec.check(
                    f"{shape} typical at t={value} iff no kappa",
                    BlocksService.is_typical(shape, t) == (BlocksService.recover_kappa(shape, t) is None),
                )

        for value in range(5):
            for kappa in SymfunService.partitions_of(value):
                orbit = BlocksService.kappa_orbit(kappa, 5, value)
                rec.check(
                    f"recover_kappa inverts the orbit of {kappa}",
                    all(BlocksService.recover_kappa(shape, value) == (kappa, n) for n, shape in enumerate(orbit)),
                )

        sample = SymfunService.partitions_up_to(min(b.blocks_size, 4))
        for t in (Fraction(0), Fraction(1), Fraction(2), Fraction(3), Fraction(1, 2)):
            agree = all(
                (BlocksService.central_char_c(lam, t) == BlocksService.central_char_c(mu, t))
                == BlocksService.same_block(lam, mu, t)
                for lam in sample for mu in sample
            )
            rec.check(f"c(u) divisors separate blocks at t={t}", agree)

    @staticmethod
    def _branching(rec: _Recorder, b: Bounds, rng: random.Random) -> None:
        for t in (Fraction(0), Fraction(1), Fraction(2), Fraction(3), Fraction(7, 3)):
            for shape in SymfunService.partitions_up_to(b.branching_size):
                rec.check(
                    f"summands of D on Delta{shape} at t={t} add up",
                    BlocksService.branch_union(shape, t) == BlocksService.branch_hood(shape),
                )

    # -- standard modules ----------------------------------------------------

    @staticmethod
    def _central_action(rec: _Recorder, b: Bounds, rng: random.Random) -> None:
        for t in (Fraction(0), Fraction(2), Fraction(1, 2)):
            for shape in SymfunService.partitions_up_to(b.central_action_size):
                for m in range(shape.size, b.central_action_m + 1):
                    for r in range(1, b.central_action_r + 1):
                        rec.check(
                            f"z^({r}) on 1_{m} Delta{shape} at t={t}",
                            StdmodService.hc_central_check(shape, m, r, t),
                        )

    @staticmethod
    def _semisimple(rec: _Recorder, b: Bounds, rng: random.Random) -> None:
        for t in (Fraction(1, 2), Fraction(7, 3)):
            for shape in SymfunService.partitions_up_to(b.semisimple_size):
                for m in range(shape.size, b.semisimple_m + 1):
                    gram = StdmodService.gram_matrix(shape, m, t)
                    dim = StdmodService.delta_dim(shape, m)
                    rec.check(f"Gram of 1_{m} Delta{shape} at t={t} nondegenerate", gram.rank == dim, f"{gram.rank}/{dim}")

    @staticmethod
    def _block_structure(rec: _Recorder, b: Bounds, rng: random.Random) -> None:
        for kappa in BLOCK_STRUCTURE_CASES:
            for check in StdmodService.verify_block_structure(kappa, b.block_m, b.block_j):
                rec.check(
                    f"kappa={kappa} n={check.n} m={check.m}",
                    check.ok,
                    f"rank {check.rank}, alternating sum {check.predicted}",
                )
