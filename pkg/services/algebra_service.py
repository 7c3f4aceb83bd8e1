"""
Algebra service - multiplication of diagram combinations, the Harish-Chandra
projection, Jucys-Murphy elements, central elements and interpolation of
morphisms from their Schur-Weyl matrices.
"""
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import factorial
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from config.settings import settings
from models.algebra import AlgebraElement, Coefficient, GroupAlgebraElement
from models.diagram import PartitionDiagram, permutation_diagram
from models.exact import Poly, TruncSeries
from models.matrix import SparseMatrix
from services.diagram_service import (
    DiagramService,
    copy_strand,
    crossing_i,
    double_leaf_i,
    equalizer,
    leaf_down_i,
    leaf_up_i,
    merge_i,
    set_partitions,
    split_i,
    transposition,
)
from services.exact_service import ExactService
from utils.exceptions import ArityError, InterpolationError, ParseError, PreconditionError
from utils.logger import get_logger
from utils.validators import parse_rational

logger = get_logger("algebra_service")


class AlgebraService:
    """Operations on morphisms of the partition category."""

    # -- ring structure -----------------------------------------------------

    @staticmethod
    def mul(f: AlgebraElement, g: AlgebraElement) -> AlgebraElement:
        """
        Composite f . g (g applied first); loops contribute T or t per loop.

        Raises:
            ArityError: On arity or coefficient-ring mismatch
        """
        if f.n != g.m:
            raise ArityError(f"Cannot multiply Hom({f.n}, {f.m}) by Hom({g.n}, {g.m})")
        f._check_ring(g)
        compose = DiagramService.compose
        out: Dict[PartitionDiagram, Coefficient] = {}
        for d1, a in f.terms.items():
            for d2, b in g.terms.items():
                d, loops = compose(d1, d2)
                c = a * b
                if loops:
                    c = c * f.loop_scalar(loops)
                out[d] = out[d] + c if d in out else c
        return AlgebraElement(f.m, g.n, out, f.t)

    @staticmethod
    def tensor(f: AlgebraElement, g: AlgebraElement) -> AlgebraElement:
        """Bilinear extension of the diagram tensor product (g on the low strands)."""
        f._check_ring(g)
        out: Dict[PartitionDiagram, Coefficient] = {}
        for d1, a in f.terms.items():
            for d2, b in g.terms.items():
                out[DiagramService.tensor(d1, d2)] = a * b
        return AlgebraElement(f.m + g.m, f.n + g.n, out, f.t)

    @staticmethod
    def embed(x: AlgebraElement, n: int) -> AlgebraElement:
        """Extend an endomorphism of the lowest strands to n strands."""
        if x.m != x.n or x.n > n:
            raise PreconditionError(f"Cannot embed a {x.m} x {x.n} element into P_{n}")
        if x.n == n:
            return x
        return AlgebraService.tensor(AlgebraElement.identity(n - x.n, x.t), x)

    @staticmethod
    def flip_element(f: AlgebraElement) -> AlgebraElement:
        """The anti-involution sigma, extended linearly."""
        return AlgebraElement(
            f.n, f.m, {DiagramService.flip_sigma(d): c for d, c in f.terms.items()}, f.t
        )

    @staticmethod
    def specialize(f: AlgebraElement, t: Fraction) -> AlgebraElement:
        """Evaluate every coefficient at T = t."""
        if f.t is not None:
            if f.t != t:
                raise ArityError(f"Element is already specialized at t = {f.t}")
            return f
        return AlgebraElement(f.m, f.n, {d: c.evaluate(t) for d, c in f.terms.items()}, Fraction(t))

    @staticmethod
    def from_group_element(x: GroupAlgebraElement) -> AlgebraElement:
        return AlgebraElement(
            x.n, x.n, {permutation_diagram(g): c for g, c in x.terms.items()}, x.t
        )

    @staticmethod
    def hc_project(f: AlgebraElement) -> GroupAlgebraElement:
        """
        Harish-Chandra projection: keep exactly the permutation-diagram terms.

        Raises:
            PreconditionError: If f is not an endomorphism
        """
        if f.m != f.n:
            raise PreconditionError(f"HC projection needs an endomorphism, got {f.m} x {f.n}")
        return GroupAlgebraElement(
            f.n, {d.permutation(): c for d, c in f.terms.items() if d.is_permutation()}, f.t
        )

    # -- Jucys-Murphy elements ----------------------------------------------

    @staticmethod
    def jm_left(n: int, j: int) -> AlgebraElement:
        """Left dot on strand j of n strands."""
        if not 1 <= j <= n:
            raise PreconditionError(f"jm_left needs 1 <= j <= n, got j={j}, n={n}")
        return AlgebraService.embed(_left_dot(j), n)

    @staticmethod
    def jm_right(n: int, j: int) -> AlgebraElement:
        """Right dot on strand j of n strands."""
        if not 1 <= j <= n:
            raise PreconditionError(f"jm_right needs 1 <= j <= n, got j={j}, n={n}")
        return AlgebraService.embed(_right_dot(j), n)

    @staticmethod
    def cross_left(n: int, k: int) -> AlgebraElement:
        """Left crossing at strands k, k+1 of n strands."""
        if not 1 <= k < n:
            raise PreconditionError(f"cross_left needs 1 <= k < n, got k={k}, n={n}")
        return AlgebraService.embed(_left_cross(k), n)

    @staticmethod
    def cross_right(n: int, k: int) -> AlgebraElement:
        """Right crossing at strands k, k+1 of n strands."""
        if not 1 <= k < n:
            raise PreconditionError(f"cross_right needs 1 <= k < n, got k={k}, n={n}")
        return AlgebraService.embed(_right_cross(k), n)

    @staticmethod
    def enyang_dictionary(n: int, j: int) -> Tuple[AlgebraElement, AlgebraElement]:
        """The classical pair (L_j, L_{j-1/2}) = (x_j^L, T - x_j^R)."""
        return (
            AlgebraService.jm_left(n, j),
            AlgebraElement.generic_parameter(n) - AlgebraService.jm_right(n, j),
        )

    @staticmethod
    def creedon_elements(n: int) -> List[AlgebraElement]:
        """Renormalized elements N_1..N_2n: T/2 - x_j^R and x_j^L - T/2."""
        half_t = AlgebraElement.generic_parameter(n) * Fraction(1, 2)
        out = []
        for j in range(1, n + 1):
            out.append(half_t - AlgebraService.jm_right(n, j))
            out.append(AlgebraService.jm_left(n, j) - half_t)
        return out

    @staticmethod
    def relation_identities(n: int) -> List[Tuple[str, AlgebraElement, AlgebraElement]]:
        """
        Named identities among dots, crossings and layers on n strands, as
        (name, lhs, rhs) triples. Some sides pass through n + 1 strands.

        Covered: dots sliding through splits and leaves, right dots through
        left dots and back, crossings through dots, the crossing products,
        and both dot recurrences with the right crossing pushed one strand
        further.
        """
        if n < 1:
            raise PreconditionError("relation_identities needs n >= 1")
        el = AlgebraElement.from_diagram
        xl, xr = AlgebraService.jm_left, AlgebraService.jm_right
        sl, sr = AlgebraService.cross_left, AlgebraService.cross_right

        def p(k: int, j: int) -> AlgebraElement:
            return el(crossing_i(k, j))

        def m(k: int, j: int) -> AlgebraElement:
            return el(merge_i(k, j))

        def s(k: int, j: int) -> AlgebraElement:
            return el(split_i(k, j))

        def a1(k: int, j: int) -> AlgebraElement:
            """Right side of the left-dot recurrence for x_{j+1}^L on k strands."""
            c = p(k, j)
            return (
                c * xl(k, j) * c
                + sr(k, j)
                + s(k - 1, j) * xl(k - 1, j) * m(k, j)
                - c * xl(k, j) * s(k - 1, j) * m(k, j)
                - s(k - 1, j) * m(k, j) * xl(k, j) * c
            )

        def a3(k: int, j: int) -> AlgebraElement:
            c = p(k, j)
            return (
                c * xr(k, j) * c
                + xl(k, j) * s(k - 1, j) * m(k, j)
                + s(k - 1, j) * m(k, j) * xl(k, j)
                - s(k - 1, j) * xr(k - 1, j) * m(k, j)
                - sl(k, j)
            )

        one = AlgebraElement.identity(n)
        out: List[Tuple[str, AlgebraElement, AlgebraElement]] = []
        for j in range(1, n + 1):
            leaf = el(leaf_up_i(n - 1, j))
            out += [
                (f"x_{j}^R slides up a split (n={n})", s(n, j) * xr(n, j), xr(n + 1, j) * s(n, j)),
                (f"x_{j}^R slides down a merge (n={n})", xr(n, j) * m(n + 1, j), m(n + 1, j) * xr(n + 1, j)),
                (f"x_{j}^L slides up a split (n={n})", s(n, j) * xl(n, j), xl(n + 1, j + 1) * s(n, j)),
                (f"x_{j+1}^R = x_{j}^L after a split (n={n})", xr(n + 1, j + 1) * s(n, j), xl(n + 1, j) * s(n, j)),
                (f"x_{j}^L = x_{j}^R on a leaf (n={n})", xl(n, j) * leaf, xr(n, j) * leaf),
                (f"x_{j}^L x_{j}^R = x_{j}^R x_{j}^L (n={n})", xl(n, j) * xr(n, j), xr(n, j) * xl(n, j)),
                (
                    f"x_{j}^R through a leaf and a merge (n={n})",
                    xr(n, j),
                    m(n + 1, j) * xl(n + 1, j) * el(leaf_up_i(n, j)),
                ),
                (
                    f"x_{j}^R through a split and a leaf (n={n})",
                    xr(n, j),
                    el(leaf_down_i(n + 1, j)) * xl(n + 1, j) * s(n, j),
                ),
                (
                    f"x_{j}^L through a leaf and a merge (n={n})",
                    xl(n, j),
                    m(n + 1, j) * xr(n + 1, j + 1) * el(leaf_up_i(n, j + 1)),
                ),
                (
                    f"x_{j}^L through a split and a leaf (n={n})",
                    xl(n, j),
                    el(leaf_down_i(n + 1, j + 1)) * xr(n + 1, j + 1) * s(n, j),
                ),
            ]
        for k in range(1, n):
            c = p(n, k)
            out += [
                (
                    f"s_{k}^L from a right dot (n={n})",
                    sl(n, k),
                    m(n + 1, k + 1) * p(n + 1, k) * xr(n + 1, k + 2) * s(n, k + 1),
                ),
                (
                    f"s_{k}^R from a left dot (n={n})",
                    sr(n, k),
                    m(n + 1, k) * p(n + 1, k + 1) * xl(n + 1, k) * s(n, k),
                ),
                (f"s_{k}^R = P s_{k}^L (n={n})", sr(n, k), c * sl(n, k)),
                (f"s_{k}^R = s_{k}^L P (n={n})", sr(n, k), sl(n, k) * c),
                (f"s_{k}^L = P s_{k}^R (n={n})", sl(n, k), c * sr(n, k)),
                (f"s_{k}^L = s_{k}^R P (n={n})", sl(n, k), sr(n, k) * c),
                (f"s_{k}^L s_{k}^L = 1 (n={n})", sl(n, k) * sl(n, k), one),
                (f"s_{k}^R s_{k}^R = 1 (n={n})", sr(n, k) * sr(n, k), one),
                (f"s_{k}^R s_{k}^L = P (n={n})", sr(n, k) * sl(n, k), c),
                (f"s_{k}^L s_{k}^R = P (n={n})", sl(n, k) * sr(n, k), c),
                (f"x_{k+1}^L recurrence (n={n})", xl(n, k + 1), a1(n, k)),
                (f"x_{k+1}^R recurrence (n={n})", xr(n, k + 1), a3(n, k)),
            ]
        for k in range(1, n - 1):
            pushed = m(n + 1, k + 1) * p(n + 1, k + 2) * a1(n + 1, k) * s(n, k + 1)
            out += [
                (f"s_{k+1}^R past strand {k} (n={n})", sr(n, k + 1), pushed),
                (f"s_{k+1}^L past strand {k} (n={n})", sl(n, k + 1), pushed * p(n, k + 1)),
            ]
        return out

    # -- central elements ---------------------------------------------------

    @staticmethod
    @lru_cache(maxsize=None)
    def central_z(n: int, r: int) -> AlgebraElement:
        """Sum over strands of (x_i^L)^r - (x_i^R)^r."""
        if r < 1:
            raise PreconditionError("central_z needs r >= 1")
        total = AlgebraElement.zero(n, n)
        for i in range(1, n + 1):
            total = total + AlgebraService.jm_left(n, i) ** r - AlgebraService.jm_right(n, i) ** r
        return total

    @staticmethod
    @lru_cache(maxsize=None)
    def central_c_series(n: int, order: int) -> TruncSeries:
        """Product over strands of alpha_{x^L}(u) / alpha_{x^R}(u) up to the given order."""
        one = AlgebraElement.identity(n)
        series = TruncSeries([one] + [one * 0] * order)
        for i in range(1, n + 1):
            ratio = ExactService.series_ratio_alpha(
                AlgebraService.jm_right(n, i), AlgebraService.jm_left(n, i), order
            )
            series = series * ratio
        logger.info(f"Expanded central series for n={n} to order {order}")
        return series

    @staticmethod
    def central_c(n: int, r: int) -> AlgebraElement:
        """Coefficient of u^{-r} in the central series."""
        if r < 0:
            raise PreconditionError("central_c needs r >= 0")
        return AlgebraService.central_c_series(n, r)[r]

    @staticmethod
    def hc_central_z(n: int, r: int) -> GroupAlgebraElement:
        """HC image of central_z(n, r): sum of x_j^r - (T - j + 1)^r with x_j in kS_n."""
        total = GroupAlgebraElement(n)
        for j in range(1, n + 1):
            x = GroupAlgebraElement.jucys_murphy(n, j)
            power = GroupAlgebraElement.identity(n)
            for _ in range(r):
                power = power * x
            total = total + power - GroupAlgebraElement.identity(n) * (Poly((1 - j, 1)) ** r)
        return total

    @staticmethod
    def check_centrality(family: Callable[[int], AlgebraElement], n_max: int) -> bool:
        """
        True iff family(m) . h == h . family(n) for every diagram h in Hom(n, m)
        with m, n <= n_max.
        """
        members = {k: family(k) for k in range(n_max + 1)}
        for m in range(n_max + 1):
            for n in range(n_max + 1):
                zm, zn = members[m], members[n]
                for h in DiagramService.enumerate_diagrams(m, n):
                    element = AlgebraElement.from_diagram(h, 1, zm.t)
                    if zm * element != element * zn:
                        logger.info(f"Centrality fails against {h}")
                        return False
        return True

    # -- interpolation ------------------------------------------------------

    @staticmethod
    def diagram_coefficients_at(matrix: SparseMatrix, m: int, n: int, t: int) -> Dict[PartitionDiagram, Fraction]:
        """
        Diagram-basis coefficients of an equivariant matrix at a fixed t >= m + n,
        by Moebius inversion over the refinement order of set partitions.
        """
        if t < m + n:
            raise PreconditionError(f"Need t >= m + n = {m + n}, got {t}")
        coefficients = {}
        for d in DiagramService.enumerate_diagrams(m, n):
            value = Fraction(0)
            for refinement in product(*(set_partitions(block) for block in d.blocks)):
                mobius = 1
                labels: Dict[int, int] = {}
                next_label = 0
                for pieces in refinement:
                    k = len(pieces)
                    mobius *= (-1) ** (k - 1) * factorial(k - 1)
                    for piece in pieces:
                        for v in piece:
                            labels[v] = next_label
                        next_label += 1
                row = sum(labels[n + k] * t ** (k - 1) for k in range(1, m + 1))
                col = sum(labels[k] * t ** (k - 1) for k in range(1, n + 1))
                value += mobius * matrix.get(row, col)
            if value:
                coefficients[d] = value
        return coefficients

    @staticmethod
    def interpolate_element(
        oracle: Callable[[int], SparseMatrix], m: int, n: int, t_list: Sequence[int]
    ) -> AlgebraElement:
        """
        Recover the generic morphism n -> m whose Schur-Weyl matrices match the
        oracle.

        The polynomial degree bound starts at 1 and doubles; each candidate is
        validated against held-out values of t.

        Raises:
            InterpolationError: If the oracle is not in the diagram span or the
                degree bound cannot be certified with the points given
        """
        from services.schurweyl_service import SchurWeylService

        points = sorted(t for t in set(t_list) if t >= m + n)
        extra = settings.interpolation_extra_points
        samples: Dict[int, Dict[PartitionDiagram, Fraction]] = {}

        def sample(t: int) -> Dict[PartitionDiagram, Fraction]:
            if t not in samples:
                matrix = oracle(t)
                coefficients = AlgebraService.diagram_coefficients_at(matrix, m, n, t)
                rebuilt = SchurWeylService.psi_element(
                    AlgebraElement(m, n, coefficients, Fraction(t)), t
                )
                if rebuilt != matrix:
                    raise InterpolationError(f"Oracle matrix at t={t} is not in the diagram span")
                samples[t] = coefficients
            return samples[t]

        degree = 1
        while degree <= settings.interpolation_max_degree:
            if len(points) < degree + 1 + extra:
                raise InterpolationError(
                    f"Degree bound {degree} needs {degree + 1 + extra} values of t >= {m + n}, "
                    f"got {len(points)}"
                )
            fit, held = points[: degree + 1], points[degree + 1: degree + 1 + extra]
            support = set()
            for t in fit + held:
                support.update(sample(t))
            terms = {
                d: Poly.interpolate([(t, sample(t).get(d, 0)) for t in fit]) for d in support
            }
            candidate = AlgebraElement(m, n, terms)
            if all(
                AlgebraService.specialize(candidate, Fraction(t)).terms == sample(t) for t in held
            ):
                logger.info(f"Interpolated {m} x {n} element at degree bound {degree}")
                return candidate
            degree *= 2
        raise InterpolationError(
            f"Degree bound exceeded {settings.interpolation_max_degree}; retry with more points"
        )

    # -- text ---------------------------------------------------------------

    @staticmethod
    def parse_element(text: str, t: Optional[Fraction] = None) -> AlgebraElement:
        """
        Parse the printed form: one `diagram * coefficient` per line, or
        `m x n : 0` for zero.

        Raises:
            ParseError: On malformed lines or mixed arities
        """
        lines = [line.strip() for line in (text or "").splitlines() if line.strip()]
        if not lines:
            raise ParseError("Empty element text")
        if len(lines) == 1 and lines[0].replace(" ", "").endswith(":0"):
            head = lines[0].split(":")[0]
            try:
                m, n = (int(x) for x in head.split("x"))
            except ValueError:
                raise ParseError(f"Bad zero element {lines[0]!r}")
            return AlgebraElement.zero(m, n, t)
        terms: Dict[PartitionDiagram, Coefficient] = {}
        shape = None
        for line in lines:
            if "*" not in line:
                raise ParseError(f"Expected 'diagram * coefficient', got {line!r}")
            diagram_text, coeff_text = line.split("*", 1)
            d = PartitionDiagram.parse(diagram_text)
            coeff = Poly.parse(coeff_text) if t is None else parse_rational(coeff_text)
            if shape is not None and shape != (d.m, d.n):
                raise ParseError("All terms of an element must share one shape")
            shape = (d.m, d.n)
            terms[d] = terms[d] + coeff if d in terms else coeff
        return AlgebraElement(shape[0], shape[1], terms, t)


# -- recurrences on the minimal number of strands ------------------------------
#
# Each element is built in P_j (dots) or P_{k+1} (crossings) and cached; the
# public methods embed it on the low strands of P_n. The dot recurrences move
# from strand i to strand i + 1 through five-term relations in the layers
# P (crossing of i, i+1), M (merge of i, i+1) and S (split back into i, i+1):
#
#   x_{i+1}^L = P x_i^L P + s_i^R + S x_i^L M - P x_i^L S M - S M x_i^L P
#   x_{i+1}^R = P x_i^R P + x_i^L S M + S M x_i^L - S x_i^R M - s_i^L
#
# where x_i on the merged strand lives in P_i and elsewhere in P_{i+1}.


def _element(d: PartitionDiagram, coeff=1) -> AlgebraElement:
    return AlgebraElement.from_diagram(d, coeff)


def _up(x: AlgebraElement) -> AlgebraElement:
    return AlgebraService.embed(x, x.n + 1)


def _layers(j: int) -> Tuple[AlgebraElement, AlgebraElement, AlgebraElement]:
    """Crossing, merge and split of strands j-1 and j, on j strands."""
    i = j - 1
    return (
        _element(crossing_i(j, i)),
        _element(merge_i(j, i)),
        _element(split_i(j - 1, i)),
    )


@lru_cache(maxsize=None)
def _left_dot(j: int) -> AlgebraElement:
    if j == 1:
        return _element(double_leaf_i(1, 1))
    i = j - 1
    p, m, s = _layers(j)
    x = _up(_left_dot(i))
    return (
        p * x * p
        + _right_cross(i)
        + s * _left_dot(i) * m
        - p * x * s * m
        - s * m * x * p
    )


@lru_cache(maxsize=None)
def _right_dot(j: int) -> AlgebraElement:
    if j == 1:
        return AlgebraElement.generic_parameter(1)
    i = j - 1
    p, m, s = _layers(j)
    xl, xr = _up(_left_dot(i)), _up(_right_dot(i))
    return (
        p * xr * p
        + xl * s * m
        + s * m * xl
        - s * _right_dot(i) * m
        - _left_cross(i)
    )


@lru_cache(maxsize=None)
def _right_cross(k: int) -> AlgebraElement:
    if k == 1:
        return _element(transposition(2, 1, 2))
    i = k - 1
    n = k + 1
    # conjugate by the strand permutation i -> i+1 -> i+2 -> i
    shift = list(range(1, n + 1))
    shift[i - 1], shift[i], shift[i + 1] = i + 1, i + 2, i
    inverse = [0] * n
    for a, b in enumerate(shift, start=1):
        inverse[b - 1] = a
    conjugated = (
        _element(permutation_diagram(shift))
        * _up(_right_cross(i))
        * _element(permutation_diagram(inverse))
    )
    one = AlgebraElement.identity(n)
    relabel = (
        one
        + (_element(copy_strand(n, i + 2, i)) - one) * _element(equalizer(n, i, i + 1))
        + (_element(copy_strand(n, i + 1, i)) - one) * _element(equalizer(n, i, i + 2))
    )
    return relabel * conjugated


@lru_cache(maxsize=None)
def _left_cross(k: int) -> AlgebraElement:
    if k == 1:
        return AlgebraElement.identity(2)
    return _element(transposition(k + 1, k, k + 1)) * _right_cross(k)
