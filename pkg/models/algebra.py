"""
Algebra element models - linear combinations of diagrams and of permutations.

Coefficients live in Q[T] (generic, `t is None`) or in Q (specialized at a
rational t). Zero coefficients are never stored.
"""
from fractions import Fraction
from typing import Any, Dict, Iterable, Optional, Tuple, Union

from models.diagram import PartitionDiagram, identity_diagram
from models.exact import Poly, as_rational
from utils.exceptions import ArityError, SeriesInversionError
from utils.validators import format_rational

Coefficient = Union[Fraction, Poly]
Permutation = Tuple[int, ...]


def _ring_label(t: Optional[Fraction]) -> str:
    return "Q[T]" if t is None else f"Q (t = {format_rational(t)})"


def coerce_coefficient(value: Any, t: Optional[Fraction]) -> Coefficient:
    """Bring an int, Fraction or Poly into the coefficient ring selected by t."""
    if t is None:
        return value if isinstance(value, Poly) else Poly.constant(value)
    if isinstance(value, Poly):
        return value.evaluate(t)
    return as_rational(value)


def format_coefficient(c: Coefficient) -> str:
    return str(c) if isinstance(c, Poly) else format_rational(c)


class _LinearCombination:
    """Shared bookkeeping for finitely supported maps into the coefficient ring."""

    __slots__ = ("terms", "t")

    def __init__(self, terms: Dict[Any, Any], t: Optional[Fraction]):
        self.t = None if t is None else as_rational(t)
        pruned = {}
        for key, value in terms.items():
            c = coerce_coefficient(value, self.t)
            if c:
                pruned[key] = c
        self.terms = pruned

    def _zero(self) -> Coefficient:
        return Poly() if self.t is None else Fraction(0)

    def coefficient(self, key: Any) -> Coefficient:
        return self.terms.get(key, self._zero())

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def _check_ring(self, other: "_LinearCombination") -> None:
        if self.t != other.t:
            raise ArityError(
                f"Coefficient rings differ: {_ring_label(self.t)} vs {_ring_label(other.t)}"
            )

    def _combine(self, other: "_LinearCombination", sign: int) -> Dict[Any, Any]:
        self._check_ring(other)
        out = dict(self.terms)
        for key, value in other.terms.items():
            out[key] = out.get(key, self._zero()) + value * sign
        return out

    def _scaled(self, scalar: Any) -> Dict[Any, Any]:
        s = coerce_coefficient(scalar, self.t)
        return {key: value * s for key, value in self.terms.items()}


class AlgebraElement(_LinearCombination):
    """
    Morphism n -> m of the partition category: a finitely supported map from
    m x n diagrams to coefficients.
    """

    __slots__ = ("m", "n")

    def __init__(
        self,
        m: int,
        n: int,
        terms: Optional[Dict[PartitionDiagram, Any]] = None,
        t: Optional[Fraction] = None,
    ):
        terms = terms or {}
        for d in terms:
            if (d.m, d.n) != (m, n):
                raise ArityError(f"Diagram {d} does not belong to Hom({n}, {m})")
        self.m = m
        self.n = n
        super().__init__(terms, t)

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, m: int, n: int, t: Optional[Fraction] = None) -> "AlgebraElement":
        return cls(m, n, {}, t)

    @classmethod
    def from_diagram(
        cls, d: PartitionDiagram, coeff: Any = 1, t: Optional[Fraction] = None
    ) -> "AlgebraElement":
        return cls(d.m, d.n, {d: coeff}, t)

    @classmethod
    def identity(cls, n: int, t: Optional[Fraction] = None) -> "AlgebraElement":
        return cls.from_diagram(identity_diagram(n), 1, t)

    @classmethod
    def generic_parameter(cls, n: int) -> "AlgebraElement":
        """T times the identity of n."""
        return cls.from_diagram(identity_diagram(n), Poly.T(), None)

    def one(self) -> "AlgebraElement":
        if self.m != self.n:
            raise ArityError(f"Hom({self.n}, {self.m}) has no identity")
        return AlgebraElement.identity(self.n, self.t)

    def loop_scalar(self, loops: int) -> Coefficient:
        """T^loops in Q[T], t^loops after specialization."""
        if self.t is None:
            return Poly.monomial(loops)
        return self.t ** loops

    # -- arithmetic ---------------------------------------------------------

    def _same_shape(self, other: "AlgebraElement") -> None:
        if (self.m, self.n) != (other.m, other.n):
            raise ArityError(
                f"Cannot add elements of Hom({self.n}, {self.m}) and Hom({other.n}, {other.m})"
            )

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        self._same_shape(other)
        return AlgebraElement(self.m, self.n, self._combine(other, 1), self.t)

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        self._same_shape(other)
        return AlgebraElement(self.m, self.n, self._combine(other, -1), self.t)

    def __neg__(self) -> "AlgebraElement":
        return AlgebraElement(self.m, self.n, self._scaled(-1), self.t)

    def __mul__(self, other: Any) -> "AlgebraElement":
        if isinstance(other, AlgebraElement):
            # Local import: the service depends on this model.
            from services.algebra_service import AlgebraService
            return AlgebraService.mul(self, other)
        if isinstance(other, (int, Fraction, Poly)):
            return AlgebraElement(self.m, self.n, self._scaled(other), self.t)
        return NotImplemented

    def __rmul__(self, other: Any) -> "AlgebraElement":
        if isinstance(other, (int, Fraction, Poly)):
            return AlgebraElement(self.m, self.n, self._scaled(other), self.t)
        return NotImplemented

    def __pow__(self, exponent: int) -> "AlgebraElement":
        result = self.one()
        for _ in range(exponent):
            result = result * self
        return result

    def __eq__(self, other: Any) -> bool:
        if isinstance(other, AlgebraElement):
            return (self.m, self.n, self.t, self.terms) == (other.m, other.n, other.t, other.terms)
        if isinstance(other, int) and other == 0:
            return not self.terms
        return NotImplemented

    __hash__ = None

    def unit_inverse(self) -> "AlgebraElement":
        """Inverse of an invertible scalar multiple of the identity."""
        if self.m == self.n and len(self.terms) == 1:
            (d, c), = self.terms.items()
            if d == identity_diagram(self.n):
                if isinstance(c, Poly):
                    return AlgebraElement(self.m, self.n, {d: c.unit_inverse()}, self.t)
                return AlgebraElement(self.m, self.n, {d: 1 / c}, self.t)
        raise SeriesInversionError("Only invertible scalar multiples of the identity are units here")

    # -- text ---------------------------------------------------------------

    def sorted_terms(self) -> Iterable[Tuple[PartitionDiagram, Coefficient]]:
        return sorted(self.terms.items(), key=lambda item: item[0])

    def __str__(self) -> str:
        if not self.terms:
            return f"{self.m} x {self.n} : 0"
        return "\n".join(f"{d} * {format_coefficient(c)}" for d, c in self.sorted_terms())

    def __repr__(self) -> str:
        return f"AlgebraElement({self.m} x {self.n}, {len(self.terms)} terms, {_ring_label(self.t)})"


class GroupAlgebraElement(_LinearCombination):
    """Element of the group algebra of S_n; permutations are image tuples."""

    __slots__ = ("n",)

    def __init__(self, n: int, terms: Optional[Dict[Permutation, Any]] = None, t: Optional[Fraction] = None):
        terms = terms or {}
        for g in terms:
            if sorted(g) != list(range(1, n + 1)):
                raise ArityError(f"{g} is not a permutation of 1..{n}")
        self.n = n
        super().__init__(terms, t)

    @classmethod
    def identity(cls, n: int, t: Optional[Fraction] = None) -> "GroupAlgebraElement":
        return cls(n, {tuple(range(1, n + 1)): 1}, t)

    @classmethod
    def jucys_murphy(cls, n: int, j: int, t: Optional[Fraction] = None) -> "GroupAlgebraElement":
        """Sum of the transpositions (i j) with i < j."""
        terms = {}
        for i in range(1, j):
            g = list(range(1, n + 1))
            g[i - 1], g[j - 1] = j, i
            terms[tuple(g)] = 1
        return cls(n, terms, t)

    def __add__(self, other: "GroupAlgebraElement") -> "GroupAlgebraElement":
        if not isinstance(other, GroupAlgebraElement):
            return NotImplemented
        return GroupAlgebraElement(self.n, self._combine(other, 1), self.t)

    def __sub__(self, other: "GroupAlgebraElement") -> "GroupAlgebraElement":
        if not isinstance(other, GroupAlgebraElement):
            return NotImplemented
        return GroupAlgebraElement(self.n, self._combine(other, -1), self.t)

    def __neg__(self) -> "GroupAlgebraElement":
        return GroupAlgebraElement(self.n, self._scaled(-1), self.t)

    def __mul__(self, other: Any) -> "GroupAlgebraElement":
        if isinstance(other, GroupAlgebraElement):
            self._check_ring(other)
            out: Dict[Permutation, Coefficient] = {}
            for g, a in self.terms.items():
                for h, b in other.terms.items():
                    gh = tuple(g[h[k] - 1] for k in range(self.n))
                    out[gh] = out.get(gh, self._zero()) + a * b
            return GroupAlgebraElement(self.n, out, self.t)
        if isinstance(other, (int, Fraction, Poly)):
            return GroupAlgebraElement(self.n, self._scaled(other), self.t)
        return NotImplemented

    def __rmul__(self, other: Any) -> "GroupAlgebraElement":
        if isinstance(other, (int, Fraction, Poly)):
            return GroupAlgebraElement(self.n, self._scaled(other), self.t)
        return NotImplemented

    def __eq__(self, other: Any) -> bool:
        if isinstance(other, GroupAlgebraElement):
            return (self.n, self.t, self.terms) == (other.n, other.t, other.terms)
        if isinstance(other, int) and other == 0:
            return not self.terms
        return NotImplemented

    __hash__ = None

    @staticmethod
    def format_permutation(g: Permutation) -> str:
        """Cycle notation; the identity prints as ()."""
        seen = set()
        cycles = []
        for start in range(1, len(g) + 1):
            if start in seen or g[start - 1] == start:
                continue
            cycle = [start]
            seen.add(start)
            nxt = g[start - 1]
            while nxt != start:
                cycle.append(nxt)
                seen.add(nxt)
                nxt = g[nxt - 1]
            cycles.append("(" + " ".join(map(str, cycle)) + ")")
        return "".join(cycles) or "()"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(
            f"{format_coefficient(c)}*{self.format_permutation(g)}"
            for g, c in sorted(self.terms.items())
        )

    def __repr__(self) -> str:
        return f"GroupAlgebraElement(S_{self.n}, {self})"
