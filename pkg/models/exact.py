"""
Exact scalars: rationals, univariate polynomials in the generic parameter T,
and truncated power series in u^{-1} over a commutative ring.

Rationals are `fractions.Fraction` throughout; they are always reduced with a
positive denominator.
"""
from __future__ import annotations

import re
from fractions import Fraction
from typing import Any, Iterable, List, Sequence, Tuple, Union

from utils.exceptions import ParseError, PolyDivisionError, SeriesInversionError
from utils.validators import format_rational

Rational = Fraction
Scalar = Union[int, Fraction]

_TERM_RE = re.compile(r"^(?:(\d+(?:/\d+)?)\*?)?(T(?:\^(\d+))?)?$")


def as_rational(value: Scalar) -> Fraction:
    """Coerce an int or Fraction into a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"Not an exact scalar: {value!r}")


class Poly:
    """
    Polynomial in T with rational coefficients.

    `coeffs[k]` is the coefficient of T^k; there is never a trailing zero, so the
    zero polynomial has no coefficients.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Scalar] = ()):
        values = [as_rational(c) for c in coeffs]
        while values and values[-1] == 0:
            values.pop()
        self.coeffs: Tuple[Fraction, ...] = tuple(values)

    # -- constructors -------------------------------------------------------

    @classmethod
    def constant(cls, c: Scalar) -> "Poly":
        return cls((c,))

    @classmethod
    def T(cls) -> "Poly":
        return cls((0, 1))

    @classmethod
    def monomial(cls, degree: int, c: Scalar = 1) -> "Poly":
        return cls([0] * degree + [c])

    def one(self) -> "Poly":
        return Poly((1,))

    def zero(self) -> "Poly":
        return Poly()

    # -- inspection ---------------------------------------------------------

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def constant_value(self) -> Fraction:
        return self.coeffs[0] if self.coeffs else Fraction(0)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other: Any) -> bool:
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == Poly.constant(other).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        if self.is_constant():
            return hash(self.constant_value())
        return hash(self.coeffs)

    # -- ring operations ----------------------------------------------------

    @staticmethod
    def _coerce(other: Any) -> "Poly":
        if isinstance(other, Poly):
            return other
        if isinstance(other, (int, Fraction)):
            return Poly.constant(other)
        raise TypeError(f"Cannot combine Poly with {type(other).__name__}")

    def __add__(self, other: Any) -> "Poly":
        if not isinstance(other, (Poly, int, Fraction)):
            return NotImplemented
        other = self._coerce(other)
        size = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (size - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (size - len(other.coeffs))
        return Poly(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly(-c for c in self.coeffs)

    def __sub__(self, other: Any) -> "Poly":
        if not isinstance(other, (Poly, int, Fraction)):
            return NotImplemented
        return self + (-self._coerce(other))

    def __rsub__(self, other: Any) -> "Poly":
        return self._coerce(other) - self

    def __mul__(self, other: Any) -> "Poly":
        if isinstance(other, (int, Fraction)):
            return Poly(c * other for c in self.coeffs)
        if not isinstance(other, Poly):
            return NotImplemented
        if not self.coeffs or not other.coeffs:
            return Poly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "Poly":
        if exponent < 0:
            raise PolyDivisionError("Negative powers leave Q[T]")
        result = Poly((1,))
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __truediv__(self, other: Any) -> "Poly":
        if isinstance(other, Poly):
            if not other.is_constant():
                raise PolyDivisionError(f"Division by nonconstant polynomial {other}")
            other = other.constant_value()
        other = as_rational(other)
        if other == 0:
            raise ZeroDivisionError("Division of a polynomial by zero")
        return Poly(c / other for c in self.coeffs)

    def unit_inverse(self) -> "Poly":
        """Inverse in Q[T]; only nonzero constants are units."""
        if not self.is_constant() or not self.coeffs:
            raise SeriesInversionError(f"{self} is not a unit of Q[T]")
        return Poly.constant(1 / self.constant_value())

    # -- evaluation ---------------------------------------------------------

    def evaluate(self, t: Scalar) -> Fraction:
        """Horner evaluation at T = t."""
        t = as_rational(t)
        value = Fraction(0)
        for c in reversed(self.coeffs):
            value = value * t + c
        return value

    __call__ = evaluate

    @classmethod
    def interpolate(cls, points: Sequence[Tuple[Scalar, Scalar]]) -> "Poly":
        """Lagrange interpolation through the given (t, value) points."""
        result = Poly()
        for i, (ti, vi) in enumerate(points):
            ti, vi = as_rational(ti), as_rational(vi)
            if vi == 0:
                continue
            basis = Poly((1,))
            denom = Fraction(1)
            for j, (tj, _) in enumerate(points):
                if j == i:
                    continue
                tj = as_rational(tj)
                basis = basis * Poly((-tj, 1))
                denom *= ti - tj
            result = result + basis * (vi / denom)
        return result

    # -- text ---------------------------------------------------------------

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        pieces: List[Tuple[str, str]] = []
        for degree in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[degree]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            magnitude = abs(c)
            if degree == 0:
                body = format_rational(magnitude)
            else:
                var = "T" if degree == 1 else f"T^{degree}"
                body = var if magnitude == 1 else f"{format_rational(magnitude)}*{var}"
            pieces.append((sign, body))
        first_sign, first_body = pieces[0]
        text = ("-" if first_sign == "-" else "") + first_body
        for sign, body in pieces[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self) -> str:
        return f"Poly({self})"

    @classmethod
    def parse(cls, text: str) -> "Poly":
        """
        Parse the printed form, e.g. "3/2*T^2 - T + 1".

        Raises:
            ParseError: If the text is not a polynomial in T
        """
        compact = (text or "").replace(" ", "")
        if not compact:
            raise ParseError("Empty polynomial text")
        if compact[0] not in "+-":
            compact = "+" + compact
        result = Poly()
        for sign, body in re.findall(r"([+-])([^+-]*)", compact):
            match = _TERM_RE.match(body)
            if not body or not match or (match.group(1) is None and match.group(2) is None):
                raise ParseError(f"Bad polynomial term {body!r} in {text!r}")
            coeff = Fraction(match.group(1)) if match.group(1) else Fraction(1)
            if match.group(2) is None:
                degree = 0
            else:
                degree = int(match.group(3)) if match.group(3) else 1
            if sign == "-":
                coeff = -coeff
            result = result + Poly.monomial(degree, coeff)
        return result


def poly_eval(p: Poly, t: Scalar) -> Fraction:
    """Evaluate p at T = t."""
    return p.evaluate(t)


def _ring_zero(sample: Any) -> Any:
    return sample * 0


def _unit_inverse(c: Any) -> Any:
    if isinstance(c, (int, Fraction)):
        if c == 0:
            raise SeriesInversionError("Constant term 0 is not invertible")
        return 1 / Fraction(c)
    if hasattr(c, "unit_inverse"):
        return c.unit_inverse()
    raise SeriesInversionError(f"Cannot invert constant term of type {type(c).__name__}")


class TruncSeries:
    """
    Power series in u^{-1} truncated at a fixed order N.

    `coefficients[k]` is the coefficient of u^{-k}, for k = 0..N. Coefficients
    live in any commutative ring whose elements support +, -, * and
    multiplication by the integer 0.
    """

    __slots__ = ("coefficients",)

    def __init__(self, coefficients: Sequence[Any]):
        if not coefficients:
            raise ValueError("A truncated series needs at least its constant term")
        self.coefficients: Tuple[Any, ...] = tuple(coefficients)

    @property
    def order(self) -> int:
        return len(self.coefficients) - 1

    def __getitem__(self, k: int) -> Any:
        return self.coefficients[k]

    def __len__(self) -> int:
        return len(self.coefficients)

    def _check_order(self, other: "TruncSeries") -> None:
        if other.order != self.order:
            raise ValueError(f"Series orders differ: {self.order} vs {other.order}")

    def __eq__(self, other: Any) -> bool:
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return self.coefficients == other.coefficients

    def __add__(self, other: "TruncSeries") -> "TruncSeries":
        self._check_order(other)
        return TruncSeries([a + b for a, b in zip(self.coefficients, other.coefficients)])

    def __sub__(self, other: "TruncSeries") -> "TruncSeries":
        self._check_order(other)
        return TruncSeries([a - b for a, b in zip(self.coefficients, other.coefficients)])

    def __mul__(self, other: "TruncSeries") -> "TruncSeries":
        self._check_order(other)
        zero = _ring_zero(self.coefficients[0])
        out = [zero] * len(self.coefficients)
        for i, a in enumerate(self.coefficients):
            if not a:
                continue
            for j in range(len(self.coefficients) - i):
                b = other.coefficients[j]
                if not b:
                    continue
                out[i + j] = out[i + j] + a * b
        return TruncSeries(out)

    def inverse(self) -> "TruncSeries":
        """
        Multiplicative inverse up to the same order.

        Raises:
            SeriesInversionError: If the constant term is not a unit
        """
        inv0 = _unit_inverse(self.coefficients[0])
        zero = _ring_zero(inv0)
        out = [inv0]
        for k in range(1, len(self.coefficients)):
            acc = zero
            for i in range(1, k + 1):
                a = self.coefficients[i]
                if not a:
                    continue
                acc = acc + a * out[k - i]
            out.append(zero - inv0 * acc if acc else zero)
        return TruncSeries(out)

    def map(self, fn) -> "TruncSeries":
        """Apply a ring homomorphism coefficient-wise."""
        return TruncSeries([fn(c) for c in self.coefficients])

    def __repr__(self) -> str:
        return f"TruncSeries({', '.join(str(c) for c in self.coefficients)})"
