"""
Exact service - alpha series and their ratios.

alpha_a(u) = (u - (a+1))(u - (a-1)) / (u - a)^2 = 1 - (u - a)^{-2}, expanded in u^{-1}.
"""
from fractions import Fraction
from typing import Any

from models.exact import TruncSeries
from utils.logger import get_logger

logger = get_logger("exact_service")


def ring_one(a: Any) -> Any:
    """Multiplicative identity of the ring containing `a`."""
    if isinstance(a, (int, Fraction)):
        return Fraction(1)
    return a.one()


class ExactService:
    """Series over an arbitrary commutative ring."""

    @staticmethod
    def alpha_series(a: Any, order: int) -> TruncSeries:
        """
        Expand alpha_a(u) to the given order.

        Coefficient k is -(k-1) a^{k-2} for k >= 2, so the series starts
        1, 0, -1, -2a, -3a^2, ...

        Args:
            a: Ring element (Fraction, Poly, or a commuting AlgebraElement)
            order: Truncation order N

        Returns:
            TruncSeries with N+1 coefficients
        """
        if order < 0:
            raise ValueError("Series order must be nonnegative")
        one = ring_one(a)
        zero = one * 0
        coefficients = [one]
        if order >= 1:
            coefficients.append(zero)
        power = one
        for k in range(2, order + 1):
            coefficients.append(power * (-(k - 1)))
            power = power * a
        return TruncSeries(coefficients)

    @staticmethod
    def alpha_series_inverse(a: Any, order: int) -> TruncSeries:
        """1/alpha_a(u), starting 1, 0, 1, 2a, 3a^2 + 1, ..."""
        return ExactService.alpha_series(a, order).inverse()

    @staticmethod
    def series_ratio_alpha(x: Any, y: Any, order: int) -> TruncSeries:
        """
        Expand alpha_y(u) / alpha_x(u).

        x and y must commute. The series starts 1, 0, 0, 2(x-y), 3(x^2-y^2).
        """
        ratio = ExactService.alpha_series(y, order) * ExactService.alpha_series_inverse(x, order)
        logger.debug(f"Expanded alpha ratio to order {order}")
        return ratio
