"""2x2 matrices over a commutative ring, and truncated matrix power series.

The entry type is duck-typed: anything supporting ``+``, ``-`` and ``*``
(polynomials, rationals, Laurent series) works.  ``MatrixSeries`` holds a
truncated series in the spectral parameter, either ascending in it or
ascending in its inverse.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import List, Sequence

from .poly import Polynomial, ZERO


class Direction(Enum):
    ASCENDING = "lambda"            # coefficients of lambda^0, lambda^1, ...
    ASCENDING_INVERSE = "lambda^-1"  # coefficients of lambda^0, lambda^-1, ...


@dataclass(frozen=True)
class Matrix2:
    e11: object
    e12: object
    e21: object
    e22: object

    def __add__(self, other: "Matrix2") -> "Matrix2":
        return Matrix2(self.e11 + other.e11, self.e12 + other.e12,
                       self.e21 + other.e21, self.e22 + other.e22)

    def __sub__(self, other: "Matrix2") -> "Matrix2":
        return Matrix2(self.e11 - other.e11, self.e12 - other.e12,
                       self.e21 - other.e21, self.e22 - other.e22)

    def __neg__(self) -> "Matrix2":
        return Matrix2(-self.e11, -self.e12, -self.e21, -self.e22)

    def __matmul__(self, other: "Matrix2") -> "Matrix2":
        return Matrix2(
            self.e11 * other.e11 + self.e12 * other.e21,
            self.e11 * other.e12 + self.e12 * other.e22,
            self.e21 * other.e11 + self.e22 * other.e21,
            self.e21 * other.e12 + self.e22 * other.e22,
        )

    def scale(self, factor) -> "Matrix2":
        return Matrix2(self.e11 * factor, self.e12 * factor,
                       self.e21 * factor, self.e22 * factor)

    def trace(self):
        return self.e11 + self.e22

    def det(self):
        return self.e11 * self.e22 - self.e12 * self.e21

    def entries(self) -> tuple:
        return (self.e11, self.e12, self.e21, self.e22)

    def is_zero(self) -> bool:
        return not any(self.entries())

    @staticmethod
    def zeros() -> "Matrix2":
        return Matrix2(ZERO, ZERO, ZERO, ZERO)

    @staticmethod
    def identity() -> "Matrix2":
        one = Polynomial.const(1)
        return Matrix2(one, ZERO, ZERO, one)

    def map(self, fn) -> "Matrix2":
        return Matrix2(fn(self.e11), fn(self.e12), fn(self.e21), fn(self.e22))


class MatrixSeries:
    """Truncated power series with Matrix2 coefficients.

    ``coeffs[p]`` is the coefficient of ``lambda^p`` (ASCENDING) or
    ``lambda^-p`` (ASCENDING_INVERSE).  Binary operations require equal
    directions and truncate to the shorter operand.
    """

    def __init__(self, direction: Direction, coeffs: Sequence[Matrix2]):
        self.direction = direction
        self.coeffs: List[Matrix2] = list(coeffs)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def coeff(self, p: int) -> Matrix2:
        if 0 <= p <= self.order:
            return self.coeffs[p]
        return Matrix2.zeros()

    def _check(self, other: "MatrixSeries") -> None:
        if self.direction is not other.direction:
            raise ValueError("direction mismatch between matrix series")

    def __add__(self, other: "MatrixSeries") -> "MatrixSeries":
        self._check(other)
        n = min(self.order, other.order)
        return MatrixSeries(self.direction,
                            [self.coeffs[p] + other.coeffs[p] for p in range(n + 1)])

    def __sub__(self, other: "MatrixSeries") -> "MatrixSeries":
        self._check(other)
        n = min(self.order, other.order)
        return MatrixSeries(self.direction,
                            [self.coeffs[p] - other.coeffs[p] for p in range(n + 1)])

    def __matmul__(self, other: "MatrixSeries") -> "MatrixSeries":
        """Truncated Cauchy product; order = min of the operand orders."""
        self._check(other)
        n = min(self.order, other.order)
        out = []
        for p in range(n + 1):
            acc = Matrix2.zeros()
            for j in range(p + 1):
                acc = acc + (self.coeffs[j] @ other.coeffs[p - j])
            out.append(acc)
        return MatrixSeries(self.direction, out)

    def truncate(self, order: int) -> "MatrixSeries":
        return MatrixSeries(self.direction, self.coeffs[: order + 1])

    def map(self, fn) -> "MatrixSeries":
        return MatrixSeries(self.direction, [m.map(fn) for m in self.coeffs])

    @staticmethod
    def identity(direction: Direction, order: int) -> "MatrixSeries":
        coeffs = [Matrix2.identity()] + [Matrix2.zeros() for _ in range(order)]
        return MatrixSeries(direction, coeffs)

    @staticmethod
    def zero(direction: Direction, order: int) -> "MatrixSeries":
        return MatrixSeries(direction, [Matrix2.zeros() for _ in range(order + 1)])
