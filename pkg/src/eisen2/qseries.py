"""Truncated formal power series in q over exact rationals.

A ``QSeries`` keeps coefficients c_0..c_N for a fixed truncation order N.
Every binary operation truncates to the smaller order of its operands, so a
result never claims more precision than was computed.  Equality compares
coefficients on the common range only.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

__all__ = [
    "QSeries",
    "ZeroConstantTerm",
    "qs_det",
    "first_difference",
    "rational_str",
]

Scalar = Union[int, Fraction]


class ZeroConstantTerm(ZeroDivisionError):
    """Raised when inverting a series whose constant term vanishes."""


def rational_str(x: Fraction) -> str:
    """Render an exact rational as "p/q", or just "p" when q = 1."""
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def _as_fraction_tuple(coeffs: Iterable[Scalar]) -> tuple[Fraction, ...]:
    return tuple(c if isinstance(c, Fraction) else Fraction(c) for c in coeffs)


class QSeries:
    """Power series sum c_n q^n truncated at a fixed order."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Scalar]):
        self.coeffs = _as_fraction_tuple(coeffs)
        if not self.coeffs:
            raise ValueError("a series needs at least the constant coefficient")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, order: int) -> "QSeries":
        return cls([Fraction(0)] * (order + 1))

    @classmethod
    def one(cls, order: int) -> "QSeries":
        return cls([Fraction(1)] + [Fraction(0)] * order)

    @classmethod
    def from_terms(cls, terms: dict[int, Scalar], order: int) -> "QSeries":
        """Series with the given sparse exponent -> coefficient terms."""
        coeffs = [Fraction(0)] * (order + 1)
        for n, c in terms.items():
            if 0 <= n <= order:
                coeffs[n] = Fraction(c)
        return cls(coeffs)

    # -- basic protocol ----------------------------------------------------

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def coefficient(self, n: int) -> Fraction:
        if not 0 <= n <= self.order:
            raise IndexError(f"coefficient {n} beyond truncation order {self.order}")
        return self.coeffs[n]

    def __getitem__(self, n: int) -> Fraction:
        return self.coefficient(n)

    def truncate(self, order: int) -> "QSeries":
        if order >= self.order:
            return self
        return QSeries(self.coeffs[: order + 1])

    def __eq__(self, other: object) -> bool:
        # comparable only on the common range of the two truncations
        if not isinstance(other, QSeries):
            return NotImplemented
        n = min(self.order, other.order)
        return self.coeffs[: n + 1] == other.coeffs[: n + 1]

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        shown = ", ".join(rational_str(c) for c in self.coeffs[:8])
        tail = ", ..." if self.order >= 8 else ""
        return f"QSeries(order={self.order}; {shown}{tail})"

    def to_strings(self) -> list[str]:
        """Coefficients as exact-rational strings, the export wire format."""
        return [rational_str(c) for c in self.coeffs]

    # -- ring operations ---------------------------------------------------

    def __add__(self, other: "QSeries") -> "QSeries":
        if not isinstance(other, QSeries):
            return NotImplemented
        n = min(self.order, other.order)
        return QSeries([self.coeffs[i] + other.coeffs[i] for i in range(n + 1)])

    def __sub__(self, other: "QSeries") -> "QSeries":
        if not isinstance(other, QSeries):
            return NotImplemented
        n = min(self.order, other.order)
        return QSeries([self.coeffs[i] - other.coeffs[i] for i in range(n + 1)])

    def __neg__(self) -> "QSeries":
        return QSeries([-c for c in self.coeffs])

    def scale(self, c: Scalar) -> "QSeries":
        c = Fraction(c)
        return QSeries([c * x for x in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, QSeries):
            return self._mul_series(other)
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def _mul_series(self, other: "QSeries") -> "QSeries":
        n = min(self.order, other.order)
        a, b = self.coeffs, other.coeffs
        # integer fast path: series built from divisor sums and eta products
        # have denominator 1 throughout, and plain int convolution is much
        # cheaper than Fraction convolution at order ~1000
        if all(c.denominator == 1 for c in a[: n + 1]) and all(
            c.denominator == 1 for c in b[: n + 1]
        ):
            ai = [c.numerator for c in a[: n + 1]]
            bi = [c.numerator for c in b[: n + 1]]
            out = [0] * (n + 1)
            for i, ci in enumerate(ai):
                if ci:
                    for j in range(n - i + 1):
                        out[i + j] += ci * bi[j]
            return QSeries([Fraction(c) for c in out])
        out_f = [Fraction(0)] * (n + 1)
        for i in range(n + 1):
            ci = a[i]
            if ci:
                for j in range(n - i + 1):
                    out_f[i + j] += ci * b[j]
        return QSeries(out_f)

    def __pow__(self, e: int) -> "QSeries":
        if e < 0:
            raise ValueError("negative powers are not defined; invert first")
        result = QSeries.one(self.order)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    # -- the named operators -----------------------------------------------

    def theta(self) -> "QSeries":
        """The operator q d/dq: c_n -> n c_n."""
        return QSeries([n * c for n, c in enumerate(self.coeffs)])

    def invert(self) -> "QSeries":
        """Multiplicative inverse up to the truncation order.

        Triangular recursion b_0 = 1/a_0, b_n = -(1/a_0) sum a_j b_{n-j}.
        """
        a = self.coeffs
        if a[0] == 0:
            raise ZeroConstantTerm("cannot invert a series with zero constant term")
        inv0 = 1 / a[0]
        b = [inv0]
        for n in range(1, self.order + 1):
            s = sum(a[j] * b[n - j] for j in range(1, n + 1) if a[j])
            b.append(-inv0 * s)
        return QSeries(b)

    def neg_q(self) -> "QSeries":
        """Substitute q -> -q: c_n -> (-1)^n c_n."""
        return QSeries([-c if n % 2 else c for n, c in enumerate(self.coeffs)])


def qs_det(matrix: Sequence[Sequence[QSeries]]) -> QSeries:
    """Determinant of a square matrix of series, by cofactor expansion.

    Intended for the small (n <= 3) matrices of the determinant identities;
    the result is truncated to the smallest order among the entries.
    """
    n = len(matrix)
    if n == 0 or any(len(row) != n for row in matrix):
        raise ValueError("determinant needs a nonempty square matrix")
    if n == 1:
        return matrix[0][0]
    order = min(entry.order for row in matrix for entry in row)
    total = QSeries.zero(order)
    for j in range(n):
        minor = [[row[c] for c in range(n) if c != j] for row in matrix[1:]]
        term = matrix[0][j] * qs_det(minor)
        total = total - term if j % 2 else total + term
    return total


def first_difference(
    a: QSeries, b: QSeries
) -> Optional[tuple[int, Fraction, Fraction]]:
    """First exponent where two series disagree on their common range.

    Returns (n, a_n, b_n), or None when they agree everywhere compared.
    """
    n = min(a.order, b.order)
    for i in range(n + 1):
        if a.coeffs[i] != b.coeffs[i]:
            return i, a.coeffs[i], b.coeffs[i]
    return None
