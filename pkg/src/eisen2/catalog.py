"""Constructors for the named q-series: E_{2k}, E*_{2k}, delta, theta3, C, D.

Level 1 series use the classical divisor sums, level 2 series the signed
ones.  Constant terms are hard-coded to 1 (or 0 for the cusp forms); the
normalizing constants multiply the divisor-sum tables directly.  The
discriminant and the quotient series carry built-in cross-checks between
independent construction routes.
"""

from __future__ import annotations

import threading
from fractions import Fraction
from math import comb, isqrt

from . import arith
from .qseries import QSeries, first_difference
from .scalars import bernoulli

__all__ = [
    "CrossCheckMismatch",
    "SeriesCatalog",
    "level1_constant",
    "level2_constant",
    "eisenstein_level1",
    "eisenstein_level2",
    "discriminant",
    "theta3",
    "series_C",
    "series_D",
]


class CrossCheckMismatch(ArithmeticError):
    """Two independent routes to the same series disagreed."""

    def __init__(self, name: str, exponent: int, route_a: str, route_b: str,
                 lhs: Fraction, rhs: Fraction):
        self.name = name
        self.exponent = exponent
        self.routes = (route_a, route_b)
        self.values = (lhs, rhs)
        super().__init__(
            f"{name}: routes {route_a!r} and {route_b!r} disagree at q^{exponent}: "
            f"{lhs} != {rhs}"
        )


def level1_constant(k: int) -> Fraction:
    """Coefficient -4k/B_{2k} multiplying sum sigma_{2k-1}(n) q^n."""
    return Fraction(-4 * k) / bernoulli(2 * k)


def level2_constant(k: int) -> Fraction:
    """Coefficient -(1/(1-2^(2k))) * 4k/B_{2k} of the signed divisor sums."""
    return Fraction(-1, 1 - 2 ** (2 * k)) * Fraction(4 * k) / bernoulli(2 * k)


def _eta24(order: int) -> list[int]:
    """Integer coefficients of prod_{n>=1} (1-q^n)^24 up to the order.

    Each sparse factor (1-q^n)^24 is folded in place, descending in the
    exponent so lower coefficients are still unmodified when read.
    """
    prod = [0] * (order + 1)
    prod[0] = 1
    for n in range(1, order + 1):
        jmax = min(24, order // n)
        terms = [((-1) ** j * comb(24, j), j * n) for j in range(1, jmax + 1)]
        for i in range(order, n - 1, -1):
            acc = prod[i]
            for c, shift in terms:
                if shift > i:
                    break
                acc += c * prod[i - shift]
            prod[i] = acc
    return prod


class SeriesCatalog:
    """Memoized named series at a fixed truncation order.

    Construction is single-threaded; a finished catalog is immutable in
    practice and safe to share across concurrent checks.
    """

    def __init__(self, order: int):
        if order < 0:
            raise ValueError("order must be nonnegative")
        self.order = order
        self._cache: dict[str, QSeries] = {}
        self._lock = threading.RLock()

    def _memo(self, key: str, build) -> QSeries:
        # serialize lazy construction so concurrent checks share one build
        with self._lock:
            series = self._cache.get(key)
            if series is None:
                series = build()
                self._cache[key] = series
            return series

    def level1(self, k: int) -> QSeries:
        """E_{2k} = 1 - (4k/B_{2k}) sum sigma_{2k-1}(n) q^n; E_0 = 1."""
        if k < 0:
            raise ValueError("k must be nonnegative")
        if k == 0:
            return QSeries.one(self.order)

        def build() -> QSeries:
            c = level1_constant(k)
            s = 2 * k - 1
            coeffs = [Fraction(1)]
            coeffs += [c * arith.sigma(s, n) for n in range(1, self.order + 1)]
            return QSeries(coeffs)

        return self._memo(f"E{2 * k}", build)

    def level2(self, k: int) -> QSeries:
        """E*_{2k} from the signed divisor sums; E*_0 = 1."""
        if k < 0:
            raise ValueError("k must be nonnegative")
        if k == 0:
            return QSeries.one(self.order)

        def build() -> QSeries:
            c = level2_constant(k)
            s = 2 * k - 1
            coeffs = [Fraction(1)]
            coeffs += [c * arith.sigma_star(s, n) for n in range(1, self.order + 1)]
            return QSeries(coeffs)

        return self._memo(f"E{2 * k}star", build)

    def delta(self) -> QSeries:
        """The discriminant cusp form, built three ways and cross-checked.

        Routes: the eta product q prod (1-q^n)^24, the level-1 expression
        (E_4^3 - E_6^2)/1728, and the level-2 expression -(E*_4^3 - E*_6^2)/64.
        """

        def build() -> QSeries:
            eta_route = QSeries([0] + _eta24(self.order)[: self.order])
            e4, e6 = self.level1(2), self.level1(3)
            level1_route = (e4**3 - e6**2).scale(Fraction(1, 1728))
            b, bstar6 = self.level2(2), self.level2(3)
            level2_route = (b**3 - bstar6**2).scale(Fraction(-1, 64))
            for other, label in ((level1_route, "(E4^3-E6^2)/1728"),
                                 (level2_route, "-(E4*^3-E6*^2)/64")):
                diff = first_difference(eta_route, other)
                if diff is not None:
                    raise CrossCheckMismatch("delta", diff[0], "eta product",
                                             label, diff[1], diff[2])
            return eta_route

        return self._memo("delta", build)

    def theta3(self) -> QSeries:
        """Square-counting theta series: 1 + 2 sum_{m>=1} q^(m^2)."""

        def build() -> QSeries:
            terms = {0: 1}
            for m in range(1, isqrt(self.order) + 1):
                terms[m * m] = 2
            return QSeries.from_terms(terms, self.order)

        return self._memo("theta3", build)

    def C(self) -> QSeries:
        """The weight-2 quotient E*_6/E*_4, cross-checked against odd divisor sums."""

        def build() -> QSeries:
            series = self.level2(3) * self.level2(2).invert()
            expected = QSeries(
                [Fraction(1)]
                + [24 * arith.sigma_sharp(n) for n in range(1, self.order + 1)]
            )
            diff = first_difference(series, expected)
            if diff is not None:
                raise CrossCheckMismatch("C", diff[0], "E6*/E4*",
                                         "1+24*sum sharp(n) q^n", diff[1], diff[2])
            return series

        return self._memo("C", build)

    def D(self) -> QSeries:
        """The weight-4 form -(E*_4 - C^2)/64, whose coefficients count
        ordered sums of 8 triangular numbers; checked against enumeration."""

        def build() -> QSeries:
            c = self.C()
            series = (self.level2(2) - c * c).scale(Fraction(-1, 64))
            for n in range(min(50, self.order - 1) + 1):
                expected = Fraction(arith.delta8_oracle(n))
                if series.coeffs[n + 1] != expected:
                    raise CrossCheckMismatch("D", n + 1, "-(E4*-C^2)/64",
                                             "triangular-number count",
                                             series.coeffs[n + 1], expected)
            return series

        return self._memo("D", build)

    def by_name(self, name: str) -> QSeries:
        """Resolve a series by its export name, e.g. "E4", "E10star", "D"."""
        if name == "delta":
            return self.delta()
        if name == "theta3":
            return self.theta3()
        if name == "C":
            return self.C()
        if name == "D":
            return self.D()
        if name.startswith("E"):
            body = name[1:]
            star = body.endswith("star")
            if star:
                body = body[: -len("star")]
            if body.isdigit() and int(body) % 2 == 0:
                k = int(body) // 2
                return self.level2(k) if star else self.level1(k)
        raise KeyError(f"unknown series name {name!r}")


# module-level convenience wrappers with (name, order) memoization: a shared
# catalog grows to the largest order requested and truncates for smaller ones
_shared: SeriesCatalog | None = None


def _catalog(order: int) -> SeriesCatalog:
    global _shared
    if _shared is None or _shared.order < order:
        _shared = SeriesCatalog(order)
    return _shared


def eisenstein_level1(k: int, order: int) -> QSeries:
    return _catalog(order).level1(k).truncate(order)


def eisenstein_level2(k: int, order: int) -> QSeries:
    return _catalog(order).level2(k).truncate(order)


def discriminant(order: int) -> QSeries:
    return _catalog(order).delta().truncate(order)


def theta3(order: int) -> QSeries:
    return _catalog(order).theta3().truncate(order)


def series_C(order: int) -> QSeries:
    return _catalog(order).C().truncate(order)


def series_D(order: int) -> QSeries:
    return _catalog(order).D().truncate(order)
