"""Graded polynomial rings in the Eisenstein generators and their Serre derivatives.

Two rings: level 1 in E2, E4, E6 (weights 2, 4, 6) and level 2 in A, B, C
(weights 2, 4, 2) where A, B are the weight-2 and weight-4 level-2 series
and C is their weight-2 quotient partner E6*/E4*.  Modular forms of even
weight 2k on the level-2 group decompose over the monomial basis
B^j C^(k-2j), and that decomposition is computed by exact fraction-free
elimination.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .catalog import CrossCheckMismatch, SeriesCatalog
from .qseries import QSeries, first_difference, rational_str
from .scalars import ks_alpha, ks_coefficient

__all__ = [
    "LEVEL1",
    "LEVEL2",
    "GradedPoly",
    "BasisDecomposition",
    "RingMismatch",
    "NotHomogeneous",
    "SingularSystem",
    "ResidualMismatch",
    "serre_delta",
    "serre_partial",
    "gp_evaluate",
    "decompose_modular",
    "e_star_poly",
    "check_positivity",
]

LEVEL1 = "level1"
LEVEL2 = "level2"

_GENERATORS = {LEVEL1: ("E2", "E4", "E6"), LEVEL2: ("A", "B", "C")}
_WEIGHTS = {LEVEL1: (2, 4, 6), LEVEL2: (2, 4, 2)}

Exponents = tuple[int, int, int]


class RingMismatch(ValueError):
    """Operands live in different generator rings."""


class NotHomogeneous(ValueError):
    """A graded operation was applied to a non-homogeneous polynomial."""


class SingularSystem(ArithmeticError):
    """The basis matrix was not invertible; the basis is proven independent,
    so this signals an implementation bug rather than a math failure."""


class ResidualMismatch(ArithmeticError):
    """A claimed modular form failed verification past the solved window."""

    def __init__(self, exponent: int, lhs: Fraction, rhs: Fraction):
        self.exponent = exponent
        self.values = (lhs, rhs)
        super().__init__(
            f"decomposition residual fails at q^{exponent}: {lhs} != {rhs}"
        )


class GradedPoly:
    """Exact polynomial in three weighted generators."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: str, terms: Optional[dict[Exponents, Fraction]] = None):
        if ring not in _GENERATORS:
            raise ValueError(f"unknown ring {ring!r}")
        self.ring = ring
        clean: dict[Exponents, Fraction] = {}
        for exps, coeff in (terms or {}).items():
            coeff = Fraction(coeff)
            if coeff:
                clean[(int(exps[0]), int(exps[1]), int(exps[2]))] = coeff
        self.terms = clean

    @classmethod
    def zero(cls, ring: str) -> "GradedPoly":
        return cls(ring)

    @classmethod
    def monomial(cls, ring: str, exps: Exponents, coeff=1) -> "GradedPoly":
        return cls(ring, {tuple(exps): Fraction(coeff)})

    @classmethod
    def generator(cls, ring: str, name: str) -> "GradedPoly":
        idx = _GENERATORS[ring].index(name)
        exps = tuple(1 if i == idx else 0 for i in range(3))
        return cls(ring, {exps: Fraction(1)})

    # -- structure ----------------------------------------------------------

    def monomial_weight(self, exps: Exponents) -> int:
        w = _WEIGHTS[self.ring]
        return exps[0] * w[0] + exps[1] * w[1] + exps[2] * w[2]

    def is_zero(self) -> bool:
        return not self.terms

    def is_homogeneous(self) -> bool:
        weights = {self.monomial_weight(e) for e in self.terms}
        return len(weights) <= 1

    def weight(self) -> Optional[int]:
        """Common weight of all monomials; None for the zero polynomial."""
        weights = {self.monomial_weight(e) for e in self.terms}
        if not weights:
            return None
        if len(weights) > 1:
            raise NotHomogeneous(f"mixed weights {sorted(weights)}")
        return weights.pop()

    def sorted_terms(self) -> list[tuple[Exponents, Fraction]]:
        return sorted(self.terms.items())

    def to_records(self) -> list[tuple[int, int, int, str]]:
        """Serialization as sorted (a, b, c, "p/q") records."""
        return [(a, b, c, rational_str(v)) for (a, b, c), v in self.sorted_terms()]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GradedPoly):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        if not self.terms:
            return f"GradedPoly({self.ring}, 0)"
        names = _GENERATORS[self.ring]
        parts = []
        for exps, coeff in self.sorted_terms():
            mono = "*".join(
                f"{names[i]}^{e}" if e > 1 else names[i]
                for i, e in enumerate(exps) if e
            )
            parts.append(f"({rational_str(coeff)}){'*' + mono if mono else ''}")
        return f"GradedPoly({self.ring}, {' + '.join(parts)})"

    # -- arithmetic ----------------------------------------------------------

    def _check_ring(self, other: "GradedPoly") -> None:
        if self.ring != other.ring:
            raise RingMismatch(f"{self.ring} vs {other.ring}")

    def __add__(self, other: "GradedPoly") -> "GradedPoly":
        self._check_ring(other)
        terms = dict(self.terms)
        for exps, coeff in other.terms.items():
            terms[exps] = terms.get(exps, Fraction(0)) + coeff
        return GradedPoly(self.ring, terms)

    def __sub__(self, other: "GradedPoly") -> "GradedPoly":
        return self + (-other)

    def __neg__(self) -> "GradedPoly":
        return GradedPoly(self.ring, {e: -c for e, c in self.terms.items()})

    def scale(self, c) -> "GradedPoly":
        c = Fraction(c)
        return GradedPoly(self.ring, {e: c * v for e, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, GradedPoly):
            self._check_ring(other)
            terms: dict[Exponents, Fraction] = {}
            for (a1, b1, c1), v1 in self.terms.items():
                for (a2, b2, c2), v2 in other.terms.items():
                    key = (a1 + a2, b1 + b2, c1 + c2)
                    terms[key] = terms.get(key, Fraction(0)) + v1 * v2
            return GradedPoly(self.ring, terms)
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented


def _rule_table(ring: str) -> dict[int, GradedPoly]:
    # generator images under the weight-raising derivative:
    #   level 2:  A -> -(A^2+B)/4,   B -> -BC,      C -> -B/2
    #   level 1:  E2 -> -(E2^2+E4)/12, E4 -> -E6/3, E6 -> -E4^2/2
    if ring == LEVEL2:
        return {
            0: GradedPoly(ring, {(2, 0, 0): Fraction(-1, 4), (0, 1, 0): Fraction(-1, 4)}),
            1: GradedPoly(ring, {(0, 1, 1): Fraction(-1)}),
            2: GradedPoly(ring, {(0, 1, 0): Fraction(-1, 2)}),
        }
    return {
        0: GradedPoly(ring, {(2, 0, 0): Fraction(-1, 12), (0, 1, 0): Fraction(-1, 12)}),
        1: GradedPoly(ring, {(0, 0, 1): Fraction(-1, 3)}),
        2: GradedPoly(ring, {(0, 2, 0): Fraction(-1, 2)}),
    }


def _derive(f: GradedPoly, weight: Optional[int]) -> GradedPoly:
    if not f.is_homogeneous():
        raise NotHomogeneous("Serre derivative needs a homogeneous input")
    own = f.weight()
    if weight is not None and own is not None and own != weight:
        raise NotHomogeneous(f"stated weight {weight} but polynomial has weight {own}")
    rules = _rule_table(f.ring)
    result = GradedPoly.zero(f.ring)
    for exps, coeff in f.terms.items():
        for i in range(3):
            e = exps[i]
            if e:
                lowered = list(exps)
                lowered[i] = e - 1
                mono = GradedPoly.monomial(f.ring, tuple(lowered), coeff * e)
                result = result + mono * rules[i]
    return result


def serre_delta(f: GradedPoly, weight: Optional[int] = None) -> GradedPoly:
    """Level-2 Serre derivative q f' - (w/4) A f, via the generator rules."""
    if f.ring != LEVEL2:
        raise RingMismatch("serre_delta acts on the level-2 ring")
    return _derive(f, weight)


def serre_partial(f: GradedPoly, weight: Optional[int] = None) -> GradedPoly:
    """Level-1 Serre derivative q f' - (w/12) E2 f, via the generator rules."""
    if f.ring != LEVEL1:
        raise RingMismatch("serre_partial acts on the level-1 ring")
    return _derive(f, weight)


def gp_evaluate(f: GradedPoly, catalog: SeriesCatalog) -> QSeries:
    """Substitute the generator q-expansions and expand exactly."""
    if f.ring == LEVEL2:
        gens = (catalog.level2(1), catalog.level2(2), catalog.C())
    else:
        gens = (catalog.level1(1), catalog.level1(2), catalog.level1(3))
    total = QSeries.zero(catalog.order)
    for exps, coeff in f.sorted_terms():
        term = QSeries.one(catalog.order)
        for g, e in zip(gens, exps):
            if e:
                term = term * g**e
        total = total + term.scale(coeff)
    return total


@dataclass(frozen=True)
class BasisDecomposition:
    """Coordinates of a weight-2k modular form over the B^j C^(k-2j) basis.

    Coefficients are listed with the B-exponent j descending, matching the
    usual display order (B^(k//2) ... , B C^(k-2), C^k).
    """

    weight: int
    coefficients: tuple[Fraction, ...]

    def basis_exponents(self) -> list[Exponents]:
        k = self.weight // 2
        return [(0, j, k - 2 * j) for j in range(k // 2, -1, -1)]

    def as_poly(self) -> GradedPoly:
        terms = dict(zip(self.basis_exponents(), self.coefficients))
        return GradedPoly(LEVEL2, terms)

    def to_records(self) -> list[tuple[int, int, int, str]]:
        return self.as_poly().to_records()


def modular_dimension(weight: int) -> int:
    """dim of the weight-2k modular forms on the level-2 group: floor(2k/4)+1."""
    if weight < 2 or weight % 2:
        raise ValueError("weight must be a positive even integer")
    return weight // 4 + 1


def _solve_fraction_free(matrix: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction]:
    """Bareiss elimination with first-nonzero pivoting, then back substitution.

    Divisions in the Bareiss update are exact; the pivot choice is the first
    row with a nonzero entry, for reproducibility.
    """
    n = len(matrix)
    m = [list(row) + [rhs[i]] for i, row in enumerate(matrix)]
    prev = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col] != 0), None)
        if pivot is None:
            raise SingularSystem(f"no pivot in column {col}")
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
        for r in range(col + 1, n):
            for c in range(col + 1, n + 1):
                m[r][c] = (m[col][col] * m[r][c] - m[r][col] * m[col][c]) / prev
            m[r][col] = Fraction(0)
        prev = m[col][col]
    x = [Fraction(0)] * n
    for r in range(n - 1, -1, -1):
        s = m[r][n] - sum(m[r][c] * x[c] for c in range(r + 1, n))
        x[r] = s / m[r][r]
    return x


def decompose_modular(
    s: QSeries, weight: int, catalog: Optional[SeriesCatalog] = None
) -> BasisDecomposition:
    """Write a claimed weight-2k modular form over the monomial basis.

    Solves the exact square system on the leading dim-many coefficients and
    then verifies the combination against every remaining computed
    coefficient; a residual failure means the series is not modular of the
    claimed weight (quasi-modular inputs like the weight-2 level series fail
    here by design).
    """
    dim = modular_dimension(weight)
    if s.order < 2 * dim:
        raise ValueError(f"need order >= {2 * dim} to certify a weight-{weight} form")
    if catalog is None or catalog.order < s.order:
        catalog = SeriesCatalog(s.order)
    k = weight // 2
    basis = [
        gp_evaluate(GradedPoly.monomial(LEVEL2, (0, j, k - 2 * j)), catalog)
        for j in range(k // 2, -1, -1)
    ]
    matrix = [[basis[i].coeffs[n] for i in range(dim)] for n in range(dim)]
    rhs = [s.coeffs[n] for n in range(dim)]
    coords = _solve_fraction_free(matrix, rhs)
    combo = QSeries.zero(catalog.order)
    for x, b in zip(coords, basis):
        combo = combo + b.scale(x)
    diff = first_difference(combo, s)
    if diff is not None:
        raise ResidualMismatch(diff[0], diff[2], diff[1])
    return BasisDecomposition(weight, tuple(coords))


_ESTAR_POLYS: dict[int, GradedPoly] = {
    2: GradedPoly.monomial(LEVEL2, (0, 1, 0)),  # the weight-4 series is B itself
}


def e_star_poly(m: int) -> GradedPoly:
    """The weight-2m level-2 series as a polynomial in B and C.

    Built by solving the level-2 differential recursion for the top term:

        E*_{2m} = (1/alpha_{2m}) [ sum_{k=2}^{m-2} c_{m,k} E*_{2k} E*_{2m-2k}
                                   - delta E*_{2m-2} ]

    with c_{m,k} the rational convolution coefficients and alpha_{2m} the
    positive rational normalizer.  Each new level is cross-checked against
    an independent decomposition of the divisor-sum series.
    """
    if m < 2:
        raise ValueError("defined for m >= 2")
    if m in _ESTAR_POLYS:
        return _ESTAR_POLYS[m]
    top = max(_ESTAR_POLYS)
    check_catalog = SeriesCatalog(2 * modular_dimension(2 * m) + 6)
    for mm in range(top + 1, m + 1):
        acc = GradedPoly.zero(LEVEL2)
        for k in range(2, mm - 1):
            acc = acc + (_ESTAR_POLYS[k] * _ESTAR_POLYS[mm - k]).scale(
                ks_coefficient(mm, k)
            )
        acc = acc - serre_delta(_ESTAR_POLYS[mm - 1], 2 * (mm - 1))
        alpha = ks_alpha(mm)
        if alpha <= 0:
            raise ArithmeticError(f"normalizer alpha for weight {2 * mm} not positive")
        poly = acc.scale(1 / alpha)
        dec = decompose_modular(check_catalog.level2(mm), 2 * mm, check_catalog)
        basis = dec.basis_exponents()
        stray = set(poly.terms) - set(basis)
        if stray:
            raise CrossCheckMismatch(
                f"E{2 * mm}star polynomial", 0, "differential recursion",
                "basis decomposition", poly.terms[min(stray)], Fraction(0),
            )
        for j, exps in enumerate(basis):
            mine = poly.terms.get(exps, Fraction(0))
            if mine != dec.coefficients[j]:
                raise CrossCheckMismatch(
                    f"E{2 * mm}star polynomial", j, "differential recursion",
                    "basis decomposition", mine, dec.coefficients[j],
                )
        _ESTAR_POLYS[mm] = poly
    return _ESTAR_POLYS[m]


def check_positivity(m: int) -> bool:
    """True when the weight-2m polynomial lies in B * Q_+[B, C].

    Every monomial must have a strictly positive coefficient, B-exponent at
    least 1, no A-exponent, and weight exactly 2m.
    """
    poly = e_star_poly(m)
    for (a, b, c), coeff in poly.terms.items():
        if a != 0 or b < 1 or coeff <= 0:
            return False
        if poly.monomial_weight((a, b, c)) != 2 * m:
            return False
    return bool(poly.terms)
