"""Theorem registry: every identity as an exact, localizing check.

Series identities are certified coefficient-by-coefficient up to the
truncation order; convolution identities over n are certified on an explicit
index range (the --nmax flag).  A failing check always reports the first
offending exponent or index together with both exact values.
"""

from __future__ import annotations

import re
import threading
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Callable, Optional

from . import arith
from .catalog import CrossCheckMismatch, SeriesCatalog
from .graded import (
    GradedPoly,
    LEVEL2,
    check_positivity,
    e_star_poly,
    gp_evaluate,
    serre_delta,
)
from .qseries import QSeries, first_difference, qs_det, rational_str
from .scalars import ks_coefficient, rs_coefficient

__all__ = [
    "CheckReport",
    "TheoremCheck",
    "UnknownTheoremId",
    "REGISTRY",
    "registry_ids",
    "resolve_ids",
    "run_check",
    "run_all",
]


class UnknownTheoremId(KeyError):
    """The requested id is not in the registry."""


Discrepancy = tuple[int, Fraction, Fraction]


@dataclass(frozen=True)
class CheckReport:
    """Outcome of one registry check."""

    id: str
    order: int
    status: str  # "pass" | "fail"
    first_discrepancy: Optional[Discrepancy]
    elapsed_ms: int
    notes: tuple[str, ...] = ()

    def to_json_dict(self) -> dict:
        disc = None
        if self.first_discrepancy is not None:
            n, lhs, rhs = self.first_discrepancy
            disc = {"n": n, "lhs": rational_str(lhs), "rhs": rational_str(rhs)}
        payload = {
            "id": self.id,
            "order": self.order,
            "status": self.status,
            "first_discrepancy": disc,
            "elapsed_ms": self.elapsed_ms,
        }
        if self.notes:
            payload["notes"] = list(self.notes)
        return payload

    def line(self) -> str:
        """One deterministic human-readable line (no timing)."""
        if self.status == "pass":
            base = f"pass  {self.id}  (order {self.order})"
        else:
            n, lhs, rhs = self.first_discrepancy
            base = (
                f"FAIL  {self.id}  (order {self.order}) at n={n}: "
                f"{rational_str(lhs)} != {rational_str(rhs)}"
            )
        for note in self.notes:
            base += f"\n      note: {note}"
        return base


class Workspace:
    """Shared immutable inputs for the runners: catalogs and cached tables.

    All series are built lazily; a lock keeps lazy construction safe when
    checks run on a thread pool.
    """

    def __init__(self, order: int = 64, nmax: int = 200, mmax: int = 20):
        self.order = order
        self.nmax = nmax
        self.mmax = mmax
        self._lock = threading.RLock()
        self._catalogs: dict[int, SeriesCatalog] = {}
        self._sigma_tables: dict[tuple[str, int, int], list[Fraction]] = {}
        self._r_tables: dict[int, tuple[Fraction, ...]] = {}

    def catalog_at(self, order: int) -> SeriesCatalog:
        with self._lock:
            cat = self._catalogs.get(order)
            if cat is None:
                cat = SeriesCatalog(order)
                self._catalogs[order] = cat
            return cat

    @property
    def catalog(self) -> SeriesCatalog:
        return self.catalog_at(self.order)

    @property
    def rcat(self) -> SeriesCatalog:
        return self.catalog_at(self.nmax)

    def sigma_range(self, s: int, upto: int) -> list[Fraction]:
        """sigma_s(0..upto) with the n = 0 convention value included."""
        key = ("sigma", s, upto)
        with self._lock:
            tab = self._sigma_tables.get(key)
            if tab is None:
                tab = [arith.sigma(s, n) for n in range(upto + 1)]
                self._sigma_tables[key] = tab
            return tab

    def sigma_star_range(self, s: int, upto: int) -> list[Fraction]:
        key = ("sigma_star", s, upto)
        with self._lock:
            tab = self._sigma_tables.get(key)
            if tab is None:
                tab = [arith.sigma_star(s, n) for n in range(upto + 1)]
                self._sigma_tables[key] = tab
            return tab

    def r_table(self, s: int) -> tuple[Fraction, ...]:
        """r_s(0..nmax) from the s-th power of the theta series."""
        with self._lock:
            tab = self._r_tables.get(s)
            if tab is None:
                tab = (self.rcat.theta3() ** s).coeffs
                self._r_tables[s] = tab
            return tab

    def tau_range(self, upto: int) -> tuple[Fraction, ...]:
        """tau(0..upto) via the cross-checked discriminant constructor."""
        return self.catalog_at(upto).delta().coeffs


Runner = Callable[[Workspace, list[str]], Optional[Discrepancy]]


@dataclass(frozen=True)
class TheoremCheck:
    id: str
    description: str
    runner: Runner
    scope: str  # "order" | "range" | "tau1000" | "mmax" | "table"


REGISTRY: dict[str, TheoremCheck] = {}

_ALIASES = {"DELTA-L2": "DIS"}


def _register(id: str, description: str, scope: str = "order"):
    def wrap(fn: Runner) -> Runner:
        if id in REGISTRY:
            raise ValueError(f"duplicate registry id {id!r}")
        REGISTRY[id] = TheoremCheck(id, description, fn, scope)
        return fn

    return wrap


def _df(a: QSeries, b: QSeries) -> Optional[Discrepancy]:
    return first_difference(a, b)


def _range_eq(pairs) -> Optional[Discrepancy]:
    """First index where an (n, lhs, rhs) stream disagrees."""
    for n, lhs, rhs in pairs:
        if lhs != rhs:
            return (n, Fraction(lhs), Fraction(rhs))
    return None


# ---------------------------------------------------------------------------
# level-1 differential equations


@_register(
    "RAM-DE",
    "classical system qP'=(P^2-Q)/12, qQ'=(PQ-R)/3, qR'=(PR-Q^2)/2 "
    "for P=E2, Q=E4, R=E6",
)
def _ram_de(ws: Workspace, notes: list[str]) -> Optional[Discrepancy]:
    cat = ws.catalog
    p, q, r = cat.level1(1), cat.level1(2), cat.level1(3)
    for lhs, rhs in (
        (p.theta(), (p * p - q).scale(Fraction(1, 12))),
        (q.theta(), (p * q - r).scale(Fraction(1, 3))),
        (r.theta(), (p * r - q * q).scale(Fraction(1, 2))),
    ):
        d = _df(lhs, rhs)
        if d:
            return d
    return None


def _rs_de_runner(m: int) -> Runner:
    def run(ws: Workspace, notes: list[str]) -> Optional[Discrepancy]:
        cat = ws.catalog
        lhs = cat.level1(m - 1).theta()
        top = cat.level1(m)
        rhs = QSeries.zero(cat.order)
        for k in range(1, m):
            coeff = rs_coefficient(m, k)
            rhs = rhs + (cat.level1(k) * cat.level1(m - k) - top).scale(coeff)
        d = _df(lhs, rhs)
        if d:
            return d
        if m == 5:
            # the weight-8 equation collapses because E4*E6 equals E10
            reduced = (cat.level1(1) * cat.level1(4) - cat.level1(5)).scale(
                Fraction(2, 3)
            )
            return _df(lhs, reduced)
        return None

    return run


for _m in range(2, 13):
    _register(
        f"RS-DE({_m})",
        f"weight-{2 * _m - 2} level-1 differential equation: q E_{2 * _m - 2}' "
        "as a zeta-weighted convolution of lower series",
    )(_rs_de_runner(_m))


# ---------------------------------------------------------------------------
# level-2 differential equations


_KS_SPECIALS: dict[int, str] = {
    2: "qA' = (A^2 - B)/4",
    3: "qB' = A B - E6*",
    4: "qE6*' = (12 A E6* + 5 B^2 - 17 E8*)/8",
    5: "qE8*' = (34 A E8* + 28 B E6* - 62 E10*)/17",
}


def _ks_special_rhs(m: int, cat: SeriesCatalog) -> QSeries:
    a = cat.level2(1)
    if m == 2:
        return (a * a - cat.level2(2)).scale(Fraction(1, 4))
    if m == 3:
        return a * cat.level2(2) - cat.level2(3)
    if m == 4:
        b = cat.level2(2)
        return (
            (a * cat.level2(3)).scale(12) + (b * b).scale(5) - cat.level2(4).scale(17)
        ).scale(Fraction(1, 8))
    b = cat.level2(2)
    return (
        (a * cat.level2(4)).scale(34)
        + (b * cat.level2(3)).scale(28)
        - cat.level2(5).scale(62)
    ).scale(Fraction(1, 17))


def _ks_de_runner(m: int) -> Runner:
    def run(ws: Workspace, notes: list[str]) -> Optional[Discrepancy]:
        cat = ws.catalog
        lhs = cat.level2(m - 1).theta()
        top = cat.level2(m)
        rhs = QSeries.zero(cat.order)
        for k in range(1, m):
            coeff = ks_coefficient(m, k)
            rhs = rhs + (cat.level2(k) * cat.level2(m - k) - top).scale(coeff)
        d = _df(lhs, rhs)
        if d:
            return d
        if m in _KS_SPECIALS:
            return _df(lhs, _ks_special_rhs(m, cat))
        return None

    return run


for _m in range(2, 13):
    _register(
        f"KS-DE({_m})",
        f"weight-{2 * _m - 2} level-2 differential equation: q E*_{2 * _m - 2}' "
        "as a lambda-weighted convolution of lower series"
        + (f"; includes displayed form {_KS_SPECIALS[_m]}" if _m in _KS_SPECIALS else ""),
    )(_ks_de_runner(_m))


@_register("E6STAR-ABC", "qE6*' = (3ABC - B^2 - 2BC^2)/2 with C = E6*/E4*")
def _e6star_abc(ws: Workspace, notes: list[str]) -> Optional[Discrepancy]:
    cat = ws.catalog
    a, b, c = cat.level2(1), cat.level2(2), cat.C()
    rhs = ((a * b * c).scale(3) - b * b - (b * c * c).scale(2)).scale(Fraction(1, 2))
    return _df(cat.level2(3).theta(), rhs)


@_register(
    "HAHN-SYS",
    "closed system for (A, C, B): qA'=(A^2-B)/4, qC'=(AC-B)/2, qB'=AB-CB",
)
def _hahn_sys(ws: Workspace, notes: list[str]) -> Optional[Discrepancy]:
    cat = ws.catalog
    a, b, c = cat.level2(1), cat.level2(2), cat.C()
    for lhs, rhs in (
        (a.theta(), (a * a - b).scale(Fraction(1, 4))),
        (c.theta(), (a * c - b).scale(Fraction(1, 2))),
        (b.theta(), a * b - c * b),
    ):
        d = _df(lhs, rhs)
        if d:
            return d
    return None


# ---------------------------------------------------------------------------
# divisor-sum convolution identities


@_register(
    "SIGMA3-CLASSICAL",
    "sigma_3(n) = (6/5)(n sigma(n) + 2 sum_j sigma(j) sigma(n-j)) on 0..nmax",
    scope="range",
)
def _sigma3_classical(ws: Workspace, notes: list[str]) -> Optional[Discrepancy]:
    s1 = ws.sigma_range(1, ws.nmax)
    s3 = ws.sigma_range(3, ws.nmax)

    def stream():
        for n in range(ws.nmax + 1):
            conv = sum(s1[j] * s1[n - j] for j in range(n + 1))
            yield n, s3[n], Fraction(6, 5) * (n * s1[n] + 2 * conv)

    return _range_eq(stream())


@_register(
    "T7",
    "sigma_13(n) = (2730/691)(24 sum_j sigma(j) sigma_11(n-j) + n sigma_11(n)) "
    "on 0..nmax",
    scope="range",
)
def _t7(ws: Workspace, notes: list[str]) -> Optional[Discrepancy]:
    s1 = ws.sigma_range(1, ws.nmax)
    s11 = ws.sigma_range(11, ws.nmax)
    s13 = ws.sigma_range(13, ws.nmax)

    def stream():
        for n in range(ws.nmax + 1):
            conv = sum(s1[j] * s11[n - j] for j in range(n + 1))
            yield n, s13[n], Fraction(2730, 691) * (24 * conv + n * s11[n])

    return _range_eq(stream())


@_register(
    "T5",
    "sigma*_3(n) = 2n sigma*(n) - 4 sum_j sigma*(j) sigma*(n-j) on 0..nmax",
    scope="range",
)
def _t5(ws: Workspace, notes: list[str]) -> Optional[Discrepancy]:
    s1 = ws.sigma_star_range(1, ws.nmax)
    s3 = ws.sigma_star_range(3, ws.nmax)

    def stream():
        for n in range(ws.nmax + 1):
            conv = sum(s1[j] * s1[n - j] for j in range(n + 1))
            yield n, s3[n], 2 * n * s1[n] - 4 * conv

    return _range_eq(stream())


# ---------------------------------------------------------------------------
# the discriminant and tau


@_register("L4", "1728 Delta = 3 E6 qE4' - 2 E4 qE6' as series")
def _l4(ws: Workspace, notes: list[str]) -> Optional[Discrepancy]:
    cat = ws.catalog
    e4, e6 = cat.level1(2), cat.level1(3)
    rhs = (e6 * e4.theta()).scale(3) - (e4 * e6.theta()).scale(2)
    return _df(cat.delta().scale(1728), rhs)


@_register(
    "T8",
    "tau(n) = 70 sum_{j+k=n} (2k-3j) sigma_3(j) sigma_5(k) on 0..nmax",
    scope="range",
)
def _t8(ws: Workspace, notes: list[str]) -> Optional[Discrepancy]:
    s3 = ws.sigma_range(3, ws.nmax)
    s5 = ws.sigma_range(5, ws.nmax)
    tau = ws.tau_range(ws.nmax)

    def stream():
        for n in range(ws.nmax + 1):
            total = sum(
                (2 * (n - j) - 3 * j) * s3[j] * s5[n - j] for j in range(n + 1)
            )
            yield n, tau[n], 70 * total

    return _range_eq(stream())


@_register(
    "C1",
    "tau(n) - (n/12)(5 sigma_3(n) + 7 sigma_5(n)) is an integer divisible by 70 "
    "on 0..nmax",
    scope="range",
)
def _c1(ws: Workspace, notes: list[str]) -> Optional[Discrepancy]:
    s3 = ws.sigma_range(3, ws.nmax)
    s5 = ws.sigma_range(5, ws.nmax)
    tau = ws.tau_range(ws.nmax)
    for n in range(ws.nmax + 1):
        diff = tau[n] - Fraction(n, 12) * (5 * s3[n] + 7 * s5[n])
        if diff.denominator != 1 or diff.numerator % 70 != 0:
            return (n, diff, Fraction(0))
    return None


@_register(
    "T314",
    "tau(n) = 2 sum_{j+k=n} (3j-2k) sigma*_3(j) sigma*_5(k) on 0..nmax",
    scope="range",
)
def _t314(ws: Workspace, notes: list[str]) -> Optional[Discrepancy]:
    s3 = ws.sigma_star_range(3, ws.nmax)
    s5 = ws.sigma_star_range(5, ws.nmax)
    tau = ws.tau_range(ws.nmax)

    def stream():
        for n in range(ws.nmax + 1):
            total = sum(
                (3 * j - 2 * (n - j)) * s3[j] * s5[n - j] for j in range(n + 1)
            )
            yield n, tau[n], 2 * total

    return _range_eq(stream())


@_register(
    "C2",
    "tau(n) = (n/4)(3 sigma*_3(n) + sigma*_5(n)) mod 2, and tau(n) odd iff "
    "n(3 sigma*_3(n) + sigma*_5(n)) = 4 mod 8, on 1..nmax",
    scope="range",
)
def _c2(ws: Workspace, notes: list[str]) -> Optional[Discrepancy]:
    s3 = ws.sigma_star_range(3, ws.nmax)
    s5 = ws.sigma_star_range(5, ws.nmax)
    tau = ws.tau_range(ws.nmax)
    for n in range(1, ws.nmax + 1):
        diff = tau[n] - Fraction(n, 4) * (3 * s3[n] + s5[n])
        if diff.denominator != 1 or diff.numerator % 2 != 0:
            return (n, diff, Fraction(0))
        combo = n * (3 * s3[n] + s5[n])
        odd_tau = tau[n].numerator % 2 != 0
        if odd_tau != (combo.numerator % 8 == 4):
            return (n, tau[n], combo)
    return None


# ---------------------------------------------------------------------------
# determinant identities


@_register(
    "MINORS-L1",
    "minors of the level-1 Hankel array are derivative multiples: "
    "|E0 E2; E2 E4| = -12 qE2', |E0 E2; E4 E6| = -3 qE4', "
    "|E2 E4; E4 E6| = 2 qE6', |E2 E6; E4 E8| = (3/2) qE8'",
)
def _minors_l1(ws: Workspace, notes: list[str]) -> Optional[Discrepancy]:
    cat = ws.catalog
    e = [cat.level1(k) for k in range(5)]
    cases = (
        ([[e[0], e[1]], [e[1], e[2]]], e[1].theta().scale(-12)),
        ([[e[0], e[1]], [e[2], e[3]]], e[2].theta().scale(-3)),
        ([[e[1], e[2]], [e[2], e[3]]], e[3].theta().scale(2)),
        ([[e[1], e[3]], [e[2], e[4]]], e[4].theta().scale(Fraction(3, 2))),
    )
    for matrix, rhs in cases:
        d = _df(qs_det(matrix), rhs)
        if d:
            return d
    return None


@_register(
    "GARVAN",
    "3x3 Hankel determinant of E4..E12 equals -(250/691)(1728 Delta)^2",
)
def _garvan(ws: Workspace, notes: list[str]) -> Optional[Discrepancy]:
    cat = ws.catalog
    e = {k: cat.level1(k) for k in range(2, 7)}
    det = qs_det(
        [
            [e[2], e[3], e[4]],
            [e[3], e[4], e[5]],
            [e[4], e[5], e[6]],
        ]
    )
    sq = cat.delta().scale(1728)
    return _df(det, (sq * sq).scale(Fraction(-250, 691)))


@_register(
    "DIS",
    "discriminant route agreement: eta product = (E4^3-E6^2)/1728 "
    "= -(E4*^3-E6*^2)/64",
)
def _dis(ws: Workspace, notes: list[str]) -> Optional[Discrepancy]:
    cat = ws.catalog
    cat.delta()  # raises with the offending exponent if the routes diverge
    e4, e6 = cat.level1(2), cat.level1(3)
    b, e6star = cat.level2(2), cat.level2(3)
    level1_route = (e4**3 - e6**2).scale(Fraction(1, 1728))
    level2_route = (b**3 - e6star**2).scale(Fraction(-1, 64))
    return _df(level1_route, level2_route)


@_register("L5", "|E0* E4*; E4* E8*| = (512/17) B D as series")
def _l5(ws: Workspace, notes: list[str]) -> Optional[Discrepancy]:
    cat = ws.catalog
    det = qs_det([[cat.level2(0), cat.level2(2)], [cat.level2(2), cat.level2(4)]])
    rhs = (cat.level2(2) * cat.D()).scale(Fraction(512, 17))
    return _df(det, rhs)


_DET_L2_CONSTANT = Fraction(-(2**13) * 3**5 * 5**2, 17**3 * 31**2 * 691)


@_register(
    "DET-L2",
    "level-2 determinant identities: |E4* E6*; E6* E8*| = -(576/17) Delta, "
    "|E4* E8*; E6* E10*| = -(11520/527) C Delta, |E6* E8*; E8* E10*| = "
    "(576/8959)(279B - 92C^2) Delta, and the 3x3 Hankel determinant of "
    "E4*..E12* = -(2^13 3^5 5^2 / (17^3 31^2 691))(961B + 3136C^2) B D Delta",
)
def _det_l2(ws: Workspace, notes: list[str]) -> Optional[Discrepancy]:
    cat = ws.catalog
    e = {k: cat.level2(k) for k in range(2, 7)}
    b, c, dd, delta = cat.level2(2), cat.C(), cat.D(), cat.delta()
    cases = [
        (
            qs_det([[e[2], e[3]], [e[3], e[4]]]),
            delta.scale(Fraction(-(2**6) * 3**2, 17)),
        ),
        (
            qs_det([[e[2], e[4]], [e[3], e[5]]]),
            (c * delta).scale(Fraction(-(2**8) * 3**2 * 5, 17 * 31)),
        ),
        (
            qs_det([[e[3], e[4]], [e[4], e[5]]]),
            ((b.scale(279) - (c * c).scale(92)) * delta).scale(
                Fraction(2**6 * 3**2, 17**2 * 31)
            ),
        ),
        (
            qs_det(
                [
                    [e[2], e[3], e[4]],
                    [e[3], e[4], e[5]],
                    [e[4], e[5], e[6]],
                ]
            ),
            ((b.scale(961) + (c * c).scale(3136)) * b * dd * delta).scale(
                _DET_L2_CONSTANT
            ),
        ),
    ]
    for det, rhs in cases:
        d = _df(det, rhs)
        if d:
            return d
    return None


# ---------------------------------------------------------------------------
# Serre derivative structure


def _poly_first_diff(
    p: GradedPoly, q: GradedPoly
) -> Optional[tuple[int, Fraction, Fraction]]:
    keys = sorted(set(p.terms) | set(q.terms))
    for i, key in enumerate(keys):
        a = p.terms.get(key, Fraction(0))
        b = q.terms.get(key, Fraction(0))
        if a != b:
            return (i, a, b)
    return None


@_register(
    "P4",
    "generator rules dA = -(A^2+B)/4, dB = -BC, dC = -B/2, verified at the "
    "polynomial level and against the q-expansions",
)
def _p4(ws: Workspace, notes: list[str]) -> Optional[Discrepancy]:
    expected = {
        "A": GradedPoly(
            LEVEL2, {(2, 0, 0): Fraction(-1, 4), (0, 1, 0): Fraction(-1, 4)}
        ),
        "B": GradedPoly(LEVEL2, {(0, 1, 1): Fraction(-1)}),
        "C": GradedPoly(LEVEL2, {(0, 1, 0): Fraction(-1, 2)}),
    }
    for name, target in expected.items():
        image = serre_delta(GradedPoly.generator(LEVEL2, name))
        d = _poly_first_diff(image, target)
        if d:
            notes.append(f"polynomial rule for {name} broken")
            return d
    cat = ws.catalog
    a = cat.level2(1)
    gens = {"A": (a, 2), "B": (cat.level2(2), 4), "C": (cat.C(), 2)}
    for name, (series, weight) in gens.items():
        lhs = series.theta() - (a * series).scale(Fraction(weight, 4))
        rhs = gp_evaluate(serre_delta(GradedPoly.generator(LEVEL2, name)), cat)
        d = _df(lhs, rhs)
        if d:
            notes.append(f"series-level rule for {name} broken")
            return d
    return None


@_register(
    "T49",
    "positivity: the weight-2m level-2 series is B times a positive rational "
    "polynomial in B and C, for 2 <= m <= mmax",
    scope="mmax",
)
def _t49(ws: Workspace, notes: list[str]) -> Optional[Discrepancy]:
    for m in range(2, ws.mmax + 1):
        try:
            ok = check_positivity(m)
        except CrossCheckMismatch as exc:
            notes.append(str(exc))
            return (exc.exponent, exc.values[0], exc.values[1])
        if not ok:
            poly = e_star_poly(m)
            bad = min(
                (e for e in poly.terms if poly.terms[e] <= 0 or e[1] < 1 or e[0]),
                default=min(poly.terms),
            )
            return (m, poly.terms[bad], Fraction(0))
    return None


@_register(
    "DELTA-FAMILY",
    "the weight-4 Serre derivative sends E6*^2/E4*^2, E4*, E8*/E4*, E10*/E6* "
    "and E4 to one common series",
)
def _delta_family(ws: Workspace, notes: list[str]) -> Optional[Discrepancy]:
    cat = ws.catalog
    a = cat.level2(1)
    c = cat.C()
    members = [
        c * c,
        cat.level2(2),
        cat.level2(4) * cat.level2(2).invert(),
        cat.level2(5) * cat.level2(3).invert(),
        cat.level1(2),
    ]

    def delta4(s: QSeries) -> QSeries:
        return s.theta() - a * s

    image = delta4(members[0])
    for other in members[1:]:
        d = _df(image, delta4(other))
        if d:
            return d
    return None


# ---------------------------------------------------------------------------
# theta series and representation counts


@_register(
    "THETA-REL",
    "the eighth theta power at -q equals the weight-4 level-2 series, "
    "coefficients 0..nmax",
    scope="range",
)
def _theta_rel(ws: Workspace, notes: list[str]) -> Optional[Discrepancy]:
    cat = ws.rcat
    return _df((cat.theta3() ** 8).neg_q(), cat.level2(2))


@_register(
    "JACOBI",
    "classical 2, 4, 6, 8-square counts from divisor data on 0..nmax "
    "(two-square case uses divisor counts mod 4)",
    scope="range",
)
def _jacobi(ws: Workspace, notes: list[str]) -> Optional[Discrepancy]:
    for s in (2, 4, 6, 8):
        table = ws.r_table(s)
        if table[0] != 1:
            return (0, table[0], Fraction(1))
        for n in range(1, ws.nmax + 1):
            divs = arith.divisors(n)
            if s == 2:
                expected = 4 * (
                    sum(1 for d in divs if d % 4 == 1)
                    - sum(1 for d in divs if d % 4 == 3)
                )
            elif s == 4:
                expected = 8 * sum(d for d in divs if d % 4 != 0)
            elif s == 6:
                expected = 4 * sum(
                    (-1) ** ((d - 1) // 2) * ((2 * n // d) ** 2 - d * d)
                    for d in divs
                    if d % 2
                )
            else:
                sign = -1 if n % 2 else 1
                expected = 16 * sign * sum(
                    d**3 if d % 2 == 0 else -(d**3) for d in divs
                )
            if table[n] != expected:
                notes.append(f"{s}-square formula")
                return (n, table[n], Fraction(expected))
    return None


def _delta8_range(ws: Workspace) -> list[Fraction]:
    # delta_8(0..nmax-1) read off the weight-4 kernel form, whose q^(n+1)
    # coefficient counts 8-triangular-number representations of n
    d = ws.rcat.D()
    return list(d.coeffs[1:])


@_register(
    "T9",
    "sixteen-square count: r_16(n) = (-1)^n (32/17)(256 sum_j sigma*_3(j) "
    "delta_8(n-j-1) - sigma*_7(n)) on 0..nmax",
    scope="range",
)
def _t9(ws: Workspace, notes: list[str]) -> Optional[Discrepancy]:
    r16 = ws.r_table(16)
    s3 = ws.sigma_star_range(3, ws.nmax)
    s7 = ws.sigma_star_range(7, ws.nmax)
    d8 = _delta8_range(ws)

    def stream():
        for n in range(ws.nmax + 1):
            conv = sum(s3[j] * d8[n - j - 1] for j in range(n))
            sign = -1 if n % 2 else 1
            yield n, r16[n], sign * Fraction(32, 17) * (256 * conv - s7[n])

    return _range_eq(stream())


@_register(
    "R24-FACT",
    "24-square count from sigma_11 and tau at n, n/2, n/4 with the "
    "1/691 normalization, on 0..nmax",
    scope="range",
)
def _r24_fact(ws: Workspace, notes: list[str]) -> Optional[Discrepancy]:
    r24 = ws.r_table(24)
    s11 = ws.sigma_range(11, ws.nmax)
    tau = ws.tau_range(ws.nmax)

    def stream():
        for n in range(ws.nmax + 1):
            total = 16 * s11[n]
            if n % 2 == 0:
                total += -32 * s11[n // 2] - 65536 * tau[n // 2]
            if n % 4 == 0:
                total += 65536 * s11[n // 4]
            sign = 1 if (n - 1) % 2 == 0 else -1
            total += 33152 * sign * tau[n]
            yield n, r24[n], Fraction(total, 691)

    return _range_eq(stream())


@_register(
    "T10",
    "r_24(n) = (-1)^n 64 (sum sigma*_5 sigma*_5 - tau(n)) "
    "= (-1)^n (512/17)(sum sigma*_3 sigma*_7 - tau(n)) on 0..nmax",
    scope="range",
)
def _t10(ws: Workspace, notes: list[str]) -> Optional[Discrepancy]:
    r24 = ws.r_table(24)
    s3 = ws.sigma_star_range(3, ws.nmax)
    s5 = ws.sigma_star_range(5, ws.nmax)
    s7 = ws.sigma_star_range(7, ws.nmax)
    tau = ws.tau_range(ws.nmax)

    def stream():
        for n in range(ws.nmax + 1):
            sign = -1 if n % 2 else 1
            conv55 = sum(s5[j] * s5[n - j] for j in range(n + 1))
            conv37 = sum(s3[j] * s7[n - j] for j in range(n + 1))
            yield n, r24[n], sign * 64 * (conv55 - tau[n])
            yield n, r24[n], sign * Fraction(512, 17) * (conv37 - tau[n])

    return _range_eq(stream())


@_register(
    "C10",
    "equivalence on 0..nmax: n odd <=> tau(n) > sum sigma*_5 sigma*_5 "
    "<=> tau(n) > sum sigma*_3 sigma*_7 <=> the two convolutions are ordered; "
    "uses r_24(n) >= r_4(n) > 0",
    scope="range",
)
def _c10(ws: Workspace, notes: list[str]) -> Optional[Discrepancy]:
    r24 = ws.r_table(24)
    r4 = ws.r_table(4)
    s3 = ws.sigma_star_range(3, ws.nmax)
    s5 = ws.sigma_star_range(5, ws.nmax)
    s7 = ws.sigma_star_range(7, ws.nmax)
    tau = ws.tau_range(ws.nmax)
    for n in range(ws.nmax + 1):
        if not (r24[n] >= r4[n] > 0):
            return (n, r24[n], r4[n])
        conv55 = sum(s5[j] * s5[n - j] for j in range(n + 1))
        conv37 = sum(s3[j] * s7[n - j] for j in range(n + 1))
        flags = (n % 2 == 1, tau[n] > conv55, tau[n] > conv37, conv55 > conv37)
        if len(set(flags)) != 1:
            notes.append(f"equivalence flags {flags} diverge")
            return (n, Fraction(int(flags[0])), Fraction(int(flags[1])))
    return None


# ---------------------------------------------------------------------------
# tau arithmetic and the reference table


@_register(
    "TAU-PROPS",
    "multiplicativity and prime-power recursion of tau, the 691 congruence "
    "with sigma_11, the squared Ramanujan bound at primes, and nonvanishing, "
    "all for n <= 1000",
    scope="tau1000",
)
def _tau_props(ws: Workspace, notes: list[str]) -> Optional[Discrepancy]:
    limit = 1000
    tau = ws.tau_range(limit)
    for m in range(2, limit + 1):
        for n in range(2, limit // m + 1):
            if gcd(m, n) == 1 and tau[m * n] != tau[m] * tau[n]:
                notes.append("multiplicativity fails")
                return (m * n, tau[m * n], tau[m] * tau[n])
    for p in arith.primes_up_to(31):
        prev, pk = 1, p
        while pk * p <= limit:
            nxt = pk * p
            expected = tau[p] * tau[pk] - p**11 * tau[prev]
            if tau[nxt] != expected:
                notes.append("prime-power recursion fails")
                return (nxt, tau[nxt], Fraction(expected))
            prev, pk = pk, nxt
    for n in range(1, limit + 1):
        if (tau[n] - arith.sigma(11, n)).numerator % 691 != 0:
            notes.append("691 congruence fails")
            return (n, tau[n], arith.sigma(11, n))
    for p in arith.primes_up_to(limit):
        if tau[p] * tau[p] > 4 * p**11:
            notes.append("squared coefficient bound fails at a prime")
            return (p, tau[p] * tau[p], Fraction(4 * p**11))
    for n in range(1, limit + 1):
        if tau[n] == 0:
            notes.append("nonvanishing fails")
            return (n, tau[n], Fraction(1))
    return None


_TABLE2_PRINTED: dict[str, list[Fraction]] = {
    "sigma3*": [Fraction(-1, 16), Fraction(1), Fraction(-7), Fraction(28), Fraction(-71)],
    "sigma5*": [Fraction(1, 8), Fraction(1), Fraction(-31), Fraction(244), Fraction(-1055)],
    "sigma7*": [Fraction(-17, 32), Fraction(1), Fraction(-127), Fraction(2188), Fraction(-16511)],
    "conv37": [Fraction(12, 517), Fraction(-19, 32), Fraction(405, 32), Fraction(-2285, 8), Fraction(133589, 32)],
    "conv55": [Fraction(1, 64), Fraction(1, 4), Fraction(33, 32), Fraction(-1), Fraction(37928, 32)],
    "tau": [Fraction(0), Fraction(1), Fraction(-24), Fraction(252), Fraction(-1472)],
}


@_register(
    "TABLE2",
    "reference table of sigma*_3, sigma*_5, sigma*_7, their convolutions and "
    "tau on n = 0..4; convolution cells are judged by our exact convolution, "
    "confirmed against the independent 24-square route, and any printed cell "
    "that differs is flagged",
    scope="table",
)
def _table2(ws: Workspace, notes: list[str]) -> Optional[Discrepancy]:
    upto = 4
    s3 = ws.sigma_star_range(3, upto)
    s5 = ws.sigma_star_range(5, upto)
    s7 = ws.sigma_star_range(7, upto)
    tau = list(ws.tau_range(max(upto, 1))[: upto + 1])
    conv37 = [sum(s3[j] * s7[n - j] for j in range(n + 1)) for n in range(upto + 1)]
    conv55 = [sum(s5[j] * s5[n - j] for j in range(n + 1)) for n in range(upto + 1)]
    computed = {
        "sigma3*": s3,
        "sigma5*": s5,
        "sigma7*": s7,
        "conv37": conv37,
        "conv55": conv55,
        "tau": tau,
    }
    # the two convolution rows are confirmed by the independent lattice
    # route: r_24 from theta powers determines both convolutions given tau
    r24 = ws.r_table(24)[: upto + 1]
    for n in range(upto + 1):
        sign = -1 if n % 2 else 1
        if sign * 64 * (conv55[n] - tau[n]) != r24[n]:
            return (n, sign * 64 * (conv55[n] - tau[n]), r24[n])
        if sign * Fraction(512, 17) * (conv37[n] - tau[n]) != r24[n]:
            return (n, sign * Fraction(512, 17) * (conv37[n] - tau[n]), r24[n])
    for row, printed in _TABLE2_PRINTED.items():
        ours = computed[row]
        for n in range(upto + 1):
            if printed[n] != ours[n]:
                if row in ("conv37", "conv55"):
                    notes.append(
                        f"flagged cell ({row}, n={n}): printed "
                        f"{rational_str(printed[n])}, computed "
                        f"{rational_str(ours[n])} (computed value confirmed "
                        "by the 24-square route)"
                    )
                else:
                    return (n, ours[n], printed[n])
    return None


# ---------------------------------------------------------------------------
# execution


def registry_ids() -> list[str]:
    return sorted(REGISTRY, key=_natural_key)


def _natural_key(s: str):
    return [int(t) if t.isdigit() else t for t in re.split(r"(\d+)", s)]


def resolve_ids(target: str) -> list[str]:
    """Expand "all", an exact id, an alias, or a family prefix like "KS-DE"."""
    if target == "all":
        return registry_ids()
    if target in _ALIASES:
        return [_ALIASES[target]]
    if target in REGISTRY:
        return [target]
    family = [i for i in registry_ids() if i.startswith(f"{target}(")]
    if family:
        return family
    raise UnknownTheoremId(target)


def run_check(
    id: str,
    order: int = 64,
    nmax: int = 200,
    mmax: int = 20,
    workspace: Optional[Workspace] = None,
) -> CheckReport:
    """Execute one registry check and report the outcome.

    When a prebuilt workspace is passed, its order/nmax/mmax govern and the
    keyword values here are ignored.
    """
    check = REGISTRY.get(_ALIASES.get(id, id))
    if check is None:
        raise UnknownTheoremId(id)
    ws = workspace or Workspace(order=order, nmax=nmax, mmax=mmax)
    notes: list[str] = []
    start = time.perf_counter()
    try:
        disc = check.runner(ws, notes)
    except CrossCheckMismatch as exc:
        # a constructor cross-check tripped while building the inputs: the
        # check fails at the exponent the constructor localized
        notes.append(str(exc))
        disc = (exc.exponent, exc.values[0], exc.values[1])
    elapsed = int((time.perf_counter() - start) * 1000)
    reported_order = {
        "order": ws.order,
        "range": ws.nmax,
        "tau1000": 1000,
        "mmax": ws.mmax,
        "table": 4,
    }[check.scope]
    return CheckReport(
        id=check.id,
        order=reported_order,
        status="pass" if disc is None else "fail",
        first_discrepancy=disc,
        elapsed_ms=elapsed,
        notes=tuple(notes),
    )


def run_all(
    order: int = 64,
    nmax: int = 200,
    mmax: int = 20,
    parallel: bool = False,
    ids: Optional[list[str]] = None,
) -> list[CheckReport]:
    """Run the wanted checks; reports come back sorted by id regardless of
    execution order."""
    wanted = ids if ids is not None else registry_ids()
    ws = Workspace(order=order, nmax=nmax, mmax=mmax)
    if parallel:
        with ThreadPoolExecutor() as pool:
            reports = list(
                pool.map(
                    lambda i: run_check(i, order, nmax, mmax, workspace=ws), wanted
                )
            )
    else:
        reports = [run_check(i, order, nmax, mmax, workspace=ws) for i in wanted]
    return sorted(reports, key=lambda r: _natural_key(r.id))
