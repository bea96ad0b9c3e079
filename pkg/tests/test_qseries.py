import random
from fractions import Fraction

import pytest

from eisen2.catalog import SeriesCatalog
from eisen2.qseries import (
    QSeries,
    ZeroConstantTerm,
    first_difference,
    qs_det,
    rational_str,
)

LAW_RUNS = 120


def random_series(rng, order=None):
    order = rng.randint(0, 16) if order is None else order
    return QSeries([rng.randint(-9, 9) for _ in range(order + 1)])


def test_add_examples():
    assert QSeries([1, 1]) + QSeries([1, -1]) == QSeries([2, 0])
    assert QSeries([1, 8]) + QSeries.zero(1) == QSeries([1, 8])
    cat = SeriesCatalog(8)
    doubled = cat.level2(1) + cat.level2(1)
    assert doubled.coeffs[:3] == (Fraction(2), Fraction(16), Fraction(-16))


def test_mul_examples():
    assert QSeries([1, 1, 0]) * QSeries([1, -1, 0]) == QSeries([1, 0, -1])
    a = QSeries([1, 8, -8, 32])
    assert a * QSeries.one(3) == a
    cat = SeriesCatalog(4)
    sq = cat.level2(1) * cat.level2(1)
    assert sq.coeffs[1] == 16


def test_theta_examples():
    assert QSeries.one(3).theta() == QSeries.zero(3)
    assert QSeries([1, 8, -8]).theta() == QSeries([0, 8, -16])
    cat = SeriesCatalog(24)
    a, b = cat.level2(1), cat.level2(2)
    assert a.theta() == (a * a - b).scale(Fraction(1, 4))


def test_invert():
    assert QSeries.one(5).invert() == QSeries.one(5)
    geom = QSeries([1, -1] + [0] * 6).invert()
    assert geom == QSeries([1] * 8)
    cat = SeriesCatalog(64)
    b = cat.level2(2)
    assert b * b.invert() == QSeries.one(64)
    with pytest.raises(ZeroConstantTerm):
        QSeries([0, 1]).invert()


def test_neg_q():
    assert QSeries([1, 1]).neg_q() == QSeries([1, -1])
    rng = random.Random(5)
    for _ in range(50):
        a = random_series(rng)
        assert a.neg_q().neg_q() == a
    cat = SeriesCatalog(16)
    assert (cat.theta3() ** 8).neg_q() == cat.level2(2)


def test_pow():
    a = QSeries([1, 1, 0])
    assert a**0 == QSeries.one(2)
    assert a**2 == QSeries([1, 2, 1])
    cat = SeriesCatalog(4)
    assert (cat.theta3() ** 4).coeffs[1] == 8


def test_det_examples():
    one = QSeries.one(4)
    assert qs_det([[one]]) == one
    cat = SeriesCatalog(24)
    e4, e6, e8 = cat.level1(2), cat.level1(3), cat.level1(4)
    assert qs_det([[e4, e6], [e6, e8]]) == cat.delta().scale(1728)
    b, bs6, bs8 = cat.level2(2), cat.level2(3), cat.level2(4)
    lhs = qs_det([[b, bs6], [bs6, bs8]])
    assert lhs == cat.delta().scale(Fraction(-(2**6) * 3**2, 17))


def test_det_equal_rows_vanishes():
    rng = random.Random(11)
    for _ in range(30):
        row = [random_series(rng, 8) for _ in range(3)]
        other = [random_series(rng, 8) for _ in range(3)]
        assert qs_det([row, row, other]) == QSeries.zero(8)


def test_truncation_contract():
    a = QSeries([1, 2, 3, 4])
    b = QSeries([1, 1])
    assert (a + b).order == 1
    assert (a * b).order == 1
    # common-range equality
    assert a == QSeries([1, 2])
    assert a != QSeries([1, 1])
    assert a.truncate(2).order == 2
    assert a.truncate(9) is a


def test_first_difference():
    a = QSeries([1, 2, 3])
    b = QSeries([1, 2, 4, 9])
    assert first_difference(a, b) == (2, Fraction(3), Fraction(4))
    assert first_difference(a, a) is None


def test_serialization():
    assert rational_str(Fraction(3)) == "3"
    assert rational_str(Fraction(-32, 17)) == "-32/17"
    assert QSeries([1, Fraction(1, 2)]).to_strings() == ["1", "1/2"]


def test_ring_laws_randomized():
    rng = random.Random(2024)
    for _ in range(LAW_RUNS):
        order = rng.randint(0, 16)
        a = random_series(rng, order)
        b = random_series(rng, order)
        c = random_series(rng, order)
        assert a + b == b + a
        assert (a + b) + c == a + (b + c)
        assert a * b == b * a
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c


def test_theta_leibniz_randomized():
    rng = random.Random(99)
    for _ in range(LAW_RUNS):
        a = random_series(rng)
        b = random_series(rng)
        lhs = (a * b).theta()
        rhs = a.theta() * b + a * b.theta()
        assert lhs == rhs


def test_invert_two_sided_randomized():
    rng = random.Random(7)
    done = 0
    while done < LAW_RUNS:
        a = random_series(rng)
        if a.coeffs[0] == 0:
            continue
        inv = a.invert()
        assert a * inv == QSeries.one(a.order)
        assert inv * a == QSeries.one(a.order)
        done += 1


def test_fraction_coefficients_path():
    # mixed rational coefficients exercise the non-integer multiply path
    a = QSeries([Fraction(1, 2), Fraction(1, 3)])
    b = QSeries([Fraction(2), Fraction(-1, 5)])
    assert a * b == QSeries([Fraction(1), Fraction(2, 3) - Fraction(1, 10)])
