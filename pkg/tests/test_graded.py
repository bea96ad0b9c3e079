import random
from fractions import Fraction

import pytest

from eisen2.catalog import SeriesCatalog
from eisen2.graded import (
    LEVEL1,
    LEVEL2,
    BasisDecomposition,
    GradedPoly,
    NotHomogeneous,
    ResidualMismatch,
    RingMismatch,
    SingularSystem,
    _solve_fraction_free,
    check_positivity,
    decompose_modular,
    e_star_poly,
    gp_evaluate,
    modular_dimension,
    serre_delta,
    serre_partial,
)
LAW_RUNS = 110


def random_homogeneous(rng, ring, weight, allow_first=True):
    """Random homogeneous polynomial of the given weight (may be zero)."""
    from eisen2.graded import _WEIGHTS

    w = _WEIGHTS[ring]
    terms = {}
    for a in range(0, weight // w[0] + 1 if allow_first else 1):
        for b in range(0, (weight - a * w[0]) // w[1] + 1):
            rest = weight - a * w[0] - b * w[1]
            if rest % w[2] == 0:
                c = rest // w[2]
                if rng.random() < 0.5:
                    coeff = rng.randint(-9, 9)
                    if coeff:
                        terms[(a, b, c)] = Fraction(coeff)
    return GradedPoly(ring, terms)


def test_arithmetic_examples():
    bc2 = GradedPoly.monomial(LEVEL2, (0, 1, 2))
    assert bc2 + GradedPoly.zero(LEVEL2) == bc2
    prod = GradedPoly.monomial(LEVEL2, (1, 0, 0), 3) * GradedPoly.monomial(
        LEVEL2, (0, 0, 1), 2
    )
    assert prod == GradedPoly(LEVEL2, {(1, 0, 1): 6})
    assert prod.weight() == 4
    e8 = (
        GradedPoly(LEVEL2, {(0, 2, 0): 9, (0, 1, 2): 8}).scale(Fraction(1, 17))
    )
    assert e8 == e_star_poly(4)


def test_ring_mismatch():
    with pytest.raises(RingMismatch):
        GradedPoly.generator(LEVEL1, "E2") + GradedPoly.generator(LEVEL2, "A")
    with pytest.raises(RingMismatch):
        serre_delta(GradedPoly.generator(LEVEL1, "E4"))
    with pytest.raises(RingMismatch):
        serre_partial(GradedPoly.generator(LEVEL2, "B"))


def test_serre_delta_examples():
    c2 = GradedPoly.monomial(LEVEL2, (0, 0, 2))
    assert serre_delta(c2) == GradedPoly(LEVEL2, {(0, 1, 1): -1})
    c3 = GradedPoly.monomial(LEVEL2, (0, 0, 3))
    assert serre_delta(c3) == GradedPoly(LEVEL2, {(0, 1, 2): Fraction(-3, 2)})
    bc = GradedPoly.monomial(LEVEL2, (0, 1, 1))
    assert serre_delta(bc) == GradedPoly(
        LEVEL2, {(0, 2, 0): Fraction(-1, 2), (0, 1, 2): -1}
    )
    d_poly = GradedPoly(LEVEL2, {(0, 1, 0): Fraction(-1, 64), (0, 0, 2): Fraction(1, 64)})
    assert serre_delta(d_poly).is_zero()


def test_serre_partial_examples():
    assert serre_partial(GradedPoly.generator(LEVEL1, "E4")) == GradedPoly(
        LEVEL1, {(0, 0, 1): Fraction(-1, 3)}
    )
    assert serre_partial(GradedPoly.generator(LEVEL1, "E6")) == GradedPoly(
        LEVEL1, {(0, 2, 0): Fraction(-1, 2)}
    )
    assert serre_partial(GradedPoly.generator(LEVEL1, "E2")) == GradedPoly(
        LEVEL1, {(2, 0, 0): Fraction(-1, 12), (0, 1, 0): Fraction(-1, 12)}
    )
    disc = GradedPoly(LEVEL1, {(0, 3, 0): 1, (0, 0, 2): -1})
    assert serre_partial(disc).is_zero()


def test_not_homogeneous():
    mixed = GradedPoly(LEVEL2, {(1, 0, 0): 1, (0, 1, 0): 1})
    with pytest.raises(NotHomogeneous):
        serre_delta(mixed)
    with pytest.raises(NotHomogeneous):
        serre_delta(GradedPoly.generator(LEVEL2, "B"), weight=2)


def test_weight_raising_randomized():
    rng = random.Random(31)
    for _ in range(LAW_RUNS):
        weight = rng.choice(range(2, 21, 2))
        f = random_homogeneous(rng, LEVEL2, weight)
        image = serre_delta(f, weight)
        if not image.is_zero():
            assert image.weight() == weight + 2


def test_leibniz_randomized_both_derivatives():
    rng = random.Random(32)
    for _ in range(LAW_RUNS):
        wf = rng.choice(range(2, 13, 2))
        wg = rng.choice(range(2, 13, 2))
        f = random_homogeneous(rng, LEVEL2, wf)
        g = random_homogeneous(rng, LEVEL2, wg)
        assert serre_delta(f * g) == serre_delta(f) * g + f * serre_delta(g)
        f1 = random_homogeneous(rng, LEVEL1, wf)
        g1 = random_homogeneous(rng, LEVEL1, wg)
        assert serre_partial(f1 * g1) == serre_partial(f1) * g1 + f1 * serre_partial(g1)


def test_evaluation_is_ring_morphism():
    rng = random.Random(33)
    cat = SeriesCatalog(32)
    for _ in range(LAW_RUNS):
        ring = rng.choice((LEVEL1, LEVEL2))
        f = random_homogeneous(rng, ring, rng.choice(range(2, 11, 2)))
        g = random_homogeneous(rng, ring, rng.choice(range(2, 11, 2)))
        assert gp_evaluate(f * g, cat) == gp_evaluate(f, cat) * gp_evaluate(g, cat)
        assert gp_evaluate(f + g, cat) == gp_evaluate(f, cat) + gp_evaluate(g, cat)


def test_serre_evaluation_consistency():
    rng = random.Random(34)
    cat = SeriesCatalog(24)
    a = cat.level2(1)
    for _ in range(LAW_RUNS):
        weight = rng.choice(range(2, 15, 2))
        f = random_homogeneous(rng, LEVEL2, weight)
        series = gp_evaluate(f, cat)
        expected = series.theta() - (a * series).scale(Fraction(weight, 4))
        assert gp_evaluate(serre_delta(f, weight), cat) == expected


def test_negativity_of_basis_derivatives():
    for k in range(1, 11):
        for j in range(0, k // 2 + 1):
            image = serre_delta(GradedPoly.monomial(LEVEL2, (0, j, k - 2 * j)))
            assert not image.is_zero()
            for (a, b, c), coeff in image.terms.items():
                assert a == 0
                assert b >= 1
                assert coeff < 0


def test_modular_dimension():
    assert modular_dimension(2) == 1
    assert modular_dimension(4) == 2
    assert modular_dimension(8) == 3
    assert modular_dimension(12) == 4


def test_decompose_examples():
    cat = SeriesCatalog(24)
    dec = decompose_modular(cat.level2(4), 8, cat)
    assert dec.coefficients == (Fraction(9, 17), Fraction(8, 17), Fraction(0))
    assert dec.basis_exponents() == [(0, 2, 0), (0, 1, 2), (0, 0, 4)]
    dec12 = decompose_modular(cat.level2(6), 12, cat)
    assert dec12.coefficients == (
        Fraction(189, 691),
        Fraction(486, 691),
        Fraction(16, 691),
        Fraction(0),
    )
    dec4 = decompose_modular(cat.level2(2), 4, cat)
    assert dec4.coefficients == (Fraction(1), Fraction(0))


def test_decompose_kernel_form():
    cat = SeriesCatalog(24)
    d_poly = GradedPoly(LEVEL2, {(0, 1, 0): Fraction(-1, 64), (0, 0, 2): Fraction(1, 64)})
    dec = decompose_modular(gp_evaluate(d_poly, cat), 4, cat)
    assert dec.coefficients == (Fraction(-1, 64), Fraction(1, 64))
    assert dec.as_poly() == d_poly
    assert gp_evaluate(d_poly, cat) == cat.D()


def test_decompose_rejects_quasi_modular():
    cat = SeriesCatalog(24)
    with pytest.raises(ResidualMismatch) as info:
        decompose_modular(cat.level2(1), 2, cat)
    assert info.value.exponent == 1
    # the level-1 weight-2 series is quasi-modular as well
    with pytest.raises(ResidualMismatch):
        decompose_modular(cat.level1(1), 2, cat)


def test_decompose_order_precondition():
    cat = SeriesCatalog(3)
    with pytest.raises(ValueError):
        decompose_modular(cat.level2(2), 4, cat)


def test_solver_detects_singular_matrix():
    one = Fraction(1)
    with pytest.raises(SingularSystem):
        _solve_fraction_free([[one, one], [one, one]], [one, one])


def test_solver_first_nonzero_pivot():
    zero, one = Fraction(0), Fraction(1)
    x = _solve_fraction_free([[zero, one], [one, zero]], [Fraction(3), Fraction(5)])
    assert x == [Fraction(5), Fraction(3)]


def test_e_star_poly_examples():
    assert e_star_poly(2) == GradedPoly.monomial(LEVEL2, (0, 1, 0))
    assert e_star_poly(3) == GradedPoly.monomial(LEVEL2, (0, 1, 1))
    assert e_star_poly(4) == GradedPoly(
        LEVEL2, {(0, 2, 0): Fraction(9, 17), (0, 1, 2): Fraction(8, 17)}
    )
    assert e_star_poly(5) == GradedPoly(
        LEVEL2, {(0, 2, 1): Fraction(27, 31), (0, 1, 3): Fraction(4, 31)}
    )
    assert e_star_poly(6) == GradedPoly(
        LEVEL2,
        {
            (0, 3, 0): Fraction(189, 691),
            (0, 2, 2): Fraction(486, 691),
            (0, 1, 4): Fraction(16, 691),
        },
    )
    with pytest.raises(ValueError):
        e_star_poly(1)


def test_positivity():
    for m in range(2, 21):
        assert check_positivity(m)


def test_evaluated_e_star_poly_matches_series():
    cat = SeriesCatalog(20)
    for m in (2, 4, 5, 6):
        assert gp_evaluate(e_star_poly(m), cat) == cat.level2(m)


def test_delta_equal_family():
    cat = SeriesCatalog(32)
    a, c = cat.level2(1), cat.C()

    def delta4(s):
        return s.theta() - a * s

    members = [
        c * c,
        cat.level2(2),
        cat.level2(4) * cat.level2(2).invert(),
        cat.level2(5) * cat.level2(3).invert(),
        cat.level1(2),
    ]
    images = [delta4(s) for s in members]
    assert all(img == images[0] for img in images[1:])


def test_cusp_form_bases():
    cat = SeriesCatalog(32)
    d_poly = GradedPoly(LEVEL2, {(0, 1, 0): Fraction(-1, 64), (0, 0, 2): Fraction(1, 64)})
    b = GradedPoly.generator(LEVEL2, "B")
    c = GradedPoly.generator(LEVEL2, "C")
    cusp_polys = {
        "BD": b * d_poly,
        "BCD": b * c * d_poly,
        "B2D": b * b * d_poly,
        "BD2": b * d_poly * d_poly,
    }
    for poly in cusp_polys.values():
        assert gp_evaluate(poly, cat).coeffs[0] == 0
    assert gp_evaluate(cusp_polys["B2D"], cat) == cat.delta()


def test_basis_decomposition_records():
    dec = BasisDecomposition(8, (Fraction(9, 17), Fraction(8, 17), Fraction(0)))
    assert dec.to_records() == [(0, 1, 2, "8/17"), (0, 2, 0, "9/17")]
