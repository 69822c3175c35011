from fractions import Fraction

import pytest

from borderrank.arith import LaurentPoly, MultiPoly, format_rational, poly_arith, rational

t = LaurentPoly.t()


def lp(d):
    return LaurentPoly(d)


def test_difference_of_squares():
    assert poly_arith(t + 1, t - 1, "mul") == lp({2: 1, 0: -1})


def test_exponents_add():
    assert poly_arith(LaurentPoly.monomial(-6), LaurentPoly.monomial(3), "mul") == LaurentPoly.monomial(-3)


def test_halves_add_up():
    half_sq = LaurentPoly.monomial(2, Fraction(1, 2))
    assert poly_arith(half_sq, half_sq, "add") == LaurentPoly.monomial(2)


def test_sub_and_neg():
    p = lp({1: 3, 2: -1})
    assert poly_arith(p, p, "sub").is_zero()
    assert poly_arith(p, None, "neg") == lp({1: -3, 2: 1})
    with pytest.raises(ValueError):
        poly_arith(p, p, "div")


@pytest.mark.parametrize(
    "p, v",
    [
        (lp({3: 1, 5: 2}), 3),
        (lp({-6: 1, 0: 1}), -6),
        (LaurentPoly.zero(), float("inf")),
    ],
)
def test_valuation(p, v):
    assert p.valuation() == v


@pytest.mark.parametrize(
    "p, k, c",
    [
        (lp({1: 3, 2: -1}), 1, 3),
        (lp({1: 3, 2: -1}), 0, 0),
        (lp({-2: 1, -1: 5}), -1, 5),
    ],
)
def test_coefficient(p, k, c):
    assert p.coefficient(k) == c


@pytest.mark.parametrize(
    "p, d",
    [
        (LaurentPoly.monomial(2), lp({1: 2})),
        (LaurentPoly.const(5), LaurentPoly.zero()),
        (LaurentPoly.monomial(-1), lp({-2: -1})),
    ],
)
def test_derivative(p, d):
    assert p.derivative() == d


def test_shift_truncate_evaluate():
    p = lp({-1: 2, 0: 1, 3: 4})
    assert p.shift(2) == lp({1: 2, 2: 1, 5: 4})
    assert p.truncate(0) == lp({-1: 2, 0: 1})
    assert p.evaluate(2) == Fraction(1) + 1 + 32
    with pytest.raises(ZeroDivisionError):
        p.evaluate(0)


def test_pairs_roundtrip():
    p = lp({-2: Fraction(-7, 25), 4: Fraction(3200, 63)})
    assert LaurentPoly.from_pairs(p.to_pairs()) == p


def test_multipoly_evaluate():
    s, tt = MultiPoly.var("s"), MultiPoly.var("t")
    assert (s * tt).evaluate({"s": 2, "t": 3}) == 6
    sig, tau = MultiPoly.var("sigma"), MultiPoly.var("tau")
    assert (sig + tau).evaluate({"sigma": 1, "tau": Fraction(1, 2)}) == Fraction(3, 2)
    assert MultiPoly.zero().evaluate({}) == 0


def test_multipoly_missing_parameter_named():
    with pytest.raises(KeyError, match="tau"):
        (MultiPoly.var("sigma") * MultiPoly.var("tau")).evaluate({"sigma": 1})


def test_multipoly_cancellation_and_variables():
    s = MultiPoly.var("s")
    assert (s * 2 - s - s).is_zero()
    assert ((s + MultiPoly.var("u")) * s).variables() == {"s", "u"}


def test_rational_parsing():
    assert rational("-7/25") == Fraction(-7, 25)
    assert format_rational(Fraction(3200, 63)) == "3200/63"
    assert format_rational(Fraction(4)) == "4"
    with pytest.raises(ValueError):
        rational("1//2")
    with pytest.raises(TypeError):
        rational(0.5)
