"""Rational and polynomial layer."""

import random
from fractions import Fraction

import pytest

from qramsey.arith import (
    DegenerateRationalError,
    PolynomialQ,
    PolynomialSyntaxError,
    difference_degree_check,
    format_polynomial,
    format_rational,
    parse_polynomial,
    parse_rational,
    rational_make,
)


def rand_fraction(rng, span=50):
    return Fraction(rng.randint(-span, span), rng.randint(1, span))


def rand_poly(rng, max_deg=4):
    return PolynomialQ([rand_fraction(rng, 9) for _ in range(rng.randint(0, max_deg + 1))])


class TestRationalMake:
    def test_normal_form(self):
        q = rational_make(6, -4)
        assert q == Fraction(-3, 2)
        assert q.denominator == 2

    def test_integer_default_denominator(self):
        assert rational_make(7) == 7

    def test_zero_denominator_rejected(self):
        with pytest.raises(DegenerateRationalError, match="zero denominator"):
            rational_make(1, 0)
        with pytest.raises(DegenerateRationalError):
            rational_make(0, 0)


class TestRationalText:
    @pytest.mark.parametrize(
        "text,value",
        [("3", Fraction(3)), ("-5", Fraction(-5)), ("3/4", Fraction(3, 4)),
         ("-6/4", Fraction(-3, 2)), (" 2 / 3 ", Fraction(2, 3)), ("0", Fraction(0))],
    )
    def test_parse(self, text, value):
        assert parse_rational(text) == value

    @pytest.mark.parametrize("bad", ["", "x", "1.5", "1/0", "1//2", "2/-3x"])
    def test_parse_rejects(self, bad):
        with pytest.raises(ValueError):
            parse_rational(bad)

    def test_round_trip(self):
        rng = random.Random(11)
        for _ in range(300):
            q = rand_fraction(rng)
            assert parse_rational(format_rational(q)) == q

    def test_format_integer_has_no_slash(self):
        assert format_rational(Fraction(8, 4)) == "2"
        assert format_rational(Fraction(-7, 7)) == "-1"


class TestPolynomialBasics:
    def test_trailing_zeros_stripped(self):
        p = PolynomialQ([1, 2, 0, 0])
        assert p.coeffs == (Fraction(1), Fraction(2))
        assert p.degree == 1

    def test_zero_polynomial_degree_none(self):
        z = PolynomialQ([0, 0])
        assert z.coeffs == ()
        assert z.degree is None
        assert z.constant_term == 0
        assert z.eval(Fraction(5, 3)) == 0

    def test_eval_matches_naive_sum(self):
        rng = random.Random(23)
        for _ in range(200):
            p = rand_poly(rng)
            t = rand_fraction(rng, 12)
            naive = sum((c * t**i for i, c in enumerate(p.coeffs)), Fraction(0))
            assert p.eval(t) == naive

    def test_ring_ops_pointwise(self):
        rng = random.Random(31)
        for _ in range(200):
            p, q = rand_poly(rng), rand_poly(rng)
            t = rand_fraction(rng, 10)
            assert (p + q).eval(t) == p.eval(t) + q.eval(t)
            assert (p - q).eval(t) == p.eval(t) - q.eval(t)
            assert (-p).eval(t) == -p.eval(t)
            k = rand_fraction(rng, 6)
            assert p.scale(k).eval(t) == k * p.eval(t)

    def test_argument_transforms_pointwise(self):
        rng = random.Random(47)
        for _ in range(200):
            p = rand_poly(rng)
            t = rand_fraction(rng, 10)
            k = rand_fraction(rng, 6)
            g = rand_fraction(rng, 6)
            assert p.scale_argument(k).eval(t) == p.eval(k * t)
            assert p.shift_argument(g).eval(t) == p.eval(t + g)
            assert p.difference(g).eval(t) == p.eval(t + g) - p.eval(t)

    def test_difference_of_square_expanded(self):
        # (t+3)^2 - t^2 = 6t + 9
        p = PolynomialQ([0, 0, 1])
        assert p.difference(3) == PolynomialQ([9, 6])

    def test_hash_consistent_with_eq(self):
        assert PolynomialQ([1, 2]) == PolynomialQ([Fraction(1), Fraction(2), 0])
        assert hash(PolynomialQ([1, 2])) == hash(PolynomialQ([1, 2, 0]))


class TestPolynomialText:
    @pytest.mark.parametrize(
        "p,text",
        [
            (PolynomialQ([0, Fraction(-3, 2), 1]), "t^2 - 3/2*t"),
            (PolynomialQ([0, 1]), "t"),
            (PolynomialQ([0, -1]), "-t"),
            (PolynomialQ([5]), "5"),
            (PolynomialQ(), "0"),
            (PolynomialQ([Fraction(1, 2), 0, 2]), "2*t^2 + 1/2"),
        ],
    )
    def test_format_frozen(self, p, text):
        assert format_polynomial(p) == text

    def test_round_trip_random(self):
        rng = random.Random(5)
        for _ in range(300):
            p = rand_poly(rng)
            assert parse_polynomial(format_polynomial(p)) == p

    def test_parse_accumulates_repeated_exponents(self):
        assert parse_polynomial("t + t") == PolynomialQ([0, 2])
        assert parse_polynomial("t^2 - t^2") == PolynomialQ()

    def test_parse_alternate_variable(self):
        assert parse_polynomial("u^2 + u", var="u") == PolynomialQ([0, 1, 1])

    def test_parse_error_positions(self):
        with pytest.raises(PolynomialSyntaxError) as ei:
            parse_polynomial("")
        assert ei.value.position == 0
        with pytest.raises(PolynomialSyntaxError) as ei:
            parse_polynomial("t + q")
        assert ei.value.position == 3
        with pytest.raises(PolynomialSyntaxError):
            parse_polynomial("t^")
        with pytest.raises(PolynomialSyntaxError):
            parse_polynomial("2 ** t")


class TestDifferenceDegreeCheck:
    def test_true_degree_passes_any_shifts(self):
        rng = random.Random(61)
        for _ in range(100):
            p = rand_poly(rng, max_deg=3)
            d = p.degree if p.degree is not None else 0
            samples = []
            for _ in range(4):
                shifts = []
                while len(shifts) < d + 1:
                    g = rand_fraction(rng, 5)
                    if g != 0:
                        shifts.append(g)
                samples.append((shifts, rand_fraction(rng, 8)))
            assert difference_degree_check(p, d, samples)

    def test_degree_overshoot_fails_generically(self):
        # d+1 differences of t^(d+1) leave a nonzero constant.
        p = PolynomialQ([0, 0, 0, 1])
        assert not difference_degree_check(p, 2, [((1, 1, 1), 0)])
        assert difference_degree_check(p, 3, [((1, 1, 1, 1), 0)])

    def test_shift_count_validated(self):
        p = PolynomialQ([0, 1])
        with pytest.raises(ValueError, match="expected 2 shifts"):
            difference_degree_check(p, 1, [((1,), 0)])

    def test_zero_shift_rejected(self):
        p = PolynomialQ([0, 1])
        with pytest.raises(ValueError, match="nonzero"):
            difference_degree_check(p, 1, [((1, 0), 0)])

    def test_empty_samples_rejected(self):
        with pytest.raises(ValueError, match="nonempty"):
            difference_degree_check(PolynomialQ([0, 1]), 1, [])

    def test_negative_degree_rejected(self):
        with pytest.raises(ValueError, match="nonnegative"):
            difference_degree_check(PolynomialQ(), -1, [((1,), 0)])
