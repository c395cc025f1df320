"""Family term grammar, instantiation rules, and the built-in catalog."""

from fractions import Fraction

import pytest

from qramsey.arith import PolynomialQ
from qramsey.patterns import (
    AffineTerm,
    Family,
    InvalidInstantiationError,
    OffsetTerm,
    PatternSyntaxError,
    PowerTerm,
    VarX,
    VarY,
    builtin_family,
    default_catalog,
    instantiate,
    parse_family,
)


class TestTermValues:
    def test_schur_instantiation(self):
        fam = builtin_family("schur")
        assert instantiate(fam, 2, 3) == (Fraction(2), Fraction(3), Fraction(5))

    def test_power_term_divides_for_negative_exponent(self):
        t = PowerTerm(-2)
        assert t.value(Fraction(3), Fraction(2)) == Fraction(3, 4)

    def test_affine_term_scales_y_before_polynomial(self):
        # 2x + p(3y) with p = t^2: at (1, 2) gives 2 + 36.
        t = AffineTerm(Fraction(2), PolynomialQ([0, 0, 1]), Fraction(3))
        assert t.value(Fraction(1), Fraction(2)) == Fraction(38)

    def test_offset_term_ignores_y(self):
        t = OffsetTerm(Fraction(3))
        assert t.value(Fraction(5), Fraction(99)) == Fraction(8)
        assert not t.uses_y


class TestInstantiationGuards:
    def test_zero_y_rejected(self):
        with pytest.raises(InvalidInstantiationError, match="y must be nonzero"):
            instantiate(builtin_family("schur"), 1, 0)

    def test_zero_x_rejected_with_power_terms(self):
        with pytest.raises(InvalidInstantiationError, match="x must be nonzero"):
            instantiate(builtin_family("moreira(1)"), 0, 1)

    def test_zero_x_allowed_without_power_terms(self):
        vals = instantiate(builtin_family("schur"), 0, 2)
        assert vals == (Fraction(0), Fraction(2), Fraction(2))

    def test_strict_flag_forces_nonzero_x(self):
        fam = parse_family("x; y", strict_nonzero_x=True)
        with pytest.raises(InvalidInstantiationError):
            instantiate(fam, 0, 1)


class TestFamilyValidation:
    def test_duplicate_terms_rejected(self):
        with pytest.raises(ValueError, match="duplicate"):
            Family((VarX(), VarX()))

    def test_empty_family_rejected(self):
        with pytest.raises(ValueError):
            Family(())

    def test_power_exponent_nonzero(self):
        with pytest.raises(ValueError):
            PowerTerm(0)

    def test_affine_constant_term_rejected(self):
        with pytest.raises(ValueError, match="zero constant term"):
            AffineTerm(Fraction(1), PolynomialQ([1, 1]), Fraction(1))

    def test_affine_zero_x_coefficient_rejected(self):
        with pytest.raises(ValueError, match="nonzero x coefficient"):
            AffineTerm(Fraction(0), PolynomialQ([0, 1]), Fraction(1))

    def test_offset_zero_rejected(self):
        with pytest.raises(ValueError):
            OffsetTerm(Fraction(0))


class TestParse:
    @pytest.mark.parametrize(
        "text,terms",
        [
            ("x", (VarX(),)),
            ("y", (VarY(),)),
            ("x * y^3", (PowerTerm(3),)),
            ("x / y^2", (PowerTerm(-2),)),
            ("x * y", (PowerTerm(1),)),
            ("x + t", (AffineTerm(Fraction(1), PolynomialQ([0, 1]), Fraction(1)),)),
            ("x - t^2", (AffineTerm(Fraction(1), PolynomialQ([0, 0, -1]), Fraction(1)),)),
            ("2*x + 3*t", (AffineTerm(Fraction(2), PolynomialQ([0, 3]), Fraction(1)),)),
            (
                "1/2*x + t^2 - t",
                (AffineTerm(Fraction(1, 2), PolynomialQ([0, -1, 1]), Fraction(1)),),
            ),
        ],
    )
    def test_single_terms(self, text, terms):
        assert parse_family(text).terms == terms

    def test_bare_y_means_linear_argument(self):
        assert parse_family("x + y") == parse_family("x + t")
        assert parse_family("x + y^2 - y") == parse_family("x + t^2 - t")

    def test_scaled_y_atom(self):
        fam = parse_family("x + (2*y)^2")
        (term,) = fam.terms
        assert term == AffineTerm(Fraction(1), PolynomialQ([0, 0, 1]), Fraction(2))
        assert term.value(Fraction(1), Fraction(3)) == Fraction(37)

    def test_mixed_scalings_rejected(self):
        with pytest.raises(PatternSyntaxError, match="mixed y scalings"):
            parse_family("x + (2*y)^2 + (3*y)")
        with pytest.raises(PatternSyntaxError, match="scaled and bare"):
            parse_family("x + (2*y)^2 + t")

    def test_mixed_t_and_y_rejected(self):
        with pytest.raises(PatternSyntaxError, match="mix of t and y"):
            parse_family("x + t + y")

    def test_offsets_gated(self):
        with pytest.raises(PatternSyntaxError, match="offset terms are disabled"):
            parse_family("x; x + 3")
        fam = parse_family("x; x + 3", allow_offsets=True)
        assert fam.terms == (VarX(), OffsetTerm(Fraction(3)))
        assert fam.has_offsets()

    def test_nonzero_constant_in_polynomial_rejected(self):
        with pytest.raises(PatternSyntaxError, match="constant term must be zero"):
            parse_family("x + t + 1", allow_offsets=True)

    def test_error_position_is_absolute(self):
        with pytest.raises(PatternSyntaxError) as ei:
            parse_family("x; y; qq")
        assert ei.value.position == 6

    def test_empty_term_rejected(self):
        with pytest.raises(PatternSyntaxError, match="empty term"):
            parse_family("x;; y")

    def test_flags_carried(self):
        fam = parse_family("x; y", require_distinct_values=True, strict_nonzero_x=True)
        assert fam.require_distinct_values
        assert fam.strict_nonzero_x


class TestSerializeRoundTrip:
    def test_catalog_round_trips(self):
        for key, fam in default_catalog().items():
            again = parse_family(fam.serialize())
            assert again == fam, key

    def test_offset_family_round_trips(self):
        fam = parse_family("x; x + 3; x - 1/2", allow_offsets=True)
        assert parse_family(fam.serialize(), allow_offsets=True) == fam

    def test_scaled_atom_round_trips(self):
        fam = parse_family("2*x + (1/3*y)^2 - (1/3*y)")
        assert parse_family(fam.serialize()) == fam


class TestCatalog:
    def test_default_catalog_keys(self):
        assert sorted(default_catalog()) == [
            "bowen-sabok(1)",
            "moreira(1)",
            "product-poly(1,[t])",
            "question-hs",
            "quotient-poly(1,[t])",
            "schur",
            "vdw(2)",
        ]

    @pytest.mark.parametrize(
        "key,text",
        [
            ("schur", "x; y; x + t"),
            ("vdw(2)", "x; x + t; x + 2*t"),
            ("vdw(3)", "x; x + t; x + 2*t; x + 3*t"),
            ("moreira(1)", "x; x * y^1; x + t"),
            ("moreira(2,[t;t^2])", "x; x * y^1; x + t; x + t^2"),
            ("bowen-sabok(1)", "x; y; x * y^1; x + t"),
            ("quotient-poly(1,[t])", "x; x / y^1; x + t"),
            ("quotient-poly(2,[t;t^2])", "x; x / y^2; x + t; x + t^2"),
            ("product-poly(1,[t])", "x; x * y^1; x + t"),
            ("question-hs", "x; y; x * y^1; x + t"),
        ],
    )
    def test_catalog_serializations(self, key, text):
        assert builtin_family(key).serialize() == text

    @pytest.mark.parametrize(
        "bad",
        ["nope", "schur(1)", "vdw", "vdw(0)", "vdw(1,2)", "moreira(2,[t)", "vdw(x)", "quotient-poly(0,[t])"],
    )
    def test_bad_keys_raise_keyerror(self, bad):
        with pytest.raises(KeyError):
            builtin_family(bad)

    def test_power_families_require_nonzero_x(self):
        assert builtin_family("moreira(1)").requires_nonzero_x
        assert builtin_family("quotient-poly(1,[t])").requires_nonzero_x
        assert not builtin_family("schur").requires_nonzero_x

    def test_y_usage_flag(self):
        assert builtin_family("schur").uses_y
        assert not parse_family("x; x + 3", allow_offsets=True).uses_y
