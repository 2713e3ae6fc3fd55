"""Number core: literals, rendering, regularity, reciprocals, roots."""

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from sexakit.errors import (
    IrregularDivisor,
    MalformedLiteral,
    NegativeRadicand,
    NonTerminating,
    NotAPerfectSquare,
    ZeroInput,
)
from sexakit.sexa import (
    Sexa,
    SexaDigits,
    add,
    decompose,
    halve,
    is_regular,
    mul,
    parse,
    reciprocal,
    render,
    sqrt_exact,
    square,
    sub,
)


def smooth_values(max_exp=6, max_num=10**6):
    """Strategy: rationals whose denominator is 60-smooth."""
    return st.builds(
        lambda num, a, b, c: Sexa(num, 2**a * 3**b * 5**c),
        st.integers(-max_num, max_num),
        st.integers(0, max_exp), st.integers(0, max_exp),
        st.integers(0, max_exp))


regular_values = st.builds(
    lambda s, a, b, c: Sexa(s) * Sexa(2)**a * Sexa(3)**b * Sexa(5)**c,
    st.sampled_from([1, -1]),
    st.integers(-6, 6), st.integers(-6, 6), st.integers(-6, 6))


class TestParse:
    @pytest.mark.parametrize("text,value", [
        ("0;1,52,30", Fraction(1, 32)),
        ("0", 0),
        ("21,9;8,26,15",
         Fraction(1269) + Fraction(8, 60) + Fraction(26, 3600)
         + Fraction(15, 216000)),
        ("45", 45),
        ("1,12,0", 4320),
        ("40,0", 2400),
        ("-0;30", Fraction(-1, 2)),
        ("0;48", Fraction(4, 5)),
    ])
    def test_values(self, text, value):
        assert parse(text) == value

    def test_colon_is_radix_synonym(self):
        # transliterations write "14:3,45" for 14;3,45
        assert parse("14:3,45") == parse("14;3,45") == Fraction(225, 16)

    @pytest.mark.parametrize("sloppy,canonical", [
        ("0,5", "5"),            # leading zero group
        ("07", "7"),             # zero-padded digit
        ("1;30,0", "1;30"),      # trailing fractional zero
        ("00;05", "0;5"),
        ("-0", "0"),
        (" 5 ", "5"),
    ])
    def test_lenient_then_canonical(self, sloppy, canonical):
        assert render(parse(sloppy)) == canonical

    @pytest.mark.parametrize("bad", [
        "", "-", ";", "1;;2", "1;2;3", "1:2;3", "61", "1,61", "99",
        "100", "1,,2", ",1", "1,", "5;", ";5", "1.5", "3/4", "abc",
        "1, 2", "٥",
    ])
    def test_malformed(self, bad):
        with pytest.raises(MalformedLiteral):
            parse(bad)


class TestRender:
    @pytest.mark.parametrize("value,text", [
        (Fraction(1, 32), "0;1,52,30"),
        (5, "5"),
        (0, "0"),
        (4320, "1,12,0"),
        (Fraction(-93, 2), "-46;30"),
        (Fraction(9, 64), "0;8,26,15"),
    ])
    def test_values(self, value, text):
        assert render(value) == text

    def test_one_seventh_does_not_terminate(self):
        with pytest.raises(NonTerminating) as err:
            render(Fraction(1, 7))
        assert err.value.prime == 7

    def test_fraction_fallback(self):
        assert render(Fraction(1, 7), fraction_fallback=True) == "1/7"
        assert render(Fraction(1, 2), fraction_fallback=True) == "0;30"

    def test_no_radix_point_for_integers(self):
        assert ";" not in render(Sexa("1,0"))


class TestArithmetic:
    def test_tablet_addition(self):
        # obv.28-29: the completed square
        assert add(parse("20,3;13,21,33,45"), parse("1,5;55,4,41,15")) \
            == parse("21,9;8,26,15")

    def test_tablet_subtraction(self):
        # rev.9
        assert sub(parse("16;15"), parse("0;1,40")) == parse("16;13,20")

    def test_mul_identity(self):
        x = parse("7;45")
        assert mul(x, 1) == x

    def test_halve(self):
        assert halve(parse("1,9;22,30")) == parse("34;41,15")
        assert halve(parse("0;10")) == parse("0;5")
        assert halve(0) == 0

    def test_square(self):
        assert square(parse("34;41,15")) == parse("20,3;13,21,33,45")
        assert square(parse("0;5")) == parse("0;0,25")
        assert square(0) == 0

    def test_sexa_is_closed_under_operators(self):
        x = Sexa("0;30")
        for value in (x + 1, 1 + x, x - 1, 1 - x, x * 2, 2 * x,
                      x / 2, 2 / x, -x, abs(-x), x ** 2):
            assert isinstance(value, Sexa)

    def test_floats_rejected(self):
        with pytest.raises(TypeError):
            Sexa(0.5)
        with pytest.raises(TypeError):
            Sexa("0;30") + 0.5

    def test_equality_and_hash_against_fraction(self):
        assert Sexa("0;30") == Fraction(1, 2)
        assert hash(Sexa("0;30")) == hash(Fraction(1, 2))
        assert Sexa(5) == 5

    @given(smooth_values(), smooth_values())
    def test_add_mul_commute(self, x, y):
        assert x + y == y + x
        assert x * y == y * x

    @given(smooth_values(max_exp=4, max_num=10**4),
           smooth_values(max_exp=4, max_num=10**4),
           smooth_values(max_exp=4, max_num=10**4))
    def test_add_mul_associate(self, x, y, z):
        assert (x + y) + z == x + (y + z)
        assert (x * y) * z == x * (y * z)


class TestRegularity:
    @pytest.mark.parametrize("value,expected", [
        (45, True),         # obv.12 takes igi-45
        (13, False),        # rev.7 multiplies by 13 instead
        (7, False),
        (1, True),
        (2400, True),       # the worker gang 40,0
        (Fraction(4, 5), True),
        (Fraction(3, 7), False),
        (Fraction(7, 3), False),
        (-30, True),
    ])
    def test_examples(self, value, expected):
        assert is_regular(value) is expected

    def test_zero_rejected(self):
        with pytest.raises(ZeroInput):
            is_regular(0)

    def test_matches_brute_force_up_to_ten_thousand(self):
        for n in range(1, 10001):
            m = n
            for p in (2, 3, 5):
                while m % p == 0:
                    m //= p
            assert is_regular(n) is (m == 1), n

    def test_equivalent_to_reciprocal_rendering(self):
        # a nonzero integer is regular exactly when 1/n renders finitely
        for n in range(1, 10001):
            try:
                render(Fraction(1, n))
                renders = True
            except NonTerminating:
                renders = False
            assert is_regular(n) is renders, n


class TestReciprocal:
    @pytest.mark.parametrize("value,expected", [
        ("40,0", "0;0,1,30"),   # SMT 25 rev.29
        ("0;48", "1;15"),       # SMT 25 rev.31-32
        ("5", "0;12"),
        ("45", "0;1,20"),
        ("32", "0;1,52,30"),
        ("0;10", "6"),
        ("12", "0;5"),
        ("1", "1"),
    ])
    def test_table(self, value, expected):
        assert reciprocal(parse(value)) == parse(expected)

    def test_exact_inverse(self):
        x = parse("0;48")
        assert mul(x, reciprocal(x)) == 1

    def test_irregular_rejected(self):
        with pytest.raises(IrregularDivisor) as err:
            reciprocal(13)
        assert err.value.prime == 13
        with pytest.raises(IrregularDivisor):
            reciprocal(Sexa("46;30"))
        with pytest.raises(IrregularDivisor):
            reciprocal(Sexa(3, 7))    # smooth denominator is not enough

    def test_zero_rejected(self):
        with pytest.raises(ZeroInput):
            reciprocal(0)

    @given(regular_values)
    def test_product_with_reciprocal_is_one(self, x):
        assert x * reciprocal(x) == 1


class TestSqrt:
    def test_tablet_roots(self):
        assert sqrt_exact(parse("21,9;8,26,15")) == parse("35;37,30")
        assert sqrt_exact(parse("0;10,25")) == parse("0;25")

    def test_zero(self):
        assert sqrt_exact(0) == 0

    def test_never_approximates(self):
        with pytest.raises(NotAPerfectSquare):
            sqrt_exact(2)
        with pytest.raises(NotAPerfectSquare):
            sqrt_exact(Fraction(1, 7))

    def test_negative(self):
        with pytest.raises(NegativeRadicand):
            sqrt_exact(-4)

    @given(smooth_values())
    def test_inverts_square(self, x):
        assert sqrt_exact(square(x)) == abs(x)


class TestRoundTrips:
    @given(smooth_values())
    def test_parse_render(self, x):
        assert parse(render(x)) == x

    @given(smooth_values())
    def test_render_is_canonical_fixed_point(self, x):
        text = render(x)
        assert render(parse(text)) == text

    @given(st.integers(-59, 59), st.integers(0, 59), st.integers(0, 59))
    def test_literal_canonicalization_is_idempotent(self, a, b, c):
        text = f"{abs(a)},{b};{c}"
        value = parse(text)
        assert parse(render(value)) == value


class TestDigits:
    def test_decompose(self):
        d = decompose(parse("21,9;8,26,15"))
        assert d.sign == 1
        assert d.integer_digits == (21, 9)
        assert d.fraction_digits == (8, 26, 15)
        assert d.value() == parse("21,9;8,26,15")

    def test_zero_form(self):
        d = decompose(0)
        assert d.digits == (0,) and d.radix_offset == 1
        assert d.to_string() == "0"

    @pytest.mark.parametrize("sign,digits,offset", [
        (1, (), 1),             # empty
        (1, (60,), 1),          # digit out of range
        (1, (0, 5), 2),         # leading zero integer digit
        (1, (1, 0), 1),         # trailing zero fraction digit
        (1, (1, 2), 0),         # empty integer part
        (-1, (0,), 1),          # negative zero
        (2, (1,), 1),           # bad sign
    ])
    def test_invariants_enforced(self, sign, digits, offset):
        with pytest.raises(ValueError):
            SexaDigits(sign, digits, offset)
