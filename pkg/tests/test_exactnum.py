from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st
from mpmath import mp

from veech.exactnum import QQ, NumberField, compare, interval_bounds, interval_precision, to_interval

K3 = NumberField.quadratic(3)
K5 = NumberField.quadratic(5)
s3 = K3.gen


def test_defining_relation():
    assert s3 * s3 == 3


def test_conjugate_sum():
    assert (1 + s3) + (1 - s3) == 2


def test_norm_one_unit():
    assert (2 + s3) * (2 - s3) == 1


def test_compare_examples():
    assert compare(1 + s3, K3("27/10")) > 0
    assert compare(s3, s3) == 0
    assert compare(s3, K3("7/4")) < 0


def test_division_and_zero():
    x = K3("3 - 2*sqrt3")
    assert x * (1 / x) == 1
    with pytest.raises(ZeroDivisionError):
        x / K3.zero


def test_mismatched_fields():
    with pytest.raises(ValueError):
        K3.gen + K5.gen


def test_parse_forms():
    assert K3("(1+sqrt3)^2") == K3("4 + 2*sqrt3")
    assert K3("1.25") == K3("5/4")
    assert QQ("7/4") == Fraction(7, 4)
    with pytest.raises(ValueError):
        K3("sin(3)")


def test_to_interval_examples():
    lo, hi = interval_bounds(to_interval(K3(3), 53))
    assert lo == hi == 3
    mp.prec = 200
    with interval_precision(53):
        v = to_interval(s3, 53)
        assert v.a <= mp.sqrt(3) <= v.b


def test_interval_width_shrinks():
    widths = []
    for bits in (16, 32, 64, 128, 256):
        lo, hi = interval_bounds(to_interval(1 + s3, bits))
        widths.append(hi - lo)
        assert hi - lo <= Fraction(2) ** (1 - bits) * 3
    assert widths == sorted(widths, reverse=True)


def test_json_round_trip():
    x = K3("1/2 + 3/4*sqrt3")
    assert x.to_json() == ["1/2", "3/4"]
    assert K3.from_json(x.to_json()) == x


rat = st.fractions(min_value=-50, max_value=50, max_denominator=40)
elements = st.builds(lambda a, b: K3.from_json([str(a), str(b)]), rat, rat)


@settings(max_examples=200, deadline=None)
@given(elements, elements, elements)
def test_field_axioms(x, y, z):
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x * y == y * x


@settings(max_examples=200, deadline=None)
@given(elements, elements)
def test_compare_matches_refined_intervals(x, y):
    c = compare(x, y)
    if x == y:
        assert c == 0
        return
    with interval_precision(400):
        dx, dy = to_interval(x, 400), to_interval(y, 400)
        if dx.b < dy.a:
            assert c < 0
        elif dy.b < dx.a:
            assert c > 0


@settings(max_examples=100, deadline=None)
@given(elements, st.integers(min_value=16, max_value=200))
def test_interval_contains_finer(x, bits):
    lo, hi = interval_bounds(to_interval(x, bits))
    lo4, hi4 = interval_bounds(to_interval(x, 4 * bits))
    assert lo <= lo4 <= hi4 <= hi


def test_sign_is_symbolic():
    # (sqrt3 - 1)^2 - (4 - 2 sqrt3) vanishes exactly
    assert ((s3 - 1) ** 2 - (4 - 2 * s3)).sign() == 0
    tiny = K3("716035/413403") - s3  # a close convergent
    assert tiny.sign() != 0
    lo, hi = interval_bounds(to_interval(tiny, 200))
    assert lo <= Fraction(716035, 413403) - Fraction(3 ** 0.5) + Fraction(1, 10 ** 12)
    assert hi >= Fraction(716035, 413403) - Fraction(3 ** 0.5) - Fraction(1, 10 ** 12)


def test_negative_interval_bounds():
    lo, hi = interval_bounds(to_interval(-s3, 64))
    assert lo < hi < 0
