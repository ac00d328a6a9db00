from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from virtual_knot_lab.core.exceptions import DivisionByZeroError, ParamsMismatchError, ParseError
from virtual_knot_lab.modules.algebra.exactalg import (
    InvariantPoly,
    canonical_poly,
    format_poly,
    from_real,
    function_field,
    gauss,
    gcd_many,
    laurent_normalize_t,
    normalize_or_zero,
    parse_invariant,
    poly_gcd,
    poly_lcm,
    ratfun_arith,
    real_view,
    unit_orbit_of,
)

F = function_field(("x", "t"))
small = st.integers(min_value=-5, max_value=5)


def test_reduced_form():
    x = F.var("x")
    f = (x * x - 1) / (x - 1)
    assert f == x + 1
    assert f.is_polynomial()
    assert str(f) == "1+x"


def test_denominator_is_monic():
    f = F.parse("x/(2*x+4)")
    assert f.den == F.parse("x+2").num
    assert str(f) == "1/2*x/(2+x)"


def test_gaussian_coefficients():
    x = F.var("x")
    f = (x - F.const(gauss(0, 1))) * (x + F.const(gauss(0, 1)))
    assert f == x * x + 1
    g = F.parse("(1+I)*x")
    assert g * F.parse("(1-I)") == F.parse("2*x")
    assert not g.is_real()


def test_division_by_zero_carries_denominator():
    with pytest.raises(DivisionByZeroError) as excinfo:
        F.var("x") / F.zero()
    assert excinfo.value.denominator == F.zero()


def test_fields_do_not_mix():
    other = function_field(("y",))
    with pytest.raises(ParamsMismatchError):
        F.var("x") + other.var("y")


def test_parse_rejects_unknown_variables():
    with pytest.raises(ParseError):
        F.parse("x + q")
    with pytest.raises(ParseError):
        F.parse("")


def test_format_ascending_grlex():
    f = F.parse("2*t^4 + 5*t^2 + 2")
    assert str(f) == "2+5*t^2+2*t^4"
    assert format_poly(F.parse("-x*t + 3").num) == "3-x*t"


def test_canonical_poly_is_primitive_with_positive_lead():
    p = F.parse("-4*x^2 + 6*x - 2").num
    assert format_poly(canonical_poly(p)) == "1-3*x+2*x^2"
    q = F.parse("I*x + 2*I").num
    assert format_poly(canonical_poly(q)) == "2+x"
    r = F.parse("1/2*x + 1/3").num
    assert format_poly(canonical_poly(r)) == "2+3*x"


def test_gcd_and_lcm():
    p = F.parse("(x+1)*(x-2)*t").num
    q = F.parse("3*(x+1)*(t+1)").num
    assert poly_gcd(p, q) == F.parse("x+1").num
    assert poly_gcd(F.ring.zero, q) == canonical_poly(q)
    lcm = poly_lcm(F.parse("x+1").num, F.parse("x-1").num)
    assert canonical_poly(lcm) == F.parse("x^2-1").num
    assert gcd_many([p, q, F.parse("x^2-1").num], F.ring) == F.parse("x+1").num


def test_gcd_over_gaussian_integers():
    p = F.parse("(x+I)*(x-1)").num
    q = F.parse("(x+I)*(x+1)").num
    g = poly_gcd(p, q)
    assert format_poly(g) == "I+x"


def test_laurent_normalization_strips_t_and_constants():
    a = laurent_normalize_t(F.parse("-3*t^3*(2+5*t^2+2*t^4)"))
    b = laurent_normalize_t(F.parse("(2/t^2 + 5 + 2*t^2)"))
    assert a == b
    assert str(a) == "2+5*t^2+2*t^4"
    assert a.unit_orbit == ("powers of t", "nonzero constants")


def test_normalization_keeps_other_variables():
    a = laurent_normalize_t(F.parse("x*t*(1+t)"))
    assert str(a) == "x+x*t"


def test_several_unit_variables():
    G = function_field(("B", "C"))
    a = laurent_normalize_t(G.parse("B*C*(1+B-B*C)"), ("B", "C"))
    assert a == parse_invariant(G, "1+B-B*C", ("B", "C"))
    assert unit_orbit_of(("B", "C")) == ("powers of B", "powers of C", "nonzero constants")


def test_zero_has_its_own_orbit():
    z = normalize_or_zero(F.zero())
    assert z.is_zero()
    assert str(z) == "0"
    assert z == InvariantPoly.zero(F)
    assert normalize_or_zero(F.const(7)).is_one()


def test_ratfun_arith_dispatch():
    x, t = F.var("x"), F.var("t")
    assert ratfun_arith(x, t, "add") == x + t
    assert ratfun_arith(x, t, "div") * t == x
    assert ratfun_arith(x, None, "inv") == x ** -1


def test_substitute_binds_values():
    f = F.parse("(x^2 + t)/(x - 1)")
    g = f.substitute({"x": F.const(2)})
    assert g == F.parse("4 + t")
    h = f.substitute({"x": F.const(Fraction(1, 2))})
    assert h == F.parse("-2*(1/4 + t)")


def test_to_field_moves_variables():
    small_field = function_field(("t",))
    big = function_field(("a", "t"))
    f = small_field.parse("t^2 + 1").to_field(big)
    assert f.field == big
    assert f == big.parse("t^2+1")


@settings(max_examples=40, deadline=None)
@given(small, small, small, small)
def test_field_laws(a, b, c, d):
    x, t = F.var("x"), F.var("t")
    p = x * a + t * b + 1
    q = x * c - t * d + 2
    assert p * q == q * p
    assert (p + q) * p == p * p + q * p
    if not q.is_zero():
        assert (p / q) * q == p


@settings(max_examples=30, deadline=None)
@given(small, small, st.integers(min_value=1, max_value=3))
def test_print_parse_round_trip(a, b, e):
    f = F.parse(f"({a}*x^{e} + {b}*t + I)/(x + 1)")
    assert F.parse(str(f)) == f


def test_real_coefficients_take_the_rational_path():
    real = F.parse("2*x^2 - 3*t + 1/2").num
    gaussian = F.parse("x + I*t").num
    view = real_view([real, F.parse("x").num])
    assert view is not None
    rring, (r, _) = view
    assert from_real(r, F.ring) == real
    assert real_view([real, gaussian]) is None
    assert format_poly(canonical_poly(real)) == "1-6*t+4*x^2"
    assert poly_gcd(real * gaussian, gaussian * F.parse("x-1").num) == canonical_poly(gaussian)
