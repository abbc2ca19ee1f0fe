from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from oracles import coefficient_at_infinity, finite_residue_sum, to_sympy
from wallcross.symbolic import (EPS, THETA, KClass, ParseError, Polynomial, RationalFunction,
                                Variable, WeightForm, ZeroWeightError, euler_plain, euler_theta,
                                laurent_at_infinity, parse, parse_polynomial, pochhammer,
                                residue_at_infinity, residue_scaling_check, to_text, variables)

x, y, z, v, a, b, c = (Polynomial.var(Variable(n)) for n in "x y z v a b c".split())
X, Y, Z = (Variable(n) for n in "xyz")

small = st.fractions(min_value=-3, max_value=3, max_denominator=3)


@st.composite
def polys(draw, gens=(X, Y, Z), max_terms=4, max_exp=2):
    out = Polynomial()
    for _ in range(draw(st.integers(0, max_terms))):
        mono = {g: draw(st.integers(0, max_exp)) for g in gens}
        term = Polynomial.constant(draw(small))
        for g, e in mono.items():
            term = term * Polynomial.var(g) ** e
        out = out + term
    return out


@st.composite
def nonzero_polys(draw, **kw):
    p = draw(polys(**kw))
    return p if not p.is_zero() else Polynomial.constant(draw(st.integers(1, 4)))


# -- polynomial ring ------------------------------------------------------------

def test_difference_of_squares():
    assert (x + 1) * (x - 1) == x ** 2 - 1


@settings(max_examples=60, deadline=None)
@given(polys(), polys(), polys())
def test_ring_laws(p, q, r):
    assert (p + q) + r == p + (q + r)
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p * q == q * p
    assert p - p == Polynomial()


@settings(max_examples=40, deadline=None)
@given(polys(), polys())
def test_polynomial_product_matches_sympy(p, q):
    assert sympy.expand(to_sympy(p * q) - to_sympy(p) * to_sympy(q)) == 0


def test_variable_order_ignores_creation_order():
    late = Variable("zz_late")
    early = Variable("aa_early")
    assert early < late
    assert Variable("x2") < Variable("x10")
    assert THETA < EPS < Variable("a")


# -- rational functions ------------------------------------------------------------

def test_cancellation_to_polynomial():
    f = RationalFunction(x ** 2 - 1, x - 1)
    assert f.is_polynomial()
    assert f == RationalFunction(x + 1)
    assert to_text(f) == "x + 1"


@settings(max_examples=40, deadline=None)
@given(nonzero_polys())
def test_self_quotient_is_one(p):
    f = RationalFunction(p * (x + 2), (x + 2) * p)
    assert f == RationalFunction(1)


@settings(max_examples=40, deadline=None)
@given(polys(), nonzero_polys(), polys(), nonzero_polys())
def test_field_operations_match_sympy(p1, q1, p2, q2):
    f, g = RationalFunction(p1, q1), RationalFunction(p2, q2)
    for ours, theirs in ((f + g, to_sympy(f) + to_sympy(g)),
                         (f * g, to_sympy(f) * to_sympy(g)),
                         (f - g, to_sympy(f) - to_sympy(g))):
        assert sympy.simplify(to_sympy(ours) - theirs) == 0


@settings(max_examples=40, deadline=None)
@given(polys(), nonzero_polys(), nonzero_polys())
def test_canonical_form_is_normal_form(p, q, h):
    f = RationalFunction(p, q)
    g = RationalFunction(p * h, q * h)
    assert (f - g).is_zero()
    assert to_text(f) == to_text(g)
    assert hash(f) == hash(g)


def test_denominator_is_normalized():
    f = RationalFunction(Polynomial.constant(2), Polynomial.constant(-4) * x + 2)
    assert f.denominator.leading_coefficient() == 1


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        RationalFunction(x) / 0


# -- text form ----------------------------------------------------------------------

@settings(max_examples=60, deadline=None)
@given(polys(), nonzero_polys())
def test_text_round_trip(p, q):
    f = RationalFunction(p, q)
    assert parse(to_text(f)) == f


def test_parse_aliases_and_precedence():
    assert parse("θ + ε*ħ") == parse("theta + eps*hbar")
    assert parse("-x^2") == -(x ** 2)
    assert parse("2^3") == RationalFunction(8)
    assert parse("1/2*x") == RationalFunction(x.scale(Fraction(1, 2)))
    assert parse_polynomial("(x+1)^2") == x ** 2 + 2 * x + 1


@pytest.mark.parametrize("bad", ["x +", "(x", "x ** ", "3 $ 4", "x^y", ""])
def test_parse_errors(bad):
    with pytest.raises(ParseError):
        parse(bad)


def test_term_order_in_print():
    assert to_text(x * y + x ** 2 + 1) == "x^2 + x*y + 1"
    assert to_text(parse("1/(x-1)")) == "(1)/(x - 1)"


# -- weights and Euler classes -----------------------------------------------------------

def test_pochhammer():
    t = Polynomial.var(THETA)
    assert pochhammer(t, 0) == RationalFunction(1)
    assert pochhammer(t, 3) == RationalFunction(t * (t + 1) * (t + 2))
    handsaw = RationalFunction(t) / Polynomial.var(EPS) + 1
    expected = sympy.rf(sympy.Symbol("theta") / sympy.Symbol("eps") + 1, 2) / 2
    assert sympy.simplify(to_sympy(pochhammer(handsaw, 2) / 2) - expected) == 0


def test_euler_theta_examples():
    w1, wa, wb = WeightForm.of("w1"), WeightForm.of("a"), WeightForm.of("b")
    t = Polynomial.var(THETA)
    assert euler_theta(KClass([w1])) == RationalFunction(Polynomial.var(Variable("w1")) + t)
    assert euler_theta(KClass()) == RationalFunction(1)
    assert euler_theta(KClass([wa, wb], [wa])) == RationalFunction(b + t)


def test_euler_theta_zero_weight_gives_theta():
    assert euler_theta(KClass([WeightForm()])) == RationalFunction(Polynomial.var(THETA))


def test_euler_plain_examples():
    x1, x2, wa = WeightForm.of("x1"), WeightForm.of("x2"), WeightForm.of("a")
    assert euler_plain(KClass([x2 - x1])) == parse("x2 - x1")
    assert euler_plain(KClass([wa, -wa])) == RationalFunction(-(a * a))
    with pytest.raises(ZeroWeightError):
        euler_plain(KClass([WeightForm()]))
    with pytest.raises(ZeroWeightError):
        euler_plain(KClass([wa, WeightForm()], [WeightForm()]))


weights = st.builds(lambda i, j, k: WeightForm({"a": i, "b": j}, k),
                    st.integers(-2, 2), st.integers(-2, 2), st.integers(-2, 2))


@settings(max_examples=50, deadline=None)
@given(st.lists(weights, max_size=3), st.lists(weights, max_size=2),
       st.lists(weights, max_size=3), st.lists(weights, max_size=2))
def test_euler_theta_multiplicative(p1, m1, p2, m2):
    c1, c2 = KClass(p1, m1), KClass(p2, m2)
    assert euler_theta(c1 + c2) == euler_theta(c1) * euler_theta(c2)


def test_weightform_coerce_and_text():
    w = WeightForm.coerce({"x1": 1, "q1": -1, "1": 2})
    assert w.const == 2
    assert WeightForm.coerce(w.as_dict()) == w


# -- residues at infinity -------------------------------------------------------------------

def test_residue_examples():
    assert residue_at_infinity(RationalFunction(1, v - a), "v") == RationalFunction(1)
    assert residue_at_infinity(v ** 3 + 2 * v, "v") == RationalFunction(0)
    assert residue_at_infinity(RationalFunction(v, v ** 2 + b * v + c), "v") == RationalFunction(1)
    assert residue_at_infinity(RationalFunction(1, (v - a) ** 2), "v") == RationalFunction(0)


def test_residue_of_fast_decay_vanishes():
    f = RationalFunction(v + a, (v - b) ** 2 * (v - c))
    assert residue_at_infinity(f, "v").is_zero()


def test_residue_with_polynomial_part():
    # v^2/(v-a) = v + a + a^2/v + ...
    f = RationalFunction(v ** 2, v - a)
    assert residue_at_infinity(f, "v") == RationalFunction(a * a)


def test_laurent_series_matches_sympy():
    f = RationalFunction(v ** 3 + a, (v - b) * (v + 2 * a))
    top, coeffs = laurent_at_infinity(f, "v", 5)
    assert top == 1
    vs = sympy.Symbol("v")
    u = sympy.Symbol("u")
    series = sympy.series(to_sympy(f).subs(vs, 1 / u) * u ** top, u, 0, 5).removeO()
    for i, cf in enumerate(coeffs):
        assert sympy.simplify(series.coeff(u, i) - to_sympy(cf)) == 0


def test_residue_other_variables_in_coefficients():
    f = RationalFunction(THETA_P * v, (v - a) * (v - b))
    vs = sympy.Symbol("v")
    assert sympy.simplify(to_sympy(residue_at_infinity(f, "v"))
                          - coefficient_at_infinity(to_sympy(f), vs)) == 0


THETA_P = Polynomial.var(THETA)


roots = st.fractions(min_value=-4, max_value=4, max_denominator=3)


@settings(max_examples=30, deadline=None)
@given(st.lists(st.tuples(roots, st.integers(1, 2)), min_size=1, max_size=3,
                unique_by=lambda t: t[0]),
       st.lists(st.integers(-3, 3), min_size=1, max_size=4))
def test_total_residue_theorem(poles, num_coeffs):
    """Coefficient of 1/v at infinity equals the sum of the finite residues."""
    den = Polynomial.constant(1)
    for r, m in poles:
        den = den * (v - Polynomial.constant(r)) ** m
    num = Polynomial()
    for i, c in enumerate(num_coeffs):
        num = num + v ** i * c
    deg_den = sum(m for _, m in poles)
    if num.degree_in(Variable("v")) > deg_den - 1:
        return
    ours = residue_at_infinity(RationalFunction(num, den), "v")
    vs = sympy.Symbol("v")
    expected = finite_residue_sum(sum(c * vs ** i for i, c in enumerate(num_coeffs)),
                                  [(sympy.Rational(r.numerator, r.denominator), m)
                                   for r, m in poles], vs)
    assert to_sympy(ours) == expected


@settings(max_examples=30, deadline=None)
@given(polys(gens=(Variable("v"), Variable("a")), max_exp=3), nonzero_polys(gens=(Variable("v"), Variable("a")), max_exp=3),
       polys(gens=(Variable("v"), Variable("a")), max_exp=3), nonzero_polys(gens=(Variable("v"), Variable("a")), max_exp=3),
       small, small)
def test_residue_linear(p1, q1, p2, q2, s, t):
    f, g = RationalFunction(p1, q1), RationalFunction(p2, q2)
    lhs = residue_at_infinity(f * s + g * t, "v")
    rhs = residue_at_infinity(f, "v") * s + residue_at_infinity(g, "v") * t
    assert lhs == rhs


def test_scaling_examples():
    assert residue_scaling_check(RationalFunction(1, v - 1), "v", 3, 0)
    assert residue_scaling_check(v, "v", 2, 0)
    assert residue_scaling_check(RationalFunction(v + 3, (v - a) * (v + 1)), "v", 2, THETA_P)


@settings(max_examples=30, deadline=None)
@given(polys(gens=(Variable("v"), Variable("a")), max_exp=3),
       nonzero_polys(gens=(Variable("v"), Variable("a")), max_exp=3),
       st.integers(1, 4), st.integers(-2, 2))
def test_scaling_property(p, q, m, shift):
    f = RationalFunction(p, q)
    assert residue_scaling_check(f, "v", m, a * shift + THETA_P)


def test_scaling_rejects_bad_m():
    with pytest.raises(ValueError):
        residue_scaling_check(v, "v", 0, 0)


def test_variables_helper():
    assert variables("x1, x2") == (Variable("x1"), Variable("x2"))
    with pytest.raises(ValueError):
        Variable("1bad")
