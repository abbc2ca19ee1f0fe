import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from oracles import theta_determinant
from wallcross import builders
from wallcross.quiver import DimVector, StabilityParam, Wall, generic_point_on_wall
from wallcross.stability import (EnhancedDim, ParameterSearchError, SlopeParams, SubDim, certify,
                                 cond_a, cond_b, cond_c, find_parameters, slope, theta_vector,
                                 two_stability, two_stability_bound, wall_crossing_context)

F = Fraction


def params(zeta, alpha, eta):
    return SlopeParams(StabilityParam(zeta, DimVector(alpha)), eta)


# -- slopes and theta ------------------------------------------------------------------

def test_slope_example():
    s = params({"0": -1}, {"0": 1}, (2,))
    assert slope(s, SubDim(0, DimVector({"0": 1}), (1,))) == 1


def test_slope_of_everything():
    alpha = {"1": 1, "2": 2}
    s = params({"1": F(1, 3), "2": -2}, alpha, (F(1, 2), F(1, 7)))
    flag = EnhancedDim(DimVector(alpha), "2", (1, 2))
    full = SubDim(1, DimVector(alpha), flag.flags)
    assert slope(s, full) == (F(1, 2) + F(2, 7)) / 4
    assert slope(params({"1": 0}, {"1": 1}, (1,)), SubDim(0, DimVector({"1": 1}), (0,))) == 0


def test_theta_flag_entries():
    alpha = DimVector({"0": 2})
    flag = EnhancedDim.full(alpha, "0")
    s = params({"0": F(-1, 5)}, alpha, (F(1, 3), F(1, 11)))
    th = theta_vector(s, flag)
    assert th.flags == tuple(e * flag.dim_total for e in s.eta)


@settings(max_examples=30, deadline=None)
@given(st.fractions(min_value=-3, max_value=3, max_denominator=5),
       st.fractions(min_value=F(1, 7), max_value=3, max_denominator=7),
       st.integers(1, 6))
def test_theta_scales_linearly(z, e, t):
    alpha = DimVector({"0": 2, "1": 1})
    flag = EnhancedDim.full(alpha, "0")
    s = params({"0": z, "1": -z}, alpha, (e, e / 5))
    st_ = params({"0": z * t, "1": -z * t}, alpha, (e * t, e * t / 5))
    assert theta_vector(st_, flag) == theta_vector(s, flag).scaled(t)


def _enhanced_subs(alpha, flag):
    keys = list(alpha)
    for s_inf in (0, 1):
        for dims in itertools.product(*(range(alpha[k] + 1) for k in keys)):
            for fl in itertools.product(*(range(f + 1) for f in flag.flags)):
                if s_inf + sum(dims) + sum(fl) == 0 or s_inf + sum(dims) + sum(fl) > 6:
                    continue
                yield SubDim(s_inf, DimVector(zip(keys, dims)), fl)


@pytest.mark.parametrize("alpha,zero,flags", [
    ({"0": 2}, "0", (1, 2)),
    ({"0": 1, "1": 2}, "1", (1, 1, 2)),
    ({"0": 3}, "0", (1, 2, 3)),
])
def test_theta_matches_determinant(alpha, zero, flags):
    alpha = DimVector(alpha)
    flag = EnhancedDim(alpha, zero, flags)
    zeta = {k: F(i + 1, 3) * (-1) ** i for i, k in enumerate(alpha)}
    eta = tuple(F(1, 2 + 3 * k) for k in range(len(flags)))
    s = params(zeta, alpha, eta)
    th = theta_vector(s, flag)
    zinf = s.zeta.infinity
    count = 0
    for sub in _enhanced_subs(alpha, flag):
        expected = theta_determinant(zeta, zinf, eta, sub.infinity, dict(sub.dims), sub.flags,
                                     dict(alpha), flags)
        assert th.pair(sub) == expected
        count += 1
    assert count > 10


# -- conditions ---------------------------------------------------------------------------

ALPHA = DimVector({"0": 2, "1": 1})
BETA = DimVector({"0": 1, "1": 0})


def test_cond_a_small_eta_at_zeta_bar():
    zb = generic_point_on_wall(BETA, ALPHA)
    flag = EnhancedDim.full(ALPHA, "0")
    s = SlopeParams(zb, (F(1, 10 ** 6), F(1, 10 ** 9)))
    assert cond_a(s, zb, flag)


def test_cond_a_huge_eta_fails():
    # needs some S with zeta_bar(S) > 0, whose slope must then beat mu(V)
    zb = StabilityParam({"0": 0, "1": 1}, ALPHA)
    flag = EnhancedDim.full(ALPHA, "0")
    s = SlopeParams(zb, (10 ** 6, 10 ** 6))
    assert not cond_a(s, zb, flag)


def test_cond_a_vacuous_when_alpha_is_beta():
    alpha = DimVector({"0": 1})
    flag = EnhancedDim.full(alpha, "0")
    assert cond_a(params({"0": 5}, alpha, (10 ** 6,)), {"0": 0}, flag)


def test_cond_a_at_zero_eta_is_tautology():
    # with eta -> 0 the slope comparison is against mu(V) = 0, i.e. sign(zeta_bar(S)) itself
    zb = generic_point_on_wall(BETA, ALPHA)
    flag = EnhancedDim.full(ALPHA, "0")
    s = SlopeParams(zb, (F(1, 10 ** 12), F(1, 10 ** 15)))
    assert cond_a(s, zb, flag)


@settings(max_examples=40, deadline=None)
@given(st.fractions(min_value=-5, max_value=5, max_denominator=9),
       st.lists(st.fractions(min_value=F(1, 9), max_value=5, max_denominator=9), min_size=2, max_size=2))
def test_cond_b_never_holds_at_ell_zero(z, eta):
    flag = EnhancedDim.full(ALPHA, "0")
    s = params({"0": z, "1": 1}, ALPHA, tuple(eta))
    assert not cond_b(s, Wall(BETA), 0, flag)


def test_cond_b_range():
    flag = EnhancedDim.full(ALPHA, "0")
    with pytest.raises(ValueError):
        cond_b(params({"0": 0}, ALPHA, (1, 1)), Wall(BETA), 3, flag)


def test_cond_c_examples():
    alpha = DimVector({"0": 2})
    flag = EnhancedDim.full(alpha, "0")
    assert cond_c(params({"0": 0}, alpha, (1, F(1, 100))), flag)
    assert not cond_c(params({"0": 0}, alpha, (1, 1)), flag)
    one = EnhancedDim.full(DimVector({"0": 1}), "0")
    assert cond_c(params({"0": 0}, {"0": 1}, (7,)), one)


# -- 2-stability -------------------------------------------------------------------------

def _brute_two_stability(eta, bound):
    for l in itertools.product(range(-bound, bound + 1), repeat=len(eta)):
        if any(l) and sum(e * x for e, x in zip(eta, l)) == 0:
            return False
    return True


def test_two_stability_examples():
    a0 = 2
    bound = two_stability_bound(a0, 1)
    assert two_stability([F(1), F(bound + 1), F((bound + 1) ** 2)], a0, 1)
    assert not two_stability([1, 1], a0, 1)
    assert two_stability([F(3, 7)], a0, 1)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.fractions(min_value=F(1, 20), max_value=20, max_denominator=20), min_size=1, max_size=3),
       st.integers(1, 3), st.integers(1, 2))
def test_two_stability_against_brute_force(eta, a0, b0):
    if a0 < b0:
        return
    bound = two_stability_bound(a0, b0)
    if len(eta) == 3 and bound > 8:
        return
    expected = _brute_two_stability(eta, bound)
    assert two_stability(eta, a0, b0) == expected
    assert two_stability(eta, a0, b0, exhaustive=True) == expected


@settings(max_examples=60, deadline=None)
@given(st.lists(st.fractions(min_value=F(1, 20), max_value=20, max_denominator=20), min_size=1, max_size=4),
       st.fractions(min_value=F(1, 9), max_value=9, max_denominator=9), st.integers(1, 3))
def test_two_stability_scale_invariant(eta, c, a0):
    assert two_stability(eta, a0, 1) == two_stability([e * c for e in eta], a0, 1)


def test_two_stability_rejects_nonpositive():
    with pytest.raises(ValueError):
        two_stability([1, 0], 2, 1)


# -- parameter search ------------------------------------------------------------------------

def _all_predicates_hold(choice, wall, ell, flag, zb):
    plus = SlopeParams(choice.zeta_plus, choice.eta)
    minus = SlopeParams(choice.zeta_minus, choice.eta)
    a0, b0 = flag.alpha[flag.zero], wall.beta[flag.zero]
    return (cond_a(plus, zb, flag) and cond_a(minus, zb, flag) and cond_b(plus, wall, ell, flag)
            and two_stability(choice.eta, a0, b0) and cond_c(plus, flag)
            and choice.zeta_plus.pair(wall.beta) > 0 and choice.zeta_minus.pair(wall.beta) < 0)


CASES = [
    ({"0": 2}, {"0": 1}, "0", 1, None),
    ({"0": 2}, {"0": 1}, "0", 2, None),
    ({"1": 1, "2": 2}, {"1": 0, "2": 1}, "2", 2, {"1": 1, "2": 0}),
    ({"1": 1, "2": 2}, {"1": 1, "2": 1}, "2", 1, None),
    ({"0": 3, "1": 1}, {"0": 1, "1": 0}, "0", 2, None),
    ({"0": 2, "1": 1}, {"0": 2, "1": 1}, "0", 2, None),
    ({"0": 4, "1": 2}, {"0": 2, "1": 1}, "0", 3, None),
    ({"0": 1}, {"0": 1}, "0", 1, None),
]


@pytest.mark.parametrize("alpha,beta,zero,ell,zeta_bar", CASES)
def test_find_parameters_certifies(alpha, beta, zero, ell, zeta_bar):
    alpha = DimVector(alpha)
    wall = Wall(DimVector(beta))
    flag = EnhancedDim.full(alpha, zero)
    zb = StabilityParam(zeta_bar, alpha) if zeta_bar else generic_point_on_wall(wall.beta, alpha)
    choice = find_parameters(wall, ell, flag, zb)
    assert certify(choice, wall, ell, flag, zb) == []
    assert _all_predicates_hold(choice, wall, ell, flag, zb)
    tp, tm = choice.integral_thetas()
    for th in (tp, tm):
        assert all(Fraction(v).denominator == 1 for v in th.as_dict(zero).values())


def test_find_parameters_minimal_case_with_beta0_two():
    # alpha = beta, L = beta0
    alpha = DimVector({"0": 2, "1": 1})
    flag = EnhancedDim.full(alpha, "0", L=2)
    wall = Wall(alpha)
    zb = generic_point_on_wall(alpha, alpha)
    for ell in flag.index_set:
        choice = find_parameters(wall, ell, flag, zb)
        assert certify(choice, wall, ell, flag, zb) == []


def test_find_parameters_rejects_bad_ell():
    alpha = DimVector({"0": 2})
    flag = EnhancedDim(alpha, "0", (1, 1, 2))
    with pytest.raises(ValueError):
        find_parameters(Wall(DimVector({"0": 1})), 2, flag, {"0": 0})


def test_find_parameters_rejects_off_wall_zeta_bar():
    alpha = DimVector({"1": 1, "2": 2})
    flag = EnhancedDim.full(alpha, "2")
    with pytest.raises(ValueError):
        find_parameters(Wall(DimVector({"1": 0, "2": 1})), 2, flag, {"1": 1, "2": 1})


def test_denominator_cap_from_environment(monkeypatch):
    alpha = DimVector({"0": 2})
    flag = EnhancedDim.full(alpha, "0")
    wall = Wall(DimVector({"0": 1}))
    monkeypatch.setenv("WC_MAX_DENOM", "5")
    with pytest.raises(ParameterSearchError):
        find_parameters(wall, 1, flag, {"0": 0})
    monkeypatch.delenv("WC_MAX_DENOM")
    assert find_parameters(wall, 1, flag, {"0": 0}) is not None


def test_wall_crossing_context_has_integral_thetas():
    ctx = wall_crossing_context(builders.single_vertex(2), {"0": 2}, {"0": 1})
    assert ctx.D > 0 and ctx.beta_bar == 2
    assert all(Fraction(v).denominator == 1 for v in ctx.theta_plus.values())


def test_enhanced_dim_validation():
    with pytest.raises(ValueError):
        EnhancedDim(DimVector({"0": 2}), "0", (2, 2))
    with pytest.raises(ValueError):
        EnhancedDim(DimVector({"0": 2}), "0", (1, 1))
    e = EnhancedDim.from_index_set(DimVector({"0": 2}), "0", 4, {2, 4})
    assert e.flags == (0, 1, 1, 2) and e.index_set == (2, 4)
