import itertools
from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given, settings, strategies as st

from wallcross import builders
from wallcross.quiver import (FRAMING, Arrow, DimVector, FramedQuiver, Relation, StabilityParam,
                              Wall, WallCrossingContext, beta_bar_infinity, classify_parameter,
                              enhanced_quiver, enumerate_walls, generic_point_on_wall, pairing,
                              sharp_quiver, validate, zeta_infinity)

ALL_BUILTINS = [
    builders.nakajima(builders.a_graph(1), 1),
    builders.nakajima(builders.a_graph(2), (1, 2)),
    builders.nakajima(builders.a_graph(3), 2),
    builders.nakajima(builders.jordan_graph(), 3),
    builders.chainsaw(3, (1, 0, 2)),
    builders.chainsaw(1, 2),
    builders.blowup(2),
    builders.flag(3, 2),
    builders.single_vertex(3),
]


@pytest.mark.parametrize("q", ALL_BUILTINS, ids=lambda q: f"{len(q.arrows)}arrows")
def test_builtins_are_valid(q):
    assert validate(q) == []


@pytest.mark.parametrize("q", ALL_BUILTINS, ids=lambda q: f"{len(q.arrows)}arrows")
def test_json_round_trip(q):
    back = FramedQuiver.from_json(q.to_json())
    assert back == q
    assert back.to_json() == q.to_json()


@pytest.mark.parametrize("q", ALL_BUILTINS, ids=lambda q: f"{len(q.arrows)}arrows")
def test_derived_quivers_stay_valid(q):
    zero = q.internal[0]
    assert validate(enhanced_quiver(q, zero, 3)) == []
    assert validate(sharp_quiver(q, zero)) == []


def test_malformed_json():
    with pytest.raises(ValueError):
        FramedQuiver.from_json("{not json")
    with pytest.raises(ValueError):
        FramedQuiver.from_json('{"vertices": ["0"]}')
    with pytest.raises(ValueError):
        FramedQuiver.from_json("[1, 2]")


def test_validate_relation_at_framing():
    q = FramedQuiver(("0", FRAMING), FRAMING,
                     [Arrow("a", "0", FRAMING), Arrow("b", "0", FRAMING)],
                     [Relation(((Fraction(1), ("a",)), (Fraction(-1), ("b",))))])
    assert len(validate(q)) == 1


def test_validate_unknown_vertex():
    q = FramedQuiver(("0", FRAMING), FRAMING, [Arrow("a", "0", "7")])
    assert len(validate(q)) == 1


def test_validate_inhomogeneous_relation():
    q = FramedQuiver(("0", "1", FRAMING), FRAMING,
                     [Arrow("a", "0", "1", builders.Q1), Arrow("b", "0", "1")],
                     [Relation(((Fraction(1), ("a",)), (Fraction(1), ("b",))))])
    assert validate(q) == ["relation 0: paths carry different torus weights"]


def test_nakajima_a1_shape():
    q = builders.nakajima(builders.a_graph(1), 1)
    assert q.internal == ("1",)
    assert {a.id for a in q.arrows} == {"z1_1", "w1_1"}
    (rel,) = q.relations
    assert [p for _, p in rel.terms] == [("w1_1", "z1_1")]
    assert q.relation_weight(rel) == builders.Q1 + builders.Q2


def test_nakajima_relations_homogeneous():
    q = builders.nakajima(builders.a_graph(3), (1, 0, 2))
    for rel in q.relations:
        assert q.relation_weight(rel) == builders.Q1 + builders.Q2


def test_flag_shape():
    q = builders.flag(3, 2)
    assert q.relations == ()
    assert sum(1 for a in q.arrows if a.target == FRAMING and a.source == "1") == 2
    assert sum(1 for a in q.arrows if FRAMING not in (a.source, a.target)) == 2


def test_single_vertex_shape():
    q = builders.single_vertex(4)
    assert q.internal == ("0",)
    assert all(a.source == FRAMING and a.target == "0" for a in q.arrows)
    assert len(q.arrows) == 4 and q.relations == ()


def test_builtin_dispatch():
    assert builders.builtin("single-vertex", 2) == builders.single_vertex(2)
    with pytest.raises(ValueError):
        builders.builtin("nope")


# -- numbers attached to the framing ---------------------------------------------------

def test_zeta_infinity():
    assert zeta_infinity({"1": -1, "2": -2}, DimVector({"1": 2, "2": 3})) == 8
    assert zeta_infinity({}, DimVector({"1": 2})) == 0
    assert zeta_infinity({"1": 1, "2": -1}, DimVector({"1": 4, "2": 4})) == 0


@pytest.mark.parametrize("graph", [builders.a_graph(2), builders.jordan_graph(), builders.a_graph(3)])
@pytest.mark.parametrize("r", [1, 2, 3])
def test_beta_bar_vanishes_for_nakajima(graph, r):
    q = builders.nakajima(graph, r)
    for beta in itertools.product(range(3), repeat=len(graph.vertices)):
        assert beta_bar_infinity(q, dict(zip(graph.vertices, beta))) == 0


def test_beta_bar_single_vertex_and_blowup():
    assert beta_bar_infinity(builders.single_vertex(1), {"0": 3}) == 3
    assert beta_bar_infinity(builders.single_vertex(4), {"0": 2}) == 8
    for r, b0, b1 in [(1, 1, 0), (3, 2, 1), (2, 1, 3)]:
        assert beta_bar_infinity(builders.blowup(r), {"0": b0, "1": b1}) == r * (b0 - b1)


# -- walls and chambers ----------------------------------------------------------------

def test_walls_examples():
    assert [dict(w.beta) for w in enumerate_walls({"0": 3})] == [{"0": 1}]
    assert {tuple(w.beta.values()) for w in enumerate_walls({"1": 1, "2": 1})} == {
        (1, 0), (0, 1), (1, 1)}
    assert enumerate_walls({"0": 0}) == []


alphas = st.lists(st.integers(0, 3), min_size=1, max_size=3).filter(lambda a: 0 < sum(a) <= 6)


@settings(max_examples=40, deadline=None)
@given(alphas)
def test_walls_brute_force(alpha):
    keys = [str(i) for i in range(len(alpha))]
    got = {tuple(w.beta[k] for k in keys) for w in enumerate_walls(dict(zip(keys, alpha)))}
    # brute force: each hyperplane through some 0 < beta <= alpha, keyed by its primitive vector
    want = set()
    for beta in itertools.product(*(range(n + 1) for n in alpha)):
        if any(beta):
            g = gcd(*beta)
            want.add(tuple(b // g for b in beta))
    assert got == want


def test_wall_must_be_primitive():
    with pytest.raises(ValueError):
        Wall(DimVector({"0": 2}))
    with pytest.raises(ValueError):
        Wall(DimVector({"0": 0}))


def test_classification_examples():
    alpha = {"1": 1, "2": 1}
    cl = classify_parameter({"1": 1, "2": -1}, alpha)
    assert cl.kind == "on-wall" and tuple(cl.wall.beta.values()) == (1, 1)
    cl = classify_parameter({"1": -1, "2": -2}, alpha)
    assert cl.kind == "generic"
    assert all(cl.chamber_side(w) == "C" for w, _ in cl.signs)
    cl = classify_parameter({"1": 0, "2": 0}, alpha)
    assert cl.kind == "degenerate" and len(cl.walls) == 3


small = st.fractions(min_value=-5, max_value=5, max_denominator=4)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(1, 3), min_size=2, max_size=3), st.data())
def test_generic_sign_is_locally_constant(alpha, data):
    keys = [str(i) for i in range(len(alpha))]
    alpha = dict(zip(keys, alpha))
    zeta = {k: data.draw(small) for k in keys}
    cl = classify_parameter(zeta, alpha)
    if cl.kind != "generic":
        return
    # |zeta.beta| >= 1/den for every wall, and |delta.beta| < 1/den for tiny delta
    den = 1
    for v in zeta.values():
        den = den * v.denominator // gcd(den, v.denominator)
    eps = Fraction(1, 2 * den * (1 + sum(alpha.values())))
    for signs in itertools.product((-1, 0, 1), repeat=len(keys)):
        moved = {k: zeta[k] + s * eps for k, s in zip(keys, signs)}
        assert classify_parameter(moved, alpha).signs == cl.signs


def test_generic_point_on_wall():
    alpha = DimVector({"1": 2, "2": 1})
    for w in enumerate_walls(alpha):
        zb = generic_point_on_wall(w.beta, alpha)
        cl = classify_parameter(zb, alpha)
        assert cl.kind == "on-wall" and cl.wall == w


# -- derived quivers -------------------------------------------------------------------

def test_enhanced_quiver_shape():
    q = builders.flag(2, 1)
    e = enhanced_quiver(q, "1", 2)
    assert len(e.vertices) == len(q.vertices) + 2
    assert len(e.arrows) == len(q.arrows) + 2
    assert e.relations == q.relations
    assert enhanced_quiver(q, "1", 0) == q
    with pytest.raises(ValueError):
        enhanced_quiver(q, "1", 1, alpha0=2)


def test_sharp_quiver_shape():
    q = builders.single_vertex(3)
    s = sharp_quiver(q, "0")
    assert sum(1 for a in s.arrows if a.target == "0") == 4
    assert s.framing == "inf'" and FRAMING in s.internal
    ss = sharp_quiver(s, "0")
    assert len(ss.vertices) == len(q.vertices) + 2


def test_wall_crossing_context():
    ctx = WallCrossingContext.create(builders.blowup(3), {"0": 2, "1": 1}, {"0": 2, "1": 1})
    assert (ctx.zero, ctx.alpha0, ctx.beta0, ctx.beta_bar) == ("0", 2, 2, 3)
    with pytest.raises(ValueError):
        WallCrossingContext.create(builders.blowup(1), {"0": 1, "1": 1}, {"0": 0, "1": 1}, "0")


def test_dimvector_ops():
    a, b = DimVector({"0": 2, "1": 1}), DimVector({"0": 1})
    assert b <= a and not a <= b
    assert a - b == DimVector({"0": 1, "1": 1})
    assert (b * 2 + a).total() == 5
    assert not DimVector({"0": 2, "1": 4}).is_primitive()
    assert pairing({"0": Fraction(1, 2)}, a) == 1
    assert StabilityParam({"0": 1}, a).infinity == -2
