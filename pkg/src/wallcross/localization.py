"""Fixed-point localization on Grassmannians and partial flag manifolds."""

import itertools
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

from . import builders
from .engine import GammaSeries, WallData, wall_cross_terms
from .quiver import sharp_quiver
from .symbolic import THETA, KClass, Polynomial, RationalFunction, Variable, WeightForm, ZeroWeightError
from .symbolic import backend


@dataclass(frozen=True)
class FixedPoint:
    label: tuple
    tangent: KClass
    bundles: dict = field(default_factory=dict)


@dataclass(frozen=True)
class FixedPointModel:
    name: str
    points: tuple
    parameters: tuple

    def __post_init__(self):
        labels = [p.label for p in self.points]
        if len(set(labels)) != len(labels):
            raise ValueError("fixed point labels must be distinct")
        for p in self.points:
            if any(w.is_zero() for w in p.tangent.plus + p.tangent.minus):
                raise ZeroWeightError(f"zero tangent weight at {p.label}")


def _xs(n, prefix="x"):
    return [WeightForm.of(f"{prefix}{i}") for i in range(1, n + 1)]


def grassmannian_model(k, n, quotient=False, prefix="x"):
    """Coordinate k-subsets S of [n] with torus weights x_1..x_n.

    Subspace convention: T = Hom(S, C^n/S) = {x_t - x_s}, bundle "taut" = {x_s}.
    With ``quotient`` the points are k-dimensional quotients of C^n, T = Hom(K, Q)
    = {x_s - x_t} with "taut" the quotient {x_s}; "comp" is always {x_t : t not in S}.
    """
    if not 0 <= k <= n:
        raise ValueError("need 0 <= k <= n")
    x = _xs(n, prefix)
    points = []
    for S in itertools.combinations(range(n), k):
        rest = [t for t in range(n) if t not in S]
        if quotient:
            tangent = [x[s] - x[t] for s in S for t in rest]
        else:
            tangent = [x[t] - x[s] for s in S for t in rest]
        label = tuple(s + 1 for s in S)
        bundles = {"taut": KClass([x[s] for s in S]), "comp": KClass([x[t] for t in rest])}
        points.append(FixedPoint(label, KClass(tangent), bundles))
    kind = "quotient-grassmannian" if quotient else "grassmannian"
    return FixedPointModel(f"{kind}({k},{n})", tuple(points),
                           tuple(Variable(f"{prefix}{i}") for i in range(1, n + 1)))


def flag_model(dims, n, prefix="x"):
    """Flags F_1 < ... < F_s in C^n with dim F_a = dims[a].

    At a coordinate flag with graded pieces G_1, ..., G_{s+1} (the last one
    C^n/F_s) the tangent space is the sum over a < b of Hom(G_a, G_b).
    """
    dims = tuple(dims)
    if any(a >= b for a, b in zip(dims, dims[1:])) or (dims and (dims[0] < 0 or dims[-1] > n)):
        raise ValueError("dims must be strictly increasing within 0..n")
    x = _xs(n, prefix)
    steps = [b - a for a, b in zip((0,) + dims, dims + (n,))]
    points = []
    for perm in _set_compositions(list(range(n)), steps):
        tangent = [x[t] - x[s] for a, ga in enumerate(perm) for gb in perm[a + 1:]
                   for s in ga for t in gb]
        flags, acc = [], []
        for g in perm[:-1]:
            acc = acc + list(g)
            flags.append(tuple(sorted(i + 1 for i in acc)))
        bundles = {f"F{a + 1}": KClass([x[i - 1] for i in f]) for a, f in enumerate(flags)}
        if flags:
            bundles["taut"] = bundles[f"F{len(flags)}"]
        points.append(FixedPoint(tuple(flags), KClass(tangent), bundles))
    return FixedPointModel(f"flag({','.join(map(str, dims))};{n})", tuple(points),
                           tuple(Variable(f"{prefix}{i}") for i in range(1, n + 1)))


def _set_compositions(items, sizes):
    if not sizes:
        yield []
        return
    for first in itertools.combinations(items, sizes[0]):
        rest = [i for i in items if i not in first]
        for tail in _set_compositions(rest, sizes[1:]):
            yield [list(first)] + tail


def point_model(bundles=None):
    return FixedPointModel("point", (FixedPoint((), KClass(), dict(bundles or {})),), ())


# -- integration --------------------------------------------------------------------

def _monic_linear(p):
    """(c, p/c) with p/c having leading coefficient 1."""
    c = p.leading_coefficient()
    return c, p.scale(1 / c)


def ab_integrate(model, integrand, twist=THETA):
    """sum over fixed points of Eu^twist(integrand_p) / Eu(T_p).

    ``integrand`` is a per-point KClass: a callable on FixedPoint, a sequence
    aligned with ``model.points``, or the string "tangent". With ``twist`` None
    the plain Euler class of the integrand is used.
    """
    classes = _integrand_classes(model, integrand)
    shift = None if twist is None else Polynomial.coerce(twist)
    if shift is not None and shift.is_zero():
        shift = None
    terms = []
    for point, c in zip(model.points, classes):
        c = c.reduced()
        if shift is None:
            if any(w.is_zero() for w in c.plus + c.minus):
                raise ZeroWeightError(f"zero weight in the integrand at {point.label}")
            num = [w.to_polynomial() for w in c.plus]
            den = [w.to_polynomial() for w in c.minus]
        else:
            num = [w.to_polynomial() + shift for w in c.plus]
            den = [w.to_polynomial() + shift for w in c.minus]
            if any(f.is_zero() for f in den):
                raise ZeroWeightError(f"zero twisted weight in the integrand at {point.label}")
        if any(f.is_zero() for f in num):
            continue
        # divide by the tangent Euler class: its weights join the denominator
        num = num + [w.to_polynomial() for w in point.tangent.minus]
        den = den + [w.to_polynomial() for w in point.tangent.plus]
        terms.append((num, den))
    return _sum_of_fractions(terms)


def _integrand_classes(model, integrand):
    if isinstance(integrand, str):
        return [parse_integrand(integrand, p) for p in model.points]
    if callable(integrand):
        return [integrand(p) for p in model.points]
    if isinstance(integrand, KClass):
        return [integrand] * len(model.points)
    classes = list(integrand)
    if len(classes) != len(model.points):
        raise ValueError("one integrand class per fixed point is required")
    return classes


def _sum_of_fractions(terms):
    """Exact sum of products of linear factors over products of linear factors.

    Denominators are brought to a common multiple of monic linear factors, the
    numerators summed, and then each factor is divided out as far as possible.
    """
    if not terms:
        return RationalFunction(0)
    prepared = []
    lcm = Counter()
    for num, den in terms:
        coeff = Fraction(1)
        factors = Counter()
        for f in den:
            c, g = _monic_linear(f)
            coeff /= c
            factors[g] += 1
        lcm |= factors
        prepared.append((coeff, num, factors))
    # expand in a sympy ring: much faster for products of many linear factors
    gens = backend.common_gens(*lcm, *(f for _, num, _ in prepared for f in num))
    conv = lambda f: backend.to_ring(f, gens)
    ring_lcm = {g: conv(g) for g in lcm}
    total = conv(Polynomial.constant(0))
    for coeff, num, factors in prepared:
        t = conv(Polynomial.constant(coeff))
        for f in num:
            t = t * conv(f)
        for g, m in lcm.items():
            extra = m - factors.get(g, 0)
            if extra:
                t = t * ring_lcm[g] ** extra
        total = total + t
    if not total:
        return RationalFunction(0)
    den = Polynomial.constant(1)
    for g in sorted(lcm, key=str):
        left = lcm[g]
        while left:
            q, rem = divmod(total, ring_lcm[g])
            if rem:
                break
            total, left = q, left - 1
        den = den * g ** left
    # den is a product of monic linear factors none of which divides total
    return RationalFunction._trusted(backend.from_ring(total, gens), den)


def parse_integrand(spec, point):
    """'tangent', 'one', a bundle name, or a +/- combination such as 'tangent-taut'.

    A trailing '*' takes the dual, e.g. 'taut*'.
    """
    total = KClass()
    for sign, name in _signed_names(spec):
        if name in ("one", "1", "0", ""):
            c = KClass()
        elif name.rstrip("*") == "tangent":
            c = point.tangent
        elif name.rstrip("*") in point.bundles:
            c = point.bundles[name.rstrip("*")]
        else:
            raise ValueError(f"unknown bundle {name!r}")
        if name.endswith("*"):
            c = c.dual()
        total = total + (c if sign > 0 else -c)
    return total


def _signed_names(spec):
    spec = spec.replace(" ", "")
    out, sign, cur = [], 1, ""
    for ch in spec:
        if ch in "+-":
            if cur:
                out.append((sign, cur))
            sign, cur = (1 if ch == "+" else -1), ""
        else:
            cur += ch
    if cur or not out:
        out.append((sign, cur))
    return out


# -- quiver classes ---------------------------------------------------------------------

def _weights(point, name):
    if isinstance(name, (list, tuple)):
        return [WeightForm.coerce(w) for w in name]
    if name not in point.bundles:
        raise ValueError(f"bundle {name!r} not available at {point.label}")
    return list(point.bundles[name].plus)


def lambda_class(q, model, assignment, framing_weights=None):
    """Per-point KClass of sum_a Hom(V_out, V_in) - sum_l Hom(V_out, V_in) - sum_i End(V_i).

    ``assignment`` maps internal vertices to bundle names (or explicit weight
    lists); unassigned internal vertices must not be touched by arrows and are
    treated as zero. The framing space is one line; ``framing_weights`` gives
    its weight separately for every arrow touching it (default 0).
    """
    used = {v for a in q.arrows for v in (a.source, a.target) if v != q.framing}
    missing = sorted(used - set(assignment))
    if missing:
        raise ValueError(f"unassigned vertices {missing}")
    touching = [a for a in q.arrows if q.framing in (a.source, a.target)]
    if framing_weights is None:
        fw = {a.id: WeightForm() for a in touching}
    else:
        framing_weights = list(framing_weights)
        if len(framing_weights) != len(touching):
            raise ValueError("one framing weight per arrow at the framing vertex is required")
        fw = {a.id: WeightForm.coerce(w) for a, w in zip(touching, framing_weights)}
    out = []
    for p in model.points:
        spaces = {v: _weights(p, name) for v, name in assignment.items()}

        def space(v, arrow_id):
            if v == q.framing:
                return [fw[arrow_id]]
            return spaces.get(v, [])

        plus, minus = [], []
        for a in q.arrows:
            for s in space(a.source, a.id):
                for t in space(a.target, a.id):
                    plus.append(t - s + a.weight)
        for rel in q.relations:
            src, dst = q.relation_endpoints(rel)
            w = q.relation_weight(rel)
            for s in spaces.get(src, []):
                for t in spaces.get(dst, []):
                    minus.append(t - s + w)
        for v in q.internal:
            ws = spaces.get(v, [])
            minus.extend(t - s for s in ws for t in ws)
        out.append(KClass(plus, minus))
    return out


def lambda_rank(q, dims):
    """Rank of the quiver class from dimensions alone (framing space has dimension 1)."""
    dim = lambda v: 1 if v == q.framing else dims.get(v, 0)
    total = sum(dim(a.source) * dim(a.target) for a in q.arrows)
    total -= sum(dim(s) * dim(t) for s, t in (q.relation_endpoints(r) for r in q.relations))
    total -= sum(dims.get(v, 0) ** 2 for v in q.internal)
    return total


# -- the single-vertex experiment ---------------------------------------------------------

def single_vertex_integral(r, m, theta=THETA):
    """Integral of Eu^theta of the quiver class over the m-dimensional quotients of C^r."""
    q = builders.single_vertex(r)
    model = grassmannian_model(m, r, quotient=True)
    return ab_integrate(model, lambda_class(q, model, {"0": "taut"}), twist=theta)


def single_vertex_gamma(r, theta=THETA):
    """gamma_d from the sharp quiver: H(1) is one point, H(d) is empty for d >= 2.

    A stable object of the sharp quiver is generated by the one vector at the
    new framing vertex, and with no arrows leaving 0 it spans at most a line.
    """
    qs = sharp_quiver(builders.single_vertex(r), "0")

    def gamma(d):
        if d >= 2:
            return RationalFunction(0)
        # V_0 is spanned by the image of the new framing line, so it has its weight 0
        model = point_model({"V0": KClass([WeightForm()])})
        fw = [WeightForm()] * len([a for a in qs.arrows if qs.framing in (a.source, a.target)])
        cls = lambda_class(qs, model, {"0": "V0", builders.FRAMING: []}, fw)
        return ab_integrate(model, cls, twist=theta)

    return GammaSeries("localization-backed", factory=gamma)


@dataclass(frozen=True)
class AdjointResult:
    lhs: RationalFunction
    rhs: RationalFunction
    equal: bool


def adjoint_experiment(r, alpha0, theta=THETA):
    """Both sides of the wall-crossing formula for the single-vertex quiver.

    The left side integrates over the moduli on both sides of the wall by
    localization; the right side assembles the combinatorial coefficients
    and multiplies them with lower-dimensional integrals.
    """
    if not (0 <= alpha0 <= r):
        raise ValueError("need 0 <= alpha0 <= r")
    q = builders.single_vertex(r)
    # zeta+ > 0 on the vertex: (0, V_0) is always a subrepresentation with
    # zeta+(V_0) > 0, so the plus side is empty as soon as V_0 != 0
    plus_side = RationalFunction(1) if alpha0 == 0 else RationalFunction(0)
    minus_side = single_vertex_integral(r, alpha0, theta)
    lhs = plus_side - minus_side

    beta_bar = sum(1 for a in q.arrows if a.source == q.framing)
    data = WallData(alpha0, 1, beta_bar)
    gamma = single_vertex_gamma(r, theta)
    rhs = RationalFunction(0)
    cache = {}
    for term in wall_cross_terms(data, gamma):
        if term.coefficient.is_zero():
            continue
        m = alpha0 - term.k
        if m not in cache:
            cache[m] = single_vertex_integral(r, m, theta)
        rhs = rhs + term.coefficient * cache[m]
    return AdjointResult(lhs, rhs, lhs == rhs)
