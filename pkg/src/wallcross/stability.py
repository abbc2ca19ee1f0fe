"""Slope stability on the enhanced quiver and the search for wall-crossing parameters.

Everything here works on dimension vectors only: a condition quantifies over
all sub-dimension vectors that a subrepresentation could have.
"""

import itertools
import os
from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from .quiver import (DimVector, StabilityParam, Wall, WallCrossingContext, classify_parameter,
                     flag_vertex, pairing, zeta_infinity)

DEFAULT_MAX_DENOMINATOR = 10 ** 6


class ParameterSearchError(RuntimeError):
    def __init__(self, predicate, message):
        super().__init__(f"{predicate}: {message}")
        self.predicate = predicate


@dataclass(frozen=True)
class EnhancedDim:
    """Dimension vector of the enhanced quiver: alpha plus the flag dimensions F_1..F_L."""

    alpha: DimVector
    zero: str
    flags: tuple

    def __post_init__(self):
        object.__setattr__(self, "alpha", DimVector(self.alpha))
        object.__setattr__(self, "flags", tuple(int(f) for f in self.flags))
        prev = 0
        for f in self.flags:
            if f - prev not in (0, 1):
                raise ValueError("flag dimensions must grow in steps of 0 or 1")
            prev = f
        if prev != self.alpha[self.zero]:
            raise ValueError("last flag dimension must equal dim V_0")

    @classmethod
    def full(cls, alpha, zero, L=None):
        """Flag with steps at 1..alpha_0, padded with repeats up to length L."""
        alpha = DimVector(alpha)
        a0 = alpha[zero]
        L = a0 if L is None else L
        if L < a0:
            raise ValueError("L must be at least dim V_0")
        return cls(alpha, zero, tuple(min(k, a0) for k in range(1, L + 1)))

    @classmethod
    def from_index_set(cls, alpha, zero, L, steps):
        steps = set(steps)
        flags, f = [], 0
        for k in range(1, L + 1):
            f += k in steps
            flags.append(f)
        return cls(alpha, zero, tuple(flags))

    @property
    def L(self):
        return len(self.flags)

    @property
    def dim_total(self):
        """dim V including the one-dimensional framing space."""
        return 1 + self.alpha.total()

    @property
    def index_set(self):
        """Positions k where the flag jumps."""
        out, prev = [], 0
        for k, f in enumerate(self.flags, start=1):
            if f > prev:
                out.append(k)
            prev = f
        return tuple(out)


@dataclass(frozen=True)
class SlopeParams:
    zeta: StabilityParam
    eta: tuple

    def __post_init__(self):
        object.__setattr__(self, "eta", tuple(Fraction(e) for e in self.eta))
        if any(e <= 0 for e in self.eta):
            raise ValueError("eta entries must be positive")


@dataclass(frozen=True)
class SubDim:
    """Candidate sub-dimension on the enhanced quiver."""

    infinity: int
    dims: DimVector
    flags: tuple = ()


@dataclass(frozen=True)
class ThetaVector:
    vertices: dict  # internal vertices
    infinity: Fraction
    flags: tuple

    def pair(self, sub):
        total = self.infinity * sub.infinity
        total += sum((self.vertices.get(k, 0) * n for k, n in sub.dims.items()), Fraction(0))
        total += sum((t * f for t, f in zip(self.flags, sub.flags)), Fraction(0))
        return total

    def as_dict(self, zero, framing="inf"):
        d = dict(self.vertices)
        d[framing] = self.infinity
        for k, t in enumerate(self.flags, start=1):
            d[flag_vertex(zero, k)] = t
        return d

    def scaled(self, c):
        return ThetaVector({k: v * c for k, v in self.vertices.items()}, self.infinity * c,
                           tuple(t * c for t in self.flags))


def _flag_energy(eta, flags):
    return sum((e * f for e, f in zip(eta, flags)), Fraction(0))


def slope(s, sub):
    """(zeta(S) + sum eta_k S_(0,k)) / (S_inf + sum S_i)."""
    den = sub.infinity + sub.dims.total()
    if den <= 0:
        raise ValueError("slope of a zero-dimensional space")
    num = s.zeta.pair(sub.dims) + _flag_energy(s.eta, sub.flags)
    if sub.infinity:
        num += s.zeta.infinity * sub.infinity
    return num / den


def theta_vector(s, flag):
    """theta with theta(S~) = det[[zeta(S)+eta(S~), eta(V~)], [dim S, dim V]]."""
    dim_v = flag.dim_total
    energy = _flag_energy(s.eta, flag.flags)
    verts = {k: s.zeta[k] * dim_v - energy for k in flag.alpha}
    zinf = zeta_infinity(s.zeta.values, flag.alpha)
    return ThetaVector(verts, zinf * dim_v - energy, tuple(e * dim_v for e in s.eta))


def _sub_vectors(alpha):
    keys = list(alpha)
    for combo in itertools.product(*(range(alpha[k] + 1) for k in keys)):
        if any(combo):
            yield DimVector(zip(keys, combo))


def cond_a(s, zeta_bar, flag):
    """Sign of zeta_bar(S) decides mu(S) vs mu(V) for every I-graded S <= alpha."""
    zb = zeta_bar.values if isinstance(zeta_bar, StabilityParam) else dict(zeta_bar)
    mu_v = _flag_energy(s.eta, flag.flags) / flag.dim_total
    for S in _sub_vectors(flag.alpha):
        sign = pairing(zb, S)
        if sign == 0:
            continue
        mu_s = s.zeta.pair(S) / S.total()
        if sign < 0 and not mu_s < mu_v:
            return False
        if sign > 0 and not mu_s > mu_v:
            return False
    return True


def cond_b_interval(eta, wall, ell, flag):
    """Open interval for zeta(beta)/|beta| demanded by the sandwich condition."""
    eta_ell = eta[ell - 1] if ell >= 1 else Fraction(0)
    energy = _flag_energy(eta, flag.flags)
    tail = _flag_energy(eta[ell:], flag.flags[ell:])
    dim_v = flag.dim_total
    return (energy - eta_ell) / dim_v, energy / dim_v - tail


def cond_b(s, wall, ell, flag):
    if not 0 <= ell <= flag.L:
        raise ValueError("ell out of range")
    beta = wall.beta if isinstance(wall, Wall) else DimVector(wall)
    x = s.zeta.pair(beta) / beta.total()
    energy = _flag_energy(s.eta, flag.flags)
    dim_v = flag.dim_total
    eta_ell = s.eta[ell - 1] if ell >= 1 else Fraction(0)
    tail = _flag_energy(s.eta[ell:], flag.flags[ell:])
    return x + tail < energy / dim_v < x + eta_ell / dim_v


def cond_c(s, flag):
    """eta_m > dim V * sum_{k>m} eta_k F_k for every m."""
    dim_v = flag.dim_total
    for m in range(1, flag.L + 1):
        if not s.eta[m - 1] > dim_v * _flag_energy(s.eta[m:], flag.flags[m:]):
            return False
    return True


def two_stability_bound(alpha0, beta0):
    """Largest |l_k| after clearing the 1/(mn) denominators: alpha0 * floor(alpha0/beta0)**2."""
    n = alpha0 // beta0
    return alpha0 * n * n


def _dominant(eta, bound):
    # each eta exceeds bound times the sum of all smaller ones: no cancellation possible
    ordered = sorted(eta, reverse=True)
    for i, e in enumerate(ordered):
        if not e > bound * sum(ordered[i + 1:]):
            return False
    return True


def _half_sums(eta, bound):
    """{sum: True if reachable by a nonzero vector, False if only by zero}."""
    sums = {Fraction(0): False}
    for e in eta:
        nxt = {}
        for s, nonzero in sums.items():
            for l in range(-bound, bound + 1):
                t = s + l * e
                flag = nonzero or l != 0
                nxt[t] = nxt.get(t, False) or flag
        sums = nxt
    return sums


def two_stability(eta, alpha0, beta0, exhaustive=False):
    """No nonzero l in the 1/(mn)-scaled lattice box with sum eta_k l_k = 0.

    Scaling by (floor(alpha0/beta0))**2 turns the condition into an integer box
    |l_k| <= alpha0 * floor(alpha0/beta0)**2. A dominance certificate decides
    it quickly when present; otherwise (or with ``exhaustive``) a
    meet-in-the-middle search over the box decides it exactly.
    """
    eta = [Fraction(e) for e in eta]
    if any(e <= 0 for e in eta):
        raise ValueError("eta must be positive")
    if alpha0 < beta0 or not eta:
        return True
    bound = two_stability_bound(alpha0, beta0)
    if not exhaustive and _dominant(eta, bound):
        return True
    half = len(eta) // 2
    left = _half_sums(eta[:half], bound)
    right = _half_sums(eta[half:], bound)
    for s, nonzero in left.items():
        other = right.get(-s)
        if other is not None and (nonzero or other):
            return False
    return True


@dataclass(frozen=True)
class ParameterChoice:
    zeta_plus: StabilityParam
    zeta_minus: StabilityParam
    eta: tuple
    theta_plus: ThetaVector
    theta_minus: ThetaVector
    D: Fraction
    scale: int  # common factor making both theta vectors integral

    def integral_thetas(self):
        return self.theta_plus.scaled(self.scale), self.theta_minus.scaled(self.scale)


def certify(choice, wall, ell, flag, zeta_bar):
    """Names of the violated conditions (empty when all hold)."""
    a0, b0 = flag.alpha[flag.zero], wall.beta[flag.zero]
    plus = SlopeParams(choice.zeta_plus, choice.eta)
    minus = SlopeParams(choice.zeta_minus, choice.eta)
    failed = []
    if not cond_a(plus, zeta_bar, flag):
        failed.append("cond_a(zeta+)")
    if not cond_a(minus, zeta_bar, flag):
        failed.append("cond_a(zeta-)")
    if not cond_b(plus, wall, ell, flag):
        failed.append("cond_b")
    if not two_stability(choice.eta, a0, b0):
        failed.append("two_stability")
    if not cond_c(plus, flag):
        failed.append("cond_c")
    if not choice.zeta_plus.pair(wall.beta) > 0:
        failed.append("zeta+ not in C'")
    if not choice.zeta_minus.pair(wall.beta) < 0:
        failed.append("zeta- not in C")
    return failed


def _max_denominator(choice):
    vals = list(choice.zeta_plus.values.values()) + list(choice.zeta_minus.values.values())
    vals += list(choice.eta)
    return max(Fraction(v).denominator for v in vals)


def _denominator_cap(cap):
    if cap is not None:
        return int(cap)
    env = os.environ.get("WC_MAX_DENOM")
    return int(env) if env else DEFAULT_MAX_DENOMINATOR


def find_parameters(wall, ell, flag, zeta_bar, max_denominator=None, rounds=3):
    """Search (zeta+, zeta-, eta) satisfying the four stability conditions.

    eta is geometric with a ratio large enough for the tail and 2-stability
    conditions; zeta+ = zeta_bar + delta beta puts zeta(beta)/|beta| at the
    midpoint of the sandwich interval and zeta- = zeta_bar - delta beta; the
    overall scale of eta is then shrunk until both zetas satisfy cond_a.
    """
    wall = wall if isinstance(wall, Wall) else Wall(wall)
    beta, alpha = wall.beta, flag.alpha
    zb = zeta_bar if isinstance(zeta_bar, StabilityParam) else StabilityParam(zeta_bar, alpha)
    zb = StabilityParam(zb.values, alpha)
    if ell not in flag.index_set:
        raise ValueError(f"ell={ell} is not a jump of the flag {flag.flags}")
    cl = classify_parameter(zb, alpha)
    if cl.kind != "on-wall" or cl.wall != wall:
        raise ValueError("zeta_bar must lie on the given wall and on no other")
    if beta[flag.zero] == 0:
        raise ValueError("beta vanishes at the chosen vertex")
    a0, b0 = alpha[flag.zero], beta[flag.zero]
    dim_v = flag.dim_total
    ratio = max(dim_v * a0 + 2, two_stability_bound(a0, b0) + 1)
    base_eta = tuple(Fraction(1, ratio ** k) for k in range(1, flag.L + 1))
    bb = sum(beta[k] ** 2 for k in alpha)

    cap = _denominator_cap(max_denominator)
    last = "cond_a"
    for _ in range(rounds):
        t = Fraction(1)
        while True:
            eta = tuple(t * e for e in base_eta)
            lo, hi = cond_b_interval(eta, wall, ell, flag)
            if not lo < hi:
                last = "cond_c"
                break
            delta = (lo + hi) / 2 * beta.total() / bb
            zp = StabilityParam({k: zb[k] + delta * beta[k] for k in alpha}, alpha)
            zm = StabilityParam({k: zb[k] - delta * beta[k] for k in alpha}, alpha)
            choice = _choice(zp, zm, eta, flag, beta)
            if _max_denominator(choice) > cap:
                break
            failed = certify(choice, wall, ell, flag, zb)
            if not failed:
                return choice
            last = failed[0]
            t /= 10
        cap *= 2
    raise ParameterSearchError(last, "no certified parameters within the denominator cap")


def _choice(zp, zm, eta, flag, beta):
    tp = theta_vector(SlopeParams(zp, eta), flag)
    tm = theta_vector(SlopeParams(zm, eta), flag)
    D = sum(((tp.vertices[k] - tm.vertices[k]) * beta[k] for k in flag.alpha), Fraction(0))
    dens = [v.denominator for th in (tp, tm) for v in
            list(th.vertices.values()) + [th.infinity] + list(th.flags)]
    scale = lcm(*dens)
    return ParameterChoice(zp, zm, eta, tp, tm, D, scale)


def wall_crossing_context(quiver, alpha, beta, zero=None, ell=None, zeta_bar=None, flag=None,
                          max_denominator=None):
    """Context with theta vectors and D from a certified parameter choice."""
    from .quiver import generic_point_on_wall
    ctx = WallCrossingContext.create(quiver, alpha, beta, zero)
    flag = flag or EnhancedDim.full(ctx.alpha, ctx.zero)
    ell = ell if ell is not None else max(flag.index_set)
    zb = zeta_bar or generic_point_on_wall(ctx.beta, ctx.alpha)
    choice = find_parameters(Wall(ctx.beta), ell, flag, zb, max_denominator)
    tp, tm = choice.integral_thetas()
    D = choice.D * choice.scale
    return WallCrossingContext(quiver, ctx.alpha, ctx.beta, ctx.zero, ctx.beta_bar,
                               tp.as_dict(ctx.zero, quiver.framing),
                               tm.as_dict(ctx.zero, quiver.framing), int(D))
