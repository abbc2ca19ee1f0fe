"""Decomposition data, the s-statistic and assembly of wall-crossing coefficients."""

import itertools
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

from .symbolic import EPS, THETA, Polynomial, RationalFunction, Variable, parse, pochhammer, to_text

BETA_BAR = Variable("bbar")


class MissingGammaError(KeyError):
    pass


# -- index sets -----------------------------------------------------------------

@dataclass(frozen=True, order=True)
class DecompositionDatum:
    """Ordered parts I_1..I_j of [alpha0] with decreasing minima; the rest is I_inf."""

    parts: tuple
    alpha0: int
    beta0: int = 1

    def __post_init__(self):
        parts = tuple(tuple(sorted(p)) for p in self.parts)
        object.__setattr__(self, "parts", parts)
        seen = set()
        for p in parts:
            if not p or len(p) % self.beta0:
                raise ValueError(f"part {p} is empty or not divisible by beta0={self.beta0}")
            if seen & set(p) or min(p) < 1 or max(p) > self.alpha0:
                raise ValueError(f"parts must be disjoint subsets of 1..{self.alpha0}")
            seen.update(p)
        mins = [p[0] for p in parts]
        if any(a <= b for a, b in zip(mins, mins[1:])):
            raise ValueError("part minima must decrease")

    @property
    def d(self):
        return tuple(len(p) // self.beta0 for p in self.parts)

    @property
    def k(self):
        return sum(self.d)

    @property
    def j(self):
        return len(self.parts)

    @property
    def infinity(self):
        used = {x for p in self.parts for x in p}
        return tuple(x for x in range(1, self.alpha0 + 1) if x not in used)

    def after(self, i):
        """Union of the parts after position i (0-based) and I_inf."""
        return tuple(sorted(x for p in self.parts[i + 1:] for x in p) + list(self.infinity))

    def __str__(self):
        return " ".join("{" + ",".join(map(str, p)) + "}" for p in self.parts) or "()"


def s_statistic(A, B):
    """#{a < b} - #{a > b} over pairs in A x B."""
    A, B = sorted(A), sorted(B)
    if set(A) & set(B):
        raise ValueError("s-statistic needs disjoint sets")
    # count pairs with a < b by merging
    less = 0
    i = 0
    for b in B:
        while i < len(A) and A[i] < b:
            i += 1
        less += i
    return less - (len(A) * len(B) - less)


def dec_ell(ell, index_set, beta0):
    """Subsets of index_set of size divisible by beta0, nonempty, with min <= ell."""
    if ell < 1 or beta0 < 1:
        raise ValueError("need ell >= 1 and beta0 >= 1")
    pool = sorted(index_set)
    out = []
    for size in range(beta0, len(pool) + 1, beta0):
        for c in itertools.combinations(pool, size):
            if c[0] <= ell:
                out.append(c)
    out.sort()
    return out


def _set_partitions(items):
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in _set_partitions(rest):
        yield [[first]] + part
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1:]


@lru_cache(maxsize=None)
def _dec_sets(alpha0, beta0, j):
    out = []
    full = tuple(range(1, alpha0 + 1))
    for size in range(beta0 * j, alpha0 + 1, beta0):
        for used in itertools.combinations(full, size):
            for blocks in _set_partitions(list(used)):
                if len(blocks) != j or any(len(b) % beta0 for b in blocks):
                    continue
                blocks = sorted((tuple(sorted(b)) for b in blocks), key=lambda b: -b[0])
                out.append(tuple(blocks))
    out.sort()
    return tuple(out)


def dec_sets(alpha0, beta0, j):
    """All decomposition data with exactly j parts, sorted lexicographically.

    Each datum is a choice of the used elements, a set partition of them into
    blocks of size divisible by beta0, listed by decreasing minimum.
    """
    if j < 1:
        raise ValueError("j must be at least 1")
    return [DecompositionDatum(p, alpha0, beta0) for p in _dec_sets(alpha0, beta0, j)]


def dec_sets_recursive(alpha0, beta0, j):
    """Same set built by extending each (j-1)-datum with a part from D^{min(I_{j-1})-1}(I_inf)."""
    level = [((), tuple(range(1, alpha0 + 1)), alpha0)]
    for _ in range(j):
        nxt = []
        for parts, rest, ell in level:
            if ell < 1:
                continue
            for part in dec_ell(ell, rest, beta0):
                remaining = tuple(x for x in rest if x not in part)
                nxt.append((parts + (part,), remaining, part[0] - 1))
        level = nxt
    return sorted(DecompositionDatum(p, alpha0, beta0) for p, _, _ in level) if level else []


def all_dec_sets(alpha0, beta0):
    out = []
    for j in range(1, alpha0 // beta0 + 1):
        out.extend(dec_sets(alpha0, beta0, j))
    return out


# -- gamma series -----------------------------------------------------------------

class GammaSeries:
    """gamma_d for d >= 1, with gamma_0 = 1; values computed lazily and cached."""

    def __init__(self, mode, values=None, factory=None):
        self.mode = mode
        self._values = {int(d): RationalFunction.coerce(v) for d, v in (values or {}).items()}
        self._factory = factory

    def __getitem__(self, d):
        if d == 0:
            return RationalFunction(1)
        if d < 0:
            raise MissingGammaError(d)
        if d not in self._values:
            if self._factory is None:
                raise MissingGammaError(f"gamma_{d} is not available ({self.mode})")
            self._values[d] = RationalFunction.coerce(self._factory(d))
        return self._values[d]

    def has(self, d):
        try:
            self[d]
        except MissingGammaError:
            return False
        return True

    @classmethod
    def symbolic(cls, prefix="g"):
        return cls("symbolic", factory=lambda d: Polynomial.var(Variable(f"{prefix}{d}")))

    @classmethod
    def handsaw(cls, theta=THETA, eps=EPS):
        x = RationalFunction(Polynomial.var(theta)) / Polynomial.var(eps) + 1
        return cls("handsaw-A1", factory=lambda d: pochhammer(x, d) / factorial(d))

    @classmethod
    def table(cls, values):
        return cls("user table", values=values)

    @classmethod
    def from_text(cls, text):
        values = {}
        for n, line in enumerate(text.splitlines(), start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "\t" not in line:
                raise ValueError(f"line {n}: expected 'd<TAB>value'")
            d, expr = line.split("\t", 1)
            values[int(d)] = parse(expr)
        return cls.table(values)

    def to_text(self, up_to):
        return "".join(f"{d}\t{to_text(self[d])}\n" for d in range(1, up_to + 1))


# -- coefficients -------------------------------------------------------------------

@dataclass(frozen=True)
class WallData:
    """The numbers the combinatorial formula depends on."""

    alpha0: int
    beta0: int
    beta_bar: object = 0  # int or a polynomial in BETA_BAR
    alpha: object = None
    beta: object = None


def wall_data(ctx, symbolic_beta_bar=False):
    if isinstance(ctx, WallData):
        return ctx
    bb = Polynomial.var(BETA_BAR) if symbolic_beta_bar else ctx.beta_bar
    return WallData(ctx.alpha0, ctx.beta0, bb, ctx.alpha, ctx.beta)


@dataclass(frozen=True)
class WallCrossTerm:
    datum: DecompositionDatum
    coefficient: RationalFunction
    k: int
    target: object = None  # alpha - k beta when alpha is known and it is a dimension vector


def _linear_factor(s, d, beta_bar):
    if isinstance(beta_bar, int):
        return RationalFunction(s - beta_bar * d)
    return RationalFunction(Polynomial.constant(s) - Polynomial.coerce(beta_bar) * d)


def term_coefficient(datum, gamma, beta_bar):
    """(|I_inf|!/alpha0!) prod_i (|I_i|-1)! gamma_{d_i} (s(I_i, rest_i) - beta_bar d_i)."""
    c = Fraction(factorial(len(datum.infinity)), factorial(datum.alpha0))
    coeff = RationalFunction(1)
    for i, (part, d) in enumerate(zip(datum.parts, datum.d)):
        c *= factorial(len(part) - 1)
        s = s_statistic(part, datum.after(i))
        coeff = coeff * gamma[d] * _linear_factor(s, d, beta_bar)
    return coeff * c


def _target(data, k):
    # alpha - k beta, or None when it is negative somewhere (that moduli space is empty)
    if data.alpha is None or not data.beta * k <= data.alpha:
        return None
    return data.alpha - data.beta * k


def wall_cross_terms(ctx, gamma, symbolic_beta_bar=False):
    data = wall_data(ctx, symbolic_beta_bar)
    if data.beta0 == 0:
        raise ValueError("beta0 must be nonzero")
    terms = []
    for datum in all_dec_sets(data.alpha0, data.beta0):
        terms.append(WallCrossTerm(datum, term_coefficient(datum, gamma, data.beta_bar),
                                   datum.k, _target(data, datum.k)))
    return terms


def grouped_by_k(terms):
    out = defaultdict(lambda: RationalFunction(0))
    for t in terms:
        out[t.k] = out[t.k] + t.coefficient
    return dict(sorted(out.items()))


@dataclass(frozen=True)
class RecursionBranch:
    part: tuple
    coefficient: RationalFunction
    level: int
    rest: tuple
    d: int
    target: object = None


def recursion_step(ctx, ell, index_set, gamma, symbolic_beta_bar=False):
    """One step: for each I# in D^ell(I), coefficient and the next (ell', I-flat)."""
    data = wall_data(ctx, symbolic_beta_bar)
    index_set = tuple(sorted(index_set))
    if ell not in index_set:
        raise ValueError(f"ell={ell} is not in the index set")
    total = factorial(len(index_set))
    out = []
    for part in dec_ell(ell, index_set, data.beta0):
        rest = tuple(x for x in index_set if x not in part)
        d = len(part) // data.beta0
        c = Fraction(factorial(len(rest)) * factorial(len(part) - 1), total)
        coeff = gamma[d] * _linear_factor(s_statistic(part, rest), d, data.beta_bar) * c
        out.append(RecursionBranch(part, coeff, part[0] - 1, rest, d, _target(data, d)))
    return out


def iterate_recursion(ctx, gamma, symbolic_beta_bar=False):
    """Unfold recursion_step from ell = alpha0; maps each datum to its accumulated coefficient."""
    data = wall_data(ctx, symbolic_beta_bar)
    out = {}

    def walk(ell, index_set, prefix, coeff):
        for br in recursion_step(data, ell, index_set, gamma):
            parts = prefix + (br.part,)
            c = coeff * br.coefficient
            out[DecompositionDatum(parts, data.alpha0, data.beta0)] = c
            # D^ell only looks at minima, so move ell down to an element of the remaining set
            below = [x for x in br.rest if x <= br.level]
            if below:
                walk(max(below), br.rest, parts, c)

    if data.alpha0 >= 1:
        walk(data.alpha0, tuple(range(1, data.alpha0 + 1)), (), RationalFunction(1))
    return out


# -- one-arrow consistency and the identities checked numerically ------------------

def _one_arrow_sum(gamma, d, beta0, proper):
    n = d * beta0
    total = RationalFunction(0)
    others = list(range(2, n + 1))
    for size in range(beta0, n + 1, beta0):
        if proper and size == n:
            continue
        for extra in itertools.combinations(others, size - 1):
            part = (1,) + extra
            rest = tuple(x for x in range(1, n + 1) if x not in part)
            ds = size // beta0
            c = Fraction(factorial(len(rest)) * factorial(size - 1), factorial(n))
            factor = -s_statistic(part, rest) + beta0 * ds
            if factor:
                total = total + gamma[ds] * gamma[d - ds] * (c * factor)
    return total


def gamma_consistency(gamma, d, beta0=1):
    """gamma_d minus the one-arrow recursion's right-hand side."""
    return gamma[d] - _one_arrow_sum(gamma, d, beta0, proper=False)


def proper_subset_vanishing(d, beta0, gamma):
    """Contribution of the proper subsets containing 1 in the one-arrow recursion."""
    return _one_arrow_sum(gamma, d, beta0, proper=True)


def _ordered_partition_sum(d, n, beta0):
    total = 0

    def walk(i, rest, bound, prod):
        nonlocal total
        if i == len(d):
            total += prod
            return
        size = d[i] * beta0
        for part in itertools.combinations(rest, size):
            if part[0] >= bound:
                break
            remaining = tuple(x for x in rest if x not in part)
            s = s_statistic(part, remaining)
            if s:
                walk(i + 1, remaining, part[0], prod * s)

    walk(0, tuple(range(1, n + 1)), n + 1, 1)
    return total


def s_partition_sum(d, n, beta0=1):
    """Sum over ordered disjoint parts of sizes beta0*d_i with decreasing minima of prod s(I_i, rest)."""
    d = tuple(d)
    if any(x <= 0 for x in d) or beta0 * sum(d) > n:
        raise ValueError("parts must be positive and fit inside [n]")
    return _ordered_partition_sum(d, n, beta0)


def s_partition_vanishing(d, n, beta0=1):
    """Coefficient of the monomial prod gamma_{d_i}: the ordered sum over all distinct rearrangements of d."""
    d = tuple(d)
    perms = sorted(set(itertools.permutations(d)))
    return sum(s_partition_sum(p, n, beta0) for p in perms)


def _a_weight(datum, gamma, beta_bar):
    out = RationalFunction(1)
    for i, (part, d) in enumerate(zip(datum.parts, datum.d)):
        s = s_statistic(part, datum.after(i))
        out = out * gamma[d] * _linear_factor(s, d, beta_bar) * factorial(len(part) - 1)
    return out


def _dec_with_rest(alpha0, beta0, i):
    if i == alpha0:
        return [DecompositionDatum((), alpha0, beta0)]
    return [x for x in all_dec_sets(alpha0, beta0) if len(x.infinity) == i]


def binomial_question_experiment(alpha0, beta0, i, gamma, beta_bar=None):
    """Compare sum over data with |I_inf| = i against binom(alpha0, i) * A_{alpha0-i}.

    Reports the two sides; the identity is an open question, so nothing is asserted.
    """
    if beta_bar is None:
        beta_bar = Polynomial.var(BETA_BAR)
    if not 0 <= i <= alpha0:
        raise ValueError("need 0 <= i <= alpha0")
    lhs = RationalFunction(0)
    for datum in _dec_with_rest(alpha0, beta0, i):
        lhs = lhs + _a_weight(datum, gamma, beta_bar)
    m = alpha0 - i
    a_m = RationalFunction(0)
    for datum in _dec_with_rest(m, beta0, 0):
        a_m = a_m + _a_weight(datum, gamma, beta_bar)
    rhs = a_m * comb(alpha0, i)
    return lhs, rhs, lhs == rhs
