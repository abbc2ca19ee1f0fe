"""Bridge to sympy's sparse polynomial rings for multivariate gcd and division.

Only gcd/exact division go through sympy; everything else stays in our own
representation so that term order and printing are under our control.
"""

from fractions import Fraction
from functools import lru_cache

from sympy.polys.domains import QQ
from sympy.polys.orderings import lex
from sympy.polys.rings import ring

from .polynomial import Polynomial


@lru_cache(maxsize=512)
def _ring_for(gens):
    R = ring([v.name for v in gens], QQ, lex)[0]
    return R, {v: i for i, v in enumerate(gens)}


def common_gens(*polys):
    seen = set()
    for p in polys:
        seen.update(p.variables())
    return tuple(sorted(seen, key=lambda v: v.key))


def to_ring(p, gens):
    R, index = _ring_for(gens)
    n = len(gens)
    data = {}
    for mono, c in p.items():
        exps = [0] * n
        for v, e in mono:
            exps[index[v]] = e
        data[tuple(exps)] = QQ(c.numerator, c.denominator)
    return R.from_dict(data) if data else R.zero


def from_ring(f, gens):
    terms = {}
    for exps, c in f.items():
        mono = tuple((gens[i], e) for i, e in enumerate(exps) if e)
        terms[mono] = Fraction(int(c.numerator), int(c.denominator))
    return Polynomial._raw(terms)


def cofactors(a, b):
    """Return (g, a/g, b/g) with g a gcd of a and b."""
    gens = common_gens(a, b)
    if not gens:
        return Polynomial.constant(1), a, b
    g, ca, cb = to_ring(a, gens).cofactors(to_ring(b, gens))
    return from_ring(g, gens), from_ring(ca, gens), from_ring(cb, gens)


def divide_exact(a, b):
    """a / b, or None when b does not divide a."""
    gens = common_gens(a, b)
    if not gens:
        return a.scale(1 / b.constant_value())
    q, r = divmod(to_ring(a, gens), to_ring(b, gens))
    if r:
        return None
    return from_ring(q, gens)
