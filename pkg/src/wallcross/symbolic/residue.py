"""Residues at infinity via exact Laurent expansion in 1/v."""

from .polynomial import Polynomial
from .rational import RationalFunction, as_rational
from .variables import Variable


def laurent_at_infinity(f, v, count):
    """First ``count`` Laurent coefficients of f at v = infinity.

    Returns ``(top, coeffs)`` where f = sum_i coeffs[i] * v**(top - i) + ...,
    each coefficient a RationalFunction free of v. With u = 1/v,
    f = u**(n - m) * P(u) / Q(u) where P, Q are the coefficient-reversed
    numerator and denominator, and Q(0) is the leading coefficient of the
    denominator, so the series of P/Q is obtained by the usual recurrence.
    """
    if isinstance(v, str):
        v = Variable(v)
    f = as_rational(f)
    p = f.numerator.coefficients_in(v)
    q = f.denominator.coefficients_in(v)
    m, n = max(p), max(q)
    if f.is_zero():
        return 0, [RationalFunction(0)] * count
    zero = Polynomial.constant(0)
    P = [p.get(m - i, zero) for i in range(m + 1)]
    Q = [q.get(n - j, zero) for j in range(n + 1)]
    q0 = Q[0]
    # S_k = N_k / q0**(k+1) keeps every step polynomial
    N = []
    q0_pows = [Polynomial.constant(1)]
    for k in range(count):
        q0_pows.append(q0_pows[-1] * q0)
        acc = (P[k] if k < len(P) else zero) * q0_pows[k]
        for j in range(1, min(k, n) + 1):
            if not Q[j].is_zero():
                acc = acc - Q[j] * N[k - j] * q0_pows[j - 1]
        N.append(acc)
    coeffs = [RationalFunction(N[k], q0_pows[k + 1]) for k in range(count)]
    return m - n, coeffs


def residue_at_infinity(f, v):
    """Coefficient of v**-1 in the expansion of f at v = infinity."""
    f = as_rational(f)
    if f.is_zero():
        return RationalFunction(0)
    if isinstance(v, str):
        v = Variable(v)
    top = f.numerator.degree_in(v) - f.denominator.degree_in(v)
    if top < -1:
        return RationalFunction(0)
    _, coeffs = laurent_at_infinity(f, v, top + 2)
    return coeffs[top + 1]


def residue_scaling_check(f, v, m, a):
    """Whether Res f(v) == m * Res f(m v + a), residues taken at v = infinity."""
    if isinstance(v, str):
        v = Variable(v)
    if not isinstance(m, int) or m <= 0:
        raise ValueError("m must be a positive integer")
    f = as_rational(f)
    shift = Polynomial.var(v).scale(m) + Polynomial.coerce(a)
    g = f.substitute(v, shift)
    return residue_at_infinity(f, v) == residue_at_infinity(g, v) * m
