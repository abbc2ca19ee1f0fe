"""Sparse multivariate polynomials over the rationals.

A monomial is a tuple of ``(Variable, exponent)`` pairs sorted by variable
order, with every exponent positive. The empty tuple is the monomial 1.
"""

from fractions import Fraction
from functools import cmp_to_key
from numbers import Rational

from .variables import Variable


def mono_mul(a, b):
    if not a:
        return b
    if not b:
        return a
    out = []
    i = j = 0
    while i < len(a) and j < len(b):
        va, ea = a[i]
        vb, eb = b[j]
        if va is vb:
            out.append((va, ea + eb))
            i += 1
            j += 1
        elif va.key < vb.key:
            out.append(a[i])
            i += 1
        else:
            out.append(b[j])
            j += 1
    out.extend(a[i:])
    out.extend(b[j:])
    return tuple(out)


def mono_cmp(a, b):
    """Lexicographic comparison; earlier variables dominate."""
    for (va, ea), (vb, eb) in zip(a, b):
        if va is not vb:
            return 1 if va.key < vb.key else -1
        if ea != eb:
            return 1 if ea > eb else -1
    return (len(a) > len(b)) - (len(a) < len(b))


mono_key = cmp_to_key(mono_cmp)


def _coerce_coeff(c):
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (int, Rational)):
        return Fraction(c)
    raise TypeError(f"not an exact rational: {c!r}")


class Polynomial:
    """Immutable sparse polynomial with :class:`Fraction` coefficients."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for mono, c in terms.items():
                c = _coerce_coeff(c)
                if c:
                    clean[mono] = c
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms):
        # trusted constructor: terms already has no zero coefficients
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def constant(cls, c):
        c = _coerce_coeff(c)
        return cls._raw({(): c} if c else {})

    @classmethod
    def var(cls, v):
        if isinstance(v, str):
            v = Variable(v)
        return cls._raw({((v, 1),): Fraction(1)})

    @classmethod
    def coerce(cls, x):
        if isinstance(x, Polynomial):
            return x
        if isinstance(x, Variable):
            return cls.var(x)
        if hasattr(x, "to_polynomial"):
            return x.to_polynomial()
        return cls.constant(x)

    # -- inspection ---------------------------------------------------------
    @property
    def terms(self):
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self):
        return len(self._terms)

    def is_zero(self):
        return not self._terms

    def is_constant(self):
        return not self._terms or (len(self._terms) == 1 and () in self._terms)

    def constant_value(self):
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return self._terms.get((), Fraction(0))

    def variables(self):
        seen = {v for mono in self._terms for v, _ in mono}
        return tuple(sorted(seen, key=lambda v: v.key))

    def total_degree(self):
        if not self._terms:
            return -1
        return max(sum(e for _, e in mono) for mono in self._terms)

    def degree_in(self, v):
        if not self._terms:
            return -1
        return max(dict(mono).get(v, 0) for mono in self._terms)

    def sorted_terms(self):
        """Terms in descending lexicographic order."""
        return sorted(self._terms.items(), key=lambda t: mono_key(t[0]), reverse=True)

    def leading_term(self):
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        mono = max(self._terms, key=mono_key)
        return mono, self._terms[mono]

    def leading_coefficient(self):
        return self.leading_term()[1]

    def coefficients_in(self, v):
        """Split as sum_k c_k v^k; returns {k: c_k} with c_k free of v."""
        parts = {}
        for mono, c in self._terms.items():
            k = 0
            rest = mono
            for idx, (w, e) in enumerate(mono):
                if w is v:
                    k = e
                    rest = mono[:idx] + mono[idx + 1:]
                    break
            parts.setdefault(k, {})[rest] = c
        return {k: Polynomial._raw(t) for k, t in parts.items()}

    # -- arithmetic ---------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, Polynomial):
            if isinstance(other, (int, Fraction)):
                other = Polynomial.constant(other)
            else:
                return NotImplemented
        if len(other._terms) > len(self._terms):
            self, other = other, self
        out = dict(self._terms)
        for mono, c in other._terms.items():
            s = out.get(mono, 0) + c
            if s:
                out[mono] = s
            else:
                out.pop(mono, None)
        return Polynomial._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        c = _coerce_coeff(c)
        if not c:
            return Polynomial._raw({})
        return Polynomial._raw({m: v * c for m, v in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        a, b = self._terms, other._terms
        if not a or not b:
            return Polynomial._raw({})
        if len(a) < len(b):
            a, b = b, a
        out = {}
        for mb, cb in b.items():
            for ma, ca in a.items():
                m = mono_mul(ma, mb)
                s = out.get(m, 0) + ca * cb
                if s:
                    out[m] = s
                else:
                    out.pop(m, None)
        return Polynomial._raw(out)

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        result = Polynomial.constant(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __truediv__(self, other):
        from .rational import RationalFunction
        return RationalFunction(self) / other

    def __rtruediv__(self, other):
        from .rational import RationalFunction
        return RationalFunction(other) / RationalFunction(self)

    # -- substitution -------------------------------------------------------
    def substitute(self, v, value):
        """Replace ``v`` by a polynomial ``value``."""
        value = Polynomial.coerce(value)
        parts = self.coefficients_in(v)
        result = Polynomial._raw({})
        power = Polynomial.constant(1)
        for k in range(max(parts) + 1 if parts else 0):
            if k in parts:
                result = result + parts[k] * power
            power = power * value
        return result

    def subs(self, mapping):
        """Simultaneous substitution; values may be polynomials or rational functions.

        Returns a RationalFunction when any value is one, else a Polynomial.
        """
        from .rational import RationalFunction
        rational = any(isinstance(x, RationalFunction) for x in mapping.values())
        one = RationalFunction(1) if rational else Polynomial.constant(1)
        cache = {}
        total = RationalFunction(0) if rational else Polynomial._raw({})
        for mono, c in self._terms.items():
            term = one
            keep = []
            for v, e in mono:
                if v in mapping:
                    key = (v, e)
                    if key not in cache:
                        val = mapping[v]
                        if not isinstance(val, (Polynomial, RationalFunction)):
                            val = Polynomial.coerce(val)
                        cache[key] = val ** e
                    term = term * cache[key]
                else:
                    keep.append((v, e))
            term = term * Polynomial._raw({tuple(keep): c})
            total = total + term
        return total

    # -- comparison / hashing -------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self.is_constant() and self.constant_value() == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self._terms)

    def __repr__(self):
        return f"Polynomial({self})"

    def __str__(self):
        from .text import format_polynomial
        return format_polynomial(self)
