"""Torus weights, formal K-theory classes and their Euler classes."""

from collections import Counter
from fractions import Fraction

from .polynomial import Polynomial
from .rational import RationalFunction, as_rational
from .variables import THETA, Variable


class ZeroWeightError(ValueError):
    """A zero factor showed up where an isolated fixed point needs a nonzero one."""


class WeightForm:
    """Integer linear form ``sum n_v v + c``."""

    __slots__ = ("coeffs", "const", "_hash")

    def __init__(self, coeffs=None, const=0):
        clean = {}
        for v, n in (coeffs or {}).items():
            if isinstance(v, str):
                v = Variable(v)
            if int(n) != n:
                raise ValueError("weight coefficients must be integers")
            if n:
                clean[v] = clean.get(v, 0) + int(n)
        if int(const) != const:
            raise ValueError("weight constants must be integers")
        self.coeffs = tuple(sorted(((v, n) for v, n in clean.items() if n),
                                   key=lambda t: t[0].key))
        self.const = int(const)
        self._hash = None

    @classmethod
    def of(cls, v, n=1):
        return cls({v: n})

    @classmethod
    def coerce(cls, x):
        if isinstance(x, WeightForm):
            return x
        if isinstance(x, (Variable, str)):
            return cls.of(x)
        if isinstance(x, int):
            return cls(const=x)
        if isinstance(x, dict):
            const = x.get("1", 0)
            return cls({k: n for k, n in x.items() if k != "1"}, const)
        raise TypeError(f"cannot make a weight from {x!r}")

    def as_dict(self):
        d = {v.name: n for v, n in self.coeffs}
        if self.const:
            d["1"] = self.const
        return d

    def is_zero(self):
        return not self.coeffs and not self.const

    def __add__(self, other):
        other = WeightForm.coerce(other)
        d = dict(self.coeffs)
        for v, n in other.coeffs:
            d[v] = d.get(v, 0) + n
        return WeightForm(d, self.const + other.const)

    __radd__ = __add__

    def __neg__(self):
        return WeightForm({v: -n for v, n in self.coeffs}, -self.const)

    def __sub__(self, other):
        return self + (-WeightForm.coerce(other))

    def __rsub__(self, other):
        return WeightForm.coerce(other) - self

    def __mul__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        return WeightForm({v: n * k for v, n in self.coeffs}, self.const * k)

    __rmul__ = __mul__

    def substitute(self, mapping):
        """Linear substitution of variables by weight forms."""
        out = WeightForm(const=self.const)
        for v, n in self.coeffs:
            out = out + (WeightForm.coerce(mapping[v]) * n if v in mapping else WeightForm.of(v, n))
        return out

    def to_polynomial(self):
        terms = {((v, 1),): Fraction(n) for v, n in self.coeffs}
        if self.const:
            terms[()] = Fraction(self.const)
        return Polynomial._raw(terms)

    def __eq__(self, other):
        if not isinstance(other, WeightForm):
            return NotImplemented
        return self.coeffs == other.coeffs and self.const == other.const

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.coeffs, self.const))
        return self._hash

    def sort_key(self):
        return (tuple((v.key, n) for v, n in self.coeffs), self.const)

    def __repr__(self):
        return f"WeightForm({self})"

    def __str__(self):
        return str(self.to_polynomial())


def _multiset(items):
    return tuple(sorted((WeightForm.coerce(w) for w in items), key=WeightForm.sort_key))


class KClass:
    """Formal difference ``plus - minus`` of sums of lines."""

    __slots__ = ("plus", "minus")

    def __init__(self, plus=(), minus=()):
        self.plus = _multiset(plus)
        self.minus = _multiset(minus)

    @property
    def rank(self):
        return len(self.plus) - len(self.minus)

    def __add__(self, other):
        return KClass(self.plus + other.plus, self.minus + other.minus)

    def __neg__(self):
        return KClass(self.minus, self.plus)

    def __sub__(self, other):
        return self + (-other)

    def dual(self):
        return KClass([-w for w in self.plus], [-w for w in self.minus])

    def reduced(self):
        """Cancel common lines from plus and minus."""
        p, m = Counter(self.plus), Counter(self.minus)
        return KClass((p - m).elements(), (m - p).elements())

    def __eq__(self, other):
        if not isinstance(other, KClass):
            return NotImplemented
        return self.plus == other.plus and self.minus == other.minus

    def __hash__(self):
        return hash((self.plus, self.minus))

    def __repr__(self):
        fmt = lambda ws: "{" + ", ".join(str(w) for w in ws) + "}"
        return f"KClass({fmt(self.plus)} - {fmt(self.minus)})"


def _product(factors):
    out = Polynomial.constant(1)
    for f in factors:
        out = out * f
    return out


def euler_theta(c, theta=THETA):
    """prod(w + theta) over plus / prod(w + theta) over minus."""
    shift = Polynomial.coerce(theta)
    c = c.reduced()
    den = [w.to_polynomial() + shift for w in c.minus]
    if any(f.is_zero() for f in den):
        raise ZeroWeightError("twisted Euler class has a zero factor in the denominator")
    num = [w.to_polynomial() + shift for w in c.plus]
    return RationalFunction(_product(num), _product(den))


def euler_plain(c):
    """prod(w) over plus / prod(w) over minus; zero weights are rejected."""
    if any(w.is_zero() for w in c.plus + c.minus):
        raise ZeroWeightError("zero weight: the fixed point is not isolated")
    c = c.reduced()
    return RationalFunction(_product(w.to_polynomial() for w in c.plus),
                            _product(w.to_polynomial() for w in c.minus))


def pochhammer(x, k):
    """Rising factorial x(x+1)...(x+k-1)."""
    if k < 0:
        raise ValueError("k must be non-negative")
    x = as_rational(x)
    out = RationalFunction(1)
    for i in range(k):
        out = out * (x + i)
    return out
