"""Rational functions kept in reduced, normalized form."""

from fractions import Fraction

from . import backend
from .polynomial import Polynomial
from .variables import Variable


class RationalFunction:
    """numerator/denominator with gcd removed and denominator leading coefficient 1.

    Two rational functions are equal iff their stored numerators and
    denominators coincide, so ``==`` is a structural comparison.
    """

    __slots__ = ("numerator", "denominator", "_hash")

    def __init__(self, numerator, denominator=1):
        if isinstance(numerator, RationalFunction):
            if denominator == 1:
                self._set(numerator.numerator, numerator.denominator)
                return
            q = numerator / RationalFunction(denominator)
            self._set(q.numerator, q.denominator)
            return
        num = Polynomial.coerce(numerator)
        if isinstance(denominator, RationalFunction):
            q = RationalFunction(num) / denominator
            self._set(q.numerator, q.denominator)
            return
        den = Polynomial.coerce(denominator)
        self._set(*_reduce(num, den))

    def _set(self, num, den):
        self.numerator = num
        self.denominator = den
        self._hash = None

    @classmethod
    def _trusted(cls, num, den):
        obj = cls.__new__(cls)
        obj._set(num, den)
        return obj

    @classmethod
    def coerce(cls, x):
        if isinstance(x, RationalFunction):
            return x
        return cls(x)

    # -- predicates ---------------------------------------------------------
    def is_zero(self):
        return self.numerator.is_zero()

    def is_polynomial(self):
        return self.denominator.is_constant()

    def is_constant(self):
        return self.is_polynomial() and self.numerator.is_constant()

    def constant_value(self):
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self.numerator.constant_value()

    def as_polynomial(self):
        if not self.is_polynomial():
            raise ValueError(f"{self} is not a polynomial")
        return self.numerator

    def variables(self):
        return backend.common_gens(self.numerator, self.denominator)

    # -- arithmetic ---------------------------------------------------------
    def __add__(self, other):
        other = _lift(other)
        if other is NotImplemented:
            return other
        a, b = self.numerator, self.denominator
        c, d = other.numerator, other.denominator
        if b.is_constant() and d.is_constant():
            return RationalFunction._trusted(a + c, b)
        if d.is_constant():
            # gcd(a + c*b, b) = gcd(a, b) = 1
            return RationalFunction._trusted(a + c * b, b)
        if b.is_constant():
            return RationalFunction._trusted(c + a * d, d)
        if b == d:
            return RationalFunction(a + c, b)
        return RationalFunction(a * d + c * b, b * d)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction._trusted(-self.numerator, self.denominator)

    def __sub__(self, other):
        other = _lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _lift(other)
        if other is NotImplemented:
            return other
        if self.is_polynomial() and other.is_polynomial():
            return RationalFunction._trusted(self.numerator * other.numerator, self.denominator)
        return RationalFunction(self.numerator * other.numerator,
                                self.denominator * other.denominator)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _lift(other)
        if other is NotImplemented:
            return other
        if other.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RationalFunction(self.numerator * other.denominator,
                                self.denominator * other.numerator)

    def __rtruediv__(self, other):
        return _lift(other) / self

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return RationalFunction(1) / (self ** -k)
        # powers of a reduced fraction stay reduced
        return RationalFunction._trusted(self.numerator ** k, self.denominator ** k)

    # -- substitution -------------------------------------------------------
    def substitute(self, v, value):
        """Replace ``v`` by a polynomial or rational function."""
        return self.subs({v: value})

    def subs(self, mapping):
        mapping = {Variable(k) if isinstance(k, str) else k: v for k, v in mapping.items()}
        num = self.numerator.subs(mapping)
        den = self.denominator.subs(mapping)
        return RationalFunction(num) / RationalFunction(den)

    # -- comparison ---------------------------------------------------------
    def __eq__(self, other):
        other = _lift(other)
        if other is NotImplemented:
            return other
        return self.numerator == other.numerator and self.denominator == other.denominator

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.numerator, self.denominator))
        return self._hash

    def __bool__(self):
        return not self.is_zero()

    def __repr__(self):
        return f"RationalFunction({self})"

    def __str__(self):
        from .text import format_rational
        return format_rational(self)


def _lift(x):
    if isinstance(x, RationalFunction):
        return x
    if isinstance(x, (Polynomial, int, Fraction, Variable)) or hasattr(x, "to_polynomial"):
        return RationalFunction._trusted(*_reduce(Polynomial.coerce(x), Polynomial.constant(1)))
    return NotImplemented


def _reduce(num, den):
    if den.is_zero():
        raise ZeroDivisionError("zero denominator")
    if num.is_zero():
        return num, Polynomial.constant(1)
    if den.is_constant():
        c = den.constant_value()
        return (num if c == 1 else num.scale(1 / c)), Polynomial.constant(1)
    if not num.is_constant():
        _, num, den = backend.cofactors(num, den)
    lc = den.leading_coefficient()
    if lc != 1:
        num, den = num.scale(1 / lc), den.scale(1 / lc)
    return num, den


def as_rational(x):
    return RationalFunction.coerce(x)


def poly_arith(a, b, op):
    """Exact a (op) b for op in add/sub/mul/div, always a RationalFunction."""
    a, b = as_rational(a), as_rational(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")
