"""Named indeterminates with a global, creation-order independent ordering."""

import re

_NAME = re.compile(r"^[A-Za-z_][A-Za-z0-9_']*$")

# Variables that should sort ahead of everything else, in this order.
_PRIORITY = {"theta": 0, "eps": 1, "hbar": 2, "q1": 3, "q2": 4}


def _natural_key(name):
    # x2 < x10: split digit runs out and compare them as integers
    return tuple((0, int(tok), "") if tok.isdigit() else (1, 0, tok)
                 for tok in re.findall(r"\d+|\D+", name))


class Variable:
    """An interned symbol.

    ``Variable("x1") is Variable("x1")`` holds, and ordering is derived from the
    name alone, so two sessions that create variables in different orders still
    agree on term order and on printed output.
    """

    __slots__ = ("name", "key")
    _registry = {}

    def __new__(cls, name):
        found = cls._registry.get(name)
        if found is not None:
            return found
        if not isinstance(name, str) or not _NAME.match(name):
            raise ValueError(f"invalid variable name {name!r}")
        obj = super().__new__(cls)
        obj.name = name
        obj.key = (_PRIORITY.get(name, len(_PRIORITY)), _natural_key(name))
        cls._registry[name] = obj
        return obj

    def __reduce__(self):
        return (Variable, (self.name,))

    def __lt__(self, other):
        return self.key < other.key

    def __le__(self, other):
        return self.key <= other.key

    def __gt__(self, other):
        return self.key > other.key

    def __ge__(self, other):
        return self.key >= other.key

    # interned, so identity equality and the default hash are exact
    __hash__ = object.__hash__

    def __repr__(self):
        return f"Variable({self.name!r})"

    def __str__(self):
        return self.name


THETA = Variable("theta")
EPS = Variable("eps")
HBAR = Variable("hbar")


def variables(names):
    """``variables("x1 x2 x3")`` -> tuple of Variables."""
    if isinstance(names, str):
        names = names.replace(",", " ").split()
    return tuple(Variable(n) for n in names)
