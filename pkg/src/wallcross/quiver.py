"""Framed quivers with relations and torus weights, plus wall and chamber geometry."""

import itertools
import json
from collections.abc import Mapping
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from .symbolic import WeightForm

FRAMING = "inf"


class DimVector(Mapping):
    """Immutable vertex -> non-negative integer map, ordered by insertion."""

    __slots__ = ("_data", "_hash")

    def __init__(self, data=(), **kw):
        d = dict(data, **kw)
        for k, n in d.items():
            if int(n) != n or n < 0:
                raise ValueError(f"dimension at {k!r} must be a non-negative integer")
        self._data = {str(k): int(n) for k, n in d.items()}
        self._hash = None

    def __getitem__(self, k):
        return self._data.get(k, 0)

    def __iter__(self):
        return iter(self._data)

    def __len__(self):
        return len(self._data)

    def __contains__(self, k):
        return k in self._data

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(tuple(sorted(self._data.items())))
        return self._hash

    def __eq__(self, other):
        if isinstance(other, Mapping):
            keys = set(self._data) | set(other)
            return all(self[k] == other.get(k, 0) for k in keys)
        return NotImplemented

    def __le__(self, other):
        return all(n <= other[k] for k, n in self._data.items())

    def __add__(self, other):
        keys = list(self._data) + [k for k in other if k not in self._data]
        return DimVector({k: self[k] + other[k] for k in keys})

    def __sub__(self, other):
        return DimVector({k: self[k] - other[k] for k in self._data})

    def __mul__(self, k):
        return DimVector({v: n * k for v, n in self._data.items()})

    __rmul__ = __mul__

    def total(self):
        return sum(self._data.values())

    def is_zero(self):
        return not any(self._data.values())

    def is_primitive(self):
        return gcd(*self._data.values()) == 1 if self._data else False

    def __repr__(self):
        return "DimVector({" + ", ".join(f"{k!r}: {n}" for k, n in self._data.items()) + "})"


def pairing(zeta, dims):
    """sum_v zeta_v * dims_v over the vertices of ``dims``."""
    return sum((Fraction(zeta.get(k, 0)) * n for k, n in dims.items()), Fraction(0))


@dataclass(frozen=True)
class Arrow:
    id: str
    source: str
    target: str
    weight: WeightForm = field(default_factory=WeightForm)


@dataclass(frozen=True)
class Relation:
    """Formal sum of paths; each path lists arrow ids in traversal order."""

    terms: tuple  # of (Fraction coefficient, tuple of arrow ids)


@dataclass(frozen=True)
class FramedQuiver:
    vertices: tuple
    framing: str
    arrows: tuple
    relations: tuple = ()

    def __post_init__(self):
        # framing vertex last, everything else in the given order
        vs = tuple(v for v in self.vertices if v != self.framing)
        if self.framing in self.vertices:
            vs = vs + (self.framing,)
        object.__setattr__(self, "vertices", vs)
        object.__setattr__(self, "arrows", tuple(self.arrows))
        object.__setattr__(self, "relations", tuple(self.relations))

    @property
    def internal(self):
        return tuple(v for v in self.vertices if v != self.framing)

    def arrow(self, arrow_id):
        for a in self.arrows:
            if a.id == arrow_id:
                return a
        raise KeyError(arrow_id)

    def path_weight(self, path):
        w = WeightForm()
        for aid in path:
            w = w + self.arrow(aid).weight
        return w

    def relation_endpoints(self, rel):
        """(start, end) of a relation, taken from its first path."""
        path = rel.terms[0][1]
        return self.arrow(path[0]).source, self.arrow(path[-1]).target

    def relation_weight(self, rel):
        return self.path_weight(rel.terms[0][1])

    # -- serialization -------------------------------------------------------
    def to_dict(self):
        return {
            "vertices": list(self.vertices),
            "framing": self.framing,
            "arrows": [{"id": a.id, "from": a.source, "to": a.target,
                        "weight": a.weight.as_dict()} for a in self.arrows],
            "relations": [{"terms": [{"coeff": _frac_text(c), "path": list(p)}
                                     for c, p in rel.terms]} for rel in self.relations],
        }

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False)

    @classmethod
    def from_dict(cls, data):
        try:
            arrows = [Arrow(str(a["id"]), str(a["from"]), str(a["to"]),
                            WeightForm.coerce(dict(a.get("weight", {}))))
                      for a in data["arrows"]]
            rels = [Relation(tuple((Fraction(str(t.get("coeff", "1"))), tuple(map(str, t["path"])))
                                   for t in r["terms"]))
                    for r in data.get("relations", [])]
            return cls(tuple(map(str, data["vertices"])), str(data["framing"]), arrows, rels)
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"malformed quiver description: {exc}") from exc

    @classmethod
    def from_json(cls, text):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ValueError(f"malformed quiver description: {exc}") from exc
        if not isinstance(data, dict):
            raise ValueError("malformed quiver description: top level must be an object")
        return cls.from_dict(data)


def _frac_text(c):
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def validate(q):
    """List of human-readable invariant violations; empty when q is well formed."""
    problems = []
    vertices = set(q.vertices)
    if q.framing not in vertices:
        problems.append(f"framing vertex {q.framing!r} is not a vertex")
    if len(vertices) != len(q.vertices):
        problems.append("duplicate vertex identifiers")
    ids = [a.id for a in q.arrows]
    if len(set(ids)) != len(ids):
        problems.append("duplicate arrow identifiers")
    arrows = {}
    for a in q.arrows:
        arrows[a.id] = a
        for end in (a.source, a.target):
            if end not in vertices:
                problems.append(f"arrow {a.id!r} references unknown vertex {end!r}")
    for n, rel in enumerate(q.relations):
        if not rel.terms:
            problems.append(f"relation {n} is empty")
            continue
        ends = set()
        weights = set()
        broken = False
        for _, path in rel.terms:
            if not path or any(aid not in arrows for aid in path):
                problems.append(f"relation {n} uses an unknown arrow or an empty path")
                broken = True
                break
            for x, y in zip(path, path[1:]):
                if arrows[x].target != arrows[y].source:
                    problems.append(f"relation {n}: arrows {x!r} and {y!r} do not compose")
                    broken = True
            ends.add((arrows[path[0]].source, arrows[path[-1]].target))
            weights.add(q.path_weight(path))
        if broken:
            continue
        if len(ends) > 1:
            problems.append(f"relation {n}: paths have different endpoints")
        elif any(v == q.framing for v in next(iter(ends))):
            problems.append(f"relation {n} starts or ends at the framing vertex")
        if len(weights) > 1:
            problems.append(f"relation {n}: paths carry different torus weights")
    return problems


# -- stability parameters and walls -----------------------------------------

@dataclass(frozen=True)
class StabilityParam:
    """zeta on internal vertices; zeta at infinity is fixed by zeta(V) = 0."""

    values: Mapping
    alpha: Mapping = None

    def __post_init__(self):
        object.__setattr__(self, "values", {str(k): Fraction(v) for k, v in self.values.items()})

    def __getitem__(self, k):
        return self.values.get(k, Fraction(0))

    def get(self, k, default=0):
        return self.values.get(k, default)

    def items(self):
        return self.values.items()

    @property
    def infinity(self):
        if self.alpha is None:
            raise ValueError("zeta at infinity needs the dimension vector")
        return zeta_infinity(self.values, self.alpha)

    def pair(self, dims):
        return pairing(self.values, dims)


def zeta_infinity(zeta, alpha):
    return -pairing(dict(zeta), alpha)


def beta_bar_infinity(q, beta):
    """Arrows leaving infinity weighted by beta at their head, minus arrows entering it."""
    total = 0
    for a in q.arrows:
        if a.source == q.framing and a.target != q.framing:
            total += beta.get(a.target, 0)
        if a.target == q.framing and a.source != q.framing:
            total -= beta.get(a.source, 0)
    return total


@dataclass(frozen=True)
class Wall:
    beta: DimVector

    def __post_init__(self):
        b = DimVector(self.beta)
        if b.is_zero() or not b.is_primitive():
            raise ValueError(f"wall vector must be nonzero and primitive, got {dict(b)}")
        object.__setattr__(self, "beta", b)

    def contains(self, zeta):
        return pairing(dict(zeta.items()) if hasattr(zeta, "items") else zeta, self.beta) == 0


def enumerate_walls(alpha):
    """All primitive nonzero beta <= alpha, in lexicographic order of coordinates."""
    alpha = DimVector(alpha)
    keys = list(alpha)
    walls = []
    for combo in itertools.product(*(range(alpha[k] + 1) for k in keys)):
        if any(combo) and gcd(*combo) == 1:
            walls.append(Wall(DimVector(zip(keys, combo))))
    return walls


@dataclass(frozen=True)
class Classification:
    kind: str  # "generic", "on-wall" or "degenerate"
    walls: tuple  # walls whose hyperplane contains zeta
    signs: tuple  # (wall, sign of zeta.beta) for every wall

    @property
    def wall(self):
        return self.walls[0] if self.kind == "on-wall" else None

    def chamber_side(self, wall):
        """'C' when zeta.beta < 0, "C'" when > 0, None on the hyperplane."""
        for w, s in self.signs:
            if w == wall:
                return None if s == 0 else ("C" if s < 0 else "C'")
        raise KeyError(wall)


def classify_parameter(zeta, alpha):
    values = dict(zeta.items()) if hasattr(zeta, "items") else dict(zeta)
    walls = enumerate_walls(alpha)
    signs = []
    on = []
    for w in walls:
        p = pairing(values, w.beta)
        s = (p > 0) - (p < 0)
        signs.append((w, s))
        if s == 0:
            on.append(w)
    if not on:
        kind = "generic"
    elif len(on) == 1:
        kind = "on-wall"
    else:
        kind = "degenerate"
    return Classification(kind, tuple(on), tuple(signs))


def generic_point_on_wall(beta, alpha):
    """A rational zeta on beta-perp lying on no other wall hyperplane."""
    beta = DimVector(beta)
    keys = list(DimVector(alpha))
    bb = sum(beta[k] ** 2 for k in keys)
    for scale in itertools.count(1):
        for trial in itertools.product(range(-scale, scale + 1), repeat=len(keys)):
            if max(map(abs, trial), default=0) != scale and scale > 1:
                continue
            c = dict(zip(keys, map(Fraction, trial)))
            proj = pairing(c, beta) / bb
            zeta = {k: c[k] - proj * beta[k] for k in keys}
            cl = classify_parameter(zeta, alpha)
            if cl.kind == "on-wall" and cl.wall.beta == beta:
                return StabilityParam(zeta, DimVector(alpha))
        if scale > 50:
            raise ValueError("no generic point found on the wall")


# -- derived quivers -----------------------------------------------------------

def enhanced_quiver(q, zero, L, alpha0=None):
    """Attach a chain (0,1) -> ... -> (0,L) -> 0 of new vertices to ``zero``."""
    if zero not in q.internal:
        raise ValueError(f"{zero!r} is not an internal vertex")
    if alpha0 is not None and L < alpha0:
        raise ValueError(f"chain length {L} is shorter than dim V_0 = {alpha0}")
    if L < 0:
        raise ValueError("chain length must be non-negative")
    chain = [flag_vertex(zero, k) for k in range(1, L + 1)]
    arrows = list(q.arrows)
    for k in range(1, L):
        arrows.append(Arrow(f"{zero}~a{k}", chain[k - 1], chain[k]))
    if L:
        arrows.append(Arrow(f"{zero}~a{L}", chain[-1], zero))
    return FramedQuiver(q.internal + tuple(chain) + (q.framing,), q.framing, arrows, q.relations)


def flag_vertex(zero, k):
    return f"{zero}~{k}"


def sharp_quiver(q, zero, new_framing=None):
    """Demote the framing vertex to an ordinary one and add a new arrow new_framing -> zero."""
    if zero not in q.internal:
        raise ValueError(f"{zero!r} is not an internal vertex")
    new_framing = new_framing or q.framing + "'"
    if new_framing in q.vertices:
        raise ValueError(f"vertex {new_framing!r} already exists")
    arrows = list(q.arrows) + [Arrow(f"{new_framing}->{zero}", new_framing, zero)]
    return FramedQuiver(q.vertices + (new_framing,), new_framing, arrows, q.relations)


# -- wall-crossing context -------------------------------------------------------

@dataclass(frozen=True)
class WallCrossingContext:
    """Everything the wall-crossing formula needs about one wall.

    theta_plus/theta_minus and D are filled in when stability parameters were
    found (see :func:`wallcross.stability.wall_crossing_context`).
    """

    quiver: FramedQuiver
    alpha: DimVector
    beta: DimVector
    zero: str
    beta_bar: int
    theta_plus: Mapping = None
    theta_minus: Mapping = None
    D: int = None

    def __post_init__(self):
        object.__setattr__(self, "alpha", DimVector(self.alpha))
        object.__setattr__(self, "beta", DimVector(self.beta))
        if self.beta[self.zero] == 0:
            raise ValueError(f"beta vanishes at the chosen vertex {self.zero!r}")
        if self.D is not None and self.D <= 0:
            raise ValueError("D must be positive")

    @classmethod
    def create(cls, quiver, alpha, beta, zero=None, **kw):
        beta = DimVector(beta)
        if zero is None:
            zero = next(v for v in quiver.internal if beta[v])
        return cls(quiver, DimVector(alpha), beta, zero, beta_bar_infinity(quiver, beta), **kw)

    @property
    def alpha0(self):
        return self.alpha[self.zero]

    @property
    def beta0(self):
        return self.beta[self.zero]
