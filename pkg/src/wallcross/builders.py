"""Built-in framed quivers: Nakajima, chainsaw, blow-up, flag and single-vertex.

Torus weights are additive. H-arrows carry q1, reversed arrows q2, and a
framing space W_i with basis weights x_{i,l} contributes arrows
z: inf -> i with weight -x_{i,l} (Hom(W_i, V_i)) and
w: i -> inf with weight x_{i,l} + q1 + q2 (Hom(V_i, W_i) twisted by q1 q2).
Every relation is then homogeneous of weight q1 + q2.
"""

from dataclasses import dataclass
from fractions import Fraction

from .quiver import FRAMING, Arrow, FramedQuiver, Relation
from .symbolic import WeightForm

Q1 = WeightForm.of("q1")
Q2 = WeightForm.of("q2")


@dataclass(frozen=True)
class Graph:
    vertices: tuple
    edges: tuple  # oriented pairs (i, j); loops allowed

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(map(str, self.vertices)))
        object.__setattr__(self, "edges", tuple((str(i), str(j)) for i, j in self.edges))


def a_graph(n):
    """Type A_n: 1 - 2 - ... - n."""
    return Graph(tuple(range(1, n + 1)), tuple((i, i + 1) for i in range(1, n)))


def jordan_graph():
    """One vertex with one loop."""
    return Graph(("1",), (("1", "1"),))


def _framing_var(vertex, l, single):
    return f"x{l}" if single else f"x{vertex}_{l}"


def _multiplicities(vertices, r):
    if isinstance(r, int):
        r = (r,) * len(vertices)
    r = tuple(r)
    if len(r) != len(vertices) or any(int(m) != m or m < 0 for m in r):
        raise ValueError("framing multiplicities must be non-negative integers, one per vertex")
    return r


def nakajima(graph, r):
    """Doubled quiver of ``graph`` with framing, relation sum eps(a) abar a + sum z w per vertex."""
    if not graph.vertices:
        raise ValueError("graph has no vertices")
    for i, j in graph.edges:
        if i not in graph.vertices or j not in graph.vertices:
            raise ValueError(f"edge ({i}, {j}) leaves the graph")
    r = _multiplicities(graph.vertices, r)
    single = len(graph.vertices) == 1
    arrows = []
    pairs = []  # (arrow, its reverse, eps)
    for n, (i, j) in enumerate(graph.edges, start=1):
        h = Arrow(f"h{n}", i, j, Q1)
        hbar = Arrow(f"h{n}*", j, i, Q2)
        arrows += [h, hbar]
        pairs += [(h, hbar, 1), (hbar, h, -1)]
    framing = {}
    for i, m in zip(graph.vertices, r):
        for l in range(1, m + 1):
            x = WeightForm.of(_framing_var(i, l, single))
            z = Arrow(f"z{i}_{l}", FRAMING, i, -x)
            w = Arrow(f"w{i}_{l}", i, FRAMING, x + Q1 + Q2)
            arrows += [z, w]
            framing.setdefault(i, []).append((z, w))
    relations = []
    for i in graph.vertices:
        # eps(a) abar a: traverse a first, then its reverse; loops start and end at i
        terms = [(Fraction(eps), (a.id, abar.id)) for a, abar, eps in pairs if a.source == i]
        terms += [(Fraction(1), (w.id, z.id)) for z, w in framing.get(i, [])]
        if terms:
            relations.append(Relation(tuple(terms)))
    return FramedQuiver(graph.vertices + (FRAMING,), FRAMING, arrows, relations)


def chainsaw(n, r):
    """Cyclic chainsaw quiver on Z/nZ.

    B1_i: i -> i+1 (q1), B2_i: i -> i (q2), a: W_i -> V_i, b: V_i -> W_{i+1}
    (twisted by q1 q2), relation B1 B2 - B2 B1 + a b in Hom(V_i, V_{i+1}).
    """
    if n < 1:
        raise ValueError("chainsaw needs n >= 1")
    verts = tuple(str(i) for i in range(n))
    r = _multiplicities(verts, r)
    arrows = []
    for i in range(n):
        arrows.append(Arrow(f"B1_{i}", str(i), str((i + 1) % n), Q1))
        arrows.append(Arrow(f"B2_{i}", str(i), str(i), Q2))
    a_arrows = {}
    b_arrows = {}
    for i in range(n):
        for l in range(1, r[i] + 1):
            x = WeightForm.of(f"x{i}_{l}")
            a_arrows.setdefault(i, []).append(Arrow(f"a{i}_{l}", FRAMING, str(i), -x))
            b_arrows.setdefault(i, []).append(Arrow(f"b{(i - 1) % n}_{l}", str((i - 1) % n), FRAMING,
                                                    x + Q1 + Q2))
    for lst in list(a_arrows.values()) + list(b_arrows.values()):
        arrows.extend(lst)
    relations = []
    for i in range(n):
        nxt = (i + 1) % n
        terms = [(Fraction(1), (f"B2_{i}", f"B1_{i}")), (Fraction(-1), (f"B1_{i}", f"B2_{nxt}"))]
        for a, b in zip(a_arrows.get(nxt, []), b_arrows.get(nxt, [])):
            terms.append((Fraction(1), (b.id, a.id)))
        relations.append(Relation(tuple(terms)))
    return FramedQuiver(verts + (FRAMING,), FRAMING, arrows, relations)


def blowup(r):
    """Blow-up quiver: B1, B2: V1 -> V0, d: V0 -> V1, z: W -> V0, w: V1 -> W,
    relation B1 d B2 - B2 d B1 + z w = 0 in Hom(V1, V0)."""
    if int(r) != r or r < 0:
        raise ValueError("framing multiplicity must be a non-negative integer")
    arrows = [Arrow("B1", "1", "0", Q1), Arrow("B2", "1", "0", Q2), Arrow("d", "0", "1")]
    terms = [(Fraction(1), ("B2", "d", "B1")), (Fraction(-1), ("B1", "d", "B2"))]
    for l in range(1, r + 1):
        x = WeightForm.of(f"x{l}")
        z = Arrow(f"z{l}", FRAMING, "0", -x)
        w = Arrow(f"w{l}", "1", FRAMING, x + Q1 + Q2)
        arrows += [z, w]
        terms.append((Fraction(1), (w.id, z.id)))
    return FramedQuiver(("0", "1", FRAMING), FRAMING, arrows, [Relation(tuple(terms))])


def flag(n, w):
    """Chain 1 -> 2 -> ... -> n with w arrows 1 -> inf and no relations."""
    if n < 1 or w < 0:
        raise ValueError("flag quiver needs n >= 1 and w >= 0")
    verts = tuple(str(i) for i in range(1, n + 1))
    arrows = [Arrow(f"c{i}", str(i), str(i + 1)) for i in range(1, n)]
    arrows += [Arrow(f"f{l}", "1", FRAMING, WeightForm.of(f"x{l}")) for l in range(1, w + 1)]
    return FramedQuiver(verts + (FRAMING,), FRAMING, arrows, ())


def single_vertex(r):
    """One vertex 0 and r arrows inf -> 0 (Hom(C_{x_l}, V_0)), no relations."""
    if r < 0:
        raise ValueError("r must be non-negative")
    arrows = [Arrow(f"z{l}", FRAMING, "0", -WeightForm.of(f"x{l}")) for l in range(1, r + 1)]
    return FramedQuiver(("0", FRAMING), FRAMING, arrows, ())


def builtin(kind, *args):
    """Dispatch by name: nakajima, chainsaw, blowup, flag, single-vertex."""
    table = {"nakajima": nakajima, "chainsaw": chainsaw, "blowup": blowup,
             "flag": flag, "single-vertex": single_vertex, "single_vertex": single_vertex}
    if kind not in table:
        raise ValueError(f"unknown built-in quiver {kind!r}")
    return table[kind](*args)
