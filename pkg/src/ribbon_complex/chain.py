"""Rational chains of oriented ribbon graphs and the contraction differential."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Iterator, Mapping

from .graph import (
    CanonicalGraph,
    GraphError,
    Orientation,
    RibbonGraph,
    _canonical_data,
    canonicalize,
    genus_punctures,
    graph_from_json,
    permutation_parity,
)

Grade = tuple[int, int, int]


class GradeError(ValueError):
    pass


def grade_of(graph: RibbonGraph) -> Grade:
    g, m = genus_punctures(graph)
    return g, m, graph.num_vertices


class Chain:
    """Finite Q-linear combination of canonical graphs in a single grade.

    Zero classes never appear as keys; coefficients are nonzero Fractions.
    """

    __slots__ = ("grade", "_terms")

    def __init__(self, grade: Grade, terms: Mapping[CanonicalGraph, Fraction] | None = None):
        self.grade = tuple(grade)
        self._terms: dict[CanonicalGraph, Fraction] = {}
        if terms:
            for cg, c in terms.items():
                self._add(cg, Fraction(c))

    def _add(self, cg: CanonicalGraph, c: Fraction) -> None:
        if cg.is_zero or not c:
            return
        new = self._terms.get(cg, 0) + c
        if new:
            self._terms[cg] = new
        else:
            del self._terms[cg]

    @classmethod
    def from_graph(cls, graph: RibbonGraph, o: Orientation, coeff=1) -> "Chain":
        cg, sign = canonicalize(graph, o)
        ch = cls(grade_of(graph))
        ch._add(cg, Fraction(coeff) * sign)
        return ch

    @classmethod
    def from_terms(cls, grade: Grade, items: Iterable[tuple[CanonicalGraph, Fraction]]) -> "Chain":
        ch = cls(grade)
        for cg, c in items:
            ch._add(cg, Fraction(c))
        return ch

    def terms(self) -> dict[CanonicalGraph, Fraction]:
        return dict(self._terms)

    def items(self) -> list[tuple[CanonicalGraph, Fraction]]:
        return sorted(self._terms.items(), key=lambda kv: kv[0])

    def __getitem__(self, cg: CanonicalGraph) -> Fraction:
        return self._terms.get(cg, Fraction(0))

    def __contains__(self, cg) -> bool:
        return cg in self._terms

    def __iter__(self) -> Iterator[CanonicalGraph]:
        return iter(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def _check(self, other: "Chain") -> None:
        if self.grade != other.grade and self and other:
            raise GradeError(f"cannot combine grades {self.grade} and {other.grade}")

    def __add__(self, other: "Chain") -> "Chain":
        self._check(other)
        out = Chain(self.grade if self else other.grade, self._terms)
        for cg, c in other._terms.items():
            out._add(cg, c)
        return out

    def __neg__(self) -> "Chain":
        return Chain(self.grade, {cg: -c for cg, c in self._terms.items()})

    def __sub__(self, other: "Chain") -> "Chain":
        return self + (-other)

    def __mul__(self, scalar) -> "Chain":
        s = Fraction(scalar)
        return Chain(self.grade, {cg: c * s for cg, c in self._terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, Chain):
            return NotImplemented
        return self._terms == other._terms and (self.grade == other.grade or not self._terms)

    def __repr__(self) -> str:
        return f"Chain(grade={self.grade}, terms={len(self._terms)})"

    def to_json(self) -> dict:
        out = []
        for cg, c in self.items():
            out.append({"graph": cg.graph.to_json(cg.orientation), "coeff": f"{c.numerator}/{c.denominator}"})
        return {"grade": list(self.grade), "terms": out}

    @classmethod
    def from_json(cls, data: dict) -> "Chain":
        ch = cls(tuple(data["grade"]))
        for t in data["terms"]:
            g, o = graph_from_json(t["graph"])
            if grade_of(g) != ch.grade:
                raise GradeError(f"term of grade {grade_of(g)} in chain of grade {ch.grade}")
            cg, sign = canonicalize(g, o)
            ch._add(cg, Fraction(t["coeff"]) * sign)
        return ch


def contract_edge(graph: RibbonGraph, o: Orientation, e: int) -> tuple[RibbonGraph, Orientation, int]:
    """Contract the non-loop edge ``e``.

    Returns ``(graph', orientation', sign)``: the contracted oriented graph
    equals ``sign`` times the term contributed to the boundary.  The sign is
    that of moving the tail vertex of ``e`` to position 1 and its head to
    position 2; the merged vertex then comes first and the others keep their
    relative order.
    """
    if graph.is_loop(e):
        raise GraphError(f"edge {e} is a loop")
    x = o.tails[e]
    y = graph.pairing[x]
    u, w = graph.vertex_of[x], graph.vertex_of[y]

    # step 1: reorder so the edge runs from vertex 1 to vertex 2
    new_order = [u, w] + [v for v in o.vertex_order if v != u and v != w]
    pos = {v: i for i, v in enumerate(o.vertex_order)}
    sign = permutation_parity([pos[v] for v in new_order])

    # step 2: splice (x, u1..ur) and (y, w1..ws) into (u1..ur, w1..ws)
    n = graph.num_darts
    rot = list(graph.rotation)
    pre_x = _predecessor(graph, x)
    pre_y = _predecessor(graph, y)
    rot[pre_x] = graph.rotation[y]
    rot[pre_y] = graph.rotation[x]
    keep = [d for d in range(n) if d != x and d != y]
    new_id = {d: i for i, d in enumerate(keep)}
    rotation = tuple(new_id[rot[d]] for d in keep)
    pairing = tuple(new_id[graph.pairing[d]] for d in keep)
    new = RibbonGraph(rotation, pairing)

    merged = new.vertex_of[new_id[graph.rotation[x]]]
    vertex_order = [merged] + [new.vertex_of[new_id[graph.vertices[v][0]]] for v in new_order[2:]]
    tails = [0] * new.num_edges
    for f, t in enumerate(o.tails):
        if f != e:
            tails[new.edge_of[new_id[t]]] = new_id[t]
    return new, Orientation(tuple(vertex_order), tuple(tails)), sign


def _predecessor(graph: RibbonGraph, d: int) -> int:
    p = d
    while graph.rotation[p] != d:
        p = graph.rotation[p]
    return p


def boundary_of_graph(graph: RibbonGraph, o: Orientation) -> Chain:
    g, m, k = grade_of(graph)
    out = Chain((g, m, k - 1))
    for e in graph.non_loop_edges():
        h, oh, sign = contract_edge(graph, o, e)
        cg, s2 = canonicalize(h, oh)
        out._add(cg, Fraction(sign * s2))
    return out


def boundary(c: Chain) -> Chain:
    g, m, k = c.grade
    out = Chain((g, m, k - 1))
    for cg, coeff in c._terms.items():
        db = boundary_of_graph(cg.graph, cg.orientation)
        for h, x in db._terms.items():
            out._add(h, coeff * x)
    return out


def has_cut_vertex(graph: RibbonGraph) -> bool:
    """True if splitting some vertex into two contiguous arcs disconnects the graph."""
    base_vertex = graph.vertex_of
    for v, cyc in enumerate(graph.vertices):
        r = len(cyc)
        # every division into two arcs has exactly one arc avoiding cyc[0]
        for i in range(1, r):
            for j in range(i + 1, r + 1):
                arc = set(cyc[i:j])
                if _split_disconnects(graph, base_vertex, v, arc):
                    return True
    return False


def _split_disconnects(graph: RibbonGraph, vertex_of, v: int, arc: set[int]) -> bool:
    V = graph.num_vertices
    parent = list(range(V + 1))  # vertex V is the split-off copy of v

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def node(d):
        return V if d in arc else vertex_of[d]

    comps = V + 1
    for a, b in graph.edges:
        ra, rb = find(node(a)), find(node(b))
        if ra != rb:
            parent[ra] = rb
            comps -= 1
    return comps > 1


def quotient_project(c: Chain) -> Chain:
    """Drop every term whose graph has a cut vertex."""
    return Chain.from_terms(c.grade, ((cg, x) for cg, x in c._terms.items() if not _cut_cached(cg)))


_CUT_CACHE: dict[CanonicalGraph, bool] = {}


def _cut_cached(cg: CanonicalGraph) -> bool:
    hit = _CUT_CACHE.get(cg)
    if hit is None:
        hit = _CUT_CACHE[cg] = has_cut_vertex(cg.graph)
    return hit


def split_vertex(graph: RibbonGraph, v: int, start: int, length: int) -> tuple[RibbonGraph, int]:
    """Split vertex ``v``: darts ``cyc[start:start+length]`` (cyclically) move to
    a new vertex joined to the rest by a new edge.

    The new edge is returned as its pair of darts' edge index; contracting it
    restores ``graph``.
    """
    cyc = graph.vertices[v]
    r = len(cyc)
    arc_a = [cyc[(start + t) % r] for t in range(length)]
    arc_b = [cyc[(start + length + t) % r] for t in range(r - length)]
    n = graph.num_darts
    x, y = n, n + 1
    rot = list(graph.rotation) + [0, 0]
    pair = list(graph.pairing) + [y, x]
    # new vertices (x, arc_a...) and (y, arc_b...)
    for seq in ([x] + arc_a, [y] + arc_b):
        for i, d in enumerate(seq):
            rot[d] = seq[(i + 1) % len(seq)]
    new = RibbonGraph(tuple(rot), tuple(pair))
    return new, new.edge_of[x]


def expansions(graph: RibbonGraph) -> list[tuple[RibbonGraph, int]]:
    """All one-edge vertex splittings with both new vertices of valency >= 3,
    one representative per isomorphism class of (graph, new edge)."""
    seen = set()
    out = []
    for v, cyc in enumerate(graph.vertices):
        r = len(cyc)
        if r < 4:
            continue
        for start in range(r):
            for length in range(2, r - 1):
                y, e = split_vertex(graph, v, start, length)
                key = _edge_class_key(y, e)
                if key in seen:
                    continue
                seen.add(key)
                out.append((y, e))
    return out


def _edge_class_key(graph: RibbonGraph, e: int):
    """Isomorphism class of a graph with a marked unoriented edge."""
    cg, _ = canonicalize(graph)
    _, orders = _canonical_data(graph.rotation, graph.pairing)
    a, b = graph.edges[e]
    marks = []
    for order in orders:
        pos = {d: i for i, d in enumerate(order)}
        marks.append(tuple(sorted((pos[a], pos[b]))))
    return cg.code, min(marks)
