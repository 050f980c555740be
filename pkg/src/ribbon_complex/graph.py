"""Ribbon graphs as combinatorial maps.

A ribbon graph on darts ``0..N-1`` is a pair of permutations: ``rotation``
(whose cycles are the vertices, listed in their cyclic order) and ``pairing``
(a fixed-point-free involution whose cycles are the edges).  Faces are the
cycles of ``d -> rotation[pairing[d]]``.

Vertices are indexed by the order of their smallest dart, edges likewise.
An :class:`Orientation` is a vertex ordering together with a tail dart for
every edge; two orientations agree when the vertex permutation between them
has the same parity as the number of reversed edges.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence


class GraphError(ValueError):
    """Invalid ribbon graph data."""


def _perm_cycles(perm: Sequence[int]) -> list[tuple[int, ...]]:
    seen = [False] * len(perm)
    cycles = []
    for start in range(len(perm)):
        if seen[start]:
            continue
        cyc = []
        d = start
        while not seen[d]:
            seen[d] = True
            cyc.append(d)
            d = perm[d]
        cycles.append(tuple(cyc))
    return cycles


def permutation_parity(perm: Sequence[int]) -> int:
    """Return +1 for an even permutation of ``range(len(perm))``, -1 for odd."""
    sign = 1
    for cyc in _perm_cycles(perm):
        if len(cyc) % 2 == 0:
            sign = -sign
    return sign


@dataclass(frozen=True)
class RibbonGraph:
    rotation: tuple[int, ...]
    pairing: tuple[int, ...]
    vertices: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False)
    vertex_of: tuple[int, ...] = field(init=False, repr=False, compare=False)
    edges: tuple[tuple[int, int], ...] = field(init=False, repr=False, compare=False)
    edge_of: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        # cycles come out ordered by their smallest dart, each starting there
        verts = tuple(_perm_cycles(self.rotation))
        vertex_of = [0] * len(self.rotation)
        for i, cyc in enumerate(verts):
            for d in cyc:
                vertex_of[d] = i
        edges = tuple((d, self.pairing[d]) for d in range(len(self.pairing)) if d < self.pairing[d])
        edge_of = [0] * len(self.pairing)
        for i, (a, b) in enumerate(edges):
            edge_of[a] = edge_of[b] = i
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "vertex_of", tuple(vertex_of))
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "edge_of", tuple(edge_of))

    @property
    def num_darts(self) -> int:
        return len(self.rotation)

    @property
    def num_vertices(self) -> int:
        return len(self.vertices)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def valency(self, v: int) -> int:
        return len(self.vertices[v])

    def is_loop(self, e: int) -> bool:
        a, b = self.edges[e]
        return self.vertex_of[a] == self.vertex_of[b]

    def non_loop_edges(self) -> list[int]:
        return [e for e in range(self.num_edges) if not self.is_loop(e)]

    def default_orientation(self) -> "Orientation":
        return Orientation(tuple(range(self.num_vertices)), tuple(a for a, _ in self.edges))

    def to_json(self, orientation: "Orientation | None" = None) -> dict:
        data = {
            "rotation": [list(c) for c in self.vertices],
            "pairing": [list(e) for e in self.edges],
        }
        if orientation is not None:
            data["vertex_order"] = list(orientation.vertex_order)
            data["tails"] = list(orientation.tails)
        return data


@dataclass(frozen=True)
class Orientation:
    """``vertex_order[i]`` is the vertex placed at position ``i``;
    ``tails[e]`` is the dart of edge ``e`` the edge points away from."""

    vertex_order: tuple[int, ...]
    tails: tuple[int, ...]

    def reversed(self) -> "Orientation":
        """The opposite orientation (first two vertices swapped, or one edge flipped)."""
        vo = list(self.vertex_order)
        if len(vo) >= 2:
            vo[0], vo[1] = vo[1], vo[0]
            return Orientation(tuple(vo), self.tails)
        raise GraphError("use reverse_edge on single-vertex graphs")

    def reverse_edge(self, graph: RibbonGraph, e: int) -> "Orientation":
        tails = list(self.tails)
        tails[e] = graph.pairing[tails[e]]
        return Orientation(self.vertex_order, tuple(tails))


def build_graph(rotation: Sequence[int], pairing: Sequence[int]) -> RibbonGraph:
    """Validate permutation data and return a :class:`RibbonGraph`."""
    n = len(rotation)
    if len(pairing) != n:
        raise GraphError("rotation and pairing act on different dart sets")
    if n == 0 or n % 2:
        raise GraphError(f"dart count must be positive and even, got {n}")
    for name, perm in (("rotation", rotation), ("pairing", pairing)):
        if sorted(perm) != list(range(n)):
            raise GraphError(f"{name} is not a permutation of 0..{n - 1}")
    for d in range(n):
        if pairing[d] == d:
            raise GraphError(f"pairing fixes dart {d}")
        if pairing[pairing[d]] != d:
            raise GraphError("pairing is not an involution")
    graph = RibbonGraph(tuple(rotation), tuple(pairing))
    for cyc in graph.vertices:
        if len(cyc) < 3:
            raise GraphError(f"vertex {cyc} has valency {len(cyc)} < 3")
    if not _connected(graph.rotation, graph.pairing):
        raise GraphError("graph is disconnected")
    return graph


def graph_from_cycles(cycles: Iterable[Sequence[int]], pairs: Iterable[Sequence[int]]) -> RibbonGraph:
    """Build from vertex cycles and edge pairs (the JSON layout)."""
    cycles = [list(c) for c in cycles]
    pairs = [list(p) for p in pairs]
    n = sum(len(c) for c in cycles)
    rotation = [-1] * n
    pairing = [-1] * n
    try:
        for cyc in cycles:
            for i, d in enumerate(cyc):
                if rotation[d] != -1:
                    raise GraphError(f"dart {d} listed twice in rotation")
                rotation[d] = cyc[(i + 1) % len(cyc)]
        for p in pairs:
            if len(p) != 2:
                raise GraphError(f"edge {p} does not have two darts")
            a, b = p
            if pairing[a] != -1 or pairing[b] != -1:
                raise GraphError(f"dart listed twice in pairing: {p}")
            pairing[a], pairing[b] = b, a
    except IndexError:
        raise GraphError("dart index out of range") from None
    return build_graph(rotation, pairing)


def _connected(rotation: Sequence[int], pairing: Sequence[int]) -> bool:
    n = len(rotation)
    seen = [False] * n
    stack = [0]
    seen[0] = True
    count = 1
    while stack:
        d = stack.pop()
        for nb in (rotation[d], pairing[d]):
            if not seen[nb]:
                seen[nb] = True
                count += 1
                stack.append(nb)
    return count == n


def faces(graph: RibbonGraph) -> list[tuple[int, ...]]:
    """Boundary cycles: orbits of ``d -> rotation[pairing[d]]``."""
    rot, pair = graph.rotation, graph.pairing
    return _perm_cycles([rot[pair[d]] for d in range(graph.num_darts)])


def genus_punctures(graph: RibbonGraph) -> tuple[int, int]:
    m = len(faces(graph))
    chi = graph.num_vertices - graph.num_edges + m
    if chi % 2 or chi > 2:
        raise RuntimeError(f"Euler relation gives non-integral genus (chi={chi})")
    return (2 - chi) // 2, m


def orientation_sign(graph: RibbonGraph, o1: Orientation, o2: Orientation) -> int:
    """+1 if ``o1`` and ``o2`` are the same orientation of ``graph``, else -1."""
    V, E = graph.num_vertices, graph.num_edges
    if len(o1.vertex_order) != V or len(o2.vertex_order) != V or len(o1.tails) != E or len(o2.tails) != E:
        raise GraphError("orientation does not match graph")
    pos1 = [0] * V
    for i, v in enumerate(o1.vertex_order):
        pos1[v] = i
    # position in o1 -> position in o2
    perm = [0] * V
    for j, v in enumerate(o2.vertex_order):
        perm[pos1[v]] = j
    sign = permutation_parity(perm)
    for t1, t2 in zip(o1.tails, o2.tails):
        if t1 != t2:
            sign = -sign
    return sign


def push_orientation(src: RibbonGraph, dst: RibbonGraph, dart_map: Sequence[int], o: Orientation) -> Orientation:
    """Transport ``o`` along an isomorphism ``src -> dst`` given on darts."""
    vertex_order = tuple(dst.vertex_of[dart_map[src.vertices[v][0]]] for v in o.vertex_order)
    tails = [0] * dst.num_edges
    for t in o.tails:
        u = dart_map[t]
        tails[dst.edge_of[u]] = u
    return Orientation(vertex_order, tuple(tails))


# ---------------------------------------------------------------------------
# canonical labelling


def _start_darts(rotation: Sequence[int], pairing: Sequence[int]) -> list[int]:
    """Darts minimising an isomorphism-invariant key; canonical search starts only there."""
    n = len(rotation)
    val = [0] * n
    for cyc in _perm_cycles(rotation):
        for d in cyc:
            val[d] = len(cyc)
    flen = [0] * n
    for cyc in _perm_cycles([rotation[pairing[d]] for d in range(n)]):
        for d in cyc:
            flen[d] = len(cyc)
    keys = [(val[d], flen[d], val[pairing[d]]) for d in range(n)]
    best = min(keys)
    return [d for d in range(n) if keys[d] == best]


def _labelling(rotation, pairing, start, best):
    """BFS-label darts from ``start``.

    Returns ``(code, order)`` or ``None`` as soon as the code exceeds ``best``.
    ``code`` interleaves the relabelled rotation and pairing images.
    """
    n = len(rotation)
    lab = [-1] * n
    lab[start] = 0
    order = [start]
    code = []
    less = best is None
    for i in range(n):
        d = order[i]
        for nb in (rotation[d], pairing[d]):
            if lab[nb] < 0:
                lab[nb] = len(order)
                order.append(nb)
            x = lab[nb]
            if not less:
                b = best[len(code)]
                if x > b:
                    return None
                if x < b:
                    less = True
            code.append(x)
    return tuple(code), order


@lru_cache(maxsize=200_000)
def _canonical_data(rotation: tuple[int, ...], pairing: tuple[int, ...]):
    """Minimal code plus every dart ordering realising it.

    ``order[i]`` is the original dart receiving canonical label ``i``.
    """
    best = None
    orders = []
    for s in _start_darts(rotation, pairing):
        res = _labelling(rotation, pairing, s, best)
        if res is None:
            continue
        code, order = res
        if best is None or code < best:
            best = code
            orders = [order]
        else:
            orders.append(order)
    return best, tuple(tuple(o) for o in orders)


@dataclass(frozen=True)
class CanonicalGraph:
    """Isomorphism-class representative; compares and hashes by ``code``."""

    code: tuple[int, ...]
    is_zero: bool = field(compare=False)

    @property
    def graph(self) -> RibbonGraph:
        return _graph_from_code(self.code)

    @property
    def orientation(self) -> Orientation:
        g = self.graph
        return Orientation(tuple(range(g.num_vertices)), tuple(a for a, _ in g.edges))

    @property
    def num_darts(self) -> int:
        return len(self.code) // 2

    def __lt__(self, other: "CanonicalGraph") -> bool:
        return (len(self.code), self.code) < (len(other.code), other.code)


@lru_cache(maxsize=200_000)
def _graph_from_code(code: tuple[int, ...]) -> RibbonGraph:
    return RibbonGraph(tuple(code[0::2]), tuple(code[1::2]))


@dataclass(frozen=True)
class SignedAutomorphism:
    dart_map: tuple[int, ...]
    sign: int


@lru_cache(maxsize=200_000)
def _class_info(rotation: tuple[int, ...], pairing: tuple[int, ...]):
    code, orders = _canonical_data(rotation, pairing)
    canon = _graph_from_code(code)
    co = Orientation(tuple(range(canon.num_vertices)), tuple(a for a, _ in canon.edges))
    # automorphisms of the canonical graph: label i -> position of orders[0][i] in orders[j]
    inv0 = {d: i for i, d in enumerate(orders[0])}
    zero = False
    for order in orders[1:]:
        aut = [0] * len(order)
        for i, d in enumerate(order):
            aut[inv0[d]] = i
        if orientation_sign(canon, push_orientation(canon, canon, aut, co), co) < 0:
            zero = True
            break
    return CanonicalGraph(code, zero), orders[0]


def canonicalize(graph: RibbonGraph, o: Orientation | None = None) -> tuple[CanonicalGraph, int]:
    """Canonical form of ``(graph, o)`` and the sign relating ``o`` to the
    canonical orientation.  When the class is zero the sign is meaningless."""
    cg, order = _class_info(graph.rotation, graph.pairing)
    if o is None:
        return cg, 1
    lab = [0] * graph.num_darts
    for i, d in enumerate(order):
        lab[d] = i
    canon = cg.graph
    return cg, orientation_sign(canon, push_orientation(graph, canon, lab, o), cg.orientation)


def automorphisms(graph: RibbonGraph, o: Orientation | None = None) -> list[SignedAutomorphism]:
    """All automorphisms of the map, each with its effect on ``o``."""
    if o is None:
        o = graph.default_orientation()
    _, orders = _canonical_data(graph.rotation, graph.pairing)
    base = orders[0]
    out = []
    for order in orders:
        # base[i] -> order[i]
        aut = [0] * graph.num_darts
        for a, b in zip(base, order):
            aut[a] = b
        sign = orientation_sign(graph, push_orientation(graph, graph, aut, o), o)
        out.append(SignedAutomorphism(tuple(aut), sign))
    out.sort(key=lambda a: a.dart_map)
    return out


def are_isomorphic(g1: RibbonGraph, g2: RibbonGraph) -> bool:
    return canonicalize(g1)[0] == canonicalize(g2)[0]


def relabel(graph: RibbonGraph, o: Orientation, perm: Sequence[int]) -> tuple[RibbonGraph, Orientation]:
    """Rename dart ``d`` to ``perm[d]``."""
    n = graph.num_darts
    rot = [0] * n
    pair = [0] * n
    for d in range(n):
        rot[perm[d]] = perm[graph.rotation[d]]
        pair[perm[d]] = perm[graph.pairing[d]]
    new = RibbonGraph(tuple(rot), tuple(pair))
    return new, push_orientation(graph, new, perm, o)


# ---------------------------------------------------------------------------
# X_k


def build_Xk(k: int) -> tuple[RibbonGraph, Orientation]:
    """The big-loop graph with one interleaved small loop per vertex.

    Vertex ``j`` carries darts ``4j..4j+3`` in cyclic order
    (in, small-out, out, small-in); big-loop edges run out_j -> in_{j+1},
    small loops run small-out -> small-in.
    """
    if k < 1:
        raise GraphError("k must be positive")
    rot = [0] * (4 * k)
    pair = [0] * (4 * k)
    tails = []
    for j in range(k):
        d = 4 * j
        rot[d], rot[d + 1], rot[d + 2], rot[d + 3] = d + 1, d + 2, d + 3, d
        nxt = 4 * ((j + 1) % k)
        pair[d + 2], pair[nxt] = nxt, d + 2
        pair[d + 1], pair[d + 3] = d + 3, d + 1
    g = build_graph(rot, pair)
    tails = [0] * g.num_edges
    for j in range(k):
        tails[g.edge_of[4 * j + 2]] = 4 * j + 2
        tails[g.edge_of[4 * j + 1]] = 4 * j + 1
    return g, Orientation(tuple(range(k)), tuple(tails))


# ---------------------------------------------------------------------------
# JSON


def graph_from_json(data: dict | str) -> tuple[RibbonGraph, Orientation]:
    """Parse the interchange format; ``vertex_order`` indexes the listed cycles."""
    if isinstance(data, str):
        data = json.loads(data)
    try:
        cycles = data["rotation"]
        pairs = data["pairing"]
    except (KeyError, TypeError):
        raise GraphError("graph JSON needs 'rotation' and 'pairing'") from None
    graph = graph_from_cycles(cycles, pairs)
    if "vertex_order" not in data and "tails" not in data:
        return graph, graph.default_orientation()
    # user cycle index -> internal vertex index
    user_to_internal = [graph.vertex_of[c[0]] for c in cycles]
    vo = data.get("vertex_order", list(range(len(cycles))))
    if sorted(vo) != list(range(len(cycles))):
        raise GraphError("vertex_order is not a permutation of the rotation cycles")
    tails = [a for a, _ in graph.edges]
    given = data.get("tails")
    if given is not None:
        if len(given) != graph.num_edges:
            raise GraphError("tails must name one dart per edge")
        seen = set()
        for t in given:
            if not 0 <= t < graph.num_darts:
                raise GraphError(f"tail dart {t} out of range")
            e = graph.edge_of[t]
            if e in seen:
                raise GraphError(f"edge {graph.edges[e]} has two tails")
            seen.add(e)
            tails[e] = t
    return graph, Orientation(tuple(user_to_internal[v] for v in vo), tuple(tails))
