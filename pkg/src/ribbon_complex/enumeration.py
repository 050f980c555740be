"""Exhaustive ribbon graph generation, boundary matrices and homology ranks.

Every connected ribbon graph with ``k >= 2`` vertices contracts along some
non-loop edge to one with ``k - 1`` vertices and the same genus and puncture
count, so the classes of grade ``(g, m, k)`` are exactly the vertex
splittings of the classes of grade ``(g, m, k - 1)``.  Generation starts from
the one-vertex maps and splits layer by layer.  Zero classes are kept while
generating (a nonzero graph may only split off a zero one) and dropped from
the bases.

Since the degree shift ``4g + 2m - 4`` is even, the alternating sum of basis
sizes equals the Euler characteristic of the mapping class group's
coinvariant cohomology.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Iterator

from .chain import boundary_of_graph, has_cut_vertex, split_vertex
from .graph import CanonicalGraph, RibbonGraph, canonicalize, faces
from .graph import _connected as _map_connected
from .linalg import SparseMatrixQ, rank_over_Q

DEFAULT_DART_CAP = 30
FORMAT_VERSION = 1


class ResourceLimitError(RuntimeError):
    """Requested grade exceeds the dart-count cap."""


@dataclass(frozen=True)
class GradedBasis:
    grade: tuple[int, int, int]
    graphs: tuple[CanonicalGraph, ...]

    def __len__(self) -> int:
        return len(self.graphs)

    def __iter__(self):
        return iter(self.graphs)

    def index(self) -> dict[CanonicalGraph, int]:
        return {cg: i for i, cg in enumerate(self.graphs)}

    def to_json(self) -> dict:
        return {
            "format_version": FORMAT_VERSION,
            "grade": list(self.grade),
            "codes": [list(cg.code) for cg in self.graphs],
        }

    @classmethod
    def from_json(cls, data: dict) -> "GradedBasis":
        if data.get("format_version") != FORMAT_VERSION:
            raise ValueError("stale basis cache format")
        graphs = []
        for code in data["codes"]:
            code = tuple(code)
            cg, _ = canonicalize(RibbonGraph(code[0::2], code[1::2]))
            if cg.code != code:
                raise ValueError("cached code is not canonical")
            graphs.append(cg)
        return cls(tuple(data["grade"]), tuple(graphs))


def num_edges(g: int, m: int, k: int) -> int:
    return k + 2 * g - 2 + m


def max_vertices(g: int, m: int) -> int:
    """Largest vertex count allowed by valency >= 3 (all vertices trivalent)."""
    return 4 * g - 4 + 2 * m


def _check_cap(g: int, m: int, k: int, cap: int) -> None:
    darts = 2 * num_edges(g, m, k)
    if darts > cap:
        raise ResourceLimitError(f"grade ({g}, {m}, {k}) needs {darts} darts, cap is {cap}")


def perfect_matchings(items: list[int]) -> Iterator[list[tuple[int, int]]]:
    if not items:
        yield []
        return
    first = items[0]
    for i in range(1, len(items)):
        rest = items[1:i] + items[i + 1 :]
        for m in perfect_matchings(rest):
            yield [(first, items[i])] + m


def _with_faces(rotation, pairs, m) -> RibbonGraph | None:
    n = len(rotation)
    pairing = [0] * n
    for a, b in pairs:
        pairing[a], pairing[b] = b, a
    graph = RibbonGraph(tuple(rotation), tuple(pairing))
    if len(faces(graph)) != m:
        return None
    return graph


_LAYERS: dict[tuple[int, int], list[set[tuple[int, ...]]]] = {}


def _layer(g: int, m: int, k: int) -> set[tuple[int, ...]]:
    """Canonical codes of all classes (zero ones included) of grade (g, m, k)."""
    layers = _LAYERS.setdefault((g, m), [set()])
    while len(layers) <= k:
        j = len(layers)
        if j == 1:
            layers.append(_one_vertex_classes(g, m))
            continue
        out: set[tuple[int, ...]] = set()
        for code in layers[j - 1]:
            graph = RibbonGraph(code[0::2], code[1::2])
            for v, cyc in enumerate(graph.vertices):
                r = len(cyc)
                for start in range(r):
                    for length in range(2, r - 1):
                        y, _ = split_vertex(graph, v, start, length)
                        out.add(canonicalize(y)[0].code)
        layers.append(out)
    return layers[k]


def _one_vertex_classes(g: int, m: int) -> set[tuple[int, ...]]:
    E = num_edges(g, m, 1)
    n = 2 * E
    if E < 2:
        return set()
    rotation = [(d + 1) % n for d in range(n)]
    out = set()
    for pairs in perfect_matchings(list(range(n))):
        graph = _with_faces(rotation, pairs, m)
        if graph is not None:
            out.add(canonicalize(graph)[0].code)
    return out


def enumerate_all_classes(g: int, m: int, k: int, cap: int = DEFAULT_DART_CAP) -> list[CanonicalGraph]:
    """Every isomorphism class of the grade, zero classes included."""
    if k < 1 or k > max_vertices(g, m) or m < 1 or g < 0:
        return []
    _check_cap(g, m, k, cap)
    codes = _layer(g, m, k)
    return sorted(canonicalize(RibbonGraph(c[0::2], c[1::2]))[0] for c in codes)


def _cache_path(cache_dir, g, m, k) -> Path:
    return Path(cache_dir) / f"basis_g{g}_m{m}_k{k}_v{FORMAT_VERSION}.json"


def enumerate_graphs(g: int, m: int, k: int, cap: int = DEFAULT_DART_CAP, cache_dir=None) -> GradedBasis:
    """Nonzero isomorphism classes of grade ``(g, m, k)``, sorted by code."""
    if cache_dir is None:
        cache_dir = os.environ.get("RIBBON_CACHE_DIR")
    if cache_dir:
        path = _cache_path(cache_dir, g, m, k)
        if path.exists():
            return GradedBasis.from_json(json.loads(path.read_text()))
    basis = GradedBasis((g, m, k), tuple(cg for cg in enumerate_all_classes(g, m, k, cap) if not cg.is_zero))
    if cache_dir:
        path = _cache_path(cache_dir, g, m, k)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(json.dumps(basis.to_json()))
    return basis


def partitions_min3(total: int, parts: int, smallest: int = 3) -> Iterator[tuple[int, ...]]:
    """Non-decreasing tuples of ``parts`` integers >= ``smallest`` summing to ``total``."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(smallest, total // parts + 1):
        for rest in partitions_min3(total - first, parts - 1, first):
            yield (first,) + rest


def enumerate_by_degree_sequence(g: int, m: int, k: int) -> list[CanonicalGraph]:
    """Independent generator: fix a rotation per degree sequence, try every pairing.

    Exponential in the dart count; used to cross-check :func:`enumerate_all_classes`.
    """
    E = num_edges(g, m, k)
    n = 2 * E
    if k < 1 or E < 1:
        return []
    found: set[tuple[int, ...]] = set()
    for degs in partitions_min3(n, k):
        rotation = []
        base = 0
        for d in degs:
            rotation.extend(base + (i + 1) % d for i in range(d))
            base += d
        for pairs in perfect_matchings(list(range(n))):
            graph = _with_faces(rotation, pairs, m)
            if graph is None:
                continue
            if graph.num_vertices - graph.num_edges + m != 2 - 2 * g:
                continue
            if not _connected(graph):
                continue
            found.add(canonicalize(graph)[0].code)
    return sorted(canonicalize(RibbonGraph(c[0::2], c[1::2]))[0] for c in found)


def _connected(graph: RibbonGraph) -> bool:
    return _map_connected(graph.rotation, graph.pairing)


def boundary_matrix(g: int, m: int, k: int, cap: int = DEFAULT_DART_CAP, quotient: bool = False) -> SparseMatrixQ:
    """Matrix of ``d: C_k -> C_{k-1}`` in the canonical bases.

    With ``quotient=True`` both bases are restricted to graphs without cut
    vertices (the matrix of the quotient complex).
    """
    src = _basis(g, m, k, cap, quotient)
    dst = _basis(g, m, k - 1, cap, quotient) if k > 1 else ()
    row_of = {cg: i for i, cg in enumerate(dst)}
    entries: dict[tuple[int, int], Fraction] = {}
    for j, cg in enumerate(src):
        for h, x in boundary_of_graph(cg.graph, cg.orientation).items():
            if h not in row_of:
                if quotient and has_cut_vertex(h.graph):
                    continue
                raise RuntimeError(f"boundary term outside the basis of grade {(g, m, k - 1)}")
            entries[(row_of[h], j)] = x
    return SparseMatrixQ(len(dst), len(src), entries)


def _basis(g, m, k, cap, quotient) -> tuple[CanonicalGraph, ...]:
    graphs = enumerate_graphs(g, m, k, cap).graphs
    if quotient:
        graphs = tuple(cg for cg in graphs if not has_cut_vertex(cg.graph))
    return graphs


@dataclass(frozen=True)
class BettiRow:
    k: int
    dim: int
    rank_d: int  # rank of d: C_k -> C_{k-1}
    betti: int
    mcg_degree: int  # cohomological degree 4g + 2m - 4 - k of the mapping class group


def betti_numbers(g: int, m: int, cap: int = DEFAULT_DART_CAP, quotient: bool = False) -> list[BettiRow]:
    """Homology of the ribbon graph complex of genus ``g`` with ``m`` punctures, grades 0..kmax."""
    kmax = max_vertices(g, m)
    for k in range(1, kmax + 1):
        _check_cap(g, m, k, cap)
    dims = [0] + [len(_basis(g, m, k, cap, quotient)) for k in range(1, kmax + 1)]
    ranks = [0, 0] + [rank_over_Q(boundary_matrix(g, m, k, cap, quotient)) for k in range(2, kmax + 1)] + [0]
    shift = 4 * g + 2 * m - 4
    return [BettiRow(k, dims[k], ranks[k], dims[k] - ranks[k] - ranks[k + 1], shift - k) for k in range(kmax + 1)]


def euler_characteristic(g: int, m: int, cap: int = DEFAULT_DART_CAP) -> int:
    kmax = max_vertices(g, m)
    for k in range(1, kmax + 1):
        _check_cap(g, m, k, cap)
    return sum((-1) ** k * len(enumerate_graphs(g, m, k, cap)) for k in range(1, kmax + 1))


def basis_sizes(g: int, m: int, cap: int = DEFAULT_DART_CAP) -> list[int]:
    for k in range(1, max_vertices(g, m) + 1):
        _check_cap(g, m, k, cap)
    return [len(enumerate_graphs(g, m, k, cap)) for k in range(1, max_vertices(g, m) + 1)]
