from __future__ import annotations

import os

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from ribbon_complex.enumeration import enumerate_all_classes, max_vertices
from ribbon_complex.graph import Orientation, RibbonGraph, graph_from_cycles

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("ci", deadline=None, max_examples=200, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

SMALL_GRADES = [(0, 3), (0, 4), (1, 1), (1, 2)]


def small_classes():
    out = []
    for g, m in SMALL_GRADES:
        for k in range(1, max_vertices(g, m) + 1):
            out.extend(enumerate_all_classes(g, m, k))
    return out


_POOL = None


def graph_pool():
    global _POOL
    if _POOL is None:
        _POOL = [cg.graph for cg in small_classes()]
    return _POOL


@st.composite
def oriented_graphs(draw, pool=None):
    """A small ribbon graph under a random dart relabelling with a random orientation."""
    from ribbon_complex.graph import relabel

    graphs = pool if pool is not None else graph_pool()
    base = draw(st.sampled_from(graphs))
    perm = draw(st.permutations(range(base.num_darts)))
    graph, _ = relabel(base, base.default_orientation(), perm)
    order = draw(st.permutations(range(graph.num_vertices)))
    flips = draw(st.lists(st.booleans(), min_size=graph.num_edges, max_size=graph.num_edges))
    tails = tuple(b if f else a for (a, b), f in zip(graph.edges, flips))
    return graph, Orientation(tuple(order), tails)


@pytest.fixture
def theta_graph() -> RibbonGraph:
    # planar: two trivalent vertices, three parallel edges
    return graph_from_cycles([[0, 1, 2], [3, 4, 5]], [[0, 3], [1, 5], [2, 4]])


@pytest.fixture
def interleaved_loops() -> RibbonGraph:
    # (a, b, a', b'): one vertex, two interleaved loops, genus 1
    return graph_from_cycles([[0, 1, 2, 3]], [[0, 2], [1, 3]])


@pytest.fixture
def nested_loops() -> RibbonGraph:
    # (a, a', b, b'): planar, three faces
    return graph_from_cycles([[0, 1, 2, 3]], [[0, 1], [2, 3]])


@pytest.fixture
def dumbbell() -> RibbonGraph:
    # two vertices, each with a loop on adjacent darts, joined by a bridge
    return graph_from_cycles([[0, 1, 2], [3, 4, 5]], [[0, 1], [2, 3], [4, 5]])
