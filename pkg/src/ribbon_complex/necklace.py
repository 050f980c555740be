"""Planar binary trees, ornate necklaces, the cycles Z_k and cocycles Theta_k.

Dart layout of a necklace ``[i_1, ..., i_n]``.  Position ``j`` has a root
vertex on the big loop with cyclic order::

    (in_j, R_j, out_j, leaf_last, ..., leaf_first)

where ``R_j`` is the root-edge dart of the tree ``T_{i_j}`` and the leaf
darts receive the leaf edges of that tree in reverse left-to-right order.
An internal tree vertex has cyclic order ``(parent, left, right)``.  For
``i_j = 1`` the tree is a single edge from ``R_j`` back to the root, which
gives the small loops of ``X_k``.

Orientation: big-loop edges run ``out_j -> in_{j+1}``, tree edges point away
from the root (leaf edges run from the tree into the root vertex); vertices
are numbered position by position, root first, then internal vertices in
left-to-right (in-order) order.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterator

from .chain import Chain, boundary, boundary_of_graph, contract_edge, expansions, quotient_project
from .graph import Orientation, RibbonGraph, build_Xk, build_graph, canonicalize

# ---------------------------------------------------------------------------
# planar binary trees


@dataclass(frozen=True)
class PlanarBinaryTree:
    """``None`` children are leaves; a tree with no children pair is ``LEAF``."""

    left: "PlanarBinaryTree | None" = None
    right: "PlanarBinaryTree | None" = None

    @property
    def is_leaf(self) -> bool:
        return self.left is None

    @property
    def leaves(self) -> int:
        return 1 if self.is_leaf else self.left.leaves + self.right.leaves

    @property
    def internal_nodes(self) -> int:
        return 0 if self.is_leaf else 1 + self.left.internal_nodes + self.right.internal_nodes

    def __str__(self) -> str:
        return "*" if self.is_leaf else f"({self.left}{self.right})"


LEAF = PlanarBinaryTree()


@lru_cache(maxsize=None)
def binary_trees(i: int) -> tuple[PlanarBinaryTree, ...]:
    """All planar binary rooted trees with ``i`` leaves."""
    if i < 1:
        raise ValueError("a tree needs at least one leaf")
    if i == 1:
        return (LEAF,)
    return tuple(
        PlanarBinaryTree(left, right)
        for a in range(1, i)
        for left in binary_trees(a)
        for right in binary_trees(i - a)
    )


# ---------------------------------------------------------------------------
# compositions up to rotation


@dataclass(frozen=True)
class NecklaceSpec:
    composition: tuple[int, ...]

    def __post_init__(self):
        if not self.composition or any(p < 1 for p in self.composition):
            raise ValueError(f"bad composition {self.composition}")

    @property
    def k(self) -> int:
        return sum(self.composition)

    @property
    def n(self) -> int:
        return len(self.composition)

    def __str__(self) -> str:
        return "[" + ",".join(map(str, self.composition)) + "]"


def cyclic_symmetry_count(spec: NecklaceSpec | tuple[int, ...]) -> int:
    c = spec.composition if isinstance(spec, NecklaceSpec) else tuple(spec)
    return sum(1 for r in range(len(c)) if c[r:] + c[:r] == c)


def _compositions(k: int) -> Iterator[tuple[int, ...]]:
    if k == 0:
        yield ()
        return
    for first in range(1, k + 1):
        for rest in _compositions(k - first):
            yield (first,) + rest


def min_rotation(c: tuple[int, ...]) -> tuple[int, ...]:
    return min(c[r:] + c[:r] for r in range(len(c)))


def compositions_up_to_cycle(k: int) -> list[NecklaceSpec]:
    """Lexicographically minimal rotation of each cyclic class of compositions of ``k``."""
    reps = {min_rotation(c) for c in _compositions(k)}
    return [NecklaceSpec(c) for c in sorted(reps, key=lambda c: (-len(c), c))]


# ---------------------------------------------------------------------------
# necklace assembly

EDGE_CLASSES = ("big_loop", "root", "interior", "top", "small_loop")


@dataclass(frozen=True)
class NecklaceTerm:
    trees: tuple[PlanarBinaryTree, ...]
    graph: RibbonGraph
    orientation: Orientation
    edge_class: tuple[str, ...] = field(repr=False)


class _Builder:
    def __init__(self):
        self.rot: dict[int, int] = {}
        self.pair: dict[int, int] = {}
        self.tails: list[int] = []
        self.vertex_darts: list[int] = []  # one dart per vertex, in orientation order
        self.classes: dict[int, str] = {}  # tail dart -> edge class
        self.next = 0

    def darts(self, count: int) -> list[int]:
        out = list(range(self.next, self.next + count))
        self.next += count
        return out

    def cycle(self, ds: list[int]) -> None:
        for a, b in zip(ds, ds[1:] + ds[:1]):
            self.rot[a] = b
        self.vertex_darts.append(ds[0])

    def edge(self, tail: int, head: int, cls: str) -> None:
        self.pair[tail], self.pair[head] = head, tail
        self.tails.append(tail)
        self.classes[tail] = cls


def _grow(b: _Builder, tree: PlanarBinaryTree, parent_dart: int, leaf_darts: list[int], cls: str) -> None:
    """Attach ``tree`` below ``parent_dart``; leaves are routed to ``leaf_darts`` (left to right)."""
    if tree.is_leaf:
        b.edge(parent_dart, leaf_darts.pop(0), "top" if cls != "small_loop" else cls)
        return
    p, l, r = b.darts(3)
    b.edge(parent_dart, p, cls)
    # in-order numbering: left subtree, this vertex, right subtree
    _grow(b, tree.left, l, leaf_darts, "interior")
    b.cycle([p, l, r])
    _grow(b, tree.right, r, leaf_darts, "interior")


def assemble_necklace(trees: tuple[PlanarBinaryTree, ...]) -> NecklaceTerm:
    """Build one oriented ribbon graph of a necklace from a tree per position."""
    b = _Builder()
    n = len(trees)
    ports = []  # (in, out) per position
    for tree in trees:
        i = tree.leaves
        d_in, d_root, d_out = b.darts(3)
        leaves = b.darts(i)
        b.cycle([d_in, d_root, d_out] + leaves[::-1])
        ports.append((d_in, d_out))
        _grow(b, tree, d_root, list(leaves), "root" if i > 1 else "small_loop")
    for j in range(n):
        b.edge(ports[j][1], ports[(j + 1) % n][0], "big_loop")
    N = b.next
    graph = build_graph([b.rot[d] for d in range(N)], [b.pair[d] for d in range(N)])
    tails = [0] * graph.num_edges
    classes = [""] * graph.num_edges
    for t in b.tails:
        e = graph.edge_of[t]
        tails[e] = t
        classes[e] = b.classes[t]
    # vertices were appended root-first then in-order, position by position
    order = tuple(graph.vertex_of[d] for d in b.vertex_darts)
    return NecklaceTerm(trees, graph, Orientation(order, tuple(tails)), tuple(classes))


def necklace_terms(spec: NecklaceSpec | tuple[int, ...]) -> list[NecklaceTerm]:
    comp = spec.composition if isinstance(spec, NecklaceSpec) else tuple(spec)
    choices: list[tuple[PlanarBinaryTree, ...]] = [()]
    for i in comp:
        choices = [c + (t,) for c in choices for t in binary_trees(i)]
    return [assemble_necklace(c) for c in choices]


def ornate_necklace(spec: NecklaceSpec | tuple[int, ...]) -> Chain:
    comp = spec.composition if isinstance(spec, NecklaceSpec) else tuple(spec)
    k = sum(comp)
    out = Chain((1, k, k))
    for term in necklace_terms(comp):
        out = out + Chain.from_graph(term.graph, term.orientation)
    return out


# ---------------------------------------------------------------------------
# Z_k and Theta_k


def Z_coefficients(k: int) -> list[tuple[NecklaceSpec, Fraction]]:
    """``(-1)^n / |i_1..i_n|`` for every cyclic class of compositions of ``k``."""
    return [(s, Fraction((-1) ** s.n, cyclic_symmetry_count(s))) for s in compositions_up_to_cycle(k)]


def Z(k: int) -> Chain:
    if k < 3 or k % 2 == 0:
        raise ValueError(f"Z_k needs odd k >= 3, got {k}")
    out = Chain((1, k, k))
    for spec, coeff in Z_coefficients(k):
        out = out + ornate_necklace(spec) * coeff
    return quotient_project(out)


def theta_defined(k: int) -> bool:
    return k >= 5 and k % 4 == 1


def theta(k: int, c: Chain) -> Fraction:
    """Coefficient of ``X_k`` (with its necklace orientation) in ``c``."""
    if not theta_defined(k):
        raise ValueError(f"Theta_k is undefined for k={k} (X_k vanishes or k < 5)")
    if c.is_zero():
        return Fraction(0)
    if c.grade != (1, k, k):
        raise ValueError(f"Theta_{k} lives in grade (1, {k}, {k}), not {c.grade}")
    cg, sign = canonicalize(*build_Xk(k))
    return c[cg] * sign


@dataclass
class VerificationReport:
    k: int
    x_k_nonzero: bool
    cocycle_ok: bool | None
    cycle_ok: bool
    pairing: Fraction | None
    elapsed_ms: int
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def certificate(self) -> dict:
        return {
            "k": self.k,
            "x_k_nonzero": self.x_k_nonzero,
            "cocycle_ok": self.cocycle_ok,
            "cycle_ok": self.cycle_ok,
            "pairing": None if self.pairing is None else f"{self.pairing.numerator}/{self.pairing.denominator}",
            "elapsed_ms": self.elapsed_ms,
        }


def cocycle_check(k: int) -> bool:
    """Theta_k(dY) = 0 for every one-edge expansion Y of X_k."""
    xg, _ = build_Xk(k)
    for y, _ in expansions(xg):
        if theta(k, boundary_of_graph(y, y.default_orientation())):
            return False
    return True


def verify_cycle(k: int) -> bool:
    return quotient_project(boundary(Z(k))).is_zero()


def verify_main_theorem(k: int) -> VerificationReport:
    """Check X_k != 0, the cocycle property, dZ_k = 0 and Theta_k(Z_k) = -1/k."""
    if not theta_defined(k):
        raise ValueError(f"the pairing needs k >= 5 with k = 1 mod 4, got {k}")
    t0 = time.perf_counter()
    failures = []
    cg, _ = canonicalize(*build_Xk(k))
    nonzero = not cg.is_zero
    if not nonzero:
        failures.append("X_k is zero")
    cocycle = cocycle_check(k)
    if not cocycle:
        failures.append("Theta_k(dY) != 0 for some expansion Y of X_k")
    z = Z(k)
    cycle = quotient_project(boundary(z)).is_zero()
    if not cycle:
        failures.append("d(Z_k) != 0 modulo cut-vertex graphs")
    pairing = theta(k, z)
    if pairing != Fraction(-1, k):
        failures.append(f"Theta_k(Z_k) = {pairing}, expected -1/{k}")
    elapsed = int((time.perf_counter() - t0) * 1000)
    return VerificationReport(k, nonzero, cocycle, cycle, pairing, elapsed, failures)


def verify_cycle_only(k: int) -> VerificationReport:
    if k < 3 or k % 2 == 0:
        raise ValueError(f"Z_k needs odd k >= 3, got {k}")
    t0 = time.perf_counter()
    cg, _ = canonicalize(*build_Xk(k))
    cycle = verify_cycle(k)
    failures = [] if cycle else ["d(Z_k) != 0 modulo cut-vertex graphs"]
    elapsed = int((time.perf_counter() - t0) * 1000)
    return VerificationReport(k, not cg.is_zero, None, cycle, None, elapsed, failures)


def contraction_contributions(term: NecklaceTerm) -> dict[str, Chain]:
    """Boundary of one necklace term split by the class of the contracted edge."""
    g, o = term.graph, term.orientation
    k = g.num_vertices
    out = {c: Chain((1, k, k - 1)) for c in EDGE_CLASSES}
    for e in g.non_loop_edges():
        h, oh, sign = contract_edge(g, o, e)
        out[term.edge_class[e]] = out[term.edge_class[e]] + Chain.from_graph(h, oh, sign)
    return out
