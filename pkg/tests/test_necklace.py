from __future__ import annotations

import itertools
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ribbon_complex.chain import Chain, boundary, has_cut_vertex, quotient_project
from ribbon_complex.enumeration import boundary_matrix, enumerate_graphs
from ribbon_complex.graph import build_Xk, canonicalize, genus_punctures
from ribbon_complex.linalg import SparseMatrixQ, rank_over_Q
from ribbon_complex.necklace import (
    LEAF,
    NecklaceSpec,
    PlanarBinaryTree,
    Z,
    Z_coefficients,
    binary_trees,
    compositions_up_to_cycle,
    contraction_contributions,
    cyclic_symmetry_count,
    min_rotation,
    necklace_terms,
    ornate_necklace,
    theta,
    verify_main_theorem,
)


def _catalan(n):
    c = [1]
    for i in range(n):
        c.append(sum(c[j] * c[i - j] for j in range(i + 1)))
    return c[n]


# -- trees ------------------------------------------------------------------


@pytest.mark.parametrize("i", range(1, 8))
def test_tree_counts_follow_catalan(i):
    trees = binary_trees(i)
    assert len(trees) == _catalan(i - 1)
    assert len(set(trees)) == len(trees)
    for t in trees:
        assert t.leaves == i
        assert t.internal_nodes == i - 1


def test_small_tree_counts():
    assert [len(binary_trees(i)) for i in range(1, 6)] == [1, 1, 2, 5, 14]
    assert binary_trees(1) == (LEAF,)
    assert binary_trees(2) == (PlanarBinaryTree(LEAF, LEAF),)


# -- compositions -----------------------------------------------------------


def test_symmetry_counts():
    assert cyclic_symmetry_count((1, 1, 1, 1, 1)) == 5
    assert cyclic_symmetry_count((1, 2, 1, 2, 1, 2)) == 3
    assert cyclic_symmetry_count((1, 1, 2, 1)) == 1
    assert cyclic_symmetry_count(NecklaceSpec((2, 3))) == 1


def _brute_force_classes(k):
    comps = set()
    for n in range(1, k + 1):
        for c in itertools.product(range(1, k + 1), repeat=n):
            if sum(c) == k:
                comps.add(min(c[r:] + c[:r] for r in range(n)))
    return comps


@pytest.mark.parametrize("k", range(1, 9))
def test_classes_match_brute_force(k):
    got = [s.composition for s in compositions_up_to_cycle(k)]
    assert len(got) == len(set(got))
    assert set(got) == _brute_force_classes(k)
    assert all(min_rotation(c) == c for c in got)


def test_classes_small_k():
    assert [s.composition for s in compositions_up_to_cycle(1)] == [(1,)]
    assert {s.composition for s in compositions_up_to_cycle(3)} == {(1, 1, 1), (1, 2), (3,)}
    five = {s.composition for s in compositions_up_to_cycle(5)}
    assert five == {min_rotation(c) for c in [(1,) * 5, (2, 1, 1, 1), (1, 2, 2), (1, 1, 3), (2, 3), (1, 4), (5,)]}


def test_necklace_spec_validation():
    with pytest.raises(ValueError):
        NecklaceSpec(())
    with pytest.raises(ValueError):
        NecklaceSpec((2, 0))


# -- necklaces --------------------------------------------------------------


@pytest.mark.parametrize("k", [5, 9])
def test_all_ones_necklace_is_xk(k):
    assert ornate_necklace((1,) * k) == Chain.from_graph(*build_Xk(k))


def test_necklace_term_counts():
    assert len(necklace_terms((3, 2))) == 2
    assert len(necklace_terms((4, 1, 3))) == 10


@pytest.mark.parametrize("k", [3, 4, 5, 6, 7])
def test_necklace_terms_are_homogeneous(k):
    for spec in compositions_up_to_cycle(k):
        for t in necklace_terms(spec):
            assert t.graph.num_vertices == k
            assert t.graph.num_edges == 2 * k
            assert genus_punctures(t.graph) == (1, k)
            assert min(t.graph.valency(v) for v in range(k)) >= 3


@given(st.lists(st.integers(1, 3), min_size=1, max_size=4).filter(lambda c: sum(c) % 2 == 1), st.integers(0, 3))
def test_rotation_invariance_odd_k(comp, r):
    comp = tuple(comp)
    r %= len(comp)
    assert ornate_necklace(comp) == ornate_necklace(comp[r:] + comp[:r])


@pytest.mark.parametrize("k", [3, 5, 7])
def test_d_squared_on_necklace_terms(k):
    for spec in compositions_up_to_cycle(k):
        for t in necklace_terms(spec):
            assert boundary(boundary(Chain.from_graph(t.graph, t.orientation))).is_zero()


# -- edge contributions -----------------------------------------------------


@pytest.mark.parametrize("k", [3, 5, 7])
def test_edge_contributions(k):
    for spec in compositions_up_to_cycle(k):
        interior = Chain((1, k, k - 1))
        rest = Chain((1, k, k - 1))
        for t in necklace_terms(spec):
            parts = contraction_contributions(t)
            assert parts["small_loop"].is_zero()
            for h in parts["top"]:
                assert has_cut_vertex(h.graph)
            interior = interior + parts["interior"]
            rest = rest + parts["interior"] + parts["top"]
        # interior tree edges cancel once all tree choices are summed
        assert interior.is_zero(), spec
        # only root and big-loop contractions survive modulo cut-vertex graphs
        assert quotient_project(rest).is_zero()


def test_contributions_add_up_to_boundary():
    for t in necklace_terms((2, 3)):
        total = Chain((1, 5, 4))
        for part in contraction_contributions(t).values():
            total = total + part
        assert total == boundary(Chain.from_graph(t.graph, t.orientation))


# -- Z_k and Theta_k --------------------------------------------------------


def test_z5_coefficients():
    want = {
        (1, 1, 1, 1, 1): Fraction(-1, 5),
        (2, 1, 1, 1): 1,
        (1, 2, 2): -1,
        (1, 1, 3): -1,
        (2, 3): 1,
        (1, 4): 1,
        (5,): -1,
    }
    got = {s.composition: c for s, c in Z_coefficients(5)}
    assert got == {min_rotation(c): Fraction(v) for c, v in want.items()}


def test_z5_matches_literal_sum():
    lit = Chain((1, 5, 5))
    for comp, c in [((1,) * 5, Fraction(-1, 5)), ((2, 1, 1, 1), 1), ((1, 2, 2), -1), ((1, 1, 3), -1),
                    ((2, 3), 1), ((1, 4), 1), ((5,), -1)]:
        lit = lit + ornate_necklace(comp) * c
    assert Z(5) == quotient_project(lit)


def test_z_rejects_bad_k():
    for k in (1, 2, 4, 6):
        with pytest.raises(ValueError):
            Z(k)


@pytest.mark.parametrize("k", [3, 5, 7])
def test_z_is_a_cycle(k):
    assert quotient_project(boundary(Z(k))).is_zero()


def test_theta_examples():
    assert theta(5, Z(5)) == Fraction(-1, 5)
    assert theta(5, ornate_necklace((2, 3))) == 0
    assert theta(5, Chain.from_graph(*build_Xk(5))) == 1
    assert theta(5, Chain((1, 5, 5))) == 0
    with pytest.raises(ValueError):
        theta(7, Z(7))
    with pytest.raises(ValueError):
        theta(5, ornate_necklace((1, 2)))


def test_main_theorem_k5():
    report = verify_main_theorem(5)
    assert report.ok, report.failures
    cert = report.certificate()
    assert cert["pairing"] == "-1/5"
    assert cert["x_k_nonzero"] and cert["cocycle_ok"] and cert["cycle_ok"]
    assert set(cert) == {"k", "x_k_nonzero", "cocycle_ok", "cycle_ok", "pairing", "elapsed_ms"}


def test_main_theorem_rejects_vanishing_xk():
    for k in (3, 7, 11):
        with pytest.raises(ValueError):
            verify_main_theorem(k)


def test_z3_is_a_boundary_in_the_quotient():
    z = Z(3)
    assert not z.is_zero()
    src = [cg for cg in enumerate_graphs(1, 3, 4) if not has_cut_vertex(cg.graph)]
    dst = [cg for cg in enumerate_graphs(1, 3, 3) if not has_cut_vertex(cg.graph)]
    row = {cg: i for i, cg in enumerate(dst)}
    d = boundary_matrix(1, 3, 4, quotient=True)
    assert (d.rows, d.cols) == (len(dst), len(src))
    z_col = {(row[cg], d.cols): c for cg, c in z.items()}
    augmented = SparseMatrixQ(d.rows, d.cols + 1, {**d.entries, **z_col})
    assert rank_over_Q(augmented) == rank_over_Q(d)
