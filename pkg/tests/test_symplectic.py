from __future__ import annotations

import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ribbon_complex.linalg import SparseMatrixQ, rank_over_Q
from ribbon_complex.symplectic import (
    BElement,
    TensorElement,
    WedgeB,
    b_basis,
    bracket,
    contraction,
    cyclic_basis,
    cyclic_project,
    e_kn,
    is_cyclic_invariant,
    omega,
    omega0,
    p,
    pi_n,
    q,
    rotate,
    tensor,
    wedge,
    xi,
)

small = st.integers(min_value=-3, max_value=3)


@st.composite
def tensors(draw, n=1, length=3, max_terms=4):
    words = draw(
        st.lists(st.tuples(*[st.integers(0, 2 * n - 1)] * length), min_size=1, max_size=max_terms)
    )
    cs = draw(st.lists(small, min_size=len(words), max_size=len(words)))
    return TensorElement(n, dict(zip(words, cs)))


@st.composite
def b_elements(draw, n=2, max_terms=3):
    pairs = draw(
        st.lists(st.tuples(st.integers(0, 2 * n - 1), st.integers(0, 2 * n - 1)), min_size=1, max_size=max_terms)
    )
    cs = draw(st.lists(small, min_size=len(pairs), max_size=len(pairs)))
    return BElement.from_dict(n, dict(zip(pairs, cs)))


def _naive_bracket(x, y):
    """Sum over rotations of both arguments of C_{1, |x|+1}, then cyclic projection."""
    a, b = x.degree, y.degree
    acc = TensorElement(x.n)
    for r in range(a):
        xr = TensorElement(x.n, {rotate(w, r): c for w, c in x.terms.items()})
        for s in range(b):
            ys = TensorElement(y.n, {rotate(w, s): c for w, c in y.terms.items()})
            acc = acc + contraction(tensor(xr, ys), 1, a + 1)
    return cyclic_project(acc)


def _naive_xi(xs):
    """Expand x_1 (x) ... (x) x_k into words and contract slots (2,3), ..., (2k, 1)."""
    n = xs[0].n
    k = len(xs)
    total = Fraction(0)
    factors = [list(x.tensor().terms.items()) for x in xs]
    for choice in itertools.product(*factors):
        word = tuple(l for w, _ in choice for l in w)
        c = Fraction(1)
        for _, a in choice:
            c *= a
        for j in range(k):
            c *= omega(word[2 * j + 1], word[(2 * j + 2) % (2 * k)], n)
            if not c:
                break
        total += c
    return total


# -- omega and contractions -------------------------------------------------


@pytest.mark.parametrize("n", [1, 2, 3])
def test_omega_table(n):
    for a in range(2 * n):
        for b in range(2 * n):
            assert omega(a, b, n) == -omega(b, a, n)
    for i in range(n):
        assert omega(i, n + i, n) == 1
        assert omega(n + i, i, n) == -1
    # nondegenerate: each letter pairs with exactly one other
    for a in range(2 * n):
        assert sum(1 for b in range(2 * n) if omega(a, b, n)) == 1


def test_contraction_examples():
    assert contraction(tensor(p(1, 1), q(1, 1)), 1, 2) == 1
    assert contraction(tensor(p(1, 1), p(1, 1)), 1, 2) == 0
    x = tensor(tensor(p(2, 1), q(2, 2)), q(2, 1))
    assert contraction(x, 1, 3) == q(2, 2)


def test_contraction_rejects_bad_slots():
    x = tensor(p(1, 1), q(1, 1))
    with pytest.raises(IndexError):
        contraction(x, 2, 1)
    with pytest.raises(IndexError):
        contraction(x, 1, 3)


@given(tensors(n=2, length=4), tensors(n=2, length=4), small)
def test_contraction_is_linear(x, y, a):
    assert contraction(x * a + y, 2, 4) == contraction(x, 2, 4) * a + contraction(y, 2, 4)


# -- cyclic projection ------------------------------------------------------


def test_cyclic_project_two_cycle():
    x = tensor(p(1, 1), q(1, 1))
    want = TensorElement(1, {(0, 1): Fraction(1, 2), (1, 0): Fraction(1, 2)})
    assert cyclic_project(x) == want


@given(tensors(n=2, length=4))
def test_cyclic_project_idempotent(x):
    y = cyclic_project(x)
    assert cyclic_project(y) == y
    assert is_cyclic_invariant(y)


def test_cyclic_basis_spans_invariants():
    # rotation classes of words of length 3 over 2 letters: 000, 001, 011, 111
    assert len(cyclic_basis(1, 3)) == 4
    assert all(is_cyclic_invariant(x) for x in cyclic_basis(1, 4))


# -- bracket ----------------------------------------------------------------


def _invariants(n, lengths):
    return [x for l in lengths for x in cyclic_basis(n, l)]


def test_bracket_matches_naive_definition():
    basis = _invariants(1, (2, 3, 4))
    for x, y in itertools.product(basis, repeat=2):
        assert bracket(x, y) == _naive_bracket(x, y)


def test_bracket_antisymmetry_and_jacobi_exhaustive():
    basis = _invariants(1, (2, 3, 4))
    for x in basis:
        assert bracket(x, x).is_zero()
        for y in basis:
            assert bracket(x, y) == -bracket(y, x)
    for a, b, c in itertools.combinations_with_replacement(basis, 3):
        jac = bracket(bracket(a, b), c) + bracket(bracket(b, c), a) + bracket(bracket(c, a), b)
        assert jac.is_zero()


def test_bracket_grading():
    x, y = cyclic_basis(1, 3)[1], cyclic_basis(1, 3)[2]
    z = bracket(x, y)
    assert z.is_zero() or z.degree == 4
    assert is_cyclic_invariant(z)


def test_bracket_rejects_non_invariant():
    with pytest.raises(ValueError):
        bracket(tensor(p(1, 1), q(1, 1)), cyclic_basis(1, 2)[0])


@settings(max_examples=30)
@given(tensors(n=2, length=3), tensors(n=2, length=3), tensors(n=2, length=4), small)
def test_bracket_bilinear_and_antisymmetric(x, y, z, a):
    x, y, z = cyclic_project(x), cyclic_project(y), cyclic_project(z)
    assert bracket(x * a + y, z) == bracket(x, z) * a + bracket(y, z)
    assert bracket(x, z) == -bracket(z, x)


# -- b_n and pi_n -----------------------------------------------------------


def test_pi_n_hand_expansion():
    # rotations of p1 p2 q1 q2 give (p2^q2 - p1^q1)/2, which is p2^q2 modulo omega_0
    x = cyclic_project(TensorElement.word(2, (0, 1, 2, 3)))
    assert pi_n(x) == BElement.wedge2(2, 1, 3)
    assert pi_n(x).equals_mod_omega0(BElement.from_dict(2, {(1, 3): Fraction(1, 2), (0, 2): Fraction(-1, 2)}))


def test_pi_n_vanishes_without_pairs():
    # no rotation of p1 p1 q1 p1 contracts to a nonzero 2-form
    assert pi_n(cyclic_project(TensorElement.word(1, (0, 0, 1, 0)))) == BElement(1)
    assert pi_n(cyclic_project(TensorElement.word(2, (0, 1, 0, 1)))) == BElement(2)


def test_pi_n_errors():
    with pytest.raises(ValueError):
        pi_n(cyclic_project(TensorElement.word(1, (0, 1, 0))))
    with pytest.raises(ValueError):
        pi_n(TensorElement.word(1, (0, 1, 0, 1)))


@given(tensors(n=2, length=4), tensors(n=2, length=4), small, small)
def test_pi_n_linear(x, y, a, b):
    x, y = cyclic_project(x), cyclic_project(y)
    assert pi_n(x * a + y * b) == pi_n(x) * a + pi_n(y) * b


@pytest.mark.parametrize("n", [2, 3])
def test_pi_n_surjective(n):
    basis = b_basis(n)
    index = {b.coeffs[0][0]: i for i, b in enumerate(basis)}
    rows = []
    for x in cyclic_basis(n, 4):
        img = pi_n(x)
        rows.append({(len(rows), index[k]): v for k, v in img.coeffs})
    entries = {key: v for r in rows for key, v in r.items()}
    m = SparseMatrixQ(len(rows), len(basis), entries)
    assert len(basis) == n * (2 * n - 1) - 1
    assert rank_over_Q(m) == len(basis)


@given(b_elements(), small)
def test_reduced_is_a_representative(x, c):
    r = x.reduced()
    assert dict(r.coeffs).get((0, 2), 0) == 0
    assert r.equals_mod_omega0(x)
    assert (x + omega0(2) * c).equals_mod_omega0(x)


# -- xi and e_kn ------------------------------------------------------------


@pytest.mark.parametrize("n", [1, 2, 3])
def test_xi_on_e(n):
    assert xi(5, n, e_kn(5, n)) == -2 * n


def test_xi_on_e_k9():
    assert xi(9, 2, e_kn(9, 2)) == -4


def test_e_kn_shape():
    assert len(e_kn(5, 1).terms) == 1
    assert e_kn(5, 1).terms[0][1] == (BElement.wedge2(1, 0, 1),) * 5
    assert len(e_kn(5, 2).terms) == 2


def test_xi_domain():
    for k in (3, 4, 7):
        with pytest.raises(ValueError):
            xi(k, 1, WedgeB(1, k))
    with pytest.raises(ValueError):
        xi(5, 2, e_kn(5, 1))


@settings(max_examples=20)
@given(st.lists(b_elements(n=2, max_terms=2), min_size=5, max_size=5))
def test_xi_matches_naive_contraction(xs):
    got = xi(5, 2, WedgeB(2, 5, ((Fraction(1), tuple(xs)),)))
    assert got == _naive_xi(xs)


@settings(max_examples=15)
@given(st.lists(b_elements(n=2), min_size=5, max_size=5))
def test_xi_alternating(xs):
    a = xi(5, 2, wedge(*xs))
    b = xi(5, 2, wedge(xs[1], xs[0], *xs[2:]))
    assert a == -b


@pytest.mark.parametrize("n", [1, 2, 3])
def test_xi_vanishes_on_omega0(n):
    rng = random.Random(n)
    for _ in range(5):
        xs = [
            BElement.from_dict(n, {tuple(rng.sample(range(2 * n), 2)): rng.randint(-3, 3) for _ in range(3)})
            for _ in range(4)
        ]
        assert xi(5, n, wedge(omega0(n), *xs)) == 0


@settings(max_examples=10)
@given(st.lists(b_elements(n=2), min_size=5, max_size=5), small)
def test_xi_well_defined_mod_omega0(xs, c):
    shifted = [xs[0] + omega0(2) * c] + xs[1:]
    assert xi(5, 2, wedge(*xs)) == xi(5, 2, wedge(*shifted))
