"""Exact multilinear algebra on the symplectic space V_n.

Letters ``0..n-1`` stand for ``p_1..p_n`` and ``n..2n-1`` for ``q_1..q_n``;
``omega(p_i, q_i) = 1 = -omega(q_i, p_i)``.  Tensors are sparse maps from
words to Fractions.

Conventions fixed here:

* ``a ^ b`` embeds in ``V (x) V`` as ``a(x)b - b(x)a`` (no 1/2).
* The bracket on cyclic invariants sums the slot-1 contraction over all
  rotations of both arguments, then averages over rotations of the result.
  Averaging instead of summing breaks the Jacobi identity.
* ``b_n`` elements are stored as unreduced 2-forms; :meth:`BElement.reduced`
  removes the ``omega_0`` direction by zeroing the ``p_1 ^ q_1`` coordinate.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

Word = tuple[int, ...]


def omega(a: int, b: int, n: int) -> int:
    if b == a + n and a < n:
        return 1
    if a == b + n and b < n:
        return -1
    return 0


def letter_name(a: int, n: int) -> str:
    return f"p{a + 1}" if a < n else f"q{a - n + 1}"


class TensorElement:
    """Element of ``V_n^{(x) l}``; all words share the length ``l``."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Mapping[Word, Fraction] | None = None):
        self.n = n
        self.terms: dict[Word, Fraction] = {}
        for w, c in (terms or {}).items():
            c = Fraction(c)
            if c:
                self.terms[tuple(w)] = self.terms.get(tuple(w), 0) + c
        self.terms = {w: c for w, c in self.terms.items() if c}
        lengths = {len(w) for w in self.terms}
        if len(lengths) > 1:
            raise ValueError(f"mixed tensor degrees {sorted(lengths)}")

    @classmethod
    def word(cls, n: int, w: Iterable[int], coeff=1) -> "TensorElement":
        return cls(n, {tuple(w): coeff})

    @property
    def degree(self) -> int | None:
        for w in self.terms:
            return len(w)
        return None

    def is_zero(self) -> bool:
        return not self.terms

    def _same(self, other: "TensorElement") -> None:
        if self.n != other.n:
            raise ValueError("tensors over different V_n")

    def __add__(self, other: "TensorElement") -> "TensorElement":
        self._same(other)
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, 0) + c
        return TensorElement(self.n, out)

    def __neg__(self) -> "TensorElement":
        return TensorElement(self.n, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other: "TensorElement") -> "TensorElement":
        return self + (-other)

    def __mul__(self, s) -> "TensorElement":
        s = Fraction(s)
        return TensorElement(self.n, {w: c * s for w, c in self.terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if isinstance(other, TensorElement):
            return self.n == other.n and self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for w, c in sorted(self.terms.items()):
            parts.append(f"{c}*" + "(x)".join(letter_name(a, self.n) for a in w))
        return " + ".join(parts)


def p(n: int, i: int) -> TensorElement:
    return TensorElement.word(n, (i - 1,))


def q(n: int, i: int) -> TensorElement:
    return TensorElement.word(n, (n + i - 1,))


def tensor(x: TensorElement, y: TensorElement) -> TensorElement:
    x._same(y)
    out: dict[Word, Fraction] = {}
    for u, a in x.terms.items():
        for w, b in y.terms.items():
            out[u + w] = out.get(u + w, 0) + a * b
    return TensorElement(x.n, out)


def contraction(x: TensorElement, i: int, j: int) -> TensorElement | Fraction:
    """``C_{i,j}`` on 1-based slots ``i < j``; a full contraction returns a Fraction."""
    deg = x.degree
    if deg is None:
        return TensorElement(x.n)
    if not 1 <= i < j <= deg:
        raise IndexError(f"slots ({i}, {j}) out of range for degree {deg}")
    out: dict[Word, Fraction] = {}
    for w, c in x.terms.items():
        s = omega(w[i - 1], w[j - 1], x.n)
        if s:
            rest = w[: i - 1] + w[i : j - 1] + w[j:]
            out[rest] = out.get(rest, 0) + s * c
    if deg == 2:
        return out.get((), Fraction(0))
    return TensorElement(x.n, out)


def rotate(w: Word, r: int) -> Word:
    return w[r:] + w[:r]


def cyclic_project(x: TensorElement) -> TensorElement:
    """Average over cyclic rotations of the slots."""
    out: dict[Word, Fraction] = {}
    for w, c in x.terms.items():
        share = c / len(w)
        for r in range(len(w)):
            v = rotate(w, r)
            out[v] = out.get(v, 0) + share
    return TensorElement(x.n, out)


def is_cyclic_invariant(x: TensorElement) -> bool:
    return cyclic_project(x) == x


def bracket(x: TensorElement, y: TensorElement) -> TensorElement:
    """Lie bracket of cyclic invariants of degrees ``a`` and ``b``: degree ``a + b - 2``."""
    x._same(y)
    if x.is_zero() or y.is_zero():
        return TensorElement(x.n)
    if not (is_cyclic_invariant(x) and is_cyclic_invariant(y)):
        raise ValueError("bracket needs cyclically invariant arguments")
    # for invariant arguments the sum over rotations of both is |x||y| C_{1,|x|+1}(x (x) y)
    scale = x.degree * y.degree
    out: dict[Word, Fraction] = {}
    for u, a in x.terms.items():
        for w, b in y.terms.items():
            s = omega(u[0], w[0], x.n)
            if s:
                v = u[1:] + w[1:]
                out[v] = out.get(v, 0) + scale * s * a * b
    return cyclic_project(TensorElement(x.n, out))


def cyclic_basis(n: int, length: int) -> list[TensorElement]:
    """Projections of one word per rotation class: a basis of the invariants."""
    reps = {min(rotate(w, r) for r in range(length)) for w in itertools.product(range(2 * n), repeat=length)}
    return [cyclic_project(TensorElement.word(n, w)) for w in sorted(reps)]


# ---------------------------------------------------------------------------
# b_n = Lambda^2 V_n / Q omega_0


@dataclass(frozen=True)
class BElement:
    """2-form ``sum c_{ab} a^b`` over ``a < b``, read modulo ``omega_0``."""

    n: int
    coeffs: tuple[tuple[tuple[int, int], Fraction], ...] = ()

    @classmethod
    def from_dict(cls, n: int, d: Mapping[tuple[int, int], Fraction]) -> "BElement":
        acc: dict[tuple[int, int], Fraction] = {}
        for (a, b), c in d.items():
            c = Fraction(c)
            if a == b or not c:
                continue
            if a > b:
                a, b, c = b, a, -c
            acc[(a, b)] = acc.get((a, b), 0) + c
        return cls(n, tuple(sorted((k, v) for k, v in acc.items() if v)))

    @classmethod
    def wedge2(cls, n: int, a: int, b: int, coeff=1) -> "BElement":
        return cls.from_dict(n, {(a, b): coeff})

    def as_dict(self) -> dict[tuple[int, int], Fraction]:
        return dict(self.coeffs)

    def __add__(self, other: "BElement") -> "BElement":
        d = self.as_dict()
        for k, v in other.coeffs:
            d[k] = d.get(k, 0) + v
        return BElement.from_dict(self.n, d)

    def __mul__(self, s) -> "BElement":
        return BElement.from_dict(self.n, {k: v * Fraction(s) for k, v in self.coeffs})

    __rmul__ = __mul__

    def __neg__(self) -> "BElement":
        return self * -1

    def __sub__(self, other: "BElement") -> "BElement":
        return self + (-other)

    def reduced(self) -> "BElement":
        """Representative with zero ``p_1 ^ q_1`` coordinate."""
        c = self.as_dict().get((0, self.n), 0)
        return self - omega0(self.n) * c if c else self

    def equals_mod_omega0(self, other: "BElement") -> bool:
        return (self - other).reduced() == BElement(self.n)

    def matrix(self) -> list[list[Fraction]]:
        """Coefficient matrix in ``V (x) V`` under ``a^b -> a(x)b - b(x)a``."""
        size = 2 * self.n
        m = [[Fraction(0)] * size for _ in range(size)]
        for (a, b), c in self.coeffs:
            m[a][b] += c
            m[b][a] -= c
        return m

    def tensor(self) -> TensorElement:
        out = {}
        for (a, b), c in self.coeffs:
            out[(a, b)] = out.get((a, b), 0) + c
            out[(b, a)] = out.get((b, a), 0) - c
        return TensorElement(self.n, out)


def omega0(n: int) -> BElement:
    return BElement.from_dict(n, {(i, n + i): 1 for i in range(n)})


def b_basis(n: int) -> list[BElement]:
    """Basis of the reduced representatives (``p_1 ^ q_1`` omitted)."""
    return [BElement.wedge2(n, a, b) for a in range(2 * n) for b in range(a + 1, 2 * n) if (a, b) != (0, n)]


def pi_n(x: TensorElement) -> BElement:
    """``h1(x)h2(x)h3(x)h4 -> omega(h1, h3) h2^h4`` on degree-4 invariants, reduced."""
    if x.is_zero():
        return BElement(x.n)
    if x.degree != 4:
        raise ValueError(f"pi_n takes degree-4 tensors, got degree {x.degree}")
    if not is_cyclic_invariant(x):
        raise ValueError("pi_n needs a cyclically invariant tensor")
    acc: dict[tuple[int, int], Fraction] = {}
    for (h1, h2, h3, h4), c in x.terms.items():
        s = omega(h1, h3, x.n)
        if s and h2 != h4:
            acc[(h2, h4)] = acc.get((h2, h4), 0) + s * c
    return BElement.from_dict(x.n, acc).reduced()


# ---------------------------------------------------------------------------
# k-fold products of b_n and the cycle functional


@dataclass(frozen=True)
class WedgeB:
    """Formal sum of ``k``-tuples of ``b_n`` elements, an element of ``b_n^{(x) k}``.

    :func:`wedge` produces alternating elements; :func:`e_kn` does not.
    """

    n: int
    k: int
    terms: tuple[tuple[Fraction, tuple[BElement, ...]], ...] = field(default=())

    def __add__(self, other: "WedgeB") -> "WedgeB":
        return WedgeB(self.n, self.k, self.terms + other.terms)

    def __mul__(self, s) -> "WedgeB":
        return WedgeB(self.n, self.k, tuple((c * Fraction(s), t) for c, t in self.terms))

    __rmul__ = __mul__


def wedge(*xs: BElement) -> WedgeB:
    """``x_1 ^ ... ^ x_k`` as the signed sum over all slot permutations."""
    n = xs[0].n
    k = len(xs)
    terms = []
    for perm in itertools.permutations(range(k)):
        terms.append((Fraction(_perm_sign(perm)), tuple(xs[i] for i in perm)))
    return WedgeB(n, k, tuple(terms))


def _perm_sign(perm: Sequence[int]) -> int:
    sign = 1
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j]:
                sign = -sign
    return sign


def e_kn(k: int, n: int) -> WedgeB:
    """``sum_i [p_i ^ q_i]`` repeated in all ``k`` slots, one summand per ``i``."""
    return WedgeB(n, k, tuple((Fraction(1), (BElement.wedge2(n, i, n + i),) * k) for i in range(n)))


def _matmul(a, b):
    size = len(a)
    out = [[Fraction(0)] * size for _ in range(size)]
    for i in range(size):
        row = a[i]
        for t in range(size):
            x = row[t]
            if x:
                bt = b[t]
                oi = out[i]
                for j in range(size):
                    if bt[j]:
                        oi[j] += x * bt[j]
    return out


def _omega_matrix(n: int):
    return [[Fraction(omega(a, b, n)) for b in range(2 * n)] for a in range(2 * n)]


def cycle_contraction(xs: Sequence[BElement]) -> Fraction:
    """Contract slot ``2j`` with ``2j+1`` and slot ``2k`` with slot 1 on ``x_1 (x) ... (x) x_k``."""
    n = xs[0].n
    om = _omega_matrix(n)
    acc = None
    for x in xs:
        step = _matmul(x.matrix(), om)
        acc = step if acc is None else _matmul(acc, step)
    return sum((acc[i][i] for i in range(2 * n)), Fraction(0))


def xi(k: int, n: int, w: WedgeB) -> Fraction:
    """The cycle functional on ``k``-fold products of ``b_n``."""
    if k < 5 or k % 4 != 1:
        raise ValueError(f"xi is defined for k in 5, 9, 13, ..., got {k}")
    if w.k != k or w.n != n:
        raise ValueError(f"expected a {k}-fold product over V_{n}, got {w.k}-fold over V_{w.n}")
    return sum((c * cycle_contraction(t) for c, t in w.terms), Fraction(0))
