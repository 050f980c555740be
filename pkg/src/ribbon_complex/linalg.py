"""Sparse exact matrices over Q and their rank."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm


@dataclass
class SparseMatrixQ:
    rows: int
    cols: int
    entries: dict[tuple[int, int], Fraction] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for (r, c), x in self.entries.items():
            if not (0 <= r < self.rows and 0 <= c < self.cols):
                raise IndexError(f"entry ({r}, {c}) outside {self.rows}x{self.cols}")
            x = Fraction(x)
            if x:
                clean[(r, c)] = x
        self.entries = clean

    @classmethod
    def from_dense(cls, rows: list[list]) -> "SparseMatrixQ":
        nr = len(rows)
        nc = len(rows[0]) if rows else 0
        return cls(nr, nc, {(i, j): x for i, row in enumerate(rows) for j, x in enumerate(row) if x})

    def to_dense(self) -> list[list[Fraction]]:
        out = [[Fraction(0)] * self.cols for _ in range(self.rows)]
        for (r, c), x in self.entries.items():
            out[r][c] = x
        return out

    def triples(self) -> list[tuple[int, int, Fraction]]:
        return sorted((r, c, x) for (r, c), x in self.entries.items())

    def __matmul__(self, other: "SparseMatrixQ") -> "SparseMatrixQ":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        by_row: dict[int, list[tuple[int, Fraction]]] = {}
        for (r, c), x in other.entries.items():
            by_row.setdefault(r, []).append((c, x))
        out: dict[tuple[int, int], Fraction] = {}
        for (r, k), x in self.entries.items():
            for c, y in by_row.get(k, ()):
                out[(r, c)] = out.get((r, c), 0) + x * y
        return SparseMatrixQ(self.rows, other.cols, out)

    def is_zero(self) -> bool:
        return not self.entries


def _integer_rows(m: SparseMatrixQ) -> list[dict[int, int]]:
    rows: list[dict[int, Fraction]] = [dict() for _ in range(m.rows)]
    for (r, c), x in m.entries.items():
        rows[r][c] = x
    out = []
    for row in rows:
        if not row:
            continue
        den = lcm(*(x.denominator for x in row.values()))
        out.append({c: int(x * den) for c, x in row.items()})
    return out


def _primitive(row: dict[int, int]) -> dict[int, int]:
    g = 0
    for x in row.values():
        g = gcd(g, x)
        if g == 1:
            return row
    return {c: x // g for c, x in row.items()}


def rank_over_Q(m: SparseMatrixQ) -> int:
    """Exact rank by integer row elimination.

    Rows are scaled to integers and combined as ``a*row - b*pivot`` (no
    division), then divided by their content to keep entries small.
    """
    rows = [_primitive(r) for r in _integer_rows(m)]
    rank = 0
    # pivot on the sparsest remaining row each step
    while rows:
        rows.sort(key=len)
        pivot = rows.pop(0)
        if not pivot:
            continue
        rank += 1
        pc = min(pivot, key=lambda c: (abs(pivot[c]), c))
        pv = pivot[pc]
        nxt = []
        for row in rows:
            x = row.get(pc)
            if x is None:
                nxt.append(row)
                continue
            g = gcd(pv, x)
            a, b = pv // g, x // g
            new = {c: a * y for c, y in row.items()}
            for c, y in pivot.items():
                v = new.get(c, 0) - b * y
                if v:
                    new[c] = v
                else:
                    new.pop(c, None)
            if new:
                nxt.append(_primitive(new))
        rows = nxt
    return rank
