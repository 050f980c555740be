"""Is the degree-3 necklace cycle Z_3 a boundary modulo cut-vertex graphs?

Solves d(c) = Z_3 in the quotient complex of genus 1 with 3 punctures by
comparing ranks of d_4 and of d_4 with Z_3 appended as a column.  Also
prints the quotient Betti numbers of that grade.

    python scripts/z3_boundary_check.py
"""

from ribbon_complex.chain import has_cut_vertex
from ribbon_complex.enumeration import betti_numbers, boundary_matrix, enumerate_graphs
from ribbon_complex.linalg import SparseMatrixQ, rank_over_Q
from ribbon_complex.necklace import Z


def main():
    z = Z(3)
    dst = [cg for cg in enumerate_graphs(1, 3, 3) if not has_cut_vertex(cg.graph)]
    row = {cg: i for i, cg in enumerate(dst)}
    d = boundary_matrix(1, 3, 4, quotient=True)
    col = {(row[cg], d.cols): c for cg, c in z.items()}
    aug = SparseMatrixQ(d.rows, d.cols + 1, {**d.entries, **col})
    r, r_aug = rank_over_Q(d), rank_over_Q(aug)
    print(f"Z_3 has {len(z)} terms; rank d_4 = {r}, with Z_3 appended = {r_aug}")
    print("Z_3 is a boundary" if r == r_aug else "Z_3 is not a boundary")
    rows = betti_numbers(1, 3, quotient=True)
    print("quotient betti numbers (k=0..6):", [x.betti for x in rows])


if __name__ == "__main__":
    main()
