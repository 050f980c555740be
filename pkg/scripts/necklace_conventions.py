"""Try alternative dart layouts for ornate necklaces against the pinning checks.

For each variant: does [1,...,1] equal X_k with its orientation, do all
terms have genus 1 with k punctures, is d(Z_k) zero modulo cut-vertex
graphs, and is Theta_k(Z_k) = -1/k?  Variants passing everything are
compared with the default construction.

    python scripts/necklace_conventions.py --kmax 7
"""

import argparse
import itertools
from fractions import Fraction

from ribbon_complex.chain import Chain, boundary, quotient_project
from ribbon_complex.graph import Orientation, build_graph, build_Xk, genus_punctures
from ribbon_complex.necklace import Z, binary_trees, compositions_up_to_cycle, cyclic_symmetry_count, theta


def assemble(trees, *, leaves_reversed=True, tree_side="inside", child_order="lr", numbering="inorder", loop_dir=1, mirror=False):
    rot, pair, tails, vdarts = {}, {}, [], []
    nxt = [0]

    def darts(c):
        out = list(range(nxt[0], nxt[0] + c))
        nxt[0] += c
        return out

    def cycle(ds):
        for a, b in zip(ds, ds[1:] + ds[:1]):
            rot[a] = b
        vdarts.append(ds[0])

    def edge(t, h):
        pair[t], pair[h] = h, t
        tails.append(t)

    def grow(tree, parent, leaves):
        if tree.is_leaf:
            edge(parent, leaves.pop(0))
            return
        p, l, r = darts(3)
        edge(parent, p)
        if numbering == "preorder":
            cycle([p, l, r] if child_order == "lr" else [p, r, l])
        grow(tree.left, l, leaves)
        if numbering == "inorder":
            cycle([p, l, r] if child_order == "lr" else [p, r, l])
        grow(tree.right, r, leaves)

    ports = []
    for tree in trees:
        d_in, d_root, d_out = darts(3)
        lv = darts(tree.leaves)
        ring = lv[::-1] if leaves_reversed else lv
        cycle([d_in, d_root, d_out] + ring if tree_side == "inside" else [d_in, d_out, d_root] + ring)
        ports.append((d_in, d_out))
        grow(tree, d_root, list(lv))
    n = len(trees)
    for j in range(n):
        a, b = ports[j][1], ports[(j + 1) % n][0]
        edge(a, b) if loop_dir > 0 else edge(b, a)
    N = nxt[0]
    if mirror:
        rot = {b: a for a, b in rot.items()}
    g = build_graph([rot[d] for d in range(N)], [pair[d] for d in range(N)])
    t = [0] * g.num_edges
    for d in tails:
        t[g.edge_of[d]] = d
    return g, Orientation(tuple(g.vertex_of[d] for d in vdarts), tuple(t))


def z_chain(k, **kw):
    out = Chain((1, k, k))
    for spec in compositions_up_to_cycle(k):
        coeff = Fraction((-1) ** spec.n, cyclic_symmetry_count(spec))
        for trees in itertools.product(*(binary_trees(i) for i in spec.composition)):
            g, o = assemble(trees, **kw)
            if genus_punctures(g) != (1, k):
                return None
            out = out + Chain.from_graph(g, o, coeff)
    return quotient_project(out)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--kmax", type=int, default=7)
    args = ap.parse_args()
    grid = {
        "leaves_reversed": [True, False],
        "tree_side": ["inside", "outside"],
        "child_order": ["lr", "rl"],
        "numbering": ["inorder", "preorder"],
        "loop_dir": [1, -1],
        "mirror": [False, True],
    }
    keys = list(grid)
    for values in itertools.product(*grid.values()):
        kw = dict(zip(keys, values))
        xk_ok = all(Chain.from_graph(*assemble((binary_trees(1)[0],) * k, **kw)) == Chain.from_graph(*build_Xk(k)) for k in (5, 9))
        status = []
        same = True
        ok = xk_ok
        for k in range(3, args.kmax + 1, 2):
            z = z_chain(k, **kw)
            if z is None:
                status.append(f"k={k}:genus")
                ok = same = False
                continue
            cyc = quotient_project(boundary(z)).is_zero()
            pair = theta(k, z) if k % 4 == 1 and k >= 5 else None
            ok = ok and cyc and (pair is None or pair == Fraction(-1, k))
            same = same and z == Z(k)
            status.append(f"k={k}:{'cycle' if cyc else 'NOT-cycle'}" + (f",theta={pair}" if pair is not None else ""))
        print(("PASS" if ok else "fail"), "same-as-default" if same else "differs", kw, "X_k" if xk_ok else "X_k-mismatch", " ".join(status))


if __name__ == "__main__":
    main()
