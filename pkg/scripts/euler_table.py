"""Basis sizes, Euler characteristics and Betti numbers for a range of grades.

    python scripts/euler_table.py --grades 1/1 1/2 1/3 0/4 --betti
"""

import argparse
import time

from ribbon_complex.enumeration import ResourceLimitError, basis_sizes, betti_numbers, euler_characteristic


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--grades", nargs="+", default=["1/1", "1/2", "1/3", "1/4"], help="g/m pairs")
    ap.add_argument("--cap", type=int, default=30)
    ap.add_argument("--betti", action="store_true", help="also compute exact ranks")
    args = ap.parse_args()
    for item in args.grades:
        g, m = map(int, item.split("/"))
        t0 = time.perf_counter()
        try:
            sizes = basis_sizes(g, m, args.cap)
            chi = euler_characteristic(g, m, args.cap)
        except ResourceLimitError as exc:
            print(f"g={g} m={m}: {exc}")
            continue
        line = f"g={g} m={m} sizes={sizes} chi={chi}"
        if args.betti:
            rows = betti_numbers(g, m, args.cap)
            line += " betti=" + str([r.betti for r in rows])
        print(f"{line} ({time.perf_counter() - t0:.1f} s)")


if __name__ == "__main__":
    main()
