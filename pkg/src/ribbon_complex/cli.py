"""Command-line entry point.

Exit codes: 0 success, 1 an identity failed, 2 usage or input error,
3 resource cap exceeded.
"""

from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import os
import random
import sys
from dataclasses import dataclass, fields
from fractions import Fraction

from . import chain as ch
from . import enumeration as en
from . import graph as gr
from . import necklace as nk
from . import symplectic as sp

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_RESOURCE = 0, 1, 2, 3


@dataclass
class RunConfig:
    dart_cap: int = en.DEFAULT_DART_CAP
    cache_dir: str | None = None
    output: str = "json"
    jobs: int = 1
    seed: int = 0

    def __post_init__(self):
        if self.dart_cap <= 0 or self.jobs <= 0:
            raise ValueError("caps must be positive")
        if self.output not in ("json", "csv", "text"):
            raise ValueError(f"unknown output format {self.output!r}")

    @classmethod
    def from_dict(cls, data: dict) -> "RunConfig":
        known = {f.name for f in fields(cls)}
        extra = set(data) - known
        if extra:
            raise ValueError(f"unknown config keys: {sorted(extra)}")
        return cls(**data)


class UsageError(Exception):
    pass


def frac(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, sort_keys=True) + "\n")


# ---------------------------------------------------------------------------


def cmd_verify(args, cfg: RunConfig) -> int:
    k = args.k
    if k < 3 or k % 2 == 0:
        raise UsageError(f"--k must be odd and >= 3, got {k}")
    if nk.theta_defined(k):
        report = nk.verify_main_theorem(k)
    else:
        report = nk.verify_cycle_only(k)
    cert = report.certificate()
    if report.failures:
        cert["failures"] = report.failures
    emit(cert)
    return EXIT_OK if report.ok else EXIT_FAIL


def _write_rows(rows, g, m, cfg, extra):
    if cfg.output == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["grade", "basis_size", "rank", "betti", "mcg_degree"])
        for r in rows:
            w.writerow([f"{g}/{m}/{r.k}", r.dim, r.rank_d, r.betti, r.mcg_degree])
        sys.stdout.write(buf.getvalue())
    elif cfg.output == "text":
        print(f"genus {g}, {m} punctures")
        print(f"{'k':>3} {'dim':>7} {'rank d':>7} {'betti':>6} {'H^j':>5}")
        for r in rows:
            print(f"{r.k:>3} {r.dim:>7} {r.rank_d:>7} {r.betti:>6} {r.mcg_degree:>5}")
        for key, val in extra.items():
            print(f"{key}: {val}")
    else:
        emit(
            {
                "g": g,
                "m": m,
                "grades": [
                    {"k": r.k, "basis_size": r.dim, "rank": r.rank_d, "betti": r.betti, "mcg_degree": r.mcg_degree}
                    for r in rows
                ],
                **extra,
            }
        )


def cmd_euler(args, cfg: RunConfig) -> int:
    g, m = args.g, args.m
    sizes = en.basis_sizes(g, m, cfg.dart_cap)
    chi = en.euler_characteristic(g, m, cfg.dart_cap)
    if cfg.output == "json":
        emit({"g": g, "m": m, "basis_sizes": {str(k + 1): s for k, s in enumerate(sizes)}, "euler_characteristic": chi})
    elif cfg.output == "csv":
        print("grade,basis_size")
        for k, s in enumerate(sizes, start=1):
            print(f"{g}/{m}/{k},{s}")
        print(f"chi,{chi}")
    else:
        print(chi)
    return EXIT_OK


def cmd_betti(args, cfg: RunConfig) -> int:
    rows = en.betti_numbers(args.g, args.m, cfg.dart_cap, quotient=args.quotient)
    chi = sum((-1) ** r.k * r.betti for r in rows)
    if chi != en.euler_characteristic(args.g, args.m, cfg.dart_cap):
        _write_rows(rows, args.g, args.m, cfg, {"euler_characteristic": chi, "error": "rank-nullity mismatch"})
        return EXIT_FAIL
    _write_rows(rows, args.g, args.m, cfg, {"euler_characteristic": chi})
    return EXIT_OK


def cmd_enumerate(args, cfg: RunConfig) -> int:
    basis = en.enumerate_graphs(args.g, args.m, args.k, cfg.dart_cap, cfg.cache_dir)
    if cfg.output == "csv":
        print("grade,basis_size")
        print(f"{args.g}/{args.m}/{args.k},{len(basis)}")
    else:
        emit(
            {
                "grade": list(basis.grade),
                "size": len(basis),
                "graphs": [cg.graph.to_json(cg.orientation) for cg in basis.graphs],
            }
        )
    return EXIT_OK


def _read_graph(path):
    text = sys.stdin.read() if path in (None, "-") else open(path).read()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"malformed JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    try:
        return gr.graph_from_json(data)
    except gr.GraphError as exc:
        raise UsageError(f"invalid graph: {exc}") from None


def cmd_graph(args, cfg: RunConfig) -> int:
    graph, o = _read_graph(args.file)
    tool = args.tool
    if tool == "faces":
        emit({"faces": [list(f) for f in gr.faces(graph)]})
    elif tool == "genus":
        g, m = gr.genus_punctures(graph)
        emit({"g": g, "m": m})
    elif tool == "canon":
        cg, sign = gr.canonicalize(graph, o)
        emit({"canonical": cg.graph.to_json(cg.orientation), "is_zero": cg.is_zero, "sign": None if cg.is_zero else sign})
    elif tool == "boundary":
        emit(ch.boundary(ch.Chain.from_graph(graph, o)).to_json())
    elif tool == "expand":
        out = []
        for y, e in ch.expansions(graph):
            out.append({"graph": y.to_json(y.default_orientation()), "new_edge": list(y.edges[e])})
        emit({"expansions": out})
    return EXIT_OK


def cmd_xi_check(args, cfg: RunConfig) -> int:
    k, n = args.k, args.n
    if k < 5 or k % 4 != 1 or n < 1:
        raise UsageError("xi-check needs k in 5, 9, 13, ... and n >= 1")
    rng = random.Random(cfg.seed)
    value = sp.xi(k, n, sp.e_kn(k, n))
    vanish = []
    for _ in range(args.samples):
        xs = [random_b_element(rng, n) for _ in range(k - 1)]
        vanish.append(sp.xi(k, n, sp.wedge(sp.omega0(n), *xs)))
    ok = value == -2 * n and all(v == 0 for v in vanish)
    emit(
        {
            "k": k,
            "n": n,
            "xi_e": frac(value),
            "expected_xi_e": frac(Fraction(-2 * n)),
            "omega0_samples": args.samples,
            "omega0_vanishes": all(v == 0 for v in vanish),
            "ok": ok,
        }
    )
    return EXIT_OK if ok else EXIT_FAIL


def random_b_element(rng: random.Random, n: int, terms: int = 3) -> sp.BElement:
    d = {}
    for _ in range(terms):
        a, b = rng.sample(range(2 * n), 2)
        d[(a, b)] = d.get((a, b), 0) + rng.randint(-3, 3)
    return sp.BElement.from_dict(n, d)


def cmd_bracket_check(args, cfg: RunConfig) -> int:
    basis = [x for length in range(2, args.max_degree + 1) for x in sp.cyclic_basis(args.n, length)]
    antisym = all((sp.bracket(x, y) + sp.bracket(y, x)).is_zero() for x in basis for y in basis)
    jacobi_fail = 0
    checked = 0
    for a, b, c in itertools.combinations_with_replacement(basis, 3):
        j = sp.bracket(sp.bracket(a, b), c) + sp.bracket(sp.bracket(b, c), a) + sp.bracket(sp.bracket(c, a), b)
        checked += 1
        if not j.is_zero():
            jacobi_fail += 1
    ok = antisym and jacobi_fail == 0
    emit({"n": args.n, "max_degree": args.max_degree, "basis_size": len(basis), "antisymmetric": antisym,
          "jacobi_triples": checked, "jacobi_failures": jacobi_fail, "ok": ok})
    return EXIT_OK if ok else EXIT_FAIL


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="ribbon-complex", description=__doc__.splitlines()[0])
    ap.add_argument("--cap", type=int, default=None, help="dart-count resource cap (default 30)")
    ap.add_argument("--cache-dir", default=None, help="basis cache directory (or RIBBON_CACHE_DIR)")
    ap.add_argument("--format", choices=("json", "csv", "text"), default=None)
    ap.add_argument("--jobs", type=int, default=None, help="worker count (results do not depend on it)")
    ap.add_argument("--seed", type=int, default=None)
    ap.add_argument("--config", default=None, help="JSON file with RunConfig keys")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="check the cycle Z_k and, when defined, its pairing with Theta_k")
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(func=cmd_verify)

    for name, func in (("euler", cmd_euler), ("betti", cmd_betti)):
        p = sub.add_parser(name)
        p.add_argument("--g", type=int, required=True)
        p.add_argument("--m", type=int, required=True)
        if name == "betti":
            p.add_argument("--quotient", action="store_true", help="use the complex modulo cut-vertex graphs")
        p.set_defaults(func=func)

    p = sub.add_parser("enumerate")
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("graph", help="apply a core operation to a JSON graph")
    p.add_argument("tool", choices=("faces", "genus", "canon", "boundary", "expand"))
    p.add_argument("file", nargs="?", default=None)
    p.set_defaults(func=cmd_graph)

    p = sub.add_parser("xi-check")
    p.add_argument("--k", type=int, default=5)
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--samples", type=int, default=20)
    p.set_defaults(func=cmd_xi_check)

    p = sub.add_parser("bracket-check")
    p.add_argument("--max-degree", type=int, default=4)
    p.add_argument("--n", type=int, default=1)
    p.set_defaults(func=cmd_bracket_check)
    return ap


def make_config(args) -> RunConfig:
    data = {}
    if args.config:
        with open(args.config) as fh:
            data = json.load(fh)
    cfg = RunConfig.from_dict(data)
    if args.cap is not None:
        cfg.dart_cap = args.cap
    cfg.cache_dir = args.cache_dir or cfg.cache_dir or os.environ.get("RIBBON_CACHE_DIR")
    if args.format is not None:
        cfg.output = args.format
    if args.jobs is not None:
        cfg.jobs = args.jobs
    if args.seed is not None:
        cfg.seed = args.seed
    cfg.__post_init__()
    return cfg


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = make_config(args)
        return args.func(args, cfg)
    except (UsageError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except en.ResourceLimitError as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE


if __name__ == "__main__":
    sys.exit(main())
