"""Command-line interface.

Exit codes: 0 success, 1 usage or input error, 2 negative result (no
coloring exists, coloring invalid, or an audit FAIL).
"""

from __future__ import annotations

import argparse
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import coloring as col
from . import graph as gr
from .construct import NoColoring, Trace, color_53, color_theorem5, detect_bad_blocks
from .cycles import color_cycle, cycle_order
from .errors import BadBlock, CapExceeded, SignedGraphError
from .exact import beta, chi_fb_exact, degree_demands, dumps_certificate, lp_cap, search_coloring

EXIT_OK, EXIT_USAGE, EXIT_NEGATIVE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """argparse with the usage exit code of this tool (1, not 2)."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _frac(x) -> str:
    return f"{x.numerator}/{x.denominator}"


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _vertex_list(text: str) -> list[int]:
    if not text:
        return []
    try:
        return [int(x) for x in text.split(",")]
    except ValueError:
        raise UsageError(f"bad vertex list {text!r}") from None


# -- commands --------------------------------------------------------------------

def cmd_gen(a) -> int:
    g = gr.generate(a.family, k=a.k, n=a.n, seed=a.seed, neg_prob=a.neg_prob)
    _emit(gr.dumps(g), a.output)
    return EXIT_OK


def cmd_balance(a) -> int:
    g = gr.read(a.graph)
    w = gr.balance_check(g)
    if w.balanced:
        s = [v for v in range(g.n) if w.switching[v] < 0]
        print("balanced")
        print("switch " + ",".join(map(str, s)))
    else:
        print("unbalanced")
        print("negative_cycle " + ",".join(map(str, w.neg_cycle)))
    return EXIT_OK


def cmd_switch(a) -> int:
    g = gr.read(a.graph)
    at = _vertex_list(a.at)
    if any(not 0 <= v < g.n for v in at):
        raise UsageError("switching set mentions a vertex outside the graph")
    _emit(gr.dumps(gr.switch_at(g, at)), a.output)
    return EXIT_OK


def cmd_blocks(a) -> int:
    g = gr.read(a.graph)
    dec = gr.block_decompose(g)
    for i, b in enumerate(dec.blocks):
        print(f"block {i} " + ",".join(map(str, sorted(b))))
    print("cut_vertices " + ",".join(map(str, sorted(dec.cut_vertices))))
    print("bridges " + " ".join(f"{u}-{v}" for u, v in sorted(dec.bridges)))
    for b, kind in detect_bad_blocks(g):
        print(f"bad_block {kind} " + ",".join(map(str, sorted(b))))
    return EXIT_OK


def _demands(a, g):
    if a.phi == "degree":
        return degree_demands(g), "degree"
    if a.q is None:
        raise UsageError("give --q or --phi degree")
    return a.q, a.q


def cmd_color(a) -> int:
    g = gr.read(a.graph)
    method = a.method or ("construct" if g.is_subcubic() else "exact")
    dem, label = _demands(a, g)
    trace = Trace() if a.trace else None
    f = None
    if method == "construct":
        if not g.is_subcubic():
            raise UsageError("construct needs a subcubic graph; use --method exact")
        if a.p != 5 or (label != "degree" and not 1 <= label <= 3):
            raise UsageError("construct handles p=5 with q<=3 or --phi degree; use --method exact")
        if label == "degree":
            try:
                f = color_theorem5(g, trace)
            except BadBlock as e:
                print(f"error: {e}", file=sys.stderr)
                return EXIT_USAGE
        else:
            f = color_53(g)
            if isinstance(f, NoColoring):
                print("no coloring: a component is switching equivalent to (K4,-)", file=sys.stderr)
                return EXIT_NEGATIVE
            f = col.restrict(f, label)
    elif method == "exact":
        f = search_coloring(g, a.p, dem)
    else:
        order = cycle_order(g)
        signs = [g.sign(order[i], order[(i + 1) % g.n]) for i in range(g.n)]
        if label == "degree":
            raise UsageError("cycle method takes --q")
        h = color_cycle(signs, a.p, label)
        if h is not None:
            sets = [None] * g.n
            for i, v in enumerate(order):
                sets[v] = h[i]
            f = col.Coloring(a.p, tuple(sets))
    if trace is not None:
        for line in trace.lines:
            print(line, file=sys.stderr)
    if f is None:
        print(f"no ({a.p},{label})-coloring exists", file=sys.stderr)
        return EXIT_NEGATIVE
    v = col.verify(g, f, dem)
    if not v:
        raise RuntimeError(f"produced coloring failed verification: {v.reason}")
    _emit(col.dumps(f), a.output)
    return EXIT_OK


def cmd_verify(a) -> int:
    g = gr.read(a.graph)
    f = col.read(a.coloring)
    if f.n != g.n:
        print(f"INVALID coloring covers {f.n} vertices, graph has {g.n}")
        return EXIT_NEGATIVE
    dem = degree_demands(g) if a.phi == "degree" else (a.q if a.q is not None else [len(s) for s in f.sets])
    v = col.verify(g, f, dem)
    print("VALID" if v else f"INVALID {v.reason}")
    return EXIT_OK if v else EXIT_NEGATIVE


def cmd_chifb(a) -> int:
    g = gr.read(a.graph)
    try:
        res = chi_fb_exact(g, lp_cap(a.cap))
    except CapExceeded as e:
        print(f"error: {e}; raise the limit with --cap or SG_LP_CAP", file=sys.stderr)
        return EXIT_USAGE
    print(f"chi_fb = {_frac(res.value)}")
    print(f"lower_bound n/beta = {_frac(res.lower_bound)}")
    if a.cert:
        Path(a.cert).write_text(dumps_certificate(res.certificate), encoding="utf-8")
    return EXIT_OK


def cmd_beta(a) -> int:
    g = gr.read(a.graph)
    b, wit = beta(g, max(lp_cap(a.cap), 20))
    print(f"beta = {b}")
    print("witness " + ",".join(map(str, sorted(wit))))
    return EXIT_OK


def cmd_audit(a) -> int:
    from .construct.audit import CLAIMS, audit_claims

    claims = CLAIMS if a.claim == "all" else (int(a.claim),)
    if any(c not in CLAIMS for c in claims):
        raise UsageError("--claim takes all or 2..8")
    reps = audit_claims(claims, workers=a.workers)
    rows = []
    print(f"{'claim':>5} {'kind':<18} {'sig':>4} {'shapes':>7} {'attempts':>9} {'uncov':>5} {'fail':>5}  status")
    for rep in reps:
        for k in rep.kinds:
            row = dict(claim=rep.claim, kind=k.kind, signatures=k.signatures, shapes=k.shapes,
                       attempts=k.attempts, uncovered=len(k.uncovered), failures=len(k.failures),
                       status="PASS" if k.passed else "FAIL")
            rows.append(row)
            print(f"{rep.claim:>5} {k.kind:<18} {k.signatures:>4} {k.shapes:>7} {k.attempts:>9} "
                  f"{len(k.uncovered):>5} {len(k.failures):>5}  {row['status']}")
            if a.verbose:
                for case, cnt in sorted(k.cases.items()):
                    print(f"        case {case}: {cnt}")
            for msg in k.uncovered[:3] + [m for m in k.failures if m][:3]:
                print(f"        {msg}")
    for rep in reps:
        print(f"claim {rep.claim}: {'PASS' if rep.passed else 'FAIL'} ({rep.shapes} shapes, {rep.attempts} instantiations)")
    if a.report:
        from .report import audit_report

        table, fig = audit_report(rows, a.report)
        print(f"wrote {table} and {fig}")
    return EXIT_OK if all(r.passed for r in reps) else EXIT_NEGATIVE


def _bench_one(job):
    n, seed, neg_prob, cap = job
    g = gr.random_subcubic(n, seed, neg_prob)
    rows = []
    t = time.perf_counter()
    f = color_53(g)
    ok = isinstance(f, NoColoring) or bool(col.verify(g, f, 3))
    row = dict(family="random_subcubic", n=g.n, m=g.m, seed=seed, method="construct", ok=ok,
               seconds=f"{time.perf_counter() - t:.6f}", chi_fb="")
    if g.n <= cap:
        t = time.perf_counter()
        res = chi_fb_exact(g, cap)
        rows.append(dict(row, method="chifb", ok=True, seconds=f"{time.perf_counter() - t:.6f}",
                         chi_fb=_frac(res.value)))
        row["chi_fb"] = _frac(res.value)
    return [row] + rows


def cmd_bench(a) -> int:
    if a.n_min < 1 or a.n_max < a.n_min or a.seeds < 1:
        raise UsageError("need 1 <= n-min <= n-max and seeds >= 1")
    cap = lp_cap(a.cap)
    jobs = [(n, s, a.neg_prob, cap) for n in range(a.n_min, a.n_max + 1, a.step) for s in range(a.seeds)]
    if a.workers == 1:
        results = [_bench_one(j) for j in jobs]
    else:
        with ProcessPoolExecutor(max_workers=a.workers) as ex:
            results = list(ex.map(_bench_one, jobs))
    rows = [r for rs in results for r in rs]
    bad = [r for r in rows if not r["ok"]]
    print(f"{len(jobs)} graphs, {len(bad)} failures")
    if a.report:
        from .report import bench_report

        table, fig = bench_report(rows, a.report)
        print(f"wrote {table} and {fig}")
    else:
        from .report import BENCH_FIELDS

        print(",".join(BENCH_FIELDS))
        for r in rows:
            print(",".join(str(r[k]) for k in BENCH_FIELDS))
    return EXIT_OK if not bad else EXIT_NEGATIVE


# -- parser ----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="signedcolor", description="Balanced colorings of signed graphs.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("gen", help="write a named or random signed graph")
    s.add_argument("family", choices=gr.FAMILIES)
    s.add_argument("--k", type=int, help="cycle length")
    s.add_argument("--n", type=int, help="vertex count for random_subcubic")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--neg-prob", type=float, default=0.5)
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_gen)

    s = sub.add_parser("balance", help="balance test with witness")
    s.add_argument("graph")
    s.set_defaults(func=cmd_balance)

    s = sub.add_parser("switch", help="switch at a vertex set")
    s.add_argument("graph")
    s.add_argument("--at", required=True, help="comma-separated vertices")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_switch)

    s = sub.add_parser("blocks", help="blocks, cut vertices, bridges and forbidden blocks")
    s.add_argument("graph")
    s.set_defaults(func=cmd_blocks)

    s = sub.add_parser("color", help="find a (p,q)- or (p,6-deg)-coloring")
    s.add_argument("graph")
    s.add_argument("--p", type=int, default=5)
    s.add_argument("--q", type=int)
    s.add_argument("--phi", choices=("degree",))
    s.add_argument("--method", choices=("construct", "exact", "cycle"))
    s.add_argument("--trace", action="store_true", help="print reduction steps to stderr")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_color)

    s = sub.add_parser("verify", help="check a coloring file")
    s.add_argument("graph")
    s.add_argument("coloring")
    s.add_argument("--q", type=int)
    s.add_argument("--phi", choices=("degree",))
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("chifb", help="exact fractional balanced chromatic number")
    s.add_argument("graph")
    s.add_argument("--cap", type=int, help="vertex cap (default SG_LP_CAP or 14)")
    s.add_argument("--cert", help="write the optimal cover here")
    s.set_defaults(func=cmd_chifb)

    s = sub.add_parser("beta", help="largest balanced vertex set")
    s.add_argument("graph")
    s.add_argument("--cap", type=int)
    s.set_defaults(func=cmd_beta)

    s = sub.add_parser("audit-claims", help="exhaustive check of the extension templates")
    s.add_argument("--claim", default="all")
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("--report", help="directory for audit.csv and audit.png")
    s.add_argument("-v", "--verbose", action="store_true", help="print per-case counts")
    s.set_defaults(func=cmd_audit)

    s = sub.add_parser("bench", help="time the (5,3) construction on random graphs")
    s.add_argument("--n-min", type=int, default=6)
    s.add_argument("--n-max", type=int, default=30)
    s.add_argument("--step", type=int, default=4)
    s.add_argument("--seeds", type=int, default=3)
    s.add_argument("--neg-prob", type=float, default=0.5)
    s.add_argument("--cap", type=int)
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("--report", help="directory for bench.csv and bench.png")
    s.set_defaults(func=cmd_bench)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    a = parser.parse_args(argv)
    if a.command in ("color", "verify") and a.q is not None and a.phi:
        parser.error("--q and --phi are exclusive")
    sys.setrecursionlimit(max(sys.getrecursionlimit(), 10000))
    try:
        return a.func(a)
    except (UsageError, SignedGraphError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
