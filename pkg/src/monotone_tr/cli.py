"""Command line front end: hurwitz | table | verify | omega.

Exit codes: 0 success or agreement, 1 verified disagreement, 2 usage error,
3 resource guard.  Reports go to stdout, diagnostics to stderr.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from .errors import CutoffExceeded, OrderGuard, SizeGuard, UnstableInput
from .harness import SUITES, Bounds, resolve_threads, run_suite, table_json, table_rows
from .hurwitz import count_connected, count_disconnected
from .kernel.rational import format_rational
from .partitions import Partition

EXIT_OK, EXIT_DISAGREE, EXIT_USAGE, EXIT_GUARD = 0, 1, 2, 3


def _int_list(text: str) -> list[int]:
    try:
        vals = [int(v) for v in text.replace(";", ",").split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")
    if not vals or any(v < 1 for v in vals):
        raise argparse.ArgumentTypeError("entries must be positive integers")
    return vals


def _partition(text: str) -> Partition:
    return Partition(tuple(_int_list(text)))


def _cases(text: str) -> tuple:
    out = []
    for chunk in text.split(";"):
        parts = chunk.split(",")
        if len(parts) != 3:
            raise argparse.ArgumentTypeError("cases look like q,g,n;q,g,n")
        out.append(tuple(int(p) for p in parts))
    return tuple(out)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="monotone-tr", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    h = sub.add_parser("hurwitz", help="one monotone orbifold Hurwitz number")
    h.add_argument("--q", type=int, required=True)
    h.add_argument("--g", type=int, required=True)
    h.add_argument("--mu", type=_partition, required=True, help="parts, e.g. 2,1,1")
    h.add_argument("--method", choices=("brute", "schur", "connected-log"), default="schur",
                   help="connected-log reads the number off the literal series log Z (always connected)")
    h.add_argument("--connected", action="store_true")

    t = sub.add_parser("table", help="connected and disconnected numbers up to a weight")
    t.add_argument("--q", type=int, required=True)
    t.add_argument("--gmax", type=int, default=1)
    t.add_argument("--mumax", type=int, default=4, help="largest |mu|")
    t.add_argument("--format", choices=("json", "csv"), default="csv")
    t.add_argument("--sample", type=float, default=0.1, help="fraction of rows confirmed by brute force")
    t.add_argument("--seed", type=int, default=0)
    t.add_argument("--threads", type=int)

    v = sub.add_parser("verify", help="run a verification suite, emit a JSON report")
    v.add_argument("suite", choices=SUITES + ("all",))
    v.add_argument("--q", type=_int_list, default=[1, 2, 3])
    v.add_argument("--gmax", type=int, default=1)
    v.add_argument("--nmax", type=int, default=3)
    v.add_argument("--mumax", type=int, default=5)
    v.add_argument("--weight", type=int, default=5)
    v.add_argument("--hbar", type=int, default=3)
    v.add_argument("--degree", type=int, default=6)
    v.add_argument("--level", type=int, default=3, help="loop equations for 2g-2+n <= level")
    v.add_argument("--convention", choices=("consistent", "printed"), default="consistent")
    v.add_argument("--cases", type=_cases, help="cut-and-join instances q,g,n;q,g,n")
    v.add_argument("--mutate", action="store_true", help="inject one fault; the suite must then disagree")
    v.add_argument("--timings", action="store_true", help="include wall times (breaks byte-identity)")
    v.add_argument("--threads", type=int)

    o = sub.add_parser("omega", help="dump omega_{g,n} as JSON")
    o.add_argument("--q", type=int, required=True)
    o.add_argument("--g", type=int, required=True)
    o.add_argument("--n", type=int, required=True)
    return p


def cmd_hurwitz(args) -> int:
    q, g, mu = args.q, args.g, args.mu
    if args.method == "brute":
        value = (count_connected if args.connected else count_disconnected)(g, mu, q)
    elif args.method == "schur":
        from .schur import hurwitz_schur

        value = hurwitz_schur(g, mu, q, args.connected)
    else:
        value = _connected_via_log(g, mu, q)
    print(format_rational(value))
    return EXIT_OK


def _connected_via_log(g, mu, q):
    from fractions import Fraction

    from .schur import build_partition_function, hbar_power, series_log

    k = hbar_power(g, mu, q)
    if k is None or k < 0:
        return Fraction(0)
    logZ = series_log(build_partition_function(q, mu.size, k))
    return mu.aut * logZ.get((mu, k), Fraction(0))


def cmd_table(args) -> int:
    if args.q < 1 or args.gmax < 0 or args.mumax < 1 or not 0 <= args.sample <= 1:
        print("error: need q >= 1, gmax >= 0, mumax >= 1, 0 <= sample <= 1", file=sys.stderr)
        return EXIT_USAGE
    rows = table_rows(args.q, args.gmax, args.mumax, args.sample, args.seed, resolve_threads(args.threads))
    if args.format == "json":
        sys.stdout.write(table_json(args.q, args.gmax, args.mumax, rows) + "\n")
    else:
        buf = io.StringIO()
        w = csv.writer(buf)  # RFC-4180: CRLF line ends, minimal quoting
        w.writerow(["q", "g", "mu", "connected", "disconnected"])
        for r in rows:
            w.writerow([args.q, r["g"], r["mu"].replace(",", ";"), r["connected"], r["disconnected"]])
        sys.stdout.write(buf.getvalue())
    bad = [r for r in rows if r["brute"] == "disagree"]
    for r in bad:
        print(f"brute force disagrees at g={r['g']} mu={r['mu']}", file=sys.stderr)
    return EXIT_DISAGREE if bad else EXIT_OK


def cmd_verify(args) -> int:
    b = Bounds(args.gmax, args.nmax, args.mumax, args.weight, args.hbar, args.degree, args.level, args.convention)
    if args.cases:
        b.cutjoin_cases = args.cases
    rep = run_suite(args.suite, args.q, b, mutate=args.mutate, workers=resolve_threads(args.threads))
    sys.stdout.write(rep.dumps(args.timings) + "\n")
    return EXIT_OK if rep.agree else EXIT_DISAGREE


def cmd_omega(args) -> int:
    from .tr.omega import SeedDifferential, compute_omega

    w = compute_omega(args.g, args.n, args.q)
    if isinstance(w, SeedDifferential):
        doc = {"g": w.g, "n": w.n, "q": w.q, "seed": w.tag}
    else:
        doc = w.to_json()
    sys.stdout.write(json.dumps(doc, sort_keys=True) + "\n")
    return EXIT_OK


COMMANDS = {"hurwitz": cmd_hurwitz, "table": cmd_table, "verify": cmd_verify, "omega": cmd_omega}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (SizeGuard, OrderGuard, CutoffExceeded) as exc:
        print(f"resource guard: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except (UnstableInput, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
