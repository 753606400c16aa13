"""Compare x-expansions of the correlators with Schur-side numbers beyond the default grid."""
import argparse
import time

from monotone_tr.tr.expand import check_expansion


def _pair(text):
    g, n = text.split(",")
    return int(g), int(n)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--q", type=int, nargs="+", default=[1, 2])
    ap.add_argument("--cases", type=_pair, nargs="+", default=[(0, 5), (1, 3), (2, 2), (3, 1)],
                    help="g,n pairs")
    ap.add_argument("--max-part", type=int, default=4)
    args = ap.parse_args()
    failures = 0
    for q in args.q:
        for g, n in args.cases:
            t0 = time.perf_counter()
            rep = check_expansion(g, n, q, args.max_part)
            failures += len(rep.mismatches)
            status = "agree" if rep.agree else f"{len(rep.mismatches)} mismatches"
            print(f"q={q} (g,n)=({g},{n}) coefficients={rep.checked} {status} {time.perf_counter() - t0:.1f}s")
    raise SystemExit(1 if failures else 0)


if __name__ == "__main__":
    main()
