"""Wall time of the recursion for each (q, g, n) up to a given 2g-2+n."""
import argparse
import time

from monotone_tr.tr.omega import clear_cache, compute_omega


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--q", type=int, nargs="+", default=[1, 2, 3])
    ap.add_argument("--level", type=int, default=3, help="largest 2g-2+n")
    args = ap.parse_args()
    print("q  g  n  terms  pole  seconds")
    for q in args.q:
        clear_cache()
        for level in range(1, args.level + 1):
            for g in range((level + 1) // 2 + 1):
                n = level + 2 - 2 * g
                t0 = time.perf_counter()
                w = compute_omega(g, n, q)
                dt = time.perf_counter() - t0
                print(f"{q:<2} {g:<2} {n:<2} {len(w.num.terms):<6} {w.pole_orders[0]:<5} {dt:.2f}")


if __name__ == "__main__":
    main()
