"""Which constant shift makes the n-point cut-and-join equation hold in degree 0.

For each instance, print the mismatching degrees under both conventions and
the two shifts themselves.
"""
import argparse

from monotone_tr.cutjoin import tilde_shift, verify_npoint_cj_report


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--q", type=int, nargs="+", default=[1, 2])
    ap.add_argument("--degree", type=int, default=4)
    ap.add_argument("--level", type=int, default=2, help="largest 2g-2+n")
    args = ap.parse_args()
    print("q  g  n  shift(printed)  shift(consistent)  bad degrees printed / consistent")
    for q in args.q:
        for level in range(1, args.level + 1):
            for g in range((level + 1) // 2 + 1):
                n = level + 2 - 2 * g
                if n > 4:
                    continue
                printed = verify_npoint_cj_report(q, g, n, args.degree, convention="printed")
                consistent = verify_npoint_cj_report(q, g, n, args.degree)
                print(f"{q:<2} {g:<2} {n:<2} {str(tilde_shift(g, n, 'printed')):<15} "
                      f"{str(tilde_shift(g, n)):<18} {sorted(printed.mismatches)} / {sorted(consistent.mismatches)}")


if __name__ == "__main__":
    main()
