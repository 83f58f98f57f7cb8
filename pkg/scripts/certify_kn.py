"""Run the K_n certificate pipeline for several odd n and time each run."""

import argparse
import time

from kfh.models import certify_kn


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("ns", nargs="*", type=int, default=[1, 3, 5])
    ap.add_argument("--no-search", action="store_true", help="skip the direct E_n (x) D_n^ vs B_n search")
    args = ap.parse_args()
    for n in args.ns:
        t0 = time.perf_counter()
        rep = certify_kn(n, direct_search=not args.no_search)
        dt = time.perf_counter() - t0
        print("\n".join(rep.lines()))
        print(f"elapsed={dt:.2f}s\n")


if __name__ == "__main__":
    main()
