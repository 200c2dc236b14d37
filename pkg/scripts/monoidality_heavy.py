"""τ- and μ-monoidality on regular pairs for the algebras kept out of CI.

Expect minutes per algebra; τ-monoidality on Taft3 needs more memory than a laptop has.
"""

import argparse
import time

from coquasi.comod import regular_right
from coquasi.hopfmod import check_tau_monoidal
from coquasi.radford import check_mu_monoidal, prepare
from coquasi.zoo import build


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("names", nargs="*", default=["kS3", "Taft3"])
    ap.add_argument("--skip-tau", action="store_true")
    args = ap.parse_args()
    for name in args.names:
        H = build(name)
        M = regular_right(H)
        t0 = time.time()
        r = check_mu_monoidal(prepare(H), M, M)
        print(f"{name} mu_monoidal {'PASS' if r.ok else 'FAIL'} {time.time() - t0:.0f}s", flush=True)
        if not args.skip_tau:
            t0 = time.time()
            r = check_tau_monoidal(M, M)
            print(f"{name} tau_monoidal {'PASS' if r.ok else 'FAIL'} {time.time() - t0:.0f}s",
                  flush=True)


if __name__ == "__main__":
    main()
