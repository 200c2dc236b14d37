"""Certificate table for the zoo: a, W, σ, ω and pass/fail per algebra."""

import time

from coquasi.radford import certify
from coquasi.zoo import ZOO_NAMES, build


def main():
    for name in ZOO_NAMES:
        H = build(name)
        t0 = time.time()
        cert = certify(H)
        p = cert.payload(H.field)
        status = "PASS" if cert.ok else "FAIL"
        print(f"{name:10s} {status} {time.time() - t0:5.1f}s  a={p['a']}  sigma={p['sigma']}"
              + (f"  omega={p['omega']}" if "omega" in p else ""))
        for c in cert.report.failures():
            print(f"    FAIL {c.name} {c.witness}")


if __name__ == "__main__":
    main()
