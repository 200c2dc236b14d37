"""Write every zoo algebra as an algebra file into a directory."""

import argparse
from pathlib import Path

from coquasi.cli import emit_algebra
from coquasi.zoo import ZOO_NAMES, build


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("outdir", nargs="?", default="zoo_files")
    args = ap.parse_args()
    out = Path(args.outdir)
    out.mkdir(parents=True, exist_ok=True)
    for name in ZOO_NAMES:
        path = out / f"{name}.json"
        emit_algebra(build(name), path)
        print(path)


if __name__ == "__main__":
    main()
