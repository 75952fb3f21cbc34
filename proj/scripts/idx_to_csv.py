#!/usr/bin/env python3
"""Convert MNIST-style IDX image files to a point-cloud CSV for `betaot`.

Pixels are written raw (0-255), flattened row-major, one image per line.
No normalisation is applied. Download the dataset yourself; this only converts.

    idx_to_csv.py train-images-idx3-ubyte.gz out.csv \
        --labels train-labels-idx1-ubyte.gz --keep 0,1 --count 1000 --seed 0
"""

import argparse
import gzip
import random
import struct
import sys


def _open(path):
    return gzip.open(path, "rb") if path.endswith(".gz") else open(path, "rb")


def read_idx(path):
    with _open(path) as f:
        zero, dtype, ndim = struct.unpack(">HBB", f.read(4))
        if zero != 0 or dtype != 0x08:
            raise ValueError(f"{path}: not an unsigned-byte IDX file")
        dims = struct.unpack(">" + "I" * ndim, f.read(4 * ndim))
        data = f.read()
    item = 1
    for d in dims[1:]:
        item *= d
    if len(data) != dims[0] * item:
        raise ValueError(f"{path}: truncated ({len(data)} bytes, expected {dims[0] * item})")
    return [data[k * item:(k + 1) * item] for k in range(dims[0])]


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("images")
    ap.add_argument("out")
    ap.add_argument("--labels", help="IDX label file, required for --keep")
    ap.add_argument("--keep", help="comma-separated labels to keep")
    ap.add_argument("--count", type=int, help="random subset of this size")
    ap.add_argument("--seed", type=int, default=0)
    a = ap.parse_args(argv)

    images = read_idx(a.images)
    index = list(range(len(images)))
    if a.keep:
        if not a.labels:
            ap.error("--keep needs --labels")
        labels = [lab[0] for lab in read_idx(a.labels)]
        wanted = {int(x) for x in a.keep.split(",")}
        index = [k for k in index if labels[k] in wanted]
    if a.count is not None:
        if a.count > len(index):
            ap.error(f"--count {a.count} exceeds the {len(index)} available images")
        index = random.Random(a.seed).sample(index, a.count)

    width = len(images[0]) if images else 0
    with open(a.out, "w") as out:
        out.write(",".join(f"x{d}" for d in range(width)) + "\n")
        for k in index:
            out.write(",".join(str(b) for b in images[k]) + "\n")
    print(f"wrote {len(index)} x {width} to {a.out}", file=sys.stderr)


if __name__ == "__main__":
    main()
