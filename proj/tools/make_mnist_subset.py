#!/usr/bin/env python3
# Copyright 2026 The qrc-robustness Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Converts a CSV MNIST sample (784 pixels then label per row) to gzipped IDX.

The mlxtend wheel ships such a file as mlxtend/data/data/mnist_5k.csv.gz.
Output is byte-reproducible (gzip mtime 0).
"""

import argparse
import gzip
import hashlib
import io
import struct
import sys
import zipfile


def read_rows(path):
    if path.endswith(".whl"):
        with zipfile.ZipFile(path) as z:
            raw = z.read("mlxtend/data/data/mnist_5k.csv.gz")
    else:
        with open(path, "rb") as f:
            raw = f.read()
    if raw[:2] == b"\x1f\x8b":
        raw = gzip.decompress(raw)
    rows = []
    for line in io.StringIO(raw.decode("ascii")):
        line = line.strip()
        if not line:
            continue
        vals = [int(round(float(v))) for v in line.split(",")]
        if len(vals) != 785:
            sys.exit("expected 785 columns, got %d" % len(vals))
        rows.append(vals)
    return rows


def write_gz(path, payload):
    with open(path, "wb") as f:
        with gzip.GzipFile(filename="", mode="wb", fileobj=f, mtime=0) as g:
            g.write(payload)
    with open(path, "rb") as f:
        return hashlib.sha256(f.read()).hexdigest()


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("source", help="mnist_5k.csv(.gz) or the mlxtend wheel")
    ap.add_argument("--images", required=True)
    ap.add_argument("--labels", required=True)
    args = ap.parse_args()

    rows = read_rows(args.source)
    n = len(rows)
    images = bytearray(struct.pack(">IIII", 0x803, n, 28, 28))
    labels = bytearray(struct.pack(">II", 0x801, n))
    for r in rows:
        images.extend(bytes(r[:784]))
        labels.append(r[784])
    print("images_sha256=%s" % write_gz(args.images, bytes(images)))
    print("labels_sha256=%s" % write_gz(args.labels, bytes(labels)))


if __name__ == "__main__":
    main()
