# Copyright 2026 The rivetlite Authors
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

"""Writes the bundled CSV datasets used by `rivetlite train`.

iris.csv    classes 0 and 1 of the Iris data, 4 raw features
digits36.csv  8x8 handwritten digits 3 (label 0) and 6 (label 1),
              mean-pooled over 2x2 blocks to 16 features
"""
import argparse
import csv
import pathlib

import numpy as np
from sklearn.datasets import load_digits, load_iris


def write(path, labels, rows):
    with open(path, "w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["label"] + [f"f{i}" for i in range(rows.shape[1])])
        for y, r in zip(labels, rows):
            w.writerow([int(y)] + [f"{v:.6g}" for v in r])


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default=str(pathlib.Path(__file__).resolve().parents[2] / "data" / "datasets"))
    out = pathlib.Path(ap.parse_args().out)
    out.mkdir(parents=True, exist_ok=True)

    iris = load_iris()
    keep = iris.target < 2
    write(out / "iris.csv", iris.target[keep], iris.data[keep])

    digits = load_digits()
    keep = (digits.target == 3) | (digits.target == 6)
    images = digits.images[keep].reshape(-1, 4, 2, 4, 2).mean(axis=(2, 4)).reshape(-1, 16)
    write(out / "digits36.csv", (digits.target[keep] == 6).astype(int), images)


if __name__ == "__main__":
    main()
