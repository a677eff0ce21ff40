#!/usr/bin/env python3
# Copyright 2026 The sbmk Authors.
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
"""Regenerates core/data/tw1_cdf.csv.

F1(s) = det(I - K) on L^2(0, inf) with K(x, y) = Ai(x + y + s), evaluated by
Gauss-Legendre (Nystrom) discretization of the truncated interval [0, L].

Usage: python3 tools/gen_tw1_table.py > core/data/tw1_cdf.csv
"""

import sys

import numpy as np
from scipy.special import airy

SCHEMA_VERSION = 1
X_MIN, X_MAX, STEP = -10.0, 12.0, 0.01
NODES = 160
UPPER = 30.0  # Ai(z) < 1e-30 for z > 20


def tw1_cdf(s, nodes=NODES):
    t, w = np.polynomial.legendre.leggauss(nodes)
    # Ai(x + y + s) is negligible once x + y + s > 20.
    length = max(UPPER - s, 4.0)
    x = 0.5 * length * (t + 1.0)
    w = 0.5 * length * w
    sw = np.sqrt(w)
    kernel = airy(x[:, None] + x[None, :] + s)[0]
    m = np.eye(nodes) - sw[:, None] * kernel * sw[None, :]
    sign, logdet = np.linalg.slogdet(m)
    return float(sign * np.exp(logdet))


def main():
    count = int(round((X_MAX - X_MIN) / STEP)) + 1
    out = sys.stdout
    out.write(f"# tw1_cdf schema_version={SCHEMA_VERSION} nodes={NODES}\n")
    out.write("x,cdf\n")
    for i in range(count):
        s = X_MIN + i * STEP
        f = min(max(tw1_cdf(s), 0.0), 1.0)
        out.write(f"{s:.2f},{f:.17g}\n")


if __name__ == "__main__":
    main()
