# Copyright 2026 The ptnas Authors.
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
"""Kendall tau-b by explicit pair enumeration, cross-checked with scipy.

Prints the forced example and a few seeded random cases (with ties) whose
values are frozen in the C++ unit tests.
"""

import itertools
import random


def tau_b(x, y):
    conc = disc = tie_x = tie_y = 0
    for i, j in itertools.combinations(range(len(x)), 2):
        dx = (x[i] > x[j]) - (x[i] < x[j])
        dy = (y[i] > y[j]) - (y[i] < y[j])
        tie_x += dx == 0
        tie_y += dy == 0
        if dx and dy:
            if dx == dy:
                conc += 1
            else:
                disc += 1
    n0 = len(x) * (len(x) - 1) // 2
    return (conc - disc) / ((n0 - tie_x) * (n0 - tie_y)) ** 0.5


def cases():
    yield "forced", [1, 3, 2, 4], [1, 2, 3, 4]
    rng = random.Random(7)
    for k in range(3):
        n = 12 + 4 * k
        yield f"random{k}", [rng.randint(0, 5) for _ in range(n)], [rng.randint(0, 6) for _ in range(n)]


def main():
    try:
        from scipy.stats import kendalltau
    except ImportError:
        kendalltau = None
    for name, x, y in cases():
        t = tau_b(x, y)
        if kendalltau is not None:
            ref = kendalltau(x, y).statistic if hasattr(kendalltau(x, y), "statistic") else kendalltau(x, y)[0]
            assert abs(ref - t) < 1e-12, (name, ref, t)
        print(name, x, y, repr(t))


if __name__ == "__main__":
    main()
