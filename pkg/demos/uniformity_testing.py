#!/usr/bin/env python3
"""Sphere-uniformity testing: the p-value bound in action.

A candidate sphere point X is tested by the KS distance of the coordinates of
sqrt(N) X from the standard Gaussian CDF; the three-term bound, optimized over
its free split, turns the observed statistic into a conservative p-value.

Three candidate families below:
  * genuine uniform sphere points            -> never rejected,
  * Gaussian vectors with variance 1.44 fed
    unnormalized (a 20% scale mismatch)      -> rejected hard at large N,
  * points forced into a half-space          -> rejected immediately.
"""

import math
import os
import tempfile

import numpy as np

from spherecdf import (RngStream, build_ecdf, gaussian_vector, ks_to_normal,
                       p_value_bound, sphere_sample)
from spherecdf.cli import main

N = 10_000


def stat_of(values):
    return ks_to_normal(build_ecdf(values)).statistic


print("=" * 72)
print(f"1. Library route, N = {N}")
print("=" * 72)

for i in range(3):
    s = sphere_sample(N, RngStream(seed=0, stream_id=i))
    d = stat_of(math.sqrt(N) * s.coords)
    print(f"genuine row {i}:        D={d:.5f}  p<={p_value_bound(N, d):.4g}")

for i in range(3):
    z = 1.2 * gaussian_vector(N, RngStream(seed=1, stream_id=i))
    d = stat_of(z)  # fed as an already-scaled sample, scale mismatch intact
    print(f"variance-1.44 row {i}:  D={d:.5f}  p<={p_value_bound(N, d):.4g}")

for i in range(3):
    s = sphere_sample(N, RngStream(seed=2, stream_id=i))
    skew = np.abs(s.coords)  # all coordinates nonnegative: not uniform
    d = stat_of(math.sqrt(N) * skew / np.linalg.norm(skew))
    print(f"half-space row {i}:     D={d:.5f}  p<={p_value_bound(N, d):.4g}")

print()
print("=" * 72)
print("2. The same thing through the command line")
print("=" * 72)

with tempfile.NamedTemporaryFile("w", suffix=".txt", delete=False) as fh:
    for i in range(3):
        fh.write(" ".join(repr(float(v))
                          for v in sphere_sample(1000, RngStream(3, i)).coords) + "\n")
    for i in range(2):
        fh.write(" ".join(repr(float(v))
                          for v in 1.2 * gaussian_vector(1000, RngStream(4, i))) + "\n")
    path = fh.name

print(f"$ spherecdf test-uniformity --input {path} --alpha 0.05")
main(["test-uniformity", "--input", path, "--alpha", "0.05"])
os.unlink(path)
print()
print("(rows 3-4 carry the norm warning: they were not unit vectors, so they")
print(" were taken as already-scaled samples; at N=1000 a 20% scale mismatch")
print(" sits near the detection edge of this conservative test, while at")
print(" N=10000 above it is rejected at p ~ 1e-9)")
