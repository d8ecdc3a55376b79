"""Entropy of the bounded-drift languages, against closed forms.

Words over {0, 1} act as ±1 increments on a height level; bounding the
level's excursion by M cuts the full shift down to a subshift whose
entropy is log of the largest eigenvalue of a path-graph adjacency
matrix.  That eigenvalue has the closed form 2·cos(pi / (2M + 2)), so
the computed ladder can be checked against an independent oracle — and
it climbs to log 2 without ever reaching it.
"""

import math

from pam import block_entropy, sigma_entropy, word_count

LOG2 = math.log(2.0)

print("full-shift block entropy (central binomial estimate):")
for n in (16, 128, 1024):
    h = block_entropy(n)
    print(f"  n = {n:5d}: {h:.6f} (gap to log 2: {LOG2 - h:.2e})")
print()

print(" M  entropy      closed form  difference   gap to log 2")
for m in (1, 2, 4, 8, 16, 32, 64):
    computed = sigma_entropy(m)
    oracle = math.log(2.0 * math.cos(math.pi / (2 * m + 2)))
    print(
        f"{m:3d}  {computed:.9f}  {oracle:.9f}  {abs(computed - oracle):.1e}"
        f"   {LOG2 - computed:.2e}"
    )
print()

print("admissible word counts double more slowly when M is small:")
header = ["n"] + [f"M={m}" for m in (1, 2, 3, 4)] + ["2^n"]
print("\t".join(header))
for n in (4, 8, 12, 16):
    row = [str(n)] + [str(word_count(m, n)) for m in (1, 2, 3, 4)] + [str(2**n)]
    print("\t".join(row))
