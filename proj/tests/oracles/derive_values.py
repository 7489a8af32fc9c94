# Copyright 2026 The Frontscan Authors
# SPDX-License-Identifier: Apache-2.0

"""Independent oracle computations for frozen expected values in the C++ tests."""
import math
from fractions import Fraction

U = 10**18

# Bloom sizing
for n, p in [(10**6, 0.01), (1, 0.5)]:
    m = -n * math.log(p) / (math.log(2) ** 2)
    k = m / n * math.log(2)
    print(f"bloom n={n} p={p}: m_raw={m!r} m={math.ceil(m)} k_raw={k!r}")

# CPMM, floor semantics: dy = y - ceil(k / (x + dx))
def swap(x, y, dx):
    k = x * y
    new_y = -(-k // (x + dx))
    return y - new_y, x + dx, new_y

x, y = 1000 * U, 1000 * U
dy1, x, y = swap(x, y, 10 * U)
print("dy(10 ETH) =", dy1, "closed form =", Fraction(1000 * U) - Fraction(10**6 * U * U, 1010 * U))
dyv, x, y = swap(x, y, 50 * U)
print("victim dy =", dyv)
dx_out, y, x = swap(y, x, dy1)
print("attacker proceeds =", dx_out, "profit pre-fee =", dx_out - 10 * U)
# exact real-valued
xr, yr = Fraction(1000), Fraction(1000)
k = xr * yr
d1 = yr - k / (xr + 10); xr += 10; yr -= d1
dv = yr - k / (xr + 50); xr += 50; yr -= dv
out = xr - k / (yr + d1)
print("real proceeds =", float(out), "real profit =", float(out - 10))

# summarize: population std, linear-interpolated quartiles
def q(v, f):
    v = sorted(v); pos = f * (len(v) - 1); lo = math.floor(pos); hi = math.ceil(pos)
    return v[lo] + (v[hi] - v[lo]) * (pos - lo)
for vals in ([5], [1, 2, 3, 4], [0, 0, 0, 100]):
    mean = sum(vals) / len(vals)
    std = math.sqrt(sum((v - mean) ** 2 for v in vals) / len(vals))
    print(vals, mean, std, [q(vals, f) for f in (0.25, 0.5, 0.75)])

# wei_to_usd
print("5e17 @ 123.46 =", Fraction(5 * 10**17, U) * Fraction(12346, 100))
