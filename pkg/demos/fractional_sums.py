"""Fractional sums at non-integer endpoints.

The summation-limit engine extends sum_{v=1}^{x} f(v) beyond integer x.
Two classical anchors make good first checks: summed logarithms give
log Gamma(x+1), and summed powers v^(-s) give the zeta closed form.
"""

import math

from fracsum import (
    frac_power,
    fractional_sum_limit,
    log_fn,
    log_gamma,
    power_fn,
)

print("sum of log v up to x, against log Gamma(x+1)")
for x in (0.5, 2.5, math.pi):
    res = fractional_sum_limit(log_fn(), x)
    closed = log_gamma(x + 1.0)
    print(f"  x = {x:8.5f}: engine {res.value.real:+.12f}   "
          f"log-gamma {closed.real:+.12f}   "
          f"defect {abs(res.value - closed):.2e}   "
          f"(n = {res.n_used}, est {res.err_estimate:.1e})")

print()
print("generalized harmonic numbers at fractional endpoints, s = 2")
for x in (0.5, 1.0, 1.5, 4.25):
    res = fractional_sum_limit(power_fn(2.0), x)
    closed = frac_power(x, 2.0)
    print(f"  x = {x:5.2f}: engine {res.value.real:+.12f}   "
          f"closed form {closed.real:+.12f}   defect {abs(res.value - closed):.2e}")

print()
print("the empty sum and a point below zero")
print(f"  x = 0   -> {fractional_sum_limit(power_fn(2.0), 0.0).value}")
print(f"  x = -1/2, s = 2 -> {frac_power(-0.5, 2.0):.12f}"
      f"   (equals (2 - 2^2) zeta(2) = -pi^2/3 = {-math.pi**2/3:.12f})")
