"""The operator R = Xp + pX applied to the fractional power sums.

Everything is computed numerically: X runs the summation limit, p runs
finite differences where no analytic derivative is available.  The result
is compared against the closed-form image

    R x^[-s] = i(2s - 1) x^[-s] - i(s - 1) zeta(s).

The i(2s-1) coefficient is the would-be eigenvalue; the constant term is
the obstruction, and it vanishes exactly when zeta(s) = 0.
"""

import numpy as np

from fracsum import (
    DEFAULT_OPERATOR,
    apply_R,
    eigenvalue_of,
    frac_power_fn,
    riemann_zeta,
    sin_2pi_fn,
)

s = 0.8 + 0j
f = frac_power_fn(s)
rf = apply_R(f, DEFAULT_OPERATOR)
lam = eigenvalue_of(s)
zs = riemann_zeta(s)

print(f"s = {s},  lambda = i(2s-1) = {lam},  zeta(s) = {zs:.6f}")
print(f"{'x':>6}  {'R f (numeric)':>28}  {'closed form':>28}  defect")
for x in (0.25, 0.5, 1.0, 2.5, 5.0):
    numeric = complex(rf(x))
    closed = lam * complex(f(x)) - 1j * (s - 1.0) * zs
    print(f"{x:6.2f}  {numeric:28.10f}  {closed:28.10f}  {abs(numeric - closed):.2e}")

print()
print("functions with vanishing forward difference are annihilated:")
r_sin = apply_R(sin_2pi_fn(), DEFAULT_OPERATOR)
grid = np.array([0.25, 1.5, 5.0])
print(f"  sup |R sin(2 pi x)| on {grid.tolist()} = "
      f"{float(np.abs(r_sin(grid)).max()):.2e}")
