"""Eigenvalues of R under the boundary condition f(0) = 0.

i(2s - 1) is an eigenvalue exactly when zeta(s) = 0, and it is real exactly
when Re(s) = 1/2.  Scanning the critical line therefore turns zeta zeros
into a list of real eigenvalues -2t; any zero off the line would show up
here as a complex one.
"""

from fracsum import eigen_residual, find_critical_zeros

zeros = find_critical_zeros(0.0, 30.0)
print(f"critical-line zeros with t < 30: {len(zeros)}")
print(f"{'t':>16}  {'|zeta(1/2+it)|':>14}  {'lambda':>22}  real?  "
      f"{'|(s-1)zeta(s)|':>14}  {'|f(-1/2)|':>10}")
for z in zeros:
    rep = eigen_residual(0.5 + 1j * z.t, include_numeric=False)
    print(f"{z.t:16.9f}  {z.residual:14.2e}  {rep.lam:22.9f}  "
          f"{str(rep.lambda_is_real):>5}  {rep.analytic_residual:14.2e}  "
          f"{abs(rep.boundary_fhalf):10.2e}")

print()
print("an off-line point for contrast:")
rep = eigen_residual(0.7 + 14.13j, include_numeric=False)
print(f"  s = {rep.s}: lambda = {rep.lam}, Im lambda = {rep.lam.imag}, "
      f"residual = {rep.analytic_residual:.3f}")
