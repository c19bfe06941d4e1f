"""A tentative inner product from half-shift differences.

<f, g> = int_0^inf conj(D_half f) D_half g dx pairs functions vanishing at
0 and -1/2.  Since D_half x^[-s] decays like (1/2) x^(-s), the candidate
x^[-s] has finite norm exactly when Re(s) > 1/2.  The truncated norm and
the fitted log-log slope of the integrand show that split numerically.
"""

from fracsum import half_shift_norm

print(f"{'s':>12}  {'fit exponent':>12}  {'expect':>8}  truncated norm over growing T")
for s in (0.25 + 0j, 0.75 + 5j, 2.0 + 0j):
    norms = [half_shift_norm(s, T).truncated_norm_sq for T in (200.0, 400.0, 800.0)]
    res = half_shift_norm(s, 400.0)
    trend = "diverging" if norms[2] - norms[1] > norms[1] - norms[0] else "settling"
    print(f"{str(s):>12}  {res.decay_exponent:12.4f}  {-2 * s.real:8.2f}  "
          f"{norms[0]:.6f} -> {norms[1]:.6f} -> {norms[2]:.6f}  ({trend})")
