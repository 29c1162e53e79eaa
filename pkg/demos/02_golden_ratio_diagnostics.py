"""Golden-ratio limits of the exponential-seed family.

Four ratios of consecutive-index quantities all converge to the golden ratio
(or its square): maximum density M_n/M_{n+1}, mode x*_{n+1}/x*_n, mean
E_{n+1}/E_n, and variance V_{n+1}/V_n. The table shows the geometric rate at
which each approaches its limit.
"""

from fsrv.fib_core import PHI
from fsrv.marginal import mode_exponential, ratio_diagnostics

print(f"golden ratio  phi   = {PHI:.12f}")
print(f"              phi^2 = {PHI * PHI:.12f}\n")

print(f"{'n':>3} {'M_n/M_n+1':>14} {'x*_n+1/x*_n':>14} {'E_n+1/E_n':>14} "
      f"{'V_n+1/V_n':>14} {'|mean-phi|':>11}")
for row in ratio_diagnostics(3, 24):
    print(f"{row.n:3d} {row.max_ratio:14.10f} {row.mode_ratio:14.10f} "
          f"{row.mean_ratio:14.10f} {row.var_ratio:14.10f} "
          f"{abs(row.mean_ratio - PHI):11.2e}")

print("\nmodes and maxima behind the first column:")
for n in range(3, 9):
    x_star, peak = mode_exponential(n)
    print(f"  member {n}: mode {x_star:10.6f}   max density {peak:.6f}")
