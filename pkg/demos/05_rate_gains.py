"""Rate gains of the two-instance families over their classical
baselines, across the parameter grids the package sweeps.
"""

from fractions import Fraction

from pdmm import (
    best_classical_plan,
    build_low_privacy,
    build_qf_klt,
    build_qf_square,
    optimal_gasp_r,
    rate_report,
)


def row(plan, baseline):
    quantum = rate_report(plan, "quantum")
    classical = rate_report(baseline, "classical")
    ratio = quantum.rate / classical.rate
    return quantum, classical, ratio


print("K >= L = T = 2 family vs optimal gasp:")
for K in range(3, 9):
    q, c, gain = row(build_qf_klt(K, 2), optimal_gasp_r(K, 2, 2))
    print(f"  K={K}: N_q={q.n_servers:2d} N_c={c.n_servers:2d} "
          f"R_Q={q.rate} R_C={c.rate} gain={float(gain):.4f}")

print()
print("K = L = T = n^2 family vs optimal gasp:")
for n in range(2, 6):
    q, c, gain = row(build_qf_square(n), optimal_gasp_r(n * n, n * n, n * n))
    print(f"  n={n}: N_q={q.n_servers:4d} N_c={c.n_servers:4d} gain={float(gain):.4f}")

print()
print("low-privacy family (T = 2) vs best classical of any family:")
for L in range(4, 11):
    plan = build_low_privacy(L, L, 2)
    q, c, gain = row(plan, best_classical_plan(L, L, 2))
    capped = "<= 3/2" if gain <= Fraction(3, 2) else "ABOVE 3/2"
    print(f"  L={L:2d}: gain={float(gain):.4f} ({capped})")
