"""Tour of the distribution layer the tests are built on.

Everything below is computed from erf/lgamma-based continued fractions
and series; no statistics package is imported.
"""

import math

from stattree import (
    chi_square_cdf,
    f_cdf,
    regularized_incomplete_beta,
    std_normal_cdf,
    std_normal_quantile,
    student_t_cdf,
    studentized_range_cdf,
)

print("standard normal:")
for z in (-1.959963985, 0.0, 1.644853627):
    print(f"  Phi({z:+.4f}) = {std_normal_cdf(z):.6f}")
print(f"  quantile(0.975) = {std_normal_quantile(0.975):.9f}")

# round trip: quantile inverts the CDF to high accuracy
worst = max(
    abs(std_normal_cdf(std_normal_quantile(p)) - p)
    for p in (0.001, 0.025, 0.5, 0.975, 0.999)
)
print(f"  CDF(quantile(p)) round-trip worst error: {worst:.2e}")
print()

print("student t, chi-square, F:")
print(f"  P(T_14 <= 2.145)  = {student_t_cdf(2.145, 14):.6f}  (~0.975)")
print(f"  P(X2_3 <= 7.815)  = {chi_square_cdf(7.815, 3):.6f}  (~0.95)")
print(f"  P(F_2,13 <= 3.81) = {f_cdf(3.81, 2, 13):.6f}  (~0.95)")
print()

# the t and F families are linked: F(1, df) is the square of t(df)
t, df = 2.5, 9
lhs = f_cdf(t * t, 1, df)
rhs = 2.0 * student_t_cdf(t, df) - 1.0
print(f"F(1,{df}) vs t({df})^2 identity gap: {abs(lhs - rhs):.2e}")

# incomplete beta is the workhorse behind t and F
print(f"I_0.5(2, 3) = {regularized_incomplete_beta(2.0, 3.0, 0.5):.6f} "
      f"(exact {11 / 16})")
print()

# studentized range drives the Tukey-Kramer comparisons; at k=2 it
# collapses to a folded t
q, df = 3.0, 10
print(f"P(Q_3,10 <= 3.0) = {studentized_range_cdf(q, 3, df):.6f}")
folded = 2.0 * student_t_cdf(q / math.sqrt(2.0), df) - 1.0
gap = abs(studentized_range_cdf(q, 2, df) - folded)
print(f"k=2 reduction gap vs folded t: {gap:.2e}")
