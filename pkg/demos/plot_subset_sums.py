"""
Subset sums, zero-sum-free sets and Olson constants
===================================================
"""

from zerosum.engine import Group, balandraud_check, find_zero_sum_subset, olson_constant, sigma_sets
from zerosum.verifier import grt_report

line = Group.line(7)
sigma, star = sigma_sets([1, 2, 3], line)
print("Sigma*({1,2,3}) in F_7:", sorted(star))

plane = Group.plane(3)
w = find_zero_sum_subset([(1, 1), (1, 2), (1, 0), (0, 1)], plane)
print("zero-sum subset positions:", w.positions)

# largest zero-sum-free sets, found by branch and bound
for p in (3, 5, 7, 11, 13):
    res = olson_constant(Group.line(p))
    print(f"OL(F_{p}) = {res.olson_constant}  e.g. {res.extremal_set}  ({res.nodes_visited} nodes)")

for p in (3, 5):
    r = grt_report(p)
    print(f"p={p}: OL(F_p^2) = {r.lhs}, p + OL(F_p) - 1 = {r.rhs}")

rep = balandraud_check(11)
print("p=11 sets without opposite pairs:", rep.total_sets, "violations:", len(rep.violations))
print("tight examples:", rep.tight_examples[:2])
