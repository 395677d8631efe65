"""Cup-killed subspaces and coordinates in the cup-padding basis."""

from gjs_cup import inner
from gjs_cup.cups import ThetaBasis, check_cup_action, reconstruct, theta_coords, vspace, vn_dimension_by_rank
from gjs_cup.cups import cup_power

# vectors killed by capping at either end, grade by grade
for n in range(1, 5):
    vs = vspace(n)
    print(f"V_{n}: dim {vs.dim} (by rank: {vn_dimension_by_rank(n)}), norms {[str(c) for c in vs.norms]}")

# the labeled basis at level 4 is orthogonal within each grade
basis = ThetaBasis(4)
labels = basis.labels()
print(len(labels), "labels, e.g.", labels[:4])

# peel an element into coordinates and put it back together
v = vspace(2).vectors[0]
x = cup_power(1) * v + v * cup_power(1)
coords = theta_coords(x, basis)
for lab, c in sorted(coords.items(), key=str):
    print(" ", lab, c)
print("reconstructs:", reconstruct(coords, basis) == x)
print("<x, x> =", inner(x, x))

# how the cup acts on the labels
rep = check_cup_action(5)
print("cup action check:", rep.passed, "q_e0 coefficient:", rep.data["qe0_coefficient"]["left"])
