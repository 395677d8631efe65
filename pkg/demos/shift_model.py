"""Chebyshev polynomials, the semicircle measure and the truncated shift."""

from gjs_cup.shift import (
    ShiftTruncation,
    chebyshev,
    inner_nu,
    inner_nu_quadrature,
    lemma_ri_scan,
    r_function_min,
    semicircle_moment,
)

print("moments:", [semicircle_moment(k) for k in range(9)])

for i in range(5):
    print(f"P_{i} =", list(chebyshev(i)))

# orthonormal against the semicircle, exactly and by quadrature
print("<P_3, P_3> =", inner_nu(chebyshev(3), chebyshev(3)), "quadrature", inner_nu_quadrature(chebyshev(3), chebyshev(3)))
print("<P_2, P_4> =", inner_nu(chebyshev(2), chebyshev(4)))

S = ShiftTruncation(6)
print("T on the first six basis vectors:\n", S.T)

# grid minima of R_I grow with I
for I in (1, 5, 10, 50):
    value, at = r_function_min(I, 2000)
    print(f"I={I}: min {float(value):.4f} at t={float(at):.4f}")

rep = lemma_ri_scan((4, 10, 100), 10_000, 500)
print("first I above each bound:", rep.data["I_star"])
