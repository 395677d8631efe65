"""The inequality chain on a few random unit vectors, exactly and in floats."""

from fractions import Fraction

import numpy as np

from gjs_cup.aop import pythagoras_certificate, sample_certificate_vector

rng = np.random.default_rng(7)
N, I, eps = 16, 3, Fraction(1, 4)

for trial in range(3):
    xi = sample_certificate_vector(rng, N, I, eps)
    rep = pythagoras_certificate(xi, I, eps)
    d = rep.data
    print(f"trial {trial}: pass={rep.passed} conclusive={d['conclusive']} bound^2={float(d['bound_sq']):.4f}")
    for line in "abcd":
        print("   ", line, d[line]["pass"])

    num = pythagoras_certificate(xi.astype(float), I, float(eps), exact=False)
    print("    numeric:", num.passed)
