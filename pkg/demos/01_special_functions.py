"""
The two integrals behind every closed form
==========================================

g(alpha, theta) and h(alpha, delta, theta) carry all the geometry of the
road factors. For alpha = 2 both have arctan forms; for the urban exponent
1.68 they are evaluated by adaptive Gauss-Kronrod quadrature.
"""

import math

import numpy as np

from corner_sinr.specfun import g_func, g_inf, h_func, h_inf, h_plateau

# g grows from 0 towards the finite limit g_inf(alpha), slowly for alpha near 1.
for alpha in (1.68, 2.0, 4.0):
    vals = [g_func(alpha, t) for t in (0.5, 2.0, 10.0, 1e3, 1e6)]
    print(f"alpha={alpha:4}: g =", " ".join(f"{v:.6f}" for v in vals), f"-> {g_inf(alpha):.6f}")

# The quadrature path reproduces the arctan branch to rounding.
thetas = np.logspace(-3, 4, 50)
err = max(abs(g_func(2.0, t, closed_form=False) - math.atan(t)) for t in thetas)
print(f"\nmax |quadrature - arctan| over 50 points: {err:.1e}")

# h with delta = 0 collapses onto g evaluated at sqrt(theta).
print(f"h(1.68, 0, 9) = {h_func(1.68, 0.0, 9.0):.12f}")
print(f"2 g(1.68, 3)  = {2 * g_func(1.68, 3.0):.12f}")

# The infinite-road value of h is computed in one pass. Doubling theta until
# it stops changing gives the same number with far more work.
for delta in (0.08, 1.0):
    print(f"h_inf(1.68, {delta}) = {h_inf(1.68, delta):.10f}   plateau {h_plateau(1.68, delta):.10f}")
