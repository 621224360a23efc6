"""
Hyperbolic extensions and Einstein metrics
==========================================

The extension of a para-holomorphic base by a hyperbolic rotation in t keeps
the connection of each slice, so the slice Ricci tensor does not move with t.
Here that shows up directly: the extension of the hyperbolic-space base is
Einstein on the t = 0 slice and nowhere else.
"""

import numpy as np

from parasasaki import einstein_fit, eta_einstein_fit, example3, example4, hyperbolic_extension
from parasasaki.curvature import check_slice_einstein, slice_data

base = example3(2)
print("slice Einstein with lambda = -4:", check_slice_einstein(base, -4.0).verdict)

s = hyperbolic_extension(base)
x = [0.1, -0.2, 0.15, 0.05]
print("\n   t    lambda     Scal   -16cosh2t-4")
for t in np.linspace(-1, 1, 5):
    lam, resid = einstein_fit(s, [t, *x])
    scal = s.at([t, *x]).loc.scalar
    print(f"{t:+5.2f}  {lam:8.4f} {scal:9.4f}  {-16 * np.cosh(2 * t) - 4:9.4f}")

# Example 4: a product of two spheres, eta-Einstein rather than Einstein
s4 = hyperbolic_extension(example4(2, 2.0, 1.0))
p = [0.0, 1.0, 1.3, 0.8, 2.1]
fit = eta_einstein_fit(s4, p)
print(f"\nexample4 extension at t=0: Ric = {fit.alpha:.4f} g + {fit.beta:.4f} g(.,phi.) + {fit.gamma:.4f} eta*eta")

# Scalar curvature splits into the slice part plus the constant -2n
for t in (-1.0, 0.0, 1.0):
    sd = slice_data(s4, [t, *p[1:]])
    print(f"t={t:+.0f}: Scal - Scal^h = {s4.at([t, *p[1:]]).loc.scalar - sd.scal:+.10f}")
