"""
Contact conformal transformations
=================================

Applies (u, v, w) transformations to Example 1, checks the formula for the
new F tensor, and shows which transformations keep the para-Sasaki-like
condition.
"""

import math

from parasasaki import ConformalData, apply_conformal, check_para_sasaki_like, example1, homothety
from parasasaki.jets import sin
from parasasaki.transformations import check_homothetic_laws, check_sssl, paraholomorphic_pair, verify_lemma_ff

s = example1(2).chart

fields = ConformalData(lambda X: 0.1 * X[1], lambda X: 0.2 * X[2], lambda X: 0.3 * X[0])
print("F-bar formula:", verify_lemma_ff(s, fields, points=16).verdict)

# u, v built from paraholomorphic data keep the structure para-Sasaki-like
u, v = paraholomorphic_pair(lambda a: 0.3 * sin(a[0]), lambda b: 0.1 * b[0] * b[1], 2)
ok, _ = check_sssl(s, ConformalData(u, v, 0.0), points=8)
print("paraholomorphic pair keeps the class:", ok)

ok, rep = check_sssl(s, ConformalData(lambda X: X[1], 0.0, 0.0), points=8)
first = next(d["name"] for d in rep.detail if d.get("verdict") == "fail")
print("u = x1 keeps the class:", ok, "(first failing condition:", first + ")")

# Homotheties: scalar curvature scales by exp(-2w) on Example 1
for w in (-0.5, 0.0, 0.5):
    scal = apply_conformal(example1(2).lie, homothety(0.2, 0.1, w)).at().loc.scalar
    print(f"w = {w:+.1f}: Scal' = {scal:.6f}, -4 exp(-2w) = {-4 * math.exp(-2 * w):.6f}")

rep = check_homothetic_laws(example1(2).lie, homothety(0.3, 0.2, 0.1))
for d in rep.detail:
    if "max_residual" in d:
        print(f"  {d['name']:24s} {d['max_residual']:.2e}  {d['verdict']}")
# constant w != 0 rescales xi, which leaves the class
print("homothety (0.3, 0.2, 0.1) stays para-Sasaki-like:",
      check_para_sasaki_like(apply_conformal(s, homothety(0.3, 0.2, 0.1)), points=4).verdict)
