"""The closed-form pulse and its complex-singularity geometry.

For gamma in (-1/9, 0) the planar pulse u0(x) = 3/(beta cosh x + 1) has a
quadruplet of simple poles at +-alpha +- i*pi; alpha = arccosh(1/beta)
controls the oscillation sin(alpha/eps) of the splitting. The second
derivative's zeros (+-a on the real axis, +-ib on the imaginary axis)
bound the steepest-descent geometry; the scan also reports the count
discrepancy against the claimed eight zeros per strip.
"""

from splitlab.model import geometry, soliton, u0pp_zero_scan

gamma = -0.1
geo = geometry(gamma)
print(f"beta    = {geo.beta.to_decimal()}")
print(f"alpha   = {geo.alpha.to_decimal()}")
print(f"pole    = {float(geo.x_plus.re):+.15f} {float(geo.x_plus.im):+.15f}i "
      f"(residue c = {float(geo.c_plus1):+.15f})")
print(f"a       = {float(geo.a):.15f}  (real-axis zeros of u0'')")
print(f"b       = {float(geo.b):.15f}  (imaginary-axis zeros, in (pi/2, pi))")

u0, u0p, u0pp = soliton(gamma, 0.0, "dd")
print(f"peak u0(0) = {u0.to_decimal()}")

scan = u0pp_zero_scan(gamma)
print(f"\nzero scan of u0'' in |Im x| <= pi: found {scan.found_count} "
      f"(claimed {scan.claimed_count}; matches: {scan.count_matches_claim})")
for z in scan.zeros:
    print(f"  {float(z.location.re):+.12f} {float(z.location.im):+.12f}i   "
          f"residual {z.residual:.1e}")
