"""Extended-precision scalars: the three runtime modes.

Splitting magnitudes range from ~1e-7 at eps = 0.2 down to ~1e-41 at
eps = 0.028, so precision is a runtime choice: std (~16 digits),
dd (~31 digits, pair of floats), qd (~62 digits, four floats).
"""

from splitlab.extprec import Real, exp, pi, sqrt, mode_digits, mode_eps

for mode in ("std", "dd", "qd"):
    x = exp(-pi(mode) / Real.of("0.1", mode))
    print(f"{mode}: eps = {mode_eps(mode):.2e}, ~{mode_digits(mode)} digits")
    print(f"   exp(-pi/0.1) = {x.to_decimal()}")

# catastrophic-cancellation showcase: (1 + 1e-25) - 1 survives in qd only
one_plus = Real.of(1.0, "qd") + Real.of(1e-25, "qd")
print("\n(1 + 1e-25) - 1 in qd:", (one_plus - 1).to_decimal())
s2 = sqrt(Real.of(2, "qd"))
print("sqrt(2)^2 - 2 in qd:", (s2 * s2 - 2).to_decimal())
