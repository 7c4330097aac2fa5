"""Phase portraits of the planar limit.

The eps -> 0 limit of the traveling-wave model is the planar system
u' = w, w' = u - u^2 - 2*gamma*u^3. For gamma > 0 the origin's saddle
carries two homoclinic loops (one on each side); for gamma in (-1/9, 0)
there is a single loop, given in closed form by the pulse u0. This script
emits orbit data for both cases and checks the emitted separatrix against
the closed form.
"""

import math

from splitlab.cli import main

for gamma, tag in ((1.0, "gamma_pos"), (-0.1, "gamma_neg")):
    out = f"portrait_{tag}.csv"
    code = main(["portrait", "--gamma", str(gamma), "--format", "csv",
                 "--out", out])
    assert code == 0
    print(f"gamma = {gamma}: wrote {out}")

# spot-check: the emitted separatrix samples the closed-form pulse
from splitlab.model import soliton

rows = [r.split(",") for r in open("portrait_gamma_neg.csv").read().splitlines()[1:]
        if r.startswith("separatrix")]
worst = 0.0
for _, t, u, w, _status in rows[::20]:
    u0, u0p, _ = soliton(-0.1, float(t), "dd")
    worst = max(worst, abs(float(u) - float(u0)), abs(float(w) - float(u0p)))
print(f"separatrix vs closed form: max deviation {worst:.2e} (should be <= 1e-10)")

try:
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, axes = plt.subplots(1, 2, figsize=(11, 4.5))
    for ax, tag, gamma in ((axes[0], "gamma_pos", 1.0), (axes[1], "gamma_neg", -0.1)):
        orbits = {}
        for line in open(f"portrait_{tag}.csv").read().splitlines()[1:]:
            name, t, u, w, status = line.split(",")
            if status != "ok":
                continue
            orbits.setdefault(name, []).append((float(t), float(u), float(w)))
        for name, pts in orbits.items():
            pts.sort()
            us = [p[1] for p in pts]
            ws = [p[2] for p in pts]
            if name == "separatrix":
                ax.plot(us, ws, "k", lw=2)
            else:
                ax.plot(us, ws, lw=0.6, alpha=0.7)
        ax.set_title(f"gamma = {gamma}")
        ax.set_xlabel("u")
        ax.set_ylabel("w")
        ax.set_xlim(-2.5, 4)
        ax.set_ylim(-2.5, 2.5)
    fig.tight_layout()
    fig.savefig("portraits.png", dpi=120)
    print("wrote portraits.png")
except ImportError:
    print("matplotlib not installed; CSV output only")
