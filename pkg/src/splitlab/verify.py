"""Self-contained invariant suite (no external oracles needed at runtime).

Each check exercises one module's contract through identities the code
must satisfy regardless of inputs: algebraic identities, closed-form
shadowing, conservation audits, and exact rational laws. The CLI's verify
subcommand runs everything here and exits nonzero on any failure.
"""

from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass

from . import extprec as xp
from .extprec import Real, mode_eps
from .inner import inner_series, psi_series, series_diagnostics
from .integrator import (FastOscField, Guard, ModelField, PlanarField,
                         StepPolicy, flow_time, flow_to_section, step)
from .manifold import (involute, recurrence_residuals, seed_state,
                       unstable_series)
from .model import (Params, State, eigenvalues, first_integral, geometry,
                    soliton, u0pp_zero_scan, vector_field)
from .splitting import shoot

__all__ = ["CheckResult", "run_all"]


@dataclass(frozen=True)
class CheckResult:
    name: str
    ok: bool
    detail: str
    elapsed: float


def _check(name, fn, results):
    t0 = time.time()
    try:
        ok, detail = fn()
    except Exception as e:  # noqa: BLE001 - any failure is a red check
        ok, detail = False, f"exception: {type(e).__name__}: {e}"
    results.append(CheckResult(name, bool(ok), str(detail), time.time() - t0))


def _extprec_roundtrips():
    rng = random.Random(1)
    worst = 0.0
    for _ in range(300):
        x = Real.of(10 ** rng.uniform(math.log10(1.001), 4), "dd")
        y = xp.cosh(xp.arccosh(x))
        worst = max(worst, abs(float((y - x) / x)) / mode_eps("dd"))
    if worst > 16:
        return False, f"cosh(arccosh(x)) off by {worst:.1f} ulp"
    worst2 = 0.0
    for _ in range(300):
        x = Real.of(rng.uniform(-50, 50), "dd")
        s, c = xp.sincos(x)
        worst2 = max(worst2, abs(float(s * s + c * c - 1)) / mode_eps("dd"))
    if worst2 > 16:
        return False, f"sin^2+cos^2-1 off by {worst2:.1f} ulp"
    return True, f"roundtrip {worst:.2f} ulp, pythagorean {worst2:.2f} ulp"


def _extprec_mode_agreement():
    rng = random.Random(2)
    fns = ("exp", "log", "sin", "cos", "sinh", "cosh", "sqrt", "arccos", "arccosh")
    worst = 0.0
    for name in fns:
        for _ in range(100):
            if name in ("exp", "sinh", "cosh"):
                v = rng.uniform(-20, 20)
            elif name in ("sin", "cos"):
                v = rng.uniform(-50, 50)
            elif name == "arccos":
                v = rng.uniform(-1, 1)
            elif name == "arccosh":
                v = 1 + 10 ** rng.uniform(-2, 3)
            else:
                v = 10 ** rng.uniform(-8, 8)
            a = xp.elementary(name, Real.of(v, "dd"))
            b = xp.elementary(name, Real.of(v, "qd"))
            d = abs(float(Real.of(a, "qd") - b))
            scale = max(abs(float(b)), 1e-300)
            worst = max(worst, d / scale)
    # double-pair carries ~31 digits; agreement must reach 15 digits easily
    if worst > 1e-15:
        return False, f"dd vs qd elementary disagreement {worst:.2e}"
    return True, f"dd vs qd agree to {worst:.2e} relative"


def _model_soliton_residual():
    rng = random.Random(3)
    worst = 0.0
    for _ in range(10):
        g = rng.uniform(-1 / 9 + 1e-3, -1e-3)
        gamma = Real.of(g, "dd")
        for x in [i * 0.5 for i in range(-20, 21)]:
            u0, u0p, u0pp = soliton(g, x, "dd")
            r = u0pp - u0 + u0 * u0 + 2 * gamma * (u0 * u0 * u0)
            worst = max(worst, abs(float(r)))
    return worst <= 1e-25, f"max pulse residual {worst:.3e} (tol 1e-25)"


def _model_geometry_identities():
    geo = geometry(-0.1)
    r1 = abs(float(xp.cosh(geo.alpha) * geo.beta - 1)) / mode_eps("dd")
    r2 = abs(float(geo.g_plus * geo.g_minus + 2)) / mode_eps("dd")
    ok = r1 <= 16 and r2 <= 16
    if not (math.pi / 2 < float(geo.b) < math.pi):
        return False, f"b = {float(geo.b)} outside (pi/2, pi)"
    if not float(geo.a) > float(geo.alpha):
        return False, "a <= alpha"
    return ok, f"cosh(alpha)*beta-1: {r1:.2f} ulp, g+*g- + 2: {r2:.2f} ulp"


def _model_eigen_residuals():
    p = Params.make(-0.1, 0.5)
    eps2 = float(p.eps) ** 2
    worst = 0.0
    for lam in eigenvalues(p):
        z = complex(lam)
        r = abs(eps2 * z ** 4 + (1 - eps2) * z ** 2 - 1)
        worst = max(worst, r)
    return worst <= 16 * mode_eps("std"), f"max char-poly residual {worst:.2e}"


def _model_energy_gradient():
    rng = random.Random(4)
    p = Params.make(-0.1, 0.1)
    worst = 0.0
    for _ in range(200):
        s = State.make(rng.uniform(-2, 2), rng.uniform(-2, 2),
                       rng.uniform(-0.5, 0.5), rng.uniform(-2, 2), "dd")
        d = vector_field(p, s)
        # directional derivative of G along the field via central dd difference
        t = Real.of(2.0 ** -40, "dd")
        sp = State(*(c + t * dc for c, dc in zip(s.components(), d.components())))
        sm = State(*(c - t * dc for c, dc in zip(s.components(), d.components())))
        dg = float((first_integral(p, sp) - first_integral(p, sm)) / (2 * t))
        worst = max(worst, abs(dg))
    # central difference truncation ~ t^2 * |G'''| keeps this near 1e-21
    return worst <= 1e-18, f"max <grad G, field> ~ {worst:.2e}"


def _model_zero_scan():
    scan = u0pp_zero_scan(-0.1)
    geo = geometry(-0.1)
    locs = sorted((round(z.location.re.hi, 9), round(z.location.im.hi, 9))
                  for z in scan.zeros)
    want = sorted([(round(float(geo.a), 9), 0.0), (round(-float(geo.a), 9), 0.0),
                   (0.0, round(float(geo.b), 9)), (0.0, round(-float(geo.b), 9))])
    ok = (scan.found_count == 4 and not scan.count_matches_claim
          and all(abs(a[0] - b[0]) < 1e-8 and abs(a[1] - b[1]) < 1e-8
                  for a, b in zip(locs, want))
          and all(z.residual <= 1e-20 for z in scan.zeros))
    return ok, (f"found {scan.found_count} zeros (claimed {scan.claimed_count}), "
                f"max residual {max(z.residual for z in scan.zeros):.1e}")


def _integrator_planar_shadow():
    g = -0.1
    fld = PlanarField(g, "dd")
    u0, u0p, _ = soliton(g, -8.0, "dd")
    pol = StepPolicy(h=0.01, method_order=20)
    end = flow_time(fld, (u0, u0p), 16.0, pol)
    e0, e1, _ = soliton(g, 8.0, "dd")
    err = max(abs(float(end[0] - e0)), abs(float(end[1] - e1)))
    return err <= 1e-20, f"closed-form shadow error {err:.2e} over t=16"


def _integrator_osc_return():
    eps = 0.1
    fld = FastOscField(eps, "dd")
    pol = StepPolicy(h=eps / 50.0, method_order=20)
    v0 = 0.37
    T = xp.two_pi("dd") * Real.of(eps, "dd")
    end = flow_time(fld, (Real.of(v0, "dd"), Real.zero("dd")), T, pol)
    err = max(abs(float(end[0]) - v0), abs(float(end[1])) * eps)
    return err <= 1e-20 * v0, f"period return error {err:.2e}"


def _integrator_order_ratio():
    p = Params.make(-0.1, 0.3)
    fld = ModelField(p)
    s = State.make(0.4, 0.3, 0.01, -0.2, "dd")
    order = 8
    errs = []
    for h in (0.012, 0.006):
        big, _ = step(fld, s, StepPolicy(h=h, method_order=order))
        fine1, _ = step(fld, s, StepPolicy(h=h / 2, method_order=order))
        fine2, _ = step(fld, fine1, StepPolicy(h=h / 2, method_order=order))
        errs.append(max(abs(float(a - b)) for a, b in
                        zip(big.components(), fine2.components())))
    ratio = errs[0] / errs[1]
    ok = 2 ** (order + 1) / 3 <= ratio <= 3 * 2 ** (order + 1)
    return ok, f"halving ratio {ratio:.1f} vs 2^{order + 1} = {2 ** (order + 1)}"


def _manifold_recurrence():
    p = Params.make(-0.1, 0.1)
    ser = unstable_series(p, 40)
    worst = max(max(r1, r2) for _, r1, r2 in recurrence_residuals(ser))
    return worst <= 4.0, f"max recurrence residual {worst:.2f} ulp (tol 4)"


def _manifold_involution():
    rng = random.Random(5)
    p = Params.make(-0.1, 0.1)
    for _ in range(200):
        s = State.make(rng.uniform(-2, 2), rng.uniform(-2, 2),
                       rng.uniform(-0.5, 0.5), rng.uniform(-2, 2), "dd")
        si = involute(s)
        if involute(si) != s:
            return False, "involution not an exact involution"
        dG = abs(float(first_integral(p, s) - first_integral(p, si)))
        scale = max(abs(float(first_integral(p, s))), 1.0)
        if dG > 16 * mode_eps("dd") * scale:
            return False, f"G not involution-even: {dG:.2e}"
    return True, "involution exact; G involution-even on 200 states"


def _splitting_shot_audit():
    p = Params.make(-0.1, 0.1)
    rec = shoot(p)
    if rec.G_drift > p.energy_tol:
        return False, f"energy drift {rec.G_drift:.2e} > {p.energy_tol:.2e}"
    if rec.event_residual > 1e-20:
        return False, f"event residual {rec.event_residual:.2e}"
    return True, (f"S = {float(rec.S):+.6e}, drift {rec.G_drift:.1e}, "
                  f"event {rec.event_residual:.1e}")


def _splitting_reversibility():
    # involuted crossing state flowed forward for t_cross must return to
    # the involuted seed
    p = Params.make(-0.1, 0.1)
    ser = unstable_series(p, 40)
    st, _ = seed_state(ser, -5.0)
    fld = ModelField(p)
    pol = StepPolicy(h=float(p.eps) / 50.0, method_order=20, event_tol=1e-22)
    u0_peak, _, _ = soliton(-0.1, 0.0, "dd")
    rec = flow_to_section(fld, st, Guard("u", float(u0_peak) / 2), pol,
                          event_component="up")
    mirrored = involute(rec.state_at_crossing)
    back = flow_time(fld, mirrored, rec.t_cross, pol)
    target = involute(st)
    err = max(abs(float(a - b)) for a, b in
              zip(back.components(), target.components()))
    return err <= 100 * p.energy_tol, f"reversibility mismatch {err:.2e}"


def _inner_exact_values():
    s = inner_series(12)
    if s.a[1] != -4 or s.a[2] != 64:
        return False, f"a1 = {s.a[1]}, a2 = {s.a[2]}"
    diag = series_diagnostics(s)
    ps = psi_series(s)
    if ps[0] != 0:
        return False, "psi series leading coefficient nonzero"
    if abs(diag.growth_ratios[0] - 2.0) > 1e-15:
        return False, f"rho_0 = {diag.growth_ratios[0]}"
    return True, "a1 = -4, a2 = 64, rho_0 = 2, psi = O(z^-5)"


def _inner_invariants():
    diag = series_diagnostics(inner_series(60))
    return diag.all_hold, "sign/factorial/ratio laws hold to N = 60"


def run_all(deep: bool = False):
    """Run every invariant check; returns a list of CheckResult."""
    results = []
    _check("extprec.roundtrips", _extprec_roundtrips, results)
    _check("extprec.mode_agreement", _extprec_mode_agreement, results)
    _check("model.soliton_residual", _model_soliton_residual, results)
    _check("model.geometry_identities", _model_geometry_identities, results)
    _check("model.eigenvalue_residuals", _model_eigen_residuals, results)
    _check("model.energy_gradient", _model_energy_gradient, results)
    _check("model.zero_scan", _model_zero_scan, results)
    _check("integrator.planar_shadow", _integrator_planar_shadow, results)
    _check("integrator.oscillator_return", _integrator_osc_return, results)
    _check("integrator.order_ratio", _integrator_order_ratio, results)
    _check("manifold.recurrence", _manifold_recurrence, results)
    _check("manifold.involution", _manifold_involution, results)
    _check("splitting.shot_audit", _splitting_shot_audit, results)
    _check("splitting.reversibility", _splitting_reversibility, results)
    _check("inner.exact_values", _inner_exact_values, results)
    _check("inner.growth_laws", _inner_invariants, results)
    if deep:
        _check("inner.growth_laws_300",
               lambda: (series_diagnostics(inner_series(300)).all_hold,
                        "exact laws to N = 300"), results)
    return results
