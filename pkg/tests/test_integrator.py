"""Integrator contracts: order, events, dense output, conservation."""

import mpmath as mp
import pytest

from splitlab.errors import NoCrossingError
from splitlab.extprec import Real, two_pi
from splitlab.integrator import (FastOscField, Guard, ModelField, PlanarField,
                                 StepPolicy, flow_time, flow_to_section, step,
                                 taylor_jet)
from splitlab.manifold import involute, seed_state, unstable_series
from splitlab.model import Params, State, first_integral, soliton

mp.mp.prec = 300
GAMMA = -0.1


def test_policy_validation():
    with pytest.raises(Exception):
        StepPolicy(h=0.01, method_order=6)
    with pytest.raises(Exception):
        StepPolicy(h=-0.01)
    pol = StepPolicy.for_model(Params.make(GAMMA, 0.1))
    assert pol.h == pytest.approx(0.1 / 50)
    assert pol.h <= 0.1 / 20  # fast-oscillation resolution bound


def test_step_equilibrium():
    p = Params.make(GAMMA, 0.1)
    fld = ModelField(p)
    s1, est = step(fld, State.make(0, 0, 0, 0), StepPolicy(h=0.002))
    assert all(float(c) == 0.0 for c in s1.components())
    assert est == 0.0


def test_step_halving_error_ratio():
    p = Params.make(GAMMA, 0.3)
    fld = ModelField(p)
    s = State.make(0.4, 0.3, 0.01, -0.2, "dd")
    order = 10
    errs = []
    for h in (0.012, 0.006):
        coarse, _ = step(fld, s, StepPolicy(h=h, method_order=order))
        f1, _ = step(fld, s, StepPolicy(h=h / 2, method_order=order))
        f2, _ = step(fld, f1, StepPolicy(h=h / 2, method_order=order))
        errs.append(max(abs(float(a - b)) for a, b in
                        zip(coarse.components(), f2.components())))
    ratio = errs[0] / errs[1]
    assert 2 ** (order + 1) / 3 <= ratio <= 3 * 2 ** (order + 1)


def test_fast_oscillator_period_return():
    eps = 0.1
    fld = FastOscField(eps, "dd")
    v0 = 0.37
    T = two_pi("dd") * Real.of(eps, "dd")
    end = flow_time(fld, (Real.of(v0, "dd"), Real.zero("dd")),
                    T, StepPolicy(h=eps / 50))
    assert abs(float(end[0]) - v0) <= 1e-20 * v0
    assert abs(float(end[1])) * eps <= 1e-20 * v0


def test_planar_separatrix_crossing():
    fld = PlanarField(GAMMA, "dd")
    u0, u0p, _ = soliton(GAMMA, -8.0, "dd")
    rec = flow_to_section(fld, (u0, u0p), Guard("u", 1.0),
                          StepPolicy(h=0.01, event_tol=1e-22),
                          event_component="w")
    peak, _, _ = soliton(GAMMA, 0.0, "dd")
    assert float(rec.t_cross) == pytest.approx(8.0, abs=1e-12)
    assert float(rec.state_at_crossing[0]) == pytest.approx(float(peak), abs=1e-20)
    assert rec.residual <= 1e-22
    assert rec.refined


def test_planar_closed_form_shadowing():
    fld = PlanarField(GAMMA, "dd")
    u0, u0p, _ = soliton(GAMMA, -8.0, "dd")
    for t in (4.0, 10.0, 16.0):
        end = flow_time(fld, (u0, u0p), t, StepPolicy(h=0.01))
        e0, e1, _ = soliton(GAMMA, -8.0 + t, "dd")
        assert abs(float(end[0] - e0)) <= 1e-20
        assert abs(float(end[1] - e1)) <= 1e-20


def test_section_stat_at_t0():
    fld = PlanarField(GAMMA, "dd")
    peak, d, _ = soliton(GAMMA, 0.0, "dd")
    rec = flow_to_section(fld, (peak, d), Guard("u", 1.0),
                          StepPolicy(h=0.01), event_component="w")
    assert float(rec.t_cross) == 0.0
    assert rec.n_steps == 0


def test_no_crossing_error():
    fld = PlanarField(GAMMA, "dd")
    u0, u0p, _ = soliton(GAMMA, -8.0, "dd")
    with pytest.raises(NoCrossingError):
        flow_to_section(fld, (u0, u0p), Guard("u", 5.0),
                        StepPolicy(h=0.01, max_steps=3000),
                        event_component="w")


def test_flow_time_zero_and_group_property():
    p = Params.make(GAMMA, 0.1)
    fld = ModelField(p)
    s = State.make(0.3, 0.2, 0.001, -0.01, "dd")
    pol = StepPolicy(h=0.002)
    same = flow_time(fld, s, 0.0, pol)
    assert all(float(a - b) == 0.0 for a, b in
               zip(same.components(), s.components()))
    fwd = flow_time(fld, s, 7.3, pol)
    back = flow_time(fld, fwd, -7.3, pol)
    for a, b in zip(back.components(), s.components()):
        assert abs(float(a - b)) <= 1e-24


def test_energy_audit_long_run():
    p = Params.make(GAMMA, 0.1)
    fld = ModelField(p)
    ser = unstable_series(p, 40)
    st, _ = seed_state(ser, -5.0)
    pol = StepPolicy.for_model(p)
    G0 = first_integral(p, st)
    end = flow_time(fld, st, 40.0, pol)
    G1 = first_integral(p, end)
    assert abs(float(G1 - G0)) <= p.energy_tol


def test_reversibility_of_crossing():
    p = Params.make(GAMMA, 0.1)
    fld = ModelField(p)
    ser = unstable_series(p, 40)
    st, _ = seed_state(ser, -5.0)
    pol = StepPolicy.for_model(p, event_tol=1e-22)
    peak, _, _ = soliton(GAMMA, 0.0, "dd")
    rec = flow_to_section(fld, st, Guard("u", float(peak) / 2), pol,
                          event_component="up")
    mirrored = involute(rec.state_at_crossing)
    back = flow_time(fld, mirrored, rec.t_cross, pol)
    target = involute(st)
    err = max(abs(float(a - b)) for a, b in
              zip(back.components(), target.components()))
    assert err <= 100 * p.energy_tol


def test_event_newton_quadratic_convergence():
    # Newton on the dense-output polynomial of the event component
    fld = PlanarField(GAMMA, "dd")
    u0, u0p, _ = soliton(GAMMA, -0.004, "dd")   # crossing inside one step
    jet = taylor_jet(fld, (u0, u0p), 20)
    sigma = Real.of(0.0095, "dd")               # deliberately poor seed
    resids = []
    for _ in range(6):
        f = jet.eval_component("w", float(sigma))
        resids.append(abs(float(f)))
        d = jet.derivative_component("w", float(sigma))
        sigma = sigma - f / d
    # at-least-quadratic decay until the roundoff floor, then well converged
    for a, b in zip(resids, resids[1:]):
        if b <= 1e-26:
            break
        assert b <= a ** 1.9
    assert min(resids) <= 1e-22


def test_blowup_reports_component():
    from splitlab.errors import BlowUpError
    p = Params.make(GAMMA, 0.3)
    fld = ModelField(p)
    with pytest.raises(BlowUpError) as ei:
        flow_time(fld, State.make(7.5, 9.0, 0, 0, "dd"), 10.0,
                  StepPolicy(h=0.005))
    assert ei.value.component in ("u", "up", "v", "vp")


def test_model_step_bound_enforced():
    from splitlab.errors import DomainError
    p = Params.make(GAMMA, 0.1)
    fld = ModelField(p)
    s = State.make(0.1, 0.1, 0, 0, "dd")
    with pytest.raises(DomainError):
        flow_time(fld, s, 1.0, StepPolicy(h=0.01))   # h > eps/20
    # planar field has no fast scale: the same h is fine there
    pf = PlanarField(GAMMA, "dd")
    flow_time(pf, (Real.of(0.1, "dd"), Real.zero("dd")), 0.1,
              StepPolicy(h=0.01))
