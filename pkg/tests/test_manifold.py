"""Unstable-manifold series: recurrence exactness, seeds, involution."""

import random

import mpmath as mp
import pytest

from splitlab.errors import SeedTooCloseError
from splitlab.extprec import mode_eps
from splitlab.integrator import Guard, ModelField, StepPolicy, flow_time, flow_to_section
from splitlab.manifold import (involute, recurrence_residuals, seed_state,
                               unstable_series)
from splitlab.model import Params, State, first_integral, soliton

mp.mp.prec = 300
GAMMA = -0.1


def test_normalization_and_k2_values():
    eps = 0.1
    p = Params.make(GAMMA, eps)
    ser = unstable_series(p, 12)
    assert float(ser.b[1]) == 1.0
    assert float(ser.c[1]) == 0.0
    c2 = 4 * eps ** 2 / (1 + 4 * eps ** 2)
    assert float(ser.c[2]) == pytest.approx(c2, rel=1e-28)
    assert float(ser.b[2]) == pytest.approx((c2 - 1) / 3, rel=1e-28)


def test_k2_small_eps_limit():
    p = Params.make(GAMMA, 1e-6)
    ser = unstable_series(p, 4)
    assert float(ser.b[2]) == pytest.approx(-1 / 3, abs=1e-11)


def test_gamma_zero_rescaled_matches_sech2_expansion():
    # u0 = (3/2) sech^2(x/2) = 6 e^x (1 + e^x)^-2 = 6 e^x - 12 e^{2x} + ...
    # scaling covariance b_k -> sigma^k b_k under b_1 = sigma with sigma = 6
    p = Params.make(1e-300, 1e-8)
    ser = unstable_series(p, 6)
    sech2 = [6, -12, 18, -24, 30]   # 6 * (-1)^(k-1) * k
    for k in range(1, 6):
        scaled = float(ser.b[k]) * 6.0 ** k
        assert scaled == pytest.approx(sech2[k - 1], rel=1e-7), k


def test_recurrence_residuals_within_4ulp():
    p = Params.make(GAMMA, 0.1)
    ser = unstable_series(p, 40)
    res = recurrence_residuals(ser)
    worst = max(max(r1, r2) for _, r1, r2 in res)
    assert worst <= 4.0


def test_coefficient_decay_ratio_stabilizes():
    p = Params.make(GAMMA, 0.1)
    ser = unstable_series(p, 40)
    r30 = abs(float(ser.b[30])) ** (1 / 30)
    r40 = abs(float(ser.b[40])) ** (1 / 40)
    assert abs(r30 / r40 - 1) <= 0.05


def test_seed_state_limits_and_energy():
    p = Params.make(GAMMA, 0.1)
    ser = unstable_series(p, 40)
    st8, tb8 = seed_state(ser, -8.0)
    st16, tb16 = seed_state(ser, -16.0)
    assert st16.norm_inf() < st8.norm_inf() < 1e-2
    assert tb16 < tb8
    G = first_integral(p, st8)
    floor = 100 * mode_eps("dd") * max(st8.norm_inf() ** 2, 1e-300)
    assert abs(float(G)) <= max(10 * tb8, floor)


def test_seed_too_close_error_with_suggestion():
    p = Params.make(GAMMA, 0.1)
    ser = unstable_series(p, 40)
    with pytest.raises(SeedTooCloseError) as ei:
        seed_state(ser, 0.5)
    assert ei.value.suggested_x0 is not None
    seed_state(ser, ei.value.suggested_x0)   # suggestion must be workable


def test_shift_consistency():
    # seed at x0 then flow by delta equals seed at x0 + delta
    p = Params.make(GAMMA, 0.1)
    ser = unstable_series(p, 40)
    st, tb0 = seed_state(ser, -20.0)
    fld = ModelField(p)
    moved = flow_time(fld, st, 1.0, StepPolicy.for_model(p))
    direct, tb1 = seed_state(ser, -19.0)
    budget = max(10 * (tb0 + tb1), 1e-26)
    for a, b in zip(moved.components(), direct.components()):
        assert abs(float(a - b)) <= budget


def test_seeded_trajectory_shadows_pulse():
    p = Params.make(GAMMA, 0.05)
    ser = unstable_series(p, 40)
    st, _ = seed_state(ser, -6.0)
    fld = ModelField(p)
    peak, _, _ = soliton(GAMMA, 0.0, "dd")
    rec = flow_to_section(fld, st, Guard("u", float(peak) / 2),
                          StepPolicy.for_model(p), event_component="up")
    assert abs(float(rec.state_at_crossing.u) - float(peak)) <= 0.05


def test_involution_properties():
    rng = random.Random(21)
    p = Params.make(GAMMA, 0.1)
    for _ in range(200):
        s = State.make(rng.uniform(-2, 2), rng.uniform(-2, 2),
                       rng.uniform(-0.5, 0.5), rng.uniform(-2, 2), "dd")
        si = involute(s)
        assert float(si.u) == float(s.u) and float(si.v) == float(s.v)
        assert float(si.up) == -float(s.up) and float(si.vp) == -float(s.vp)
        back = involute(si)
        assert all(float(a - b) == 0.0
                   for a, b in zip(back.components(), s.components()))
        G1, G2 = first_integral(p, s), first_integral(p, si)
        scale = max(abs(float(G1)), 1.0)
        assert abs(float(G1 - G2)) <= 16 * mode_eps("dd") * scale


def test_involution_fixed_points_are_symmetry_plane():
    s = State.make(1.2, 0.0, -0.3, 0.0, "dd")
    assert all(float(a - b) == 0.0 for a, b in
               zip(involute(s).components(), s.components()))
    s2 = State.make(1.2, 0.1, -0.3, 0.0, "dd")
    assert float(involute(s2).up) != float(s2.up)


def test_truncation_flag_on_overflow():
    # absurdly large K forces coefficient overflow -> flagged prefix
    p = Params.make(-0.11, 0.02)
    ser = unstable_series(p, 900)
    assert ser.truncated or ser.K == 900
