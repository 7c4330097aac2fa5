"""Model-layer contracts: fields, conserved quantity, pulse, geometry."""

import math
import random

import mpmath as mp
import pytest

from splitlab.errors import BlowUpError, DomainError
from splitlab.extprec import Real, mode_eps
from splitlab.model import (Params, State, eigenvalues, first_integral,
                            geometry, planar_field, soliton,
                            splitting_amplitude, u0pp_zero_scan, vector_field)

mp.mp.prec = 300
GAMMA = -0.1


def test_vector_field_equilibrium():
    p = Params.make(GAMMA, 0.1)
    d = vector_field(p, State.make(0, 0, 0, 0))
    assert all(float(c) == 0.0 for c in d.components())


def test_vector_field_peak_gamma_zero():
    # at the gamma = 0 pulse peak u = 3/2, the u'' slot is u - u^2 = -3/4
    p = Params.make(0.0 + 1e-300, 0.7)
    d = vector_field(p, State.make(1.5, 0, 0, 0))
    assert float(d.up) == pytest.approx(-0.75, abs=1e-30)


def test_vector_field_linear_fast_block():
    p = Params.make(GAMMA, 0.1)
    v = 0.37
    d = vector_field(p, State.make(0, 0, v, 0))
    assert float(d.u) == 0.0
    assert float(d.up) == pytest.approx(v, abs=1e-30)
    assert float(d.v) == 0.0
    assert float(d.vp) == pytest.approx(-v / 0.01, rel=1e-28)


def test_vector_field_overflow_named():
    p = Params.make(GAMMA, 0.1)
    with pytest.raises(BlowUpError) as ei:
        vector_field(p, State.make(1e300, 0, 0, 0))
    assert ei.value.component in ("up", "vp")


def test_first_integral_origin_zero():
    p = Params.make(GAMMA, 0.1)
    assert float(first_integral(p, State.make(0, 0, 0, 0))) == 0.0


def test_planar_energy_vanishes_on_pulse():
    # the eps-independent part of G on (u0, u0', 0, 0) is the planar energy
    g = Real.of(GAMMA, "dd")
    for x in (-7.3, -2.0, 0.0, 1.1, 4.8):
        u0, u0p, _ = soliton(GAMMA, x, "dd")
        F = (u0 * u0 * u0) / 3 + g * (u0 * u0 * u0 * u0) / 2
        e = (u0p * u0p) / 2 - (u0 * u0) / 2 + F
        assert abs(float(e)) <= 1e-30


def test_energy_gradient_orthogonal_to_field():
    rng = random.Random(9)
    p = Params.make(GAMMA, 0.1)
    for _ in range(100):
        s = State.make(rng.uniform(-2, 2), rng.uniform(-2, 2),
                       rng.uniform(-0.5, 0.5), rng.uniform(-2, 2), "dd")
        d = vector_field(p, s)
        t = Real.of(2.0 ** -40, "dd")
        sp = State(*(c + t * dc for c, dc in zip(s.components(), d.components())))
        sm = State(*(c - t * dc for c, dc in zip(s.components(), d.components())))
        dg = float((first_integral(p, sp) - first_integral(p, sm)) / (2 * t))
        assert abs(dg) <= 1e-18


def test_soliton_values():
    u0, u0p, _ = soliton(0.0, 0.0, "dd")
    assert float(u0) == pytest.approx(1.5, abs=1e-30)       # 3/2 sech^2(0)
    for g in (-0.05, -0.1, 0.3):
        _, d, _ = soliton(g, 0.0, "dd")
        assert float(d) == 0.0
    u0, _, _ = soliton(GAMMA, 0.0, "dd")
    ref = 3 / (mp.sqrt(mp.mpf("0.1")) + 1)
    assert float(u0) == pytest.approx(float(ref), rel=1e-28)
    with pytest.raises(DomainError):
        soliton(-0.2, 1.0)


def test_soliton_equation_residual():
    rng = random.Random(13)
    for _ in range(10):
        g = rng.uniform(-1 / 9 + 1e-3, -1e-3)
        gam = Real.of(g, "dd")
        for i in range(41):
            x = -10 + 0.5 * i
            u0, _, u0pp = soliton(g, x, "dd")
            r = u0pp - u0 + u0 * u0 + 2 * gam * (u0 * u0 * u0)
            assert abs(float(r)) <= 1e-25


def test_geometry_oracle_values():
    geo = geometry(GAMMA)
    beta = mp.sqrt(1 + 9 * mp.mpf(GAMMA))
    assert float(geo.alpha) == pytest.approx(float(mp.acosh(1 / beta)), rel=1e-28)
    assert float(geo.alpha) == pytest.approx(1.818446, abs=1e-6)
    g_minus_ref = (1 - mp.sqrt(1 + 8 * (1 + 9 * mp.mpf(GAMMA)))) / (2 * beta)
    assert float(geo.g_minus) == pytest.approx(float(g_minus_ref), rel=1e-28)
    assert float(geo.g_minus) == pytest.approx(-0.54018, abs=1e-4)
    assert float(geo.b) == pytest.approx(2.1415, abs=1e-4)
    assert math.pi / 2 < float(geo.b) < math.pi
    assert float(geo.c_minus1) == pytest.approx(float(1 / mp.sqrt(mp.mpf("0.1"))), rel=1e-28)
    assert float(geo.c_plus1) == -float(geo.c_minus1)
    assert float(geo.a) > float(geo.alpha)
    assert float(geo.x_plus.im) == pytest.approx(math.pi, rel=1e-15)
    # algebraic identities
    from splitlab.extprec import cosh as xcosh
    assert abs(float(xcosh(geo.alpha) * geo.beta - 1)) <= 16 * mode_eps("dd")
    assert abs(float(geo.g_plus * geo.g_minus + 2)) <= 16 * mode_eps("dd") * 2


def test_geometry_domain():
    with pytest.raises(DomainError):
        geometry(0.05)
    with pytest.raises(DomainError):
        geometry(-1 / 9 + 1e-9)   # refused within 1e-6 of the floor


def test_eigenvalues():
    for eps, fast in ((0.5, 2.0), (1.0, 1.0)):
        p = Params.make(GAMMA, eps)
        lams = [complex(z) for z in eigenvalues(p)]
        assert lams[0] == 1 and lams[1] == -1
        assert lams[2] == complex(0, fast) and lams[3] == complex(0, -fast)
        eps2 = eps * eps
        for z in lams:
            assert abs(eps2 * z ** 4 + (1 - eps2) * z ** 2 - 1) <= 16 * 2.2e-16


def test_zero_scan_finds_four_reports_eight():
    scan = u0pp_zero_scan(GAMMA, strip_half_height=math.pi)
    geo = geometry(GAMMA)
    assert scan.found_count == 4
    assert scan.claimed_count == 8
    assert not scan.count_matches_claim
    assert not scan.unresolved
    locs = sorted((z.location.re.hi, z.location.im.hi) for z in scan.zeros)
    a, b = float(geo.a), float(geo.b)
    want = sorted([(a, 0.0), (-a, 0.0), (0.0, b), (0.0, -b)])
    for got, exp in zip(locs, want):
        assert got[0] == pytest.approx(exp[0], abs=1e-10)
        assert got[1] == pytest.approx(exp[1], abs=1e-10)
    for z in scan.zeros:
        assert z.residual <= 1e-20


def test_zero_scan_symmetry():
    scan = u0pp_zero_scan(GAMMA)
    pts = {(round(z.location.re.hi, 8), round(z.location.im.hi, 8))
           for z in scan.zeros}
    assert {( -p[0], p[1]) for p in pts} == pts
    assert {( p[0], -p[1]) for p in pts} == pts


def test_planar_field_fixed_points():
    assert planar_field(1.0, (0.0, 0.0)) == (0.0, 0.0)
    for u in (0.0, 0.5, -1.0):
        _, du = planar_field(1.0, (u, 0.0))
        assert du == pytest.approx(0.0, abs=1e-15)
    for u in (1.3819660112501051, 3.6180339887498949):
        _, du = planar_field(-0.1, (u, 0.0))
        assert du == pytest.approx(0.0, abs=1e-14)


def test_params_validation_and_energy_tol():
    with pytest.raises(DomainError):
        Params.make(-0.2, 0.1)
    with pytest.raises(DomainError):
        Params.make(-0.1, -1.0)
    p = Params.make(GAMMA, 0.1)
    assert 0 < p.energy_tol <= 1e-18
    assert p.splitting_range()
    assert not Params.make(0.5, 0.1).splitting_range()


def test_splitting_amplitude_scale():
    # 2 e^(-10 pi) / (sqrt(0.1) * 1e-4)
    ref = 2 * math.exp(-10 * math.pi) / (math.sqrt(0.1) * 1e-4)
    assert splitting_amplitude(GAMMA, 0.1) == pytest.approx(ref, rel=1e-12)


def test_fourth_order_reduction_symbolic():
    # the reduction to (u, u', v, v') reproduces the fourth-order equation
    # identically: substitute v = u'' - u + f(u) and the second equation
    # into eps^2 u'''' + (1 - eps^2) u'' - u + f(u) and simplify to zero
    import sympy as sp

    u, up, v, vp, g, e = sp.symbols("u up v vp gamma eps")
    f = u ** 2 + 2 * g * u ** 3
    fp = sp.diff(f, u)
    fpp = sp.diff(fp, u)
    upp = u + v - f                      # second-order slot of the system
    vpp = -v / e ** 2 + fp * upp + fpp * up ** 2
    # chain rule along trajectories: d/dt maps (u, up, v, vp) per the system
    def ddt(expr):
        return (sp.diff(expr, u) * up + sp.diff(expr, up) * upp
                + sp.diff(expr, v) * vp + sp.diff(expr, vp) * vpp)
    uppp = ddt(upp)
    upppp = ddt(uppp)
    fourth_order = e ** 2 * upppp + (1 - e ** 2) * upp - u + f
    assert sp.simplify(sp.expand(fourth_order)) == 0


def test_first_integral_gradient_symbolic():
    # <grad G, field> = 0 as an exact algebraic identity
    import sympy as sp

    u, up, v, vp, g, e = sp.symbols("u up v vp gamma eps")
    f = u ** 2 + 2 * g * u ** 3
    fp = sp.diff(f, u)
    fpp = sp.diff(fp, u)
    F = u ** 3 / 3 + g * u ** 4 / 2
    G = ((1 - e ** 2) * up ** 2 / 2 - u ** 2 / 2 + F
         + e ** 2 * (up * (vp + up - fp * up) - (u + v - f) ** 2 / 2))
    field = {
        u: up,
        up: u + v - f,
        v: vp,
        vp: -v / e ** 2 + fp * (u + v - f) + fpp * up ** 2,
    }
    dG = sum(sp.diff(G, var) * rhs for var, rhs in field.items())
    assert sp.simplify(sp.expand(dG)) == 0
