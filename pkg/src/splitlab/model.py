"""The traveling-wave model as pure functions.

Fourth-order scalar equation eps^2 u'''' + (1-eps^2) u'' - u + u^2
+ 2 gamma u^3 = 0, rewritten with f(u) = u^2 + 2 gamma u^3 and
v = u'' - u + f(u) as the first-order system on (u, u', v, v')

    u''  = u + v - f(u)
    v''  = -v/eps^2 + f'(u) (u + v - f(u)) + f''(u) (u')^2,

its conserved quantity G, the planar eps -> 0 limit, the closed-form pulse
of the planar limit, and the complex-singularity geometry of that pulse.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import BlowUpError, DomainError
from .extprec import (Complex, Real, arccos, arccosh, cosh, pi, sincos,
                      sinh, sqrt)

__all__ = [
    "Params", "State", "Geometry", "ZeroRecord", "ZeroScanResult",
    "vector_field", "first_integral", "soliton", "geometry", "eigenvalues",
    "u0pp_zero_scan", "planar_field", "splitting_amplitude",
]

GAMMA_FLOOR = -1.0 / 9.0
_ENERGY_CAP = {"std": 1e-12, "dd": 1e-18, "qd": 1e-28}


def splitting_amplitude(gamma: float, eps: float) -> float:
    """Leading-order envelope 2 e^(-pi/eps) / (sqrt(|gamma|) eps^4) of the
    splitting at unit Stokes constant; the scale every tolerance hangs off."""
    return 2.0 * math.exp(-math.pi / eps) / (math.sqrt(abs(gamma)) * eps ** 4)


@dataclass(frozen=True)
class Params:
    """Physical configuration: (gamma, eps), precision mode, energy budget."""

    gamma: Real
    eps: Real
    precision_mode: str = "dd"
    energy_tol: float = 0.0

    @staticmethod
    def make(gamma, eps, precision_mode: str = "dd",
             energy_tol: float | None = None) -> "Params":
        g = Real.of(gamma, precision_mode)
        e = Real.of(eps, precision_mode)
        if not float(g) > GAMMA_FLOOR:
            raise DomainError(f"gamma = {float(g)} must exceed -1/9")
        if not float(e) > 0.0:
            raise DomainError(f"eps = {float(e)} must be positive")
        if energy_tol is None:
            cap = _ENERGY_CAP[precision_mode]
            if float(g) < 0.0:
                energy_tol = min(cap, 1e-3 * splitting_amplitude(float(g), float(e)))
            else:
                energy_tol = cap
        return Params(g, e, precision_mode, float(energy_tol))

    @property
    def mode(self) -> str:
        return self.precision_mode

    def splitting_range(self) -> bool:
        """True when gamma sits in the oscillatory-splitting window (-1/9, 0)."""
        return GAMMA_FLOOR < float(self.gamma) < 0.0

    def kernel_params(self) -> np.ndarray:
        """Flattened (gamma, 1/eps^2) limbs for the jet kernels."""
        inv_eps2 = 1 / (self.eps * self.eps)
        return np.array(self.gamma.limbs + inv_eps2.limbs, dtype=np.float64)


@dataclass(frozen=True)
class State:
    """A phase-space point (u, u', v, v')."""

    u: Real
    up: Real
    v: Real
    vp: Real

    @staticmethod
    def make(u, up, v, vp, mode: str = "dd") -> "State":
        return State(Real.of(u, mode), Real.of(up, mode),
                     Real.of(v, mode), Real.of(vp, mode))

    @property
    def mode(self) -> str:
        return self.u.mode

    def components(self):
        return (self.u, self.up, self.v, self.vp)

    def is_finite(self) -> bool:
        return all(math.isfinite(c.hi) and not c.is_nan for c in self.components())

    def as_array(self) -> np.ndarray:
        return np.array([c.limbs for c in self.components()], dtype=np.float64)

    @staticmethod
    def from_array(arr: np.ndarray, mode: str) -> "State":
        vals = [Real.from_limbs(tuple(row), mode) for row in arr]
        return State(*vals)

    def norm_inf(self) -> float:
        return max(abs(c.hi) for c in self.components())


_COMPONENT_NAMES = ("u", "up", "v", "vp")


def _check_finite(vals: Sequence[Real], what: str):
    for name, val in zip(_COMPONENT_NAMES, vals):
        if not math.isfinite(val.hi):
            raise BlowUpError(f"{what}: component {name} overflowed", component=name)


def vector_field(p: Params, s: State) -> State:
    """Right-hand side of the first-order system at s."""
    u, up, v, vp = s.components()
    f = u * u + 2 * p.gamma * (u * u * u)
    fp = 2 * u + 6 * p.gamma * (u * u)
    fpp = 2 + 12 * p.gamma * u
    w = u + v - f
    acc_v = -(v / (p.eps * p.eps)) + fp * w + fpp * (up * up)
    out = (up, w, vp, acc_v)
    _check_finite(out, "vector_field")
    return State(*out)


def first_integral(p: Params, s: State) -> Real:
    """Conserved quantity G of the system (zero on the pulse orbit)."""
    u, up, v, vp = s.components()
    eps2 = p.eps * p.eps
    f = u * u + 2 * p.gamma * (u * u * u)
    fp = 2 * u + 6 * p.gamma * (u * u)
    F = (u * u * u) / 3 + p.gamma * (u * u * u * u) / 2
    g = (1 - eps2) * (up * up) / 2 - (u * u) / 2 + F
    fast = up * (vp + up - fp * up) - (u + v - f) * (u + v - f) / 2
    return g + eps2 * fast


def soliton(gamma, x, mode: str = "dd"):
    """Closed-form pulse u0(x) = 3/(beta cosh x + 1) of the planar limit,
    with its first two derivatives; beta = sqrt(1 + 9 gamma)."""
    g = Real.of(gamma, mode)
    xx = Real.of(x, mode)
    if not float(g) > GAMMA_FLOOR:
        raise DomainError(f"soliton needs 1 + 9*gamma > 0, got gamma = {float(g)}")
    beta = sqrt(1 + 9 * g)
    ch = cosh(xx)
    sh = sinh(xx)
    den = beta * ch + 1
    u0 = 3 / den
    u0p = -3 * beta * sh / (den * den)
    u0pp = -3 * beta * ch / (den * den) + 6 * (beta * beta) * (sh * sh) / (den * den * den)
    return u0, u0p, u0pp


@dataclass(frozen=True)
class Geometry:
    """Singularity geometry of the pulse for gamma in (-1/9, 0).

    The pulse has simple poles at x = +-alpha + i pi (and conjugates), with
    residues -+1/sqrt(|gamma|); its second derivative vanishes at +-a on the
    real axis and +-ib on the imaginary axis, where cosh a = g_plus(beta)
    and cos b = g_minus(beta) are the two roots of beta c^2 - c - 2 beta.
    """

    beta: Real
    alpha: Real
    x_plus: Complex
    x_minus: Complex
    c_plus1: Real
    c_minus1: Real
    g_plus: Real
    g_minus: Real
    a: Real
    b: Real


def geometry(gamma, mode: str = "dd") -> Geometry:
    g = Real.of(gamma, mode)
    gf = float(g)
    if not (GAMMA_FLOOR < gf < 0.0):
        raise DomainError(f"geometry needs gamma in (-1/9, 0), got {gf}")
    if gf - GAMMA_FLOOR < 1e-6:
        raise DomainError(
            f"gamma = {gf} is within 1e-6 of -1/9; alpha diverges and the "
            "geometry loses all significance there")
    beta = sqrt(1 + 9 * g)
    alpha = arccosh(1 / beta)
    pie = pi(mode)
    x_plus = Complex(alpha, pie)
    x_minus = Complex(-alpha, pie)
    inv_sqrt_g = 1 / sqrt(abs(g))
    c_minus1 = inv_sqrt_g
    c_plus1 = -inv_sqrt_g
    disc = sqrt(1 + 8 * (beta * beta))
    g_plus = (1 + disc) / (2 * beta)
    g_minus = (1 - disc) / (2 * beta)
    a = arccosh(g_plus)
    b = arccos(g_minus)
    return Geometry(beta, alpha, x_plus, x_minus, c_plus1, c_minus1,
                    g_plus, g_minus, a, b)


def eigenvalues(p: Params):
    """Spectrum of the linearization at the origin: {1, -1, i/eps, -i/eps}.

    These are the roots of eps^2 L^4 + (1 - eps^2) L^2 - 1 = 0 (the
    characteristic polynomial of the fourth-order equation at u = 0);
    the pair on the imaginary axis scales like 1/eps.
    """
    mode = p.mode
    one = Real.of(1.0, mode)
    zero = Real.zero(mode)
    inv_eps = 1 / p.eps
    return (Complex(one, zero), Complex(-one, zero),
            Complex(zero, inv_eps), Complex(zero, -inv_eps))


def planar_field(gamma, uw):
    """Planar limit field (u, w) -> (w, u - u^2 - 2 gamma u^3)."""
    u, w = uw
    if isinstance(u, Real) or isinstance(w, Real) or isinstance(gamma, Real):
        mode = u.mode if isinstance(u, Real) else (
            w.mode if isinstance(w, Real) else gamma.mode)
        g = Real.of(gamma, mode)
        uu = Real.of(u, mode)
        ww = Real.of(w, mode)
        return ww, uu - uu * uu - 2 * g * (uu * uu * uu)
    return w, u - u * u - 2.0 * gamma * u ** 3


# ---------------------------------------------------------------------------
# zeros of the pulse's second derivative in a complex strip
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ZeroRecord:
    location: Complex
    residual: float
    multiplicity: int


@dataclass(frozen=True)
class ZeroScanResult:
    zeros: tuple
    unresolved: tuple
    found_count: int
    claimed_count: int
    count_matches_claim: bool


def _complex_cosh_sinh(z: Complex):
    # cosh(a+ib) = cosh a cos b + i sinh a sin b, and its derivative pair
    ca = cosh(z.re)
    sa = sinh(z.re)
    sb, cb = sincos(z.im)
    return Complex(ca * cb, sa * sb), Complex(sa * cb, ca * sb)


def _u0pp_zero_fn(beta: Real, z: Complex) -> Complex:
    # beta cosh^2 x - cosh x - 2 beta, whose zeros are the zeros of u0''
    ch, _ = _complex_cosh_sinh(z)
    return ch * ch * beta - ch - 2 * beta


def _u0pp_zero_dfn(beta: Real, z: Complex) -> Complex:
    # derivative sinh x (2 beta cosh x - 1)
    ch, sh = _complex_cosh_sinh(z)
    return sh * (ch * 2 * beta - 1)


def u0pp_zero_scan(gamma, strip_half_height: float = math.pi,
                   resolution: float = 0.05, mode: str = "dd") -> ZeroScanResult:
    """All zeros of u0'' in |Im x| <= strip_half_height.

    Coarse grid + cell winding counts locate candidates; complex Newton in
    extended precision polishes each to residual <= 1e-20. The count found
    is reported against the claimed eight zeros for the full strip
    (|Im| <= pi); the claimed zeros at +-a +- i pi would need
    cosh a = -g_plus < 0 or cosh a = -g_minus in (0, 1), neither of which
    has a real solution, so four is the expected outcome.
    """
    geo = geometry(gamma, mode)
    beta_f = float(geo.beta)
    H = float(strip_half_height)
    X = float(geo.a) + 1.5

    # irrational grid offset keeps the real and imaginary axes (where zeros
    # live) strictly inside cells, so the winding count cannot alias on an edge
    off = resolution * 0.3183098861837907
    n_re = max(8, int(math.ceil(2 * X / resolution)) + 1)
    n_im = max(8, int(math.ceil(2 * (H + resolution) / resolution)) + 1)
    re = -X - off + resolution * np.arange(n_re + 1)
    im = -H - resolution - off + resolution * np.arange(n_im + 1)
    Z = re[None, :] + 1j * im[:, None]
    ch = np.cosh(Z)
    W = beta_f * ch * ch - ch - 2 * beta_f

    ph = np.angle(W)
    # winding of the phase around each grid cell, counterclockwise

    def dphi(a, b):
        d = b - a
        return (d + np.pi) % (2 * np.pi) - np.pi

    wind = (dphi(ph[:-1, :-1], ph[:-1, 1:]) + dphi(ph[:-1, 1:], ph[1:, 1:])
            + dphi(ph[1:, 1:], ph[1:, :-1]) + dphi(ph[1:, :-1], ph[:-1, :-1]))
    hits = np.argwhere(np.abs(wind) > np.pi)

    zeros: list[ZeroRecord] = []
    unresolved: list[Complex] = []
    for iy, ix in hits:
        z0 = complex(0.5 * (re[ix] + re[ix + 1]), 0.5 * (im[iy] + im[iy + 1]))
        mult = int(round(abs(wind[iy, ix]) / (2 * np.pi)))
        z = Complex(Real.of(z0.real, mode), Real.of(z0.imag, mode))
        ok = False
        for _ in range(80):
            f = _u0pp_zero_fn(geo.beta, z)
            resid = math.hypot(f.re.hi, f.im.hi)
            if resid <= 1e-20:
                ok = True
                break
            df = _u0pp_zero_dfn(geo.beta, z)
            if df.re.hi == 0.0 and df.im.hi == 0.0:
                break
            z = z - f / df
        zf = complex(z.re.hi, z.im.hi)
        if not ok or abs(zf - z0) > 4 * resolution:
            unresolved.append(z)
            continue
        if abs(zf.imag) > H + 1e-12:
            continue
        if any(abs(zf - complex(r.location.re.hi, r.location.im.hi)) < resolution / 2
               for r in zeros):
            continue
        f = _u0pp_zero_fn(geo.beta, z)
        zeros.append(ZeroRecord(z, math.hypot(f.re.hi, f.im.hi), max(mult, 1)))

    zeros.sort(key=lambda r: (round(r.location.im.hi, 9), round(r.location.re.hi, 9)))
    claimed = 8 if H >= math.pi - 1e-9 else 4
    found = sum(r.multiplicity for r in zeros)
    return ZeroScanResult(tuple(zeros), tuple(unresolved), found, claimed,
                          found == claimed)
