"""Splitting measurements: S(eps), homoclinic roots eps_n, Stokes amplitude.

The shooting function S(eps) is v' at the unstable orbit's first crossing
of the section {u' = 0} with the guard u > u0(0)/2 (the symmetric-peak
crossing; fast micro-oscillations never qualify). By reversibility the
orbit is homoclinic exactly when S = 0, so the homoclinic parameter values
eps_n are bracketed roots of S. The rescaled amplitude

    A(eps) = -eps^4 e^(pi/eps) S(eps) sqrt(|gamma|) / 2

oscillates as Theta sin(alpha/eps) up to a slowly decaying remainder
(empirically a phase drift close to -pi*eps inside the O(1/|log eps|)
 bound), which ties the orbit-level measurement to the Stokes constant
computed independently from the inner equation.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .errors import (BracketError, ConvergenceError, DomainError,
                     FitError, PrecisionError)
from .extprec import Real, mode_eps, pi, sin
from .integrator import (Guard, ModelField, StepPolicy, flow_time,
                         flow_to_section)
from .manifold import seed_state, unstable_series
from .model import (GAMMA_FLOOR, Params, State, first_integral, geometry,
                    soliton, splitting_amplitude)

__all__ = [
    "ShotRecord", "EpsRoot", "ThetaFit", "ShootPolicy",
    "shoot", "homoclinic_return", "predicted_eps", "asymptotic_S",
    "find_root", "roots_for_range", "sweep", "fit_stokes",
    "sign_changes_per_interval",
]

_MODE_ORDER = ("std", "dd", "qd")


@dataclass(frozen=True)
class ShootPolicy:
    """Knobs for one splitting shot; None means derive from scales."""

    K: int = 40
    x0: Optional[float] = None
    method_order: int = 20
    event_tol: Optional[float] = None
    root_tol: Optional[float] = None
    seed_budget_factor: float = 1e-3


@dataclass(frozen=True)
class ShotRecord:
    gamma: float
    eps: float
    precision_mode: str
    S: Real
    u_at_sigma: Real
    v_at_sigma: Real
    t_cross: Real
    G_drift: float
    seed_truncation: float
    x0: float
    K: int
    n_steps: int
    event_residual: float
    noise_floor: float
    energy_tol: float

    @property
    def S_float(self) -> float:
        return float(self.S)

    def amplitude(self) -> float:
        """A = -eps^4 e^(pi/eps) S sqrt(|gamma|)/2, the Stokes-scaled value."""
        return (-self.eps ** 4 * math.exp(math.pi / self.eps)
                * float(self.S) * math.sqrt(abs(self.gamma)) / 2.0)


@dataclass(frozen=True)
class EpsRoot:
    n: int
    eps_n: float
    residual_S: float
    bracket: tuple
    root_tol: float
    partial: bool = False
    return_distance: Optional[float] = None


@dataclass(frozen=True)
class ThetaFit:
    theta: float
    method: str
    uncertainty: float
    rel_max_residual: float
    n_records: int
    detail: dict = field(default_factory=dict)


def _require_splitting_gamma(gamma: float):
    if not (GAMMA_FLOOR < gamma < 0.0):
        raise DomainError(
            f"splitting requires gamma in (-1/9, 0); got {gamma}")


def _noise_floor(mode: str, eps: float, x0: float) -> float:
    # random-walk estimate of accumulated roundoff on v' over the shot
    steps = (abs(x0) + 6.0) * 50.0 / eps
    return mode_eps(mode if mode != "std" else "dd") * 4.0 * math.sqrt(steps * 100.0)


def required_mode(gamma: float, eps: float) -> Optional[str]:
    """Smallest precision mode that can resolve S(eps) to ~5 digits.

    Works in logs so hunger for precision is reported correctly even where
    the amplitude itself underflows float64.
    """
    log_amp = (math.log10(2.0) - math.pi / (eps * math.log(10.0))
               - 0.5 * math.log10(abs(gamma)) - 4.0 * math.log10(eps))
    for mode in _MODE_ORDER:
        if math.log10(mode_eps(mode)) <= -5.0 + log_amp:
            return mode
    return None


def _auto_x0(series, budget: float) -> tuple:
    x0 = -2.5
    while x0 >= -40.0:
        try:
            st, tb = seed_state(series, x0)
        except Exception:
            x0 -= 0.5
            continue
        if tb <= budget:
            return x0, st, tb
        x0 -= 0.5
    raise ConvergenceError(
        f"could not place a seed with truncation <= {budget:.3e}; "
        "increase the series order K")


def shoot(params: Params, policy: ShootPolicy = ShootPolicy()) -> ShotRecord:
    """One splitting measurement S(eps) = v' at the section crossing."""
    gamma = float(params.gamma)
    eps = float(params.eps)
    _require_splitting_gamma(gamma)

    amp = splitting_amplitude(gamma, eps)
    need = required_mode(gamma, eps)
    if need is None or _MODE_ORDER.index(params.mode) < _MODE_ORDER.index(need):
        raise PrecisionError(
            f"mode {params.mode!r} cannot resolve the splitting at eps = {eps} "
            f"(amplitude scale {amp:.3e}); smallest adequate mode: "
            f"{need if need else 'none available'}",
            required_mode=need)

    root_tol = policy.root_tol
    noise = _noise_floor(params.mode, eps, -6.0)
    if root_tol is None:
        root_tol = max(1e-4 * amp, 20.0 * noise)
    event_tol = policy.event_tol
    if event_tol is None:
        event_tol = min(1e-20, 0.05 * root_tol)

    series = unstable_series(params, policy.K)
    if policy.x0 is not None:
        st, tb = seed_state(series, policy.x0)
        x0 = policy.x0
    else:
        x0, st, tb = _auto_x0(series, policy.seed_budget_factor * amp)

    fld = ModelField(params)
    u0_peak, _, _ = soliton(gamma, 0.0, "dd")
    guard = Guard("u", float(u0_peak) / 2.0)
    h = eps / 50.0
    max_steps = int((abs(x0) + 15.0) / h) + 100
    pol = StepPolicy(h=h, method_order=policy.method_order,
                     max_steps=max_steps, event_tol=event_tol)
    rec = flow_to_section(fld, st, guard, pol, event_component="up")
    if not rec.refined:
        raise ConvergenceError(
            f"event refinement stalled at |u'| = {rec.residual:.3e} "
            f"(target {event_tol:.3e}); S would be contaminated")

    G0 = first_integral(params, _as_params_mode(st, params.mode))
    cross = rec.state_at_crossing
    G1 = first_integral(params, _as_params_mode(cross, params.mode))
    drift = abs(float(G1 - G0))
    if drift > params.energy_tol:
        raise ConvergenceError(
            f"energy audit failed: drift {drift:.3e} exceeds "
            f"energy_tol {params.energy_tol:.3e}")
    return ShotRecord(
        gamma=gamma, eps=eps, precision_mode=params.mode,
        S=cross.vp, u_at_sigma=cross.u, v_at_sigma=cross.v,
        t_cross=rec.t_cross, G_drift=drift, seed_truncation=tb,
        x0=x0, K=series.K, n_steps=rec.n_steps,
        event_residual=rec.residual, noise_floor=noise,
        energy_tol=params.energy_tol)


def _as_params_mode(state: State, mode: str) -> State:
    if state.mode == mode:
        return state
    return State(*(Real.of(c, mode) for c in state.components()))


def homoclinic_return(params: Params, shot: ShotRecord) -> float:
    """Continue the orbit past the crossing and report how close it
    returns to the origin (sup-norm); small return distance certifies a
    true homoclinic connection at a root of S."""
    series = unstable_series(params, shot.K)
    st, _ = seed_state(series, shot.x0)
    fld = ModelField(params)
    pol = StepPolicy(h=shot.eps / 50.0, method_order=20)
    seed_norm = st.norm_inf()
    t_extra = float(shot.t_cross) + math.log(max(seed_norm, 1e-300) / 1e-8)
    total = 2.0 * float(shot.t_cross) + max(t_extra - float(shot.t_cross), 0.0)
    end = flow_time(fld, st, total, pol)
    return end.norm_inf()


def predicted_eps(gamma: float, n: int) -> float:
    """Leading-order root location alpha/(n pi)."""
    if n < 1:
        raise DomainError(f"index n must be >= 1, got {n}")
    geo = geometry(gamma)
    return float(geo.alpha / (n * pi("dd")))


def asymptotic_S(gamma: float, eps: float, theta: float) -> float:
    """Leading-order splitting model -(2 Theta/(sqrt(|gamma|) eps^4))
    e^(-pi/eps) sin(alpha/eps) (the remainder is dropped)."""
    _require_splitting_gamma(gamma)
    if not eps > 0:
        raise DomainError("eps must be positive")
    geo = geometry(gamma)
    s = float(sin(geo.alpha / Real.of(eps, "dd")))
    return (-2.0 * theta / (math.sqrt(abs(gamma)) * eps ** 4)
            * math.exp(-math.pi / eps) * s)


def _brent(f, a, b, fa, fb, xtol, maxiter=120):
    # classic Brent bracketing (inverse quadratic / secant / bisection)
    if fa == 0.0:
        return a, fa
    if fb == 0.0:
        return b, fb
    if (fa > 0) == (fb > 0):
        raise BracketError(f"no sign change on [{a}, {b}]")
    c, fc = a, fa
    d = e = b - a
    for _ in range(maxiter):
        if (fb > 0) == (fc > 0):
            c, fc = a, fa
            d = e = b - a
        if abs(fc) < abs(fb):
            a, b, c = b, c, b
            fa, fb, fc = fb, fc, fb
        tol = 2.0 * 2.220446049250313e-16 * abs(b) + 0.5 * xtol
        m = 0.5 * (c - b)
        if abs(m) <= tol or fb == 0.0:
            return b, fb
        if abs(e) < tol or abs(fa) <= abs(fb):
            d = e = m
        else:
            s = fb / fa
            if a == c:
                p = 2.0 * m * s
                q = 1.0 - s
            else:
                q = fa / fc
                r = fb / fc
                p = s * (2.0 * m * q * (q - r) - (b - a) * (r - 1.0))
                q = (q - 1.0) * (r - 1.0) * (s - 1.0)
            if p > 0:
                q = -q
            else:
                p = -p
            if 2.0 * p < min(3.0 * m * q - abs(tol * q), abs(e * q)):
                e = d
                d = p / q
            else:
                d = e = m
        a, fa = b, fb
        b = b + (d if abs(d) > tol else (tol if m > 0 else -tol))
        fb = f(b)
    return b, fb


def find_root(gamma: float, bracket: tuple, mode: str = "dd",
              eps_tol: float = 1e-10, policy: ShootPolicy = ShootPolicy(),
              check_return: bool = False) -> EpsRoot:
    """Bracketed root of eps -> S(eps): one homoclinic parameter value."""
    _require_splitting_gamma(gamma)
    lo, hi = float(bracket[0]), float(bracket[1])
    if not 0 < lo < hi:
        raise DomainError(f"bad bracket {bracket}")

    shots = {}

    def S_of(e):
        p = Params.make(gamma, e, mode)
        rec = shoot(p, policy)
        shots[e] = rec
        return float(rec.S)

    f_lo = S_of(lo)
    f_hi = S_of(hi)
    if f_lo == 0.0 and f_hi == 0.0:
        raise BracketError("S vanishes at both bracket ends")
    root, f_root = _brent(S_of, lo, hi, f_lo, f_hi, xtol=eps_tol)

    geo = geometry(gamma)
    n = int(round(float(geo.alpha) / (math.pi * root)))
    amp = splitting_amplitude(gamma, root)
    noise = _noise_floor(mode, root, -6.0)
    root_tol = policy.root_tol if policy.root_tol is not None else \
        max(1e-4 * amp, 20.0 * noise)
    partial = abs(f_root) > root_tol
    ret = None
    if check_return:
        ret = homoclinic_return(Params.make(gamma, root, mode), shots[root])
    return EpsRoot(n=n, eps_n=root, residual_S=f_root,
                   bracket=(lo, hi), root_tol=root_tol,
                   partial=partial, return_distance=ret)


def roots_for_range(gamma: float, n_min: int, n_max: int, mode: str = "dd",
                    eps_tol: float = 1e-10, check_return: bool = False,
                    policy: ShootPolicy = ShootPolicy()):
    """Roots eps_n for n = n_min..n_max from predicted brackets."""
    out = []
    for n in range(n_min, n_max + 1):
        center = predicted_eps(gamma, n)
        for width in (0.3 / n, 0.45 / n):
            lo, hi = center * (1 - width), center * (1 + width)
            try:
                root = find_root(gamma, (lo, hi), mode=mode, eps_tol=eps_tol,
                                 policy=policy, check_return=check_return)
                break
            except BracketError:
                root = None
        if root is None:
            raise BracketError(
                f"no sign change around predicted eps_{n} = {center:.6g}")
        out.append(root)
    return out


def sweep(gamma: float, eps_grid: Sequence[float], mode: str = "dd",
          jobs: int = 1, policy: ShootPolicy = ShootPolicy()):
    """Independent shots over an eps grid (ordered by the grid, not by
    completion; worker count does not affect the output)."""
    grid = [float(e) for e in eps_grid]

    def one(e):
        return shoot(Params.make(gamma, e, mode), policy)

    if jobs and jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as ex:
            return list(ex.map(one, grid))
    return [one(e) for e in grid]


def fit_stokes(records: Sequence[ShotRecord]) -> ThetaFit:
    """Least-squares Stokes amplitude from sweep records.

    Fits A(eps) ~ Theta sin(alpha/eps); uncertainty is the max residual
    over max |sin|. A secondary fit with an eps-linear phase is attached
    as a diagnostic of the remainder term. Needs >= 8 usable records.
    """
    recs = [r for r in records if math.isfinite(float(r.S))]
    if len(recs) < 8:
        raise FitError(f"fit refused: {len(recs)} usable records < 8")
    gamma = recs[0].gamma
    geo = geometry(gamma)
    alpha = float(geo.alpha)
    A = [r.amplitude() for r in recs]
    s = [float(sin(geo.alpha / Real.of(r.eps, "dd"))) for r in recs]
    ss = sum(x * x for x in s)
    theta = sum(a * x for a, x in zip(A, s)) / ss
    res = [a - theta * x for a, x in zip(A, s)]
    max_s = max(abs(x) for x in s)
    uncertainty = max(abs(r) for r in res) / max_s
    rel = max(abs(r) for r in res) / abs(theta) if theta else math.inf

    # remainder diagnostic: allow a phase linear in eps
    best = None
    for i in range(-140, 21):
        c = 0.05 * i
        s2 = [math.sin(alpha / r.eps + c * r.eps) for r in recs]
        d = sum(x * x for x in s2)
        if d == 0:
            continue
        t2 = sum(a * x for a, x in zip(A, s2)) / d
        r2 = max(abs(a - t2 * x) for a, x in zip(A, s2))
        if best is None or r2 < best[0]:
            best = (r2, c, t2)
    detail = {
        "phase_fit": {"c": best[1], "theta": best[2],
                      "rel_max_residual": best[0] / abs(best[2])},
        "alpha": alpha,
    }
    return ThetaFit(theta=theta, method="amplitude-fit",
                    uncertainty=uncertainty, rel_max_residual=rel,
                    n_records=len(recs), detail=detail)


def sign_changes_per_interval(records: Sequence[ShotRecord]):
    """Count sign changes of S inside each interval between consecutive
    zeros of sin(alpha/eps) covered by the sweep."""
    recs = sorted(records, key=lambda r: r.eps)
    if not recs:
        return []
    gamma = recs[0].gamma
    alpha = float(geometry(gamma).alpha)
    lo, hi = recs[0].eps, recs[-1].eps
    ks = []
    k = max(1, int(math.floor(alpha / (math.pi * hi))))
    while alpha / (k * math.pi) >= lo - 1e-15:
        z = alpha / (k * math.pi)
        if z <= hi + 1e-15:
            ks.append(z)
        k += 1
    zeros = sorted(ks)
    out = []
    for z0, z1 in zip(zeros[:-1], zeros[1:]):
        inside = [r for r in recs if z0 < r.eps < z1]
        changes = sum(
            1 for a, b in zip(inside[:-1], inside[1:])
            if float(a.S) * float(b.S) < 0)
        out.append(((z0, z1), changes))
    return out
