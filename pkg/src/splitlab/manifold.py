"""Local unstable manifold of the origin as an exponential series.

The 1D unstable manifold leaves the origin along the eigenvector (1,1,0,0)
of the eigenvalue +1, so it admits the ansatz

    u(x) = sum_k b_k e^(kx),    v(x) = sum_k c_k e^(kx),   k >= 1,

with b_1 = 1 (normalization; time-origin fixed up to shift) and c_1 = 0.
Substituting into the system gives the triangular recurrence

    (k^2 - 1) b_k       = c_k - F_k
    (k^2 + 1/eps^2) c_k = G_k

where F_k, G_k are the e^(kx) convolution coefficients of f(u) and of
f'(u)(u + v - f(u)) + f''(u)(u')^2; no resonance occurs since k^2 != 1 for
k >= 2. Far down the manifold (x0 << 0) the truncated sum provides seed
states with a computable geometric tail bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import SeedTooCloseError
from .extprec import Real, exp
from .model import Params, State

__all__ = ["ManifoldSeries", "unstable_series", "seed_state", "involute"]


@dataclass(frozen=True)
class ManifoldSeries:
    """Coefficients b[k], c[k] for 1 <= k <= K (index 0 unused, zero)."""

    K: int
    b: tuple
    c: tuple
    params: Params
    truncated: bool = False

    def growth_rate(self) -> float:
        """max_k |b_k|^(1/k): reciprocal radius of convergence in e^x."""
        return max(abs(self.b[k].hi) ** (1.0 / k)
                   for k in range(1, self.K + 1) if self.b[k].hi != 0.0)


def _series_mode(params: Params) -> str:
    # std-mode shots still integrate on double-pair kernels; build the
    # series at matching precision
    return "dd" if params.mode == "std" else params.mode


def unstable_series(params: Params, K: int = 40) -> ManifoldSeries:
    """Coefficients of the unstable-manifold expansion through order K."""
    if K < 2:
        raise ValueError(f"series order K must be >= 2, got {K}")
    mode = _series_mode(params)
    g = Real.of(params.gamma, mode)
    inv_eps2 = 1 / (Real.of(params.eps, mode) * Real.of(params.eps, mode))
    zero = Real.zero(mode)
    one = Real.of(1.0, mode)

    b = [zero, one]          # b_1 = 1
    c = [zero, zero]         # c_1 = 0
    sq = [zero, zero]        # [u^2]_k
    cu = [zero, zero]        # [u^3]_k
    f = [zero, zero]         # [f(u)]_k
    w = [zero, b[1]]         # [u + v - f(u)]_k
    fp = [zero, 2 * b[1]]    # [f'(u)]_k = 2 u + 6 gamma u^2
    us = [zero, zero]        # [(u')^2]_k

    truncated = False
    for k in range(2, K + 1):
        sq_k = zero
        for i in range(1, k):
            sq_k = sq_k + b[i] * b[k - i]
        cu_k = zero
        for i in range(2, k):
            cu_k = cu_k + sq[i] * b[k - i]
        f_k = sq_k + 2 * g * cu_k
        us_k = zero
        for i in range(1, k):
            us_k = us_k + (i * (k - i)) * (b[i] * b[k - i])
        G_k = 2 * us_k
        for i in range(1, k):
            G_k = G_k + fp[i] * w[k - i]
        for i in range(1, k - 1):
            G_k = G_k + (12 * g) * (b[i] * us[k - i])
        F_k = f_k
        c_k = G_k / (k * k + inv_eps2)
        b_k = (c_k - F_k) / (k * k - 1)
        if not (math.isfinite(b_k.hi) and math.isfinite(c_k.hi)):
            truncated = True
            K = k - 1
            break
        b.append(b_k)
        c.append(c_k)
        sq.append(sq_k)
        cu.append(cu_k)
        f.append(f_k)
        w.append(b_k + c_k - f_k)
        fp.append(2 * b_k + 6 * g * sq_k)
        us.append(us_k)

    return ManifoldSeries(K, tuple(b), tuple(c), params, truncated)


def recurrence_residuals(series: ManifoldSeries):
    """Re-derive F_k, G_k from the finished series (reversed summation
    order) and report the defining-equation residuals in ulps of each
    equation's scale; exactness check for the triangular recurrence."""
    from .extprec import mode_eps

    p = series.params
    mode = _series_mode(p)
    g = Real.of(p.gamma, mode)
    inv_eps2 = 1 / (Real.of(p.eps, mode) * Real.of(p.eps, mode))
    b, c, K = series.b, series.c, series.K
    zero = Real.zero(mode)
    eps = mode_eps(mode)

    sq = [zero] * (K + 1)
    cu = [zero] * (K + 1)
    us = [zero] * (K + 1)
    for k in range(2, K + 1):
        s = zero
        t = zero
        for i in range(k - 1, 0, -1):
            s = s + b[i] * b[k - i]
            t = t + (i * (k - i)) * (b[i] * b[k - i])
        sq[k] = s
        us[k] = t
    for k in range(3, K + 1):
        s = zero
        for i in range(k - 1, 1, -1):
            s = s + sq[i] * b[k - i]
        cu[k] = s
    f = [sq[k] + 2 * g * cu[k] for k in range(K + 1)]
    w = [b[k] + c[k] - f[k] for k in range(K + 1)]
    fp = [2 * b[k] + 6 * g * sq[k] for k in range(K + 1)]

    out = []
    for k in range(2, K + 1):
        G_k = 2 * us[k]
        for i in range(k - 1, 0, -1):
            G_k = G_k + fp[i] * w[k - i]
        for i in range(k - 2, 0, -1):
            G_k = G_k + (12 * g) * (b[i] * us[k - i])
        r1 = (k * k - 1) * b[k] - (c[k] - f[k])
        r2 = (k * k + inv_eps2) * c[k] - G_k
        scale1 = max(abs(((k * k - 1) * b[k]).hi), abs(f[k].hi), eps)
        scale2 = max(abs(((k * k + inv_eps2) * c[k]).hi), abs(G_k.hi), eps)
        out.append((k, abs(r1.hi) / (scale1 * eps), abs(r2.hi) / (scale2 * eps)))
    return out


def seed_state(series: ManifoldSeries, x0):
    """State far down the manifold at parameter x0, with its tail bound.

    Requires the retained terms to decay geometrically: e^(x0) times the
    series growth rate must stay below 1/2, else SeedTooCloseError with a
    workable x0 suggestion.
    """
    p = series.params
    mode = _series_mode(p)
    x = Real.of(x0, mode)
    rho = series.growth_rate()
    ratio = math.exp(float(x)) * rho
    if not ratio < 0.5:
        suggestion = math.log(0.25 / rho)
        raise SeedTooCloseError(
            f"seed x0 = {float(x)} violates e^(x0) * growth < 1/2 "
            f"(got {ratio:.3g}); try x0 <= {suggestion:.2f}",
            suggested_x0=suggestion)

    E = exp(x)
    Ek = Real.of(1.0, mode)
    u = Real.zero(mode)
    up = Real.zero(mode)
    v = Real.zero(mode)
    vp = Real.zero(mode)
    last = 0.0
    for k in range(1, series.K + 1):
        Ek = Ek * E
        bu = series.b[k] * Ek
        cv = series.c[k] * Ek
        u = u + bu
        up = up + k * bu
        v = v + cv
        vp = vp + k * cv
        last = max(abs(bu.hi), abs(k * bu.hi), abs(cv.hi), abs(k * cv.hi))
    tail_ratio = min(ratio, 0.9)
    truncation_bound = last * tail_ratio / (1.0 - tail_ratio)
    if p.mode == "std":
        state = State.make(float(u), float(up), float(v), float(vp), "std")
    else:
        state = State(u, up, v, vp)
    return state, truncation_bound


def involute(s: State) -> State:
    """Reversibility involution (u, u', v, v') -> (u, -u', v, -v')."""
    return State(s.u, -s.up, s.v, -s.vp)
