"""Fixed-step Taylor-series integrator with dense output and section events.

One step of order p builds the trajectory's Taylor coefficients through the
field's product recurrences and sums them at sigma = h; the coefficients
double as dense output, and section crossings are polished by Newton on the
event component's polynomial. The method order is a runtime policy knob
(>= 8; local error scales like h^(order+1)).

The heavy lifting happens in _jets_dd/_jets_qd (numba kernels); this module
owns the typed API. Precision routing: std and dd states integrate on the
double-pair kernels (std results are rounded back), qd states on the
quad-pair kernels.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from . import _jets_dd as _jdd
from . import _jets_qd as _jqd
from .errors import BlowUpError, DomainError, NoCrossingError
from .extprec import Complex, Real
from .model import Params, State, first_integral, vector_field

__all__ = [
    "StepPolicy", "CrossingRecord", "Guard",
    "ModelField", "PlanarField", "InnerLineField", "FastOscField",
    "step", "flow_time", "flow_to_section", "taylor_jet", "Jet",
]

_KMODE = {"std": "dd", "dd": "dd", "qd": "qd"}
_KLIMBS = {"dd": 2, "qd": 4}


@dataclass(frozen=True)
class StepPolicy:
    """Fixed base step, method order and event tolerance for one run."""

    h: float
    method_order: int = 20
    max_steps: int = 2_000_000
    event_tol: float = 1e-20

    def __post_init__(self):
        if self.method_order < 8:
            raise DomainError(f"method_order must be >= 8, got {self.method_order}")
        if not self.h > 0.0:
            raise DomainError(f"step h must be positive, got {self.h}")
        if self.max_steps <= 0:
            raise DomainError("max_steps must be positive")

    @staticmethod
    def for_model(params: Params, method_order: int = 20,
                  event_tol: float = 1e-20, max_steps: int = 2_000_000) -> "StepPolicy":
        # h = eps/50 resolves the 1/eps oscillation with ~314 steps per period
        return StepPolicy(h=float(params.eps) / 50.0, method_order=method_order,
                          max_steps=max_steps, event_tol=event_tol)


@dataclass(frozen=True)
class Guard:
    """Crossing filter: require component > minimum at the event point."""

    component: int
    minimum: float


@dataclass(frozen=True)
class CrossingRecord:
    state_at_crossing: object
    t_cross: Real
    n_steps: int
    refined: bool
    residual: float


class _FieldBase:
    field_id: int
    dim: int

    def __init__(self, mode: str):
        self.mode = mode
        self.kmode = _KMODE[mode]

    # -- packing between typed states and kernel arrays ----------------------

    def pack(self, comps: Sequence[Real]) -> np.ndarray:
        n = _KLIMBS[self.kmode]
        arr = np.zeros((self.dim, n))
        for i, c in enumerate(comps):
            limbs = c.limbs[:n]
            arr[i, : len(limbs)] = limbs
        return arr

    def unpack_comps(self, arr: np.ndarray):
        n = _KLIMBS[self.kmode]
        if self.mode == "std":
            return tuple(Real.of(float(arr[i, 0] + arr[i, 1]), "std")
                         for i in range(self.dim))
        return tuple(Real.from_limbs(tuple(arr[i, :n]), self.mode)
                     for i in range(self.dim))

    def components(self, state) -> Sequence[Real]:
        raise NotImplementedError

    def wrap(self, arr: np.ndarray):
        raise NotImplementedError

    def component_name(self, i: int) -> str:
        return f"y{i}"

    def resolve_component(self, c) -> int:
        if isinstance(c, str):
            raise DomainError(f"field has no named component {c!r}")
        return int(c)


class ModelField(_FieldBase):
    """The 4D flow (u, u', v, v') of the full fourth-order model."""

    field_id = 0
    dim = 4
    _names = ("u", "up", "v", "vp")

    def __init__(self, params: Params):
        super().__init__(params.mode)
        self.params = params
        g = Real.of(params.gamma, self.kmode)
        e = Real.of(params.eps, self.kmode)
        inv_eps2 = 1 / (e * e)
        self.kparams = np.array(g.limbs + inv_eps2.limbs)

    def components(self, state: State):
        return state.components()

    def wrap(self, arr: np.ndarray) -> State:
        return State(*self.unpack_comps(arr))

    def component_name(self, i: int) -> str:
        return self._names[i]

    def resolve_component(self, c) -> int:
        if isinstance(c, str):
            return self._names.index(c)
        return int(c)

    def eval(self, state: State) -> State:
        return vector_field(self.params, state)

    def energy(self, state: State) -> Real:
        return first_integral(self.params, state)


class PlanarField(_FieldBase):
    """The planar limit flow (u, w)."""

    field_id = 1
    dim = 2
    _names = ("u", "w")

    def __init__(self, gamma, mode: str = "dd"):
        super().__init__(mode)
        self.gamma = Real.of(gamma, mode)
        self.kparams = np.array(Real.of(self.gamma, self.kmode).limbs)

    def components(self, state):
        return tuple(Real.of(c, self.mode) for c in state)

    def wrap(self, arr: np.ndarray):
        return self.unpack_comps(arr)

    def component_name(self, i: int) -> str:
        return self._names[i]

    def resolve_component(self, c) -> int:
        if isinstance(c, str):
            return self._names.index(c)
        return int(c)


class InnerLineField(_FieldBase):
    """Complexified inner flow Phi'''' + Phi'' = 2 Phi^3 along z0 + t*dir.

    State is (Phi, Phi', Phi'', Phi''') as four Complex values; internally
    eight real components.
    """

    field_id = 2
    dim = 8

    def __init__(self, direction: complex, mode: str = "dd"):
        super().__init__(mode)
        self.direction = complex(direction)
        d_re = Real.of(self.direction.real, self.kmode)
        d_im = Real.of(self.direction.imag, self.kmode)
        self.kparams = np.array(d_re.limbs + d_im.limbs)

    def components(self, state):
        out = []
        for z in state:
            out.append(z.re)
            out.append(z.im)
        return out

    def wrap(self, arr: np.ndarray):
        comps = self.unpack_comps(arr)
        return tuple(Complex(comps[2 * j], comps[2 * j + 1]) for j in range(4))


class FastOscField(_FieldBase):
    """Decoupled fast block (v, v') with v'' = -v/eps^2 (diagnostics)."""

    field_id = 3
    dim = 2
    _names = ("v", "vp")

    def __init__(self, eps, mode: str = "dd"):
        super().__init__(mode)
        self.eps = Real.of(eps, mode)
        e = Real.of(self.eps, self.kmode)
        self.kparams = np.array((1 / (e * e)).limbs)

    def components(self, state):
        return tuple(Real.of(c, self.mode) for c in state)

    def wrap(self, arr: np.ndarray):
        return self.unpack_comps(arr)

    def component_name(self, i: int) -> str:
        return self._names[i]

    def resolve_component(self, c) -> int:
        if isinstance(c, str):
            return self._names.index(c)
        return int(c)


def _kernels(field):
    return _jdd if field.kmode == "dd" else _jqd


def _check_model_step(field, policy: StepPolicy):
    # the 4D model flow oscillates at frequency 1/eps: demand >= 120 steps
    # per fast period, i.e. h <= eps/20 (with a whisker of float slack)
    if isinstance(field, ModelField):
        bound = float(field.params.eps) / 20.0
        if policy.h > bound * (1.0 + 1e-12):
            raise DomainError(
                f"step h = {policy.h} exceeds eps/20 = {bound:.3e}; the fast "
                "oscillation would be under-resolved")


def _raise_blowup(field, comp, t=None):
    name = field.component_name(comp)
    raise BlowUpError(
        f"trajectory blow-up: component {name} exceeded {_jdd.BLOWUP_LIMIT:g}",
        component=name, t=t)


def step(field, state, policy: StepPolicy):
    """One Taylor step of the policy's order.

    Returns (new_state, error_estimate); the estimate is the magnitude of
    the first omitted Taylor term, maximized over components (an upper-bound
    proxy, exact ratio 2^(order+1) under step halving).
    """
    _check_model_step(field, policy)
    y0 = field.pack(field.components(state))
    if field.kmode == "dd":
        y1, est = _jdd.step_dd(field.field_id, field.kparams, y0,
                               policy.method_order, policy.h)
    else:
        y1, est = _jqd.step_qd(field.field_id, field.kparams, y0,
                               policy.method_order, policy.h)
    for i in range(field.dim):
        if not abs(y1[i, 0]) <= _jdd.BLOWUP_LIMIT:
            _raise_blowup(field, i)
    return field.wrap(y1), float(np.max(est))


def flow_time(field, state, T, policy: StepPolicy):
    """Integrate for exactly time T (Real or float; sign sets direction)."""
    _check_model_step(field, policy)
    K = _kernels(field)
    if isinstance(T, Real):
        tt = Real.of(T, "dd") if T.mode == "std" else T
        Th = tt.limbs[0]
        Tl = tt.limbs[1] if len(tt.limbs) > 1 else 0.0
    else:
        Th, Tl = float(T), 0.0
    y0 = field.pack(field.components(state))
    if field.kmode == "dd":
        status, y, n, bc = K.flow_time_dd(field.field_id, field.kparams, y0,
                                          policy.method_order, policy.h, Th, Tl)
    else:
        status, y, n, bc = K.flow_time_qd(field.field_id, field.kparams, y0,
                                          policy.method_order, policy.h, Th, Tl)
    if status == _jdd.BLOWUP:
        _raise_blowup(field, bc)
    return field.wrap(y)


def flow_to_section(field, state, guard: Optional[Guard], policy: StepPolicy,
                    event_component=1, check_t0: bool = True) -> CrossingRecord:
    """First time the event component vanishes with the guard satisfied.

    Crossings are detected by per-step sign change, then polished by Newton
    on the step's Taylor polynomial until |event| <= policy.event_tol (dense
    output; bisection seeds the iteration, so a bracketed root cannot be
    lost). A crossing where the guard fails is skipped, not an error.
    """
    _check_model_step(field, policy)
    K = _kernels(field)
    ev = field.resolve_component(event_component)
    gidx, gmin = -1, 0.0
    if guard is not None:
        gidx = field.resolve_component(guard.component)
        gmin = float(guard.minimum)
    y0 = field.pack(field.components(state))
    if field.kmode == "dd":
        status, y, th, tl, n, resid = K.flow_section_dd(
            field.field_id, field.kparams, y0, policy.method_order, policy.h,
            policy.max_steps, ev, gidx, gmin, policy.event_tol, check_t0)
    else:
        status, y, th, tl, n, resid = K.flow_section_qd(
            field.field_id, field.kparams, y0, policy.method_order, policy.h,
            policy.max_steps, ev, gidx, gmin, policy.event_tol, check_t0)
    if status == _jdd.BLOWUP:
        _raise_blowup(field, int(resid))
    if status == _jdd.NO_CROSSING:
        raise NoCrossingError(
            f"no guarded crossing of component {field.component_name(ev)} "
            f"within {policy.max_steps} steps")
    mode = field.mode if field.mode != "std" else "dd"
    if mode == "qd":
        t_cross = Real.from_limbs((th, tl, 0.0, 0.0), "qd")
    else:
        t_cross = Real.from_limbs((th, tl), "dd")
    return CrossingRecord(field.wrap(y), t_cross, int(n),
                          status == _jdd.OK, float(resid))


class Jet:
    """Taylor coefficients of a trajectory at one point (dense output)."""

    def __init__(self, coeffs: np.ndarray, field, order: int):
        self.coeffs = coeffs
        self.field = field
        self.order = order

    def eval_component(self, comp, sigma: float) -> Real:
        i = self.field.resolve_component(comp)
        mode = "dd" if self.field.kmode == "dd" else "qd"
        acc = Real.zero(mode)
        s = Real.of(sigma, mode)
        for k in range(self.order, -1, -1):
            c = Real.from_limbs(tuple(self.coeffs[i, k, :]), mode)
            acc = acc * s + c
        return acc

    def derivative_component(self, comp, sigma: float) -> Real:
        i = self.field.resolve_component(comp)
        mode = "dd" if self.field.kmode == "dd" else "qd"
        acc = Real.zero(mode)
        s = Real.of(sigma, mode)
        for k in range(self.order, 0, -1):
            c = Real.from_limbs(tuple(self.coeffs[i, k, :]), mode)
            acc = acc * s + k * c
        return acc


def taylor_jet(field, state, order: int) -> Jet:
    """Coefficients (orders 0..order) of the trajectory through state."""
    K = _kernels(field)
    y0 = field.pack(field.components(state))
    if field.kmode == "dd":
        c = K.jet_dd(field.field_id, field.kparams, y0, order)
    else:
        c = K.jet_qd(field.field_id, field.kparams, y0, order)
    return Jet(c, field, order)
