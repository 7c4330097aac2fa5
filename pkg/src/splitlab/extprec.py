"""Configurable extended-precision real and complex scalars.

Three precision modes, selected at runtime and carried by every value:

==========  ==================  ==============  ===========
mode        representation      machine eps     ~digits
==========  ==================  ==============  ===========
``"std"``   one float64         2^-52           16
``"dd"``    pair of float64     2^-104          31
``"qd"``    four float64        2^-209          62
==========  ==================  ==============  ===========

Arithmetic on the extended modes is compensated pair arithmetic
(see _ddcore/_qdcore); elementary functions are built by argument
reduction plus Taylor series or Newton refinement from a float64 seed,
so no external multiprecision library is needed at runtime.

Accuracy contracts: +, -, *, / and sqrt to <= 4 ulp of the active mode;
elementary functions to <= 8 ulp. Trigonometric argument reduction is a
single extended-precision pass (no Payne-Hanek), so relative accuracy
degrades for arguments within ~eps*|x| of a zero of the function; the
package never evaluates there.

For relative accuracy near log's fixed point use log1p: log itself, like
any implementation, loses relative (not absolute) accuracy as x -> 1.

NaN propagates through arithmetic; ordering comparisons on NaN raise.
"""

from __future__ import annotations

import math
from decimal import Decimal, localcontext
from fractions import Fraction

from . import _ddcore as _dd
from . import _qdcore as _qd
from .errors import DomainError

__all__ = [
    "MODES", "Real", "Complex", "mode_eps", "mode_digits", "elementary",
    "sqrt", "exp", "log", "log1p", "sin", "cos", "sincos", "sinh", "cosh",
    "arccos", "arccosh", "pi", "half_pi", "two_pi", "ln2",
]

MODES = ("std", "dd", "qd")
_NLIMBS = {"std": 1, "dd": 2, "qd": 4}
_EPS = {"std": 2.0 ** -52, "dd": 2.0 ** -104, "qd": 2.0 ** -209}
_DIGITS = {"std": 17, "dd": 34, "qd": 65}

# 4-limb expansions of the needed constants (successive float64 extraction
# of 300-bit values; the leading 1, 2 or 4 limbs serve std/dd/qd).
_PI4 = (3.141592653589793, 1.2246467991473532e-16,
        -2.9947698097183397e-33, 1.1124542208633653e-49)
_TWO_PI4 = (6.283185307179586, 2.4492935982947064e-16,
            -5.989539619436679e-33, 2.2249084417267306e-49)
_HALF_PI4 = (1.5707963267948966, 6.123233995736766e-17,
             -1.4973849048591698e-33, 5.562271104316826e-50)
_LN2_4 = (0.6931471805599453, 2.3190468138462996e-17,
          5.707708438416212e-34, -3.5824322106018114e-50)

# six-limb variants used only for argument reduction (the two guard limbs
# keep k*C exact to beyond quad-pair precision)
_HALF_PI_RED = (1.5707963267948966, 6.123233995736766e-17,
                -1.4973849048591698e-33, 5.562271104316826e-50,
                2.836115989820158e-66, 8.724931080676243e-84)
_LN2_RED = (0.6931471805599453, 2.3190468138462996e-17,
            5.707708438416212e-34, -3.5824322106018114e-50,
            -1.352169675798863e-66, 6.080638740240814e-83)


def mode_eps(mode: str) -> float:
    return _EPS[mode]


def mode_digits(mode: str) -> int:
    return _DIGITS[mode]


def _check_mode(mode):
    if mode not in _NLIMBS:
        raise ValueError(f"unknown precision mode {mode!r}; expected one of {MODES}")


# ---------------------------------------------------------------------------
# limb-tuple arithmetic, dispatched per mode
# ---------------------------------------------------------------------------

def _t_add(a, b, mode):
    if mode == "dd":
        return _dd.dd_add(a[0], a[1], b[0], b[1])
    if mode == "qd":
        return _qd.qd_add(*a, *b)
    return (a[0] + b[0],)


def _t_sub(a, b, mode):
    if mode == "dd":
        return _dd.dd_sub(a[0], a[1], b[0], b[1])
    if mode == "qd":
        return _qd.qd_sub(*a, *b)
    return (a[0] - b[0],)


def _t_mul(a, b, mode):
    if mode == "dd":
        return _dd.dd_mul(a[0], a[1], b[0], b[1])
    if mode == "qd":
        return _qd.qd_mul(*a, *b)
    return (a[0] * b[0],)


def _t_div(a, b, mode):
    if mode == "dd":
        return _dd.dd_div(a[0], a[1], b[0], b[1])
    if mode == "qd":
        return _qd.qd_div(*a, *b)
    return (a[0] / b[0],)


def _t_neg(a):
    return tuple(-x for x in a)


def _t_mul_f(a, f, mode):
    # multiply by one float (exactly representable factor)
    if mode == "dd":
        return _dd.dd_mul_f(a[0], a[1], f)
    if mode == "qd":
        return _qd.qd_mul_f(*a, f)
    return (a[0] * f,)


def _t_add_f(a, f, mode):
    if mode == "dd":
        return _dd.dd_add_f(a[0], a[1], f)
    if mode == "qd":
        return _qd.qd_add_f(*a, f)
    return (a[0] + f,)


def _t_ldexp(a, k):
    return tuple(math.ldexp(x, k) for x in a)


def _t_zero(mode):
    return (0.0,) * _NLIMBS[mode]


def _t_from_float(x, mode):
    return (float(x),) + (0.0,) * (_NLIMBS[mode] - 1)


def _t_from_fraction(fr, mode):
    out = []
    for _ in range(_NLIMBS[mode]):
        f = float(fr)
        out.append(f)
        fr = fr - Fraction(f)
    return tuple(out)


def _t_from_int(n, mode):
    if abs(n) <= 2 ** 53:
        return _t_from_float(float(n), mode)
    return _t_from_fraction(Fraction(n), mode)


def _const(limbs4, mode):
    n = _NLIMBS[mode]
    return limbs4[:n]


def _t_is_nan(a):
    return any(math.isnan(x) for x in a)


def _t_sub_k_const(a, k, limbs4, mode):
    # a - k*C where C is a 4-limb constant: each k*limb is an exact two_prod,
    # so the reduction error stays at eps*|result| even for k in the hundreds
    r = a
    for c in limbs4:
        ph, pl = _dd.two_prod(c, k)
        if mode == "dd":
            r = _dd.dd_sub(r[0], r[1], ph, pl)
        elif mode == "qd":
            r = _qd.qd_sub(*r, ph, pl, 0.0, 0.0)
        else:
            r = (r[0] - ph - pl,)
    return r


def _t_sign_cmp(a, b, mode):
    # -1, 0, +1 of a - b; limbs are canonical so the head decides ties limb-wise
    for x, y in zip(a, b):
        if x < y:
            return -1
        if x > y:
            return 1
    return 0


# ---------------------------------------------------------------------------
# elementary functions on limb tuples (extended modes; std delegates to math)
# ---------------------------------------------------------------------------

_EXP_REDUCE = {"dd": 9, "qd": 14}
_NEWTON_ITERS = {"dd": 2, "qd": 3}


def _t_sqrt(a, mode):
    if a[0] == 0.0 and all(x == 0.0 for x in a):
        return _t_zero(mode)
    if a[0] < 0.0:
        raise DomainError(f"sqrt of negative value {a[0]!r}")
    if mode == "std":
        return (math.sqrt(a[0]),)
    r = _t_from_float(1.0 / math.sqrt(a[0]), mode)
    three = _t_from_float(3.0, mode)
    for _ in range(_NEWTON_ITERS[mode]):
        ar2 = _t_mul(a, _t_mul(r, r, mode), mode)
        r = _t_mul_f(_t_mul(r, _t_sub(three, ar2, mode), mode), 0.5, mode)
    s = _t_mul(a, r, mode)
    s = _t_mul_f(_t_add(s, _t_div(a, s, mode), mode), 0.5, mode)
    return s


def _t_exp(a, mode):
    if mode == "std":
        return (math.exp(a[0]),)
    x = a[0]
    if x > 709.0:
        raise OverflowError("exp overflow in extended precision")
    if x < -746.0:
        return _t_zero(mode)
    k = int(round(x / _LN2_4[0]))
    r = _t_sub_k_const(a, float(k), _LN2_RED, mode)
    m = _EXP_REDUCE[mode]
    r = _t_ldexp(r, -m)
    # y = expm1(r) via Taylor; |r| <= ln2 / 2^(m+1)
    eps = _EPS[mode]
    term = r
    y = r
    n = 2
    nt = _t_from_int(n, mode)
    while abs(term[0]) > eps * 1e-3 or n < 4:
        term = _t_div(_t_mul(term, r, mode), nt, mode)
        y = _t_add(y, term, mode)
        n += 1
        nt = _t_from_float(float(n), mode)
    for _ in range(m):
        y = _t_add(_t_ldexp(y, 1), _t_mul(y, y, mode), mode)
    return _t_ldexp(_t_add_f(y, 1.0, mode), k)


def _t_log(a, mode):
    if a[0] <= 0.0:
        raise DomainError(f"log of non-positive value {a[0]!r}")
    if mode == "std":
        return (math.log(a[0]),)
    y = _t_from_float(math.log(a[0]), mode)
    for _ in range(_NEWTON_ITERS[mode]):
        e = _t_exp(_t_neg(y), mode)
        p = _t_mul(a, e, mode)
        y = _t_add(y, _t_add_f(p, -1.0, mode), mode)
    return y


def _t_log1p(u, mode):
    if u[0] <= -1.0:
        raise DomainError("log1p of value <= -1")
    if mode == "std":
        return (math.log1p(u[0]),)
    if abs(u[0]) > 0.25:
        return _t_log(_t_add_f(u, 1.0, mode), mode)
    # 2*atanh(z), z = u/(2+u)
    z = _t_div(u, _t_add_f(u, 2.0, mode), mode)
    z2 = _t_mul(z, z, mode)
    eps = _EPS[mode]
    term = z
    y = z
    n = 3
    while abs(term[0]) > eps * abs(y[0]) * 1e-3:
        term = _t_mul(term, z2, mode)
        y = _t_add(y, _t_div(term, _t_from_float(float(n), mode), mode), mode)
        n += 2
    return _t_ldexp(y, 1)


def _t_sincos_reduced(r, mode):
    # Taylor for |r| <= pi/4 + reduction slack
    eps = _EPS[mode]
    r2 = _t_mul(r, r, mode)
    # sin
    term = r
    s = r
    n = 3
    while abs(term[0]) > eps * 1e-3:
        term = _t_neg(_t_div(_t_mul(term, r2, mode),
                             _t_from_float(float(n * (n - 1)), mode), mode))
        s = _t_add(s, term, mode)
        n += 2
    # cos
    term = _t_from_float(1.0, mode)
    c = term
    n = 2
    while abs(term[0]) > eps * 1e-3:
        term = _t_neg(_t_div(_t_mul(term, r2, mode),
                             _t_from_float(float(n * (n - 1)), mode), mode))
        c = _t_add(c, term, mode)
        n += 2
    return s, c


def _t_sincos(a, mode):
    if mode == "std":
        return (math.sin(a[0]),), (math.cos(a[0]),)
    if abs(a[0]) > 1e12:
        raise DomainError("trigonometric argument too large for single-pass reduction")
    j = int(round(a[0] / _HALF_PI4[0]))
    r = _t_sub_k_const(a, float(j), _HALF_PI_RED, mode)
    s, c = _t_sincos_reduced(r, mode)
    q = j & 3
    if q == 0:
        return s, c
    if q == 1:
        return c, _t_neg(s)
    if q == 2:
        return _t_neg(s), _t_neg(c)
    return _t_neg(c), s


def _t_sinh(a, mode):
    if mode == "std":
        return (math.sinh(a[0]),)
    if abs(a[0]) >= 1.0:
        e = _t_exp(a, mode)
        inv = _t_div(_t_from_float(1.0, mode), e, mode)
        return _t_ldexp(_t_sub(e, inv, mode), -1)
    # Taylor x * sum x^(2k) / (2k+1)!
    eps = _EPS[mode]
    x2 = _t_mul(a, a, mode)
    term = a
    y = a
    n = 3
    while abs(term[0]) > eps * abs(y[0] if y[0] else 1.0) * 1e-3:
        term = _t_div(_t_mul(term, x2, mode),
                      _t_from_float(float(n * (n - 1)), mode), mode)
        y = _t_add(y, term, mode)
        n += 2
    return y


def _t_cosh(a, mode):
    if mode == "std":
        return (math.cosh(a[0]),)
    e = _t_exp(a, mode)
    inv = _t_div(_t_from_float(1.0, mode), e, mode)
    return _t_ldexp(_t_add(e, inv, mode), -1)


def _t_arcsin_small(s, mode):
    # Newton on sin(t) = s, |s| <= ~0.36 so cos(t) stays near 1
    t = _t_from_float(math.asin(s[0]), mode)
    for _ in range(_NEWTON_ITERS[mode] + 1):
        st, ct = _t_sincos(t, mode)
        t = _t_sub(t, _t_div(_t_sub(st, s, mode), ct, mode), mode)
    return t


def _t_arccos(a, mode):
    if a[0] > 1.0 or a[0] < -1.0:
        raise DomainError(f"arccos argument {a[0]!r} outside [-1, 1]")
    if mode == "std":
        return (math.acos(a[0]),)
    one = _t_from_float(1.0, mode)
    if _t_sign_cmp(a, one, mode) == 0:
        return _t_zero(mode)
    if _t_sign_cmp(a, _t_neg(one), mode) == 0:
        return _const(_PI4, mode)
    if a[0] > 0.75:
        # arccos x = 2 arcsin(sqrt((1-x)/2))
        s = _t_sqrt(_t_ldexp(_t_sub(one, a, mode), -1), mode)
        return _t_ldexp(_t_arcsin_small(s, mode), 1)
    if a[0] < -0.75:
        s = _t_sqrt(_t_ldexp(_t_add(one, a, mode), -1), mode)
        return _t_sub(_const(_PI4, mode), _t_ldexp(_t_arcsin_small(s, mode), 1), mode)
    y = _t_from_float(math.acos(a[0]), mode)
    for _ in range(_NEWTON_ITERS[mode] + 1):
        sy, cy = _t_sincos(y, mode)
        y = _t_add(y, _t_div(_t_sub(cy, a, mode), sy, mode), mode)
    return y


def _t_arccosh(a, mode):
    if a[0] < 1.0:
        raise DomainError(f"arccosh argument {a[0]!r} below 1")
    if mode == "std":
        return (math.acosh(a[0]),)
    one = _t_from_float(1.0, mode)
    if _t_sign_cmp(a, one, mode) == 0:
        return _t_zero(mode)
    u = _t_sub(a, one, mode)
    t = _t_sqrt(_t_mul(u, _t_add_f(u, 2.0, mode), mode), mode)
    return _t_log1p(_t_add(u, t, mode), mode)


# ---------------------------------------------------------------------------
# public scalar types
# ---------------------------------------------------------------------------

class Real:
    """Immutable extended-precision real scalar tagged with its mode."""

    __slots__ = ("limbs", "mode")

    def __init__(self, limbs, mode):
        object.__setattr__(self, "limbs", tuple(float(x) for x in limbs))
        object.__setattr__(self, "mode", mode)

    def __setattr__(self, *_):
        raise AttributeError("Real is immutable")

    # -- construction -------------------------------------------------------

    @staticmethod
    def of(value, mode: str = "dd") -> "Real":
        """Build a Real from float, int, str, Fraction or another Real."""
        _check_mode(mode)
        if isinstance(value, Real):
            if value.mode == mode:
                return value
            if _NLIMBS[value.mode] <= _NLIMBS[mode]:
                limbs = value.limbs + (0.0,) * (_NLIMBS[mode] - len(value.limbs))
                return Real(limbs, mode)
            return Real.of(value.to_fraction(), mode)
        if isinstance(value, float):
            return Real(_t_from_float(value, mode), mode)
        if isinstance(value, int):
            return Real(_t_from_int(value, mode), mode)
        if isinstance(value, Fraction):
            return Real(_t_from_fraction(value, mode), mode)
        if isinstance(value, str):
            frac = Fraction(Decimal(value))
            return Real(_t_from_fraction(frac, mode), mode)
        raise TypeError(f"cannot build Real from {type(value).__name__}")

    @staticmethod
    def zero(mode: str = "dd") -> "Real":
        _check_mode(mode)
        return Real(_t_zero(mode), mode)

    @staticmethod
    def from_limbs(limbs, mode: str) -> "Real":
        _check_mode(mode)
        if len(limbs) != _NLIMBS[mode]:
            raise ValueError(f"mode {mode} needs {_NLIMBS[mode]} limbs, got {len(limbs)}")
        return Real(limbs, mode)

    # -- views --------------------------------------------------------------

    @property
    def hi(self) -> float:
        return self.limbs[0]

    @property
    def is_nan(self) -> bool:
        return _t_is_nan(self.limbs)

    def to_fraction(self) -> Fraction:
        if self.is_nan:
            raise ValueError("NaN has no rational value")
        return sum((Fraction(x) for x in self.limbs), Fraction(0))

    def to_decimal(self) -> str:
        """Full-precision decimal string (round-trips losslessly via Real.of)."""
        if self.is_nan:
            return "nan"
        fr = self.to_fraction()
        if fr == 0:
            return "0"
        with localcontext() as ctx:
            ctx.prec = _DIGITS[self.mode]
            d = Decimal(fr.numerator) / Decimal(fr.denominator)
        return str(d)

    def __float__(self):
        return self.limbs[0]

    def __repr__(self):
        return f"Real({self.to_decimal()!s}, mode={self.mode!r})"

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Real):
            if other.mode != self.mode:
                raise TypeError(f"mixed precision modes {self.mode!r} and {other.mode!r}")
            return other
        if isinstance(other, (int, float)):
            return Real.of(other, self.mode)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Real(_t_add(self.limbs, o.limbs, self.mode), self.mode)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Real(_t_sub(self.limbs, o.limbs, self.mode), self.mode)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Real(_t_sub(o.limbs, self.limbs, self.mode), self.mode)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Real(_t_mul(self.limbs, o.limbs, self.mode), self.mode)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Real(_t_div(self.limbs, o.limbs, self.mode), self.mode)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Real(_t_div(o.limbs, self.limbs, self.mode), self.mode)

    def __neg__(self):
        return Real(_t_neg(self.limbs), self.mode)

    def __abs__(self):
        return -self if self.limbs[0] < 0.0 else self

    def ldexp(self, k: int) -> "Real":
        return Real(_t_ldexp(self.limbs, k), self.mode)

    # -- comparisons (total on non-NaN; NaN raises) --------------------------

    def _cmp(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.is_nan or o.is_nan:
            raise ValueError("ordering comparison with NaN")
        return _t_sign_cmp(self.limbs, o.limbs, self.mode)

    def __eq__(self, other):
        try:
            c = self._cmp(other)
        except ValueError:
            return False
        if c is NotImplemented:
            return NotImplemented
        return c == 0

    def __ne__(self, other):
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    def __lt__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c < 0

    def __le__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c <= 0

    def __gt__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c > 0

    def __ge__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c >= 0

    def __hash__(self):
        return hash((self.limbs, self.mode))


class Complex:
    """Complex scalar over two same-mode Reals."""

    __slots__ = ("re", "im")

    def __init__(self, re: Real, im: Real):
        if not isinstance(re, Real) or not isinstance(im, Real):
            raise TypeError("Complex components must be Real")
        if re.mode != im.mode:
            raise TypeError("Complex components must share a mode")
        object.__setattr__(self, "re", re)
        object.__setattr__(self, "im", im)

    def __setattr__(self, *_):
        raise AttributeError("Complex is immutable")

    @staticmethod
    def of(value, mode: str = "dd") -> "Complex":
        if isinstance(value, Complex):
            return Complex(Real.of(value.re, mode), Real.of(value.im, mode))
        if isinstance(value, complex):
            return Complex(Real.of(value.real, mode), Real.of(value.imag, mode))
        return Complex(Real.of(value, mode), Real.zero(mode))

    @property
    def mode(self):
        return self.re.mode

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"Complex({self.re.to_decimal()}, {self.im.to_decimal()}, mode={self.mode!r})"

    def conjugate(self) -> "Complex":
        return Complex(self.re, -self.im)

    def __add__(self, other):
        o = Complex.of(other, self.mode) if not isinstance(other, Complex) else other
        return Complex(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = Complex.of(other, self.mode) if not isinstance(other, Complex) else other
        return Complex(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return Complex.of(other, self.mode) - self

    def __neg__(self):
        return Complex(-self.re, -self.im)

    def __mul__(self, other):
        if isinstance(other, (int, float, Real)):
            return Complex(self.re * other, self.im * other)
        o = other if isinstance(other, Complex) else Complex.of(other, self.mode)
        return Complex(self.re * o.re - self.im * o.im,
                       self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, float, Real)):
            return Complex(self.re / other, self.im / other)
        o = other if isinstance(other, Complex) else Complex.of(other, self.mode)
        d = o.abs2()
        n = self * o.conjugate()
        return Complex(n.re / d, n.im / d)

    def abs2(self) -> Real:
        # sum of squares: no cancellation regardless of |re| vs |im|
        return self.re * self.re + self.im * self.im

    def __abs__(self) -> Real:
        return sqrt(self.abs2())

    def __eq__(self, other):
        if not isinstance(other, Complex):
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))


# ---------------------------------------------------------------------------
# public elementary functions
# ---------------------------------------------------------------------------

def _wrap1(tfn):
    def fn(x: Real) -> Real:
        if not isinstance(x, Real):
            raise TypeError("expected a Real")
        return Real(tfn(x.limbs, x.mode), x.mode)
    return fn


sqrt = _wrap1(_t_sqrt)
exp = _wrap1(_t_exp)
log = _wrap1(_t_log)
log1p = _wrap1(_t_log1p)
sinh = _wrap1(_t_sinh)
cosh = _wrap1(_t_cosh)
arccos = _wrap1(_t_arccos)
arccosh = _wrap1(_t_arccosh)


def sincos(x: Real):
    s, c = _t_sincos(x.limbs, x.mode)
    return Real(s, x.mode), Real(c, x.mode)


def sin(x: Real) -> Real:
    return sincos(x)[0]


def cos(x: Real) -> Real:
    return sincos(x)[1]


_ELEMENTARY = {
    "exp": exp, "log": log, "sin": sin, "cos": cos,
    "sinh": sinh, "cosh": cosh, "sqrt": sqrt,
    "arccos": arccos, "arccosh": arccosh,
}


def elementary(fn: str, x: Real) -> Real:
    """Evaluate the named elementary function at x in x's precision mode."""
    try:
        f = _ELEMENTARY[fn]
    except KeyError:
        raise ValueError(f"unknown elementary function {fn!r}; "
                         f"choose from {sorted(_ELEMENTARY)}") from None
    return f(x)


def pi(mode: str = "dd") -> Real:
    _check_mode(mode)
    return Real(_const(_PI4, mode), mode)


def two_pi(mode: str = "dd") -> Real:
    _check_mode(mode)
    return Real(_const(_TWO_PI4, mode), mode)


def half_pi(mode: str = "dd") -> Real:
    _check_mode(mode)
    return Real(_const(_HALF_PI4, mode), mode)


def ln2(mode: str = "dd") -> Real:
    _check_mode(mode)
    return Real(_const(_LN2_4, mode), mode)
