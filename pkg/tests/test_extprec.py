"""Extended-precision scalar contracts against an mpmath oracle."""

import math
import random

import mpmath as mp
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from splitlab.errors import DomainError
from splitlab.extprec import (Complex, Real, arccos, arccosh, cos, cosh,
                              elementary, exp, log, mode_digits,
                              mode_eps, pi, sin, sincos, sinh, sqrt)

mp.mp.prec = 320

# frozen 50-digit oracle value of exp(-pi/0.1), computed once at 300 bits
EXP_NEG_10PI = "2.2711010683240938386792752390935475444909965545502e-14"


def mpf_of(x: Real):
    return sum(mp.mpf(v) for v in x.limbs)


def ulp_err(got: Real, expect, mode):
    g = mpf_of(got)
    if expect == 0:
        return abs(g) / mp.mpf(mode_eps(mode))
    return abs((g - expect) / expect) / mp.mpf(mode_eps(mode))


@pytest.mark.parametrize("mode", ["dd", "qd"])
def test_arithmetic_four_ulp(mode):
    rng = random.Random(42)
    worst = 0.0
    for i in range(400):
        a = Real.of(rng.uniform(-1, 1) * 10 ** rng.uniform(-10, 10), mode)
        b = Real.of(rng.uniform(-1, 1) * 10 ** rng.uniform(-10, 10), mode)
        if i % 5 == 0:
            # adversarial near-total cancellation in the low limbs
            b = -a * (1 - Real.of(2.0, mode).ldexp(-40 - (i % 3) * 30))
        ea, eb = mpf_of(a), mpf_of(b)
        for op, ref in (((a + b), ea + eb), ((a - b), ea - eb),
                        ((a * b), ea * eb)):
            worst = max(worst, float(ulp_err(op, ref, mode)))
        if eb != 0:
            worst = max(worst, float(ulp_err(a / b, ea / eb, mode)))
        if ea > 0:
            worst = max(worst, float(ulp_err(sqrt(a), mp.sqrt(ea), mode)))
    assert worst <= 4.0, f"arithmetic error {worst} ulp"


@pytest.mark.parametrize("mode", ["std", "dd", "qd"])
def test_elementary_eight_ulp(mode):
    rng = random.Random(7)
    cases = {
        "exp": (mp.exp, lambda: rng.uniform(-80, 80)),
        "log": (mp.log, lambda: 10 ** rng.uniform(-10, 10)),
        "sin": (mp.sin, lambda: rng.uniform(-50, 50)),
        "cos": (mp.cos, lambda: rng.uniform(-50, 50)),
        "sinh": (mp.sinh, lambda: rng.uniform(-30, 30)),
        "cosh": (mp.cosh, lambda: rng.uniform(-30, 30)),
        "sqrt": (mp.sqrt, lambda: 10 ** rng.uniform(-10, 10)),
        "arccos": (mp.acos, lambda: rng.uniform(-1, 1)),
        "arccosh": (mp.acosh, lambda: 1 + 10 ** rng.uniform(-3, 4)),
    }
    for name, (mfn, sample) in cases.items():
        worst = 0.0
        for _ in range(160):
            x = Real.of(sample(), mode)
            got = elementary(name, x)
            worst = max(worst, float(ulp_err(got, mfn(mpf_of(x)), mode)))
        assert worst <= 8.0, f"{name} in {mode}: {worst} ulp"


def test_elementary_identities_and_goldens():
    one = exp(Real.zero("dd"))
    assert float(one) == 1.0 and one.limbs[1] == 0.0
    assert float(arccosh(Real.of(1.0, "dd"))) == 0.0
    # golden: exp(-pi/(1/10)); input roundings of pi and 1/10 (<= 0.5 ulp
    # each) are amplified by the argument size 10*pi, hence the 64-ulp gate
    got = exp(-pi("dd") / Real.of("0.1", "dd"))
    ref = Real.of(EXP_NEG_10PI, "dd")
    assert abs(float((got - ref) / ref)) <= 64 * mode_eps("dd")


def test_domain_errors():
    with pytest.raises(DomainError):
        arccosh(Real.of(0.5, "dd"))
    with pytest.raises(DomainError):
        sqrt(Real.of(-1.0, "dd"))
    with pytest.raises(DomainError):
        log(Real.of(-2.0, "qd"))
    with pytest.raises(DomainError):
        arccos(Real.of(1.5, "dd"))
    with pytest.raises(ValueError):
        elementary("tan", Real.of(1.0, "dd"))


def test_roundtrip_cosh_arccosh():
    rng = random.Random(3)
    for _ in range(400):
        x = Real.of(10 ** rng.uniform(math.log10(1.001), 4), "dd")
        back = cosh(arccosh(x))
        assert abs(float((back - x) / x)) <= 16 * mode_eps("dd")


def test_pythagorean_identity():
    rng = random.Random(5)
    for _ in range(1000):
        s, c = sincos(Real.of(rng.uniform(-50, 50), "dd"))
        assert abs(float(s * s + c * c - 1)) <= 16 * mode_eps("dd")


def test_dd_matches_std_to_15_digits():
    rng = random.Random(11)
    fns = ("exp", "log", "sin", "cos", "sinh", "cosh", "sqrt",
           "arccos", "arccosh")
    for _ in range(1000):
        name = rng.choice(fns)
        if name in ("sin", "cos"):
            v = rng.uniform(-50, 50)
        elif name in ("exp", "sinh", "cosh"):
            v = rng.uniform(-20, 20)
        elif name == "arccos":
            v = rng.uniform(-1, 1)
        elif name == "arccosh":
            v = 1 + 10 ** rng.uniform(-2, 3)
        else:
            v = 10 ** rng.uniform(-6, 6)
        a = elementary(name, Real.of(v, "std"))
        b = elementary(name, Real.of(v, "dd"))
        scale = max(abs(float(b)), 1e-300)
        assert abs(float(a) - float(b)) / scale <= 1e-15


@given(st.floats(min_value=-1e8, max_value=1e8,
                 allow_nan=False, allow_infinity=False),
       st.floats(min_value=-1e8, max_value=1e8,
                 allow_nan=False, allow_infinity=False))
@settings(max_examples=300, deadline=None)
def test_field_axioms_dd(x, y):
    a, b = Real.of(x, "dd"), Real.of(y, "dd")
    assert a + b == b + a
    assert a * b == b * a
    assert a - a == Real.zero("dd")
    assert (a + b) - b == a or abs(float((a + b) - b - a)) <= \
        4 * mode_eps("dd") * max(abs(x), abs(y), 1e-300)


@given(st.decimals(min_value=-1e12, max_value=1e12, allow_nan=False,
                   allow_infinity=False, places=20))
@settings(max_examples=200, deadline=None)
def test_decimal_string_roundtrip(d):
    for mode in ("std", "dd", "qd"):
        x = Real.of(str(d), mode)
        again = Real.of(x.to_decimal(), mode)
        assert again == x


def test_comparisons_total_and_nan_explicit():
    a = Real.of(1.5, "dd")
    b = Real.of(1.5, "dd") + Real.of(1e-30, "dd")
    assert a < b and b > a and a != b and a <= a and a >= a
    n = Real.of(float("nan"), "dd")
    assert n.is_nan
    assert (n + a).is_nan
    with pytest.raises(ValueError):
        _ = n < a
    assert not (n == a)


def test_mixed_mode_rejected():
    with pytest.raises(TypeError):
        _ = Real.of(1, "dd") + Real.of(1, "qd")


def test_complex_abs2_no_cancellation():
    z = Complex(Real.of(3.0, "dd"), Real.of(3.0, "dd"))
    assert abs(float(z.abs2() - 18)) <= 4 * mode_eps("dd") * 18
    w = Complex(Real.of(1e-200, "dd"), Real.of(1e-200, "dd"))
    assert float(w.abs2()) == pytest.approx(2e-400, rel=1e-10)


def test_complex_algebra():
    z = Complex.of(complex(2.0, -1.0), "dd")
    w = Complex.of(complex(-0.5, 3.0), "dd")
    prod = z * w
    ref = complex(2, -1) * complex(-0.5, 3)
    assert complex(prod) == pytest.approx(ref, rel=1e-15)
    quot = z / w
    ref = complex(2, -1) / complex(-0.5, 3)
    assert complex(quot) == pytest.approx(ref, rel=1e-15)
    assert complex(z.conjugate()) == complex(2, 1)


def test_mode_metadata():
    assert mode_digits("std") == 17
    assert mode_digits("dd") == 34
    assert mode_digits("qd") == 65
    assert mode_eps("dd") == 2.0 ** -104
