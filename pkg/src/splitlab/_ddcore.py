"""Double-double (pair-of-float64) scalar kernels, ~31 significant digits.

Every value is an unevaluated sum hi + lo with |lo| <= 0.5 ulp(hi).
All functions are numba-compiled and callable both from other kernels
(inlined) and from regular Python (boxed tuples). Requires strict IEEE
double arithmetic: do not enable fastmath on any caller.
"""

from numba import njit

_SPLITTER = 134217729.0  # 2^27 + 1


@njit(inline="always", cache=True)
def two_sum(a, b):
    s = a + b
    bb = s - a
    return s, (a - (s - bb)) + (b - bb)


@njit(inline="always", cache=True)
def quick_two_sum(a, b):
    # requires |a| >= |b| or a == 0
    s = a + b
    return s, b - (s - a)


@njit(inline="always", cache=True)
def two_prod(a, b):
    p = a * b
    ca = _SPLITTER * a
    ahi = ca - (ca - a)
    alo = a - ahi
    cb = _SPLITTER * b
    bhi = cb - (cb - b)
    blo = b - bhi
    err = ((ahi * bhi - p) + ahi * blo + alo * bhi) + alo * blo
    return p, err


@njit(inline="always", cache=True)
def dd_add(ah, al, bh, bl):
    s1, s2 = two_sum(ah, bh)
    t1, t2 = two_sum(al, bl)
    s2 += t1
    s1, s2 = quick_two_sum(s1, s2)
    s2 += t2
    return quick_two_sum(s1, s2)


@njit(inline="always", cache=True)
def dd_sub(ah, al, bh, bl):
    return dd_add(ah, al, -bh, -bl)


@njit(inline="always", cache=True)
def dd_add_f(ah, al, b):
    s1, s2 = two_sum(ah, b)
    s2 += al
    return quick_two_sum(s1, s2)


@njit(inline="always", cache=True)
def dd_mul(ah, al, bh, bl):
    p1, p2 = two_prod(ah, bh)
    p2 += ah * bl + al * bh + al * bl
    return quick_two_sum(p1, p2)


@njit(inline="always", cache=True)
def dd_mul_f(ah, al, b):
    p1, p2 = two_prod(ah, b)
    p2 += al * b
    return quick_two_sum(p1, p2)


@njit(inline="always", cache=True)
def dd_sq(ah, al):
    p1, p2 = two_prod(ah, ah)
    p2 += 2.0 * ah * al + al * al
    return quick_two_sum(p1, p2)


@njit(inline="always", cache=True)
def dd_div(ah, al, bh, bl):
    q1 = ah / bh
    th, tl = dd_mul_f(bh, bl, q1)
    rh, rl = dd_sub(ah, al, th, tl)
    q2 = rh / bh
    th, tl = dd_mul_f(bh, bl, q2)
    rh, rl = dd_sub(rh, rl, th, tl)
    q3 = rh / bh
    q1, q2 = quick_two_sum(q1, q2)
    q2 += q3
    return quick_two_sum(q1, q2)


@njit(inline="always", cache=True)
def dd_neg(ah, al):
    return -ah, -al


@njit(inline="always", cache=True)
def dd_scalb(ah, al, p2):
    # multiply by an exact power of two
    return ah * p2, al * p2

