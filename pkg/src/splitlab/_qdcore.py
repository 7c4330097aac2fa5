"""Quad-double (four-float64) scalar kernels, ~62 significant digits.

A value is an unevaluated sum x0 + x1 + x2 + x3 with strictly decreasing
magnitudes, |x_{i+1}| <= 0.5 ulp(x_i) after renormalization. Addition uses
magnitude-merged exact accumulation; multiplication collects the partial
products order by order with exact two_sum cascades and drops only terms
below 2^-260 relative. Same IEEE caveat as _ddcore: no fastmath anywhere.
"""

from numba import njit

from ._ddcore import two_sum, quick_two_sum, two_prod


@njit(cache=True)
def renorm5(c0, c1, c2, c3, c4):
    s0, c4 = quick_two_sum(c3, c4)
    s0, c3 = quick_two_sum(c2, s0)
    s0, c2 = quick_two_sum(c1, s0)
    c0, c1 = quick_two_sum(c0, s0)

    s0 = c0
    s1 = c1
    s2 = 0.0
    s3 = 0.0
    s0, s1 = quick_two_sum(c0, c1)
    if s1 != 0.0:
        s1, s2 = quick_two_sum(s1, c2)
        if s2 != 0.0:
            s2, s3 = quick_two_sum(s2, c3)
            if s3 != 0.0:
                s3 += c4
            else:
                s2 += c4
        else:
            s1, s2 = quick_two_sum(s1, c3)
            if s2 != 0.0:
                s2, s3 = quick_two_sum(s2, c4)
            else:
                s1, s2 = quick_two_sum(s1, c4)
    else:
        s0, s1 = quick_two_sum(s0, c2)
        if s1 != 0.0:
            s1, s2 = quick_two_sum(s1, c3)
            if s2 != 0.0:
                s2, s3 = quick_two_sum(s2, c4)
            else:
                s1, s2 = quick_two_sum(s1, c4)
        else:
            s0, s1 = quick_two_sum(s0, c3)
            if s1 != 0.0:
                s1, s2 = quick_two_sum(s1, c4)
            else:
                s0, s1 = quick_two_sum(s0, c4)
    return s0, s1, s2, s3


@njit(cache=True)
def renorm4(c0, c1, c2, c3):
    s0, c3 = quick_two_sum(c2, c3)
    s0, c2 = quick_two_sum(c1, s0)
    c0, c1 = quick_two_sum(c0, s0)

    s0 = c0
    s1 = c1
    s2 = 0.0
    s3 = 0.0
    if s1 != 0.0:
        s1, s2 = quick_two_sum(s1, c2)
        if s2 != 0.0:
            s2, s3 = quick_two_sum(s2, c3)
        else:
            s1, s2 = quick_two_sum(s1, c3)
    else:
        s0, s1 = quick_two_sum(s0, c2)
        if s1 != 0.0:
            s1, s2 = quick_two_sum(s1, c3)
        else:
            s0, s1 = quick_two_sum(s0, c3)
    return s0, s1, s2, s3


@njit(cache=True)
def qd_add(a0, a1, a2, a3, b0, b1, b2, b3):
    a = (a0, a1, a2, a3)
    b = (b0, b1, b2, b3)
    x0 = 0.0
    x1 = 0.0
    x2 = 0.0
    x3 = 0.0
    i = 0
    j = 0
    k = 0
    if abs(a[0]) > abs(b[0]):
        u = a[0]
        i = 1
    else:
        u = b[0]
        j = 1
    if i < 4 and j < 4 and abs(a[i]) > abs(b[j]):
        v = a[i]
        i += 1
    else:
        v = b[j]
        j += 1
    u, v = quick_two_sum(u, v)
    while k < 4:
        if i >= 4 and j >= 4:
            if k == 0:
                x0 = u
            elif k == 1:
                x1 = u
            elif k == 2:
                x2 = u
            else:
                x3 = u
            if k < 3:
                k += 1
                if k == 1:
                    x1 = v
                elif k == 2:
                    x2 = v
                else:
                    x3 = v
            break
        if i >= 4:
            t = b[j]
            j += 1
        elif j >= 4:
            t = a[i]
            i += 1
        elif abs(a[i]) > abs(b[j]):
            t = a[i]
            i += 1
        else:
            t = b[j]
            j += 1
        # quick three-value accumulate: emit the dominant part, keep residue
        s, v = two_sum(v, t)
        s, u = two_sum(u, s)
        if u != 0.0 and v != 0.0:
            emit = s
        else:
            if v == 0.0:
                v = u
                u = s
            else:
                u = s
            emit = 0.0
        if emit != 0.0:
            if k == 0:
                x0 = emit
            elif k == 1:
                x1 = emit
            elif k == 2:
                x2 = emit
            else:
                x3 = emit
            k += 1
    while i < 4:
        x3 += a[i]
        i += 1
    while j < 4:
        x3 += b[j]
        j += 1
    return renorm4(x0, x1, x2, x3)


@njit(cache=True)
def qd_neg(a0, a1, a2, a3):
    return -a0, -a1, -a2, -a3


@njit(cache=True)
def qd_sub(a0, a1, a2, a3, b0, b1, b2, b3):
    return qd_add(a0, a1, a2, a3, -b0, -b1, -b2, -b3)


@njit(cache=True)
def qd_add_f(a0, a1, a2, a3, b):
    return qd_add(a0, a1, a2, a3, b, 0.0, 0.0, 0.0)


@njit(cache=True)
def qd_mul(a0, a1, a2, a3, b0, b1, b2, b3):
    p00, e00 = two_prod(a0, b0)
    p01, e01 = two_prod(a0, b1)
    p10, e10 = two_prod(a1, b0)
    p02, e02 = two_prod(a0, b2)
    p11, e11 = two_prod(a1, b1)
    p20, e20 = two_prod(a2, b0)
    p03, e03 = two_prod(a0, b3)
    p12, e12 = two_prod(a1, b2)
    p21, e21 = two_prod(a2, b1)
    p30, e30 = two_prod(a3, b0)

    r0 = p00

    s, c1 = two_sum(p01, p10)
    r1, c2 = two_sum(s, e00)

    s, d1 = two_sum(p02, p11)
    s, d2 = two_sum(s, p20)
    s, d3 = two_sum(s, e01)
    s, d4 = two_sum(s, e10)
    s, d5 = two_sum(s, c1)
    r2, d6 = two_sum(s, c2)

    s, f1 = two_sum(p03, p12)
    s, f2 = two_sum(s, p21)
    s, f3 = two_sum(s, p30)
    s, f4 = two_sum(s, e02)
    s, f5 = two_sum(s, e11)
    s, f6 = two_sum(s, e20)
    s, f7 = two_sum(s, d1)
    s, f8 = two_sum(s, d2)
    s, f9 = two_sum(s, d3)
    s, f10 = two_sum(s, d4)
    s, f11 = two_sum(s, d5)
    r3, f12 = two_sum(s, d6)

    r4 = (a1 * b3 + a2 * b2 + a3 * b1) + (e03 + e12 + e21 + e30)
    r4 += (f1 + f2 + f3) + (f4 + f5 + f6) + (f7 + f8 + f9) + (f10 + f11 + f12)

    return renorm5(r0, r1, r2, r3, r4)


@njit(cache=True)
def qd_mul_f(a0, a1, a2, a3, b):
    p0, e0 = two_prod(a0, b)
    p1, e1 = two_prod(a1, b)
    p2, e2 = two_prod(a2, b)
    p3, e3 = two_prod(a3, b)

    r1, c1 = two_sum(p1, e0)

    s, d1 = two_sum(p2, e1)
    r2, d2 = two_sum(s, c1)

    s, f1 = two_sum(p3, e2)
    s, f2 = two_sum(s, d1)
    r3, f3 = two_sum(s, d2)

    r4 = e3 + (f1 + f2 + f3)
    return renorm5(p0, r1, r2, r3, r4)


@njit(cache=True)
def qd_sq(a0, a1, a2, a3):
    return qd_mul(a0, a1, a2, a3, a0, a1, a2, a3)


@njit(cache=True)
def qd_div(a0, a1, a2, a3, b0, b1, b2, b3):
    q0 = a0 / b0
    t0, t1, t2, t3 = qd_mul_f(b0, b1, b2, b3, q0)
    r0, r1, r2, r3 = qd_sub(a0, a1, a2, a3, t0, t1, t2, t3)
    q1 = r0 / b0
    t0, t1, t2, t3 = qd_mul_f(b0, b1, b2, b3, q1)
    r0, r1, r2, r3 = qd_sub(r0, r1, r2, r3, t0, t1, t2, t3)
    q2 = r0 / b0
    t0, t1, t2, t3 = qd_mul_f(b0, b1, b2, b3, q2)
    r0, r1, r2, r3 = qd_sub(r0, r1, r2, r3, t0, t1, t2, t3)
    q3 = r0 / b0
    t0, t1, t2, t3 = qd_mul_f(b0, b1, b2, b3, q3)
    r0, r1, r2, r3 = qd_sub(r0, r1, r2, r3, t0, t1, t2, t3)
    q4 = r0 / b0
    return renorm5(q0, q1, q2, q3, q4)


@njit(cache=True)
def qd_scalb(a0, a1, a2, a3, p2):
    # multiply by an exact power of two
    return a0 * p2, a1 * p2, a2 * p2, a3 * p2
