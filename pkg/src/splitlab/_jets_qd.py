"""Quad-double mirror of _jets_dd (see there for layout and status codes).

Coefficient arrays are float64[ncomp, p+2, 4]; params arrive as flattened
quad limbs. Only the model, planar and oscillator fields are needed in
quad-pair mode, but the inner field is mirrored too for completeness.
"""

import numpy as np
from numba import njit

from ._ddcore import two_prod
from ._qdcore import qd_add, qd_sub, qd_mul, qd_div, qd_mul_f

BLOWUP_LIMIT = 1e8

OK = 0
NO_CROSSING = 1
BLOWUP = 2
STALLED = 3


@njit(cache=True)
def _conv_sq_qd(a, k, out):
    s0 = 0.0
    s1 = 0.0
    s2 = 0.0
    s3 = 0.0
    half = (k + 1) // 2
    for i in range(half):
        p0, p1, p2, p3 = qd_mul(a[i, 0], a[i, 1], a[i, 2], a[i, 3],
                                a[k - i, 0], a[k - i, 1], a[k - i, 2], a[k - i, 3])
        s0, s1, s2, s3 = qd_add(s0, s1, s2, s3, p0, p1, p2, p3)
    s0, s1, s2, s3 = qd_add(s0, s1, s2, s3, s0, s1, s2, s3)
    if k % 2 == 0:
        m = k // 2
        p0, p1, p2, p3 = qd_mul(a[m, 0], a[m, 1], a[m, 2], a[m, 3],
                                a[m, 0], a[m, 1], a[m, 2], a[m, 3])
        s0, s1, s2, s3 = qd_add(s0, s1, s2, s3, p0, p1, p2, p3)
    out[k, 0] = s0
    out[k, 1] = s1
    out[k, 2] = s2
    out[k, 3] = s3


@njit(cache=True)
def _conv_qd(a, b, k, out):
    s0 = 0.0
    s1 = 0.0
    s2 = 0.0
    s3 = 0.0
    for i in range(k + 1):
        p0, p1, p2, p3 = qd_mul(a[i, 0], a[i, 1], a[i, 2], a[i, 3],
                                b[k - i, 0], b[k - i, 1], b[k - i, 2], b[k - i, 3])
        s0, s1, s2, s3 = qd_add(s0, s1, s2, s3, p0, p1, p2, p3)
    out[k, 0] = s0
    out[k, 1] = s1
    out[k, 2] = s2
    out[k, 3] = s3


@njit(cache=True)
def _fill_model_qd(par, c, ws, kmax):
    u = c[0]
    up = c[1]
    v = c[2]
    vp = c[3]
    sq = ws[0]
    cb = ws[1]
    w = ws[2]
    fp = ws[3]
    up2 = ws[4]
    uup2 = ws[5]
    g0, g1, g2q, g3 = par[0], par[1], par[2], par[3]
    ie0, ie1, ie2, ie3 = par[4], par[5], par[6], par[7]
    tg = qd_mul_f(g0, g1, g2q, g3, 2.0)
    sg = qd_mul_f(g0, g1, g2q, g3, 6.0)
    wg = qd_mul_f(g0, g1, g2q, g3, 12.0)
    for k in range(kmax):
        _conv_sq_qd(u, k, sq)
        _conv_qd(sq, u, k, cb)
        t = qd_mul(tg[0], tg[1], tg[2], tg[3], cb[k, 0], cb[k, 1], cb[k, 2], cb[k, 3])
        f = qd_add(sq[k, 0], sq[k, 1], sq[k, 2], sq[k, 3], t[0], t[1], t[2], t[3])
        t = qd_add(u[k, 0], u[k, 1], u[k, 2], u[k, 3], v[k, 0], v[k, 1], v[k, 2], v[k, 3])
        wk = qd_sub(t[0], t[1], t[2], t[3], f[0], f[1], f[2], f[3])
        w[k, 0], w[k, 1], w[k, 2], w[k, 3] = wk
        t = qd_mul(sg[0], sg[1], sg[2], sg[3], sq[k, 0], sq[k, 1], sq[k, 2], sq[k, 3])
        fpk = qd_add(2.0 * u[k, 0], 2.0 * u[k, 1], 2.0 * u[k, 2], 2.0 * u[k, 3],
                     t[0], t[1], t[2], t[3])
        fp[k, 0], fp[k, 1], fp[k, 2], fp[k, 3] = fpk
        _conv_sq_qd(up, k, up2)
        _conv_qd(u, up2, k, uup2)
        a0 = 0.0
        a1 = 0.0
        a2 = 0.0
        a3 = 0.0
        for i in range(k + 1):
            p = qd_mul(fp[i, 0], fp[i, 1], fp[i, 2], fp[i, 3],
                       w[k - i, 0], w[k - i, 1], w[k - i, 2], w[k - i, 3])
            a0, a1, a2, a3 = qd_add(a0, a1, a2, a3, p[0], p[1], p[2], p[3])
        t = qd_mul(ie0, ie1, ie2, ie3, v[k, 0], v[k, 1], v[k, 2], v[k, 3])
        r = qd_sub(a0, a1, a2, a3, t[0], t[1], t[2], t[3])
        r = qd_add(r[0], r[1], r[2], r[3],
                   2.0 * up2[k, 0], 2.0 * up2[k, 1], 2.0 * up2[k, 2], 2.0 * up2[k, 3])
        t = qd_mul(wg[0], wg[1], wg[2], wg[3],
                   uup2[k, 0], uup2[k, 1], uup2[k, 2], uup2[k, 3])
        r = qd_add(r[0], r[1], r[2], r[3], t[0], t[1], t[2], t[3])
        kp1 = float(k + 1)
        u[k + 1, 0], u[k + 1, 1], u[k + 1, 2], u[k + 1, 3] = qd_div(
            up[k, 0], up[k, 1], up[k, 2], up[k, 3], kp1, 0.0, 0.0, 0.0)
        up[k + 1, 0], up[k + 1, 1], up[k + 1, 2], up[k + 1, 3] = qd_div(
            w[k, 0], w[k, 1], w[k, 2], w[k, 3], kp1, 0.0, 0.0, 0.0)
        v[k + 1, 0], v[k + 1, 1], v[k + 1, 2], v[k + 1, 3] = qd_div(
            vp[k, 0], vp[k, 1], vp[k, 2], vp[k, 3], kp1, 0.0, 0.0, 0.0)
        vp[k + 1, 0], vp[k + 1, 1], vp[k + 1, 2], vp[k + 1, 3] = qd_div(
            r[0], r[1], r[2], r[3], kp1, 0.0, 0.0, 0.0)


@njit(cache=True)
def _fill_planar_qd(par, c, ws, kmax):
    u = c[0]
    w = c[1]
    sq = ws[0]
    cb = ws[1]
    tg = qd_mul_f(par[0], par[1], par[2], par[3], 2.0)
    for k in range(kmax):
        _conv_sq_qd(u, k, sq)
        _conv_qd(sq, u, k, cb)
        t = qd_mul(tg[0], tg[1], tg[2], tg[3], cb[k, 0], cb[k, 1], cb[k, 2], cb[k, 3])
        t = qd_add(t[0], t[1], t[2], t[3], sq[k, 0], sq[k, 1], sq[k, 2], sq[k, 3])
        r = qd_sub(u[k, 0], u[k, 1], u[k, 2], u[k, 3], t[0], t[1], t[2], t[3])
        kp1 = float(k + 1)
        u[k + 1, 0], u[k + 1, 1], u[k + 1, 2], u[k + 1, 3] = qd_div(
            w[k, 0], w[k, 1], w[k, 2], w[k, 3], kp1, 0.0, 0.0, 0.0)
        w[k + 1, 0], w[k + 1, 1], w[k + 1, 2], w[k + 1, 3] = qd_div(
            r[0], r[1], r[2], r[3], kp1, 0.0, 0.0, 0.0)


@njit(cache=True)
def _cmul_qd(ar, ai, br, bi):
    t1 = qd_mul(ar[0], ar[1], ar[2], ar[3], br[0], br[1], br[2], br[3])
    t2 = qd_mul(ai[0], ai[1], ai[2], ai[3], bi[0], bi[1], bi[2], bi[3])
    re = qd_sub(t1[0], t1[1], t1[2], t1[3], t2[0], t2[1], t2[2], t2[3])
    t3 = qd_mul(ar[0], ar[1], ar[2], ar[3], bi[0], bi[1], bi[2], bi[3])
    t4 = qd_mul(ai[0], ai[1], ai[2], ai[3], br[0], br[1], br[2], br[3])
    im = qd_add(t3[0], t3[1], t3[2], t3[3], t4[0], t4[1], t4[2], t4[3])
    return re, im


@njit(cache=True)
def _fill_inner_qd(par, c, ws, kmax):
    dr = (par[0], par[1], par[2], par[3])
    di = (par[4], par[5], par[6], par[7])
    sqr = ws[0]
    sqi = ws[1]
    cbr = ws[2]
    cbi = ws[3]
    for k in range(kmax):
        sr = (0.0, 0.0, 0.0, 0.0)
        si = (0.0, 0.0, 0.0, 0.0)
        half = (k + 1) // 2
        for i in range(half):
            re, im = _cmul_qd(
                (c[0, i, 0], c[0, i, 1], c[0, i, 2], c[0, i, 3]),
                (c[1, i, 0], c[1, i, 1], c[1, i, 2], c[1, i, 3]),
                (c[0, k - i, 0], c[0, k - i, 1], c[0, k - i, 2], c[0, k - i, 3]),
                (c[1, k - i, 0], c[1, k - i, 1], c[1, k - i, 2], c[1, k - i, 3]))
            sr = qd_add(sr[0], sr[1], sr[2], sr[3], re[0], re[1], re[2], re[3])
            si = qd_add(si[0], si[1], si[2], si[3], im[0], im[1], im[2], im[3])
        sr = qd_add(sr[0], sr[1], sr[2], sr[3], sr[0], sr[1], sr[2], sr[3])
        si = qd_add(si[0], si[1], si[2], si[3], si[0], si[1], si[2], si[3])
        if k % 2 == 0:
            m = k // 2
            re, im = _cmul_qd(
                (c[0, m, 0], c[0, m, 1], c[0, m, 2], c[0, m, 3]),
                (c[1, m, 0], c[1, m, 1], c[1, m, 2], c[1, m, 3]),
                (c[0, m, 0], c[0, m, 1], c[0, m, 2], c[0, m, 3]),
                (c[1, m, 0], c[1, m, 1], c[1, m, 2], c[1, m, 3]))
            sr = qd_add(sr[0], sr[1], sr[2], sr[3], re[0], re[1], re[2], re[3])
            si = qd_add(si[0], si[1], si[2], si[3], im[0], im[1], im[2], im[3])
        sqr[k, 0], sqr[k, 1], sqr[k, 2], sqr[k, 3] = sr
        sqi[k, 0], sqi[k, 1], sqi[k, 2], sqi[k, 3] = si
        cr = (0.0, 0.0, 0.0, 0.0)
        ci = (0.0, 0.0, 0.0, 0.0)
        for i in range(k + 1):
            re, im = _cmul_qd(
                (sqr[i, 0], sqr[i, 1], sqr[i, 2], sqr[i, 3]),
                (sqi[i, 0], sqi[i, 1], sqi[i, 2], sqi[i, 3]),
                (c[0, k - i, 0], c[0, k - i, 1], c[0, k - i, 2], c[0, k - i, 3]),
                (c[1, k - i, 0], c[1, k - i, 1], c[1, k - i, 2], c[1, k - i, 3]))
            cr = qd_add(cr[0], cr[1], cr[2], cr[3], re[0], re[1], re[2], re[3])
            ci = qd_add(ci[0], ci[1], ci[2], ci[3], im[0], im[1], im[2], im[3])
        cbr[k, 0], cbr[k, 1], cbr[k, 2], cbr[k, 3] = cr
        cbi[k, 0], cbi[k, 1], cbi[k, 2], cbi[k, 3] = ci
        kp1 = float(k + 1)
        for j in range(3):
            re, im = _cmul_qd(
                dr, di,
                (c[2 * j + 2, k, 0], c[2 * j + 2, k, 1], c[2 * j + 2, k, 2], c[2 * j + 2, k, 3]),
                (c[2 * j + 3, k, 0], c[2 * j + 3, k, 1], c[2 * j + 3, k, 2], c[2 * j + 3, k, 3]))
            c[2 * j, k + 1, 0], c[2 * j, k + 1, 1], c[2 * j, k + 1, 2], c[2 * j, k + 1, 3] = qd_div(
                re[0], re[1], re[2], re[3], kp1, 0.0, 0.0, 0.0)
            c[2 * j + 1, k + 1, 0], c[2 * j + 1, k + 1, 1], c[2 * j + 1, k + 1, 2], c[2 * j + 1, k + 1, 3] = qd_div(
                im[0], im[1], im[2], im[3], kp1, 0.0, 0.0, 0.0)
        gr = qd_sub(2.0 * cr[0], 2.0 * cr[1], 2.0 * cr[2], 2.0 * cr[3],
                    c[4, k, 0], c[4, k, 1], c[4, k, 2], c[4, k, 3])
        gi = qd_sub(2.0 * ci[0], 2.0 * ci[1], 2.0 * ci[2], 2.0 * ci[3],
                    c[5, k, 0], c[5, k, 1], c[5, k, 2], c[5, k, 3])
        re, im = _cmul_qd(dr, di, gr, gi)
        c[6, k + 1, 0], c[6, k + 1, 1], c[6, k + 1, 2], c[6, k + 1, 3] = qd_div(
            re[0], re[1], re[2], re[3], kp1, 0.0, 0.0, 0.0)
        c[7, k + 1, 0], c[7, k + 1, 1], c[7, k + 1, 2], c[7, k + 1, 3] = qd_div(
            im[0], im[1], im[2], im[3], kp1, 0.0, 0.0, 0.0)


@njit(cache=True)
def _fill_osc_qd(par, c, kmax):
    v = c[0]
    w = c[1]
    for k in range(kmax):
        r = qd_mul(par[0], par[1], par[2], par[3], v[k, 0], v[k, 1], v[k, 2], v[k, 3])
        kp1 = float(k + 1)
        v[k + 1, 0], v[k + 1, 1], v[k + 1, 2], v[k + 1, 3] = qd_div(
            w[k, 0], w[k, 1], w[k, 2], w[k, 3], kp1, 0.0, 0.0, 0.0)
        w[k + 1, 0], w[k + 1, 1], w[k + 1, 2], w[k + 1, 3] = qd_div(
            -r[0], -r[1], -r[2], -r[3], kp1, 0.0, 0.0, 0.0)


@njit(cache=True)
def _fill_qd(field, par, c, ws, kmax):
    if field == 0:
        _fill_model_qd(par, c, ws, kmax)
    elif field == 1:
        _fill_planar_qd(par, c, ws, kmax)
    elif field == 2:
        _fill_inner_qd(par, c, ws, kmax)
    else:
        _fill_osc_qd(par, c, kmax)


@njit(cache=True)
def _poly_qd(c, comp, kmax, s0, s1, s2, s3):
    r0 = c[comp, kmax, 0]
    r1 = c[comp, kmax, 1]
    r2 = c[comp, kmax, 2]
    r3 = c[comp, kmax, 3]
    for k in range(kmax - 1, -1, -1):
        r0, r1, r2, r3 = qd_mul(r0, r1, r2, r3, s0, s1, s2, s3)
        r0, r1, r2, r3 = qd_add(r0, r1, r2, r3,
                                c[comp, k, 0], c[comp, k, 1], c[comp, k, 2], c[comp, k, 3])
    return r0, r1, r2, r3


@njit(cache=True)
def _dpoly_qd(c, comp, kmax, s0, s1, s2, s3):
    r = qd_mul_f(c[comp, kmax, 0], c[comp, kmax, 1], c[comp, kmax, 2], c[comp, kmax, 3],
                 float(kmax))
    r0, r1, r2, r3 = r
    for k in range(kmax - 1, 0, -1):
        r0, r1, r2, r3 = qd_mul(r0, r1, r2, r3, s0, s1, s2, s3)
        t = qd_mul_f(c[comp, k, 0], c[comp, k, 1], c[comp, k, 2], c[comp, k, 3], float(k))
        r0, r1, r2, r3 = qd_add(r0, r1, r2, r3, t[0], t[1], t[2], t[3])
    return r0, r1, r2, r3


@njit(cache=True)
def _load_state_qd(c, y):
    for i in range(y.shape[0]):
        for m in range(4):
            c[i, 0, m] = y[i, m]


@njit(cache=True)
def _eval_all_qd(c, ncomp, p, s0, s1, s2, s3, out):
    for i in range(ncomp):
        out[i, 0], out[i, 1], out[i, 2], out[i, 3] = _poly_qd(c, i, p, s0, s1, s2, s3)


@njit(cache=True)
def _blowup_comp_qd(y):
    for i in range(y.shape[0]):
        if not (abs(y[i, 0]) <= BLOWUP_LIMIT):
            return i
    return -1


@njit(cache=True, nogil=True)
def step_qd(field, par, y0, p, h):
    ncomp = y0.shape[0]
    c = np.zeros((ncomp, p + 2, 4))
    ws = np.zeros((8, p + 2, 4))
    _load_state_qd(c, y0)
    _fill_qd(field, par, c, ws, p + 1)
    y1 = np.empty((ncomp, 4))
    _eval_all_qd(c, ncomp, p, h, 0.0, 0.0, 0.0, y1)
    est = np.empty(ncomp)
    hp = h ** (p + 1)
    for i in range(ncomp):
        est[i] = abs(c[i, p + 1, 0] * hp)
    return y1, est


@njit(cache=True, nogil=True)
def flow_time_qd(field, par, y0, p, h, Th, Tl):
    ncomp = y0.shape[0]
    c = np.zeros((ncomp, p + 2, 4))
    ws = np.zeros((8, p + 2, 4))
    y = y0.copy()
    ynew = np.empty((ncomp, 4))
    hs = h if Th >= 0.0 else -h
    nfull = int(abs(Th) / h)
    if nfull > 0 and abs(nfull * h) > abs(Th):
        nfull -= 1
    n = 0
    while n < nfull:
        _load_state_qd(c, y)
        _fill_qd(field, par, c, ws, p)
        _eval_all_qd(c, ncomp, p, hs, 0.0, 0.0, 0.0, ynew)
        bc = _blowup_comp_qd(ynew)
        if bc >= 0:
            return BLOWUP, ynew, n + 1, bc
        y[:, :] = ynew
        n += 1
    ph, pl = two_prod(hs, float(n))
    s = qd_sub(Th, Tl, 0.0, 0.0, ph, pl, 0.0, 0.0)
    if s[0] != 0.0 or s[1] != 0.0:
        _load_state_qd(c, y)
        _fill_qd(field, par, c, ws, p)
        _eval_all_qd(c, ncomp, p, s[0], s[1], s[2], s[3], ynew)
        bc = _blowup_comp_qd(ynew)
        if bc >= 0:
            return BLOWUP, ynew, n + 1, bc
        y[:, :] = ynew
        n += 1
    return OK, y, n, -1


@njit(cache=True, nogil=True)
def flow_section_qd(field, par, y0, p, h, max_steps, ev, gidx, gmin,
                    event_tol, check_t0):
    ncomp = y0.shape[0]
    c = np.zeros((ncomp, p + 2, 4))
    ws = np.zeros((8, p + 2, 4))
    y = y0.copy()
    ynew = np.empty((ncomp, 4))
    out = np.empty((ncomp, 4))
    if check_t0 and abs(y[ev, 0]) <= event_tol:
        if gidx < 0 or y[gidx, 0] > gmin:
            return OK, y, 0.0, 0.0, 0, abs(y[ev, 0])
    n = 0
    while n < max_steps:
        _load_state_qd(c, y)
        _fill_qd(field, par, c, ws, p)
        _eval_all_qd(c, ncomp, p, h, 0.0, 0.0, 0.0, ynew)
        bc = _blowup_comp_qd(ynew)
        if bc >= 0:
            return BLOWUP, ynew, 0.0, 0.0, n + 1, float(bc)
        e0 = y[ev, 0]
        e1 = ynew[ev, 0]
        if (e0 > 0.0 and e1 < 0.0) or (e0 < 0.0 and e1 > 0.0) or e1 == 0.0:
            a = 0.0
            b = h
            fa = e0
            for _ in range(60):
                m = 0.5 * (a + b)
                fm = _poly_qd(c, ev, p, m, 0.0, 0.0, 0.0)
                if fm[0] == 0.0:
                    a = m
                    b = m
                    break
                if (fa > 0.0) == (fm[0] > 0.0):
                    a = m
                    fa = fm[0]
                else:
                    b = m
            s0 = 0.5 * (a + b)
            s1 = 0.0
            s2 = 0.0
            s3 = 0.0
            best = 1e300
            stall = 0
            resid = 1e300
            for _ in range(80):
                f = _poly_qd(c, ev, p, s0, s1, s2, s3)
                resid = abs(f[0] + f[1])
                if resid <= event_tol:
                    break
                if resid >= best:
                    stall += 1
                    if stall >= 3:
                        break
                else:
                    best = resid
                    stall = 0
                d = _dpoly_qd(c, ev, p, s0, s1, s2, s3)
                if d[0] == 0.0:
                    break
                q = qd_div(f[0], f[1], f[2], f[3], d[0], d[1], d[2], d[3])
                s0, s1, s2, s3 = qd_sub(s0, s1, s2, s3, q[0], q[1], q[2], q[3])
                if s0 < 0.0:
                    s0 = 0.0
                    s1 = 0.0
                    s2 = 0.0
                    s3 = 0.0
                elif s0 > h:
                    s0 = h
                    s1 = 0.0
                    s2 = 0.0
                    s3 = 0.0
            guard_ok = True
            if gidx >= 0:
                g = _poly_qd(c, gidx, p, s0, s1, s2, s3)
                guard_ok = g[0] > gmin
            if guard_ok:
                _eval_all_qd(c, ncomp, p, s0, s1, s2, s3, out)
                ph, pl = two_prod(h, float(n))
                t = qd_add(ph, pl, 0.0, 0.0, s0, s1, s2, s3)
                status = OK if resid <= event_tol else STALLED
                return status, out, t[0], t[1], n + 1, resid
        y[:, :] = ynew
        n += 1
    return NO_CROSSING, y, 0.0, 0.0, n, 0.0


@njit(cache=True, nogil=True)
def jet_qd(field, par, y0, p):
    ncomp = y0.shape[0]
    c = np.zeros((ncomp, p + 2, 4))
    ws = np.zeros((8, p + 2, 4))
    _load_state_qd(c, y0)
    _fill_qd(field, par, c, ws, p)
    return c[:, : p + 1, :]
