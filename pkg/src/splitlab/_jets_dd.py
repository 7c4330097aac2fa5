"""Double-double Taylor-jet kernels for the three vector fields.

A step of order p builds the Taylor coefficients of the trajectory by the
field's product recurrences (all right-hand sides are polynomial) and sums
the polynomial at sigma = h. Dense output inside a step is the same
polynomial; section events are located by Newton on it.

Field ids: 0 = 4D model flow (u, u', v, v'), 1 = 2D planar flow (u, w),
2 = complexified inner flow, 8 real components (Re/Im of Phi..Phi'''),
3 = decoupled fast oscillator (v, v') with v'' = -v/eps^2.

Coefficient arrays are float64[ncomp, p+2, 2]; the trailing axis holds
(hi, lo). Workspace ws is float64[8, p+2, 2]. Status codes: 0 = ok,
1 = no crossing within max_steps, 2 = blow-up, 3 = event refinement
stalled above event_tol (result still returned).
"""

import numpy as np
from numba import njit

from ._ddcore import dd_add, dd_sub, dd_mul, dd_div, dd_mul_f, two_prod

BLOWUP_LIMIT = 1e8

OK = 0
NO_CROSSING = 1
BLOWUP = 2
STALLED = 3


@njit(inline="always", cache=True)
def _conv_sq_dd(a, k, out):
    # out[k] of a*a using symmetry
    sh = 0.0
    sl = 0.0
    half = (k + 1) // 2
    for i in range(half):
        ph, pl = dd_mul(a[i, 0], a[i, 1], a[k - i, 0], a[k - i, 1])
        sh, sl = dd_add(sh, sl, ph, pl)
    sh, sl = dd_add(sh, sl, sh, sl)
    if k % 2 == 0:
        m = k // 2
        ph, pl = dd_mul(a[m, 0], a[m, 1], a[m, 0], a[m, 1])
        sh, sl = dd_add(sh, sl, ph, pl)
    out[k, 0] = sh
    out[k, 1] = sl


@njit(inline="always", cache=True)
def _conv_dd(a, b, k, out):
    # out[k] of a*b
    sh = 0.0
    sl = 0.0
    for i in range(k + 1):
        ph, pl = dd_mul(a[i, 0], a[i, 1], b[k - i, 0], b[k - i, 1])
        sh, sl = dd_add(sh, sl, ph, pl)
    out[k, 0] = sh
    out[k, 1] = sl


@njit(cache=True)
def _fill_model_dd(gh, gl, ieh, iel, c, ws, kmax):
    # c rows: 0 u, 1 up, 2 v, 3 vp; ws rows: 0 sq, 1 cb, 2 w, 3 fp, 4 up2, 5 uup2
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
    g2h, g2l = dd_add(gh, gl, gh, gl)            # 2*gamma
    g6h, g6l = dd_mul_f(gh, gl, 6.0)             # 6*gamma
    g12h, g12l = dd_mul_f(gh, gl, 12.0)          # 12*gamma
    for k in range(kmax):
        _conv_sq_dd(u, k, sq)
        _conv_dd(sq, u, k, cb)
        # f_k = sq + 2g*cb ; w_k = u + v - f
        th, tl = dd_mul(g2h, g2l, cb[k, 0], cb[k, 1])
        fh, fl = dd_add(sq[k, 0], sq[k, 1], th, tl)
        th, tl = dd_add(u[k, 0], u[k, 1], v[k, 0], v[k, 1])
        w[k, 0], w[k, 1] = dd_sub(th, tl, fh, fl)
        # fp_k = 2u + 6g*sq
        th, tl = dd_mul(g6h, g6l, sq[k, 0], sq[k, 1])
        fp[k, 0], fp[k, 1] = dd_add(2.0 * u[k, 0], 2.0 * u[k, 1], th, tl)
        _conv_sq_dd(up, k, up2)
        _conv_dd(u, up2, k, uup2)
        # fpw_k
        ah = 0.0
        al = 0.0
        for i in range(k + 1):
            ph, pl = dd_mul(fp[i, 0], fp[i, 1], w[k - i, 0], w[k - i, 1])
            ah, al = dd_add(ah, al, ph, pl)
        # rhs4 = -ie2*v + fpw + 2*up2 + 12g*uup2
        th, tl = dd_mul(ieh, iel, v[k, 0], v[k, 1])
        rh, rl = dd_sub(ah, al, th, tl)
        rh, rl = dd_add(rh, rl, 2.0 * up2[k, 0], 2.0 * up2[k, 1])
        th, tl = dd_mul(g12h, g12l, uup2[k, 0], uup2[k, 1])
        rh, rl = dd_add(rh, rl, th, tl)
        kp1 = float(k + 1)
        u[k + 1, 0], u[k + 1, 1] = dd_div(up[k, 0], up[k, 1], kp1, 0.0)
        up[k + 1, 0], up[k + 1, 1] = dd_div(w[k, 0], w[k, 1], kp1, 0.0)
        v[k + 1, 0], v[k + 1, 1] = dd_div(vp[k, 0], vp[k, 1], kp1, 0.0)
        vp[k + 1, 0], vp[k + 1, 1] = dd_div(rh, rl, kp1, 0.0)


@njit(cache=True)
def _fill_planar_dd(gh, gl, c, ws, kmax):
    # c rows: 0 u, 1 w; rhs: u' = w, w' = u - u^2 - 2g u^3
    u = c[0]
    w = c[1]
    sq = ws[0]
    cb = ws[1]
    g2h, g2l = dd_add(gh, gl, gh, gl)
    for k in range(kmax):
        _conv_sq_dd(u, k, sq)
        _conv_dd(sq, u, k, cb)
        th, tl = dd_mul(g2h, g2l, cb[k, 0], cb[k, 1])
        th, tl = dd_add(th, tl, sq[k, 0], sq[k, 1])
        rh, rl = dd_sub(u[k, 0], u[k, 1], th, tl)
        kp1 = float(k + 1)
        u[k + 1, 0], u[k + 1, 1] = dd_div(w[k, 0], w[k, 1], kp1, 0.0)
        w[k + 1, 0], w[k + 1, 1] = dd_div(rh, rl, kp1, 0.0)


@njit(inline="always", cache=True)
def _cmul_dd(arh, arl, aih, ail, brh, brl, bih, bil):
    t1h, t1l = dd_mul(arh, arl, brh, brl)
    t2h, t2l = dd_mul(aih, ail, bih, bil)
    reh, rel = dd_sub(t1h, t1l, t2h, t2l)
    t3h, t3l = dd_mul(arh, arl, bih, bil)
    t4h, t4l = dd_mul(aih, ail, brh, brl)
    imh, iml = dd_add(t3h, t3l, t4h, t4l)
    return reh, rel, imh, iml


@njit(cache=True)
def _fill_inner_dd(drh, drl, dih, dil, c, ws, kmax):
    # c rows: (0,1)=Phi0 re/im, (2,3)=Phi1, (4,5)=Phi2, (6,7)=Phi3
    # ws rows: (0,1)=sq re/im, (2,3)=cube re/im
    sqr = ws[0]
    sqi = ws[1]
    cbr = ws[2]
    cbi = ws[3]
    for k in range(kmax):
        # sq_k = (Phi0^2)_k, cube_k = (sq*Phi0)_k
        srh = 0.0
        srl = 0.0
        sih = 0.0
        sil = 0.0
        half = (k + 1) // 2
        for i in range(half):
            reh, rel, imh, iml = _cmul_dd(
                c[0, i, 0], c[0, i, 1], c[1, i, 0], c[1, i, 1],
                c[0, k - i, 0], c[0, k - i, 1], c[1, k - i, 0], c[1, k - i, 1])
            srh, srl = dd_add(srh, srl, reh, rel)
            sih, sil = dd_add(sih, sil, imh, iml)
        srh, srl = dd_add(srh, srl, srh, srl)
        sih, sil = dd_add(sih, sil, sih, sil)
        if k % 2 == 0:
            m = k // 2
            reh, rel, imh, iml = _cmul_dd(
                c[0, m, 0], c[0, m, 1], c[1, m, 0], c[1, m, 1],
                c[0, m, 0], c[0, m, 1], c[1, m, 0], c[1, m, 1])
            srh, srl = dd_add(srh, srl, reh, rel)
            sih, sil = dd_add(sih, sil, imh, iml)
        sqr[k, 0], sqr[k, 1] = srh, srl
        sqi[k, 0], sqi[k, 1] = sih, sil
        crh = 0.0
        crl = 0.0
        cih = 0.0
        cil = 0.0
        for i in range(k + 1):
            reh, rel, imh, iml = _cmul_dd(
                sqr[i, 0], sqr[i, 1], sqi[i, 0], sqi[i, 1],
                c[0, k - i, 0], c[0, k - i, 1], c[1, k - i, 0], c[1, k - i, 1])
            crh, crl = dd_add(crh, crl, reh, rel)
            cih, cil = dd_add(cih, cil, imh, iml)
        cbr[k, 0], cbr[k, 1] = crh, crl
        cbi[k, 0], cbi[k, 1] = cih, cil
        kp1 = float(k + 1)
        # Phi_j' = d * Phi_{j+1} for j = 0..2
        for j in range(3):
            reh, rel, imh, iml = _cmul_dd(
                drh, drl, dih, dil,
                c[2 * j + 2, k, 0], c[2 * j + 2, k, 1],
                c[2 * j + 3, k, 0], c[2 * j + 3, k, 1])
            c[2 * j, k + 1, 0], c[2 * j, k + 1, 1] = dd_div(reh, rel, kp1, 0.0)
            c[2 * j + 1, k + 1, 0], c[2 * j + 1, k + 1, 1] = dd_div(imh, iml, kp1, 0.0)
        # Phi3' = d * (2*cube - Phi2)
        grh, grl = dd_sub(2.0 * crh, 2.0 * crl, c[4, k, 0], c[4, k, 1])
        gih, gil = dd_sub(2.0 * cih, 2.0 * cil, c[5, k, 0], c[5, k, 1])
        reh, rel, imh, iml = _cmul_dd(drh, drl, dih, dil, grh, grl, gih, gil)
        c[6, k + 1, 0], c[6, k + 1, 1] = dd_div(reh, rel, kp1, 0.0)
        c[7, k + 1, 0], c[7, k + 1, 1] = dd_div(imh, iml, kp1, 0.0)


@njit(cache=True)
def _fill_osc_dd(ieh, iel, c, kmax):
    v = c[0]
    w = c[1]
    for k in range(kmax):
        rh, rl = dd_mul(ieh, iel, v[k, 0], v[k, 1])
        kp1 = float(k + 1)
        v[k + 1, 0], v[k + 1, 1] = dd_div(w[k, 0], w[k, 1], kp1, 0.0)
        w[k + 1, 0], w[k + 1, 1] = dd_div(-rh, -rl, kp1, 0.0)


@njit(cache=True)
def _fill_dd(field, par, c, ws, kmax):
    if field == 0:
        _fill_model_dd(par[0], par[1], par[2], par[3], c, ws, kmax)
    elif field == 1:
        _fill_planar_dd(par[0], par[1], c, ws, kmax)
    elif field == 2:
        _fill_inner_dd(par[0], par[1], par[2], par[3], c, ws, kmax)
    else:
        _fill_osc_dd(par[0], par[1], c, kmax)


@njit(inline="always", cache=True)
def _poly_dd(c, comp, kmax, sh, sl):
    rh = c[comp, kmax, 0]
    rl = c[comp, kmax, 1]
    for k in range(kmax - 1, -1, -1):
        rh, rl = dd_mul(rh, rl, sh, sl)
        rh, rl = dd_add(rh, rl, c[comp, k, 0], c[comp, k, 1])
    return rh, rl


@njit(inline="always", cache=True)
def _dpoly_dd(c, comp, kmax, sh, sl):
    rh = kmax * c[comp, kmax, 0]
    rl = kmax * c[comp, kmax, 1]
    for k in range(kmax - 1, 0, -1):
        rh, rl = dd_mul(rh, rl, sh, sl)
        rh, rl = dd_add(rh, rl, k * c[comp, k, 0], k * c[comp, k, 1])
    return rh, rl


@njit(cache=True)
def _load_state_dd(c, y):
    for i in range(y.shape[0]):
        c[i, 0, 0] = y[i, 0]
        c[i, 0, 1] = y[i, 1]


@njit(cache=True)
def _eval_all_dd(c, ncomp, p, sh, sl, out):
    for i in range(ncomp):
        out[i, 0], out[i, 1] = _poly_dd(c, i, p, sh, sl)


@njit(cache=True)
def _blowup_comp(y):
    for i in range(y.shape[0]):
        if not (abs(y[i, 0]) <= BLOWUP_LIMIT):
            return i
    return -1


@njit(cache=True, nogil=True)
def step_dd(field, par, y0, p, h):
    """One Taylor step of order p; returns (y1, per-component error estimate)."""
    ncomp = y0.shape[0]
    c = np.zeros((ncomp, p + 2, 2))
    ws = np.zeros((8, p + 2, 2))
    _load_state_dd(c, y0)
    _fill_dd(field, par, c, ws, p + 1)
    y1 = np.empty((ncomp, 2))
    _eval_all_dd(c, ncomp, p, h, 0.0, y1)
    est = np.empty(ncomp)
    hp = h ** (p + 1)
    for i in range(ncomp):
        est[i] = abs(c[i, p + 1, 0] * hp)
    return y1, est


@njit(cache=True, nogil=True)
def flow_time_dd(field, par, y0, p, h, Th, Tl):
    """Integrate for exactly time T = Th + Tl (sign sets direction).

    Returns (status, y_end, n_steps, blow_comp).
    """
    ncomp = y0.shape[0]
    c = np.zeros((ncomp, p + 2, 2))
    ws = np.zeros((8, p + 2, 2))
    y = y0.copy()
    ynew = np.empty((ncomp, 2))
    hs = h if Th >= 0.0 else -h
    nfull = int(abs(Th) / h)
    # guard against T being an exact multiple of h up to roundoff
    if nfull > 0 and abs(nfull * h) > abs(Th):
        nfull -= 1
    n = 0
    while n < nfull:
        _load_state_dd(c, y)
        _fill_dd(field, par, c, ws, p)
        _eval_all_dd(c, ncomp, p, hs, 0.0, ynew)
        bc = _blowup_comp(ynew)
        if bc >= 0:
            return BLOWUP, ynew, n + 1, bc
        y[:, :] = ynew
        n += 1
    # final partial step to land exactly on T: sigma = T - n*h (dd exact)
    ph, pl = two_prod(hs, float(n))
    sh, sl = dd_sub(Th, Tl, ph, pl)
    if sh != 0.0 or sl != 0.0:
        _load_state_dd(c, y)
        _fill_dd(field, par, c, ws, p)
        _eval_all_dd(c, ncomp, p, sh, sl, ynew)
        bc = _blowup_comp(ynew)
        if bc >= 0:
            return BLOWUP, ynew, n + 1, bc
        y[:, :] = ynew
        n += 1
    return OK, y, n, -1


@njit(cache=True, nogil=True)
def flow_section_dd(field, par, y0, p, h, max_steps, ev, gidx, gmin,
                    event_tol, check_t0):
    """Integrate until the event component crosses zero with the guard true.

    Guard: component gidx > gmin at the crossing (gidx < 0 disables).
    Returns (status, y_cross, t_hi, t_lo, n_steps, resid).
    """
    ncomp = y0.shape[0]
    c = np.zeros((ncomp, p + 2, 2))
    ws = np.zeros((8, p + 2, 2))
    y = y0.copy()
    ynew = np.empty((ncomp, 2))
    out = np.empty((ncomp, 2))
    if check_t0 and abs(y[ev, 0]) <= event_tol:
        if gidx < 0 or y[gidx, 0] > gmin:
            return OK, y, 0.0, 0.0, 0, abs(y[ev, 0])
    n = 0
    while n < max_steps:
        _load_state_dd(c, y)
        _fill_dd(field, par, c, ws, p)
        _eval_all_dd(c, ncomp, p, h, 0.0, ynew)
        bc = _blowup_comp(ynew)
        if bc >= 0:
            return BLOWUP, ynew, 0.0, 0.0, n + 1, float(bc)
        e0 = y[ev, 0]
        e1 = ynew[ev, 0]
        if (e0 > 0.0 and e1 < 0.0) or (e0 < 0.0 and e1 > 0.0) or e1 == 0.0:
            # bracketed zero of the event polynomial on (0, h]
            a = 0.0
            b = h
            fa = e0
            for _ in range(60):
                m = 0.5 * (a + b)
                fmh, fml = _poly_dd(c, ev, p, m, 0.0)
                if fmh == 0.0:
                    a = m
                    b = m
                    break
                if (fa > 0.0) == (fmh > 0.0):
                    a = m
                    fa = fmh
                else:
                    b = m
            sh = 0.5 * (a + b)
            sl = 0.0
            # Newton polish in dd on the dense-output polynomial
            best = 1e300
            stall = 0
            resid = 1e300
            for _ in range(40):
                fh, fl = _poly_dd(c, ev, p, sh, sl)
                resid = abs(fh + fl)
                if resid <= event_tol:
                    break
                if resid >= best:
                    stall += 1
                    if stall >= 3:
                        break
                else:
                    best = resid
                    stall = 0
                dh, dl = _dpoly_dd(c, ev, p, sh, sl)
                if dh == 0.0 and dl == 0.0:
                    break
                qh, ql = dd_div(fh, fl, dh, dl)
                sh, sl = dd_sub(sh, sl, qh, ql)
                if sh < 0.0:
                    sh = 0.0
                    sl = 0.0
                elif sh > h:
                    sh = h
                    sl = 0.0
            guard_ok = True
            if gidx >= 0:
                gh_, gl_ = _poly_dd(c, gidx, p, sh, sl)
                guard_ok = gh_ > gmin
            if guard_ok:
                _eval_all_dd(c, ncomp, p, sh, sl, out)
                ph, pl = two_prod(h, float(n))
                th, tl = dd_add(ph, pl, sh, sl)
                status = OK if resid <= event_tol else STALLED
                return status, out, th, tl, n + 1, resid
        y[:, :] = ynew
        n += 1
    return NO_CROSSING, y, 0.0, 0.0, n, 0.0


@njit(cache=True, nogil=True)
def jet_dd(field, par, y0, p):
    """Taylor coefficients (orders 0..p) of the trajectory through y0."""
    ncomp = y0.shape[0]
    c = np.zeros((ncomp, p + 2, 2))
    ws = np.zeros((8, p + 2, 2))
    _load_state_dd(c, y0)
    _fill_dd(field, par, c, ws, p)
    return c[:, : p + 1, :]
