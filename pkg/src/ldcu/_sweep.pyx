# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
# cython: initializedcheck=False, nonecheck=False
"""Compiled directional sweep: limited reconstruction plus interface fluxes.

Mirrors ``ldcu._sweep_py.sweep`` operation for operation.
"""
from libc.math cimport sqrt, fabs, isfinite

import numpy as np

cdef enum:
    NEW = 0
    OLD = 1
    CU = 2


cdef inline double _minmod2(double a, double b) noexcept nogil:
    if a > 0.0 and b > 0.0:
        return a if a < b else b
    if a < 0.0 and b < 0.0:
        return a if a > b else b
    return 0.0


cdef inline double _minmod3(double a, double b, double c) noexcept nogil:
    cdef double m
    if a > 0.0 and b > 0.0 and c > 0.0:
        m = a if a < b else b
        return m if m < c else c
    if a < 0.0 and b < 0.0 and c < 0.0:
        m = a if a > b else b
        return m if m > c else c
    return 0.0


cdef int _iface(const double* wm, const double* wp, int two_d, double gamma,
                int flavor, double eps, double* out, double* smax,
                int* guarded) noexcept nogil:
    """Flux between rotated states; returns 0, or 1/2/3 on inadmissibility."""
    cdef int ne = 3 if two_d else 2
    cdef double rm = wm[0], mnm = wm[1], Em = wm[ne]
    cdef double rp = wp[0], mnp = wp[1], Ep = wp[ne]
    cdef double mtm = wm[2] if two_d else 0.0
    cdef double mtp = wp[2] if two_d else 0.0
    cdef double pm, pp, um, up, cm, cp, ap, am, d, t
    cdef double Fm[4]
    cdef double Fp[4]
    cdef double wmv[4]
    cdef double wpv[4]
    cdef double rs, ms, us, asp, asm, alpha, qr, rho_p, rho_m
    cdef double mts, qmt, mt_p, mt_m, braces, qE
    cdef int c

    if not rm > 0.0:
        return 1
    pm = (gamma - 1.0) * (Em - (mnm * mnm + mtm * mtm) / (2.0 * rm))
    if not pm > 0.0:
        return 1
    if not rp > 0.0:
        return 2
    pp = (gamma - 1.0) * (Ep - (mnp * mnp + mtp * mtp) / (2.0 * rp))
    if not pp > 0.0:
        return 2

    um = mnm / rm
    up = mnp / rp
    cm = sqrt(gamma * pm / rm)
    cp = sqrt(gamma * pp / rp)
    Fm[0] = mnm
    Fm[1] = mnm * um + pm
    Fm[2] = mtm * um
    Fm[3] = um * (Em + pm)
    Fp[0] = mnp
    Fp[1] = mnp * up + pp
    Fp[2] = mtp * up
    Fp[3] = up * (Ep + pp)
    if not two_d:
        Fm[2] = Fm[3]
        Fp[2] = Fp[3]
    for c in range(ne + 1):
        wmv[c] = wm[c]
        wpv[c] = wp[c]

    ap = um + cm
    t = up + cp
    if t > ap:
        ap = t
    if ap < 0.0:
        ap = 0.0
    am = um - cm
    t = up - cp
    if t < am:
        am = t
    if am > 0.0:
        am = 0.0
    if ap > smax[0]:
        smax[0] = ap
    if -am > smax[0]:
        smax[0] = -am

    if ap < eps and am > -eps:
        for c in range(ne + 1):
            out[c] = 0.5 * (Fm[c] + Fp[c])
        return 0

    d = ap - am
    for c in range(ne + 1):
        out[c] = (ap * Fm[c] - am * Fp[c]) / d + (ap * am / d) * (wpv[c] - wmv[c])
    if flavor == CU:
        return 0

    rs = (ap * rp - am * rm - (Fp[0] - Fm[0])) / d
    if not rs > 0.0:
        return 3
    ms = (ap * mnp - am * mnm - (Fp[1] - Fm[1])) / d
    us = ms / rs

    if flavor == NEW:
        if not (am < us and us < ap):
            guarded[0] += 1
            return 0
        asp = ap - us
        asm = am - us
        if us < 0.0:
            alpha = ap / asp
        else:
            alpha = am / asm
    else:
        asp = ap
        asm = am
        alpha = 1.0
    if not (fabs(asp) >= eps and fabs(asm) >= eps):
        guarded[0] += 1
        return 0

    qr = _minmod2(-asm * (rs - rm), asp * (rp - rs))
    rho_p = rs + qr / asp
    rho_m = rs + qr / asm
    if not (rho_p > 0.0 and rho_m > 0.0):
        guarded[0] += 1
        return 0
    qmt = 0.0
    if two_d:
        mts = (ap * mtp - am * mtm - (Fp[2] - Fm[2])) / d
        qmt = _minmod2(-asm * (mts - mtm), asp * (mtp - mts))
        mt_p = mts + qmt / asp
        mt_m = mts + qmt / asm
        # K(a*-) - K(a*+): this orientation makes a stationary shear layer exact
        braces = mt_m * mt_m / (2.0 * rho_m) - mt_p * mt_p / (2.0 * rho_p)
        qE = (asp * asm / (ap - am)) * braces + (0.5 * us * us) * qr
    else:
        qE = (0.5 * us * us) * qr
    if not (isfinite(alpha) and isfinite(qE)):
        guarded[0] += 1
        return 0

    out[0] = out[0] + alpha * qr
    out[1] = out[1] + alpha * (us * qr)
    if two_d:
        out[2] = out[2] + alpha * qmt
    out[ne] = out[ne] + alpha * qE
    return 0


def sweep(double[:, :, :] U, double dx, double theta, double gamma, int flavor,
          double eps, int normal, int tangential, double[:, :, :] F):
    """Compiled counterpart of :func:`ldcu._sweep_py.sweep` (same contract)."""
    cdef Py_ssize_t ncomp = U.shape[0]
    cdef Py_ssize_t nlines = U.shape[1]
    cdef Py_ssize_t L = U.shape[2]
    cdef Py_ssize_t nif = L - 3
    cdef int two_d = ncomp == 4
    cdef int order[4]
    cdef double wm[4]
    cdef double wp[4]
    cdef double out[4]
    cdef double smax = 0.0
    cdef int guarded = 0
    cdef int status = 0
    cdef int c, nc = <int>ncomp
    cdef Py_ssize_t line, i, bad_line = -1, bad_if = -1
    cdef double half = 0.5 * dx
    cdef double twodx = 2.0 * dx
    cdef double[:, ::1] s = np.empty((ncomp, L - 2))
    cdef double ul, uc, ur

    if L < 4:
        raise ValueError("need at least one interior cell plus ghosts")
    order[0] = 0
    order[1] = normal
    if two_d:
        order[2] = tangential
        order[3] = 3
    else:
        order[2] = 2

    with nogil:
        for line in range(nlines):
            for c in range(nc):
                for i in range(1, L - 1):
                    ul = U[order[c], line, i - 1]
                    uc = U[order[c], line, i]
                    ur = U[order[c], line, i + 1]
                    s[c, i - 1] = _minmod3(theta * (uc - ul) / dx, (ur - ul) / twodx,
                                           theta * (ur - uc) / dx)
            for i in range(nif):
                for c in range(nc):
                    wm[c] = U[order[c], line, i + 1] + half * s[c, i]
                    wp[c] = U[order[c], line, i + 2] - half * s[c, i + 1]
                status = _iface(wm, wp, two_d, gamma, flavor, eps, out, &smax, &guarded)
                if status != 0:
                    bad_line = line
                    bad_if = i
                    break
                for c in range(nc):
                    F[order[c], line, i] = out[c]
            if status != 0:
                break

    if status != 0:
        return 0.0, 0, (status, bad_line, bad_if)
    return smax, guarded, None
