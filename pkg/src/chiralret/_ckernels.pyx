# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels; same signatures and semantics as ``_kernels_py``."""

import numpy as np
cimport numpy as cnp
from libc.math cimport M_PI, exp, cos, sin, fabs, sqrt, NAN

cnp.import_array()

BACKEND = "cython"

cdef double POLE_TOL = 1e-12

ctypedef double complex cplx


cdef inline double abs2(cplx z) nogil:
    return z.real * z.real + z.imag * z.imag


cdef inline cplx cexp(cplx z) nogil:
    cdef double m = exp(z.real)
    return m * cos(z.imag) + 1j * m * sin(z.imag)


def closed_terms(u, cplx n, cplx ce, cplx cm, double dAe, double dAm,
                 double dDe, double dDm, double q_cross, double p_disc_im2):
    cdef cnp.ndarray[cnp.float64_t, ndim=1] uu = np.ascontiguousarray(
        np.atleast_1d(np.asarray(u, dtype=np.float64)))
    cdef Py_ssize_t i, m = uu.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=1] nd = np.empty(m)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] disc = np.empty(m)
    cdef double ni = n.imag
    cdef double an2 = abs2(n)
    cdef double an4 = an2 * an2
    cdef double ace2 = abs2(ce)
    cdef double acm2 = abs2(cm)
    cdef double ancm2 = an2 * acm2
    cdef cplx z = ce.conjugate() * cm * n
    cdef double re_z2 = (z * z).real
    cdef double c_ee = ace2 * ace2 * dAe * dAe * dDe * dDe
    cdef double c_x = ace2 * ancm2 * (dAe * dAe * dDm * dDm + dAm * dAm * dDe * dDe)
    cdef double c_mm = ancm2 * ancm2 * dAm * dAm * dDm * dDm
    cdef double x, x2, x4, lin, p_nd, p_disc, q
    with nogil:
        for i in range(m):
            x = uu[i]
            x2 = x * x
            x4 = x2 * x2
            lin = 2.0 * ni * x + 1.0
            p_nd = an4 * x4 + an2 * x2 * lin + 4.0 * ni * ni * x2 + 6.0 * ni * x + 3.0
            p_disc = an4 * x4 + an2 * x2 * lin + p_disc_im2 * ni * ni * x2 + 6.0 * ni * x + 3.0
            q = q_cross * an4 * x4 + an2 * x2 * lin
            nd[i] = c_ee * p_nd + c_x * q + c_mm * p_nd
            disc[i] = (x2 * ace2 * acm2 * an4 * (an2 * x2 + 2.0 * ni * x + 1.0)
                       + re_z2 * p_disc)
    if np.ndim(u) == 0:
        return nd[0], disc[0]
    return nd.reshape(np.shape(u)), disc.reshape(np.shape(u))


def limit_grid(re_n, im_n, bint lfc, double dAe, double dAm, double dDe,
               double dDm, bint printed):
    cdef cnp.ndarray[cnp.float64_t, ndim=1] rr = np.ascontiguousarray(re_n, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] ii = np.ascontiguousarray(im_n, dtype=np.float64)
    cdef Py_ssize_t a, b, na = ii.shape[0], nb = rr.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=2] near = np.empty((na, nb))
    cdef cnp.ndarray[cnp.float64_t, ndim=2] far = np.empty((na, nb))
    cdef cplx n, eps, den, ce, cm = 1.0, z
    cdef double an2, ace2, acm2, d0, dinf
    with nogil:
        for a in range(na):
            for b in range(nb):
                n = rr[b] + 1j * ii[a]
                if lfc:
                    eps = n * n
                    den = 1.0 + 2.0 * eps
                    # pole of c_e, up to rounding of n*n
                    if sqrt(abs2(den)) <= POLE_TOL * (1.0 + 2.0 * sqrt(abs2(eps))):
                        near[a, b] = NAN
                        far[a, b] = NAN
                        continue
                    ce = 3.0 * eps / den
                else:
                    ce = 1.0
                an2 = n.real * n.real + n.imag * n.imag
                ace2 = abs2(ce)
                acm2 = abs2(cm)
                z = ce.conjugate() * cm * n
                if printed:
                    d0 = ace2 * dAe * dAe * dDe * dDe + acm2 * an2 * an2 * dAm * dAm * dDm * dDm
                    near[a, b] = 4.0 * (z * z).real / d0
                else:
                    d0 = (ace2 * ace2 * dAe * dAe * dDe * dDe
                          + acm2 * acm2 * an2 * an2 * dAm * dAm * dDm * dDm)
                    near[a, b] = 2.0 * (z * z).real / d0
                dinf = ((ace2 * dAe * dAe + acm2 * an2 * dAm * dAm)
                        * (ace2 * dDe * dDe + acm2 * an2 * dDm * dDm))
                far[a, b] = (8.0 if printed else 4.0) * z.real * z.real / dinf
    return near, far


def trace_terms(u, cplx n, cplx mu, cplx ce, cplx cm, double ex, double ey, double ez):
    cdef cnp.ndarray[cnp.float64_t, ndim=1] uu = np.ascontiguousarray(
        np.atleast_1d(np.asarray(u, dtype=np.float64)))
    cdef Py_ssize_t p, i, j, m = uu.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=1] f_ee = np.empty(m)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] f_em = np.empty(m)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] f_me = np.empty(m)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] f_mm = np.empty(m)
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] t_eemm = np.empty(m, dtype=np.complex128)
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] t_emme = np.empty(m, dtype=np.complex128)
    cdef double e[3]
    cdef double asym[3][3]
    cdef cplx g[3][3]
    cdef cplx gee, gmm, gme, gem
    cdef cplx x, ph, pre, a, b, s, k2 = n * n
    cdef double acc_ee, acc_em, acc_me, acc_mm
    cdef cplx acc_eemm, acc_emme
    e[0] = ex
    e[1] = ey
    e[2] = ez
    asym[0][0] = 0.0
    asym[0][1] = ez
    asym[0][2] = -ey
    asym[1][0] = -ez
    asym[1][1] = 0.0
    asym[1][2] = ex
    asym[2][0] = ey
    asym[2][1] = -ex
    asym[2][2] = 0.0
    with nogil:
        for p in range(m):
            x = n * uu[p]
            ph = cexp(1j * x)
            pre = -mu * ph / (4.0 * M_PI * k2 * uu[p] * uu[p] * uu[p])
            a = pre * (1.0 - 1j * x - x * x)
            b = -pre * (3.0 - 3j * x - x * x)
            s = -mu * ph * (1j * x - 1.0) / (4.0 * M_PI * uu[p] * uu[p])
            acc_ee = 0.0
            acc_em = 0.0
            acc_me = 0.0
            acc_mm = 0.0
            acc_eemm = 0.0
            acc_emme = 0.0
            for i in range(3):
                for j in range(3):
                    g[i][j] = b * e[i] * e[j]
                    if i == j:
                        g[i][j] = g[i][j] + a
                    gee = -(ce * ce) * g[i][j]
                    gmm = -(cm * cm) * k2 * g[i][j]
                    gme = (ce * cm * 1j) * s * asym[i][j]
                    gem = -gme
                    acc_ee += abs2(gee)
                    acc_mm += abs2(gmm)
                    acc_me += abs2(gme)
                    acc_em += abs2(gem)
                    acc_eemm = acc_eemm + gee * gmm.conjugate()
                    acc_emme = acc_emme + gem * gme.conjugate()
            f_ee[p] = acc_ee
            f_em[p] = acc_em
            f_me[p] = acc_me
            f_mm[p] = acc_mm
            t_eemm[p] = acc_eemm
            t_emme[p] = acc_emme
    return f_ee, f_em, f_me, f_mm, t_eemm, t_emme
