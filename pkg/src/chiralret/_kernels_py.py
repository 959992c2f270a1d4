"""Pure numpy implementation of the hot kernels.

Signatures mirror ``_ckernels.pyx`` exactly; ``chiralret.kernels`` picks one
at import. All rates here are returned with the attenuation factor
``exp(-2 Im(n) k0 r)`` and the common prefactor stripped off.
"""

import numpy as np

BACKEND = "python"

POLE_TOL = 1e-12


def closed_terms(u, n, ce, cm, dAe, dAm, dDe, dDm, q_cross, p_disc_im2):
    """Bracketed polynomial parts of the medium closed-form rates.

    ``u = k0 r``. Returns ``(nd, disc_per_rr)`` such that
    ``gamma_nd = pref * E * nd`` and ``gamma_disc = 2 pref * E * rArD * disc_per_rr``.
    ``q_cross`` is the far-zone coefficient of the electric-magnetic cross
    term, ``p_disc_im2`` the coefficient of ``(Im n)^2 u^2`` in the
    discriminatory polynomial.
    """
    u = np.asarray(u, dtype=float)
    nr, ni = n.real, n.imag
    an2 = nr * nr + ni * ni
    an4 = an2 * an2
    u2 = u * u
    u4 = u2 * u2
    lin = 2.0 * ni * u + 1.0
    p_nd = an4 * u4 + an2 * u2 * lin + 4.0 * ni * ni * u2 + 6.0 * ni * u + 3.0
    p_disc = an4 * u4 + an2 * u2 * lin + p_disc_im2 * ni * ni * u2 + 6.0 * ni * u + 3.0
    q = q_cross * an4 * u4 + an2 * u2 * lin
    ace2 = abs(ce) ** 2
    ancm2 = an2 * abs(cm) ** 2
    nd = (ace2 * ace2 * dAe * dAe * dDe * dDe * p_nd
          + ace2 * ancm2 * (dAe * dAe * dDm * dDm + dAm * dAm * dDe * dDe) * q
          + ancm2 * ancm2 * dAm * dAm * dDm * dDm * p_nd)
    z = ce.conjugate() * cm * n
    re_z2 = (z * z).real
    disc = u2 * ace2 * abs(cm) ** 2 * an4 * (an2 * u2 + 2.0 * ni * u + 1.0) + re_z2 * p_disc
    return nd, disc


def limit_grid(re_n, im_n, lfc, dAe, dAm, dDe, dDm, printed):
    """Near/far limits of S/(rA rD) on the outer product grid of indices.

    ``mu = 1`` and ``eps = n^2`` at every point. Returns two arrays of shape
    ``(len(im_n), len(re_n))``; poles of the local-field factors give nan.
    """
    re_n = np.asarray(re_n, dtype=float)
    im_n = np.asarray(im_n, dtype=float)
    n = re_n[None, :] + 1j * im_n[:, None]
    if lfc:
        eps = n * n
        den = 1.0 + 2.0 * eps
        # pole of c_e, up to rounding of n*n
        pole = np.abs(den) <= POLE_TOL * (1.0 + 2.0 * np.abs(eps))
        ce = np.where(pole, np.nan, 3.0 * eps / np.where(pole, 1.0, den))
        cm = np.ones_like(n)
    else:
        ce = np.ones_like(n)
        cm = np.ones_like(n)
    an2 = n.real ** 2 + n.imag ** 2
    ace2 = np.abs(ce) ** 2
    acm2 = np.abs(cm) ** 2
    z = np.conj(ce) * cm * n
    if printed:
        d0 = ace2 * dAe * dAe * dDe * dDe + acm2 * an2 * an2 * dAm * dAm * dDm * dDm
        near = 4.0 * (z * z).real / d0
    else:
        d0 = ace2 * ace2 * dAe * dAe * dDe * dDe + acm2 * acm2 * an2 * an2 * dAm * dAm * dDm * dDm
        near = 2.0 * (z * z).real / d0
    dinf = ((ace2 * dAe * dAe + acm2 * an2 * dAm * dAm)
            * (ace2 * dDe * dDe + acm2 * an2 * dDm * dDm))
    far = (8.0 if printed else 4.0) * z.real ** 2 / dinf
    return near, far


def trace_terms(u, n, mu, ce, cm, ex, ey, ez):
    """Dense-tensor trace sums for unit ``k0`` and unit dipoles.

    Builds the four dual Green's tensors at ``k0 r = u`` along direction
    ``e`` (scaled so that ``k0 = 1``) and returns the squared Frobenius
    norms and mixed traces needed by the isotropic rate:
    ``(|G_ee|^2, |G_em|^2, |G_me|^2, |G_mm|^2, Tr[G_ee G_mm^*T], Tr[G_em G_me^*T])``
    each as an array over ``u``.
    """
    u = np.asarray(u, dtype=float)
    k = n  # k0 = 1
    x = k * u
    ph = np.exp(1j * x)
    pre = -mu * ph / (4.0 * np.pi * k * k * u ** 3)
    a = pre * (1.0 - 1j * x - x * x)
    b = -pre * (3.0 - 3j * x - x * x)
    s = -mu * ph * (1j * x - 1.0) / (4.0 * np.pi * u * u)
    e = np.array([ex, ey, ez])
    ee = np.outer(e, e)
    eye = np.eye(3)
    asym = np.array([[0.0, ez, -ey], [-ez, 0.0, ex], [ey, -ex, 0.0]])
    g = a[:, None, None] * eye + b[:, None, None] * ee
    g_ee = -(ce * ce) * g
    g_mm = -(cm * cm) * (k * k) * g
    g_me = (ce * cm * 1j) * s[:, None, None] * asym
    g_em = -g_me

    def fro(t1, t2):
        return np.sum(t1 * np.conj(t2), axis=(1, 2))

    return (fro(g_ee, g_ee).real, fro(g_em, g_em).real, fro(g_me, g_me).real,
            fro(g_mm, g_mm).real, fro(g_ee, g_mm), fro(g_em, g_me))
