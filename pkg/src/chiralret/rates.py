"""Transition matrix elements and reduced (rho-divided) transfer rates.

The isotropically averaged trace formula over the dual Green's tensors is
the reference; the closed forms below are fast paths that must agree with
it (see ``chiralret.oracle``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product

import numpy as np

from . import kernels
from .core import (
    LFC,
    Constants,
    Medium,
    RateBreakdown,
    TransferConfig,
    ValidationError,
    Variant,
    refractive_index,
    rotatory_over_c,
)
from .greens import SeparationVector, dual_green_for, lfc_factors

LABELS = ("e", "m")

# labels (l1, l2, l3, l4) of the four R_A R_D contributions
DISC_LABELS = (("e", "m", "m", "e"), ("m", "e", "m", "e"),
               ("e", "m", "e", "m"), ("m", "e", "e", "m"))
ND_LABELS = tuple((a, a, b, b) for a in LABELS for b in LABELS)

# (far-zone cross coefficient, (Im n)^2 coefficient of the disc polynomial)
_VARIANT_COEFFS = {
    Variant.PRODUCT_CONSISTENT: (1.0, 4.0),
    Variant.AS_PRINTED: (2.0, 1.0),
}

# fixed direction for the dense isotropic trace; the result is direction-free
_TRACE_DIRECTION = np.array([1.0, 2.0, 2.0]) / 3.0


@dataclass(frozen=True)
class DipoleVectors:
    """Fixed-orientation transition dipoles: real electric, imaginary dual magnetic."""

    d_e_vec: np.ndarray
    d_m_vec: np.ndarray

    def __post_init__(self):
        de = np.asarray(self.d_e_vec, dtype=complex)
        dm = np.asarray(self.d_m_vec, dtype=complex)
        if de.shape != (3,) or dm.shape != (3,):
            raise ValidationError("dipole", "vectors must have 3 components")
        if np.any(de.imag != 0):
            raise ValidationError("d_e_vec", "electric transition dipole must be real")
        if np.any(dm.real != 0):
            raise ValidationError("d_m_vec", "dual magnetic transition dipole must be imaginary")
        object.__setattr__(self, "d_e_vec", de)
        object.__setattr__(self, "d_m_vec", dm)

    def dual(self, label: str) -> np.ndarray:
        return self.d_e_vec if label == "e" else self.d_m_vec


def matrix_element(lam_A: str, lam_D: str, A: DipoleVectors, D: DipoleVectors,
                   rv, omega: float, med: Medium, lfc: LFC = LFC.OFF,
                   const: Constants | None = None) -> complex:
    """Second-order transfer amplitude (J) for one acceptor/donor coupling pair.

    Equals ``mu0 c^2 d^A_lam_A . G_{lam_A lam_D} . d^D_lam_D`` with dual
    dipoles; e.g. the electric-electric term is ``-mu0 omega^2 d^A.G.d^D``.
    """
    from .core import CODATA
    const = const or CODATA
    if not omega > 0:
        raise ValidationError("omega", f"must be > 0, got {omega!r}")
    g = dual_green_for(lam_A + lam_D, rv, omega, med, lfc, const.c)
    return complex(const.mu0 * const.c**2 * (A.dual(lam_A) @ g @ D.dual(lam_D)))


def rate_prefactor(const: Constants) -> float:
    """2 pi mu0^2 c^4 / (9 hbar^2) = 2 pi / (9 eps0^2 hbar^2)."""
    return 2 * math.pi * (const.mu0 * const.c**2) ** 2 / (9 * const.hbar**2)


def _acceptor_product(l1: str, l2: str, mol) -> complex:
    """d^A_l1 . d^A*_l2 for an upward (acceptor) transition."""
    if l1 == l2:
        return (mol.d_e if l1 == "e" else mol.d_m) ** 2
    rot = rotatory_over_c(mol)
    return -1j * rot if l1 == "e" else 1j * rot


def _donor_product(l3: str, l4: str, mol) -> complex:
    """d^D*_l3 . d^D_l4 for a downward (donor) transition."""
    if l3 == l4:
        return (mol.d_e if l3 == "e" else mol.d_m) ** 2
    rot = rotatory_over_c(mol)
    return -1j * rot if l3 == "e" else 1j * rot


def reduced_rate_contribution(labels, cfg: TransferConfig) -> complex:
    """One term of the isotropic trace rate, in s^-2 (divided by rho)."""
    l1, l2, l3, l4 = labels
    rv = SeparationVector.along(cfg.r, _TRACE_DIRECTION)
    c = cfg.constants.c
    g14 = dual_green_for(l1 + l4, rv, cfg.omega, cfg.medium, cfg.lfc, c)
    g23 = dual_green_for(l2 + l3, rv, cfg.omega, cfg.medium, cfg.lfc, c)
    tr = np.sum(g14 * np.conj(g23))
    return (rate_prefactor(cfg.constants) * _acceptor_product(l1, l2, cfg.acceptor)
            * _donor_product(l3, l4, cfg.donor) * tr)


def reduced_gammas_trace(cfg: TransferConfig) -> tuple[float, float]:
    nd = sum(reduced_rate_contribution(lab, cfg) for lab in ND_LABELS)
    disc = sum(reduced_rate_contribution(lab, cfg) for lab in DISC_LABELS)
    return float(nd.real), float(disc.real)


def reduced_rate_total(cfg: TransferConfig) -> complex:
    """Sum over all 16 label combinations (real for any input)."""
    return sum(reduced_rate_contribution(lab, cfg) for lab in product(LABELS, repeat=4))


def _medium_params(cfg_medium: Medium, lfc: LFC):
    n = refractive_index(cfg_medium)
    if LFC(lfc) is LFC.ONSAGER:
        ce, cm = lfc_factors(cfg_medium)
    else:
        ce = cm = 1.0 + 0j
    return n, complex(ce), complex(cm)


@dataclass(frozen=True)
class ClosedParts:
    """Closed-form rates split as ``gamma = scale * exp(log_att) * part``."""

    nd: np.ndarray
    disc: np.ndarray
    scale: np.ndarray
    log_att: np.ndarray

    @property
    def gamma_nd(self):
        return self.scale * np.exp(self.log_att) * self.nd

    @property
    def gamma_disc(self):
        return self.scale * np.exp(self.log_att) * self.disc

    @property
    def S(self):
        with np.errstate(divide="ignore", invalid="ignore"):
            return self.disc / self.nd


def _free_space_parts(donor, acceptor, r, const: Constants) -> ClosedParts:
    r = np.asarray(r, dtype=float)
    u = donor.omega0 / const.c * r
    u2 = u * u
    u4 = u2 * u2
    dAe, dAm, dDe, dDm = acceptor.d_e, acceptor.d_m, donor.d_e, donor.d_m
    nd = ((dAe**2 * dDe**2 + dAm**2 * dDm**2) * (3 + u2 + u4)
          + (dAe**2 * dDm**2 + dAm**2 * dDe**2) * (u2 + u4))
    disc = 2 * rotatory_over_c(donor) * rotatory_over_c(acceptor) * (3 + 2 * u2 + 2 * u4)
    scale = 1.0 / (36 * math.pi * const.eps0**2 * const.hbar**2 * r**6)
    return ClosedParts(nd, disc, scale, np.zeros_like(u))


def _medium_parts(donor, acceptor, r, medium: Medium, lfc: LFC, variant: Variant,
                  const: Constants) -> ClosedParts:
    r = np.asarray(r, dtype=float)
    n, ce, cm = _medium_params(medium, lfc)
    u = donor.omega0 / const.c * r
    q_cross, p_im2 = _VARIANT_COEFFS[Variant(variant)]
    nd, disc = kernels.closed_terms(u, n, ce, cm, acceptor.d_e, acceptor.d_m,
                                    donor.d_e, donor.d_m, q_cross, p_im2)
    rr = rotatory_over_c(donor) * rotatory_over_c(acceptor)
    an4 = abs(n) ** 4
    scale = abs(medium.mu) ** 2 / (36 * math.pi * const.eps0**2 * const.hbar**2
                                   * r**6 * an4)
    return ClosedParts(np.asarray(nd), 2 * rr * np.asarray(disc), scale, -2 * n.imag * u)


def closed_parts(cfg: TransferConfig, r=None) -> ClosedParts:
    """Closed-form rate parts for ``cfg`` (optionally over an array of ``r``)."""
    r = cfg.r if r is None else r
    if cfg.medium.is_vacuum and cfg.lfc is LFC.OFF:
        return _free_space_parts(cfg.donor, cfg.acceptor, r, cfg.constants)
    return _medium_parts(cfg.donor, cfg.acceptor, r, cfg.medium, cfg.lfc,
                         cfg.variant, cfg.constants)


def medium_formula_gammas(cfg: TransferConfig) -> tuple[float, float]:
    """The medium closed form evaluated even when the medium is vacuum."""
    p = _medium_parts(cfg.donor, cfg.acceptor, cfg.r, cfg.medium, cfg.lfc,
                      cfg.variant, cfg.constants)
    return float(p.gamma_nd), float(p.gamma_disc)


def free_space_gammas(cfg: TransferConfig) -> tuple[float, float]:
    p = _free_space_parts(cfg.donor, cfg.acceptor, cfg.r, cfg.constants)
    return float(p.gamma_nd), float(p.gamma_disc)


def reduced_gammas_closed(cfg: TransferConfig) -> tuple[float, float]:
    p = closed_parts(cfg)
    return float(p.gamma_nd), float(p.gamma_disc)


def trace_scan(cfg: TransferConfig, r) -> tuple[np.ndarray, np.ndarray]:
    """Trace-formula rates over an array of separations via the kernel backend."""
    r = np.asarray(r, dtype=float)
    n, ce, cm = _medium_params(cfg.medium, cfg.lfc)
    k0 = cfg.k0
    f_ee, f_em, f_me, f_mm, t_eemm, t_emme = kernels.trace_terms(
        k0 * r, n, complex(cfg.medium.mu), ce, cm, *_TRACE_DIRECTION)
    A, D = cfg.acceptor, cfg.donor
    nd = (A.d_e**2 * D.d_e**2 * f_ee + A.d_e**2 * D.d_m**2 * f_em
          + A.d_m**2 * D.d_e**2 * f_me + A.d_m**2 * D.d_m**2 * f_mm)
    rr = rotatory_over_c(A) * rotatory_over_c(D)
    disc = rr * (2 * np.real(t_eemm) - 2 * np.real(t_emme))
    scale = rate_prefactor(cfg.constants) * k0**6
    return scale * nd, scale * disc


def rates_LR(cfg: TransferConfig, method: str = "closed") -> RateBreakdown:
    """Left/right-handed acceptor rates and S.

    ``method`` is ``"closed"`` (default) or ``"trace"``.
    """
    if method == "closed":
        p = closed_parts(cfg)
        nd, disc = float(p.gamma_nd), float(p.gamma_disc)
        if not p.nd > 0:
            return RateBreakdown.from_gammas(0.0, disc)
        if nd > 0:
            return RateBreakdown.from_gammas(nd, disc)
        # rates underflowed; S is still defined by the stripped ratio
        return RateBreakdown(nd, disc, nd + abs(disc), nd - abs(disc), float(p.S))
    if method == "trace":
        return RateBreakdown.from_gammas(*reduced_gammas_trace(cfg))
    raise ValueError(f"method must be 'closed' or 'trace', got {method!r}")
