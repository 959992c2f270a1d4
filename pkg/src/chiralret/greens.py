"""Homogeneous-medium Green's tensor, its dual (curled) variants and
Onsager real-cavity local-field factors.

Conventions: ``rv = r_A - r_D`` points from donor to acceptor. The curl
``curl_A x G`` acts on the first index with derivatives in ``r_A``;
``G x curl_D`` acts on the second index with derivatives in ``r_D``. For a
homogeneous medium both reduce to the antisymmetric tensor
``mu * g'(r) * eps_ijk e_k`` (with opposite signs), which gives the
magnetoelectric reciprocity ``G_em(rv) = -G_me(-rv)^T``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import CODATA, LFC, Medium, ValidationError, refractive_index

PAIRS = ("ee", "em", "me", "mm")

_LEVI_CIVITA = np.zeros((3, 3, 3))
for _i, _j, _k in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
    _LEVI_CIVITA[_i, _j, _k] = 1.0
    _LEVI_CIVITA[_i, _k, _j] = -1.0


class LFCPoleError(ValueError):
    """eps or mu equals -1/2, where the Onsager factors diverge."""


@dataclass(frozen=True)
class SeparationVector:
    vec: tuple[float, float, float]

    def __post_init__(self):
        v = tuple(float(x) for x in self.vec)
        if len(v) != 3 or not all(math.isfinite(x) for x in v):
            raise ValidationError("rv", "need three finite components")
        if math.hypot(*v) <= 0:
            raise ValidationError("rv", "separation must be > 0")
        object.__setattr__(self, "vec", v)

    @classmethod
    def along(cls, r: float, direction=(0.0, 0.0, 1.0)) -> "SeparationVector":
        d = np.asarray(direction, dtype=float)
        d = d / np.linalg.norm(d)
        if not r > 0:
            raise ValidationError("r", f"separation must be > 0, got {r!r}")
        return cls(tuple(r * d))

    @property
    def r(self) -> float:
        return math.hypot(*self.vec)

    @property
    def e_r(self) -> np.ndarray:
        v = np.asarray(self.vec)
        return v / self.r

    def __neg__(self) -> "SeparationVector":
        return SeparationVector(tuple(-x for x in self.vec))


def _as_sep(rv) -> SeparationVector:
    return rv if isinstance(rv, SeparationVector) else SeparationVector(tuple(rv))


def scalar_green(k: complex, r: float) -> complex:
    """exp(ikr) / (4 pi r)."""
    if not r > 0:
        raise ValidationError("r", f"must be > 0, got {r!r}")
    return np.exp(1j * k * r) / (4 * math.pi * r)


def wavenumber(omega: float, med: Medium, c: float = CODATA.c) -> complex:
    return refractive_index(med) * omega / c


@dataclass(frozen=True)
class GreenFactors:
    """Factored form ``G = a I + b e_r e_r`` and ``curl_A x G = s eps.e_r``.

    ``s`` is the coefficient of the antisymmetric tensor ``eps_ijk e_k``.
    """

    a: complex
    b: complex
    s: complex


def green_factors(r: float, omega: float, med: Medium, c: float = CODATA.c) -> GreenFactors:
    if not r > 0:
        raise ValidationError("r", f"must be > 0, got {r!r}")
    k = wavenumber(omega, med, c)
    x = k * r
    ph = np.exp(1j * x)
    pre = -med.mu * ph / (4 * math.pi * k * k * r**3)
    a = pre * (1 - 1j * x - x * x)
    b = -pre * (3 - 3j * x - x * x)
    # d/dr [exp(ikr)/(4 pi r)] = exp(ikr) (ikr - 1) / (4 pi r^2)
    dg = ph * (1j * x - 1) / (4 * math.pi * r * r)
    return GreenFactors(a=complex(a), b=complex(b), s=complex(-med.mu * dg))


def _antisym(e: np.ndarray) -> np.ndarray:
    """Tensor eps_ijk e_k."""
    return np.einsum("ijk,k->ij", _LEVI_CIVITA, e)


def green_tensor(rv, omega: float, med: Medium, c: float = CODATA.c) -> np.ndarray:
    """Dense 3x3 Green's tensor (1/m) without the contact term."""
    rv = _as_sep(rv)
    f = green_factors(rv.r, omega, med, c)
    e = rv.e_r
    return f.a * np.eye(3) + f.b * np.outer(e, e)


def dual_green(pair: str, rv, omega: float, med: Medium, c: float = CODATA.c) -> np.ndarray:
    """Dual Green's tensor for the acceptor/donor coupling types in ``pair``.

    ``ee``: (i k0)^2 G, ``em``: i k0 G x curl_D, ``me``: curl_A x G i k0,
    ``mm``: curl_A x G x curl_D = -k^2 G.
    """
    if pair not in PAIRS:
        raise ValueError(f"pair must be one of {PAIRS}, got {pair!r}")
    rv = _as_sep(rv)
    f = green_factors(rv.r, omega, med, c)
    e = rv.e_r
    k0 = omega / c
    if pair in ("ee", "mm"):
        g = f.a * np.eye(3) + f.b * np.outer(e, e)
        if pair == "ee":
            return -(k0 * k0) * g
        k = wavenumber(omega, med, c)
        return -(k * k) * g
    curl = f.s * _antisym(e)
    if pair == "me":
        return 1j * k0 * curl
    return -1j * k0 * curl


def lfc_factors(med: Medium) -> tuple[complex, complex]:
    """Onsager real-cavity factors (c_e, c_m) = (3 eps/(1+2 eps), 3/(1+2 mu))."""
    de = 1 + 2 * med.eps
    dm = 1 + 2 * med.mu
    if de == 0 or dm == 0:
        raise LFCPoleError("eps or mu equals -1/2: local-field factor diverges")
    return 3 * med.eps / de, 3 / dm


def dual_green_lfc(pair: str, rv, omega: float, med: Medium,
                   c: float = CODATA.c) -> np.ndarray:
    g = dual_green(pair, rv, omega, med, c)
    if med.is_vacuum:
        return g
    ce, cm = lfc_factors(med)
    fac = {"e": ce, "m": cm}
    return fac[pair[0]] * g * fac[pair[1]]


def dual_green_for(pair: str, rv, omega: float, med: Medium, lfc: LFC,
                   c: float = CODATA.c) -> np.ndarray:
    if LFC(lfc) is LFC.ONSAGER:
        return dual_green_lfc(pair, rv, omega, med, c)
    return dual_green(pair, rv, omega, med, c)
