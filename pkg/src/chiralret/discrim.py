"""Degree of discrimination S: limits, scans, medium optimisation, media table."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from . import kernels
from .core import (
    LFC,
    DegenerateInputError,
    Medium,
    Molecule,
    TransferConfig,
    ValidationError,
    refractive_index,
    rotatory_over_c,
)
from .greens import lfc_factors
from .rates import closed_parts, rates_LR


class LimitMode(str, enum.Enum):
    DERIVED_DEFAULT = "derived_default"
    PAPER_PRINTED = "paper_printed"


class Branch(str, enum.Enum):
    SUB_UNITY = "sub_unity"
    SUPER_UNITY = "super_unity"


class Target(str, enum.Enum):
    NEAR = "near"
    FAR = "far"


class FlatLandscapeError(ValueError):
    """No interior maximum of |S| exists on the requested branch."""


# refractive indices at 6.44e15 rad/s
TABLE_I_MEDIA = (
    ("water", 1.4 + 1e-8j),
    ("biodiesel", 1.56 + 8e-6j),
    ("ethanol", 1.39 + 3e-6j),
    ("methane", 1.44 + 0.07j),
    ("mercury", 0.52 + 2.39j),
)


@dataclass(frozen=True)
class SLimits:
    s_near: float
    s_far: float
    mode: LimitMode


def degree_S(cfg: TransferConfig) -> float:
    return rates_LR(cfg).S


def _limits(n: complex, ce: complex, cm: complex, donor: Molecule, acceptor: Molecule,
            mode: LimitMode) -> tuple[float, float]:
    dAe, dAm, dDe, dDm = acceptor.d_e, acceptor.d_m, donor.d_e, donor.d_m
    rr = rotatory_over_c(donor) * rotatory_over_c(acceptor)
    an2 = n.real**2 + n.imag**2
    ace2, acm2 = abs(ce) ** 2, abs(cm) ** 2
    z = ce.conjugate() * cm * n
    if mode is LimitMode.PAPER_PRINTED:
        d0 = ace2 * dAe**2 * dDe**2 + acm2 * an2**2 * dAm**2 * dDm**2
        near_fac, far_fac = 4.0, 8.0
    else:
        d0 = ace2**2 * dAe**2 * dDe**2 + acm2**2 * an2**2 * dAm**2 * dDm**2
        near_fac, far_fac = 2.0, 4.0
    dinf = (ace2 * dAe**2 + acm2 * an2 * dAm**2) * (ace2 * dDe**2 + acm2 * an2 * dDm**2)
    if d0 == 0 or dinf == 0:
        raise DegenerateInputError("limit denominator vanishes (zero transition dipoles)")
    return rr * (near_fac * (z * z).real / d0), rr * (far_fac * z.real**2 / dinf)


def s_limits(cfg: TransferConfig, mode: LimitMode | str = LimitMode.DERIVED_DEFAULT) -> SLimits:
    """Analytic r -> 0 and r -> infinity limits of S.

    ``derived_default`` are the exact limits of the closed-form rates;
    ``paper_printed`` uses the alternative closed limit formulas (vacuum factors
    4 and 8, ``|c_e|^2`` in the near-zone denominator), exactly twice the
    derived values in vacuum.
    """
    mode = LimitMode(mode)
    n = refractive_index(cfg.medium)
    if cfg.lfc is LFC.ONSAGER:
        ce, cm = (complex(x) for x in lfc_factors(cfg.medium))
    else:
        ce = cm = 1 + 0j
    near, far = _limits(n, ce, cm, cfg.donor, cfg.acceptor, mode)
    return SLimits(near, far, mode)


@dataclass(frozen=True)
class SeparationScan:
    r: np.ndarray
    gamma_nd: np.ndarray
    gamma_disc: np.ndarray
    S: np.ndarray

    def rows(self):
        return list(zip(self.r, self.gamma_nd, self.gamma_disc, self.S))

    @property
    def is_monotone(self) -> bool:
        d = np.diff(self.S)
        return bool(np.all(d >= 0) or np.all(d <= 0))


def scan_separation(cfg: TransferConfig, r_min: float, r_max: float, points: int,
                    logspace: bool = True) -> SeparationScan:
    """Rates and S over separations (S from the attenuation-free ratio)."""
    if not (0 < r_min < r_max) or not math.isfinite(r_max):
        raise ValidationError("r_range", f"need 0 < r_min < r_max, got {r_min!r}, {r_max!r}")
    if int(points) != points or points < 2:
        raise ValidationError("points", f"need an integer >= 2, got {points!r}")
    if logspace:
        r = np.logspace(math.log10(r_min), math.log10(r_max), int(points))
        r[0], r[-1] = r_min, r_max
    else:
        r = np.linspace(r_min, r_max, int(points))
    p = closed_parts(cfg, r)
    return SeparationScan(r, np.asarray(p.gamma_nd), np.asarray(p.gamma_disc), np.asarray(p.S))


def midpoint_crossing(cfg: TransferConfig, r_lo: float = 1e-10, r_hi: float = 1e-3) -> float:
    """Separation at which S crosses the mean of its near/far limits."""
    lim = s_limits(cfg)
    mid = 0.5 * (lim.s_near + lim.s_far)

    def f(logr):
        return float(closed_parts(cfg, math.exp(logr)).S) - mid

    return math.exp(brentq(f, math.log(r_lo), math.log(r_hi), xtol=1e-12))


@dataclass(frozen=True)
class ScanGrid:
    re_n: np.ndarray
    im_n: np.ndarray
    s_near: np.ndarray  # shape (len(im_n), len(re_n))
    s_far: np.ndarray
    mode: LimitMode = LimitMode.DERIVED_DEFAULT

    def rows(self):
        """(re_n, im_n, s_near, s_far) in grid order: Im(n) outer, Re(n) inner."""
        out = []
        for a, im in enumerate(self.im_n):
            for b, re in enumerate(self.re_n):
                out.append((re, im, self.s_near[a, b], self.s_far[a, b]))
        return out


def _axis(lo, hi, count, name):
    if int(count) != count or count < 1:
        raise ValidationError(name, f"count must be a positive integer, got {count!r}")
    if not (math.isfinite(lo) and math.isfinite(hi)) or hi < lo or (count > 1 and hi == lo):
        raise ValidationError(name, f"need finite lo < hi, got {lo!r}, {hi!r}")
    return np.linspace(lo, hi, int(count))


def scan_complex_n(donor: Molecule, acceptor: Molecule, re_range: tuple[float, float],
                   re_count: int, im_range: tuple[float, float], im_count: int,
                   lfc: LFC | str = LFC.ONSAGER,
                   mode: LimitMode | str = LimitMode.DERIVED_DEFAULT) -> ScanGrid:
    """S limits over a grid of complex refractive indices (mu = 1, eps = n^2)."""
    re_n = _axis(*re_range, re_count, "re_n")
    im_n = _axis(*im_range, im_count, "im_n")
    if im_n[0] < 0:
        raise ValidationError("im_n", "passive media need Im(n) >= 0")
    mode = LimitMode(mode)
    near, far = kernels.limit_grid(re_n, im_n, LFC(lfc) is LFC.ONSAGER,
                                   acceptor.d_e, acceptor.d_m, donor.d_e, donor.d_m,
                                   mode is LimitMode.PAPER_PRINTED)
    rr = rotatory_over_c(donor) * rotatory_over_c(acceptor)
    return ScanGrid(re_n, im_n, rr * np.asarray(near), rr * np.asarray(far), mode)


_INV_PHI = (math.sqrt(5) - 1) / 2


def golden_section_max(f, a: float, b: float, rtol: float = 1e-6, max_iter: int = 200):
    """Maximise a unimodal ``f`` on [a, b]; returns (x, f(x))."""
    x1 = b - _INV_PHI * (b - a)
    x2 = a + _INV_PHI * (b - a)
    f1, f2 = f(x1), f(x2)
    for _ in range(max_iter):
        if abs(b - a) <= rtol * 0.5 * (abs(a) + abs(b)):
            break
        if f1 < f2:
            a, x1, f1 = x1, x2, f2
            x2 = a + _INV_PHI * (b - a)
            f2 = f(x2)
        else:
            b, x2, f2 = x2, x1, f1
            x1 = b - _INV_PHI * (b - a)
            f1 = f(x1)
    x = 0.5 * (a + b)
    return x, f(x)


def _real_n_objective(donor, acceptor, target: Target, lfc: LFC, mode: LimitMode):
    def s_of(n: float) -> float:
        med = Medium.from_index(n)
        if lfc is LFC.ONSAGER:
            ce, cm = (complex(x) for x in lfc_factors(med))
        else:
            ce = cm = 1 + 0j
        near, far = _limits(complex(n), ce, cm, donor, acceptor, mode)
        return near if target is Target.NEAR else far
    return s_of


def optimize_real_n(donor: Molecule, acceptor: Molecule, branch: Branch | str,
                    target: Target | str = Target.FAR, lfc: LFC | str = LFC.ONSAGER,
                    mode: LimitMode | str = LimitMode.DERIVED_DEFAULT,
                    points_per_decade: int = 64, rtol: float = 1e-6) -> tuple[float, float]:
    """Real refractive index maximising |S| on one side of n = 1.

    Log grid over [1e-3, 1e3] for bracketing, then golden-section refinement.
    Returns ``(n_star, S(n_star))``.
    """
    branch, target, lfc, mode = Branch(branch), Target(target), LFC(lfc), LimitMode(mode)
    s_of = _real_n_objective(donor, acceptor, target, lfc, mode)
    grid = np.logspace(-3, 3, 6 * points_per_decade + 1)
    grid = grid[grid < 1] if branch is Branch.SUB_UNITY else grid[grid > 1]
    vals = np.array([abs(s_of(n)) for n in grid])
    i = int(np.argmax(vals))
    if not np.isfinite(vals[i]) or vals[i] == 0:
        raise FlatLandscapeError("|S| vanishes on the whole branch")
    if i == 0 or i == len(grid) - 1:
        raise FlatLandscapeError(f"no interior maximum on branch {branch.value}")
    n_star, _ = golden_section_max(lambda n: abs(s_of(n)), grid[i - 1], grid[i + 1], rtol)
    return float(n_star), float(s_of(n_star))


@dataclass(frozen=True)
class MediaRow:
    name: str
    n: complex
    s_near: float
    s_far: float


def media_table(donor: Molecule, acceptor: Molecule, media=TABLE_I_MEDIA,
                lfc: LFC | str = LFC.ONSAGER) -> list[MediaRow]:
    rows = []
    for name, n in media:
        cfg = TransferConfig(donor, acceptor, 1.0, Medium.from_index(n), lfc)
        lim = s_limits(cfg, LimitMode.DERIVED_DEFAULT)
        rows.append(MediaRow(name, complex(n), lim.s_near, lim.s_far))
    return rows


def format_table(rows) -> str:
    lines = [f"{'medium':>10}  {'n':>22}  {'S(r->0)':>9}  {'S(r->inf)':>9}"]
    for row in rows:
        n = f"{row.n.real:g}{row.n.imag:+g}i"
        lines.append(f"{row.name:>10}  {n:>22}  {100 * row.s_near:8.2f}%  {100 * row.s_far:8.2f}%")
    return "\n".join(lines)
