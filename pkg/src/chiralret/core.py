"""Domain types, physical constants and derived molecular/medium quantities.

All quantities are SI. The magnetic transition dipole is stored in its dual
form ``|m|/c`` so that it carries the same unit (C m) as the electric one.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass, field

import scipy.constants as _sc


class ValidationError(ValueError):
    """Raised when an input violates a documented range or invariant."""

    def __init__(self, field_name: str, message: str):
        self.field = field_name
        super().__init__(f"{field_name}: {message}")


class DegenerateInputError(ValueError):
    """The non-discriminatory rate vanishes, so S is undefined."""


class Handedness(str, enum.Enum):
    LEFT = "left"
    RIGHT = "right"

    @property
    def sign(self) -> int:
        return 1 if self is Handedness.LEFT else -1

    def flipped(self) -> "Handedness":
        return Handedness.RIGHT if self is Handedness.LEFT else Handedness.LEFT


class LFC(str, enum.Enum):
    OFF = "off"
    ONSAGER = "onsager"


class Variant(str, enum.Enum):
    PRODUCT_CONSISTENT = "product_consistent"
    AS_PRINTED = "as_printed"


@dataclass(frozen=True)
class Constants:
    c: float
    eps0: float
    mu0: float
    hbar: float

    def __post_init__(self):
        for name in ("c", "eps0", "mu0", "hbar"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v > 0):
                raise ValidationError(name, f"must be finite and > 0, got {v!r}")
        if abs(self.mu0 * self.eps0 * self.c**2 - 1.0) > 1e-12:
            raise ValidationError("eps0", "mu0 * eps0 * c**2 must equal 1")

    @classmethod
    def from_c_mu0(cls, c: float, mu0: float, hbar: float) -> "Constants":
        return cls(c=c, eps0=1.0 / (mu0 * c * c), mu0=mu0, hbar=hbar)


# eps0 is derived from mu0 and c; the tabulated CODATA eps0 misses the
# identity mu0*eps0*c^2 = 1 by ~1e-12.
CODATA = Constants.from_c_mu0(_sc.c, _sc.mu_0, _sc.hbar)


@dataclass(frozen=True)
class Molecule:
    name: str
    d_e: float
    d_m: float
    cos_theta: float
    handedness: Handedness
    omega0: float

    def __post_init__(self):
        object.__setattr__(self, "handedness", _coerce_handedness(self.handedness))
        for name in ("d_e", "d_m"):
            v = getattr(self, name)
            if not (isinstance(v, (int, float)) and math.isfinite(v) and v >= 0):
                raise ValidationError(name, f"must be a finite number >= 0, got {v!r}")
        if not (isinstance(self.cos_theta, (int, float)) and abs(self.cos_theta) <= 1):
            raise ValidationError("cos_theta", f"must lie in [-1, 1], got {self.cos_theta!r}")
        if not (isinstance(self.omega0, (int, float)) and math.isfinite(self.omega0)
                and self.omega0 > 0):
            raise ValidationError("omega0", f"must be finite and > 0, got {self.omega0!r}")

    def enantiomer(self) -> "Molecule":
        """The mirror-image molecule (opposite handedness, same magnitudes)."""
        return Molecule(self.name, self.d_e, self.d_m, self.cos_theta,
                        self.handedness.flipped(), self.omega0)


def _coerce_handedness(h) -> Handedness:
    try:
        return Handedness(h)
    except ValueError:
        raise ValidationError("handedness", f"must be 'left' or 'right', got {h!r}") from None


def make_molecule(name: str, d_e: float, d_m: float, cos_theta: float,
                  handedness: Handedness | str, omega0: float) -> Molecule:
    return Molecule(name, d_e, d_m, cos_theta, handedness, omega0)


def rotatory_over_c(m: Molecule) -> float:
    """Signed rotatory strength divided by c, in C^2 m^2."""
    return m.handedness.sign * m.cos_theta * m.d_e * m.d_m


@dataclass(frozen=True)
class Medium:
    eps: complex = 1.0
    mu: complex = 1.0

    def __post_init__(self):
        object.__setattr__(self, "eps", complex(self.eps))
        object.__setattr__(self, "mu", complex(self.mu))
        for name in ("eps", "mu"):
            v = getattr(self, name)
            if not cmath.isfinite(v):
                raise ValidationError(name, f"must be finite, got {v!r}")
            if v.imag < 0:
                raise ValidationError(name, f"passive media need Im >= 0, got {v!r}")

    @classmethod
    def from_index(cls, n: complex) -> "Medium":
        """Non-magnetic medium (mu = 1) with refractive index ``n``."""
        n = complex(n)
        if n.imag < 0:
            raise ValidationError("n", f"passive media need Im(n) >= 0, got {n!r}")
        return cls(eps=n * n, mu=1.0)

    @property
    def is_vacuum(self) -> bool:
        return self.eps == 1 and self.mu == 1


VACUUM = Medium()


def refractive_index(med: Medium) -> complex:
    """sqrt(eps*mu) on the branch Im(n) >= 0 (Re(n) > 0 when n is real)."""
    n = cmath.sqrt(med.eps * med.mu)
    if n.imag < 0 or (n.imag == 0 and n.real < 0):
        n = -n
    # cmath returns -0j for some inputs; normalise for clean output
    return complex(n.real, abs(n.imag) if n.imag == 0 else n.imag)


@dataclass(frozen=True)
class TransferConfig:
    donor: Molecule
    acceptor: Molecule
    r: float
    medium: Medium = VACUUM
    lfc: LFC = LFC.OFF
    variant: Variant = Variant.PRODUCT_CONSISTENT
    constants: Constants = field(default=CODATA)

    def __post_init__(self):
        object.__setattr__(self, "lfc", LFC(self.lfc))
        object.__setattr__(self, "variant", Variant(self.variant))
        if self.donor.omega0 != self.acceptor.omega0:
            raise ValidationError(
                "omega0", "donor and acceptor transition frequencies must be equal")
        if not (math.isfinite(self.r) and self.r > 0):
            raise ValidationError("r", f"separation must be finite and > 0, got {self.r!r}")

    @property
    def omega(self) -> float:
        return self.donor.omega0

    @property
    def k0(self) -> float:
        return self.omega / self.constants.c

    def replace(self, **changes) -> "TransferConfig":
        from dataclasses import replace
        return replace(self, **changes)


@dataclass(frozen=True)
class RateBreakdown:
    """Rates divided by the density of final states, in s^-2."""

    gamma_nd: float
    gamma_disc: float
    gamma_L: float
    gamma_R: float
    S: float

    @classmethod
    def from_gammas(cls, gamma_nd: float, gamma_disc: float) -> "RateBreakdown":
        if not gamma_nd > 0:
            raise DegenerateInputError(
                "gamma_nd vanishes; a molecule has d_e = d_m = 0")
        return cls(gamma_nd, gamma_disc, gamma_nd + abs(gamma_disc),
                   gamma_nd - abs(gamma_disc), gamma_disc / gamma_nd)


# 3-methylcyclopentanone reference transition
MCP3 = Molecule("3MCP", d_e=2.44e-31, d_m=3.31e-32, cos_theta=0.98,
                handedness=Handedness.LEFT, omega0=6.44e15)
