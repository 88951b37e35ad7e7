"""Oscillator configuration and Snyder-de Sitter deformation parameters.

The two deformation parameters are a momentum-space one (``alpha1``, units of
inverse momentum squared) and a position-space one (``alpha2``, which bounds
the momentum domain at 1/sqrt(alpha2)).  Everything downstream depends on two
scalar combinations of them: ``k_squared = hbar^2 (alpha1 + m^2 w^2 alpha2)``
and ``theta = (alpha1 / m^2 w^2 + alpha2) / c^2``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .errors import ParameterDomainError, UnitSystemError

# CODATA 2018 values, SI
SPEED_OF_LIGHT = 299792458.0          # m s^-1
HBAR = 1.054571817e-34                # J s
BOLTZMANN = 1.380649e-23              # J K^-1
ELECTRON_MASS = 9.1093837015e-31      # kg
ELEMENTARY_CHARGE = 1.602176634e-19   # C

NATURAL = "natural"
SI = "si"


@dataclass(frozen=True)
class OscillatorConfig:
    """Physical constants of the oscillator plus the spatial dimension.

    ``natural()`` gives the hbar = c = m = omega = 1 convention used for all
    dimensionless tables and figures; ``si()`` fills c and hbar with CODATA
    values.  Operations never consult global state, so unit handling is
    always visible at the call site.
    """

    m: float
    omega: float
    c: float
    hbar: float
    dim: int = 1
    units: str = NATURAL

    def __post_init__(self):
        if min(self.m, self.omega, self.c, self.hbar) <= 0:
            raise ParameterDomainError("m, omega, c and hbar must all be positive")
        if int(self.dim) != self.dim or self.dim < 1:
            raise ParameterDomainError(f"dim must be a positive integer, got {self.dim!r}")
        if self.units not in (NATURAL, SI):
            raise ParameterDomainError(f"unknown unit system {self.units!r}")

    @classmethod
    def natural(cls, dim: int = 1) -> "OscillatorConfig":
        return cls(m=1.0, omega=1.0, c=1.0, hbar=1.0, dim=dim, units=NATURAL)

    @classmethod
    def si(cls, m: float, omega: float, dim: int = 1) -> "OscillatorConfig":
        return cls(m=m, omega=omega, c=SPEED_OF_LIGHT, hbar=HBAR, dim=dim, units=SI)

    @property
    def mc2(self) -> float:
        """Rest energy m c^2."""
        return self.m * self.c * self.c


@dataclass(frozen=True)
class DeformationParams:
    """Deformation inputs plus the derived scalar constants.

    ``lam`` (the representation-mixing constant, = alpha1/(m^2 w^2 alpha2 + alpha1))
    and ``gamma_abs_squared`` are only intermediate quantities; both are None
    when they are singular (lam at alpha1 = alpha2 = 0, gamma_abs_squared at
    alpha1 = 0).  All downstream formulas use only ``k_squared`` and ``theta``,
    which are defined for every nonnegative pair.
    """

    alpha1: float
    alpha2: float
    k_squared: float
    theta: float
    lam: Optional[float]
    gamma_abs_squared: Optional[float]

    @property
    def deformed(self) -> bool:
        return self.k_squared > 0.0


def derive_params(alpha1: float, alpha2: float, cfg: OscillatorConfig) -> DeformationParams:
    """Build the derived deformation constants for (alpha1, alpha2).

    k_squared = hbar^2 (alpha1 + m^2 w^2 alpha2) is computed directly so it is
    valid at alpha1 = 0; the gamma route exists only as a cross-check identity.
    """
    if alpha1 < 0 or alpha2 < 0:
        raise ParameterDomainError(
            f"deformation parameters must be nonnegative, got ({alpha1}, {alpha2})"
        )
    mw2 = (cfg.m * cfg.omega) ** 2
    k_squared = cfg.hbar**2 * (alpha1 + mw2 * alpha2)
    theta = (alpha1 / mw2 + alpha2) / cfg.c**2
    if alpha1 > 0:
        gamma_abs_squared: Optional[float] = 1.0 + mw2 * alpha2 / alpha1
        lam: Optional[float] = alpha1 / (mw2 * alpha2 + alpha1)
    elif alpha2 > 0:
        gamma_abs_squared = None
        lam = 0.0
    else:
        gamma_abs_squared = None
        lam = None
    return DeformationParams(
        alpha1=float(alpha1),
        alpha2=float(alpha2),
        k_squared=k_squared,
        theta=theta,
        lam=lam,
        gamma_abs_squared=gamma_abs_squared,
    )


def min_uncertainties(params: DeformationParams, cfg: OscillatorConfig) -> tuple[float, float]:
    """Minimal position and momentum uncertainties (hbar sqrt(alpha2), hbar sqrt(alpha1))."""
    return cfg.hbar * math.sqrt(params.alpha2), cfg.hbar * math.sqrt(params.alpha1)


# Published upper bounds from the electron Penning-trap analysis at B = 6 T,
# n = 1e10 (theta in units of c^-2 kg^-2 m^-2 s^2).
PUBLISHED_THETA_BOUND = 1e33
PUBLISHED_DELTA_X_BOUND = 3.33e-18   # m
PUBLISHED_DELTA_P_BOUND = 3.17e-36   # kg m s^-1


@dataclass(frozen=True)
class PenningTrapBounds:
    """Experimental upper bounds on the deformation from cyclotron levels.

    ``theta_exact`` is the raw inversion of the first-order level shift;
    ``theta_bound`` is that value quoted to one significant figure, the usual
    convention for an order-of-magnitude experimental bound, and the single-
    parameter bounds ``delta_x_bound``/``delta_p_bound`` are derived from the
    quoted value.  Both theta values are expressed in c^-2 kg^-2 m^-2 s^2.
    """

    b_field: float
    n_level: int
    theta_exact: float
    theta_bound: float
    delta_x_bound: float
    delta_p_bound: float
    scaling_exponent: float


def _theta_bound_si(b_field: float, n_level: float) -> float:
    """Invert the first-order shift condition delta_E_n < hbar w_c; SI, 1/J^2."""
    omega_c = ELEMENTARY_CHARGE * b_field / ELECTRON_MASS
    hw = HBAR * omega_c
    mc2 = ELECTRON_MASS * SPEED_OF_LIGHT**2
    root = math.sqrt(1.0 + 2.0 * hw * n_level / mc2)
    return 2.0 * root / (hw * mc2 * n_level**2)


def _round_one_sig(x: float) -> float:
    e = math.floor(math.log10(abs(x)))
    return round(x / 10.0**e) * 10.0**e


def deformation_bounds(cfg: OscillatorConfig, b_field: float, n_level: int) -> PenningTrapBounds:
    """Upper bounds on theta and the minimal uncertainties from a Penning trap.

    The electron's n-th cyclotron level is taken as unperturbed when the
    first-order deformation shift stays below one cyclotron quantum, which
    bounds theta; the two single-parameter bounds follow with alpha1 = 0
    (position branch) and alpha2 = 0 (momentum branch).  Dimensional, so the
    configuration must be SI.
    """
    if cfg.units != SI:
        raise UnitSystemError("deformation bounds are dimensional; use an SI configuration")
    if b_field <= 0:
        raise ParameterDomainError("magnetic field strength must be positive")
    if int(n_level) != n_level or n_level < 1:
        raise ParameterDomainError("n_level must be a positive integer")

    theta_si = _theta_bound_si(b_field, n_level)
    theta_exact = theta_si * SPEED_OF_LIGHT**2      # in c^-2 kg^-2 m^-2 s^2
    theta_bound = _round_one_sig(theta_exact)
    # alpha1 = 0: theta = alpha2 / c^2  ->  alpha2 = theta_bound (c^-2 units)
    delta_x = HBAR * math.sqrt(theta_bound)
    # alpha2 = 0: theta = alpha1 / (m^2 w^2 c^2)  ->  alpha1 = theta_bound (m w)^2,
    # and m_e w_c = e B.
    delta_p = HBAR * math.sqrt(theta_bound) * ELEMENTARY_CHARGE * b_field
    # local log-log slope of the exact bound in B
    lo, hi = _theta_bound_si(0.99 * b_field, n_level), _theta_bound_si(1.01 * b_field, n_level)
    slope = (math.log(hi) - math.log(lo)) / (math.log(1.01) - math.log(0.99))
    return PenningTrapBounds(
        b_field=b_field,
        n_level=int(n_level),
        theta_exact=theta_exact,
        theta_bound=theta_bound,
        delta_x_bound=delta_x,
        delta_p_bound=delta_p,
        scaling_exponent=slope,
    )
