"""Engineered-bath spectral density and frequency-dependent temperature.

The laser-cooled mechanical mode, together with its thermal environment and
the cooling cavity, acts on the photonic system as a single bath described
by a spectral density j_eff(omega) and an inverse temperature beta_eff(omega).
This module evaluates both, their closed-form low-frequency limits, the
laser-cooling-dominated forms, and the coupling threshold g_c_max beyond
which the low-frequency damping changes sign.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field

import numpy as np

from ._quad import spectral_integral
from .params import SystemParams, thermal_occupation
from .response import (
    PoleError,
    chi_q_inv,
    lorentzian,
    lorentzian_asymmetry,
)

FLAG_OK = ""
FLAG_POLE = "pole"
FLAG_NONTHERMAL = "nonthermal"

_POLE_EPS = 1e-300


class DivergenceError(ArithmeticError):
    """A closed-form expression diverges at the supplied parameters."""


def _coupling_weight(p: SystemParams) -> float:
    """pi * hbar * G_c^2 = 2 pi g_c^2 omega_m in natural units."""
    return 2.0 * math.pi * p.g_c**2 * p.omega_m


def _r2(p: SystemParams) -> float:
    return p.delta_c**2 + p.kappa_c**2 / 4.0


def ohmic_j(omega, p: SystemParams):
    """Ohmic mechanical spectral density gamma_m * omega * exp(-omega/cutoff)."""
    if np.any(np.asarray(omega) < 0):
        raise ValueError("ohmic_j requires omega >= 0")
    return p.gamma_m * omega * np.exp(-np.asarray(omega, dtype=float) / p.cutoff)


def j_eff(omega, p: SystemParams):
    """Effective spectral density of the engineered bath.

    j_eff = |chi_q|^2 * { J(omega) + pi hbar G_c^2 (L(omega) - L(-omega)) }.
    Positive everywhere in the stable red-detuned regime; the sideband
    asymmetry supplies the low-frequency support that the bare Ohmic bath,
    gated by the narrow mechanical resonance, lacks.
    """
    if np.any(np.asarray(omega) <= 0):
        raise ValueError("j_eff requires omega > 0")
    inv = chi_q_inv(omega, p)
    if np.any(np.abs(inv) < _POLE_EPS):
        raise PoleError("dressed susceptibility pole inside j_eff")
    mod2 = 1.0 / np.abs(inv) ** 2
    return mod2 * (ohmic_j(omega, p) + _coupling_weight(p) * lorentzian_asymmetry(omega, p))


def beta_eff(omega, p: SystemParams):
    """Frequency-dependent inverse temperature of the engineered bath.

    Defined by the balance of upward and downward bath fluxes,
        exp(omega*beta_eff) = (J*(n+1) + w*L(omega)) / (J*n + w*L(-omega)),
    with n the thermal occupation at the mechanical temperature and
    w = pi hbar G_c^2. Evaluated as log1p of the flux imbalance over the
    downward flux, which stays accurate at omega -> 0. Negative values
    (population inversion, blue-detuned drive) are returned as data.
    """
    if np.any(np.asarray(omega) <= 0):
        raise ValueError("beta_eff requires omega > 0")
    if p.gamma_m == 0.0 and p.g_c == 0.0:
        raise ValueError("no bath: gamma_m = 0 and g_c = 0")
    w = _coupling_weight(p)
    j = ohmic_j(omega, p)
    with np.errstate(over="ignore"):
        nbar = thermal_occupation(omega, p.beta)
    imbalance = j + w * lorentzian_asymmetry(omega, p)
    downward = j * nbar + w * lorentzian(-np.asarray(omega, dtype=float), p)
    return np.log1p(imbalance / downward) / omega


def detailed_balance_coth(omega, p: SystemParams):
    """Right-hand side of the hyperbolic form of the balance condition.

    coth(omega*beta_eff/2) = (J*coth(beta*omega/2) + w*(L+ + L-)) / (J + w*(L+ - L-)).
    Kept as an independent cross-check of beta_eff; the exponential form is
    the production path because inverting coth is ill-conditioned near 0.
    """
    w = _coupling_weight(p)
    j = ohmic_j(omega, p)
    om = np.asarray(omega, dtype=float)
    num = j / np.tanh(p.beta * om / 2.0) + w * (lorentzian(om, p) + lorentzian(-om, p))
    den = j + w * lorentzian_asymmetry(omega, p)
    return num / den


def beta_opt(omega, p: SystemParams):
    """Inverse temperature in the laser-cooling-dominated limit (gamma_m -> 0).

    exp(omega*beta_opt) = ((omega-delta_c)^2 + kappa_c^2/4)
                        / ((omega+delta_c)^2 + kappa_c^2/4);
    independent of g_c and gamma_m.
    """
    if np.any(np.asarray(omega) <= 0):
        raise ValueError("beta_opt requires omega > 0")
    if p.delta_c == 0.0:
        raise ValueError("beta_opt requires delta_c != 0")
    den = (np.asarray(omega, dtype=float) + p.delta_c) ** 2 + p.kappa_c**2 / 4.0
    return np.log1p(-4.0 * np.asarray(omega, dtype=float) * p.delta_c / den) / omega


def beta_opt_expansion(p: SystemParams) -> tuple[float, float]:
    """Constant and omega^2 coefficients of beta_opt around omega = 0.

    beta_opt = -4 delta_c / r2  -  delta_c (4 delta_c^2 - 3 kappa_c^2)
               / (3 r2^3) * omega^2 + O(omega^4),  r2 = delta_c^2 + kappa_c^2/4.
    The omega^2 term vanishes exactly at the optimal detuning
    4 delta_c^2 = 3 kappa_c^2.
    """
    if p.delta_c == 0.0:
        raise ValueError("beta_opt_expansion requires delta_c != 0")
    r2 = _r2(p)
    const = -4.0 * p.delta_c / r2
    quad_coeff = -p.delta_c * (4.0 * p.delta_c**2 - 3.0 * p.kappa_c**2) / (3.0 * r2**3)
    return const, quad_coeff


def _eta_den_core(p: SystemParams) -> float:
    """omega_m*r2 + 4 g_c^2 delta_c, guarding the threshold zero.

    The zero sits exactly at g_c = g_c_max; a relative tolerance absorbs the
    rounding of a threshold value that went through a square root.
    """
    core = p.omega_m * _r2(p) + 4.0 * p.g_c**2 * p.delta_c
    if abs(core) < 1e-12 * p.omega_m * _r2(p):
        raise DivergenceError("low-frequency slope diverges: g_c at threshold")
    return core


def eta_opt(p: SystemParams) -> float:
    """Low-frequency Ohmic slope of j_eff in the laser-cooling-dominated limit.

    eta_opt = -4 g_c^2 delta_c kappa_c
              / (omega_m * (omega_m*r2 + 4 g_c^2 delta_c)^2).
    Diverges at the threshold coupling g_c_max.
    """
    return -4.0 * p.g_c**2 * p.delta_c * p.kappa_c / (p.omega_m * _eta_den_core(p) ** 2)


def eta_eff(p: SystemParams) -> float:
    """Low-frequency Ohmic slope of j_eff including the thermal environment.

    eta_eff = (gamma_m*r2^2 - 4 g_c^2 delta_c kappa_c omega_m)
              / (omega_m^2 * (omega_m*r2 + 4 g_c^2 delta_c)^2),
    exact in gamma_m, reducing to eta_opt at gamma_m = 0. The omega_m^2
    power in the denominator is fixed by requiring j_eff(omega)/omega ->
    eta_eff and the gamma_m -> 0 reduction to hold simultaneously.
    """
    r2 = _r2(p)
    num = p.gamma_m * r2**2 - 4.0 * p.g_c**2 * p.delta_c * p.kappa_c * p.omega_m
    return num / (p.omega_m**2 * _eta_den_core(p) ** 2)


def g_c_max(p: SystemParams) -> float:
    """Cooling-coupling threshold g_c_max = sqrt(omega_m*r2 / (4|delta_c|)).

    Defined for red detuning only; at the optimal detuning it equals
    sqrt(kappa_c*omega_m/(2*sqrt(3))) = kappa_c/2 when omega_m = sqrt(3)kappa_c/2.
    """
    if p.delta_c >= 0:
        raise ValueError("g_c_max is defined for red detuning (delta_c < 0)")
    return math.sqrt(p.omega_m * _r2(p) / (4.0 * abs(p.delta_c)))


def beta_eff_low(p: SystemParams) -> float:
    """Closed-form omega -> 0 limit of beta_eff.

    beta_eff(0) = beta * (gamma_m*r2^2 - 4 g_c^2 delta_c kappa_c omega_m)
                  / (r2 * (gamma_m*r2 + g_c^2 beta kappa_c omega_m)).
    """
    r2 = _r2(p)
    den = r2 * (p.gamma_m * r2 + p.g_c**2 * p.beta * p.kappa_c * p.omega_m)
    if not den > 0:
        raise ValueError("no bath: gamma_m = 0 and g_c = 0")
    num = p.beta * (p.gamma_m * r2**2 - 4.0 * p.g_c**2 * p.delta_c * p.kappa_c * p.omega_m)
    return num / den


def beta_eff_low_expansion(p: SystemParams) -> tuple[float, float]:
    """Zeroth and first order in gamma_m of the low-frequency beta_eff.

    beta_eff(0) ~ -4 delta_c/r2
                  + gamma_m * (4 delta_c + beta*r2) / (g_c^2 beta kappa_c omega_m).
    The first-order coefficient is negative for a hot mechanical bath
    (beta*r2 < 4|delta_c|), so thermal contact raises the effective
    temperature; the sign flips only when beta*r2 > 4|delta_c|.
    """
    if not (p.g_c > 0 and p.beta > 0):
        raise ValueError("expansion requires g_c > 0 and beta > 0")
    r2 = _r2(p)
    zeroth = -4.0 * p.delta_c / r2
    first = (4.0 * p.delta_c + p.beta * r2) / (p.g_c**2 * p.beta * p.kappa_c * p.omega_m)
    return zeroth, first


def damping_kernel(t: float, p: SystemParams, *, upper: float | None = None,
                   epsabs: float = 1e-10, epsrel: float = 1e-8) -> float:
    """Time-domain damping kernel of the engineered bath.

    gamma_eff(t) = Theta(t) * (2/pi) * integral_0^inf (j_eff/omega) cos(omega t).
    In the low-frequency Ohmic regime the kernel is a near-delta whose
    running integral approaches eta_eff.
    """
    if t < 0:
        return 0.0
    f = lambda w: (2.0 / math.pi) * j_eff(w, p) / w
    return spectral_integral(f, p, t=t, kind="cos" if t > 0 else "plain",
                             upper=upper, epsabs=epsabs, epsrel=epsrel)


def default_grid(p: SystemParams, n: int = 400, lo: float = 1e-4, hi: float = 4.0):
    """Logarithmic frequency grid resolving both the Ohmic limit and the resonance."""
    return np.logspace(math.log10(lo * p.omega_m), math.log10(hi * p.omega_m), n)


@dataclass
class BathSpectrum:
    """Paired (j_eff, beta_eff) samples over an ascending positive grid."""

    grid: np.ndarray
    j_eff: np.ndarray
    beta_eff: np.ndarray
    flags: list[str] = field(default_factory=list)

    COLUMNS = ("omega", "j_eff", "beta_eff", "t_eff", "flags")

    def t_eff(self) -> np.ndarray:
        """Effective temperature 1/beta_eff per grid point (may be negative)."""
        with np.errstate(divide="ignore"):
            return 1.0 / self.beta_eff

    def rows(self):
        t = self.t_eff()
        for i, w in enumerate(self.grid):
            yield (w, self.j_eff[i], self.beta_eff[i], t[i], self.flags[i])

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(self.COLUMNS)
        for w, j, b, t, flag in self.rows():
            writer.writerow([f"{w:.12e}", f"{j:.12e}", f"{b:.12e}", f"{t:.12e}", flag])
        return buf.getvalue()

    def to_json(self) -> str:
        return json.dumps(
            {
                "omega": [float(x) for x in self.grid],
                "j_eff": [float(x) for x in self.j_eff],
                "beta_eff": [float(x) for x in self.beta_eff],
                "t_eff": [float(x) for x in self.t_eff()],
                "flags": list(self.flags),
            },
            indent=1,
        )


def compute_spectrum(p: SystemParams, grid=None) -> BathSpectrum:
    """Evaluate (j_eff, beta_eff) over a grid, flagging poles and gain points.

    Grid points where the dressed response is singular are flagged "pole"
    and carry NaN; points with beta_eff <= 0 are flagged "nonthermal" but
    keep their values so blue-detuned sweeps still render.
    """
    if p.gamma_m == 0.0 and p.g_c == 0.0:
        raise ValueError("parameters define no bath: need gamma_m > 0 or g_c > 0")
    grid = default_grid(p) if grid is None else np.asarray(grid, dtype=float)
    if grid.ndim != 1 or len(grid) == 0:
        raise ValueError("grid must be a non-empty 1-d array")
    if np.any(grid <= 0) or np.any(np.diff(grid) <= 0):
        raise ValueError("grid must be strictly ascending and positive")

    inv = chi_q_inv(grid, p)
    pole = np.abs(inv) < _POLE_EPS
    j = np.full_like(grid, np.nan)
    b = np.full_like(grid, np.nan)
    ok = ~pole
    if np.any(ok):
        mod2 = 1.0 / np.abs(inv[ok]) ** 2
        j[ok] = mod2 * (
            ohmic_j(grid[ok], p) + _coupling_weight(p) * lorentzian_asymmetry(grid[ok], p)
        )
        b[ok] = beta_eff(grid[ok], p)
    flags = [
        FLAG_POLE if pole[i] else (FLAG_NONTHERMAL if b[i] <= 0 else FLAG_OK)
        for i in range(len(grid))
    ]
    return BathSpectrum(grid=grid, j_eff=j, beta_eff=b, flags=flags)
