"""Quantum noise spectrum, photon transition rates and equilibrium occupation.

A photonic mode sitting at detuning Omega = -delta_a above the drive
exchanges quanta with the engineered bath at golden-rule rates set by the
two-sided noise spectrum of the mechanical coordinate. Their ratio obeys a
detailed-balance condition at the frequency-dependent bath temperature, so
the drive frequency acts as a chemical potential for the photons.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass

import numpy as np

from .params import SystemParams, q_zpf_squared
from .spectrum import beta_eff, default_grid, j_eff


class NonEquilibriumError(ValueError):
    """No equilibrium occupation exists (gain regime or loss-dominated balance)."""


def _bose(x):
    return 1.0 / np.expm1(x)


def s_qq(omega: float, p: SystemParams) -> float:
    """Two-sided quantum noise spectrum of the mechanical coordinate.

    S(omega > 0) = 2 j_eff(omega) (n_eff + 1)   (emission side),
    S(omega < 0) = 2 j_eff(|omega|) n_eff       (absorption side),
    with n_eff the Bose function at beta_eff(|omega|). The asymmetry of the
    two sides encodes the effective temperature.
    """
    if omega == 0:
        raise ValueError("s_qq requires omega != 0")
    w = abs(omega)
    j = j_eff(w, p)
    n = _bose(w * beta_eff(w, p))
    return 2.0 * j * (n + 1.0) if omega > 0 else 2.0 * j * n


def gamma_rates(omega: float, p: SystemParams) -> tuple[float, float]:
    """Photon emission and absorption coefficients (gamma_plus, gamma_minus).

    gamma_plus = (g_a^2/q_zpf^2) S(-Omega) = 4 g_a^2 omega_m j_eff n_eff,
    gamma_minus = (g_a^2/q_zpf^2) S(+Omega) = 4 g_a^2 omega_m j_eff (n_eff+1);
    their difference is the net thermalization rate 4 g_a^2 omega_m j_eff.
    """
    if omega <= 0:
        raise ValueError("gamma_rates requires Omega > 0")
    pref = p.g_a**2 / q_zpf_squared(p.omega_m)
    return pref * s_qq(-omega, p), pref * s_qq(omega, p)


def fgr_rates(n: int, omega: float, p: SystemParams) -> tuple[float, float]:
    """Golden-rule transition rates from the n-photon state.

    rate(n -> n+1) = (n+1) gamma_plus, rate(n -> n-1) = n gamma_minus.
    """
    if n < 0:
        raise ValueError("photon number must be >= 0")
    gp, gm = gamma_rates(omega, p)
    return (n + 1) * gp, n * gm


def occupation(omega: float, p: SystemParams, *, allow_gain: bool = False) -> float:
    """Equilibrium photon number 1/(exp(Omega*beta_eff(Omega)) - 1).

    In the gain regime (beta_eff <= 0) no equilibrium exists; the raw Bose
    expression is only returned behind ``allow_gain``.
    """
    if omega <= 0:
        raise ValueError("occupation requires Omega > 0")
    be = beta_eff(omega, p)
    if be <= 0 and not allow_gain:
        raise NonEquilibriumError(
            f"beta_eff({omega:g}) = {be:g} <= 0: gain regime, no equilibrium occupation"
        )
    return float(_bose(omega * be))


def occupation_with_loss(omega: float, p: SystemParams) -> float:
    """Steady photon number with cavity loss folded into the balance.

    (n+1)/n = (gamma_minus + kappa_a)/gamma_plus, so
    n = gamma_plus / (gamma_minus + kappa_a - gamma_plus); strictly below
    the lossless occupation for kappa_a > 0, and undefined when loss plus
    absorption cannot beat emission.
    """
    if omega <= 0:
        raise ValueError("occupation_with_loss requires Omega > 0")
    if p.kappa_a == 0.0:
        return occupation(omega, p)
    gp, gm = gamma_rates(omega, p)
    den = gm + p.kappa_a - gp
    if den <= 0:
        raise NonEquilibriumError(
            "gamma_minus + kappa_a <= gamma_plus: no steady occupation"
        )
    return gp / den


@dataclass
class RateTable:
    """Rows of (Omega, gamma_plus, gamma_minus, n_bar, n_bar_lossy)."""

    omega: np.ndarray
    gamma_plus: np.ndarray
    gamma_minus: np.ndarray
    n_bar: np.ndarray
    n_bar_lossy: np.ndarray

    COLUMNS = ("Omega", "gamma_plus", "gamma_minus", "n_bar", "n_bar_lossy")

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(self.COLUMNS)
        for i in range(len(self.omega)):
            writer.writerow(
                [
                    f"{self.omega[i]:.12e}",
                    f"{self.gamma_plus[i]:.12e}",
                    f"{self.gamma_minus[i]:.12e}",
                    f"{self.n_bar[i]:.12e}",
                    f"{self.n_bar_lossy[i]:.12e}",
                ]
            )
        return buf.getvalue()

    def to_json(self) -> str:
        return json.dumps(
            {
                "Omega": [float(x) for x in self.omega],
                "gamma_plus": [float(x) for x in self.gamma_plus],
                "gamma_minus": [float(x) for x in self.gamma_minus],
                "n_bar": [float(x) for x in self.n_bar],
                "n_bar_lossy": [float(x) for x in self.n_bar_lossy],
            },
            indent=1,
        )


def compute_rates(p: SystemParams, grid=None) -> RateTable:
    """Tabulate rates and occupations over an Omega grid.

    Gain-regime or loss-dominated points get NaN occupations rather than
    silently negative ones; the rates themselves are always reported.
    """
    grid = default_grid(p) if grid is None else np.asarray(grid, dtype=float)
    if np.any(grid <= 0):
        raise ValueError("rate grid requires Omega > 0")
    gp = np.empty_like(grid)
    gm = np.empty_like(grid)
    nb = np.full_like(grid, np.nan)
    nbl = np.full_like(grid, np.nan)
    for i, w in enumerate(grid):
        gp[i], gm[i] = gamma_rates(w, p)
        try:
            nb[i] = occupation(w, p)
        except NonEquilibriumError:
            continue
        try:
            nbl[i] = occupation_with_loss(w, p)
        except NonEquilibriumError:
            pass
    return RateTable(omega=grid, gamma_plus=gp, gamma_minus=gm, n_bar=nb, n_bar_lossy=nbl)
