"""Drift matrices, analytic stability criteria and the eigenvalue oracle.

The linearized quadrature dynamics are du/dt = A u + noise. Analytic
sign conditions on the characteristic polynomial give closed-form stability
boundaries; the authoritative verdict is always the spectral abscissa of A,
with the analytic criteria property-tested against it.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, replace

import numpy as np

from .params import SystemParams

SQRT3 = math.sqrt(3.0)

STABLE = "stable"
UNSTABLE = "unstable"
MARGINAL = "marginal"

# Spectral abscissae inside this band are reported as marginal: strict
# Routh-Hurwitz inequalities do not classify the boundary.
MARGIN = 1e-9


def drift_matrix_qc(p: SystemParams) -> np.ndarray:
    """4x4 drift matrix over (Q, P, X_c, Y_c) for the cooled mechanics alone."""
    return np.array(
        [
            [0.0, p.omega_m, 0.0, 0.0],
            [-p.omega_m, -p.gamma_m, 2.0 * p.g_c, 0.0],
            [0.0, 0.0, -p.kappa_c / 2.0, -p.delta_c],
            [2.0 * p.g_c, 0.0, p.delta_c, -p.kappa_c / 2.0],
        ]
    )


def drift_matrix_full(p: SystemParams) -> np.ndarray:
    """6x6 drift matrix over (Q, P, X_c, Y_c, X_a, Y_a) with the probe coupled."""
    return np.array(
        [
            [0.0, p.omega_m, 0.0, 0.0, 0.0, 0.0],
            [-p.omega_m, -p.gamma_m, 2.0 * p.g_c, 0.0, 2.0 * p.g_a, 0.0],
            [0.0, 0.0, -p.kappa_c / 2.0, -p.delta_c, 0.0, 0.0],
            [2.0 * p.g_c, 0.0, p.delta_c, -p.kappa_c / 2.0, 0.0, 0.0],
            [0.0, 0.0, 0.0, 0.0, 0.0, -p.delta_a],
            [2.0 * p.g_a, 0.0, 0.0, 0.0, p.delta_a, 0.0],
        ]
    )


def routh_hurwitz_qc(p: SystemParams) -> tuple[float, bool]:
    """Analytic criterion for the 4x4 system at red detuning.

    Returns (value, stable) with value = 4 g_c^2 delta_c + r2 * omega_m;
    the system is stable iff the value is positive. The zero of the value
    in g_c coincides with g_c_max.
    """
    if p.delta_c >= 0:
        raise ValueError("criterion applies to red detuning (delta_c < 0)")
    value = 4.0 * p.g_c**2 * p.delta_c + (p.delta_c**2 + p.kappa_c**2 / 4.0) * p.omega_m
    return value, value > 0


def at_optimal_detuning(p: SystemParams, rtol: float = 1e-9) -> bool:
    """True when 4*delta_c^2 = 3*kappa_c^2 within rtol (red branch)."""
    return (
        p.delta_c < 0
        and abs(4.0 * p.delta_c**2 - 3.0 * p.kappa_c**2) <= rtol * 3.0 * p.kappa_c**2
    )


def full_criteria(p: SystemParams) -> tuple[float, float, float, bool]:
    """Analytic criteria (s1, s2, s3, verdict) for the 6x6 system.

    Valid at optimal detuning with gamma_m treated as zero:
        s1 = omega_m kappa_c - 2 sqrt(3) g_c^2 > 0,
        s2 = -delta_a > 0,
        s3 = 2 sqrt(3) delta_a g_c^2 - 4 g_a^2 kappa_c - delta_a kappa_c omega_m > 0.
    Together they bound omega_m kappa_c > 2 sqrt(3) g_c^2 + 4 g_a^2 kappa_c/|delta_a|.
    """
    if not at_optimal_detuning(p):
        raise ValueError("analytic criteria require optimal detuning 4*delta_c^2 = 3*kappa_c^2")
    s1 = p.omega_m * p.kappa_c - 2.0 * SQRT3 * p.g_c**2
    s2 = -p.delta_a
    s3 = (
        2.0 * SQRT3 * p.delta_a * p.g_c**2
        - 4.0 * p.g_a**2 * p.kappa_c
        - p.delta_a * p.kappa_c * p.omega_m
    )
    return s1, s2, s3, (s1 > 0 and s2 > 0 and s3 > 0)


def eigen_stable(m: np.ndarray) -> tuple[float, str]:
    """Spectral abscissa of a real drift matrix and the three-way verdict."""
    m = np.asarray(m, dtype=float)
    if not np.all(np.isfinite(m)):
        raise ValueError("drift matrix must be finite")
    eigs = np.linalg.eigvals(m)
    if not np.all(np.isfinite(eigs)):
        raise ArithmeticError("eigenvalue solver failed to converge")
    abscissa = float(np.max(eigs.real))
    if abs(abscissa) < MARGIN:
        return abscissa, MARGINAL
    return abscissa, STABLE if abscissa < 0 else UNSTABLE


@dataclass
class StabilityReport:
    """Analytic criterion values next to the eigenvalue verdict."""

    s1: float | None
    s2: float | None
    s3: float | None
    rh_value: float | None
    rh_stable: bool | None
    eig_stable: str
    spectral_abscissa: float
    eigenvalues: np.ndarray


def stability_report(p: SystemParams, *, full: bool = True) -> StabilityReport:
    """Evaluate every applicable criterion plus the eigenvalue oracle.

    Analytic fields are None where their validity conditions fail
    (off-optimal detuning for s1..s3, blue detuning for the 4x4 criterion).
    """
    m = drift_matrix_full(p) if full else drift_matrix_qc(p)
    abscissa, verdict = eigen_stable(m)
    s1 = s2 = s3 = None
    if at_optimal_detuning(p):
        s1, s2, s3, _ = full_criteria(p)
    rh_value = rh_ok = None
    if p.delta_c < 0:
        rh_value, rh_ok = routh_hurwitz_qc(p)
    return StabilityReport(
        s1=s1,
        s2=s2,
        s3=s3,
        rh_value=rh_value,
        rh_stable=rh_ok,
        eig_stable=verdict,
        spectral_abscissa=abscissa,
        eigenvalues=np.linalg.eigvals(np.asarray(m, dtype=float)),
    )


_SWEEPABLE = ("g_c", "g_a", "delta_a", "delta_c", "kappa_c", "gamma_m")


@dataclass
class StabilityMap:
    """Raster of verdicts over a 2-d parameter grid."""

    var1: str
    values1: np.ndarray
    var2: str
    values2: np.ndarray
    s1: np.ndarray
    s2: np.ndarray
    s3: np.ndarray
    abscissa: np.ndarray
    analytic: np.ndarray  # object array of bool or None
    eigen: np.ndarray     # verdict strings
    disagree: np.ndarray  # bool; only set where the analytic form applies

    COLUMNS_TAIL = ("s1", "s2", "s3", "abscissa", "analytic", "eigen", "disagree")

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow((self.var1, self.var2) + self.COLUMNS_TAIL)
        for i, v1 in enumerate(self.values1):
            for k, v2 in enumerate(self.values2):
                ana = self.analytic[i, k]
                writer.writerow(
                    [
                        f"{v1:.12e}",
                        f"{v2:.12e}",
                        _fmt(self.s1[i, k]),
                        _fmt(self.s2[i, k]),
                        _fmt(self.s3[i, k]),
                        f"{self.abscissa[i, k]:.12e}",
                        "" if ana is None else str(bool(ana)).lower(),
                        self.eigen[i, k],
                        str(bool(self.disagree[i, k])).lower(),
                    ]
                )
        return buf.getvalue()

    def to_json(self) -> str:
        return json.dumps(
            {
                "var1": self.var1,
                "values1": [float(x) for x in self.values1],
                "var2": self.var2,
                "values2": [float(x) for x in self.values2],
                "s1": _jsonable(self.s1),
                "s2": _jsonable(self.s2),
                "s3": _jsonable(self.s3),
                "abscissa": [[float(x) for x in row] for row in self.abscissa],
                "analytic": [
                    [None if a is None else bool(a) for a in row] for row in self.analytic
                ],
                "eigen": [list(row) for row in self.eigen],
                "disagree": [[bool(x) for x in row] for row in self.disagree],
            },
            indent=1,
        )


def _fmt(x) -> str:
    return "" if x is None or (isinstance(x, float) and math.isnan(x)) else f"{x:.12e}"


def _jsonable(a):
    return [[None if (isinstance(x, float) and math.isnan(x)) else float(x) for x in row]
            for row in a]


def stability_map(p: SystemParams, var1: str, values1, var2: str, values2) -> StabilityMap:
    """Sweep two parameters, recording analytic and eigenvalue verdicts per cell.

    The eigenvalue verdict uses the 6x6 matrix when the cell has g_a > 0 and
    the 4x4 matrix otherwise (a decoupled probe contributes an undamped
    rotation that would mask the bath engine's own stability). The
    disagreement mask is set only where the analytic form applies (optimal
    detuning, gamma_m = 0) and the abscissa is outside the marginal band.
    """
    for v in (var1, var2):
        if v not in _SWEEPABLE:
            raise ValueError(f"cannot sweep {v!r}; choose from {_SWEEPABLE}")
    values1 = np.asarray(values1, dtype=float)
    values2 = np.asarray(values2, dtype=float)
    if len(values1) == 0 or len(values2) == 0:
        raise ValueError("sweep grids must be non-empty")

    n1, n2 = len(values1), len(values2)
    s1 = np.full((n1, n2), np.nan)
    s2 = np.full((n1, n2), np.nan)
    s3 = np.full((n1, n2), np.nan)
    abscissa = np.empty((n1, n2))
    analytic = np.empty((n1, n2), dtype=object)
    eigen = np.empty((n1, n2), dtype=object)
    disagree = np.zeros((n1, n2), dtype=bool)

    for i, v1 in enumerate(values1):
        for k, v2 in enumerate(values2):
            cell = replace(p, **{var1: float(v1), var2: float(v2)})
            m = drift_matrix_full(cell) if cell.g_a > 0 else drift_matrix_qc(cell)
            a, verdict = eigen_stable(m)
            abscissa[i, k] = a
            eigen[i, k] = verdict
            if at_optimal_detuning(cell) and cell.gamma_m == 0.0:
                c1, c2, c3, ok = full_criteria(cell)
                s1[i, k], s2[i, k], s3[i, k] = c1, c2, c3
                analytic[i, k] = ok
                if verdict != MARGINAL:
                    disagree[i, k] = ok != (verdict == STABLE)
            else:
                analytic[i, k] = None
    return StabilityMap(
        var1=var1, values1=values1, var2=var2, values2=values2,
        s1=s1, s2=s2, s3=s3, abscissa=abscissa,
        analytic=analytic, eigen=eigen, disagree=disagree,
    )
