import math
from dataclasses import replace

import pytest

from optobath import SystemParams

SQRT3 = math.sqrt(3.0)


@pytest.fixture
def fig1():
    """Laser-cooled working point used by the figure presets."""
    return SystemParams(
        omega_m=1.0, gamma_m=1e-6, kappa_c=2.0 / SQRT3, kappa_a=0.0,
        delta_a=-1.0, delta_c=-1.0, g_a=0.45, g_c=0.45, beta=1e-4, cutoff=1e3,
    )


@pytest.fixture
def fig1_bare(fig1):
    """Same mechanics with the cooling drive off."""
    return replace(fig1, g_c=0.0)


@pytest.fixture
def fig1_cold(fig1):
    """Laser-cooling-dominated limit: thermal contact removed."""
    return replace(fig1, gamma_m=0.0)
