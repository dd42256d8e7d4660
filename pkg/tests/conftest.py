"""Shared scenario fixtures.

The cylinder histories are expensive (implicit per-step pressure solve), so
they are built once per session; everything downstream treats them as
read-only.
"""

import numpy as np
import pytest

from accrete import cylinder, sphere
from accrete.kinematics import MaterialModel
from accrete.rates import RateFunction


@pytest.fixture
def rng():
    return np.random.default_rng(20260815)


@pytest.fixture(scope="session")
def neo():
    return MaterialModel.neo_hookean(1.0)


@pytest.fixture(scope="session")
def sphere_basic(neo):
    # unit inner radius, unit deposition speed, nothing pre-existing
    return sphere.SphereScenario(
        inner_radius=1.0,
        accretion_speed=RateFunction.constant(1.0),
        material=neo,
    )


@pytest.fixture(scope="session")
def sphere_with_body(neo):
    return sphere.SphereScenario(
        inner_radius=1.0,
        accretion_speed=RateFunction.constant(1.0),
        material=neo,
        initial_body=sphere.InitialBody(outer_radius=1.5),
    )


@pytest.fixture(scope="session")
def sphere_ablating(neo):
    return sphere.SphereScenario(
        inner_radius=1.0,
        accretion_speed=RateFunction.constant(1.0),
        material=neo,
        ablation_speed=RateFunction.table([0.0, 0.5, 1.0], [0.0, 0.2, 0.4]),
    )


@pytest.fixture(scope="session")
def cyl_scenario(neo):
    return cylinder.CylinderScenario(
        inner_radius=1.0,
        outer_radius=1.3,
        growth_speed=RateFunction.constant(0.5),
        inner_pressure=RateFunction.ramp(0.0, 0.05),
        material=neo,
    )


@pytest.fixture(scope="session")
def cyl_history(cyl_scenario):
    return cylinder.evolve_geometry(cyl_scenario, t_end=1.0, dt=1e-3)


@pytest.fixture(scope="session")
def cyl_zero_scenario(neo):
    return cylinder.CylinderScenario(
        inner_radius=1.0,
        outer_radius=1.3,
        growth_speed=RateFunction.constant(0.5),
        inner_pressure=RateFunction.constant(0.0),
        material=neo,
    )


@pytest.fixture(scope="session")
def cyl_zero_history(cyl_zero_scenario):
    return cylinder.evolve_geometry(cyl_zero_scenario, t_end=1.0, dt=1e-3)
