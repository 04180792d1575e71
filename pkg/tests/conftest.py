import numpy as np
import pytest

from lqgheat import (
    EvolveConfig,
    GeneratorContext,
    LatticePoint,
    evolve,
    high_points,
    liouville_weights,
    sample_gff,
    stride_schedule,
)


@pytest.fixture(scope="session")
def small_field():
    return sample_gff(8, 123)


@pytest.fixture(scope="session")
def small_ctx(small_field):
    return GeneratorContext(liouville_weights(small_field, 0.8))


@pytest.fixture(scope="session")
def small_trajectory(small_field, small_ctx):
    # 50 steps from the field's highest point, snapshots every 10 iterations
    start = high_points(small_field, 1)[0]
    config = EvolveConfig(total_steps=50, dt=1.0, snapshot_schedule=stride_schedule(50, 10))
    return evolve(small_ctx, start, config)


@pytest.fixture()
def rng():
    return np.random.Generator(np.random.Philox(20260815))
