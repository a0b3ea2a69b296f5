# Shared test configuration and utilities for the tcores tests
# This file contains worked examples, fixtures, and helper functions

import pytest

from tcores.partition_core import Box, Partition, enumerate_box
from tcores.utils.config import Settings


# ============================================================================
# SHARED TEST DATA
# ============================================================================

# Running example: (5,4,4,1), its conjugate and its cores
LAMBDA = Partition.of(5, 4, 4, 1)
LAMBDA_CONJUGATE = Partition.of(4, 3, 3, 3, 1)

# Bits of the balanced abacus of (5,4,4,1) at indices -7..7
LAMBDA_ABACUS_BITS = (1, 1, 1, 0, 1, 0, 0, 0, 1, 1, 0, 1, 0, 0, 0)

# The six partitions of the 2x2 box with their mod-3 runner tuples
BOX_2X2_RUNNERS_T3 = {
    Partition(): ((1, 0), (1,), (0,)),
    Partition.of(1): ((1, 0), (0,), (1,)),
    Partition.of(2): ((1, 1), (0,), (0,)),
    Partition.of(1, 1): ((0, 0), (1,), (1,)),
    Partition.of(2, 1): ((0, 1), (1,), (0,)),
    Partition.of(2, 2): ((0, 1), (0,), (1,)),
}

# The nine partitions of the 4x5 box whose 3-core is (2,2,1,1)
CORE_2211 = Partition.of(2, 2, 1, 1)
CORE_2211_CLASS = {
    Partition.of(2, 2, 1, 1),
    Partition.of(4, 3, 1, 1),
    Partition.of(4, 3, 3, 2),
    Partition.of(5, 2, 1, 1),
    Partition.of(5, 3, 3, 1),
    Partition.of(5, 5, 1, 1),
    Partition.of(5, 5, 3, 2),
    Partition.of(5, 5, 4, 1),
    Partition.of(5, 5, 4, 4),
}

# q^6 (1 + q^3 + q^6)^2
CORE_2211_GENFUN = (0,) * 6 + (1, 0, 0, 2, 0, 0, 3, 0, 0, 2, 0, 0, 1)


def all_partitions(rows, cols):
    """Every partition of the rows x cols box as a list."""
    return list(enumerate_box(Box(rows, cols)))


# ============================================================================
# PYTEST FIXTURES
# ============================================================================

@pytest.fixture(scope="session")
def par_5_5():
    """Fixture providing all 252 partitions of the 5x5 box."""
    return all_partitions(5, 5)


@pytest.fixture(scope="session")
def par_6_6():
    """Fixture providing all 924 partitions of the 6x6 box."""
    return all_partitions(6, 6)


@pytest.fixture
def test_settings():
    """Fixture providing settings with small chunks for sampling tests."""
    return Settings(chunk_size=1000, workers=2, quad_periods=16)


@pytest.fixture
def patch_settings(mocker, test_settings):
    """Fixture routing get_settings() to the test settings in every module."""
    for module in ("tcores.counting", "tcores.coredist", "tcores.montecarlo", "tcores.cli"):
        mocker.patch(f"{module}.get_settings", return_value=test_settings)
    return test_settings


@pytest.fixture(autouse=True)
def disable_loguru_handlers():
    """Disable loguru handlers during tests to avoid logging noise."""
    from loguru import logger
    logger.remove()  # Remove all handlers
    logger.add(
        lambda message: None,  # No-op handler
        level="DEBUG",
        filter=lambda record: True
    )
    yield
    logger.remove()  # Clean up after test
