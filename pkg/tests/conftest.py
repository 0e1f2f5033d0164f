import pytest

import goldfish


@pytest.fixture(scope="session", autouse=True)
def _warm_kernels():
    # Pull the jitted kernels out of the compile cache before anything timed.
    goldfish.warmup()
