import sys
from pathlib import Path

import numpy as np
import pytest

from tgopt import backend

sys.path.insert(0, str(Path(__file__).parent))


@pytest.fixture(params=backend.available_backends())
def kernel_backend(request):
    """Run the test under each available kernel backend."""
    previous = backend.backend_name()
    backend.set_backend(request.param)
    yield request.param
    backend.set_backend(previous)


@pytest.fixture
def rng():
    return np.random.Generator(np.random.Philox(key=20240901))
