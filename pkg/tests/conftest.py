import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from analogyaudit.synthetic import random_set


@pytest.fixture
def small_set():
    return random_set(50, 8, seed=42)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)
