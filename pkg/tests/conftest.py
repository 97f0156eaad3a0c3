import os
import sys

import numpy as np
import pytest

sys.path.insert(0, os.path.dirname(__file__))  # make oracles importable

DATA_DIR = os.path.join(os.path.dirname(__file__), "data")
MNIST_IMAGES = os.path.join(DATA_DIR, "mnist10k-images-idx3-ubyte")
MNIST_LABELS = os.path.join(DATA_DIR, "mnist10k-labels-idx1-ubyte")


@pytest.fixture(scope="session")
def mnist_paths():
    if not (os.path.exists(MNIST_IMAGES) and os.path.exists(MNIST_LABELS)):
        pytest.skip("bundled MNIST IDX files missing")
    return MNIST_IMAGES, MNIST_LABELS


@pytest.fixture(scope="session")
def mnist_arrays(mnist_paths):
    from talgebra.bench.dataset import load_idx

    return load_idx(*mnist_paths)


@pytest.fixture
def rng():
    return np.random.Generator(np.random.PCG64(20240817))
