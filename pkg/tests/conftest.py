import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)


def ginibre(dim, rng):
    return (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / np.sqrt(2)


def haar_unitary(dim, rng):
    q, r = np.linalg.qr(ginibre(dim, rng))
    ph = np.diagonal(r).copy()
    ph /= np.abs(ph)
    return q * ph


def wishart(dim, rng, ridge=0.0):
    g = ginibre(dim, rng)
    return g @ g.conj().T + ridge * np.eye(dim)


def random_state_matrix(dim, rng, ridge=None):
    if ridge is None:
        ridge = 1e-3 * dim
    w = wishart(dim, rng, ridge)
    return w / np.trace(w).real
