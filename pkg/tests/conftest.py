import numpy as np
import pytest

from covest import PhaseDesign, PhaseInputState, SeedMatrix, phase_error


@pytest.fixture
def rng():
    return np.random.default_rng(20040725)


def random_input_state(rng, d):
    x = rng.normal(size=d) + 1j * rng.normal(size=d)
    x /= np.linalg.norm(x)
    return PhaseInputState(x)


def random_seed_matrix(rng, d):
    """Random Hermitian PSD matrix rescaled to unit diagonal."""
    b = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    a = b @ b.conj().T + 0.1 * np.eye(d)
    scale = 1.0 / np.sqrt(np.real(np.diag(a)))
    t = a * np.outer(scale, scale)
    np.fill_diagonal(t, 1.0)
    return SeedMatrix(t)


def random_phase_design(rng, d):
    x = random_input_state(rng, d)
    t = random_seed_matrix(rng, d)
    return PhaseDesign(x, t, phase_error(x, t))
