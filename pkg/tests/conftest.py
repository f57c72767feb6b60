import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(20260819)


def slow_popcount(m: int) -> int:
    return bin(m).count("1")


def oracle_creation_matrix(n_modes: int, mode: int) -> np.ndarray:
    """Reference cdag_mode built entry-by-entry, independent of the library."""
    dim = 2**n_modes
    out = np.zeros((dim, dim), dtype=complex)
    bit = 1 << mode
    for m in range(dim):
        if m & bit:
            continue
        sign = (-1) ** slow_popcount(m & (bit - 1))
        out[m | bit, m] = sign
    return out


def oracle_annihilation_matrix(n_modes: int, mode: int) -> np.ndarray:
    return oracle_creation_matrix(n_modes, mode).conj().T
