"""One-body and extended one-body correlation matrices and their entropies.

The one-body matrix is ``rho[i, j] = <cdag_j c_i>`` and the anomalous block is
``kappa[i, j] = <c_j c_i>``. The extended matrix stacks them in the 2n x 2n
block form ``[[rho, kappa], [-conj(kappa), 1 - conj(rho)]]``, whose spectrum is
invariant under Bogoliubov transformations and comes in (f, 1-f) pairs.

Two entropy conventions coexist deliberately and are NOT interchangeable:

- ``sp_entropy`` sums the binary entropy h over the one-body eigenvalues
  (``Tr h(rho)``); it measures mode-occupation uncertainty and is 4 for the
  half-filled n=4 Bell-type state.
- ``matrix_entropy`` is the plain trace-form entropy ``Tr f(rho)`` of a matrix
  (von Neumann by default); it is the quantity entering the factor-of-two
  relations with bipartite entanglement, and is 2 for the same one-body matrix.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import HermiticityDefectError
from .fock import FockState, raw_apply
from .linalg import Spectrum, hermitian_eigensystem

__all__ = [
    "OneBodyDensity",
    "ExtendedDensity",
    "Spectrum",
    "hermitian_eigensystem",
    "one_body",
    "extended_density",
    "sp_entropy",
    "qsp_entropy",
    "binary_entropy",
    "von_neumann_term",
    "quadratic_term",
    "spectrum_entropy",
    "matrix_entropy",
    "concurrence_from_spectrum",
]

_EIG_TOL = 1e-9


@dataclass(frozen=True)
class OneBodyDensity:
    """Normal and anomalous one-body contractions of a pure state."""

    rho: np.ndarray = field(repr=False)
    kappa: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        if np.max(np.abs(self.rho - self.rho.conj().T)) > 1e-10:
            raise HermiticityDefectError("one-body matrix is not Hermitian")
        if np.max(np.abs(self.kappa + self.kappa.T)) > 1e-12:
            raise HermiticityDefectError("pair matrix is not antisymmetric")
        occ = np.linalg.eigvalsh(self.rho)
        if occ.min() < -_EIG_TOL or occ.max() > 1 + _EIG_TOL:
            raise HermiticityDefectError(
                f"occupation eigenvalues outside [0,1]: [{occ.min()}, {occ.max()}]"
            )
        self.rho.setflags(write=False)
        self.kappa.setflags(write=False)

    @property
    def n_modes(self) -> int:
        return self.rho.shape[0]


@dataclass(frozen=True)
class ExtendedDensity:
    """2n x 2n particle-hole extended density matrix."""

    m: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        self.m.setflags(write=False)

    @property
    def n_modes(self) -> int:
        return self.m.shape[0] // 2

    def spectrum(self) -> Spectrum:
        return hermitian_eigensystem(self.m)


def one_body(state: FockState) -> OneBodyDensity:
    """Both one-body blocks, evaluated from annihilated/created vectors.

    rho[i, j] = <c_j psi | c_i psi> and kappa[i, j] = <cdag_j psi | c_i psi>,
    which equal <cdag_j c_i> and <c_j c_i> respectively.
    """
    n = state.n_modes
    v = state.vector
    ann = np.array([raw_apply(v, n, i, dagger=False) for i in range(n)])
    cre = np.array([raw_apply(v, n, i, dagger=True) for i in range(n)])
    # row a of `ann` is c_a|psi>, so (ann.conj() @ ann.T)[j, i] = <cdag_j c_i>
    rho = np.ascontiguousarray((ann.conj() @ ann.T).T)
    kappa = np.ascontiguousarray((cre.conj() @ ann.T).T)
    rho = (rho + rho.conj().T) / 2.0
    kappa = (kappa - kappa.T) / 2.0
    return OneBodyDensity(rho=rho, kappa=kappa)


def extended_density(state: FockState) -> ExtendedDensity:
    """Assemble the extended matrix from the one-body blocks.

    Raises HermiticityDefectError if the assembled block matrix deviates from
    Hermiticity by more than 1e-10 (a bug upstream, not a user error).
    """
    ob = one_body(state)
    n = ob.n_modes
    m = np.zeros((2 * n, 2 * n), dtype=np.complex128)
    m[:n, :n] = ob.rho
    m[:n, n:] = ob.kappa
    m[n:, :n] = -ob.kappa.conj()
    m[n:, n:] = np.eye(n) - ob.rho.conj()
    defect = float(np.max(np.abs(m - m.conj().T)))
    if defect > 1e-10:
        raise HermiticityDefectError(f"extended matrix defect {defect:.3e}")
    m = (m + m.conj().T) / 2.0
    return ExtendedDensity(m=m)


# ---------------------------------------------------------------------------
# entropy functionals
# ---------------------------------------------------------------------------


def binary_entropy(p: float) -> float:
    """h(p) = -p log2 p - (1-p) log2(1-p), with 0 log 0 := 0."""
    return von_neumann_term(p) + von_neumann_term(1.0 - p)


def von_neumann_term(p: float) -> float:
    """f(p) = -p log2 p, clipped so spectral noise below 0 or above 1 is inert."""
    p = min(max(float(p), 0.0), 1.0)
    if p <= 0.0:
        return 0.0
    return -p * np.log2(p)


def quadratic_term(p: float) -> float:
    """f(p) = 2 p (1-p), the quadratic (linear-entropy) kernel."""
    p = min(max(float(p), 0.0), 1.0)
    return 2.0 * p * (1.0 - p)


def spectrum_entropy(values: np.ndarray, fn: Callable[[float], float] = von_neumann_term) -> float:
    """Sum of fn over a list of eigenvalues."""
    return float(sum(fn(v) for v in np.asarray(values, dtype=np.float64)))


def matrix_entropy(matrix: np.ndarray, fn: Callable[[float], float] = von_neumann_term) -> float:
    """Trace-form entropy Tr f(M) of a Hermitian matrix."""
    return spectrum_entropy(hermitian_eigensystem(matrix).values, fn)


def sp_entropy(state: FockState) -> float:
    """Sum of binary entropies of the one-body eigenvalues, Tr h(rho).

    Zero iff the state is a Slater determinant in some mode basis.
    """
    values = hermitian_eigensystem(one_body(state).rho).values
    return spectrum_entropy(values, binary_entropy)


def qsp_entropy(state: FockState, fn: Callable[[float], float] = von_neumann_term) -> float:
    """Trace-form entropy of the extended matrix; von Neumann by default.

    Zero iff the state is a quasiparticle vacuum or Slater determinant.
    The optional ``fn`` must be concave with f(0) = f(1) = 0.
    """
    return spectrum_entropy(extended_density(state).spectrum().values, fn)


def concurrence_from_spectrum(state: FockState) -> float:
    """C = 2 sqrt(f_+ f_-) read off the extended-matrix eigenvalues."""
    values = extended_density(state).spectrum().values
    f_plus = float(values[0])
    f_minus = float(values[-1])
    prod = max(f_plus * f_minus, 0.0)
    return 2.0 * float(np.sqrt(prod))
