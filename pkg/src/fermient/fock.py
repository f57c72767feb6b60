"""Dense Fock-space states and mode operators for small fermion systems.

Basis and sign conventions
--------------------------
A system of ``n`` fermionic modes is represented on the full Fock space of
dimension ``2**n``. Basis states are labelled by occupation bitmasks: bit ``i``
of the integer label is the occupation of mode ``i``, with mode 0 stored in the
least significant bit. The reference ordering of creation operators is
ascending mode index, i.e. the basis state with mask ``m`` is

    ``|m> = cdag_{i1} cdag_{i2} ... cdag_{ik} |0>``,  ``i1 < i2 < ... < ik``,

with coefficient +1. Consequently ``cdag_i`` acting on a basis state picks up the
sign ``(-1)**(number of occupied modes with index < i)``. All other conventions
in the package (correlation matrices, Bogoliubov lifts, protocol gates) are
derived from this one choice.

States carry a number-parity tag (``"even"`` or ``"odd"``); superpositions of
different parity sectors are rejected at construction time, mirroring the
superselection rule obeyed by physical fermionic systems.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Literal, Sequence

import numpy as np

from .errors import (
    DimensionMismatchError,
    MixedParityError,
    ZeroNormError,
)

#: Deviation from unit norm / unitarity tolerated before raising.
TOL_NORM = 1e-10
#: Magnitude below which an amplitude is treated as exactly zero.
TOL_ZERO = 1e-12

Parity = Literal["even", "odd"]

_MAX_MODES = 12


def _dim(n_modes: int) -> int:
    if not 1 <= n_modes <= _MAX_MODES:
        raise DimensionMismatchError(
            f"n_modes must be between 1 and {_MAX_MODES}, got {n_modes}"
        )
    return 1 << n_modes


def _mask_parities(n_modes: int) -> np.ndarray:
    """Parity (0 even, 1 odd) of every basis mask, as a uint8 array."""
    masks = np.arange(1 << n_modes, dtype=np.uint64)
    return (np.bitwise_count(masks) & 1).astype(np.uint8)


def vector_parity(vector: np.ndarray, n_modes: int) -> Parity:
    """Parity tag of ``vector``; raises MixedParityError if both sectors hold weight."""
    par = _mask_parities(n_modes)
    w_even = float(np.sum(np.abs(vector[par == 0]) ** 2))
    w_odd = float(np.sum(np.abs(vector[par == 1]) ** 2))
    total = w_even + w_odd
    if total <= TOL_ZERO**2:
        raise ZeroNormError("cannot assign a parity to the zero vector")
    if w_odd <= TOL_NORM * total:
        return "even"
    if w_even <= TOL_NORM * total:
        return "odd"
    raise MixedParityError(
        f"state mixes parity sectors (even weight {w_even:.3e}, odd weight {w_odd:.3e})"
    )


@dataclass(frozen=True)
class FockState:
    """Immutable dense state vector on ``2**n_modes`` Fock basis states.

    Attributes
    ----------
    n_modes:
        Number of fermionic modes (1..12).
    vector:
        Complex amplitudes indexed by occupation mask. Read-only.
    parity:
        Number-parity tag of the support, ``"even"`` or ``"odd"``.
    """

    n_modes: int
    vector: np.ndarray = field(repr=False)
    parity: Parity

    def __post_init__(self) -> None:
        self.vector.setflags(write=False)

    @property
    def dim(self) -> int:
        return self.vector.shape[0]

    def norm(self) -> float:
        return float(np.linalg.norm(self.vector))

    def amplitude(self, mask: int) -> complex:
        return complex(self.vector[mask])

    def nonzero_amplitudes(self) -> list[tuple[int, complex]]:
        """(mask, amplitude) pairs with magnitude above TOL_ZERO, mask-ascending."""
        idx = np.flatnonzero(np.abs(self.vector) > TOL_ZERO)
        return [(int(m), complex(self.vector[m])) for m in idx]

    def is_zero(self) -> bool:
        return self.norm() <= TOL_ZERO

    def overlap(self, other: "FockState") -> complex:
        """Inner product <self|other>."""
        if self.n_modes != other.n_modes:
            raise DimensionMismatchError(
                f"mode counts differ: {self.n_modes} vs {other.n_modes}"
            )
        return complex(np.vdot(self.vector, other.vector))


def make_state(
    n_modes: int,
    amplitudes: dict[int, complex] | Sequence[complex] | np.ndarray,
    normalize: bool = True,
) -> FockState:
    """Build a FockState from a mask->amplitude map or a full coefficient vector.

    Parameters
    ----------
    n_modes:
        Number of modes; fixes the vector length ``2**n_modes``.
    amplitudes:
        Either a dict mapping occupation masks to complex amplitudes, or a
        sequence/array of length ``2**n_modes``.
    normalize:
        When true (default) the vector is scaled to unit norm. When false the
        norm must already be 1 within TOL_NORM.

    Raises
    ------
    ZeroNormError
        All amplitudes vanish.
    MixedParityError
        Support straddles both parity sectors.
    DimensionMismatchError
        Mask out of range or wrong vector length.
    """
    dim = _dim(n_modes)
    vec = np.zeros(dim, dtype=np.complex128)
    if isinstance(amplitudes, dict):
        for mask, amp in amplitudes.items():
            if not 0 <= int(mask) < dim:
                raise DimensionMismatchError(
                    f"mask {mask} out of range for {n_modes} modes"
                )
            vec[int(mask)] = complex(amp)
    else:
        arr = np.asarray(amplitudes, dtype=np.complex128)
        if arr.shape != (dim,):
            raise DimensionMismatchError(
                f"expected vector of length {dim}, got shape {arr.shape}"
            )
        vec[:] = arr

    nrm = float(np.linalg.norm(vec))
    if nrm <= TOL_ZERO:
        raise ZeroNormError("state vector has zero norm")
    if normalize:
        vec = vec / nrm
    elif abs(nrm - 1.0) > TOL_NORM:
        raise ZeroNormError(f"state vector norm {nrm!r} is not 1 within {TOL_NORM}")

    parity = vector_parity(vec, n_modes)
    return FockState(n_modes=n_modes, vector=vec, parity=parity)


def vacuum_state(n_modes: int) -> FockState:
    return make_state(n_modes, {0: 1.0}, normalize=False)


def basis_state(n_modes: int, mask: int) -> FockState:
    """Slater determinant with the modes of ``mask`` occupied (ascending order)."""
    return make_state(n_modes, {mask: 1.0}, normalize=False)


# ---------------------------------------------------------------------------
# mode operators on raw vectors
# ---------------------------------------------------------------------------


def _op_tables(n_modes: int, mode: int, dagger: bool) -> tuple[np.ndarray, np.ndarray]:
    """Source masks and signed couplings for c_mode / cdag_mode.

    Returns (src, sign) such that the operator maps amplitude at ``src[k]`` to
    ``sign[k]`` times that amplitude at ``src[k] ^ (1 << mode)``.
    """
    if not 0 <= mode < n_modes:
        raise DimensionMismatchError(f"mode {mode} out of range for {n_modes} modes")
    bit = 1 << mode
    masks = np.arange(1 << n_modes, dtype=np.uint64)
    occupied = (masks & np.uint64(bit)).astype(bool)
    src = masks[~occupied] if dagger else masks[occupied]
    below = src & np.uint64(bit - 1)
    sign = 1.0 - 2.0 * (np.bitwise_count(below) & 1).astype(np.float64)
    return src.astype(np.int64), sign


def raw_apply(vector: np.ndarray, n_modes: int, mode: int, dagger: bool) -> np.ndarray:
    """Apply c_mode (or cdag_mode) to a bare coefficient vector. May return zero."""
    src, sign = _op_tables(n_modes, mode, dagger)
    out = np.zeros_like(vector)
    out[src ^ (1 << mode)] = sign * vector[src]
    return out


def _flip(parity: Parity) -> Parity:
    return "odd" if parity == "even" else "even"


def apply_creation(state: FockState, mode: int) -> FockState:
    """Apply cdag_mode. The result is NOT renormalized and may be the zero state."""
    out = raw_apply(state.vector, state.n_modes, mode, dagger=True)
    return FockState(n_modes=state.n_modes, vector=out, parity=_flip(state.parity))


def apply_annihilation(state: FockState, mode: int) -> FockState:
    """Apply c_mode. The result is NOT renormalized and may be the zero state."""
    out = raw_apply(state.vector, state.n_modes, mode, dagger=False)
    return FockState(n_modes=state.n_modes, vector=out, parity=_flip(state.parity))


def apply_operator_string(
    state: FockState, factors: Iterable[tuple[str, int]]
) -> FockState:
    """Apply a product of mode operators written in math order.

    ``factors`` lists the product left-to-right, e.g.
    ``[("create", 0), ("annihilate", 1)]`` means ``cdag_0 c_1``; the rightmost
    factor acts first. Each factor is ``("create", mode)`` or
    ``("annihilate", mode)``.
    """
    seq = list(factors)
    for kind, mode in reversed(seq):
        if kind == "create":
            state = apply_creation(state, mode)
        elif kind == "annihilate":
            state = apply_annihilation(state, mode)
        else:
            raise ValueError(f"unknown factor kind {kind!r}")
    return state


# ---------------------------------------------------------------------------
# dense operator matrices
# ---------------------------------------------------------------------------


def creation_matrix(n_modes: int, mode: int) -> np.ndarray:
    """Dense ``2**n x 2**n`` matrix of cdag_mode."""
    dim = _dim(n_modes)
    src, sign = _op_tables(n_modes, mode, dagger=True)
    mat = np.zeros((dim, dim), dtype=np.complex128)
    mat[src ^ (1 << mode), src] = sign
    return mat


def annihilation_matrix(n_modes: int, mode: int) -> np.ndarray:
    """Dense ``2**n x 2**n`` matrix of c_mode."""
    dim = _dim(n_modes)
    src, sign = _op_tables(n_modes, mode, dagger=False)
    mat = np.zeros((dim, dim), dtype=np.complex128)
    mat[src ^ (1 << mode), src] = sign
    return mat


def number_matrix(n_modes: int, mode: int) -> np.ndarray:
    """Dense matrix of the occupation-number operator n_mode = cdag_mode c_mode."""
    dim = _dim(n_modes)
    masks = np.arange(dim, dtype=np.uint64)
    occ = ((masks >> np.uint64(mode)) & np.uint64(1)).astype(np.float64)
    return np.diag(occ).astype(np.complex128)


def parity_matrix(n_modes: int) -> np.ndarray:
    """Dense matrix of the number-parity operator exp(i pi sum_k n_k)."""
    dim = _dim(n_modes)
    masks = np.arange(dim, dtype=np.uint64)
    signs = 1.0 - 2.0 * (np.bitwise_count(masks) & 1).astype(np.float64)
    return np.diag(signs).astype(np.complex128)


@dataclass(frozen=True)
class FockOperator:
    """Dense operator on the full Fock space with a declared kind.

    ``kind`` is one of ``"unitary"``, ``"hermitian"``, ``"projector"``; the
    corresponding algebraic property is checked at construction within
    TOL_NORM.
    """

    n_modes: int
    matrix: np.ndarray = field(repr=False)
    kind: Literal["unitary", "hermitian", "projector"]

    def __post_init__(self) -> None:
        dim = _dim(self.n_modes)
        if self.matrix.shape != (dim, dim):
            raise DimensionMismatchError(
                f"operator shape {self.matrix.shape} does not match {self.n_modes} modes"
            )
        m = self.matrix
        if self.kind == "unitary":
            defect = np.max(np.abs(m.conj().T @ m - np.eye(dim)))
        elif self.kind == "hermitian":
            defect = np.max(np.abs(m - m.conj().T))
        elif self.kind == "projector":
            defect = max(
                np.max(np.abs(m - m.conj().T)), np.max(np.abs(m @ m - m))
            )
        else:
            raise ValueError(f"unknown operator kind {self.kind!r}")
        if defect > TOL_NORM:
            raise DimensionMismatchError(
                f"matrix violates {self.kind} property by {defect:.3e}"
            )
        self.matrix.setflags(write=False)

    def apply(self, state: FockState) -> FockState:
        if state.n_modes != self.n_modes:
            raise DimensionMismatchError(
                f"operator on {self.n_modes} modes applied to {state.n_modes}-mode state"
            )
        out = self.matrix @ state.vector
        nrm = float(np.linalg.norm(out))
        if nrm <= TOL_ZERO:
            raise ZeroNormError("operator annihilated the state")
        parity = vector_parity(out, state.n_modes)
        return FockState(n_modes=state.n_modes, vector=out, parity=parity)


def expectation(state: FockState, matrix: np.ndarray) -> complex:
    """<psi| M |psi> / <psi|psi> for a dense matrix M."""
    v = state.vector
    return complex(np.vdot(v, matrix @ v) / np.vdot(v, v))


def inner_product(a: FockState, b: FockState) -> complex:
    """<a|b>, conjugate-linear in the first argument."""
    return a.overlap(b)


def number_parity(state: FockState) -> int:
    """Eigenvalue of exp(i pi N) on the state: +1 for even, -1 for odd."""
    return 1 if state.parity == "even" else -1


def random_state(
    n_modes: int,
    parity: Parity | None = None,
    seed: int | None = None,
    rng: np.random.Generator | None = None,
) -> FockState:
    """Haar-like random pure state in one parity sector.

    Gaussian amplitudes on the chosen sector, normalized. ``parity=None``
    picks even or odd with equal probability. Pass either ``seed`` or an
    existing ``rng``.
    """
    if rng is None:
        rng = np.random.default_rng(seed)
    if parity is None:
        parity = "even" if rng.integers(2) == 0 else "odd"
    dim = _dim(n_modes)
    par = _mask_parities(n_modes)
    want = 0 if parity == "even" else 1
    vec = np.zeros(dim, dtype=np.complex128)
    sector = np.flatnonzero(par == want)
    vec[sector] = rng.normal(size=sector.size) + 1j * rng.normal(size=sector.size)
    vec /= np.linalg.norm(vec)
    return FockState(n_modes=n_modes, vector=vec, parity=parity)
