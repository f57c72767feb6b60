"""Mode bipartitions: reduced states, entropies, concurrence, parity splits.

The fermionic partial trace reorders modes so side A occupies the
low-significance bits, dressing each amplitude with the sign of the
restriction of that permutation to occupied modes; after the dressing the
trace is the ordinary tensor-factor trace. All reduced-state expectations of
side-local operators then agree with full-state expectations.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable

import numpy as np

from .correlations import (
    extended_density,
    matrix_entropy,
    one_body,
    qsp_entropy,
    quadratic_term,
    von_neumann_term,
)
from .errors import (
    DimensionMismatchError,
    FermionError,
    NotNormalizedError,
    SideMismatchError,
    WrongParityError,
    WrongShapeError,
)
from .fock import FockState, TOL_ZERO
from .linalg import hermitian_eigensystem

__all__ = [
    "ModePartition",
    "ReducedDensity",
    "LocalParitySplit",
    "reduced_state",
    "bipartite_entropy",
    "concurrence",
    "concurrence_even",
    "concurrence_odd",
    "local_parity_split",
    "majorization_check",
    "schmidt_concurrence",
]

_ENTROPY_MATCH_TOL = 1e-9
#: Entropy functions reported by majorization_check.
REGISTERED_ENTROPIES: dict[str, Callable[[float], float]] = {
    "von_neumann": von_neumann_term,
    "quadratic": quadratic_term,
}


@dataclass(frozen=True)
class ModePartition:
    """Ordered split of the modes into non-empty sides A and B."""

    n_modes: int
    side_a: tuple[int, ...]
    side_b: tuple[int, ...]

    def __init__(
        self,
        n_modes: int,
        side_a: Iterable[int],
        side_b: Iterable[int] | None = None,
    ) -> None:
        a = tuple(int(m) for m in side_a)
        if side_b is None:
            b = tuple(m for m in range(n_modes) if m not in a)
        else:
            b = tuple(int(m) for m in side_b)
        if not a or not b:
            raise SideMismatchError("both sides must be non-empty")
        if len(set(a)) != len(a) or len(set(b)) != len(b) or set(a) & set(b):
            raise SideMismatchError("sides must be disjoint without repeats")
        if set(a) | set(b) != set(range(n_modes)):
            raise SideMismatchError("sides must cover every mode exactly once")
        object.__setattr__(self, "n_modes", n_modes)
        object.__setattr__(self, "side_a", a)
        object.__setattr__(self, "side_b", b)


@dataclass(frozen=True)
class ReducedDensity:
    """Reduced density matrix over the local occupation basis of one side."""

    modes: tuple[int, ...]
    side: str
    matrix: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        m = self.matrix
        if np.max(np.abs(m - m.conj().T)) > 1e-10:
            raise FermionError("reduced matrix is not Hermitian")
        if abs(np.trace(m).real - 1.0) > 1e-10:
            raise FermionError("reduced matrix trace differs from 1")
        if hermitian_eigensystem(m).values[-1] < -1e-10:
            raise FermionError("reduced matrix has a negative eigenvalue")
        m.setflags(write=False)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def spectrum(self) -> np.ndarray:
        return hermitian_eigensystem(self.matrix).values

    def entropy(self, fn: Callable[[float], float] = von_neumann_term) -> float:
        return matrix_entropy(self.matrix, fn)


def _coefficient_matrix(state: FockState, part: ModePartition) -> np.ndarray:
    """Sign-dressed amplitudes as a (local A) x (local B) matrix."""
    if part.n_modes != state.n_modes:
        raise DimensionMismatchError(
            f"partition of {part.n_modes} modes given a {state.n_modes}-mode state"
        )
    order = part.side_a + part.side_b
    t = np.zeros((1 << len(part.side_a), 1 << len(part.side_b)), dtype=np.complex128)
    for mask in range(state.dim):
        amp = state.vector[mask]
        if abs(amp) <= TOL_ZERO:
            continue
        occupied = [m for m in order if mask >> m & 1]
        inversions = sum(
            1
            for i in range(len(occupied))
            for j in range(i + 1, len(occupied))
            if occupied[i] > occupied[j]
        )
        a_idx = 0
        for k, m in enumerate(part.side_a):
            a_idx |= (mask >> m & 1) << k
        b_idx = 0
        for k, m in enumerate(part.side_b):
            b_idx |= (mask >> m & 1) << k
        t[a_idx, b_idx] = (-1) ** inversions * amp
    return t


def reduced_state(state: FockState, part: ModePartition, side: str = "a") -> ReducedDensity:
    """Fermionic partial trace onto one side of the partition."""
    label = side.lower()
    if label not in ("a", "b"):
        raise SideMismatchError(f"unknown side {side!r}")
    t = _coefficient_matrix(state, part)
    if label == "a":
        matrix = t @ t.conj().T
        modes = part.side_a
    else:
        matrix = t.T @ t.conj()
        modes = part.side_b
    return ReducedDensity(modes=modes, side=label, matrix=matrix)


def bipartite_entropy(
    state: FockState,
    part: ModePartition,
    entropy_fn: Callable[[float], float] = von_neumann_term,
) -> float:
    """Entanglement entropy of the partition; checks S(rho_A) = S(rho_B)."""
    s_a = reduced_state(state, part, "a").entropy(entropy_fn)
    s_b = reduced_state(state, part, "b").entropy(entropy_fn)
    if abs(s_a - s_b) > _ENTROPY_MATCH_TOL:
        raise SideMismatchError(
            f"side entropies differ: {s_a!r} vs {s_b!r}"
        )
    return s_a


def _require_four_modes(state: FockState) -> None:
    if state.n_modes != 4:
        raise DimensionMismatchError("concurrence formulas are defined for 4 modes")


def concurrence_even(state: FockState) -> float:
    """Closed-form concurrence of an even four-mode state."""
    _require_four_modes(state)
    if state.parity != "even":
        raise WrongParityError("state is not even-parity")
    amp = state.amplitude
    quartic = (
        amp(0b0011) * amp(0b1100)
        - amp(0b0101) * amp(0b1010)
        + amp(0b1001) * amp(0b0110)
        - amp(0b0000) * amp(0b1111)
    )
    return min(2.0 * abs(quartic), 1.0)


def concurrence_odd(state: FockState) -> float:
    """Closed-form concurrence of an odd four-mode state."""
    _require_four_modes(state)
    if state.parity != "odd":
        raise WrongParityError("state is not odd-parity")
    total = 0.0 + 0.0j
    for i in range(4):
        beta = state.amplitude(1 << i)
        beta_tilde = (-1) ** i * state.amplitude(0b1111 ^ (1 << i))
        total += beta * beta_tilde
    return min(2.0 * abs(total), 1.0)


def concurrence(state: FockState) -> float:
    if state.parity == "even":
        return concurrence_even(state)
    return concurrence_odd(state)


@dataclass(frozen=True)
class LocalParitySplit:
    """Decomposition of an even state over the local parity of side A."""

    p_minus: float
    p_plus: float
    c_minus: float
    c_plus: float
    beta: np.ndarray = field(repr=False)
    beta_tilde: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        if abs(self.p_minus + self.p_plus - 1.0) > 1e-10:
            raise FermionError("local parity weights do not sum to 1")
        for c in (self.c_minus, self.c_plus):
            if not -1e-12 <= c <= 1.0 + 1e-12:
                raise FermionError("component concurrence out of range")
        self.beta.setflags(write=False)
        self.beta_tilde.setflags(write=False)

    def concurrence(self) -> float:
        value = 2.0 * abs(np.linalg.det(self.beta) + np.linalg.det(self.beta_tilde))
        return min(value, 1.0)


def local_parity_split(state: FockState, part: ModePartition) -> LocalParitySplit:
    """Odd/even local-parity components of an even state on a 2+2 partition.

    The returned concurrences obey the sandwich
    |p_- c_- − p_+ c_+| <= C <= p_- c_- + p_+ c_+ exactly, which is asserted.
    """
    _require_four_modes(state)
    if state.parity != "even":
        raise WrongParityError("local parity split expects an even state")
    if len(part.side_a) != 2 or len(part.side_b) != 2:
        raise WrongShapeError("local parity split needs a 2+2 partition")
    t = _coefficient_matrix(state, part)
    beta = t[np.ix_([1, 2], [1, 2])].copy()
    beta_tilde = t[np.ix_([0, 3], [0, 3])].copy()
    p_minus = float(np.sum(np.abs(beta) ** 2))
    p_plus = float(np.sum(np.abs(beta_tilde) ** 2))
    det_minus = complex(np.linalg.det(beta))
    det_plus = complex(np.linalg.det(beta_tilde))
    c_minus = min(2.0 * abs(det_minus) / p_minus, 1.0) if p_minus > 1e-12 else 0.0
    c_plus = min(2.0 * abs(det_plus) / p_plus, 1.0) if p_plus > 1e-12 else 0.0
    split = LocalParitySplit(
        p_minus=p_minus,
        p_plus=p_plus,
        c_minus=c_minus,
        c_plus=c_plus,
        beta=beta,
        beta_tilde=beta_tilde,
    )
    total = split.concurrence()
    low = abs(p_minus * c_minus - p_plus * c_plus)
    high = p_minus * c_minus + p_plus * c_plus
    if total < low - 1e-9 or total > high + 1e-9:
        raise FermionError("concurrence sandwich violated; split is inconsistent")
    return split


def majorization_check(state: FockState, part: ModePartition) -> dict:
    """Verdict on lambda_max(rho_A) <= f_+ and the quarter-entropy bounds."""
    _require_four_modes(state)
    lam = float(reduced_state(state, part, "a").spectrum()[0])
    values = extended_density(state).spectrum().values
    f_plus = float(np.mean(values[:4]))
    lam_holds = lam <= f_plus + 1e-9
    entropies = {}
    all_hold = lam_holds
    for name, fn in REGISTERED_ENTROPIES.items():
        value = bipartite_entropy(state, part, fn)
        bound = qsp_entropy(state, fn) / 4.0
        holds = value >= bound - 1e-9
        all_hold = all_hold and holds
        entropies[name] = {"value": value, "bound": bound, "holds": holds}
    return {
        "lambda_max": lam,
        "f_plus": f_plus,
        "holds": all_hold,
        "entropies": entropies,
    }


def schmidt_concurrence(beta1, beta2, bt1, bt2) -> float:
    """Concurrence of a state given in local-parity Schmidt coefficients."""
    norm = abs(beta1) ** 2 + abs(beta2) ** 2 + abs(bt1) ** 2 + abs(bt2) ** 2
    if abs(norm - 1.0) > 1e-10:
        raise NotNormalizedError(f"coefficient norm {norm!r} differs from 1")
    return min(2.0 * abs(beta1 * beta2 + bt1 * bt2), 1.0)


def occupations_cross_check(state: FockState, part: ModePartition) -> float:
    """Largest cross-side contraction; vanishes for fixed local parity."""
    blocks = one_body(state)
    worst = 0.0
    for a in part.side_a:
        for b in part.side_b:
            worst = max(
                worst,
                abs(blocks.rho[a, b]),
                abs(blocks.rho[b, a]),
                abs(blocks.kappa[a, b]),
            )
    return worst
