"""Parity-aware fermionic qubits, gates, and two protocol demonstrations.

A qubit lives on a pair of modes with a fixed local number parity. The odd
kind keeps exactly one fermion on the pair; the even kind keeps the pair
empty or doubly occupied. Each kind carries its own Pauli dictionary acting
inside that sector and vanishing on the opposite one, so gates built from
one dictionary leave the other kind's states alone.

Logical convention used throughout: |0_L> is the sigma_z = -1 state of the
pair (second mode occupied for the odd kind, empty pair for the even kind).
The controlled-NOT exponent therefore carries (1 + sigma_z) on the control,
which flips the target exactly when the control holds logical |1>.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Literal

import numpy as np

from .entanglement import ModePartition, reduced_state
from .errors import (
    DimensionMismatchError,
    ImpossibleBranchError,
    NotNormalizedError,
    OverlappingPairsError,
    UnknownStateError,
)
from .fock import (
    FockOperator,
    FockState,
    TOL_NORM,
    TOL_ZERO,
    annihilation_matrix,
    apply_operator_string,
    creation_matrix,
    number_matrix,
    vacuum_state,
    vector_parity,
)
from .linalg import hermitian_eigensystem

Axis = Literal["x", "y", "z"]
Kind = Literal["odd", "even"]

_DECODE_TOL = 1e-9


@dataclass(frozen=True)
class QubitEncoding:
    """A qubit carried by a pair of modes with fixed local number parity."""

    pair: tuple[int, int]
    kind: Kind

    def __post_init__(self) -> None:
        i, j = self.pair
        if i == j:
            raise ValueError("encoding modes must be distinct")
        if i < 0 or j < 0:
            raise ValueError("encoding modes must be non-negative")
        if self.kind not in ("odd", "even"):
            raise ValueError(f"unknown encoding kind {self.kind!r}")

    @property
    def logical_indices(self) -> tuple[int, int]:
        """Local-basis indices of (|0_L>, |1_L>) in the pair's 4-dim space.

        Bit k of the local index is the occupation of ``pair[k]``.
        """
        return (2, 1) if self.kind == "odd" else (0, 3)


def _ambient_modes(n_modes: int | None, *mode_groups: tuple[int, ...]) -> int:
    top = max(m for group in mode_groups for m in group)
    if n_modes is None:
        return top + 1
    if top >= n_modes:
        raise DimensionMismatchError(
            f"mode {top} does not fit in {n_modes} modes"
        )
    return n_modes


def _pauli_matrix(pair: tuple[int, int], kind: Kind, axis: Axis, n_modes: int) -> np.ndarray:
    i, j = pair
    if kind == "odd":
        if axis == "z":
            return number_matrix(n_modes, i) - number_matrix(n_modes, j)
        hop = creation_matrix(n_modes, i) @ annihilation_matrix(n_modes, j)
        if axis == "x":
            return hop + hop.conj().T
        return -1j * (hop - hop.conj().T)
    if axis == "z":
        dim = 1 << n_modes
        return number_matrix(n_modes, i) + number_matrix(n_modes, j) - np.eye(dim)
    pairing = creation_matrix(n_modes, i) @ creation_matrix(n_modes, j)
    if axis == "x":
        return pairing + pairing.conj().T
    return -1j * (pairing - pairing.conj().T)


def pauli(encoding: QubitEncoding, axis: Axis, n_modes: int | None = None) -> FockOperator:
    """Dense Pauli operator of the encoding's dictionary along ``axis``."""
    if axis not in ("x", "y", "z"):
        raise ValueError(f"unknown axis {axis!r}")
    n = _ambient_modes(n_modes, encoding.pair)
    return FockOperator(n, _pauli_matrix(encoding.pair, encoding.kind, axis, n), "hermitian")


def _unitary_exp(generator: np.ndarray) -> np.ndarray:
    """exp(i G) for Hermitian G via the package eigensolver."""
    spec = hermitian_eigensystem(generator)
    phases = np.exp(1j * spec.values)
    return (spec.vectors * phases) @ spec.vectors.conj().T


def rotation(
    encoding: QubitEncoding,
    axis_weights: tuple[float, float, float],
    n_modes: int | None = None,
    both_kinds: bool = False,
) -> FockOperator:
    """exp(i sum_a lambda_a Pi_a) with Pi the encoding's Pauli dictionary.

    With ``both_kinds`` the generator uses sigma_a + sigma~_a, which acts on
    both local-parity sectors of the pair at once.
    """
    n = _ambient_modes(n_modes, encoding.pair)
    dim = 1 << n
    generator = np.zeros((dim, dim), dtype=np.complex128)
    for weight, axis in zip(axis_weights, ("x", "y", "z")):
        if weight == 0.0:
            continue
        if both_kinds:
            term = _pauli_matrix(encoding.pair, "odd", axis, n) + _pauli_matrix(
                encoding.pair, "even", axis, n
            )
        else:
            term = _pauli_matrix(encoding.pair, encoding.kind, axis, n)
        generator += float(weight) * term
    return FockOperator(n, _unitary_exp(generator), "unitary")


def hadamard(encoding: QubitEncoding, n_modes: int | None = None) -> FockOperator:
    """Logical Hadamard: i exp(-i pi/2 (sigma_x - sigma_z)/sqrt(2)).

    In the logical basis (|0_L> the sigma_z = -1 state) this is the textbook
    (X_L + Z_L)/sqrt(2) rotation; the i prefactor makes its action on the
    encoding's sector carry no extra phase.
    """
    w = math.pi / (2.0 * math.sqrt(2.0))
    rot = rotation(encoding, (-w, 0.0, w), n_modes)
    return FockOperator(rot.n_modes, 1j * rot.matrix, "unitary")


def cnot(
    control: QubitEncoding,
    target: QubitEncoding,
    n_modes: int | None = None,
    both_kinds: bool = False,
) -> FockOperator:
    """Controlled-NOT between two pair-encoded qubits of the same kind.

    Implemented as exp[i pi/4 (1 + sigma_z^ctrl)(1 - sigma_x^tgt)], which in
    the logical basis is exp[i pi/4 (1 - Z_ctrl)(1 - X_tgt)]: the target is
    flipped exactly when the control pair holds logical |1> (first mode
    occupied for the odd kind, doubly occupied pair for the even kind).

    With ``both_kinds`` the dual form exp[i pi/4 (1 - sigma_z - sigma~_z)
    (1 - sigma_x - sigma~_x)] is returned, acting on both sectors at once.
    """
    if set(control.pair) & set(target.pair):
        raise OverlappingPairsError(
            f"control pair {control.pair} overlaps target pair {target.pair}"
        )
    if not both_kinds and control.kind != target.kind:
        raise ValueError("control and target encodings must share a kind")
    n = _ambient_modes(n_modes, control.pair, target.pair)
    dim = 1 << n
    eye = np.eye(dim)
    if both_kinds:
        mz = _pauli_matrix(control.pair, "odd", "z", n) + _pauli_matrix(
            control.pair, "even", "z", n
        )
        mx = _pauli_matrix(target.pair, "odd", "x", n) + _pauli_matrix(
            target.pair, "even", "x", n
        )
        generator = (math.pi / 4.0) * (eye - mz) @ (eye - mx)
    else:
        sz = _pauli_matrix(control.pair, control.kind, "z", n)
        sx = _pauli_matrix(target.pair, target.kind, "x", n)
        generator = (math.pi / 4.0) * (eye + sz) @ (eye - sx)
    return FockOperator(n, _unitary_exp(generator), "unitary")


def parity_gate(modes: tuple[int, ...], n_modes: int | None = None) -> FockOperator:
    """Local parity gate -exp(i pi N_side): -1 on even local parity, +1 on odd."""
    side = tuple(sorted(set(int(m) for m in modes)))
    if not side:
        raise ValueError("parity gate needs a non-empty mode set")
    n = _ambient_modes(n_modes, side)
    side_mask = 0
    for m in side:
        side_mask |= 1 << m
    masks = np.arange(1 << n)
    local = np.bitwise_count(masks & side_mask)
    diag = np.where(local % 2 == 0, -1.0, 1.0).astype(np.complex128)
    return FockOperator(n, np.diag(diag), "unitary")


def occupation_projector(mode: int, outcome: int, n_modes: int) -> FockOperator:
    """Projector onto occupation ``outcome`` of ``mode``."""
    if outcome not in (0, 1):
        raise ValueError("outcome must be 0 or 1")
    n = _ambient_modes(n_modes, (mode,))
    sel = ((np.arange(1 << n) >> mode) & 1).astype(np.float64)
    diag = sel if outcome else 1.0 - sel
    return FockOperator(n, np.diag(diag.astype(np.complex128)), "projector")


# ---------------------------------------------------------------------------
# occupation measurements
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MeasurementResult:
    """Outcome, Born probability, and renormalized post-measurement state."""

    outcome: int
    probability: float
    state: FockState


def measure_branch(state: FockState, mode: int, outcome: int) -> MeasurementResult:
    """Deterministically select one occupation branch of ``mode``."""
    if outcome not in (0, 1):
        raise ValueError("outcome must be 0 or 1")
    if mode < 0 or mode >= state.n_modes:
        raise DimensionMismatchError(f"mode {mode} outside 0..{state.n_modes - 1}")
    vec = state.vector
    occupied = ((np.arange(state.dim) >> mode) & 1).astype(bool)
    keep = occupied if outcome else ~occupied
    weights = np.abs(vec) ** 2
    total = float(np.sum(weights))
    prob = float(np.sum(weights[keep])) / total
    if prob < TOL_ZERO:
        raise ImpossibleBranchError(
            f"occupation {outcome} of mode {mode} has probability {prob:.3e}"
        )
    post = np.where(keep, vec, 0.0) / math.sqrt(prob * total)
    return MeasurementResult(
        outcome=outcome,
        probability=prob,
        state=FockState(state.n_modes, post, vector_parity(post, state.n_modes)),
    )


def measure_occupation(
    state: FockState,
    mode: int,
    seed: int | None = None,
    rng: np.random.Generator | None = None,
) -> MeasurementResult:
    """Born-rule occupation measurement of one mode."""
    if rng is None:
        rng = np.random.default_rng(seed)
    vec = state.vector
    occupied = ((np.arange(state.dim) >> mode) & 1).astype(bool)
    weights = np.abs(vec) ** 2
    p_occupied = float(np.sum(weights[occupied])) / float(np.sum(weights))
    outcome = 1 if rng.random() < p_occupied else 0
    return measure_branch(state, mode, outcome)


# ---------------------------------------------------------------------------
# teleportation
# ---------------------------------------------------------------------------

_TELEPORT_MODES = 6
_CONTROL_PAIR = (2, 3)
_TARGET_PAIR = (0, 1)
_BOB_PAIR = (4, 5)

_TELEPORT_GATES: dict[str, tuple[np.ndarray, np.ndarray, np.ndarray]] = {}


def _teleport_gates(kind: Kind) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    if kind not in _TELEPORT_GATES:
        ctrl = QubitEncoding(_CONTROL_PAIR, kind)
        tgt = QubitEncoding(_TARGET_PAIR, kind)
        bob = QubitEncoding(_BOB_PAIR, kind)
        circuit = (
            hadamard(ctrl, _TELEPORT_MODES).matrix
            @ cnot(ctrl, tgt, _TELEPORT_MODES).matrix
        )
        half = math.pi / 2.0
        x_corr = 1j * rotation(bob, (-half, 0.0, 0.0), _TELEPORT_MODES).matrix
        z_corr = 1j * rotation(bob, (0.0, 0.0, -half), _TELEPORT_MODES).matrix
        _TELEPORT_GATES[kind] = (circuit, x_corr, z_corr)
    return _TELEPORT_GATES[kind]


def _teleport_input(alpha: complex, beta: complex, kind: Kind) -> FockState:
    vac = vacuum_state(_TELEPORT_MODES)
    if kind == "odd":
        terms = [
            (alpha, (2, 0, 4)),
            (alpha, (2, 1, 5)),
            (beta, (3, 0, 4)),
            (beta, (3, 1, 5)),
        ]
    else:
        terms = [
            (beta, ()),
            (beta, (0, 1, 4, 5)),
            (alpha, (2, 3)),
            (alpha, (2, 3, 0, 1, 4, 5)),
        ]
    vec = np.zeros(vac.dim, dtype=np.complex128)
    for coeff, modes in terms:
        piece = apply_operator_string(vac, [("create", m) for m in modes])
        vec += coeff * piece.vector
    vec /= math.sqrt(2.0)
    return FockState(_TELEPORT_MODES, vec, vector_parity(vec, _TELEPORT_MODES))


@dataclass(frozen=True)
class TeleportBranch:
    """One exhaustively enumerated measurement branch of the protocol."""

    index: int
    control_outcome: int
    target_outcome: int
    probability: float
    fidelity: float
    bob_block: np.ndarray = field(repr=False)
    state: FockState = field(repr=False)


@dataclass(frozen=True)
class TeleportReport:
    kind: Kind
    alpha: complex
    beta: complex
    input_state: FockState = field(repr=False)
    output_state: FockState = field(repr=False)
    branches: tuple[TeleportBranch, ...] = ()


def run_teleportation(coefficients: tuple[complex, complex], kind: Kind) -> TeleportReport:
    """Teleport one pair-encoded qubit through the shared Bell resource.

    Alice holds modes 0..3 (entangled pair 0,1 and the input qubit on 2,3),
    Bob holds modes 4,5. All four measurement branches are enumerated: the
    control pair's first mode and the target pair's first mode are read out
    (both modes of each pair for the even kind), the branch-conditioned
    X/Z corrections are applied to Bob's pair, and Bob's logical 2x2 block
    is compared with the input coordinates.
    """
    alpha, beta = complex(coefficients[0]), complex(coefficients[1])
    weight = abs(alpha) ** 2 + abs(beta) ** 2
    if abs(weight - 1.0) > TOL_NORM:
        raise NotNormalizedError(f"|alpha|^2 + |beta|^2 = {weight:.12f}, expected 1")
    if kind not in ("odd", "even"):
        raise ValueError(f"unknown encoding kind {kind!r}")
    psi_in = _teleport_input(alpha, beta, kind)
    circuit, x_corr, z_corr = _teleport_gates(kind)
    out_vec = circuit @ psi_in.vector
    psi_out = FockState(_TELEPORT_MODES, out_vec, vector_parity(out_vec, _TELEPORT_MODES))

    part = ModePartition(_TELEPORT_MODES, _BOB_PAIR)
    i0, i1 = QubitEncoding(_BOB_PAIR, kind).logical_indices
    target = np.array([beta, alpha], dtype=np.complex128)

    branches = []
    for m_ctrl in (0, 1):
        first = measure_branch(psi_out, _CONTROL_PAIR[0], m_ctrl)
        stage, prob = first.state, first.probability
        if kind == "even":
            follow = measure_branch(stage, _CONTROL_PAIR[1], m_ctrl)
            stage, prob = follow.state, prob * follow.probability
        for m_tgt in (0, 1):
            second = measure_branch(stage, _TARGET_PAIR[0], m_tgt)
            branch_state, branch_prob = second.state, prob * second.probability
            if kind == "even":
                follow = measure_branch(branch_state, _TARGET_PAIR[1], m_tgt)
                branch_state = follow.state
                branch_prob *= follow.probability
            vec = branch_state.vector
            if m_tgt:
                vec = x_corr @ vec
            if m_ctrl:
                vec = z_corr @ vec
            corrected = FockState(
                _TELEPORT_MODES, vec, vector_parity(vec, _TELEPORT_MODES)
            )
            rho = reduced_state(corrected, part, "a")
            block = rho.matrix[np.ix_((i0, i1), (i0, i1))]
            fidelity = float(np.real(np.vdot(target, block @ target)))
            branches.append(
                TeleportBranch(
                    index=(m_ctrl << 1) | m_tgt,
                    control_outcome=m_ctrl,
                    target_outcome=m_tgt,
                    probability=branch_prob,
                    fidelity=fidelity,
                    bob_block=block,
                    state=corrected,
                )
            )
    return TeleportReport(kind, alpha, beta, psi_in, psi_out, tuple(branches))


# ---------------------------------------------------------------------------
# superdense coding
# ---------------------------------------------------------------------------

_SDC_MODES = 4
_ALICE_PAIR = (0, 1)

_SDC_MESSAGES = tuple(f"{i}{j}{k}" for i in "01" for j in "01" for k in "01")

_SDC_UNITARIES: dict[str, np.ndarray] = {}
_SDC_CODES: dict[str, tuple[tuple[str, np.ndarray], ...]] = {}


def _sdc_seed(variant: str) -> FockState:
    vac = vacuum_state(_SDC_MODES)
    bell = (
        apply_operator_string(vac, [("create", 0), ("create", 2)]).vector
        + apply_operator_string(vac, [("create", 1), ("create", 3)]).vector
    )
    full = apply_operator_string(vac, [("create", m) for m in range(4)]).vector
    if variant == "psi00":
        tilde = full + vac.vector
    elif variant == "psi00prime":
        tilde = full - vac.vector
    else:
        raise ValueError(f"unknown seed variant {variant!r}")
    vec = (bell + tilde) / 2.0
    return FockState(_SDC_MODES, vec, vector_parity(vec, _SDC_MODES))


def _sdc_unitary(bits: str) -> np.ndarray:
    if bits not in _SDC_UNITARIES:
        enc = QubitEncoding(_ALICE_PAIR, "odd")
        half = math.pi / 2.0
        if bits == "00":
            op = np.eye(1 << _SDC_MODES, dtype=np.complex128)
        elif bits == "01":
            op = 1j * rotation(enc, (-half, 0.0, 0.0), _SDC_MODES, both_kinds=True).matrix
        elif bits == "10":
            op = 1j * rotation(enc, (0.0, 0.0, -half), _SDC_MODES, both_kinds=True).matrix
        else:
            op = -rotation(enc, (0.0, -half, 0.0), _SDC_MODES, both_kinds=True).matrix
        _SDC_UNITARIES[bits] = op
    return _SDC_UNITARIES[bits]


def superdense_encode(message: str, variant: str = "psi00") -> FockState:
    """Encode three classical bits with Alice-local operations on the seed.

    The first two bits select identity or one of the dual-kind rotations
    i exp(-i pi/2 (sigma_mu + sigma~_mu)) on Alice's pair; the third applies
    her local parity gate.
    """
    if len(message) != 3 or any(ch not in "01" for ch in message):
        raise ValueError(f"message must be three bits, got {message!r}")
    seed = _sdc_seed(variant)
    vec = _sdc_unitary(message[:2]) @ seed.vector
    if message[2] == "1":
        vec = parity_gate(_ALICE_PAIR, _SDC_MODES).matrix @ vec
    return FockState(_SDC_MODES, vec, vector_parity(vec, _SDC_MODES))


def _code_family(variant: str) -> tuple[tuple[str, np.ndarray], ...]:
    if variant not in _SDC_CODES:
        _SDC_CODES[variant] = tuple(
            (message, superdense_encode(message, variant).vector)
            for message in _SDC_MESSAGES
        )
    return _SDC_CODES[variant]


def superdense_decode(state: FockState, variant: str = "psi00") -> str:
    """Identify which encoded message the state carries."""
    if state.n_modes != _SDC_MODES:
        raise DimensionMismatchError(
            f"superdense states use {_SDC_MODES} modes, got {state.n_modes}"
        )
    for message, code_vec in _code_family(variant):
        overlap = abs(np.vdot(code_vec, state.vector)) ** 2
        if overlap >= 1.0 - _DECODE_TOL:
            return message
    raise UnknownStateError("state does not match any encoded message")
