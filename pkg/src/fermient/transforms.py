"""Bogoliubov transformations, their Fock-space lifts, and normal forms.

A map with blocks (U, V) sends ``c_i -> a_i = sum_k conj(U[k,i]) c_k +
V[k,i] cdag_k``. Stacked as ``(a; adag) = W^dag (c; cdag)`` with
``W = [[U, V], [conj(V), conj(U)]]`` unitary. Applying map 1 and then map 2
(written in map-1 quasiparticle operators) composes to ``W = W1 @ W2``.

``lift_to_fock`` realizes a map as the 2^n x 2^n unitary that conjugates mode
operators into quasiparticle operators; its global phase is pinned by making
the largest-magnitude amplitude of the new vacuum real positive (ties broken
toward the lowest mask). Composing a diagonal phase map therefore multiplies
transformed amplitudes by predictable pure phases, which is what the
normal-form construction uses to make its two surviving amplitudes real.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .correlations import extended_density
from .errors import (
    DimensionMismatchError,
    LiftFailureError,
    NotSymplecticError,
    NotTwoFermionError,
)
from .fock import (
    FockOperator,
    FockState,
    TOL_ZERO,
    annihilation_matrix,
    creation_matrix,
    make_state,
    vector_parity,
)
from .linalg import hermitian_eigensystem

__all__ = [
    "BogoliubovMap",
    "SchmidtForm",
    "TwoFermionForm",
    "validate_bogoliubov",
    "identity_map",
    "particle_hole_map",
    "random_bogoliubov",
    "compose",
    "lift_to_fock",
    "particle_hole",
    "normal_form",
    "two_fermion_schmidt",
]

_MAP_TOL = 1e-10
_LIFT_TOL = 1e-9
_RESIDUAL_TOL = 1e-8
#: Below this f_+ - f_- gap the eigenvector route is ill-conditioned and the
#: invariant-bilinear route takes over.
_GAP_TOL = 1e-3


@dataclass(frozen=True)
class BogoliubovMap:
    """Validated (U, V) block pair; construct through validate_bogoliubov."""

    U: np.ndarray = field(repr=False)
    V: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        self.U.setflags(write=False)
        self.V.setflags(write=False)

    @property
    def n_modes(self) -> int:
        return self.U.shape[0]

    def w_matrix(self) -> np.ndarray:
        n = self.n_modes
        w = np.zeros((2 * n, 2 * n), dtype=np.complex128)
        w[:n, :n] = self.U
        w[:n, n:] = self.V
        w[n:, :n] = self.V.conj()
        w[n:, n:] = self.U.conj()
        return w


def validate_bogoliubov(U: np.ndarray, V: np.ndarray) -> BogoliubovMap:
    """Check the anticommutation-preserving constraints and wrap the blocks.

    Raises NotSymplecticError with the largest constraint residual if
    UU^dag + VV^dag != 1, UV^T + VU^T != 0, or the stacked W is not unitary.
    """
    U = np.asarray(U, dtype=np.complex128)
    V = np.asarray(V, dtype=np.complex128)
    if U.ndim != 2 or U.shape[0] != U.shape[1] or U.shape != V.shape:
        raise DimensionMismatchError(
            f"expected equal square blocks, got {U.shape} and {V.shape}"
        )
    n = U.shape[0]
    eye = np.eye(n)
    r1 = np.max(np.abs(U @ U.conj().T + V @ V.conj().T - eye))
    r2 = np.max(np.abs(U @ V.T + V @ U.T))
    m = BogoliubovMap(U=U.copy(), V=V.copy())
    w = m.w_matrix()
    r3 = np.max(np.abs(w.conj().T @ w - np.eye(2 * n)))
    worst = float(max(r1, r2, r3))
    if worst > _MAP_TOL:
        raise NotSymplecticError(f"constraint residual {worst:.3e} exceeds {_MAP_TOL}")
    return m


def identity_map(n_modes: int) -> BogoliubovMap:
    return validate_bogoliubov(np.eye(n_modes), np.zeros((n_modes, n_modes)))


def particle_hole_map(n_modes: int, modes: Iterable[int]) -> BogoliubovMap:
    """Map with a_i = cdag_i on the listed modes and a_i = c_i elsewhere."""
    sel = np.zeros(n_modes)
    for m in modes:
        if not 0 <= m < n_modes:
            raise DimensionMismatchError(f"mode {m} out of range")
        sel[m] = 1.0
    return validate_bogoliubov(np.diag(1.0 - sel), np.diag(sel))


def _unitary_map(u: np.ndarray) -> BogoliubovMap:
    return validate_bogoliubov(u, np.zeros_like(u))


def random_bogoliubov(
    n_modes: int,
    seed: int | None = None,
    rng: np.random.Generator | None = None,
    strength: float = 1.0,
) -> BogoliubovMap:
    """Random valid map, as the exponential of a random structured generator."""
    if rng is None:
        rng = np.random.default_rng(seed)
    x = rng.normal(size=(n_modes, n_modes)) + 1j * rng.normal(size=(n_modes, n_modes))
    y = rng.normal(size=(n_modes, n_modes)) + 1j * rng.normal(size=(n_modes, n_modes))
    p = strength * (x - x.conj().T) / 2.0
    q = strength * (y - y.T) / 2.0
    k = np.zeros((2 * n_modes, 2 * n_modes), dtype=np.complex128)
    k[:n_modes, :n_modes] = p
    k[:n_modes, n_modes:] = q
    k[n_modes:, :n_modes] = q.conj()
    k[n_modes:, n_modes:] = p.conj()
    spec = hermitian_eigensystem(1j * k)
    w = spec.vectors @ np.diag(np.exp(-1j * spec.values)) @ spec.vectors.conj().T
    return validate_bogoliubov(w[:n_modes, :n_modes], w[:n_modes, n_modes:])


def compose(first: BogoliubovMap, second: BogoliubovMap) -> BogoliubovMap:
    """Map equivalent to applying ``first`` and then ``second``."""
    if first.n_modes != second.n_modes:
        raise DimensionMismatchError("cannot compose maps of different sizes")
    n = first.n_modes
    w = first.w_matrix() @ second.w_matrix()
    return validate_bogoliubov(w[:n, :n], w[:n, n:])


# ---------------------------------------------------------------------------
# Fock-space lift
# ---------------------------------------------------------------------------


def _quasiparticle_matrices(bmap: BogoliubovMap) -> list[np.ndarray]:
    n = bmap.n_modes
    cs = [annihilation_matrix(n, k) for k in range(n)]
    cds = [creation_matrix(n, k) for k in range(n)]
    out = []
    for i in range(n):
        a = np.zeros_like(cs[0])
        for k in range(n):
            a += np.conj(bmap.U[k, i]) * cs[k] + bmap.V[k, i] * cds[k]
        out.append(a)
    return out


def lift_to_fock(bmap: BogoliubovMap, n_modes: int) -> FockOperator:
    """Unitary Fock-space representative of a Bogoliubov map.

    The returned operator satisfies ``Ue c_i Ue^dag = a_i`` as dense matrices,
    with residual below 1e-9. Column ``m`` is the ascending quasiparticle
    string ``adag_{i1} ... adag_{ik}`` applied to the new vacuum; the vacuum
    phase is fixed by making its largest-magnitude amplitude real positive.

    Raises LiftFailureError if no vector is annihilated by every a_i or if the
    construction fails its unitarity/conjugation checks.
    """
    if bmap.n_modes != n_modes:
        raise DimensionMismatchError(
            f"map on {bmap.n_modes} modes does not match n_modes={n_modes}"
        )
    dim = 1 << n_modes
    a_ops = _quasiparticle_matrices(bmap)
    number_op = sum(op.conj().T @ op for op in a_ops)
    spec = hermitian_eigensystem(number_op)
    if spec.values[-1] > _LIFT_TOL:
        raise LiftFailureError(
            f"no quasiparticle vacuum: smallest occupation {spec.values[-1]:.3e}"
        )
    vacuum = spec.vectors[:, -1]
    anchor = int(np.argmax(np.abs(vacuum)))
    vacuum = vacuum * (np.abs(vacuum[anchor]) / vacuum[anchor])

    cols = np.zeros((dim, dim), dtype=np.complex128)
    cols[:, 0] = vacuum
    adags = [op.conj().T for op in a_ops]
    for mask in range(1, dim):
        low = (mask & -mask).bit_length() - 1
        cols[:, mask] = adags[low] @ cols[:, mask ^ (1 << low)]

    unit_defect = np.max(np.abs(cols.conj().T @ cols - np.eye(dim)))
    if unit_defect > _LIFT_TOL:
        raise LiftFailureError(f"lift not unitary, defect {unit_defect:.3e}")
    c_ops = [annihilation_matrix(n_modes, k) for k in range(n_modes)]
    for i in range(n_modes):
        conj_defect = np.max(np.abs(cols @ c_ops[i] @ cols.conj().T - a_ops[i]))
        if conj_defect > _LIFT_TOL:
            raise LiftFailureError(
                f"conjugation residual {conj_defect:.3e} on mode {i}"
            )
    return FockOperator(n_modes=n_modes, matrix=cols, kind="unitary")


def particle_hole(state: FockState, modes: Iterable[int]) -> FockState:
    """Particle-hole transform of the state on the given modes."""
    bmap = particle_hole_map(state.n_modes, modes)
    return lift_to_fock(bmap, state.n_modes).apply(state)


def transformed_amplitudes(state: FockState, bmap: BogoliubovMap) -> np.ndarray:
    """Coefficients of the state in the quasiparticle Slater basis of ``bmap``."""
    lifted = lift_to_fock(bmap, state.n_modes)
    return lifted.matrix.conj().T @ state.vector


# ---------------------------------------------------------------------------
# normal form (n = 4)
# ---------------------------------------------------------------------------

_MASK_PLUS = 0b0011
_MASK_MINUS = 0b1100

#: Quasiparticle mode pairings that split the normal form into two qubits.
PAIRINGS = {
    "odd_local": ((0, 2), (1, 3)),
    "even_local": ((0, 1), (2, 3)),
}

_EVEN_MASKS = (0, 3, 5, 6, 9, 10, 12, 15)
#: Complement pairs of even masks and the sign each contributes to the
#: concurrence quartic: C = |z^T Q z| over even-sector amplitudes z.
_MAGIC_PAIRS = (((3, 12), 1.0), ((5, 10), -1.0), ((9, 6), 1.0), ((0, 15), -1.0))


@dataclass(frozen=True)
class SchmidtForm:
    """Two-amplitude normal form of a definite-parity four-mode state."""

    alpha_plus: float
    alpha_minus: float
    map: BogoliubovMap
    pairing: dict
    transformed: FockState = field(repr=False)
    f_plus: float
    f_minus: float

    def __post_init__(self) -> None:
        if not (self.alpha_plus >= self.alpha_minus >= 0.0):
            raise LiftFailureError("normal-form amplitudes out of order")
        if abs(self.alpha_plus**2 + self.alpha_minus**2 - 1.0) > 1e-10:
            raise LiftFailureError("normal-form amplitudes not normalized")
        if (
            abs(self.alpha_plus**2 - self.f_plus) > 1e-9
            or abs(self.alpha_minus**2 - self.f_minus) > 1e-9
        ):
            raise LiftFailureError(
                "normal-form amplitudes disagree with the extended spectrum"
            )


def _swap_halves(vec: np.ndarray) -> np.ndarray:
    n = vec.shape[0] // 2
    return np.concatenate([vec[n:], vec[:n]])


def _assemble_pairing_map(g: np.ndarray) -> BogoliubovMap:
    """Build a diagonalizing map from particle-hole-paired eigenvector quartets."""
    spec = hermitian_eigensystem(g)
    e_plus = spec.vectors[:, :4]
    e_minus = spec.vectors[:, 4:]
    w3 = e_minus[:, 0]
    w4 = e_minus[:, 1]
    t3 = _swap_halves(w3.conj())
    t4 = _swap_halves(w4.conj())
    # coordinates of the conjugated pair inside the f_+ eigenspace
    b = e_plus.conj().T @ np.column_stack([t3, t4])
    u, _, _ = np.linalg.svd(b)
    coords = u[:, 2:]
    w1 = e_plus @ coords[:, 0]
    w2 = e_plus @ coords[:, 1]
    cols = np.column_stack(
        [
            w1,
            w2,
            w3,
            w4,
            _swap_halves(w1.conj()),
            _swap_halves(w2.conj()),
            t3,
            t4,
        ]
    )
    return validate_bogoliubov(cols[:4, :4], np.conj(cols[4:, :4]))


def _magic_matrix() -> np.ndarray:
    m = np.zeros((8, 8), dtype=np.complex128)
    idx = {mask: k for k, mask in enumerate(_EVEN_MASKS)}
    col = 0
    for (a, b), sign in _MAGIC_PAIRS:
        phase = np.exp(-1j * np.pi / 4) if sign > 0 else np.exp(1j * np.pi / 4)
        block = phase / np.sqrt(2) * np.array([[1.0, 1j], [1j, 1.0]])
        rows = (idx[a], idx[b])
        for bi in range(2):
            m[rows[0], col + bi] = block[0, bi]
            m[rows[1], col + bi] = block[1, bi]
        col += 2
    return m


def _magic_q() -> np.ndarray:
    q = np.zeros((8, 8))
    idx = {mask: k for k, mask in enumerate(_EVEN_MASKS)}
    for (a, b), sign in _MAGIC_PAIRS:
        q[idx[a], idx[b]] = sign
        q[idx[b], idx[a]] = sign
    return q


def _even_sector(vec: np.ndarray) -> np.ndarray:
    return np.array([vec[m] for m in _EVEN_MASKS], dtype=np.complex128)


def _degenerate_seed_map(state: FockState) -> BogoliubovMap:
    """Diagonalizing map for states with f_+ ~ f_- (concurrence near 1).

    Works in invariant-bilinear coordinates of the even sector, where every
    lift acts as a real rotation times a phase: an auxiliary state sharing the
    state's two real coordinate vectors but with a healthy spectral gap is
    normal-formed by the eigenvector route, and the resulting map sends the
    original state onto the same two-mask plane.
    """
    m = _magic_matrix()
    q = _magic_q()
    z = _even_sector(state.vector)
    bil = complex(z @ q @ z)
    chi = -np.angle(bil) / 2.0 if abs(bil) > TOL_ZERO else 0.0
    z = z * np.exp(1j * chi)
    c = m.conj().T @ z
    x = np.real(c)
    y = np.imag(c)
    xn = np.linalg.norm(x)
    if xn <= TOL_ZERO:
        raise LiftFailureError("degenerate route lost the dominant coordinate")
    xh = x / xn
    yn = np.linalg.norm(y)
    if yn >= 1e-9:
        u = y / yn
        u = u - (u @ xh) * xh
        u /= np.linalg.norm(u)
    else:
        u = np.zeros(8)
        u[int(np.argmin(np.abs(xh)))] = 1.0
        u = u - (u @ xh) * xh
        u /= np.linalg.norm(u)
    delta = 0.02
    c_aux = np.sqrt(1 - delta) * xh + 1j * np.sqrt(delta) * u
    z_aux = m @ c_aux
    aux = make_state(4, {mask: z_aux[k] for k, mask in enumerate(_EVEN_MASKS)})
    return _assemble_pairing_map(extended_density(aux).m)


def normal_form(state: FockState) -> SchmidtForm:
    """Quasiparticle basis in which the state has exactly two amplitudes.

    The returned map sends the state onto masks {0b0011, 0b1100} with real
    amplitudes alpha_plus >= alpha_minus >= 0 whose squares equal the distinct
    eigenvalues of the extended one-body matrix. Odd-parity input is first
    converted to even parity by a particle-hole transform on mode 0, which the
    returned composite map includes.
    """
    if state.n_modes != 4:
        raise DimensionMismatchError("normal form is defined for 4 modes")

    total = identity_map(4)
    work = state
    if state.parity == "odd":
        total = particle_hole_map(4, {0})
        work = FockOperator(
            4, lift_to_fock(total, 4).matrix.conj().T, kind="unitary"
        ).apply(state)

    g = extended_density(work).m
    spec = hermitian_eigensystem(g)
    f_plus = float(np.mean(spec.values[:4]))
    f_minus = float(np.mean(spec.values[4:]))
    if f_plus - f_minus > _GAP_TOL:
        core = _assemble_pairing_map(g)
    else:
        core = _degenerate_seed_map(work)
    total = compose(total, core)

    phi = transformed_amplitudes(state, total)
    if abs(phi[_MASK_PLUS]) < abs(phi[_MASK_MINUS]):
        perm = np.zeros((4, 4))
        perm[[2, 3, 0, 1], [0, 1, 2, 3]] = 1.0
        total = compose(total, _unitary_map(perm))
        phi = transformed_amplitudes(state, total)

    theta = np.zeros(4)
    theta[0] = -np.angle(phi[_MASK_PLUS]) if abs(phi[_MASK_PLUS]) > TOL_ZERO else 0.0
    theta[2] = -np.angle(phi[_MASK_MINUS]) if abs(phi[_MASK_MINUS]) > TOL_ZERO else 0.0
    total = compose(total, _unitary_map(np.diag(np.exp(-1j * theta))))
    phi = transformed_amplitudes(state, total)

    off = np.linalg.norm(np.delete(phi, [_MASK_PLUS, _MASK_MINUS]))
    if off > _RESIDUAL_TOL:
        raise LiftFailureError(f"normal form residual {off:.3e}")
    alpha_plus = float(max(phi[_MASK_PLUS].real, 0.0))
    alpha_minus = float(max(phi[_MASK_MINUS].real, 0.0))
    transformed = FockState(
        n_modes=4, vector=phi.copy(), parity=vector_parity(phi, 4)
    )
    return SchmidtForm(
        alpha_plus=alpha_plus,
        alpha_minus=alpha_minus,
        map=total,
        pairing=dict(PAIRINGS),
        transformed=transformed,
        f_plus=f_plus,
        f_minus=f_minus,
    )


# ---------------------------------------------------------------------------
# fixed-number two-fermion Schmidt pairs (any n)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TwoFermionForm:
    """Pairwise Schmidt data of a fixed-number two-fermion state."""

    coefficients: tuple[float, ...]
    pairs: tuple[tuple[int, int], ...]
    map: BogoliubovMap
    transformed_alpha: np.ndarray = field(repr=False)


def _amplitude_matrix(state: FockState) -> np.ndarray:
    n = state.n_modes
    alpha = np.zeros((n, n), dtype=np.complex128)
    weight = 0.0
    for mask, amp in state.nonzero_amplitudes():
        bits = [b for b in range(n) if mask >> b & 1]
        if len(bits) != 2:
            weight += abs(amp) ** 2
            continue
        i, j = bits
        alpha[i, j] = amp
        alpha[j, i] = -amp
    if weight > 1e-10:
        raise NotTwoFermionError(
            f"state carries weight {weight:.3e} outside the two-particle sector"
        )
    return alpha


def two_fermion_schmidt(state: FockState) -> TwoFermionForm:
    """Rotate a two-fermion state into paired form sum_k s_k adag_{2k} adag_{2k+1}.

    The unitary is number-conserving (V = 0); the transformed amplitude matrix
    is block diagonal with 2x2 antisymmetric blocks carrying the coefficients
    s_k >= 0, whose squares are the (pairwise degenerate) one-body eigenvalues.
    """
    alpha = _amplitude_matrix(state)
    n = state.n_modes
    remaining = np.eye(n, dtype=np.complex128)
    columns: list[np.ndarray] = []
    coeffs: list[float] = []
    a_work = alpha
    while remaining.shape[1] >= 2:
        m = a_work @ a_work.conj().T
        spec = hermitian_eigensystem(m)
        s2 = float(spec.values[0])
        if s2 <= 1e-14:
            break
        s = np.sqrt(s2)
        u1 = spec.vectors[:, 0]
        u2 = a_work @ u1.conj() / s
        q1 = u1.conj()
        q2 = u2.conj()
        columns.append(remaining @ q2)
        columns.append(remaining @ q1)
        coeffs.append(s)
        # restrict to the orthocomplement of the extracted pair
        basis = np.column_stack([q1, q2])
        proj = np.eye(remaining.shape[1]) - basis @ basis.conj().T
        u, _, _ = np.linalg.svd(proj)
        keep = u[:, : remaining.shape[1] - 2]
        a_work = keep.T @ a_work @ keep
        remaining = remaining @ keep
    if remaining.shape[1] > 0:
        for k in range(remaining.shape[1]):
            columns.append(remaining[:, k])
    qmat = np.column_stack(columns)
    bmap = validate_bogoliubov(qmat.conj(), np.zeros_like(qmat))

    alpha_prime = qmat.T @ alpha @ qmat
    pairs = tuple((2 * k, 2 * k + 1) for k in range(n // 2))
    coefficients = tuple(coeffs + [0.0] * (n // 2 - len(coeffs)))
    target = np.zeros_like(alpha_prime)
    for k, (i, j) in enumerate(pairs):
        target[i, j] = coefficients[k]
        target[j, i] = -coefficients[k]
    if np.max(np.abs(alpha_prime - target)) > _RESIDUAL_TOL:
        raise LiftFailureError("two-fermion pairing failed its reconstruction check")
    return TwoFermionForm(
        coefficients=coefficients,
        pairs=pairs,
        map=bmap,
        transformed_alpha=alpha_prime,
    )
