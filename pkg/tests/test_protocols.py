"""Pair-encoded qubits, gates, measurements, teleportation, superdense coding."""

import math

import numpy as np
import pytest

from fermient import basis_state, make_state, vacuum_state
from fermient.correlations import extended_density
from fermient.entanglement import ModePartition, bipartite_entropy, concurrence, reduced_state
from fermient.errors import (
    DimensionMismatchError,
    ImpossibleBranchError,
    MixedParityError,
    NotNormalizedError,
    OverlappingPairsError,
    UnknownStateError,
)
from fermient.protocols import (
    MeasurementResult,
    QubitEncoding,
    cnot,
    hadamard,
    measure_branch,
    measure_occupation,
    occupation_projector,
    parity_gate,
    pauli,
    rotation,
    run_teleportation,
    superdense_decode,
    superdense_encode,
)

HALF = math.pi / 2.0


def mask_of(*modes):
    out = 0
    for m in modes:
        out |= 1 << m
    return out


def random_qubit(rng):
    raw = rng.normal(size=2) + 1j * rng.normal(size=2)
    raw /= np.linalg.norm(raw)
    return complex(raw[0]), complex(raw[1])


# ---------------------------------------------------------------------------
# Pauli dictionaries
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("kind", ["odd", "even"])
def test_pauli_su2_commutators(kind):
    enc = QubitEncoding((0, 2), kind)
    ops = {ax: pauli(enc, ax, 3).matrix for ax in "xyz"}
    for a, b, c in (("x", "y", "z"), ("y", "z", "x"), ("z", "x", "y")):
        comm = ops[a] @ ops[b] - ops[b] @ ops[a]
        assert np.max(np.abs(comm - 2j * ops[c])) < 1e-12


def test_pauli_kinds_commute_on_shared_pair():
    odd = QubitEncoding((1, 3), "odd")
    even = QubitEncoding((1, 3), "even")
    for ax_o in "xyz":
        for ax_e in "xyz":
            a = pauli(odd, ax_o, 4).matrix
            b = pauli(even, ax_e, 4).matrix
            assert np.max(np.abs(a @ b - b @ a)) < 1e-12


def test_pauli_kernel_on_opposite_sector():
    # sigma~ annihilates singly occupied pairs, sigma annihilates even ones
    odd = QubitEncoding((0, 1), "odd")
    even = QubitEncoding((0, 1), "even")
    for mask in range(8):
        local = mask & 0b11
        pair_parity = bin(local).count("1") % 2
        for ax in "xyz":
            col_even = pauli(even, ax, 3).matrix[:, mask]
            col_odd = pauli(odd, ax, 3).matrix[:, mask]
            if pair_parity == 1:
                assert np.max(np.abs(col_even)) < 1e-12
            else:
                assert np.max(np.abs(col_odd)) < 1e-12


def test_pauli_rejects_bad_inputs():
    with pytest.raises(ValueError):
        QubitEncoding((2, 2), "odd")
    with pytest.raises(ValueError):
        QubitEncoding((0, 1), "weird")
    with pytest.raises(ValueError):
        pauli(QubitEncoding((0, 1), "odd"), "w", 2)
    with pytest.raises(DimensionMismatchError):
        pauli(QubitEncoding((0, 5), "odd"), "x", 3)


# ---------------------------------------------------------------------------
# rotations
# ---------------------------------------------------------------------------

def test_rotation_zero_weights_is_identity():
    enc = QubitEncoding((0, 1), "odd")
    u = rotation(enc, (0.0, 0.0, 0.0), 2).matrix
    assert np.max(np.abs(u - np.eye(4))) < 1e-12


@pytest.mark.parametrize("axis,weights", [("x", (-HALF, 0.0, 0.0)),
                                          ("y", (0.0, -HALF, 0.0)),
                                          ("z", (0.0, 0.0, -HALF))])
def test_dual_rotation_equals_summed_pauli(axis, weights):
    # i exp(-i pi/2 (sigma_mu + sigma~_mu)) = sigma_mu + sigma~_mu
    enc = QubitEncoding((0, 1), "odd")
    summed = (
        pauli(enc, axis, 4).matrix
        + pauli(QubitEncoding((0, 1), "even"), axis, 4).matrix
    )
    u = 1j * rotation(enc, weights, 4, both_kinds=True).matrix
    assert np.max(np.abs(u - summed)) < 1e-11


def test_rotation_identity_on_opposite_sector(rng):
    enc = QubitEncoding((0, 1), "odd")
    weights = tuple(rng.normal(size=3))
    u = rotation(enc, weights, 3).matrix
    for mask in (0b000, 0b011, 0b100, 0b111):
        col = u[:, mask]
        want = np.zeros(8)
        want[mask] = 1.0
        assert np.max(np.abs(col - want)) < 1e-11


def test_hadamard_maps_logical_states():
    inv = 1.0 / math.sqrt(2.0)
    # odd kind: |0_L> = second mode occupied
    h = hadamard(QubitEncoding((0, 1), "odd"), 2).matrix
    zero, one = basis_state(2, 0b10), basis_state(2, 0b01)
    plus = h @ zero.vector
    minus = h @ one.vector
    assert np.max(np.abs(plus - inv * (zero.vector + one.vector))) < 1e-11
    assert np.max(np.abs(minus - inv * (zero.vector - one.vector))) < 1e-11
    assert np.max(np.abs(h @ plus - zero.vector)) < 1e-11
    # even kind: |0_L> = empty pair
    h = hadamard(QubitEncoding((0, 1), "even"), 2).matrix
    zero, one = basis_state(2, 0b00), basis_state(2, 0b11)
    assert np.max(np.abs(h @ zero.vector - inv * (zero.vector + one.vector))) < 1e-11
    assert np.max(np.abs(h @ one.vector - inv * (zero.vector - one.vector))) < 1e-11


# ---------------------------------------------------------------------------
# CNOT
# ---------------------------------------------------------------------------

def test_cnot_odd_fredkin_truth_table():
    gate = cnot(QubitEncoding((0, 1), "odd"), QubitEncoding((2, 3), "odd"), 4)
    # control first mode occupied = logical |1>: swap the target pair
    table = {
        mask_of(0, 2): mask_of(0, 3),
        mask_of(0, 3): mask_of(0, 2),
        mask_of(1, 2): mask_of(1, 2),
        mask_of(1, 3): mask_of(1, 3),
    }
    for src, dst in table.items():
        col = gate.matrix[:, src]
        want = np.zeros(16)
        want[dst] = 1.0
        assert np.max(np.abs(col - want)) < 1e-11


def test_cnot_even_truth_table():
    gate = cnot(QubitEncoding((0, 1), "even"), QubitEncoding((2, 3), "even"), 4)
    # control doubly occupied = logical |1>: swap empty/full on the target
    table = {
        mask_of(0, 1): mask_of(0, 1, 2, 3),
        mask_of(0, 1, 2, 3): mask_of(0, 1),
        0: 0,
        mask_of(2, 3): mask_of(2, 3),
    }
    for src, dst in table.items():
        col = gate.matrix[:, src]
        want = np.zeros(16)
        want[dst] = 1.0
        assert np.max(np.abs(col - want)) < 1e-11


def test_cnot_ignores_intermediate_pair(rng):
    # same gate embedded on modes (0,1) and (4,5): commutes with anything on (2,3)
    ctrl = QubitEncoding((0, 1), "odd")
    tgt = QubitEncoding((4, 5), "odd")
    gate = cnot(ctrl, tgt, 6).matrix
    mid = rotation(QubitEncoding((2, 3), "odd"), tuple(rng.normal(size=3)), 6).matrix
    assert np.max(np.abs(gate @ mid - mid @ gate)) < 1e-10
    midpair = pauli(QubitEncoding((2, 3), "even"), "x", 6).matrix
    assert np.max(np.abs(gate @ midpair - midpair @ gate)) < 1e-10


def test_cnot_guards():
    with pytest.raises(OverlappingPairsError):
        cnot(QubitEncoding((0, 1), "odd"), QubitEncoding((1, 2), "odd"), 3)
    with pytest.raises(ValueError):
        cnot(QubitEncoding((0, 1), "odd"), QubitEncoding((2, 3), "even"), 4)


def test_dual_cnot_is_signed_permutation():
    gate = cnot(
        QubitEncoding((0, 1), "odd"),
        QubitEncoding((2, 3), "odd"),
        4,
        both_kinds=True,
    ).matrix
    mags = np.abs(gate)
    assert np.max(np.abs(mags * (1.0 - mags))) < 1e-11
    assert np.all(np.abs(np.sum(mags, axis=0) - 1.0) < 1e-11)
    assert np.max(np.abs(gate.imag)) < 1e-11
    # flip sector is Mz = -1: control second mode occupied, or control empty;
    # there the gate acts as sigma_x + sigma~_x, swapping 01<->10 and 00<->11
    swap = {0b00: 0b11, 0b01: 0b10, 0b10: 0b01, 0b11: 0b00}
    for src in range(16):
        ctrl_local = src & 0b11
        tgt_local = (src >> 2) & 0b11
        flip = ctrl_local in (0b00, 0b10)
        dst = src if not flip else (ctrl_local | (swap[tgt_local] << 2))
        assert abs(abs(gate[dst, src]) - 1.0) < 1e-11


def test_encoding_confinement():
    # one kind's rotation is the exact identity on the other kind's code space;
    # the CNOT exponent carries a scalar term, leaving the fixed phase e^{i pi/4}
    rot = rotation(QubitEncoding((0, 1), "even"), (0.3, -0.8, 1.1), 4).matrix
    gate = cnot(QubitEncoding((0, 1), "odd"), QubitEncoding((2, 3), "odd"), 4).matrix
    for ctrl_local in (0b00, 0b11):
        for tgt_local in (0b00, 0b11):
            mask = ctrl_local | (tgt_local << 2)
            want = np.zeros(16)
            want[mask] = 1.0
            odd_col = rot[:, mask_of(0) | (tgt_local << 2)]
            assert abs(odd_col[mask_of(0) | (tgt_local << 2)] - 1.0) < 1e-11
            col = gate[:, mask]
            assert np.max(np.abs(col - np.exp(1j * math.pi / 4.0) * want)) < 1e-11


# ---------------------------------------------------------------------------
# measurements and the parity gate
# ---------------------------------------------------------------------------

def test_measurement_deterministic_on_basis_state():
    state = basis_state(4, mask_of(1, 2))
    res = measure_occupation(state, 1, seed=5)
    assert res.outcome == 1 and abs(res.probability - 1.0) < 1e-12
    assert np.max(np.abs(res.state.vector - state.vector)) < 1e-12
    res = measure_occupation(state, 3, seed=5)
    assert res.outcome == 0 and abs(res.probability - 1.0) < 1e-12


def test_measurement_on_bell_pair_is_balanced():
    bell = make_state(4, {mask_of(0, 2): 1.0, mask_of(1, 3): 1.0})
    for outcome in (0, 1):
        res = measure_branch(bell, 0, outcome)
        assert abs(res.probability - 0.5) < 1e-12
        assert abs(res.state.norm() - 1.0) < 1e-12
    # sampled outcomes follow the seeded generator reproducibly
    first = [measure_occupation(bell, 0, seed=s).outcome for s in range(20)]
    second = [measure_occupation(bell, 0, seed=s).outcome for s in range(20)]
    assert first == second
    assert {0, 1} == set(first)


def test_measurement_statistics_match_born_rule(rng):
    from fermient import random_state

    state = random_state(4, rng=rng)
    p1 = sum(
        abs(amp) ** 2 for m, amp in state.nonzero_amplitudes() if (m >> 2) & 1
    )
    shared = np.random.default_rng(99)
    hits = sum(
        measure_occupation(state, 2, rng=shared).outcome for _ in range(4000)
    )
    assert abs(hits / 4000.0 - p1) < 0.03


def test_impossible_branch_raises():
    state = basis_state(3, mask_of(0))
    with pytest.raises(ImpossibleBranchError):
        measure_branch(state, 1, 1)


def test_occupation_projector_is_idempotent():
    proj = occupation_projector(2, 1, 4)
    m = proj.matrix
    assert np.max(np.abs(m @ m - m)) < 1e-12
    comp = occupation_projector(2, 0, 4).matrix
    assert np.max(np.abs(m + comp - np.eye(16))) < 1e-12


def test_parity_gate_eigenvalues():
    gate = parity_gate((0, 1), 4)
    for mask in range(16):
        local = bin(mask & 0b11).count("1") % 2
        want = 1.0 if local else -1.0
        assert abs(gate.matrix[mask, mask] - want) < 1e-12


def test_parity_gate_turns_psi00_into_tilde():
    psi = superdense_encode("000")
    flipped = parity_gate((0, 1), 4).matrix @ psi.vector
    # (beta_00 - beta~_00)/sqrt2
    want = np.zeros(16, dtype=complex)
    want[mask_of(0, 2)] = 0.5
    want[mask_of(1, 3)] = 0.5
    want[0] = -0.5
    want[mask_of(0, 1, 2, 3)] = -0.5
    assert np.max(np.abs(flipped - want)) < 1e-12


# ---------------------------------------------------------------------------
# teleportation
# ---------------------------------------------------------------------------

def test_teleport_input_matches_printed_expansion():
    alpha, beta = 0.6, 0.8
    rep = run_teleportation((alpha, beta), "odd")
    inv = 1.0 / math.sqrt(2.0)
    want = {
        mask_of(0, 2, 4): -alpha * inv,
        mask_of(1, 2, 5): -alpha * inv,
        mask_of(0, 3, 4): -beta * inv,
        mask_of(1, 3, 5): -beta * inv,
    }
    for mask in range(64):
        assert abs(rep.input_state.amplitude(mask) - want.get(mask, 0.0)) < 1e-12

    rep = run_teleportation((alpha, beta), "even")
    want = {
        0: beta * inv,
        mask_of(2, 3): alpha * inv,
        mask_of(0, 1, 4, 5): beta * inv,
        mask_of(0, 1, 2, 3, 4, 5): alpha * inv,
    }
    for mask in range(64):
        assert abs(rep.input_state.amplitude(mask) - want.get(mask, 0.0)) < 1e-12


def test_teleport_odd_output_matches_printed_expansion():
    alpha, beta = 0.6, 0.8
    out = run_teleportation((alpha, beta), "odd").output_state
    want = {
        mask_of(1, 3, 4): -alpha / 2, mask_of(1, 3, 5): -beta / 2,
        mask_of(0, 3, 5): -alpha / 2, mask_of(0, 3, 4): -beta / 2,
        mask_of(1, 2, 4): +alpha / 2, mask_of(1, 2, 5): -beta / 2,
        mask_of(0, 2, 5): +alpha / 2, mask_of(0, 2, 4): -beta / 2,
    }
    for mask in range(64):
        assert abs(out.amplitude(mask) - want.get(mask, 0.0)) < 1e-11


def test_teleport_even_output_matches_printed_expansion():
    alpha, beta = 0.6, 0.8
    out = run_teleportation((alpha, beta), "even").output_state
    want = {
        0: beta / 2,
        mask_of(4, 5): alpha / 2,
        mask_of(0, 1): alpha / 2,
        mask_of(0, 1, 4, 5): beta / 2,
        mask_of(2, 3): beta / 2,
        mask_of(2, 3, 4, 5): -alpha / 2,
        mask_of(0, 1, 2, 3): -alpha / 2,
        mask_of(0, 1, 2, 3, 4, 5): beta / 2,
    }
    for mask in range(64):
        assert abs(out.amplitude(mask) - want.get(mask, 0.0)) < 1e-11


@pytest.mark.parametrize("kind", ["odd", "even"])
def test_teleport_branches_reach_unit_fidelity(kind, rng):
    for _ in range(10):
        alpha, beta = random_qubit(rng)
        report = run_teleportation((alpha, beta), kind)
        assert len(report.branches) == 4
        assert sorted(b.index for b in report.branches) == [0, 1, 2, 3]
        for branch in report.branches:
            assert abs(branch.probability - 0.25) < 1e-11
            assert branch.fidelity > 1.0 - 1e-11
            target = np.array([beta, alpha])
            want = np.outer(target, target.conj())
            assert np.max(np.abs(branch.bob_block - want)) < 1e-9


@pytest.mark.parametrize("kind", ["odd", "even"])
def test_teleport_basis_input_lands_deterministically(kind):
    report = run_teleportation((1.0, 0.0), kind)
    part = ModePartition(6, (4, 5))
    for branch in report.branches:
        rho = reduced_state(branch.state, part, "a")
        diag = np.real(np.diag(rho.matrix))
        if kind == "odd":
            # alpha = 1 puts Bob's fermion on the pair's first mode
            assert abs(diag[0b01] - 1.0) < 1e-11
        else:
            assert abs(diag[0b11] - 1.0) < 1e-11


def test_teleport_rejects_unnormalized_input():
    with pytest.raises(NotNormalizedError):
        run_teleportation((0.9, 0.6), "odd")
    with pytest.raises(ValueError):
        run_teleportation((1.0, 0.0), "huge")


# ---------------------------------------------------------------------------
# superdense coding
# ---------------------------------------------------------------------------

MESSAGES = tuple(f"{i}{j}{k}" for i in "01" for j in "01" for k in "01")

BELL_TABLES = {
    "00": {mask_of(0, 2): 0.5, mask_of(1, 3): 0.5, 0: 0.5, mask_of(0, 1, 2, 3): 0.5},
    "01": {mask_of(0, 3): 0.5, mask_of(1, 2): 0.5, mask_of(0, 1): 0.5, mask_of(2, 3): 0.5},
    "10": {mask_of(0, 2): 0.5, mask_of(1, 3): -0.5, mask_of(0, 1, 2, 3): 0.5, 0: -0.5},
    "11": {mask_of(0, 3): 0.5, mask_of(1, 2): -0.5, mask_of(0, 1): 0.5, mask_of(2, 3): -0.5},
}

ODD_LOCAL = (mask_of(0, 2), mask_of(0, 3), mask_of(1, 2), mask_of(1, 3))


def test_superdense_states_match_bell_combinations():
    for bits, table in BELL_TABLES.items():
        plain = superdense_encode(bits + "0")
        for mask in range(16):
            assert abs(plain.amplitude(mask) - table.get(mask, 0.0)) < 1e-11
        tilde = superdense_encode(bits + "1")
        for mask in range(16):
            sign = 1.0 if mask in ODD_LOCAL else -1.0
            assert abs(tilde.amplitude(mask) - sign * table.get(mask, 0.0)) < 1e-11


@pytest.mark.parametrize("variant", ["psi00", "psi00prime"])
def test_superdense_family_is_orthonormal(variant):
    states = [superdense_encode(m, variant) for m in MESSAGES]
    gram = np.array(
        [[abs(a.overlap(b)) for b in states] for a in states]
    )
    assert np.max(np.abs(gram - np.eye(8))) < 1e-9


@pytest.mark.parametrize("variant", ["psi00", "psi00prime"])
def test_superdense_round_trip(variant):
    for message in MESSAGES:
        state = superdense_encode(message, variant)
        assert superdense_decode(state, variant) == message


def test_superdense_entanglement_values():
    part = ModePartition(4, (0, 1))
    for message in MESSAGES:
        state = superdense_encode(message)
        assert abs(bipartite_entropy(state, part) - 2.0) < 1e-9
        assert abs(concurrence(state) - 1.0) < 1e-9
        primed = superdense_encode(message, "psi00prime")
        assert abs(bipartite_entropy(primed, part) - 2.0) < 1e-9
        assert concurrence(primed) < 1e-9


def test_superdense_decode_guards():
    with pytest.raises(UnknownStateError):
        superdense_decode(basis_state(4, mask_of(0, 2)))
    with pytest.raises(DimensionMismatchError):
        superdense_decode(basis_state(5, mask_of(0, 2)))
    with pytest.raises(ValueError):
        superdense_encode("10")
    with pytest.raises(ValueError):
        superdense_encode("abc")
    with pytest.raises(ValueError):
        superdense_encode("000", variant="psi11")


def test_superdense_operations_are_alice_local(rng):
    # every encoding unitary commutes with operators supported on Bob's modes
    enc = QubitEncoding((0, 1), "odd")
    alice_ops = [
        np.eye(16, dtype=complex),
        1j * rotation(enc, (-HALF, 0.0, 0.0), 4, both_kinds=True).matrix,
        1j * rotation(enc, (0.0, 0.0, -HALF), 4, both_kinds=True).matrix,
        -rotation(enc, (0.0, -HALF, 0.0), 4, both_kinds=True).matrix,
        parity_gate((0, 1), 4).matrix,
    ]
    bob_ops = [
        pauli(QubitEncoding((2, 3), "odd"), "x", 4).matrix,
        pauli(QubitEncoding((2, 3), "even"), "y", 4).matrix,
        parity_gate((2, 3), 4).matrix,
    ]
    weights = rng.normal(size=3)
    bob_ops.append(sum(w * op for w, op in zip(weights, bob_ops)))
    for u in alice_ops:
        for o in bob_ops:
            assert np.max(np.abs(u @ o - o @ u)) < 1e-10


def test_superdense_encoding_preserves_entanglement_bookkeeping():
    # Alice's operations change neither S(rho_B) nor the rho^qsp spectrum
    part = ModePartition(4, (0, 1))
    seed = superdense_encode("000")
    base_spectrum = extended_density(seed).spectrum().values
    base_entropy = bipartite_entropy(seed, part)
    for message in MESSAGES:
        state = superdense_encode(message)
        assert abs(bipartite_entropy(state, part) - base_entropy) < 1e-9
        spec = extended_density(state).spectrum().values
        assert np.max(np.abs(spec - base_spectrum)) < 1e-9


# ---------------------------------------------------------------------------
# classical reduction and the superselection negative example
# ---------------------------------------------------------------------------

def test_gate_set_permutes_basis_states():
    # CNOT plus the discrete X/Z corrections map code SDs to code SDs
    ctrl = QubitEncoding((0, 1), "odd")
    tgt = QubitEncoding((2, 3), "odd")
    ops = [
        cnot(ctrl, tgt, 4).matrix,
        1j * rotation(tgt, (-HALF, 0.0, 0.0), 4).matrix,
        1j * rotation(tgt, (0.0, 0.0, -HALF), 4).matrix,
        parity_gate((0, 1), 4).matrix,
    ]
    for op in ops:
        for src in ODD_LOCAL:
            col = op[:, src]
            mags = np.abs(col)
            top = int(np.argmax(mags))
            assert abs(mags[top] - 1.0) < 1e-11
            assert top in ODD_LOCAL


def test_split_fermion_resource_cannot_teleport():
    # a single fermion shared across the cut has definite-parity branches;
    # the superposed target state itself violates parity superselection
    with pytest.raises(MixedParityError):
        make_state(1, {0: 1.0, 1: 1.0})
    resource = make_state(2, {0b01: 1.0, 0b10: 1.0})
    target = np.array([1.0, 1.0]) / math.sqrt(2.0)
    part = ModePartition(2, (1,), (0,))
    for outcome in (0, 1):
        res = measure_branch(resource, 0, outcome)
        rho_bob = reduced_state(res.state, part, "a").matrix
        assert abs(res.probability - 0.5) < 1e-12
        # Bob's branch state is a parity eigenstate: off-diagonals vanish
        assert abs(rho_bob[0, 1]) < 1e-12
        fidelity = float(np.real(target.conj() @ rho_bob @ target))
        assert abs(fidelity - 0.5) < 1e-12
