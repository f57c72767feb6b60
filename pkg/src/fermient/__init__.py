"""Exact Fock-space simulation of small fermionic systems.

Core layers:

- ``fock``: dense states, mode operators, parity bookkeeping.
- ``linalg``: self-contained Hermitian eigensolver for correlation matrices.
- ``correlations``: one-body and extended one-body density matrices, entropies.
- ``transforms``: Bogoliubov maps, Fock-space lifts, normal forms.
- ``entanglement``: bipartition reduced states, concurrence, majorization.
- ``protocols``: parity-aware qubit encodings, teleportation, superdense coding.
- ``io`` / ``cli``: JSON state format and the ``fermient`` command.
"""

from .correlations import (
    ExtendedDensity,
    OneBodyDensity,
    extended_density,
    matrix_entropy,
    one_body,
    qsp_entropy,
    sp_entropy,
)
from .entanglement import (
    LocalParitySplit,
    ModePartition,
    ReducedDensity,
    bipartite_entropy,
    concurrence,
    concurrence_even,
    concurrence_odd,
    local_parity_split,
    majorization_check,
    reduced_state,
    schmidt_concurrence,
)
from .errors import (
    DimensionMismatchError,
    FermionError,
    HermiticityDefectError,
    ImpossibleBranchError,
    LiftFailureError,
    MixedParityError,
    NotHermitianError,
    NotNormalizedError,
    NotSymplecticError,
    NotTwoFermionError,
    OverlappingPairsError,
    SideMismatchError,
    StateFormatError,
    UnknownStateError,
    WrongParityError,
    WrongShapeError,
    ZeroNormError,
)
from .fock import (
    FockOperator,
    FockState,
    TOL_NORM,
    TOL_ZERO,
    apply_annihilation,
    apply_creation,
    apply_operator_string,
    basis_state,
    inner_product,
    make_state,
    number_parity,
    random_state,
    vacuum_state,
)
from .io import dump_state, load_state, state_from_dict, state_to_dict
from .protocols import (
    MeasurementResult,
    QubitEncoding,
    TeleportBranch,
    TeleportReport,
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
from .transforms import (
    BogoliubovMap,
    SchmidtForm,
    TwoFermionForm,
    compose,
    identity_map,
    lift_to_fock,
    normal_form,
    particle_hole,
    particle_hole_map,
    random_bogoliubov,
    transformed_amplitudes,
    two_fermion_schmidt,
    validate_bogoliubov,
)

__all__ = [
    "FermionError",
    "MixedParityError",
    "ZeroNormError",
    "DimensionMismatchError",
    "HermiticityDefectError",
    "NotHermitianError",
    "NotSymplecticError",
    "LiftFailureError",
    "NotTwoFermionError",
    "WrongParityError",
    "SideMismatchError",
    "WrongShapeError",
    "NotNormalizedError",
    "OverlappingPairsError",
    "ImpossibleBranchError",
    "UnknownStateError",
    "StateFormatError",
    "FockState",
    "FockOperator",
    "TOL_NORM",
    "TOL_ZERO",
    "make_state",
    "basis_state",
    "vacuum_state",
    "random_state",
    "apply_creation",
    "apply_annihilation",
    "apply_operator_string",
    "inner_product",
    "number_parity",
    "OneBodyDensity",
    "ExtendedDensity",
    "one_body",
    "extended_density",
    "sp_entropy",
    "qsp_entropy",
    "matrix_entropy",
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
    "transformed_amplitudes",
    "normal_form",
    "two_fermion_schmidt",
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
    "QubitEncoding",
    "MeasurementResult",
    "TeleportBranch",
    "TeleportReport",
    "pauli",
    "rotation",
    "hadamard",
    "cnot",
    "parity_gate",
    "occupation_projector",
    "measure_branch",
    "measure_occupation",
    "run_teleportation",
    "superdense_encode",
    "superdense_decode",
    "state_to_dict",
    "state_from_dict",
    "dump_state",
    "load_state",
]

__version__ = "0.1.0"
