"""VQE-generated quantum circuit datasets and fidelity-based clustering."""

__version__ = "0.1.0"

from .analysis import (
    ClusteringResult,
    DistanceMatrix,
    Embedding,
    adjusted_rand_index,
    distance_matrix_exact,
    distance_matrix_shots,
    ground_state_fidelity,
    kmedoids,
    mds_embed,
)
from .ansatz import (
    FAMILIES,
    PAIR_KINDS,
    AnsatzSpec,
    PairSet,
    build_ansatz,
    n_parameters,
    pair_set,
    parameter_init,
)
from .dataset import (
    DatasetConfig,
    Manifest,
    export_qasm,
    generate_dataset,
    load_manifest,
    rebuild_circuit,
    save_manifest,
    verify_manifest,
)
from .estimators import ClassicalMDS, KMedoids
from .fermions import FermionProduct, jordan_wigner
from .hamiltonians import (
    DENSE_QUBIT_LIMIT,
    LABELS,
    EigensolverError,
    GroundSpace,
    build_hamiltonian,
    ground_space,
    valid_labels,
)
from .pauli import PauliString, PauliSum, pauli_multiply
from .qasm import QasmParseError, circuit_to_qasm, decompose_circuit, parse_qasm
from .seeding import derive_seed
from .simulator import (
    CircuitIR,
    Gate,
    StateVector,
    apply_gate,
    bind_params,
    circuit_inverse,
    concat_circuits,
    energy_and_gradient,
    energy_gradient,
    expectation,
    get_engine,
    overlap_fidelity,
    run_circuit,
    sample_counts,
    set_engine,
)
from .vqe import (
    CircuitRecord,
    OptimizationTrace,
    OptimizerConfig,
    bfgs_minimize,
    vqe_optimize,
)

__all__ = [
    "__version__",
    "AnsatzSpec",
    "CircuitIR",
    "CircuitRecord",
    "ClassicalMDS",
    "ClusteringResult",
    "DENSE_QUBIT_LIMIT",
    "DatasetConfig",
    "DistanceMatrix",
    "EigensolverError",
    "Embedding",
    "FAMILIES",
    "FermionProduct",
    "Gate",
    "GroundSpace",
    "KMedoids",
    "LABELS",
    "Manifest",
    "OptimizationTrace",
    "OptimizerConfig",
    "PAIR_KINDS",
    "PairSet",
    "PauliString",
    "PauliSum",
    "QasmParseError",
    "StateVector",
    "adjusted_rand_index",
    "apply_gate",
    "bfgs_minimize",
    "bind_params",
    "build_ansatz",
    "build_hamiltonian",
    "circuit_inverse",
    "circuit_to_qasm",
    "concat_circuits",
    "decompose_circuit",
    "derive_seed",
    "distance_matrix_exact",
    "distance_matrix_shots",
    "energy_and_gradient",
    "energy_gradient",
    "expectation",
    "export_qasm",
    "generate_dataset",
    "get_engine",
    "ground_space",
    "ground_state_fidelity",
    "jordan_wigner",
    "kmedoids",
    "load_manifest",
    "mds_embed",
    "n_parameters",
    "overlap_fidelity",
    "pair_set",
    "parameter_init",
    "parse_qasm",
    "pauli_multiply",
    "rebuild_circuit",
    "run_circuit",
    "sample_counts",
    "save_manifest",
    "set_engine",
    "valid_labels",
    "verify_manifest",
    "vqe_optimize",
]
