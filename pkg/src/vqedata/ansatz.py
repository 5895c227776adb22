"""The ten ansatz families, built from ordered pair sets.

Pair sets are generated exactly by their defining index formulas and then
filtered of any pair touching an index outside [1, N].  Circuit layers
follow the between-group composition order (initial single-qubit layer
first for the HE families, final RY layer last for the brick-block
families); within a layer, qubit loops and pair sets are traversed in
ascending list order, and parameter slots are numbered in gate-application
order.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .pauli import PauliSum
from .simulator import CircuitIR, Gate

FAMILIES = (
    "Hamiltonian",
    "HE",
    "Complete-HE",
    "Ladder-HE",
    "Cross-Ladder-HE",
    "1D-BB",
    "Stair-BB",
    "Complete-BB",
    "Ladder-BB",
    "Cross-Ladder-BB",
)

PAIR_KINDS = ("chain", "stair", "complete", "ladder", "cross_ladder")

_FAMILY_PAIRS = {
    "HE": "chain",
    "Complete-HE": "complete",
    "Ladder-HE": "ladder",
    "Cross-Ladder-HE": "cross_ladder",
    "1D-BB": "chain",
    "Stair-BB": "stair",
    "Complete-BB": "complete",
    "Ladder-BB": "ladder",
    "Cross-Ladder-BB": "cross_ladder",
}


@dataclass(frozen=True)
class PairSet:
    kind: str
    pairs: tuple[tuple[int, int], ...]

    def __len__(self):
        return len(self.pairs)


def _raw_pairs(kind: str, n: int):
    if kind == "chain":
        # odd bricks (n-1,n) .. (1,2), then even bricks (n-2,n-1) .. (0,1);
        # the trailing (0,1) runs off the register and is filtered below
        return [(n - 2 * j - 1, n - 2 * j) for j in range(n // 2)] + [
            (n - 2 * j, n - 2 * j + 1) for j in range(1, n // 2 + 1)
        ]
    if kind == "stair":
        return [(n - k, n - k + 1) for k in range(1, n)]
    if kind == "complete":
        return [(n - k, n - kp) for k in range(1, n) for kp in range(0, k)]
    if kind == "ladder":
        return (
            [(n - 2 * j - 1, n - 2 * j + 1) for j in range(1, n // 2)]
            + [(n - 2 * j, n - 2 * j + 2) for j in range(1, n // 2)]
            + [(2 * j - 1, 2 * j) for j in range(1, n // 2 + 1)]
        )
    if kind == "cross_ladder":
        extra = []
        for j in range(1, n // 2):
            extra.append((n - 2 * j, n - 2 * j + 1))
            extra.append((n - 2 * j - 1, n - 2 * j + 2))
        return _raw_pairs("ladder", n) + extra
    raise ValueError(f"unknown pair-set kind {kind!r}")


def pair_set(kind: str, n_qubits: int) -> PairSet:
    """Ordered qubit pairs for a 2-qubit gate layer.

    Pairs are emitted in formula order; any pair with an index outside
    [1, n_qubits] is dropped (the chain brick pattern runs off the edge
    of the register and produces (0, 1) at its largest index).
    """
    if n_qubits < 2:
        raise ValueError("pair sets need at least 2 qubits")
    kept = [
        (a, b)
        for a, b in _raw_pairs(kind, n_qubits)
        if 1 <= a <= n_qubits and 1 <= b <= n_qubits
    ]
    return PairSet(kind=kind, pairs=tuple(kept))


@dataclass(frozen=True)
class AnsatzSpec:
    """Which circuit to build: family, size, depth, and (for the
    Hamiltonian family) the source operator whose terms become rotations."""

    family: str
    n_qubits: int
    depth: int
    hamiltonian: PauliSum | None = None

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}; expected one of {FAMILIES}")
        if self.n_qubits < 2 or self.n_qubits % 2:
            raise ValueError("n_qubits must be even and >= 2")
        if self.depth < 1:
            raise ValueError("depth must be >= 1")
        if self.family == "Hamiltonian":
            if self.hamiltonian is None:
                raise ValueError("Hamiltonian family needs a source PauliSum")
            if self.hamiltonian.n_qubits != self.n_qubits:
                raise ValueError("source operator size differs from n_qubits")


def n_parameters(spec: AnsatzSpec) -> int:
    """Slot count: HE 2N(D+1); BB N + 4|P|D; Hamiltonian D(|terms| + 2N)."""
    n, d = spec.n_qubits, spec.depth
    if spec.family == "Hamiltonian":
        return d * (len(spec.hamiltonian.terms) + 2 * n)
    pairs = pair_set(_FAMILY_PAIRS[spec.family], n)
    if spec.family.endswith("HE"):
        return 2 * n * (d + 1)
    return n + 4 * len(pairs) * d


def build_ansatz(spec: AnsatzSpec) -> CircuitIR:
    """CircuitIR for the family; every rotation is an independent slot."""
    n, d = spec.n_qubits, spec.depth
    gates: list[Gate] = []
    slot = 0

    def rot(kind, q):
        nonlocal slot
        gates.append(Gate(kind=kind, qubits=(q,), slot=slot))
        slot += 1

    if spec.family == "Hamiltonian":
        for _ in range(d):
            for q in range(1, n + 1):
                rot("rz", q)
                rot("rx", q)
            for _, s in spec.hamiltonian.terms:
                gates.append(Gate(kind="pauli_rot", generator=s, slot=slot))
                slot += 1
    elif spec.family.endswith("HE"):
        pairs = pair_set(_FAMILY_PAIRS[spec.family], n).pairs
        for q in range(1, n + 1):
            rot("ry", q)
            rot("rz", q)
        for _ in range(d):
            for a, b in pairs:
                gates.append(Gate(kind="cz", qubits=(a, b)))
            for q in range(1, n + 1):
                rot("ry", q)
                rot("rz", q)
    else:
        pairs = pair_set(_FAMILY_PAIRS[spec.family], n).pairs
        for _ in range(d):
            for a, b in pairs:
                rot("ry", a)
                rot("ry", b)
                gates.append(Gate(kind="cnot", qubits=(a, b)))
                rot("ry", a)
                rot("ry", b)
                gates.append(Gate(kind="cnot", qubits=(a, b)))
        for q in range(1, n + 1):
            rot("ry", q)
    return CircuitIR(n, tuple(gates), slot)


def parameter_init(spec: AnsatzSpec, restart_seed) -> np.ndarray:
    """Initial angles: U[0, 0.1) for the Hamiltonian family, U[-2pi, 2pi)
    otherwise; deterministic given the seed."""
    rng = np.random.default_rng(restart_seed)
    p = n_parameters(spec)
    if spec.family == "Hamiltonian":
        return rng.uniform(0.0, 0.1, p)
    return rng.uniform(-2 * np.pi, 2 * np.pi, p)
