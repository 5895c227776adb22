"""Fidelity distances, clustering, ARI, and MDS over generated records.

The distance between two optimized circuits is one minus the squared
overlap of their output states; the shot-based variant estimates that
overlap by running one circuit forward, the other inverted, and counting
all-zeros outcomes.
"""

from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .dataset import rebuild_circuit
from .estimators import ClassicalMDS, KMedoids
from .hamiltonians import GroundSpace
from .seeding import derive_seed
from .simulator import (
    bind_params,
    circuit_inverse,
    concat_circuits,
    run_circuit,
    sample_counts,
)
from .validation import check_distance_matrix, check_labels


@dataclass(frozen=True)
class DistanceMatrix:
    ids: Tuple[str, ...]
    values: np.ndarray

    def __post_init__(self):
        d = check_distance_matrix(self.values, unit_interval=True)
        if len(self.ids) != d.shape[0]:
            raise ValueError("one id per row required")
        object.__setattr__(self, "ids", tuple(self.ids))
        object.__setattr__(self, "values", d)

    @property
    def size(self) -> int:
        return self.values.shape[0]

    def to_csv(self, path) -> None:
        lines = [",".join(self.ids)]
        for row in self.values:
            lines.append(",".join(repr(float(x)) for x in row))
        Path(path).write_text("\n".join(lines) + "\n")

    @classmethod
    def from_csv(cls, path) -> "DistanceMatrix":
        lines = Path(path).read_text().splitlines()
        ids = tuple(lines[0].split(","))
        values = np.array([[float(x) for x in line.split(",")]
                           for line in lines[1:]])
        return cls(ids, values)


@dataclass
class ClusteringResult:
    assignments: np.ndarray
    medoid_indices: np.ndarray
    objective: float
    trial_aris: Optional[List[float]]
    mean_ari: Optional[float]
    best_ari: Optional[float]

    def to_dict(self) -> dict:
        return {
            "assignments": [int(x) for x in self.assignments],
            "medoid_indices": [int(x) for x in self.medoid_indices],
            "objective": self.objective,
            "trial_aris": self.trial_aris,
            "mean_ari": self.mean_ari,
            "best_ari": self.best_ari,
        }


@dataclass
class Embedding:
    points: np.ndarray
    eigenvalues: np.ndarray
    stress: float

    def to_dict(self) -> dict:
        return {
            "points": [[float(x) for x in row] for row in self.points],
            "eigenvalues": [float(x) for x in self.eigenvalues],
            "stress": self.stress,
        }


def _record_circuit(rec):
    # records may carry a prebuilt circuit; manifest records are rebuilt
    circuit = getattr(rec, "circuit", None)
    return circuit if circuit is not None else rebuild_circuit(rec)


def _statevectors(records) -> Tuple[np.ndarray, Tuple[str, ...]]:
    sizes = {r.n_qubits for r in records}
    if len(sizes) != 1:
        raise ValueError(f"records mix qubit counts: {sorted(sizes)}")
    states = np.empty((len(records), 2 ** sizes.pop()), dtype=complex)
    for i, rec in enumerate(records):
        states[i] = run_circuit(_record_circuit(rec),
                                np.asarray(rec.params)).data
    return states, tuple(r.record_id for r in records)


def distance_matrix_exact(records: Sequence) -> DistanceMatrix:
    """d = 1 - |<psi_m|psi_m'>|^2 over all record pairs."""
    if not records:
        raise ValueError("no records")
    states, ids = _statevectors(records)
    gram = states.conj() @ states.T
    fid = np.abs(gram) ** 2
    d = 1.0 - fid
    np.clip(d, 0.0, 1.0, out=d)
    np.fill_diagonal(d, 0.0)
    d = (d + d.T) / 2
    return DistanceMatrix(ids, d)


def distance_matrix_shots(records: Sequence, shots: int = 20000,
                          seed: int = 0) -> DistanceMatrix:
    """Estimate each pair's fidelity from all-zeros counts.

    Pair (m, m') runs m' forward then m inverted; the all-zeros
    frequency estimates the squared overlap. Each pair draws its own
    seed from (seed, m, m'), so the matrix is independent of
    evaluation order.
    """
    if not records:
        raise ValueError("no records")
    if shots < 1:
        raise ValueError("shots must be positive")
    sizes = {r.n_qubits for r in records}
    if len(sizes) != 1:
        raise ValueError(f"records mix qubit counts: {sorted(sizes)}")
    n = sizes.pop()
    zeros = "0" * n
    bound = [bind_params(_record_circuit(r), np.asarray(r.params))
             for r in records]
    inverted = [circuit_inverse(c) for c in bound]
    m = len(records)
    d = np.zeros((m, m))
    for i in range(m):
        for j in range(i + 1, m):
            circ = concat_circuits(bound[j], inverted[i])
            state = run_circuit(circ)
            counts = sample_counts(state, shots, seed=derive_seed(seed, i, j))
            fid = counts.get(zeros, 0) / shots
            d[i, j] = d[j, i] = 1.0 - fid
    return DistanceMatrix(tuple(r.record_id for r in records), d)


def adjusted_rand_index(a, b) -> float:
    """Pair-counting ARI from the contingency table.

    Degenerate cases where the correction denominator vanishes (both
    partitions trivial) count as perfect agreement.
    """
    a, b = check_labels(a, b)
    n = a.size
    _, ai = np.unique(a, return_inverse=True)
    _, bi = np.unique(b, return_inverse=True)
    contingency = np.zeros((ai.max() + 1, bi.max() + 1), dtype=np.int64)
    np.add.at(contingency, (ai, bi), 1)

    def comb2(x):
        return x * (x - 1) // 2

    sum_ij = comb2(contingency).sum()
    sum_a = comb2(contingency.sum(axis=1)).sum()
    sum_b = comb2(contingency.sum(axis=0)).sum()
    total = comb2(n)
    expected = sum_a * sum_b / total if total else 0.0
    denom = 0.5 * (sum_a + sum_b) - expected
    if denom == 0:
        return 1.0
    return float((sum_ij - expected) / denom)


def kmedoids(d, k: int, trials: int = 10, seed: int = 0,
             true_labels=None) -> ClusteringResult:
    """Cluster a distance matrix `trials` times; keep the best objective.

    Per-trial ARIs against true_labels are reported when labels are
    given; the returned assignment is from the lowest-objective trial.
    """
    values = d.values if isinstance(d, DistanceMatrix) else np.asarray(d)
    if trials < 1:
        raise ValueError("trials must be positive")
    if true_labels is not None:
        true_labels = check_labels(true_labels)
        if true_labels.size != values.shape[0]:
            raise ValueError("true_labels length must match matrix size")

    best = None
    aris: Optional[List[float]] = [] if true_labels is not None else None
    for t in range(trials):
        est = KMedoids(n_clusters=k,
                       random_state=derive_seed(seed, t)).fit(values)
        if true_labels is not None:
            aris.append(adjusted_rand_index(true_labels, est.labels_))
        if best is None or est.inertia_ < best.inertia_:
            best = est

    mean_ari = best_ari = None
    if aris is not None:
        mean_ari = float(np.mean(aris))
        best_ari = float(adjusted_rand_index(true_labels, best.labels_))
    return ClusteringResult(
        assignments=best.labels_.copy(),
        medoid_indices=best.medoid_indices_.copy(),
        objective=best.inertia_,
        trial_aris=aris,
        mean_ari=mean_ari,
        best_ari=best_ari,
    )


def mds_embed(d) -> Embedding:
    """Two-axis Torgerson embedding with a Kruskal stress diagnostic."""
    values = d.values if isinstance(d, DistanceMatrix) else np.asarray(d)
    if values.shape[0] < 3:
        raise ValueError("need at least 3 points to embed")
    est = ClassicalMDS(n_components=2).fit(values)
    return Embedding(points=est.embedding_,
                     eigenvalues=est.eigenvalues_,
                     stress=est.stress_)


def ground_state_fidelity(record, ground: GroundSpace) -> float:
    """Weight of a record's output state inside the ground space."""
    if 2 ** record.n_qubits != ground.basis.shape[0]:
        raise ValueError("record and ground space sizes differ")
    state = run_circuit(_record_circuit(record), np.asarray(record.params))
    return ground.fidelity(state.data)
