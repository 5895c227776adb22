"""Grid generation: one optimized circuit per (label, family, depth) cell.

Output layout: <out>/manifest.json plus <out>/qasm/<label>_<family>_<D>.qasm.
Generation is resumable: cells whose record and QASM hash already match are
kept byte-identical, everything else is recomputed.
"""

import hashlib
import json
import logging
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import List, Tuple

import numpy as np

from . import __version__
from .ansatz import FAMILIES, AnsatzSpec, build_ansatz
from .hamiltonians import (
    DENSE_QUBIT_LIMIT,
    build_hamiltonian,
    ground_space,
    valid_labels,
)
from .qasm import circuit_to_qasm
from .seeding import derive_seed
from .simulator import CircuitIR
from .vqe import CircuitRecord, OptimizerConfig, vqe_optimize

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class DatasetConfig:
    n_qubits: int
    labels: Tuple[int, ...]
    families: Tuple[str, ...] = FAMILIES
    depth_min: int = 3
    depth_max: int = 32
    restarts: int = 10
    seed: int = 0
    out_dir: str = "dataset"

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(int(l) for l in self.labels))
        object.__setattr__(self, "families", tuple(self.families))
        ok = valid_labels(self.n_qubits)  # validates n_qubits itself
        if not self.labels:
            raise ValueError("label set is empty")
        bad = [l for l in self.labels if l not in ok]
        if bad:
            raise ValueError(
                f"labels {bad} invalid at N={self.n_qubits} (valid: {list(ok)})")
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("duplicate labels")
        if not self.families:
            raise ValueError("family set is empty")
        unknown = [f for f in self.families if f not in FAMILIES]
        if unknown:
            raise ValueError(f"unknown families: {unknown}")
        if len(set(self.families)) != len(self.families):
            raise ValueError("duplicate families")
        if not (1 <= self.depth_min <= self.depth_max <= 64):
            raise ValueError("depth range must satisfy 1 <= min <= max <= 64")
        if self.restarts < 1:
            raise ValueError("restarts must be at least 1")

    @property
    def depths(self) -> range:
        return range(self.depth_min, self.depth_max + 1)

    def cells(self) -> List[Tuple[int, str, int]]:
        return [(l, f, d) for l in self.labels
                for f in self.families for d in self.depths]


@dataclass
class Manifest:
    config: DatasetConfig
    records: List[CircuitRecord]
    failures: List[dict]
    hashes: dict  # qasm path (relative) -> sha256 hex
    created_at: str
    code_version: str


def _atomic_write_text(path: Path, text: str):
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_text(text)
    os.replace(tmp, path)


def _sha256(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def _record_to_dict(rec: CircuitRecord) -> dict:
    return {
        "record_id": rec.record_id,
        "label": rec.label,
        "family": rec.family,
        "depth": rec.depth,
        "n_qubits": rec.n_qubits,
        "params": [float(x) for x in rec.params],
        "energy": float(rec.energy),
        "ground_energy": (None if rec.ground_energy is None
                          else float(rec.ground_energy)),
        "qasm_path": rec.qasm_path,
        "iterations": rec.iterations,
        "grad_norm": float(rec.grad_norm),
        "termination": rec.termination,
    }


def _record_from_dict(d: dict) -> CircuitRecord:
    return CircuitRecord(
        record_id=d["record_id"],
        label=d["label"],
        family=d["family"],
        depth=d["depth"],
        n_qubits=d["n_qubits"],
        params=np.array(d["params"], dtype=float),
        energy=d["energy"],
        ground_energy=d.get("ground_energy"),
        qasm_path=d.get("qasm_path"),
        iterations=d.get("iterations", 0),
        grad_norm=d.get("grad_norm", 0.0),
        termination=d.get("termination", ""),
    )


def save_manifest(manifest: Manifest, path) -> None:
    doc = {
        "config": {
            "n_qubits": manifest.config.n_qubits,
            "labels": list(manifest.config.labels),
            "families": list(manifest.config.families),
            "depth_min": manifest.config.depth_min,
            "depth_max": manifest.config.depth_max,
            "restarts": manifest.config.restarts,
            "seed": manifest.config.seed,
            "out_dir": manifest.config.out_dir,
        },
        "code_version": manifest.code_version,
        "created_at": manifest.created_at,
        "records": [_record_to_dict(r) for r in manifest.records],
        "failures": manifest.failures,
        "hashes": manifest.hashes,
    }
    _atomic_write_text(Path(path), json.dumps(doc, indent=2) + "\n")


def load_manifest(path) -> Manifest:
    doc = json.loads(Path(path).read_text())
    cfg = dict(doc["config"])
    config = DatasetConfig(
        n_qubits=cfg["n_qubits"],
        labels=tuple(cfg["labels"]),
        families=tuple(cfg["families"]),
        depth_min=cfg["depth_min"],
        depth_max=cfg["depth_max"],
        restarts=cfg["restarts"],
        seed=cfg["seed"],
        out_dir=cfg["out_dir"],
    )
    return Manifest(
        config=config,
        records=[_record_from_dict(d) for d in doc["records"]],
        failures=list(doc.get("failures", [])),
        hashes=dict(doc.get("hashes", {})),
        created_at=doc.get("created_at", ""),
        code_version=doc.get("code_version", ""),
    )


def verify_manifest(manifest: Manifest, base_dir) -> List[str]:
    """Re-hash every referenced QASM file; return mismatch descriptions."""
    base = Path(base_dir)
    problems = []
    for rel, want in sorted(manifest.hashes.items()):
        p = base / rel
        if not p.exists():
            problems.append(f"{rel}: missing")
        elif _sha256(p.read_text()) != want:
            problems.append(f"{rel}: hash mismatch")
    return problems


def rebuild_circuit(record: CircuitRecord) -> CircuitIR:
    """Reconstruct the unbound ansatz circuit a record was optimized on."""
    ham = None
    if record.family == "Hamiltonian":
        if record.label is None:
            raise ValueError("Hamiltonian-family record needs a label")
        ham = build_hamiltonian(record.label, record.n_qubits)
    spec = AnsatzSpec(record.family, record.n_qubits, record.depth,
                      hamiltonian=ham)
    return build_ansatz(spec)


def export_qasm(record: CircuitRecord) -> str:
    """QASM 2.0 text for a record's circuit with its optimized angles."""
    return circuit_to_qasm(rebuild_circuit(record), np.asarray(record.params))


def _generate_cell(n_qubits: int, label: int, family: str, depth: int,
                   restarts: int, master_seed: int) -> CircuitRecord:
    h = build_hamiltonian(label, n_qubits)
    spec = AnsatzSpec(
        family, n_qubits, depth,
        hamiltonian=h if family == "Hamiltonian" else None)
    cell_seed = derive_seed(master_seed, label, family, depth)
    return vqe_optimize(h, spec, OptimizerConfig(restarts=restarts),
                        seed=cell_seed, label=label)


def generate_dataset(config: DatasetConfig, workers: int = 1) -> Manifest:
    """Fill the grid, reusing intact cells from a previous partial run.

    Per-cell failures are recorded in the manifest and do not stop the
    rest of the grid.
    """
    out = Path(config.out_dir)
    (out / "qasm").mkdir(parents=True, exist_ok=True)
    manifest_path = out / "manifest.json"

    reusable = {}
    if manifest_path.exists():
        try:
            prior = load_manifest(manifest_path)
        except (ValueError, KeyError) as e:
            log.warning("ignoring unreadable manifest: %s", e)
        else:
            pc = prior.config
            if (pc.n_qubits, pc.seed, pc.restarts) == (
                    config.n_qubits, config.seed, config.restarts):
                for rec in prior.records:
                    rel = rec.qasm_path
                    want = prior.hashes.get(rel)
                    p = out / rel if rel else None
                    if (want and p and p.exists()
                            and _sha256(p.read_text()) == want):
                        reusable[(rec.label, rec.family, rec.depth)] = (
                            rec, want)

    ground_cache = {}

    def ground_for(label):
        if label not in ground_cache:
            if config.n_qubits <= DENSE_QUBIT_LIMIT:
                h = build_hamiltonian(label, config.n_qubits)
                ground_cache[label] = float(ground_space(h).energy)
            else:
                ground_cache[label] = None
        return ground_cache[label]

    cells = config.cells()
    todo = [c for c in cells if c not in reusable]
    log.info("generating %d cells (%d reused) at N=%d",
             len(todo), len(reusable), config.n_qubits)

    computed = {}
    failures = []

    def on_done(cell, rec=None, err=None):
        label, family, depth = cell
        if err is not None:
            failures.append({"label": label, "family": family,
                             "depth": depth, "error": str(err)})
            log.error("cell %s_%s_%d failed: %s", label, family, depth, err)
            return
        rec.ground_energy = ground_for(label)
        computed[cell] = rec
        log.info("cell %s energy=%.10f ground=%s [%s, %d iters]",
                 rec.record_id, rec.energy,
                 "n/a" if rec.ground_energy is None
                 else f"{rec.ground_energy:.10f}",
                 rec.termination, rec.iterations)

    if workers > 1 and todo:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = {
                cell: pool.submit(_generate_cell, config.n_qubits, *cell,
                                  config.restarts, config.seed)
                for cell in todo
            }
            for cell, fut in futures.items():
                try:
                    on_done(cell, rec=fut.result())
                except Exception as e:
                    on_done(cell, err=e)
    else:
        for cell in todo:
            try:
                on_done(cell, rec=_generate_cell(
                    config.n_qubits, *cell, config.restarts, config.seed))
            except Exception as e:
                on_done(cell, err=e)

    records = []
    hashes = {}
    for cell in cells:
        if cell in reusable:
            rec, digest = reusable[cell]
            records.append(rec)
            hashes[rec.qasm_path] = digest
            continue
        if cell not in computed:
            continue  # failed; recorded above
        rec = computed[cell]
        rel = f"qasm/{rec.record_id}.qasm"
        text = export_qasm(rec)
        _atomic_write_text(out / rel, text)
        rec.qasm_path = rel
        hashes[rel] = _sha256(text)
        records.append(rec)

    manifest = Manifest(
        config=config,
        records=records,
        failures=failures,
        hashes=hashes,
        created_at=time.strftime("%Y-%m-%dT%H:%M:%S", time.gmtime()),
        code_version=__version__,
    )
    save_manifest(manifest, manifest_path)
    return manifest
