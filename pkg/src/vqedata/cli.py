"""Command-line entry point: generate, analyze, validate, export-qasm, report.

Exit codes: 0 success, 1 usage or config error, 2 partial failure.
"""

import argparse
import json
import logging
import os
import sys
from collections import Counter
from pathlib import Path

import numpy as np

from .analysis import (
    distance_matrix_exact,
    distance_matrix_shots,
    ground_state_fidelity,
    kmedoids,
    mds_embed,
)
from .ansatz import FAMILIES
from .dataset import (
    DatasetConfig,
    export_qasm,
    generate_dataset,
    load_manifest,
    verify_manifest,
)
from .hamiltonians import (
    DENSE_QUBIT_LIMIT,
    build_hamiltonian,
    ground_space,
    valid_labels,
)
from .qasm import QasmParseError, parse_qasm
from .simulator import run_circuit

log = logging.getLogger(__name__)

DEFAULTS = {
    "depth_min": 3,
    "depth_max": 32,
    "restarts": 10,
    "seed": 0,
    "shots": 20000,
    "trials": 10,
    "out_dir": "dataset",
}


class _Parser(argparse.ArgumentParser):
    # usage errors (including unknown flags) exit 1, not argparse's 2
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _parse_depths(text: str):
    parts = text.split(":")
    if len(parts) == 1:
        lo = hi = int(parts[0])
    elif len(parts) == 2:
        lo, hi = int(parts[0]), int(parts[1])
    else:
        raise ValueError(f"bad depth range {text!r}, expected MIN:MAX")
    return lo, hi


def _parse_int_list(text: str):
    return tuple(int(x) for x in text.split(",") if x != "")


def _parse_str_list(text: str):
    return tuple(x for x in (s.strip() for s in text.split(",")) if x)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="vqedata",
                     description="Optimized-circuit dataset tools")
    sub = parser.add_subparsers(dest="command", required=True,
                                parser_class=_Parser)

    g = sub.add_parser("generate", help="optimize the circuit grid")
    g.add_argument("--n", type=int, help="number of qubits")
    g.add_argument("--labels", type=_parse_int_list,
                   help="comma-separated label list (default: all valid)")
    g.add_argument("--families", type=_parse_str_list,
                   help="comma-separated ansatz families (default: all ten)")
    g.add_argument("--depths", type=_parse_depths, metavar="MIN:MAX",
                   help="depth range, e.g. 3:12 (default 3:32)")
    g.add_argument("--restarts", type=int, help="BFGS restarts per cell")
    g.add_argument("--seed", type=int, help="master seed")
    g.add_argument("--out", help="output directory")
    g.add_argument("--workers", type=int, default=os.cpu_count() or 1,
                   help="parallel worker processes")
    g.add_argument("--config", help="JSON config file")

    a = sub.add_parser("analyze", help="distances, clustering, embedding")
    a.add_argument("--dataset", default="dataset",
                   help="directory holding manifest.json")
    a.add_argument("--out", help="analysis output directory "
                                 "(default: the dataset directory)")
    a.add_argument("--shots", type=int,
                   help="estimate fidelities from this many shots "
                        "(default: exact statevector overlaps)")
    a.add_argument("--seed", type=int, help="sampling/clustering seed")
    a.add_argument("--k", type=int,
                   help="cluster count (default: distinct labels)")
    a.add_argument("--trials", type=int, help="clustering trials")

    v = sub.add_parser("validate", help="parse a directory of QASM files")
    v.add_argument("directory", help="directory containing .qasm files")
    v.add_argument("--simulate", action="store_true",
                   help="also run each circuit and check norms")

    e = sub.add_parser("export-qasm", help="re-export circuits from a manifest")
    e.add_argument("--dataset", default="dataset",
                   help="directory holding manifest.json")
    e.add_argument("--record", help="record id (prints to stdout)")
    e.add_argument("--out", help="write .qasm files into this directory")

    r = sub.add_parser("report", help="summarize a dataset and its analysis")
    r.add_argument("--dataset", default="dataset",
                   help="directory holding manifest.json")
    r.add_argument("--analysis",
                   help="directory with analyze outputs "
                        "(default: the dataset directory)")
    r.add_argument("--no-fidelity", action="store_true",
                   help="skip ground-state fidelity recomputation")
    r.add_argument("--output", help="also write the report to this file")
    return parser


def _load_config_file(path):
    try:
        doc = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as e:
        raise ValueError(f"cannot read config file {path}: {e}")
    if not isinstance(doc, dict):
        raise ValueError("config file must hold a JSON object")
    return doc


def _pick(cli_value, file_doc, key, default=None):
    if cli_value is not None:
        return cli_value
    if key in file_doc:
        return file_doc[key]
    return default


def cmd_generate(args) -> int:
    file_doc = _load_config_file(args.config) if args.config else {}
    n = _pick(args.n, file_doc, "n_qubits")
    if n is None:
        raise ValueError("--n (or n_qubits in the config file) is required")
    depths = args.depths
    if depths is None:
        depths = (file_doc.get("depth_min", DEFAULTS["depth_min"]),
                  file_doc.get("depth_max", DEFAULTS["depth_max"]))
    labels = _pick(args.labels, file_doc, "labels")
    config = DatasetConfig(
        n_qubits=int(n),
        labels=tuple(labels) if labels is not None else valid_labels(int(n)),
        families=tuple(_pick(args.families, file_doc, "families", FAMILIES)),
        depth_min=int(depths[0]),
        depth_max=int(depths[1]),
        restarts=int(_pick(args.restarts, file_doc, "restarts",
                           DEFAULTS["restarts"])),
        seed=int(_pick(args.seed, file_doc, "seed", DEFAULTS["seed"])),
        out_dir=str(_pick(args.out, file_doc, "out_dir", DEFAULTS["out_dir"])),
    )
    manifest = generate_dataset(config, workers=max(1, int(args.workers)))
    print(f"{len(manifest.records)} records in {config.out_dir} "
          f"({len(manifest.failures)} failures)")
    return 2 if manifest.failures else 0


def cmd_analyze(args) -> int:
    dataset_dir = Path(args.dataset)
    manifest_path = dataset_dir / "manifest.json"
    if not manifest_path.exists():
        print(f"error: no manifest at {manifest_path}", file=sys.stderr)
        return 1
    manifest = load_manifest(manifest_path)
    if not manifest.records:
        print("error: manifest has no records", file=sys.stderr)
        return 1
    out = Path(args.out) if args.out else dataset_dir
    out.mkdir(parents=True, exist_ok=True)
    seed = args.seed if args.seed is not None else DEFAULTS["seed"]
    trials = args.trials if args.trials is not None else DEFAULTS["trials"]

    records = manifest.records
    if args.shots is not None:
        log.info("estimating %d pair fidelities with %d shots",
                 len(records) * (len(records) - 1) // 2, args.shots)
        d = distance_matrix_shots(records, shots=args.shots, seed=seed)
    else:
        d = distance_matrix_exact(records)
    d.to_csv(out / "distances.csv")

    true_labels = [r.label for r in records]
    k = args.k if args.k is not None else len(set(true_labels))
    result = kmedoids(d, k=k, trials=trials, seed=seed,
                      true_labels=true_labels)
    doc = result.to_dict()
    doc.update({"k": k, "trials": trials, "seed": seed,
                "ids": list(d.ids), "true_labels": true_labels})
    (out / "clustering.json").write_text(json.dumps(doc, indent=2) + "\n")

    if d.size >= 3:
        emb = mds_embed(d)
        edoc = emb.to_dict()
        edoc["ids"] = list(d.ids)
        (out / "embedding.json").write_text(json.dumps(edoc, indent=2) + "\n")

    spread = float(np.std(result.trial_aris))
    print(f"ARI mean {result.mean_ari:.4f} +/- {spread:.4f} over "
          f"{trials} trials (best-objective trial {result.best_ari:.4f})")
    print(f"wrote distances.csv, clustering.json"
          + (", embedding.json" if d.size >= 3 else "") + f" to {out}")
    return 0


def cmd_validate(args) -> int:
    directory = Path(args.directory)
    if not directory.is_dir():
        print(f"error: {directory} is not a directory", file=sys.stderr)
        return 1
    files = sorted(directory.glob("*.qasm"))
    histogram = Counter()
    qubit_counts = Counter()
    failures = []
    for path in files:
        try:
            circ = parse_qasm(path.read_text())
        except (QasmParseError, OSError) as e:
            failures.append((path.name, str(e)))
            continue
        qubit_counts[circ.n_qubits] += 1
        for gate in circ.gates:
            histogram[gate.kind] += 1
        if args.simulate:
            norm = run_circuit(circ).norm()
            if abs(norm - 1) > 1e-10:
                failures.append((path.name, f"norm drift {norm - 1:.2e}"))

    print(f"checked {len(files)} files, {len(failures)} failures")
    if qubit_counts:
        sizes = ", ".join(f"{n} qubits x{c}"
                          for n, c in sorted(qubit_counts.items()))
        print(f"register sizes: {sizes}")
    if histogram:
        gates = ", ".join(f"{k}={v}" for k, v in sorted(histogram.items()))
        print(f"gate histogram: {gates}")
    for name, msg in failures:
        print(f"FAIL {name}: {msg}")
    return 2 if failures else 0


def cmd_export_qasm(args) -> int:
    manifest_path = Path(args.dataset) / "manifest.json"
    if not manifest_path.exists():
        print(f"error: no manifest at {manifest_path}", file=sys.stderr)
        return 1
    manifest = load_manifest(manifest_path)
    if args.record is not None:
        match = [r for r in manifest.records if r.record_id == args.record]
        if not match:
            print(f"error: no record {args.record!r}", file=sys.stderr)
            return 1
        text = export_qasm(match[0])
        if args.out:
            Path(args.out).write_text(text)
        else:
            print(text, end="")
        return 0
    out = Path(args.out) if args.out else Path(args.dataset) / "qasm"
    out.mkdir(parents=True, exist_ok=True)
    for rec in manifest.records:
        (out / f"{rec.record_id}.qasm").write_text(export_qasm(rec))
    print(f"exported {len(manifest.records)} files to {out}")
    return 0


def cmd_report(args) -> int:
    dataset_dir = Path(args.dataset)
    manifest_path = dataset_dir / "manifest.json"
    if not manifest_path.exists():
        print(f"error: no manifest at {manifest_path}", file=sys.stderr)
        return 1
    manifest = load_manifest(manifest_path)
    cfg = manifest.config
    lines = []
    lines.append(f"dataset: {dataset_dir}")
    lines.append(
        f"N={cfg.n_qubits} labels={list(cfg.labels)} "
        f"families={len(cfg.families)} depths={cfg.depth_min}..{cfg.depth_max} "
        f"restarts={cfg.restarts} seed={cfg.seed}")
    lines.append(f"records: {len(manifest.records)}, "
                 f"failures: {len(manifest.failures)}")
    problems = verify_manifest(manifest, dataset_dir)
    lines.append("qasm hashes: " +
                 ("all match" if not problems else f"{len(problems)} problems"))
    for p in problems:
        lines.append(f"  {p}")

    grounds = {}
    if cfg.n_qubits <= DENSE_QUBIT_LIMIT:
        for label in cfg.labels:
            grounds[label] = ground_space(
                build_hamiltonian(label, cfg.n_qubits))
    by_label = {}
    for rec in manifest.records:
        by_label.setdefault(rec.label, []).append(rec)
    for label in sorted(by_label):
        recs = by_label[label]
        gaps = [r.energy - r.ground_energy for r in recs
                if r.ground_energy is not None]
        line = f"label {label}: {len(recs)} records"
        if gaps:
            line += (f", energy gap min {min(gaps):.2e} "
                     f"median {float(np.median(gaps)):.2e}")
        if label in grounds and not args.no_fidelity:
            fids = [ground_state_fidelity(r, grounds[label]) for r in recs]
            line += (f", ground fidelity mean {float(np.mean(fids)):.3f} "
                     f"max {max(fids):.3f}")
        lines.append(line)

    analysis_dir = Path(args.analysis) if args.analysis else dataset_dir
    cpath = analysis_dir / "clustering.json"
    if cpath.exists():
        doc = json.loads(cpath.read_text())
        lines.append(
            f"clustering: k={doc.get('k')} trials={doc.get('trials')} "
            f"ARI mean {doc.get('mean_ari'):.4f} "
            f"best {doc.get('best_ari'):.4f}")
    epath = analysis_dir / "embedding.json"
    if epath.exists():
        doc = json.loads(epath.read_text())
        lines.append(f"embedding: stress {doc.get('stress'):.4f}")

    text = "\n".join(lines)
    print(text)
    if args.output:
        Path(args.output).write_text(text + "\n")
    return 0


_COMMANDS = {
    "generate": cmd_generate,
    "analyze": cmd_analyze,
    "validate": cmd_validate,
    "export-qasm": cmd_export_qasm,
    "report": cmd_report,
}


def main(argv=None) -> int:
    logging.basicConfig(level=logging.INFO,
                        format="%(levelname)s %(name)s: %(message)s",
                        stream=sys.stderr)
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
