"""Pair sets, slot counts, and circuit structure for the ten families."""

import numpy as np
import pytest

from vqedata.ansatz import (
    FAMILIES,
    AnsatzSpec,
    build_ansatz,
    n_parameters,
    pair_set,
    parameter_init,
)
from vqedata.hamiltonians import build_hamiltonian
from vqedata.simulator import run_circuit


def test_chain_pairs():
    # odd bricks first, then even bricks; the out-of-range (0, 1) is dropped
    assert pair_set("chain", 4).pairs == ((3, 4), (1, 2), (2, 3))
    assert pair_set("chain", 8).pairs == (
        (7, 8), (5, 6), (3, 4), (1, 2), (6, 7), (4, 5), (2, 3),
    )
    # every qubit is touched by at least one brick
    for n in (2, 4, 6, 8):
        touched = {q for p in pair_set("chain", n).pairs for q in p}
        assert touched == set(range(1, n + 1))


def test_stair_pairs():
    assert pair_set("stair", 4).pairs == ((3, 4), (2, 3), (1, 2))


def test_complete_pairs():
    assert pair_set("complete", 3).pairs == ((2, 3), (1, 3), (1, 2))
    n = 6
    pairs = pair_set("complete", n).pairs
    assert len(pairs) == n * (n - 1) // 2
    assert len(set(tuple(sorted(p)) for p in pairs)) == len(pairs)


def test_ladder_pairs():
    assert pair_set("ladder", 4).pairs == ((1, 3), (2, 4), (1, 2), (3, 4))


def test_cross_ladder_pairs():
    assert pair_set("cross_ladder", 4).pairs == (
        (1, 3), (2, 4), (1, 2), (3, 4), (2, 3), (1, 4),
    )


def test_pair_indices_always_in_range():
    for kind in ("chain", "stair", "complete", "ladder", "cross_ladder"):
        for n in (2, 4, 6, 8, 12):
            for a, b in pair_set(kind, n).pairs:
                assert 1 <= a <= n and 1 <= b <= n
    with pytest.raises(ValueError):
        pair_set("chain", 1)
    with pytest.raises(ValueError):
        pair_set("bogus", 4)


def test_parameter_counts():
    he = AnsatzSpec("HE", 4, 3)
    assert n_parameters(he) == 2 * 4 * (3 + 1) == 32
    bb = AnsatzSpec("1D-BB", 4, 5)
    assert n_parameters(bb) == 4 + 4 * 3 * 5 == 64
    h = build_hamiltonian(0, 4)
    ham = AnsatzSpec("Hamiltonian", 4, 1, hamiltonian=h)
    assert n_parameters(ham) == 7 + 8 == 15


def test_parameter_count_formula_matches_built_slots():
    h4, h8 = build_hamiltonian(1, 4), build_hamiltonian(1, 8)
    for family in FAMILIES:
        for n, h in ((4, h4), (8, h8)):
            for depth in (3, 4):
                spec = AnsatzSpec(family, n, depth,
                                  hamiltonian=h if family == "Hamiltonian" else None)
                circ = build_ansatz(spec)
                assert circ.n_params == n_parameters(spec)
                # all slots referenced (CircuitIR validates), circuit runs
                psi = run_circuit(circ, np.zeros(circ.n_params))
                assert abs(psi.norm() - 1) < 1e-10


def test_he_zero_angles_fix_zero_state():
    for family in ("HE", "Complete-HE", "Ladder-HE", "Cross-Ladder-HE"):
        spec = AnsatzSpec(family, 4, 3)
        circ = build_ansatz(spec)
        psi = run_circuit(circ, np.zeros(circ.n_params)).data
        assert abs(psi[0]) == pytest.approx(1.0, abs=1e-12)


def test_he_gate_order():
    circ = build_ansatz(AnsatzSpec("HE", 4, 1))
    kinds = [g.kind for g in circ.gates]
    # initial layer: ry/rz per qubit ascending; block: chain CZs then layer
    assert kinds[:8] == ["ry", "rz"] * 4
    assert kinds[8:11] == ["cz"] * 3
    assert [g.qubits for g in circ.gates[8:11]] == [(3, 4), (1, 2), (2, 3)]
    assert kinds[11:] == ["ry", "rz"] * 4
    assert [g.qubits[0] for g in circ.gates if g.kind == "ry"] == [1, 2, 3, 4] * 2


def test_bb_gate_order_and_v_expansion():
    circ = build_ansatz(AnsatzSpec("1D-BB", 4, 1))
    kinds = [g.kind for g in circ.gates]
    # V on (3,4): ry ry cnot ry ry cnot, then V on (1,2) and (2,3), final ry layer
    assert kinds == (["ry", "ry", "cnot", "ry", "ry", "cnot"] * 3 + ["ry"] * 4)
    v1 = circ.gates[:6]
    assert [g.qubits for g in v1] == [(3,), (4,), (3, 4), (3,), (4,), (3, 4)]
    final = circ.gates[-4:]
    assert [g.qubits[0] for g in final] == [1, 2, 3, 4]
    # slots numbered in application order
    slots = [g.slot for g in circ.gates if g.slot is not None]
    assert slots == list(range(circ.n_params))


def test_hamiltonian_family_gate_order():
    h = build_hamiltonian(0, 4)
    circ = build_ansatz(AnsatzSpec("Hamiltonian", 4, 2, hamiltonian=h))
    kinds = [g.kind for g in circ.gates]
    per_layer = ["rz", "rx"] * 4 + ["pauli_rot"] * 7
    assert kinds == per_layer * 2
    gens = [g.generator.text() for g in circ.gates if g.kind == "pauli_rot"][:7]
    assert gens == ["Z1 Z2", "Z2 Z3", "Z3 Z4", "X1", "X2", "X3", "X4"]


def test_spec_validation():
    with pytest.raises(ValueError):
        AnsatzSpec("NotAFamily", 4, 3)
    with pytest.raises(ValueError):
        AnsatzSpec("HE", 5, 3)
    with pytest.raises(ValueError):
        AnsatzSpec("HE", 4, 0)
    with pytest.raises(ValueError):
        AnsatzSpec("Hamiltonian", 4, 3)  # missing source operator
    with pytest.raises(ValueError):
        AnsatzSpec("Hamiltonian", 4, 3, hamiltonian=build_hamiltonian(0, 8))


def test_parameter_init_ranges_and_determinism():
    spec = AnsatzSpec("HE", 4, 6)
    x = parameter_init(spec, 123)
    assert x.shape == (n_parameters(spec),)
    assert np.all(x >= -2 * np.pi) and np.all(x < 2 * np.pi)
    assert np.array_equal(x, parameter_init(spec, 123))
    assert not np.array_equal(x, parameter_init(spec, 124))

    hspec = AnsatzSpec("Hamiltonian", 4, 2, hamiltonian=build_hamiltonian(0, 4))
    y = parameter_init(hspec, 9)
    assert np.all(y >= 0) and np.all(y < 0.1)
