import math

import numpy as np
import pytest

from vqedata.ansatz import FAMILIES, AnsatzSpec, build_ansatz, parameter_init
from vqedata.hamiltonians import build_hamiltonian
from vqedata.pauli import PauliString
from vqedata.qasm import (
    QasmParseError,
    circuit_to_qasm,
    decompose_circuit,
    parse_qasm,
)
from vqedata.simulator import (
    CircuitIR,
    Gate,
    bind_params,
    overlap_fidelity,
    run_circuit,
)


def test_export_single_gate():
    circ = CircuitIR(1, (Gate("ry", (1,), angle=0.5),))
    text = circuit_to_qasm(circ)
    assert text.splitlines() == [
        "OPENQASM 2.0;",
        'include "qelib1.inc";',
        "qreg q[1];",
        "ry(0.5) q[0];",
    ]


def test_export_zz_rotation():
    zz = PauliString.from_masks(2, 0b11, 0)
    circ = CircuitIR(2, (Gate("pauli_rot", (1, 2), generator=zz, angle=0.7),))
    body = circuit_to_qasm(circ).splitlines()[3:]
    assert body == [
        "cx q[0],q[1];",
        "rz(0.69999999999999996) q[1];",
        "cx q[0],q[1];",
    ]


def test_export_requires_bound():
    circ = CircuitIR(1, (Gate("rx", (1,), slot=0),), n_params=1)
    with pytest.raises(ValueError):
        circuit_to_qasm(circ)
    text = circuit_to_qasm(circ, np.array([1.25]))
    assert "rx(1.25) q[0];" in text


def test_parse_minimal():
    circ = parse_qasm(
        'OPENQASM 2.0;\ninclude "qelib1.inc";\nqreg q[1];\nry(pi/2) q[0];\n')
    assert circ.n_qubits == 1 and len(circ.gates) == 1
    g = circ.gates[0]
    assert g.kind == "ry" and g.qubits == (1,)
    assert g.angle == pytest.approx(math.pi / 2, rel=0, abs=0)


def test_parse_cx_index_mapping():
    circ = parse_qasm("OPENQASM 2.0;\nqreg q[2];\ncx q[1],q[0];\n")
    g = circ.gates[0]
    assert g.kind == "cnot"
    assert g.qubits == (2, 1)  # control qubit 2, target qubit 1


def test_expression_grammar():
    cases = {
        "pi": math.pi,
        "-pi/2": -math.pi / 2,
        "2*pi/3": 2 * math.pi / 3,
        "1.5e-3": 1.5e-3,
        "(1+2)*3": 9.0,
        "1-2-3": -4.0,
        "-(pi)": -math.pi,
        "+4/2": 2.0,
        "2*3/4": 1.5,
    }
    for src, want in cases.items():
        circ = parse_qasm(f"OPENQASM 2.0;\nqreg q[1];\nrz({src}) q[0];\n")
        assert circ.gates[0].angle == pytest.approx(want, rel=0, abs=1e-15), src


def test_barrier_and_measure_ignored():
    text = (
        "OPENQASM 2.0;\nqreg q[2];\ncreg c[2];\n"
        "h q[0];\nbarrier q[0],q[1];\nmeasure q[0] -> c[0];\n"
    )
    with pytest.warns(UserWarning):
        circ = parse_qasm(text)
    assert [g.kind for g in circ.gates] == ["h"]


def test_comments_skipped():
    circ = parse_qasm(
        "// header comment\nOPENQASM 2.0;\nqreg q[1]; // trailing\nx q[0];\n")
    assert [g.kind for g in circ.gates] == ["x"]


@pytest.mark.parametrize("text,frag,line", [
    ("OPENQASM 2.0;\nqreg q[2];\nu3(1,2,3) q[0];\n", "u3", 3),
    ("OPENQASM 2.0;\nqreg q[2];\ncx q[0] q[1];\n", "expected", 3),
    ("OPENQASM 2.0;\nqreg q[2];\nrx() q[0];\n", "angle", 3),
    ("OPENQASM 2.0;\nqreg q[2];\nh q[5];\n", "out of range", 3),
    ("OPENQASM 2.0;\nqreg q[2];\nh r[0];\n", "unknown register", 3),
    ("OPENQASM 2.0;\nh q[0];\n", "no quantum register", 2),
    ("OPENQASM 2.0;\nqreg q[2];\nqreg p[2];\n", "one quantum register", 3),
    ("OPENQASM 2.0;\nqreg q[2];\ncx q[0],q[0];\n", "duplicate", 3),
    ("OPENQASM 3.0;\nqreg q[2];\n", "version", 1),
    ("OPENQASM 2.0;\nqreg q[2];\nrz(1/0) q[0];\n", "division", 3),
    ("OPENQASM 2.0;\nqreg q[2];\ngate foo a { }\n", "definitions", 3),
])
def test_positioned_errors(text, frag, line):
    with pytest.raises(QasmParseError) as err:
        parse_qasm(text)
    assert frag in str(err.value)
    assert err.value.line == line
    assert err.value.col >= 1


def test_unsupported_gate_names_gate_and_line():
    with pytest.raises(QasmParseError) as err:
        parse_qasm("OPENQASM 2.0;\nqreg q[1];\n\nsdg q[0];\n")
    assert "sdg" in str(err.value) and "line 4" in str(err.value)


def _families_cycle(n, count, rng):
    if n >= 4:
        h = build_hamiltonian(1, n)
    else:
        from vqedata.pauli import PauliSum
        h = PauliSum.from_text("1.0 0 Z1 Z2\n0.5 0 X1\n0.5 0 Y2", n_qubits=2)
    specs = []
    for i in range(count):
        family = FAMILIES[i % len(FAMILIES)]
        depth = int(rng.integers(1, 5))
        specs.append(AnsatzSpec(
            family, n, depth,
            hamiltonian=h if family == "Hamiltonian" else None))
    return specs


def test_round_trip_random_records():
    # export -> parse -> simulate matches direct simulation up to phase
    rng = np.random.default_rng(77)
    checked = 0
    for n in (2, 4, 6):
        for spec in _families_cycle(n, 20, rng):
            params = parameter_init(spec, int(rng.integers(1 << 30)))
            circ = build_ansatz(spec)
            text = circuit_to_qasm(circ, params)
            back = parse_qasm(text)
            assert overlap_fidelity(circ, params, back, None) >= 1 - 1e-10
            checked += 1
    assert checked == 60


def test_parse_equals_decomposition_gate_for_gate():
    h = build_hamiltonian(0, 4)
    spec = AnsatzSpec("Hamiltonian", 4, 2, hamiltonian=h)
    params = parameter_init(spec, 5)
    bound = bind_params(build_ansatz(spec), params)
    back = parse_qasm(circuit_to_qasm(bound))
    assert back.gates == decompose_circuit(bound).gates


def test_seventeen_digit_angles_round_trip_exactly():
    rng = np.random.default_rng(3)
    angles = rng.uniform(-2 * np.pi, 2 * np.pi, size=50)
    gates = tuple(Gate("rz", (1,), angle=float(a)) for a in angles)
    back = parse_qasm(circuit_to_qasm(CircuitIR(1, gates)))
    assert [g.angle for g in back.gates] == [float(a) for a in angles]
