"""Dense statevector simulation: gates, circuits, expectations, gradients.

Conventions
-----------
Little-endian ordering: qubit k (1-based) is bit k-1 of the amplitude
index, so |q_N ... q_2 q_1> has index sum q_k 2^{k-1}.  All rotations use
R_sigma(theta) = exp(-i theta sigma / 2).

Two interchangeable engines run circuits: compiled numba kernels (default,
fast) and a vectorized numpy path kept as the reference implementation.
Select with set_engine() or the VQEDATA_ENGINE environment variable.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import _kernels as _k
from .pauli import PauliString, PauliSum, pauli_apply, sum_apply

ROTATIONS = ("rx", "ry", "rz", "pauli_rot")
FIXED_GATES = ("cz", "cnot", "h", "x", "z")

_KIND_CODE = {
    "rx": _k.K_RX,
    "ry": _k.K_RY,
    "rz": _k.K_RZ,
    "pauli_rot": _k.K_ROT,
    "cz": _k.K_CZ,
    "cnot": _k.K_CNOT,
    "h": _k.K_H,
    "x": _k.K_X,
    "z": _k.K_Z,
}

_N_OPERANDS = {"rx": 1, "ry": 1, "rz": 1, "cz": 2, "cnot": 2, "h": 1, "x": 1, "z": 1}

# (-i)^k lookup: the letter phase of a bare string is (-i)^popcount(z & x)
_MINUS_I_POW = (1 + 0j, -1j, -1 + 0j, 1j)

_ENGINES = ("numba", "numpy")
_engine = "numba" if _k.HAVE_NUMBA else "numpy"
if os.environ.get("VQEDATA_ENGINE") in _ENGINES:
    _engine = os.environ["VQEDATA_ENGINE"]


def set_engine(name: str) -> None:
    if name not in _ENGINES:
        raise ValueError(f"engine must be one of {_ENGINES}")
    if name == "numba" and not _k.HAVE_NUMBA:
        raise ValueError("numba is not available")
    global _engine
    _engine = name


def get_engine() -> str:
    return _engine


@dataclass(frozen=True)
class Gate:
    """One circuit element.

    kind is one of rx/ry/rz (single-qubit rotations), pauli_rot (rotation
    about an arbitrary Pauli string), cz, cnot (control, target), or the
    fixed gates h/x/z.  Rotations carry either a fixed ``angle`` or a
    symbolic ``slot`` into the parameter vector; ``neg`` marks slots bound
    with a flipped sign (circuit inverses).
    """

    kind: str
    qubits: tuple[int, ...] = ()
    generator: PauliString | None = None
    angle: float | None = None
    slot: int | None = None
    neg: bool = False

    def __post_init__(self):
        if self.kind not in _KIND_CODE:
            raise ValueError(f"unknown gate kind {self.kind!r}")
        object.__setattr__(self, "qubits", tuple(int(q) for q in self.qubits))
        if self.kind == "pauli_rot":
            if self.generator is None:
                raise ValueError("pauli_rot requires a generator PauliString")
        else:
            need = _N_OPERANDS[self.kind]
            if len(self.qubits) != need:
                raise ValueError(f"{self.kind} takes {need} qubit(s), got {self.qubits}")
            if len(set(self.qubits)) != len(self.qubits):
                raise ValueError(f"duplicate operands in {self.kind} gate: {self.qubits}")
        if self.kind in ROTATIONS:
            if (self.angle is None) == (self.slot is None):
                raise ValueError("rotation needs exactly one of angle or slot")
            if self.slot is not None and self.slot < 0:
                raise ValueError("slot must be non-negative")
        else:
            if self.angle is not None or self.slot is not None:
                raise ValueError(f"{self.kind} gate takes no parameter")

    @property
    def is_rotation(self) -> bool:
        return self.kind in ROTATIONS

    def resolved_angle(self, params) -> float:
        if self.angle is not None:
            return float(self.angle)
        a = float(params[self.slot])
        return -a if self.neg else a


@dataclass(frozen=True)
class CircuitIR:
    """Ordered gate list; gates[0] acts first on |0...0>."""

    n_qubits: int
    gates: tuple[Gate, ...]
    n_params: int = 0

    def __post_init__(self):
        object.__setattr__(self, "gates", tuple(self.gates))
        if self.n_qubits < 1:
            raise ValueError("n_qubits must be positive")
        seen = set()
        for g in self.gates:
            qs = g.qubits if g.kind != "pauli_rot" else tuple(g.generator.factors)
            for q in qs:
                if not 1 <= q <= self.n_qubits:
                    raise ValueError(f"qubit {q} outside [1, {self.n_qubits}]")
            if g.kind == "pauli_rot" and g.generator.n_qubits != self.n_qubits:
                raise ValueError("generator size differs from circuit n_qubits")
            if g.slot is not None:
                if g.slot >= self.n_params:
                    raise ValueError(f"slot {g.slot} outside [0, {self.n_params})")
                seen.add(g.slot)
        if seen != set(range(self.n_params)):
            missing = sorted(set(range(self.n_params)) - seen)
            raise ValueError(f"parameter slots never referenced: {missing}")

    def __len__(self):
        return len(self.gates)

    def tape(self):
        """Compiled parallel arrays, cached on the instance."""
        cached = self.__dict__.get("_tape")
        if cached is None:
            cached = _compile_tape(self)
            object.__setattr__(self, "_tape", cached)
        return cached


def _compile_tape(circuit: CircuitIR):
    n = len(circuit.gates)
    kind = np.empty(n, dtype=np.int64)
    m1 = np.zeros(n, dtype=np.int64)
    m2 = np.zeros(n, dtype=np.int64)
    ph = np.ones(n, dtype=np.complex128)
    slot = np.full(n, -1, dtype=np.int64)
    sgn = np.ones(n, dtype=np.float64)
    angle = np.zeros(n, dtype=np.float64)
    for i, g in enumerate(circuit.gates):
        kind[i] = _KIND_CODE[g.kind]
        if g.kind == "pauli_rot":
            z, x = g.generator.z_mask, g.generator.x_mask
            m1[i], m2[i] = z, x
            ph[i] = _MINUS_I_POW[(z & x).bit_count() % 4]
        elif g.kind in ("cz", "cnot"):
            m1[i] = 1 << (g.qubits[0] - 1)
            m2[i] = 1 << (g.qubits[1] - 1)
        else:
            m1[i] = 1 << (g.qubits[0] - 1)
        if g.slot is not None:
            slot[i] = g.slot
            sgn[i] = -1.0 if g.neg else 1.0
        else:
            angle[i] = g.angle if g.angle is not None else 0.0
    return kind, m1, m2, ph, slot, sgn, angle


def sum_arrays(h: PauliSum):
    """(z, x, letter phase, coefficient) arrays for kernel consumption."""
    cached = h.__dict__.get("_arrays")
    if cached is None:
        t = len(h.terms)
        hz = np.empty(t, dtype=np.int64)
        hx = np.empty(t, dtype=np.int64)
        hph = np.empty(t, dtype=np.complex128)
        hc = np.empty(t, dtype=np.complex128)
        for i, (c, s) in enumerate(h.terms):
            hz[i], hx[i] = s.z_mask, s.x_mask
            hph[i] = _MINUS_I_POW[(s.z_mask & s.x_mask).bit_count() % 4]
            hc[i] = c
        cached = (hz, hx, hph, hc)
        object.__setattr__(h, "_arrays", cached)
    return cached


@dataclass
class StateVector:
    """2^N complex amplitudes, little-endian qubit indexing."""

    n_qubits: int
    data: np.ndarray = field(repr=False, default=None)

    def __post_init__(self):
        if self.data is None:
            self.data = np.zeros(1 << self.n_qubits, dtype=np.complex128)
            self.data[0] = 1.0
        else:
            self.data = np.ascontiguousarray(self.data, dtype=np.complex128)
            if self.data.shape != (1 << self.n_qubits,):
                raise ValueError("amplitude array has wrong length")

    @classmethod
    def zero(cls, n_qubits: int) -> "StateVector":
        return cls(n_qubits)

    def copy(self) -> "StateVector":
        return StateVector(self.n_qubits, self.data.copy())

    def norm(self) -> float:
        return float(np.linalg.norm(self.data))


def apply_gate(state: StateVector, gate: Gate, angle: float | None = None) -> StateVector:
    """Apply one gate in place (numpy reference path) and return the state.

    ``angle`` binds a symbolic slot; fixed-angle gates ignore it.
    """
    qs = gate.qubits if gate.kind != "pauli_rot" else tuple(gate.generator.factors)
    for q in qs:
        if not 1 <= q <= state.n_qubits:
            raise ValueError(f"qubit {q} outside [1, {state.n_qubits}]")
    if gate.is_rotation:
        if gate.angle is not None:
            a = gate.angle
        elif angle is not None:
            a = -float(angle) if gate.neg else float(angle)
        else:
            raise ValueError("unbound symbolic parameter")
    else:
        a = 0.0
    _apply_numpy(state.data, gate, a)
    return state


def _apply_numpy(data: np.ndarray, gate: Gate, a: float) -> None:
    dim = data.shape[0]
    idx = np.arange(dim)
    kind = gate.kind
    if kind in ("rx", "ry", "h", "x"):
        b = 1 << (gate.qubits[0] - 1)
        j = idx[(idx & b) == 0]
        k = j | b
        p0, p1 = data[j].copy(), data[k]
        if kind == "rx":
            c, s = np.cos(a / 2), np.sin(a / 2)
            data[j] = c * p0 - 1j * s * p1
            data[k] = c * p1 - 1j * s * p0
        elif kind == "ry":
            c, s = np.cos(a / 2), np.sin(a / 2)
            data[j] = c * p0 - s * p1
            data[k] = s * p0 + c * p1
        elif kind == "h":
            r = 1.0 / np.sqrt(2.0)
            data[j] = r * (p0 + p1)
            data[k] = r * (p0 - p1)
        else:
            data[j] = p1
            data[k] = p0
    elif kind == "rz":
        b = 1 << (gate.qubits[0] - 1)
        e = np.exp(-0.5j * a)
        data[(idx & b) == 0] *= e
        data[(idx & b) != 0] *= e.conjugate()
    elif kind == "z":
        b = 1 << (gate.qubits[0] - 1)
        data[(idx & b) != 0] *= -1.0
    elif kind == "cz":
        mm = (1 << (gate.qubits[0] - 1)) | (1 << (gate.qubits[1] - 1))
        data[(idx & mm) == mm] *= -1.0
    elif kind == "cnot":
        cb = 1 << (gate.qubits[0] - 1)
        tb = 1 << (gate.qubits[1] - 1)
        j = idx[((idx & cb) != 0) & ((idx & tb) == 0)]
        k = j | tb
        data[j], data[k] = data[k], data[j].copy()
    else:  # pauli_rot
        sigma_psi = pauli_apply(gate.generator, data)
        np.multiply(data, np.cos(a / 2), out=data)
        data -= 1j * np.sin(a / 2) * sigma_psi


def _check_params(circuit: CircuitIR, params) -> np.ndarray:
    p = np.asarray(params if params is not None else [], dtype=np.float64)
    if p.ndim != 1 or p.shape[0] != circuit.n_params:
        raise ValueError(
            f"expected {circuit.n_params} parameters, got shape {p.shape}"
        )
    return p


def run_circuit(circuit: CircuitIR, params: Sequence[float] | None = None) -> StateVector:
    """|psi> = U(theta)|0...0> with gates applied in list order."""
    p = _check_params(circuit, params)
    state = StateVector.zero(circuit.n_qubits)
    if _engine == "numba":
        _k.run_tape(state.data, *circuit.tape(), p)
    else:
        for g in circuit.gates:
            a = g.resolved_angle(p) if g.is_rotation else None
            _apply_numpy(state.data, g, a if a is not None else 0.0)
    return state


def expectation(state: StateVector, h: PauliSum) -> float:
    """Re <psi|H|psi>; the imaginary residual must vanish for Hermitian H."""
    if h.n_qubits != state.n_qubits:
        raise ValueError("operator and state differ in n_qubits")
    if _engine == "numba":
        acc = _k.expectation_tape(state.data, *sum_arrays(h))
    else:
        acc = complex(np.vdot(state.data, sum_apply(h, state.data)))
    if h.is_hermitian(tol=1e-12):
        assert abs(acc.imag) <= 1e-10, f"imaginary residual {acc.imag:.3e}"
    return float(acc.real)


def overlap_fidelity(circ_a, params_a, circ_b, params_b) -> float:
    """|<psi_a|psi_b>|^2 from the two statevectors."""
    if circ_a.n_qubits != circ_b.n_qubits:
        raise ValueError("circuits differ in n_qubits")
    psi_a = run_circuit(circ_a, params_a).data
    psi_b = run_circuit(circ_b, params_b).data
    return float(abs(np.vdot(psi_a, psi_b)) ** 2)


def energy_gradient(circuit: CircuitIR, params, h: PauliSum) -> np.ndarray:
    """d<H>/d theta by the adjoint reverse sweep (one forward, one backward)."""
    e, grad = energy_and_gradient(circuit, params, h)
    return grad


def energy_and_gradient(circuit: CircuitIR, params, h: PauliSum) -> tuple[float, np.ndarray]:
    if h.n_qubits != circuit.n_qubits:
        raise ValueError("operator and circuit differ in n_qubits")
    if not h.is_hermitian(tol=1e-12):
        raise ValueError("energy gradient requires a Hermitian PauliSum")
    p = _check_params(circuit, params)
    grad = np.zeros(circuit.n_params, dtype=np.float64)
    if _engine == "numba":
        dim = 1 << circuit.n_qubits
        psi = np.empty(dim, dtype=np.complex128)
        lam = np.empty(dim, dtype=np.complex128)
        e = _k.energy_and_gradient_tape(
            *circuit.tape(), p, *sum_arrays(h), psi, lam, grad
        )
        return float(e), grad
    psi = run_circuit(circuit, p).data
    lam = sum_apply(h, psi)
    e = float(np.real(np.vdot(psi, lam)))
    for g in reversed(circuit.gates):
        a = g.resolved_angle(p) if g.is_rotation else 0.0
        if g.slot is not None:
            gz, gx, gph = _generator_masks(g)
            sigma_psi = _masked_apply(psi, gz, gx, gph)
            w = complex(np.vdot(lam, sigma_psi))
            grad[g.slot] += (-1.0 if g.neg else 1.0) * w.imag
        _apply_numpy(psi, g, -a)
        _apply_numpy(lam, g, -a)
    return e, grad


def _generator_masks(g: Gate):
    if g.kind == "rx":
        return 0, 1 << (g.qubits[0] - 1), 1.0 + 0j
    if g.kind == "ry":
        b = 1 << (g.qubits[0] - 1)
        return b, b, -1.0j
    if g.kind == "rz":
        return 1 << (g.qubits[0] - 1), 0, 1.0 + 0j
    z, x = g.generator.z_mask, g.generator.x_mask
    return z, x, _MINUS_I_POW[(z & x).bit_count() % 4]


def _masked_apply(psi: np.ndarray, z: int, x: int, gph: complex) -> np.ndarray:
    idx = np.arange(psi.shape[0])
    signs = 1.0 - 2.0 * (_popcount(idx & z) & 1)
    return gph * signs * psi[idx ^ x]


def _popcount(a: np.ndarray) -> np.ndarray:
    if hasattr(np, "bitwise_count"):
        return np.bitwise_count(a).astype(np.int64)
    out = np.zeros_like(a)
    v = a.copy()
    while v.any():
        out += v & 1
        v >>= 1
    return out


def sample_counts(state: StateVector, shots: int, seed) -> dict[str, int]:
    """Histogram of computational-basis samples, deterministic given seed.

    Keys are plain binary renderings of the little-endian index, so the
    leftmost character is qubit N and the all-zeros outcome is "0" * N.
    """
    if shots < 1:
        raise ValueError("shots must be >= 1")
    p = np.abs(state.data) ** 2
    p = p / p.sum()
    counts = np.random.default_rng(seed).multinomial(int(shots), p)
    n = state.n_qubits
    return {format(j, f"0{n}b"): int(c) for j, c in enumerate(counts) if c}


def circuit_inverse(circuit: CircuitIR) -> CircuitIR:
    """Reverse gate order; negate rotations; self-inverse gates unchanged."""
    out = []
    for g in reversed(circuit.gates):
        if not g.is_rotation:
            out.append(g)
        elif g.slot is not None:
            out.append(
                Gate(kind=g.kind, qubits=g.qubits, generator=g.generator,
                     slot=g.slot, neg=not g.neg)
            )
        else:
            out.append(
                Gate(kind=g.kind, qubits=g.qubits, generator=g.generator,
                     angle=-g.angle)
            )
    return CircuitIR(circuit.n_qubits, tuple(out), circuit.n_params)


def bind_params(circuit: CircuitIR, params) -> CircuitIR:
    """Freeze a parameterized circuit into one with fixed angles only."""
    p = _check_params(circuit, params)
    out = []
    for g in circuit.gates:
        if g.slot is None:
            out.append(g)
        else:
            out.append(
                Gate(kind=g.kind, qubits=g.qubits, generator=g.generator,
                     angle=g.resolved_angle(p))
            )
    return CircuitIR(circuit.n_qubits, tuple(out), 0)


def concat_circuits(first: CircuitIR, then: CircuitIR) -> CircuitIR:
    """Sequential composition of two bound circuits (first, then)."""
    if first.n_qubits != then.n_qubits:
        raise ValueError("circuits differ in n_qubits")
    if first.n_params or then.n_params:
        raise ValueError("compose bound circuits (bind_params first)")
    return CircuitIR(first.n_qubits, first.gates + then.gates, 0)
