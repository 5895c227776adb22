"""Pauli-string algebra on symplectic bit masks.

A Pauli string on N qubits is stored as a pair of integer masks (z_mask,
x_mask), bit q-1 corresponding to qubit q (1-based).  The operator encoded
by the masks is

    S(z, x) = (-i)^{w} Z^z X^x,   w = popcount(z & x),

which is exactly the tensor product of the letters X (x bit only),
Y (both bits) and Z (z bit only).  Products and phases then reduce to
bit arithmetic, which keeps Hamiltonian construction and simulation fast.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

import numpy as np

_LETTER_TO_BITS = {"X": (0, 1), "Y": (1, 1), "Z": (1, 0)}

# single-qubit matrices, used only for dense construction
_M1 = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


class PauliString:
    """Tensor product of single-qubit Pauli operators (phase-free).

    Parameters
    ----------
    n_qubits : int
        Number of qubits N; qubit indices are 1-based, 1..N.
    factors : mapping {qubit index: "X"|"Y"|"Z"}, optional
        Non-identity letters.  An empty mapping is the identity.
    """

    __slots__ = ("n_qubits", "z_mask", "x_mask")

    def __init__(self, n_qubits: int, factors: Mapping[int, str] | None = None):
        if n_qubits < 1:
            raise ValueError("n_qubits must be positive")
        z = x = 0
        for q, letter in (factors or {}).items():
            if not 1 <= q <= n_qubits:
                raise ValueError(f"qubit index {q} outside [1, {n_qubits}]")
            try:
                zb, xb = _LETTER_TO_BITS[letter]
            except KeyError:
                raise ValueError(f"invalid Pauli letter {letter!r}") from None
            bit = 1 << (q - 1)
            z |= zb * bit
            x |= xb * bit
        object.__setattr__(self, "n_qubits", n_qubits)
        object.__setattr__(self, "z_mask", z)
        object.__setattr__(self, "x_mask", x)

    def __setattr__(self, name, value):
        raise AttributeError("PauliString is immutable")

    @classmethod
    def from_masks(cls, n_qubits: int, z_mask: int, x_mask: int) -> "PauliString":
        if (z_mask | x_mask) >> n_qubits:
            raise ValueError("mask bits outside qubit range")
        s = cls.__new__(cls)
        object.__setattr__(s, "n_qubits", n_qubits)
        object.__setattr__(s, "z_mask", z_mask)
        object.__setattr__(s, "x_mask", x_mask)
        return s

    @property
    def factors(self) -> dict[int, str]:
        out = {}
        for q in range(1, self.n_qubits + 1):
            bit = 1 << (q - 1)
            zb, xb = bool(self.z_mask & bit), bool(self.x_mask & bit)
            if xb and zb:
                out[q] = "Y"
            elif xb:
                out[q] = "X"
            elif zb:
                out[q] = "Z"
        return out

    @property
    def weight(self) -> int:
        return (self.z_mask | self.x_mask).bit_count()

    def is_identity(self) -> bool:
        return self.z_mask == 0 and self.x_mask == 0

    def __eq__(self, other):
        return (
            isinstance(other, PauliString)
            and self.n_qubits == other.n_qubits
            and self.z_mask == other.z_mask
            and self.x_mask == other.x_mask
        )

    def __hash__(self):
        return hash((self.n_qubits, self.z_mask, self.x_mask))

    def __repr__(self):
        return f"PauliString({self.n_qubits}, {self.text()!r})"

    def text(self) -> str:
        """Token form like "X1 Z3" (empty string for the identity)."""
        return " ".join(f"{l}{q}" for q, l in sorted(self.factors.items()))

    def to_matrix(self) -> np.ndarray:
        """Dense 2^N x 2^N matrix (little-endian: qubit 1 = least significant bit)."""
        if self.n_qubits > 14:
            raise ValueError("dense matrix limited to 14 qubits")
        fac = self.factors
        m = np.array([[1]], dtype=complex)
        for q in range(1, self.n_qubits + 1):
            m = np.kron(_M1[fac.get(q, "I")], m)
        return m


def _phase_exponent(z1: int, x1: int, z2: int, x2: int) -> int:
    """Exponent e with S(z1,x1) S(z2,x2) = i^e S(z1^z2, x1^x2), e in {0..3}."""
    w1 = (z1 & x1).bit_count()
    w2 = (z2 & x2).bit_count()
    w3 = ((z1 ^ z2) & (x1 ^ x2)).bit_count()
    return (w3 - w1 - w2 + 2 * (x1 & z2).bit_count()) % 4


_I_POW = (1 + 0j, 1j, -1 + 0j, -1j)


def pauli_multiply(a: PauliString, b: PauliString) -> tuple[complex, PauliString]:
    """Product of two Pauli strings.

    Returns ``(phase, string)`` with ``a @ b = phase * string`` where phase
    is a power of i accumulated from single-qubit multiplication rules.
    """
    if a.n_qubits != b.n_qubits:
        raise ValueError(
            f"n_qubits mismatch: {a.n_qubits} != {b.n_qubits}"
        )
    e = _phase_exponent(a.z_mask, a.x_mask, b.z_mask, b.x_mask)
    out = PauliString.from_masks(a.n_qubits, a.z_mask ^ b.z_mask, a.x_mask ^ b.x_mask)
    return _I_POW[e], out


@dataclass(frozen=True)
class PauliSum:
    """Weighted sum of Pauli strings, canonicalized on construction.

    Terms with identical strings are merged (first-occurrence order is kept,
    making construction order reproducible) and exact-zero coefficients are
    dropped.  Hamiltonians built by this package have purely real
    coefficients.
    """

    n_qubits: int
    terms: tuple[tuple[complex, PauliString], ...]

    def __init__(self, n_qubits: int, terms: Iterable[tuple[complex, PauliString]]):
        if n_qubits < 1:
            raise ValueError("n_qubits must be positive")
        merged: dict[tuple[int, int], complex] = {}
        strings: dict[tuple[int, int], PauliString] = {}
        for coeff, s in terms:
            if s.n_qubits != n_qubits:
                raise ValueError("all strings must share n_qubits")
            key = (s.z_mask, s.x_mask)
            if key in merged:
                merged[key] += complex(coeff)
            else:
                merged[key] = complex(coeff)
                strings[key] = s
        canon = tuple(
            (merged[k], strings[k]) for k in merged if merged[k] != 0
        )
        object.__setattr__(self, "n_qubits", n_qubits)
        object.__setattr__(self, "terms", canon)

    def __len__(self):
        return len(self.terms)

    @property
    def coefficients(self) -> np.ndarray:
        return np.array([c for c, _ in self.terms], dtype=complex)

    def is_hermitian(self, tol: float = 0.0) -> bool:
        return all(abs(c.imag) <= tol for c, _ in self.terms)

    def scaled(self, factor: complex) -> "PauliSum":
        return PauliSum(self.n_qubits, [(factor * c, s) for c, s in self.terms])

    def __add__(self, other: "PauliSum") -> "PauliSum":
        if not isinstance(other, PauliSum):
            return NotImplemented
        if other.n_qubits != self.n_qubits:
            raise ValueError("n_qubits mismatch")
        return PauliSum(self.n_qubits, list(self.terms) + list(other.terms))

    def to_matrix(self) -> np.ndarray:
        """Dense matrix; intended for small N (tests, exact spectra)."""
        dim = 1 << self.n_qubits
        m = np.zeros((dim, dim), dtype=complex)
        for c, s in self.terms:
            m += c * s.to_matrix()
        return m

    def text(self) -> str:
        """One term per line: "coeff_real coeff_imag X1 Z3" (debug/fixture form)."""
        lines = []
        for c, s in self.terms:
            tokens = s.text()
            lines.append(f"{c.real!r} {c.imag!r}" + (f" {tokens}" if tokens else ""))
        return "\n".join(lines)

    @classmethod
    def from_text(cls, text: str, n_qubits: int) -> "PauliSum":
        terms = []
        for raw in text.splitlines():
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            if len(parts) < 2:
                raise ValueError(f"bad PauliSum line: {raw!r}")
            coeff = complex(float(parts[0]), float(parts[1]))
            factors = {}
            for tok in parts[2:]:
                letter, idx = tok[0], tok[1:]
                if letter not in "XYZ" or not idx.isdigit():
                    raise ValueError(f"bad Pauli token {tok!r} in line {raw!r}")
                q = int(idx)
                if q in factors:
                    raise ValueError(f"duplicate qubit {q} in line {raw!r}")
                factors[q] = letter
            terms.append((coeff, PauliString(n_qubits, factors)))
        return cls(n_qubits, terms)


def pauli_apply(s: PauliString, psi: np.ndarray, phase: complex = 1.0) -> np.ndarray:
    """Apply phase * S(z,x) to a statevector (reference numpy path).

    (S psi)[j] = (-i)^w (-1)^{popcount(z & j)} psi[j ^ x].
    """
    dim = psi.shape[0]
    idx = np.arange(dim, dtype=np.int64)
    w = (s.z_mask & s.x_mask).bit_count()
    ph = phase * _I_POW[(-w) % 4]
    signs = 1.0 - 2.0 * (_popcount_array(idx & s.z_mask) & 1)
    return ph * signs * psi[idx ^ s.x_mask]


def _popcount_array(a: np.ndarray) -> np.ndarray:
    # np.bitwise_count exists on numpy >= 2.0; keep a fallback for 1.x
    if hasattr(np, "bitwise_count"):
        return np.bitwise_count(a).astype(np.int64)
    out = np.zeros_like(a)
    v = a.copy()
    while v.any():
        out += v & 1
        v >>= 1
    return out


def sum_apply(h: PauliSum, psi: np.ndarray) -> np.ndarray:
    """H @ psi without forming the dense matrix (reference numpy path)."""
    out = np.zeros_like(psi)
    for c, s in h.terms:
        out += pauli_apply(s, psi, c)
    return out
