"""The six labeled model Hamiltonians and exact ground spaces.

Labels: 0 transverse-field Ising chain, 1 Heisenberg chain with field,
2 alternating-bond (SSH-type) Heisenberg chain, 3 J1-J2 chain,
4 one-dimensional Hubbard, 5 two-dimensional Hubbard on an (N/4) x 2 grid.
Hubbard models are returned after the Jordan-Wigner map with modes
interleaved as (site j, up) -> 2j-1, (site j, down) -> 2j; the 2D site
(jx, jy) maps to j = 2(jx - 1) + jy.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse.linalg as spla

from .fermions import FermionProduct, jordan_wigner
from .pauli import PauliString, PauliSum, sum_apply

DENSE_QUBIT_LIMIT = 12
LABELS = (0, 1, 2, 3, 4, 5)


def valid_labels(n_qubits: int) -> tuple[int, ...]:
    """Labels defined at this size (label 5 coincides with 4 at N=4).

    The two-row grid behind label 5 needs N divisible by 4 and at
    least two columns, so that label only exists for N in 8, 12, ...
    """
    if n_qubits < 4 or n_qubits % 2:
        raise ValueError("n_qubits must be an even integer >= 4")
    if n_qubits == 4 or n_qubits % 4:
        return (0, 1, 2, 3, 4)
    return LABELS


def _heisenberg_bond(n_qubits, a, b, coeff):
    return [
        (coeff, PauliString(n_qubits, {a: "X", b: "X"})),
        (coeff, PauliString(n_qubits, {a: "Y", b: "Y"})),
        (coeff, PauliString(n_qubits, {a: "Z", b: "Z"})),
    ]


def _hubbard(n_qubits, bonds):
    """JW-mapped Hubbard model from a list of site-index bonds (i, j)."""
    n_sites = n_qubits // 2
    up = lambda j: 2 * j - 1
    dn = lambda j: 2 * j
    total = PauliSum(n_qubits, [])
    for i, j in bonds:
        for spin in (up, dn):
            hop = FermionProduct(n_qubits, [(spin(i), True), (spin(j), False)], -1.0)
            total = total + jordan_wigner(hop) + jordan_wigner(hop.dagger())
    for j in range(1, n_sites + 1):
        # (n_up - 1/2)(n_dn - 1/2); the identity part cancels exactly
        a, b = up(j), dn(j)
        inter = (
            jordan_wigner(FermionProduct(n_qubits, [(a, True), (a, False), (b, True), (b, False)]))
            + jordan_wigner(FermionProduct(n_qubits, [(a, True), (a, False)], -0.5))
            + jordan_wigner(FermionProduct(n_qubits, [(b, True), (b, False)], -0.5))
            + PauliSum(n_qubits, [(0.25, PauliString(n_qubits))])
        )
        total = total + inter
    # deterministic term order: lowest touched qubit, then canonical text
    ordered = sorted(
        total.terms,
        key=lambda t: (_lowest_qubit(t[1]), t[1].text()),
    )
    return PauliSum(n_qubits, ordered)


def _lowest_qubit(s: PauliString) -> int:
    mask = s.z_mask | s.x_mask
    return (mask & -mask).bit_length() if mask else 0


def build_hamiltonian(label: int, n_qubits: int) -> PauliSum:
    """Construct H_label on n_qubits.

    Supports any even N >= 4 (the published sweep uses N in {4, 8, 12, 16,
    20}); label 5 needs N >= 8 with N divisible by 4.  Term order is
    deterministic: bond terms ascending, then field terms; Hubbard labels
    are sorted by (lowest qubit, string) after the Jordan-Wigner map.
    """
    if label not in LABELS:
        raise ValueError(f"label must be one of {LABELS}, got {label}")
    if n_qubits < 4 or n_qubits % 2:
        raise ValueError(f"n_qubits must be even and >= 4, got {n_qubits}")
    if label == 5:
        if n_qubits == 4:
            raise ValueError(
                "label 5 is not defined at N=4 (its 1x2 grid coincides with label 4)"
            )
        if n_qubits % 4:
            raise ValueError("label 5 requires n_qubits divisible by 4")

    n = n_qubits
    terms: list[tuple[complex, PauliString]] = []
    if label == 0:
        for q in range(1, n):
            terms.append((1.0, PauliString(n, {q: "Z", q + 1: "Z"})))
        for q in range(1, n + 1):
            terms.append((2.0, PauliString(n, {q: "X"})))
    elif label == 1:
        for q in range(1, n):
            terms += _heisenberg_bond(n, q, q + 1, 1.0)
        for q in range(1, n + 1):
            terms.append((2.0, PauliString(n, {q: "Z"})))
    elif label == 2:
        for q in range(1, n):
            terms += _heisenberg_bond(n, q, q + 1, 1.0 + 1.5 * (-1.0) ** q)
    elif label == 3:
        for q in range(1, n):
            terms += _heisenberg_bond(n, q, q + 1, 1.0)
            if q + 2 <= n:  # open chain: drop out-of-range next-nearest terms
                terms += _heisenberg_bond(n, q, q + 2, 3.0)
    elif label == 4:
        return _hubbard(n, [(j, j + 1) for j in range(1, n // 2)])
    else:
        nx = n // 4
        site = lambda jx, jy: 2 * (jx - 1) + jy
        bonds = []
        for jx in range(1, nx):
            for jy in (1, 2):
                bonds.append((site(jx, jy), site(jx + 1, jy)))
        for jx in range(1, nx + 1):
            bonds.append((site(jx, 1), site(jx, 2)))
        return _hubbard(n, bonds)
    return PauliSum(n, terms)


@dataclass(frozen=True)
class GroundSpace:
    """Minimal eigenvalue with an orthonormal basis of its eigenspace."""

    energy: float
    basis: np.ndarray  # (2^N, degeneracy), columns orthonormal
    degeneracy_tol: float

    @property
    def degeneracy(self) -> int:
        return self.basis.shape[1]

    def fidelity(self, psi: np.ndarray) -> float:
        """Squared norm of the projection of psi onto the ground space."""
        amps = self.basis.conj().T @ psi
        return float(np.real(amps.conj() @ amps))


class EigensolverError(RuntimeError):
    pass


def ground_space(h: PauliSum, degeneracy_tol: float = 1e-8) -> GroundSpace:
    """Ground energy and eigenspace of a Hermitian PauliSum.

    Dense diagonalization up to DENSE_QUBIT_LIMIT qubits, matrix-free
    Lanczos (scipy eigsh on a LinearOperator) above, with a residual check
    and re-requests until the degenerate block is fully captured.
    """
    if not h.is_hermitian(tol=1e-12):
        raise ValueError("ground_space requires a Hermitian PauliSum")
    dim = 1 << h.n_qubits
    if h.n_qubits <= DENSE_QUBIT_LIMIT:
        vals, vecs = np.linalg.eigh(h.to_matrix())
        e0 = float(vals[0])
        deg = int(np.sum(vals - e0 <= degeneracy_tol))
        basis = vecs[:, :deg]
    else:
        op = spla.LinearOperator(
            (dim, dim), matvec=lambda v: sum_apply(h, v.astype(complex)), dtype=complex
        )
        v0 = np.random.default_rng(0x5EED).standard_normal(dim)
        k = 2
        while True:
            try:
                vals, vecs = spla.eigsh(op, k=k, which="SA", v0=v0, tol=0)
            except spla.ArpackNoConvergence as exc:
                raise EigensolverError(f"Lanczos failed to converge: {exc}") from exc
            order = np.argsort(vals)
            vals, vecs = vals[order], vecs[:, order]
            e0 = float(vals[0])
            deg = int(np.sum(vals - e0 <= degeneracy_tol))
            if deg < k or k >= min(dim - 1, 16):
                break
            k = min(2 * k, dim - 1)  # the whole batch was degenerate; widen
        basis = vecs[:, :deg]
        basis, _ = np.linalg.qr(basis)

    basis = np.ascontiguousarray(basis.astype(complex))
    for i in range(basis.shape[1]):
        resid = sum_apply(h, basis[:, i]) - e0 * basis[:, i]
        rnorm = float(np.linalg.norm(resid))
        if rnorm > 1e-8:
            raise EigensolverError(
                f"eigenpair residual {rnorm:.3e} exceeds 1e-8 (column {i})"
            )
    return GroundSpace(energy=e0, basis=basis, degeneracy_tol=degeneracy_tol)
