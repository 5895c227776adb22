"""Pauli string/sum algebra against a dense kron-matrix oracle."""

import numpy as np
import pytest

from vqedata.pauli import (
    PauliString,
    PauliSum,
    pauli_apply,
    pauli_multiply,
    sum_apply,
)

I2 = np.eye(2, dtype=complex)
SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]], dtype=complex)
SZ = np.array([[1, 0], [0, -1]], dtype=complex)
MAT = {"I": I2, "X": SX, "Y": SY, "Z": SZ}


def kron_matrix(n, factors):
    """Independent dense build: qubit 1 is the least significant index bit."""
    m = np.array([[1]], dtype=complex)
    for q in range(1, n + 1):
        m = np.kron(MAT[factors.get(q, "I")], m)
    return m


def test_identity_and_letters():
    s = PauliString(3)
    assert s.is_identity()
    assert s.factors == {}
    s = PauliString(3, {1: "X", 3: "Z"})
    assert s.factors == {1: "X", 3: "Z"}
    assert s.weight == 2
    assert s.text() == "X1 Z3"


def test_invalid_construction():
    with pytest.raises(ValueError):
        PauliString(2, {3: "X"})
    with pytest.raises(ValueError):
        PauliString(2, {0: "X"})
    with pytest.raises(ValueError):
        PauliString(2, {1: "Q"})
    with pytest.raises(ValueError):
        PauliString(0)


def test_single_qubit_products():
    x = PauliString(1, {1: "X"})
    y = PauliString(1, {1: "Y"})
    z = PauliString(1, {1: "Z"})
    i = PauliString(1)
    assert pauli_multiply(x, x) == (1, i)
    ph, s = pauli_multiply(x, y)
    assert ph == 1j and s == z
    ph, s = pauli_multiply(y, x)
    assert ph == -1j and s == z
    ph, s = pauli_multiply(z, x)
    assert ph == 1j and s == y
    ph, s = pauli_multiply(x, z)
    assert ph == -1j and s == y
    ph, s = pauli_multiply(y, z)
    assert ph == 1j and s == x


def test_cancellation_across_qubits():
    a = PauliString(2, {1: "Z"})
    b = PauliString(2, {1: "Z", 2: "Z"})
    ph, s = pauli_multiply(a, b)
    assert ph == 1 and s == PauliString(2, {2: "Z"})


def test_multiply_dimension_error():
    with pytest.raises(ValueError):
        pauli_multiply(PauliString(1, {1: "X"}), PauliString(2, {1: "X"}))


def test_product_matches_matrix_oracle():
    rng = np.random.default_rng(7)
    letters = ["I", "X", "Y", "Z"]
    for _ in range(200):
        n = int(rng.integers(1, 5))
        fa = {q: letters[rng.integers(1, 4)] for q in range(1, n + 1) if rng.random() < 0.7}
        fb = {q: letters[rng.integers(1, 4)] for q in range(1, n + 1) if rng.random() < 0.7}
        a, b = PauliString(n, fa), PauliString(n, fb)
        ph, s = pauli_multiply(a, b)
        lhs = kron_matrix(n, fa) @ kron_matrix(n, fb)
        rhs = ph * kron_matrix(n, s.factors)
        assert np.allclose(lhs, rhs, atol=1e-14)


def test_to_matrix_matches_oracle():
    rng = np.random.default_rng(3)
    letters = ["I", "X", "Y", "Z"]
    for _ in range(50):
        n = int(rng.integers(1, 5))
        f = {q: letters[rng.integers(1, 4)] for q in range(1, n + 1) if rng.random() < 0.6}
        s = PauliString(n, f)
        assert np.allclose(s.to_matrix(), kron_matrix(n, f), atol=0)


def test_pauli_apply_matches_matrix():
    rng = np.random.default_rng(11)
    letters = ["I", "X", "Y", "Z"]
    for _ in range(50):
        n = int(rng.integers(1, 6))
        dim = 1 << n
        f = {q: letters[rng.integers(1, 4)] for q in range(1, n + 1) if rng.random() < 0.6}
        s = PauliString(n, f)
        psi = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
        assert np.allclose(pauli_apply(s, psi), kron_matrix(n, f) @ psi, atol=1e-12)


def test_sum_canonicalization_merges_and_drops_zeros():
    x1 = PauliString(2, {1: "X"})
    z2 = PauliString(2, {2: "Z"})
    h = PauliSum(2, [(1.0, x1), (2.0, z2), (0.5, x1), (-2.0, z2)])
    # x1 merged to 1.5 and kept first; z2 cancelled exactly and dropped
    assert len(h) == 1
    assert h.terms[0][0] == 1.5
    assert h.terms[0][1] == x1


def test_sum_canonicalization_idempotent_and_order_stable():
    rng = np.random.default_rng(5)
    strings = [PauliString(3, {1: "X"}), PauliString(3, {2: "Y"}), PauliString(3)]
    terms = [(rng.standard_normal(), strings[rng.integers(0, 3)]) for _ in range(20)]
    h = PauliSum(3, terms)
    h2 = PauliSum(3, h.terms)
    assert h.terms == h2.terms
    # first-occurrence order preserved
    first_seen = []
    for _, s in terms:
        if s not in first_seen:
            first_seen.append(s)
    kept = [s for _, s in h.terms]
    assert kept == [s for s in first_seen if s in kept]


def test_sum_matrix_and_apply_agree():
    rng = np.random.default_rng(13)
    n = 4
    dim = 1 << n
    letters = ["I", "X", "Y", "Z"]
    terms = []
    for _ in range(6):
        f = {q: letters[rng.integers(1, 4)] for q in range(1, n + 1) if rng.random() < 0.5}
        terms.append((complex(rng.standard_normal()), PauliString(n, f)))
    h = PauliSum(n, terms)
    psi = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    assert np.allclose(sum_apply(h, psi), h.to_matrix() @ psi, atol=1e-12)


def test_sum_add_and_scale():
    x1 = PauliString(1, {1: "X"})
    z1 = PauliString(1, {1: "Z"})
    a = PauliSum(1, [(1.0, x1)])
    b = PauliSum(1, [(2.0, z1), (1.0, x1)])
    c = a + b
    assert {(s.text(), co) for co, s in c.terms} == {("X1", 2 + 0j), ("Z1", 2 + 0j)}
    d = c.scaled(0.5)
    assert all(co == 1 for co, _ in d.terms)


def test_text_round_trip():
    h = PauliSum(3, [
        (1.5, PauliString(3, {1: "X", 3: "Z"})),
        (-0.25, PauliString(3)),
        (complex(0, 2.0), PauliString(3, {2: "Y"})),
    ])
    back = PauliSum.from_text(h.text(), 3)
    assert back.terms == h.terms


def test_text_rejects_bad_tokens():
    with pytest.raises(ValueError):
        PauliSum.from_text("1.0 0.0 Q3", 3)
    with pytest.raises(ValueError):
        PauliSum.from_text("1.0 0.0 X1 Y1", 3)
    with pytest.raises(ValueError):
        PauliSum.from_text("1.0", 3)


def test_hermitian_flag():
    x1 = PauliString(1, {1: "X"})
    assert PauliSum(1, [(2.0, x1)]).is_hermitian()
    assert not PauliSum(1, [(2j, x1)]).is_hermitian()
