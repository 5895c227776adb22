"""Jordan-Wigner map against an occupation-number matrix oracle."""

import numpy as np
import pytest

from vqedata.fermions import FermionProduct, jordan_wigner
from vqedata.pauli import PauliString, PauliSum


def annihilator_matrix(n_modes, mode):
    """Occupation-basis oracle: bit k-1 of the index = occupation of mode k.

    a_p |..1_p..> = (-1)^{number of occupied modes below p} |..0_p..>.
    """
    dim = 1 << n_modes
    m = np.zeros((dim, dim), dtype=complex)
    bit = 1 << (mode - 1)
    for state in range(dim):
        if state & bit:
            sign = (-1) ** ((state & (bit - 1)).bit_count())
            m[state ^ bit, state] = sign
    return m


def product_matrix(fp: FermionProduct):
    dim = 1 << fp.n_modes
    m = np.eye(dim, dtype=complex) * fp.coefficient
    for mode, dagger in fp.ops:
        a = annihilator_matrix(fp.n_modes, mode)
        m = m @ (a.conj().T if dagger else a)
    return m


def test_single_annihilator_images():
    # a1 -> X1/2 + i Y1/2 ; a2 -> X2 Z1 /2 + i Y2 Z1 /2
    s = jordan_wigner(FermionProduct(2, [(1, False)]))
    want = {
        ("X1", 0.5 + 0j),
        ("Y1", 0.5j),
    }
    assert {(p.text(), c) for c, p in s.terms} == want
    s = jordan_wigner(FermionProduct(2, [(2, False)]))
    want = {
        ("Z1 X2", 0.5 + 0j),
        ("Z1 Y2", 0.5j),
    }
    assert {(p.text(), c) for c, p in s.terms} == want


def test_number_operator():
    # a1+ a1 = (I - Z1)/2
    s = jordan_wigner(FermionProduct(1, [(1, True), (1, False)]))
    got = {(p.text(), c) for c, p in s.terms}
    assert got == {("", 0.5 + 0j), ("Z1", -0.5 + 0j)}


def test_dagger_helper():
    fp = FermionProduct(3, [(1, True), (2, False)], 2j)
    fd = fp.dagger()
    assert fd.ops == ((2, True), (1, False))
    assert fd.coefficient == -2j
    assert np.allclose(product_matrix(fd), product_matrix(fp).conj().T)


def test_mode_range_validation():
    with pytest.raises(ValueError):
        FermionProduct(2, [(3, False)])
    with pytest.raises(ValueError):
        jordan_wigner(FermionProduct(2, [(1, False)]), n_modes=3)


def test_random_products_match_matrix_oracle():
    rng = np.random.default_rng(21)
    for _ in range(60):
        n = int(rng.integers(1, 5))
        k = int(rng.integers(1, 4))
        ops = [(int(rng.integers(1, n + 1)), bool(rng.integers(0, 2))) for _ in range(k)]
        coeff = complex(rng.standard_normal(), rng.standard_normal())
        fp = FermionProduct(n, ops, coeff)
        assert np.allclose(jordan_wigner(fp).to_matrix(), product_matrix(fp), atol=1e-13)


def test_canonical_anticommutation_to_1e12():
    """{a_i, a_j+} = delta_ij I and {a_i, a_j} = 0 for all pairs, n <= 6."""
    n = 6
    dim = 1 << n
    mats = {}
    for i in range(1, n + 1):
        mats[i] = jordan_wigner(FermionProduct(n, [(i, False)])).to_matrix()
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            ai, aj = mats[i], mats[j]
            acc_mixed = ai @ aj.conj().T + aj.conj().T @ ai
            target = np.eye(dim) if i == j else np.zeros((dim, dim))
            assert np.max(np.abs(acc_mixed - target)) <= 1e-12
            acc_same = ai @ aj + aj @ ai
            assert np.max(np.abs(acc_same)) <= 1e-12


def test_hopping_is_hermitian_sum():
    n = 4
    hop = jordan_wigner(FermionProduct(n, [(1, True), (3, False)]))
    hop_dag = jordan_wigner(FermionProduct(n, [(3, True), (1, False)]))
    total = hop + hop_dag
    assert total.is_hermitian(tol=1e-14)
    m = total.to_matrix()
    assert np.allclose(m, m.conj().T, atol=1e-13)
