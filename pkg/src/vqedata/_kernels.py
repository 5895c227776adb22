"""Compiled statevector kernels over a flat gate-tape encoding.

A circuit compiles to parallel arrays (kind, m1, m2, ph, slot, sgn, angle):
``kind`` selects the gate, ``m1``/``m2`` are qubit bit masks (for the
generic Pauli rotation they are the z/x masks), ``ph`` is the rotation
generator's letter phase (-i)^popcount(z & x), ``slot`` indexes the
parameter vector (-1 for fixed angles) and ``sgn`` flips negated slots.
Everything here is also runnable as plain Python when numba is missing;
the numpy engine in simulator.py stays the reference implementation.
"""

from __future__ import annotations

import math

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        if len(args) == 1 and callable(args[0]):
            return args[0]

        def deco(f):
            return f

        return deco


K_RX, K_RY, K_RZ, K_ROT, K_CZ, K_CNOT, K_H, K_X, K_Z = range(9)
ROTATION_KINDS = (K_RX, K_RY, K_RZ, K_ROT)


@njit(cache=True)
def _parity(v):
    p = 0
    while v:
        v &= v - 1
        p ^= 1
    return p


@njit(cache=True)
def _apply_gate(psi, kind, m1, m2, ph, a):
    dim = psi.size
    if kind == K_RX:
        c = math.cos(0.5 * a)
        s = math.sin(0.5 * a)
        for j in range(dim):
            if j & m1:
                continue
            k = j | m1
            p0 = psi[j]
            p1 = psi[k]
            psi[j] = c * p0 - 1j * s * p1
            psi[k] = c * p1 - 1j * s * p0
    elif kind == K_RY:
        c = math.cos(0.5 * a)
        s = math.sin(0.5 * a)
        for j in range(dim):
            if j & m1:
                continue
            k = j | m1
            p0 = psi[j]
            p1 = psi[k]
            psi[j] = c * p0 - s * p1
            psi[k] = s * p0 + c * p1
    elif kind == K_RZ:
        e0 = complex(math.cos(0.5 * a), -math.sin(0.5 * a))
        e1 = e0.conjugate()
        for j in range(dim):
            psi[j] *= e1 if j & m1 else e0
    elif kind == K_ROT:
        c = math.cos(0.5 * a)
        s = math.sin(0.5 * a)
        if m2 == 0:
            for j in range(dim):
                sj = 1.0 - 2.0 * _parity(j & m1)
                psi[j] *= c - 1j * s * ph * sj
        else:
            pivot = m2 & (-m2)
            for j in range(dim):
                if j & pivot:
                    continue
                k = j ^ m2
                sj = 1.0 - 2.0 * _parity(j & m1)
                sk = 1.0 - 2.0 * _parity(k & m1)
                pj = psi[j]
                pk = psi[k]
                psi[j] = c * pj - 1j * s * ph * sj * pk
                psi[k] = c * pk - 1j * s * ph * sk * pj
    elif kind == K_CZ:
        mm = m1 | m2
        for j in range(dim):
            if j & mm == mm:
                psi[j] = -psi[j]
    elif kind == K_CNOT:
        for j in range(dim):
            if (j & m1) and not (j & m2):
                k = j | m2
                tmp = psi[j]
                psi[j] = psi[k]
                psi[k] = tmp
    elif kind == K_H:
        r = 1.0 / math.sqrt(2.0)
        for j in range(dim):
            if j & m1:
                continue
            k = j | m1
            p0 = psi[j]
            p1 = psi[k]
            psi[j] = r * (p0 + p1)
            psi[k] = r * (p0 - p1)
    elif kind == K_X:
        for j in range(dim):
            if j & m1:
                continue
            k = j | m1
            tmp = psi[j]
            psi[j] = psi[k]
            psi[k] = tmp
    else:  # K_Z
        for j in range(dim):
            if j & m1:
                psi[j] = -psi[j]


@njit(cache=True)
def run_tape(psi, kind, m1, m2, ph, slot, sgn, angle, params):
    for g in range(kind.size):
        a = angle[g] if slot[g] < 0 else sgn[g] * params[slot[g]]
        _apply_gate(psi, kind[g], m1[g], m2[g], ph[g], a)


@njit(cache=True)
def apply_sum(psi, hz, hx, hph, hc, out):
    dim = psi.size
    for j in range(dim):
        out[j] = 0.0
    for t in range(hz.size):
        z = hz[t]
        x = hx[t]
        coef = hc[t] * hph[t]
        for j in range(dim):
            sj = 1.0 - 2.0 * _parity(j & z)
            out[j] += coef * sj * psi[j ^ x]


@njit(cache=True)
def expectation_tape(psi, hz, hx, hph, hc):
    acc = 0.0 + 0.0j
    dim = psi.size
    for t in range(hz.size):
        z = hz[t]
        x = hx[t]
        term = 0.0 + 0.0j
        for j in range(dim):
            sj = 1.0 - 2.0 * _parity(j & z)
            term += psi[j].conjugate() * sj * psi[j ^ x]
        acc += hc[t] * hph[t] * term
    return acc


@njit(cache=True)
def _sigma_dot(lam, psi, z, x, gph):
    """<lam| sigma |psi> for the bare string sigma = gph * Z^z X^x."""
    acc = 0.0 + 0.0j
    for j in range(lam.size):
        sj = 1.0 - 2.0 * _parity(j & z)
        acc += lam[j].conjugate() * sj * psi[j ^ x]
    return gph * acc


@njit(cache=True)
def energy_and_gradient_tape(
    kind, m1, m2, ph, slot, sgn, angle, params, hz, hx, hph, hc, psi, lam, grad
):
    """Adjoint reverse sweep: one forward pass, one backward pass.

    psi/lam are scratch complex buffers of size 2^N; grad must be zeroed.
    Returns the energy <psi|H|psi> (real part).
    """
    dim = psi.size
    for j in range(dim):
        psi[j] = 0.0
    psi[0] = 1.0
    run_tape(psi, kind, m1, m2, ph, slot, sgn, angle, params)
    apply_sum(psi, hz, hx, hph, hc, lam)
    e = 0.0
    for j in range(dim):
        e += (psi[j].conjugate() * lam[j]).real
    for g in range(kind.size - 1, -1, -1):
        a = angle[g] if slot[g] < 0 else sgn[g] * params[slot[g]]
        if slot[g] >= 0:
            k = kind[g]
            if k == K_RX:
                gz, gx, gph = 0, m1[g], 1.0 + 0.0j
            elif k == K_RY:
                gz, gx, gph = m1[g], m1[g], -1.0j
            elif k == K_RZ:
                gz, gx, gph = m1[g], 0, 1.0 + 0.0j
            else:
                gz, gx, gph = m1[g], m2[g], ph[g]
            w = _sigma_dot(lam, psi, gz, gx, gph)
            grad[slot[g]] += sgn[g] * w.imag
        if kind[g] <= K_ROT:
            _apply_gate(psi, kind[g], m1[g], m2[g], ph[g], -a)
            _apply_gate(lam, kind[g], m1[g], m2[g], ph[g], -a)
        else:
            _apply_gate(psi, kind[g], m1[g], m2[g], ph[g], 0.0)
            _apply_gate(lam, kind[g], m1[g], m2[g], ph[g], 0.0)
    return e
