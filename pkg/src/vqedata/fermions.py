"""Fermionic ladder-operator products and the Jordan-Wigner map.

The annihilator on mode i (1-based) maps to (X_i + iY_i)/2 times a Z parity
tail on modes i-1 .. 1; creation operators map to the Hermitian conjugate.
A basis state bit k-1 set means mode k occupied, consistent with the
little-endian statevector convention used elsewhere.
"""

from __future__ import annotations

from dataclasses import dataclass

from .pauli import PauliString, PauliSum, _phase_exponent, _I_POW


@dataclass(frozen=True)
class FermionProduct:
    """Ordered product of ladder operators times a coefficient.

    ``ops`` is applied as written: ``ops[0]`` is the leftmost operator, so
    ``FermionProduct(2, [(1, True), (1, False)])`` is the number operator
    on mode 1.
    """

    n_modes: int
    ops: tuple[tuple[int, bool], ...]
    coefficient: complex = 1.0

    def __init__(self, n_modes, ops, coefficient=1.0):
        if n_modes < 1:
            raise ValueError("n_modes must be positive")
        norm_ops = tuple((int(m), bool(d)) for m, d in ops)
        for mode, _ in norm_ops:
            if not 1 <= mode <= n_modes:
                raise ValueError(f"mode index {mode} outside [1, {n_modes}]")
        object.__setattr__(self, "n_modes", n_modes)
        object.__setattr__(self, "ops", norm_ops)
        object.__setattr__(self, "coefficient", complex(coefficient))

    def dagger(self) -> "FermionProduct":
        flipped = tuple((m, not d) for m, d in reversed(self.ops))
        return FermionProduct(self.n_modes, flipped, self.coefficient.conjugate())


def _ladder_terms(mode: int, dagger: bool) -> list[tuple[complex, int, int]]:
    """JW image of one ladder op as [(phase, z_mask, x_mask)] of bare strings."""
    bit = 1 << (mode - 1)
    tail = bit - 1  # Z on every mode below
    # letters: X_i Z_tail -> S(tail, bit), Y_i Z_tail -> S(tail|bit, bit)
    sign = -1.0 if dagger else 1.0
    return [
        (0.5 + 0j, tail, bit),
        (0.5j * sign, tail | bit, bit),
    ]


def jordan_wigner(op: FermionProduct, n_modes: int | None = None) -> PauliSum:
    """Map a ladder-operator product to a canonicalized PauliSum.

    Parameters
    ----------
    op : FermionProduct
    n_modes : int, optional
        Target qubit count; must equal ``op.n_modes`` when given.
    """
    if n_modes is None:
        n_modes = op.n_modes
    elif n_modes != op.n_modes:
        raise ValueError(f"n_modes mismatch: {op.n_modes} != {n_modes}")
    # expand the product left to right over the 2-term images
    acc: list[tuple[complex, int, int]] = [(op.coefficient, 0, 0)]
    for mode, dagger in op.ops:
        nxt = []
        for ph1, z1, x1 in acc:
            for ph2, z2, x2 in _ladder_terms(mode, dagger):
                e = _phase_exponent(z1, x1, z2, x2)
                nxt.append((ph1 * ph2 * _I_POW[e], z1 ^ z2, x1 ^ x2))
        acc = nxt
    terms = [
        (ph, PauliString.from_masks(n_modes, z, x)) for ph, z, x in acc
    ]
    return PauliSum(n_modes, terms)
