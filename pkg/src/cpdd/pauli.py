"""Exact single-qubit Pauli algebra with fourth-root-of-unity phase tracking.

The sixteen elements {i^k sigma_a : k in 0..3, a in I,X,Y,Z} form the
single-qubit Pauli group. Phases are kept as an integer power of i, never as
floats, because the sequence and symbolic layers verify "up to a phase"
identities that must hold exactly.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

__all__ = [
    "PauliAxis",
    "PhasedPauli",
    "axis_product",
    "mul",
    "conj_sign",
    "AXIS_MATRICES",
    "PHASE_VALUES",
]


class PauliAxis(enum.IntEnum):
    """Pauli label, totally ordered I < X < Y < Z for canonical printing."""

    I = 0
    X = 1
    Y = 2
    Z = 3

    def __str__(self) -> str:
        return self.name


# sigma_a sigma_b for the three cyclic pairs; the reversed pairs pick up -i.
_CYCLE = {
    (PauliAxis.X, PauliAxis.Y): (1, PauliAxis.Z),
    (PauliAxis.Y, PauliAxis.Z): (1, PauliAxis.X),
    (PauliAxis.Z, PauliAxis.X): (1, PauliAxis.Y),
}

# i^k for k = 0..3
PHASE_VALUES = (1 + 0j, 1j, -1 + 0j, -1j)

_PHASE_PREFIX = ("", "i", "-", "-i")

AXIS_MATRICES = {
    PauliAxis.I: np.eye(2, dtype=complex),
    PauliAxis.X: np.array([[0, 1], [1, 0]], dtype=complex),
    PauliAxis.Y: np.array([[0, -1j], [1j, 0]], dtype=complex),
    PauliAxis.Z: np.array([[1, 0], [0, -1]], dtype=complex),
}


def axis_product(a: PauliAxis, b: PauliAxis) -> tuple[int, PauliAxis]:
    """Return (k, c) such that sigma_a sigma_b = i^k sigma_c."""
    if a == PauliAxis.I:
        return 0, b
    if b == PauliAxis.I:
        return 0, a
    if a == b:
        return 0, PauliAxis.I
    hit = _CYCLE.get((a, b))
    if hit is not None:
        return hit
    k, c = _CYCLE[(b, a)]
    return (-k) % 4, c


@dataclass(frozen=True, order=True)
class PhasedPauli:
    """An element i^phase_pow * sigma_axis of the single-qubit Pauli group."""

    phase_pow: int
    axis: PauliAxis

    def __post_init__(self) -> None:
        object.__setattr__(self, "phase_pow", self.phase_pow % 4)
        object.__setattr__(self, "axis", PauliAxis(self.axis))

    @classmethod
    def identity(cls) -> "PhasedPauli":
        return cls(0, PauliAxis.I)

    @property
    def phase(self) -> complex:
        return PHASE_VALUES[self.phase_pow]

    def __mul__(self, other: "PhasedPauli") -> "PhasedPauli":
        return mul(self, other)

    def matrix(self) -> np.ndarray:
        return self.phase * AXIS_MATRICES[self.axis]

    def __str__(self) -> str:
        return _PHASE_PREFIX[self.phase_pow] + self.axis.name


def mul(p: PhasedPauli, q: PhasedPauli) -> PhasedPauli:
    """Group product p*q with exact phase."""
    k, c = axis_product(p.axis, q.axis)
    return PhasedPauli(p.phase_pow + q.phase_pow + k, c)


def conj_sign(p: PauliAxis, mu: PauliAxis) -> int:
    """Sign s in P^dag sigma_mu P = s sigma_mu for any P with axis p.

    The phase of P cancels in the conjugation, so only axes matter:
    s = +1 iff p and mu commute (either is I, or they are equal).
    """
    if p == PauliAxis.I or mu == PauliAxis.I or p == mu:
        return 1
    return -1
