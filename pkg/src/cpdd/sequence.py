"""Pulse-sequence calculus for concatenated-projection dynamical decoupling.

A pulse sequence is a time-ordered tuple of phased Pauli pulses applied at
uniform intervals (pulse j fires at t = j * tau_d). The interval itself is
symbolic here; it is bound only at analysis or simulation time. Sequences
built from projection primitives carry a provenance (the projection axes,
innermost first), which is what assigns them a CPDD class.

Printing follows the usual right-to-left notation in which the last-applied
pulse is written first, so the time-ordered pulses [Y, Z, Y, Z] print as
"ZYZY".
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Optional

from .pauli import PauliAxis, PhasedPauli, mul

__all__ = [
    "PulseSequence",
    "CPDDClass",
    "CatalogRow",
    "projection",
    "concat",
    "is_cyclic",
    "class_of",
    "cpdd_from_order",
    "canonical_order",
    "k_min",
    "oudd",
    "catalog",
    "check_odd_sites",
    "check_half_repeat",
    "equivalent",
]

_NONTRIVIAL = (PauliAxis.X, PauliAxis.Y, PauliAxis.Z)


@dataclass(frozen=True)
class PulseSequence:
    """Time-ordered pulses plus optional projection provenance.

    pulses: applied left to right in time (index 0 fires first, at tau_d).
    provenance: projection axes in concatenation order, innermost first;
        present only for sequences built from projection primitives.
    """

    pulses: tuple[PhasedPauli, ...]
    provenance: Optional[tuple[PauliAxis, ...]] = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "pulses", tuple(self.pulses))
        if len(self.pulses) < 1:
            raise ValueError("a pulse sequence needs at least one pulse")
        if self.provenance is not None:
            prov = tuple(PauliAxis(a) for a in self.provenance)
            if any(a == PauliAxis.I for a in prov):
                raise ValueError("provenance axes must be nontrivial")
            if len(self.pulses) != 2 ** len(prov):
                raise ValueError(
                    f"provenance of length {len(prov)} requires "
                    f"2**{len(prov)} pulses, got {len(self.pulses)}"
                )
            object.__setattr__(self, "provenance", prov)

    def __len__(self) -> int:
        return len(self.pulses)

    @property
    def K(self) -> int:
        return len(self.pulses)

    @property
    def axes(self) -> tuple[PauliAxis, ...]:
        return tuple(p.axis for p in self.pulses)

    @property
    def cpdd_class(self) -> Optional["CPDDClass"]:
        if self.provenance is None:
            return None
        return CPDDClass.from_provenance(self.provenance)

    def paper_order(self) -> str:
        """Axis string with the last-applied pulse first."""
        return "".join(a.name for a in reversed(self.axes))

    def to_json(self) -> dict:
        cls = self.cpdd_class
        return {
            "pulses": [str(p) for p in self.pulses],
            "paper_order": self.paper_order(),
            "provenance": (
                [a.name for a in self.provenance] if self.provenance else None
            ),
            "class": cls.to_json() if cls else None,
            "K": self.K,
            "N": cls.N if cls else None,
        }

    def __str__(self) -> str:
        return self.paper_order()


@dataclass(frozen=True)
class CPDDClass:
    """Projection counts per axis, with the derived length and orders.

    K = 2**(n_x+n_y+n_z); the error along axis i is suppressed to order
    d_i = sum of the counts orthogonal to i; the suppression order N is the
    smallest of the d_i, i.e. the minimum over pairwise count sums.
    """

    n_x: int
    n_y: int
    n_z: int

    def __post_init__(self) -> None:
        for v in (self.n_x, self.n_y, self.n_z):
            if not isinstance(v, int) or v < 0:
                raise ValueError("projection counts must be non-negative integers")

    @classmethod
    def from_provenance(cls, axes: Iterable[PauliAxis]) -> "CPDDClass":
        c = Counter(axes)
        return cls(c[PauliAxis.X], c[PauliAxis.Y], c[PauliAxis.Z])

    @property
    def counts(self) -> dict[PauliAxis, int]:
        return {
            PauliAxis.X: self.n_x,
            PauliAxis.Y: self.n_y,
            PauliAxis.Z: self.n_z,
        }

    @property
    def total(self) -> int:
        return self.n_x + self.n_y + self.n_z

    @property
    def K(self) -> int:
        return 2 ** self.total

    def d(self, axis: PauliAxis) -> int:
        if axis == PauliAxis.I:
            raise ValueError("per-axis order is defined for X, Y, Z only")
        return self.total - self.counts[axis]

    @property
    def d_x(self) -> int:
        return self.n_y + self.n_z

    @property
    def d_y(self) -> int:
        return self.n_x + self.n_z

    @property
    def d_z(self) -> int:
        return self.n_x + self.n_y

    @property
    def N(self) -> int:
        return min(self.d_x, self.d_y, self.d_z)

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.n_x, self.n_y, self.n_z)

    def to_json(self) -> dict:
        return {
            "n_x": self.n_x,
            "n_y": self.n_y,
            "n_z": self.n_z,
            "K": self.K,
            "d": {"x": self.d_x, "y": self.d_y, "z": self.d_z},
            "N": self.N,
        }

    def __str__(self) -> str:
        return f"{{{self.n_x},{self.n_y},{self.n_z}}}"


def projection(axis: PauliAxis) -> PulseSequence:
    """The two-pulse primitive P_i P_i along a nontrivial axis."""
    axis = PauliAxis(axis)
    if axis == PauliAxis.I:
        raise ValueError("a projection must act along X, Y, or Z")
    pulse = PhasedPauli(0, axis)
    return PulseSequence((pulse, pulse), provenance=(axis,))


def concat(outer: PulseSequence, inner: PulseSequence) -> PulseSequence:
    """Concatenation outer[inner]: each outer pulse is preceded by a full
    copy of inner and fuses with the last inner pulse of its block (no free
    evolution between the two), so K grows multiplicatively.
    """
    pulses: list[PhasedPauli] = []
    body = inner.pulses[:-1]
    last = inner.pulses[-1]
    for a in outer.pulses:
        pulses.extend(body)
        pulses.append(mul(a, last))
    prov = None
    if outer.provenance is not None and inner.provenance is not None:
        prov = inner.provenance + outer.provenance
    return PulseSequence(tuple(pulses), provenance=prov)


def is_cyclic(seq: PulseSequence) -> tuple[bool, Optional[int]]:
    """Whether the ordered pulse product is the identity up to a phase.

    Returns (flag, phase_pow) with the exact phase as a power of i when the
    sequence is cyclic, else (False, None). The product is taken in
    application order (later pulses multiply from the left).
    """
    acc = PhasedPauli.identity()
    for p in seq.pulses:
        acc = mul(p, acc)
    if acc.axis != PauliAxis.I:
        return False, None
    return True, acc.phase_pow


def class_of(n_x: int, n_y: int, n_z: int) -> CPDDClass:
    """CPDD class from per-axis projection counts."""
    return CPDDClass(n_x, n_y, n_z)


def cpdd_from_order(order: Iterable[PauliAxis]) -> PulseSequence:
    """Build the sequence p_outer[...[p_inner]] from axes listed innermost
    first, folding concatenation over projection primitives."""
    axes = [PauliAxis(a) for a in order]
    if not axes:
        raise ValueError("projection order must be non-empty")
    if any(a == PauliAxis.I for a in axes):
        raise ValueError("projection order may not contain I")
    seq = projection(axes[0])
    for ax in axes[1:]:
        seq = concat(projection(ax), seq)
    return seq


def canonical_order(cls: CPDDClass) -> list[PauliAxis]:
    """Deterministic class representative: z projections innermost, then y,
    then x outermost. Any permutation lands in the same class; this picks
    one so elaboration is reproducible."""
    return (
        [PauliAxis.Z] * cls.n_z
        + [PauliAxis.Y] * cls.n_y
        + [PauliAxis.X] * cls.n_x
    )


def k_min(order: int) -> int:
    """Minimum pulse count achieving suppression order N.

    log2(K_min) = ceil(3N/2), which reproduces the series 4, 8, 32, 64,
    256, ... for N = 1, 2, 3, 4, 5. N = 0 is covered by the single
    projection with two pulses.
    """
    if order < 0:
        raise ValueError("suppression order must be non-negative")
    if order == 0:
        return 2
    return 2 ** ((3 * order + (order % 2)) // 2)


def oudd(order: int) -> CPDDClass:
    """Class achieving suppression order k with minimal pulses:
    {(k-m)/2, (k+m)/2, (k+m)/2} with m = k mod 2."""
    if order < 1:
        raise ValueError("order must be >= 1")
    m = order % 2
    return CPDDClass((order - m) // 2, (order + m) // 2, (order + m) // 2)


class CatalogRow(NamedTuple):
    name: str
    counts: tuple[int, int, int]
    pattern: str
    K: int
    N: int


def catalog(cdd_levels: int = 4, ga8_levels: int = 3) -> list[CatalogRow]:
    """Known uniform DD schemes expressed as CPDD classes.

    Count triples are the conventional representatives (sorted ascending);
    concrete generators may permute axes without changing K or N.
    """
    rows = [
        CatalogRow("Projection", (0, 0, 1), "P_iP_i", 2, 0),
        CatalogRow("PDD(CDD_1)", (0, 1, 1), "P_iP_jP_iP_j", 4, 1),
        CatalogRow("GA8_a", (1, 1, 1), "IP_iP_jP_iIP_iP_jP_i", 8, 2),
    ]
    for level in range(2, cdd_levels + 1):
        rows.append(
            CatalogRow(
                f"CDD_{level}",
                (0, level, level),
                f"CDD_1[CDD_{level - 1}]",
                4 ** level,
                level,
            )
        )
    for level in range(2, ga8_levels + 1):
        rows.append(
            CatalogRow(
                f"GA8_{level}",
                (level, level, level),
                f"GA8_a[GA8_{level - 1}]",
                8 ** level,
                2 * level,
            )
        )
    return rows


def check_odd_sites(seq: PulseSequence) -> bool:
    """Whether every odd site (first-applied, third-applied, ...) carries
    the same pulse axis. Phases are ignored."""
    odd = seq.axes[::2]
    return all(a == odd[0] for a in odd)


def check_half_repeat(seq: PulseSequence) -> bool:
    """Whether the first and second halves agree axis-by-axis."""
    k = seq.K
    if k % 2 != 0:
        raise ValueError("half-repetition check requires an even pulse count")
    return seq.axes[: k // 2] == seq.axes[k // 2 :]


def equivalent(a: PulseSequence, b: PulseSequence) -> bool:
    """Class equality: per-axis projection counts agree (order-insensitive).

    Defined only for provenance-built sequences; arbitrary pulse lists have
    no class assignment.
    """
    if a.provenance is None or b.provenance is None:
        raise ValueError("equivalence requires provenance on both sequences")
    return Counter(a.provenance) == Counter(b.provenance)
