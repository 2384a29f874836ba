"""Exact average-Hamiltonian algebra over abstract bath operators.

System-bath operators are sums sigma_mu (x) poly_mu where each poly is a
noncommutative polynomial in the four free bath symbols B0, Bx, By, Bz with
exact Gaussian-rational coefficients. Each term also carries an integer
grade, the attached power of the pulse interval tau_d; tau_d itself is never
given a numeric value at this layer.

Bath words are kept free: no relations are assumed between the symbols, and
equality is plain coefficient-map equality after commutators have been
expanded into words.

Two piecewise pictures of a pulsed evolution are exposed:

* ``toggling_frames``   - frame j is the Hamiltonian conjugated by the first
  j pulses (the state of affairs just after pulse j). Averaging these frames
  is the symmetrization sum defining the zeroth-order average Hamiltonian.
* ``interval_hamiltonians`` - the Hamiltonian on each free-evolution
  interval (before bringing in the pulse that ends it). These are the
  piecewise generators of the actual propagator, hence the correct input
  for the first-order (commutator) average. For cyclic sequences the two
  lists contain the same operators, cyclically shifted.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence

from .pauli import PauliAxis, PhasedPauli, axis_product, conj_sign, mul
from .sequence import PulseSequence, concat, is_cyclic

__all__ = [
    "GaussianRational",
    "BathSymbol",
    "BathWord",
    "BathPoly",
    "SBOperator",
    "poly_commutator",
    "h0_generic",
    "toggling_frames",
    "interval_hamiltonians",
    "avg_h0",
    "avg_h1",
    "project0",
    "verify_lemma1",
]


@dataclass(frozen=True)
class GaussianRational:
    """Exact complex number with rational real and imaginary parts."""

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    def __post_init__(self) -> None:
        object.__setattr__(self, "re", Fraction(self.re))
        object.__setattr__(self, "im", Fraction(self.im))

    def __add__(self, other: "GaussianRational") -> "GaussianRational":
        return GaussianRational(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "GaussianRational") -> "GaussianRational":
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __neg__(self) -> "GaussianRational":
        return GaussianRational(-self.re, -self.im)

    def __mul__(self, other: "GaussianRational") -> "GaussianRational":
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    def times_i_pow(self, k: int) -> "GaussianRational":
        k %= 4
        if k == 0:
            return self
        if k == 1:
            return GaussianRational(-self.im, self.re)
        if k == 2:
            return -self
        return GaussianRational(self.im, -self.re)

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))

    def __str__(self) -> str:
        if not self.im:
            return str(self.re)
        if not self.re:
            return f"{self.im}*i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}*i"


ONE = GaussianRational(Fraction(1))
MINUS_I = GaussianRational(Fraction(0), Fraction(-1))


class BathSymbol(enum.Enum):
    """Free, mutually noncommuting bath operators. B0 is the pure-bath part."""

    B0 = "B0"
    BX = "Bx"
    BY = "By"
    BZ = "Bz"

    def __str__(self) -> str:
        return self.value


_SYMBOL_ORDER = {s: i for i, s in enumerate(BathSymbol)}

_AXIS_SYMBOL = {
    PauliAxis.I: BathSymbol.B0,
    PauliAxis.X: BathSymbol.BX,
    PauliAxis.Y: BathSymbol.BY,
    PauliAxis.Z: BathSymbol.BZ,
}

BathWord = tuple  # tuple[BathSymbol, ...]; the empty word is the scalar unit


def _word_key(item):
    (grade, word), _ = item
    return (grade, len(word), tuple(_SYMBOL_ORDER[s] for s in word))


class BathPoly:
    """Noncommutative polynomial: map (grade, word) -> exact coefficient."""

    __slots__ = ("_terms",)

    def __init__(
        self,
        terms: Optional[Mapping[tuple[int, BathWord], GaussianRational]] = None,
    ) -> None:
        self._terms = {k: v for k, v in (terms or {}).items() if v}

    @classmethod
    def zero(cls) -> "BathPoly":
        return cls()

    @classmethod
    def symbol(cls, s: BathSymbol, grade: int = 0) -> "BathPoly":
        return cls({(grade, (s,)): ONE})

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def items(self) -> list[tuple[tuple[int, BathWord], GaussianRational]]:
        return sorted(self._terms.items(), key=_word_key)

    def coefficient(self, word: BathWord, grade: int = 0) -> GaussianRational:
        return self._terms.get((grade, tuple(word)), GaussianRational())

    def __add__(self, other: "BathPoly") -> "BathPoly":
        out = dict(self._terms)
        for key, coef in other._terms.items():
            acc = out.get(key)
            out[key] = coef if acc is None else acc + coef
        return BathPoly(out)

    def __neg__(self) -> "BathPoly":
        return BathPoly({k: -v for k, v in self._terms.items()})

    def __sub__(self, other: "BathPoly") -> "BathPoly":
        return self + (-other)

    def scale(self, factor: GaussianRational, grade_shift: int = 0) -> "BathPoly":
        if not factor:
            return BathPoly()
        return BathPoly(
            {
                (grade + grade_shift, word): coef * factor
                for (grade, word), coef in self._terms.items()
            }
        )

    def __mul__(self, other: "BathPoly") -> "BathPoly":
        out: dict[tuple[int, BathWord], GaussianRational] = {}
        for (g1, w1), c1 in self._terms.items():
            for (g2, w2), c2 in other._terms.items():
                key = (g1 + g2, w1 + w2)
                coef = c1 * c2
                acc = out.get(key)
                out[key] = coef if acc is None else acc + coef
        return BathPoly(out)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BathPoly):
            return NotImplemented
        return self._terms == other._terms

    def __repr__(self) -> str:
        if self.is_zero:
            return "0"
        parts = []
        for (grade, word), coef in self.items():
            w = "*".join(str(s) for s in word) if word else "1"
            g = "" if grade == 0 else (" tau_d" if grade == 1 else f" tau_d^{grade}")
            parts.append(f"({coef}){g} {w}")
        return " + ".join(parts)

    def to_json(self) -> list[dict]:
        return [
            {
                "grade": grade,
                "word": [str(s) for s in word],
                "re": str(coef.re),
                "im": str(coef.im),
            }
            for (grade, word), coef in self.items()
        ]


def poly_commutator(p: BathPoly, q: BathPoly) -> BathPoly:
    """Word-level commutator p q - q p, left unsimplified."""
    return p * q - q * p


class SBOperator:
    """System-bath operator sum_mu sigma_mu (x) poly_mu (identity included)."""

    __slots__ = ("_comps",)

    def __init__(self, comps: Optional[Mapping[PauliAxis, BathPoly]] = None) -> None:
        table = [BathPoly.zero()] * 4
        for axis, poly in (comps or {}).items():
            table[PauliAxis(axis)] = poly
        self._comps = tuple(table)

    @classmethod
    def zero(cls) -> "SBOperator":
        return cls()

    def component(self, axis: PauliAxis) -> BathPoly:
        return self._comps[PauliAxis(axis)]

    @property
    def is_zero(self) -> bool:
        return all(p.is_zero for p in self._comps)

    def components(self) -> dict[PauliAxis, BathPoly]:
        return {axis: self._comps[axis] for axis in PauliAxis}

    def __add__(self, other: "SBOperator") -> "SBOperator":
        return SBOperator(
            {axis: self._comps[axis] + other._comps[axis] for axis in PauliAxis}
        )

    def __sub__(self, other: "SBOperator") -> "SBOperator":
        return SBOperator(
            {axis: self._comps[axis] - other._comps[axis] for axis in PauliAxis}
        )

    def scale(self, factor: GaussianRational, grade_shift: int = 0) -> "SBOperator":
        return SBOperator(
            {axis: self._comps[axis].scale(factor, grade_shift) for axis in PauliAxis}
        )

    def conjugated_by(self, p_axis: PauliAxis) -> "SBOperator":
        """P^dag H P for any pulse P with the given axis (phase drops out)."""
        out = {}
        for axis in PauliAxis:
            poly = self._comps[axis]
            if conj_sign(p_axis, axis) < 0:
                poly = -poly
            out[axis] = poly
        return SBOperator(out)

    def commutator(self, other: "SBOperator") -> "SBOperator":
        """[self, other], expanding the Pauli factors with exact phases and
        the bath factors as free word products."""
        out = {axis: BathPoly.zero() for axis in PauliAxis}
        for a in PauliAxis:
            p = self._comps[a]
            if p.is_zero:
                continue
            for b in PauliAxis:
                q = other._comps[b]
                if q.is_zero:
                    continue
                k_ab, c = axis_product(a, b)
                k_ba, _ = axis_product(b, a)
                out[c] = out[c] + (p * q).scale(ONE.times_i_pow(k_ab)) - (
                    q * p
                ).scale(ONE.times_i_pow(k_ba))
        return SBOperator(out)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SBOperator):
            return NotImplemented
        return self._comps == other._comps

    def pretty(self) -> str:
        labels = {
            PauliAxis.I: "1",
            PauliAxis.X: "sigma_x",
            PauliAxis.Y: "sigma_y",
            PauliAxis.Z: "sigma_z",
        }
        parts = [
            f"{labels[axis]} (x) [{self._comps[axis]!r}]"
            for axis in PauliAxis
            if not self._comps[axis].is_zero
        ]
        return " + ".join(parts) if parts else "0"

    def __repr__(self) -> str:
        return f"SBOperator({self.pretty()})"

    def to_json(self) -> dict:
        return {axis.name: self._comps[axis].to_json() for axis in PauliAxis}


def h0_generic() -> SBOperator:
    """The generic static Hamiltonian 1(x)B0 + sum_i sigma_i(x)B_i.

    Any system-only term can be absorbed into the axis components, so this
    one operator is a faithful test vector for the averaging maps.
    """
    return SBOperator(
        {axis: BathPoly.symbol(_AXIS_SYMBOL[axis]) for axis in PauliAxis}
    )


def toggling_frames(seq: PulseSequence, h: SBOperator) -> list[SBOperator]:
    """Frame j = U_j^dag H U_j with U_j the product of the first j pulses."""
    frames = []
    u = PhasedPauli.identity()
    for pulse in seq.pulses:
        u = mul(pulse, u)
        frames.append(h.conjugated_by(u.axis))
    return frames


def interval_hamiltonians(seq: PulseSequence, h: SBOperator) -> list[SBOperator]:
    """Piecewise generators: the Hamiltonian on each free interval, i.e.
    conjugation by the pulses already applied when the interval starts."""
    return [h] + toggling_frames(seq, h)[:-1]


def avg_h0(frames: Sequence[SBOperator]) -> SBOperator:
    """Exact arithmetic mean of the frames (the zeroth-order average)."""
    if not frames:
        raise ValueError("need at least one frame")
    total = frames[0]
    for f in frames[1:]:
        total = total + f
    return total.scale(GaussianRational(Fraction(1, len(frames))))


def avg_h1(hams: Sequence[SBOperator]) -> SBOperator:
    """First-order average of piecewise-constant evolution over K equal
    intervals of length tau_d:

        (-i tau_d / 2K) * sum_{j>k} [H_j, H_k]

    The input must be the interval Hamiltonians in time order; the tau_d
    factor is carried as a +1 grade shift on every term.
    """
    if not hams:
        raise ValueError("need at least one interval Hamiltonian")
    k = len(hams)
    acc = SBOperator.zero()
    for j in range(1, k):
        for i in range(j):
            acc = acc + hams[j].commutator(hams[i])
    factor = MINUS_I * GaussianRational(Fraction(1, 2 * k))
    return acc.scale(factor, grade_shift=1)


def project0(axis: PauliAxis, h: SBOperator) -> SBOperator:
    """Zeroth-order action of the projection sequence p_axis: keep the
    identity and on-axis components, kill the two orthogonal ones."""
    axis = PauliAxis(axis)
    if axis == PauliAxis.I:
        raise ValueError("projection axis must be X, Y, or Z")
    return SBOperator(
        {
            PauliAxis.I: h.component(PauliAxis.I),
            axis: h.component(axis),
        }
    )


def _projection_axis(seq: PulseSequence) -> PauliAxis:
    if (
        seq.K == 2
        and seq.pulses[0].axis == seq.pulses[1].axis
        and seq.pulses[0].axis != PauliAxis.I
    ):
        return seq.pulses[0].axis
    raise ValueError("sequence A must be a projection primitive P_iP_i")


def verify_lemma1(
    a: PulseSequence, b: PulseSequence, h: Optional[SBOperator] = None
) -> bool:
    """Check that concatenating the projection a around b composes the
    zeroth-order maps: averaging the frames of a[b] must equal averaging the
    frames of b applied to the already-projected Hamiltonian. Exact
    operator equality; b must be cyclic for the identity to hold."""
    axis = _projection_axis(a)
    cyclic, _ = is_cyclic(b)
    if not cyclic:
        raise ValueError("sequence B must be cyclic")
    if h is None:
        h = h0_generic()
    lhs = avg_h0(toggling_frames(concat(a, b), h))
    rhs = avg_h0(toggling_frames(b, project0(axis, h)))
    return lhs == rhs
