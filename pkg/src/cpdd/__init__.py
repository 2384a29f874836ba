"""Toolkit for uniform pi-pulse dynamical decoupling via concatenated
projections: sequence construction, exact average-Hamiltonian checks, and
spin-bath simulation of suppression orders."""

from .pauli import PauliAxis, PhasedPauli, conj_sign, mul
from .sequence import (
    CPDDClass,
    PulseSequence,
    catalog,
    check_half_repeat,
    check_odd_sites,
    class_of,
    concat,
    cpdd_from_order,
    equivalent,
    is_cyclic,
    k_min,
    oudd,
    projection,
)
from .symbolic import (
    BathPoly,
    BathSymbol,
    GaussianRational,
    SBOperator,
    avg_h0,
    avg_h1,
    h0_generic,
    interval_hamiltonians,
    project0,
    toggling_frames,
    verify_lemma1,
)
from .numsim import (
    Propagator,
    SlopeEstimate,
    SpinBathModel,
    build_model,
    distance,
    estimate_order,
    evolve,
    fit_h1_convention,
    free_propagator,
    instantiate,
    magnus_log_oracle,
    numeric_check_h0,
)
from .dsl import ParseError, elaborate, parse, to_text

__version__ = "0.1.0"
