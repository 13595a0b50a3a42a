"""Exact-arithmetic toolkit for finite quantum measure theories and the
co-event interpretation: measures and interference hierarchies, multiplicative
co-events with exact and approximate preclusion, partition classicality and
the principle classical partition, repeated-trial tail analytics, and exact
feasibility of probability measures on co-event spaces."""

from .core import (
    Event,
    HistoriesTheory,
    SampleSpace,
    SizeCapError,
    event_add,
    event_mul,
    load_theory,
    theory_from_json,
    theory_to_json,
)
from .coevents import (
    CoEvent,
    CoEventClass,
    classical_coevents,
    classify,
    dominates,
    dual,
    is_classical_on,
    is_preclusive,
    primitives,
)
from .partitions import (
    FatCoEventSet,
    Partition,
    is_classical_wrt_M,
    is_decoherent,
    is_preclusively_separable,
    principle_classical_partition,
    refines,
)
from .bernoulli import (
    BernoulliModel,
    TrialSequence,
    cumulative,
    even_odd_witness,
    hypothesis_test,
    prob_heads_count,
    prob_history,
    simulate,
    straddle_set_cardinality,
    tail_cutoff,
    uniform_primitive_cardinality,
)
from .dynamics import (
    FeasibilitySystem,
    QuadraticReport,
    build_feasibility,
    is_quadratic,
    max_probability,
    quadratic_defect,
    real_defect,
    solve_feasibility,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
