"""Verification toolkit for max-plus linear systems.

Exact max-plus matrix algebra, difference-bound-matrix regions, predicate
abstraction of the induced piecewise-affine dynamics, a linear temporal
logic over event time differences, and a bounded model checker with
counterexample-guided refinement that is complete up to the spectral
transient plus cyclicity.
"""

from .maxplus import (
    DEFAULT_SCALE,
    DimensionError,
    IrreducibilityError,
    MaxPlusMatrix,
    RegularityError,
    SearchCapExceeded,
    SpectralProfile,
    eigenvalue,
    from_scaled,
    identity,
    is_irreducible,
    mat_multiply,
    mat_vec,
    to_scaled,
    transient_cyclicity,
)
from .dbm import (
    DBM,
    EMPTY,
    AffineDynamics,
    Bound,
    dbms_equal,
    image,
    intersect,
    point_dbm,
    preimage,
    sample,
)
from .abstraction import (
    AbstractState,
    AbstractTransitionSystem,
    Predicate,
    build_transition_system,
    generate_abstract_states,
    predicates_from_matrix,
    predicates_from_timediff,
)
from .ltl import (
    DirectResult,
    ParseError,
    TimeDiffProposition,
    atoms_of,
    direct_check,
    eval_lasso,
    eval_noloop,
    evaluate_timediff,
    nnf,
    parse,
    simplify,
    translate,
)
from .bmc import (
    AbstractPath,
    Counterexample,
    SpuriousnessResult,
    Verdict,
    completeness_threshold,
    empirical_threshold,
    find_counterexample,
    is_spurious_lasso,
    is_spurious_noloop,
    refine,
    simulate,
    verify,
)
from .modelio import (
    Model,
    ModelError,
    load_model,
    random_irreducible_mpl,
    random_mpl,
    save_model,
)
from .bench import BenchmarkConfig, bench_abstraction, bench_ct

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_SCALE",
    "DimensionError",
    "IrreducibilityError",
    "MaxPlusMatrix",
    "RegularityError",
    "SearchCapExceeded",
    "SpectralProfile",
    "eigenvalue",
    "from_scaled",
    "identity",
    "is_irreducible",
    "mat_multiply",
    "mat_vec",
    "to_scaled",
    "transient_cyclicity",
    "DBM",
    "EMPTY",
    "AffineDynamics",
    "Bound",
    "dbms_equal",
    "image",
    "intersect",
    "point_dbm",
    "preimage",
    "sample",
    "AbstractState",
    "AbstractTransitionSystem",
    "Predicate",
    "build_transition_system",
    "generate_abstract_states",
    "predicates_from_matrix",
    "predicates_from_timediff",
    "DirectResult",
    "ParseError",
    "TimeDiffProposition",
    "atoms_of",
    "direct_check",
    "eval_lasso",
    "eval_noloop",
    "evaluate_timediff",
    "nnf",
    "parse",
    "simplify",
    "translate",
    "AbstractPath",
    "Counterexample",
    "SpuriousnessResult",
    "Verdict",
    "completeness_threshold",
    "empirical_threshold",
    "find_counterexample",
    "is_spurious_lasso",
    "is_spurious_noloop",
    "refine",
    "simulate",
    "verify",
    "Model",
    "ModelError",
    "load_model",
    "random_irreducible_mpl",
    "random_mpl",
    "save_model",
    "BenchmarkConfig",
    "bench_abstraction",
    "bench_ct",
]
