"""Linguistic optimization: perceptual reasoning over IT2 fuzzy word models,
with 2-tuple and Tsukamoto baselines and the shared student-performance
case-study fixtures."""

from .fuzzy import (
    DomainError,
    FouShape,
    Interval,
    IT2Word,
    LingoptError,
    Trapezoid,
    alpha_cut,
    classify_fou,
    membership_envelope,
)
from .similarity import (
    Centroid,
    DegenerateWordError,
    Discretization,
    centroid_brute,
    centroid_ekm,
    jaccard,
    rank_by_centroid,
)
from .codebook import (
    Codebook,
    CodebookError,
    DataIntervalSet,
    EncoderError,
    EndpointSpec,
    encode_word,
    load_codebook,
    register_encoder,
    sample_person_fou,
    save_codebook,
)
from .reasoning import (
    FiringLevel,
    NoRuleFiredError,
    Objective,
    PrOutput,
    Rule,
    RuleBase,
    decode,
    fire,
    lwa,
    solve_molop,
    solve_solop,
    synthesize_consequent,
)
from .twotuple import (
    OrdinalTermSet,
    OutOfScaleError,
    TwoTuple,
    compare,
    molop_solve,
    overflow_check,
    solop_aggregate,
    to_two_tuple,
)
from .tsukamoto import (
    EqualityConstraint,
    MonotoneMf,
    TsukamotoRule,
    crisp_output,
    optimize,
)
from .problems import (
    Alternative,
    EngineMismatchError,
    ProblemBundle,
    ProblemError,
    case_molop,
    case_solop,
    load_problem,
    solve_pr_bundle,
    solve_two_tuple_bundle,
)

__all__ = [name for name in dir() if not name.startswith("_")]
