"""uteq: constructive roots for regular equations over UT_n(F_p)."""

from .nil_algebra import AlgebraElement, PositionSet, SupportPath
from .ut_group import GroupElement, commutator
from .embeddings import (
    PHI,
    PSI,
    EmbeddingDescriptor,
    build_embedding,
    decompose_to_generators,
)
from .words import (
    BaseAtom,
    CommAtom,
    ConstLetter,
    NormalForm,
    Word,
    WordSyntaxError,
    XLetter,
    XPowAtom,
    atom_bracket,
    atom_min_level,
    atom_x_exponent,
    collect,
    evaluate_normal_form,
    evaluate_tail,
    evaluate_word,
    parse_word,
    render_word,
    substitute,
)
from .oracle import (
    CapExceededError,
    SearchSpec,
    brute_solve,
    enumerate_group,
    group_order,
)
from .solver import (
    IN_GROUP,
    UNSUPPORTED,
    Correction,
    CorrectionStuckError,
    LevelTrace,
    NotRegularError,
    SolveError,
    SolveReport,
    SolverInternalError,
    UnsupportedCaseError,
    VerificationError,
    correction_path,
    correction_path_from,
    detect_case,
    initial_element,
    solve_heisenberg,
    solve_prime_exponent,
    solve_regular,
)

__version__ = "0.1.0"

__all__ = [
    "AlgebraElement",
    "PositionSet",
    "SupportPath",
    "GroupElement",
    "commutator",
    "PHI",
    "PSI",
    "EmbeddingDescriptor",
    "build_embedding",
    "decompose_to_generators",
    "Word",
    "WordSyntaxError",
    "XLetter",
    "ConstLetter",
    "BaseAtom",
    "XPowAtom",
    "CommAtom",
    "NormalForm",
    "parse_word",
    "render_word",
    "substitute",
    "collect",
    "evaluate_word",
    "evaluate_tail",
    "evaluate_normal_form",
    "atom_bracket",
    "atom_x_exponent",
    "atom_min_level",
    "SearchSpec",
    "CapExceededError",
    "brute_solve",
    "enumerate_group",
    "group_order",
    "IN_GROUP",
    "UNSUPPORTED",
    "SolveError",
    "NotRegularError",
    "UnsupportedCaseError",
    "CorrectionStuckError",
    "VerificationError",
    "SolverInternalError",
    "Correction",
    "LevelTrace",
    "SolveReport",
    "detect_case",
    "initial_element",
    "correction_path",
    "correction_path_from",
    "solve_prime_exponent",
    "solve_regular",
    "solve_heisenberg",
]
