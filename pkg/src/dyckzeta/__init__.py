"""Exact zeta functions, periodic-point counts, and topological entropy of
Markov-Dyck shifts of finite directed multigraphs."""

from .closed_forms import (
    CubicBranch,
    FamilyParams,
    cubic_tree_series,
    cubic_tree_value,
    dyck_gf_and_zeta,
    family_code_gf,
    family_entropy,
    family_entropy_poly,
    family_graph,
    family_zeta,
    fibonacci_dyck_entropy,
    fibonacci_dyck_zeta,
    fibonacci_graph,
    loop_graph,
)
from .entropy import (
    BoundReport,
    CombinedBoundSummary,
    EntropyReport,
    code_system_det,
    elementary_chain_gf_value,
    elementary_gf_value,
    entropy_bounds,
    entropy_markov_dyck,
    entropy_periodic_estimate,
    eval_code_gf,
    first_return_value,
    switch_system_entropy,
)
from .errors import (
    BranchError,
    BudgetExceeded,
    DegenerateMinor,
    DomainError,
    DyckZetaError,
    InternalInconsistency,
    InvalidGraph,
    InvalidMatrix,
    InvalidVertex,
    NoData,
    NoPerronRoot,
    NoRoot,
    NotInvertible,
    NotIrreducible,
    SingularityBeforeRoot,
)
from .graphs import (
    Graph,
    IntPolynomial,
    Path,
    build_graph,
    char_poly,
    char_poly_minor,
    first_return_series,
    perron_rho,
)
from .semigroup import (
    UNIT,
    ZERO,
    Letter,
    SemigroupElement,
    alphabet,
    append_letter,
    count_code_words,
    count_periodic,
    count_words,
    idempotent,
    involute,
    is_admissible,
    multiply,
    parse_word,
    periodic_check_fallback,
    periodic_orbit_check,
    reduce_word,
    word_str,
)
from .series import (
    CodeSystemSolution,
    Series,
    SeriesMatrix,
    adjacency_z_matrix,
    circular_code_zeta,
    code_block_matrix,
    diagonal_matrix,
    markov_dyck_zeta,
    periodic_counts_from_zeta,
    solve_code_system,
    zeta_from_code_matrix,
)

__version__ = "0.1.0"
