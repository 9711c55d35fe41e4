"""Finite semigroups and the subpower membership problem."""

from .classify import (
    Complexity,
    ComplexityVerdict,
    HardnessIdempotents,
    classify,
    classify_general,
    classify_rees,
    classify_rees_identity,
    find_nphard_triple,
    find_pspace_triple,
    hardness_idempotents,
    is_regular_band,
    mixed_jclass,
    verify_verdict,
)
from .rees import (
    ONE,
    ZERO,
    CatalogEntry,
    ReesStructure,
    build_rees,
    catalog,
    has_zero_divisors,
    is_zero_simple_matrix,
    one_block,
    rees_product,
)
from .reduce import (
    CnfFormula,
    Q3SatFormula,
    eval_cnf,
    eval_q3sat,
    pair_lift,
    parse_dimacs,
    parse_q3sat,
    q3sat_to_smp,
    q3sat_witness,
    sat_to_smp,
    sat_witness,
)
from .semigroup import (
    FiniteSemigroup,
    GreensStructure,
    adjoin_identity,
    compute_greens,
    cyclic_subsemigroup,
    direct_product,
    generates_group,
    idempotent_power,
    is_regular,
    multiply,
    tuple_multiply,
)
from .smp import (
    BudgetExceeded,
    ClosureResult,
    SmpInstance,
    WordEdgeSet,
    check_witness,
    compress_witness_one_block_identity,
    edge_set,
    generated_subpower,
    np_certificate,
    shorten_word,
    solve_closure,
    solve_one_block,
    words_equivalent_rees,
)

__version__ = "0.1.0"

__all__ = [
    "Complexity",
    "ComplexityVerdict",
    "HardnessIdempotents",
    "classify",
    "classify_general",
    "classify_rees",
    "classify_rees_identity",
    "find_nphard_triple",
    "find_pspace_triple",
    "hardness_idempotents",
    "is_regular_band",
    "mixed_jclass",
    "verify_verdict",
    "ONE",
    "ZERO",
    "CatalogEntry",
    "ReesStructure",
    "build_rees",
    "catalog",
    "has_zero_divisors",
    "is_zero_simple_matrix",
    "one_block",
    "rees_product",
    "CnfFormula",
    "Q3SatFormula",
    "eval_cnf",
    "eval_q3sat",
    "pair_lift",
    "parse_dimacs",
    "parse_q3sat",
    "q3sat_to_smp",
    "q3sat_witness",
    "sat_to_smp",
    "sat_witness",
    "FiniteSemigroup",
    "GreensStructure",
    "adjoin_identity",
    "compute_greens",
    "cyclic_subsemigroup",
    "direct_product",
    "generates_group",
    "idempotent_power",
    "is_regular",
    "multiply",
    "tuple_multiply",
    "BudgetExceeded",
    "ClosureResult",
    "SmpInstance",
    "WordEdgeSet",
    "check_witness",
    "compress_witness_one_block_identity",
    "edge_set",
    "generated_subpower",
    "np_certificate",
    "shorten_word",
    "solve_closure",
    "solve_one_block",
    "words_equivalent_rees",
]
