"""Exact verification of hook-length tree identities, plus the random
growth process whose step probabilities realize them."""

from .exact import PoleError, Polynomial, RationalFunction, binomial_poly
from .families import (
    BinaryFamily,
    BranchingOracle,
    ConstantBranching,
    DepthBranching,
    Family,
    FamilyConfigError,
    OracleSyntaxError,
    OrderedFamily,
    TableBranching,
    TbarFamily,
    enum_binary,
    enum_ordered,
    enum_tbar,
    parse_oracle,
)
from .identities import (
    ConsistencyError,
    IdentityReport,
    SizeLimitError,
    brute_force_labelings,
    completion_census,
    completion_count,
    han2_lhs,
    han_lhs,
    hook_count,
    tbar_lhs,
    verify_han,
    verify_han2,
    verify_tbar,
    verify_yang,
    yang_lhs,
    yang_sum_at,
    yang_term,
)
from .sampler import (
    AddableSite,
    GrowthState,
    ProbabilityRangeError,
    addable_sites,
    attach,
    enumerate_labelings,
    grow,
    labeling_probability,
    lemma_check,
    shape_probability,
    single_root,
    start,
)
from .stats import (
    Census,
    CensusEntry,
    GofReport,
    category_masses,
    census_csv,
    chi2_sf,
    chi_squared_gof,
    min_samples,
    regularized_gamma_q,
    run_census,
)
from .trees import (
    AddressError,
    BinaryTree,
    LabeledTree,
    LabelingError,
    OrderedTree,
    SlottedTree,
    TreeParseError,
    addresses,
    check_labeling,
    completion,
    decode,
    depth,
    encode,
    hook_lengths,
    subtree_at,
)

__all__ = [name for name in dir() if not name.startswith("_")]
