"""Exact truncated q-series, Bailey pairs and a registry of q-series identities."""

from .bailey import (
    BaileyPair,
    PairCheckReport,
    bailey_lemma,
    bailey_lemma_y_to_infinity,
    base_change,
    scaled_pair,
    unit_pair,
    verify_pair,
)
from .combinatorics import (
    NormCount,
    PartitionTable,
    enumerate_gapfree_odd,
    norm_form_count,
    norm_form_solutions,
    o_count,
    o_star_count,
    s_plus_t,
)
from .errors import (
    BeyondTruncation,
    DegenerateParameter,
    EvenInput,
    NonConvergent,
    NonTerminating,
    QBaileyError,
    UnknownName,
    ZeroLeadingTerm,
)
from .identities import (
    Identity,
    LacunarityReport,
    VerificationReport,
    build_sides,
    expand_named_series,
    lacunarity_scan,
    lookup,
    registry,
    verify_identity,
)
from .pairs import (
    corollary_alpha_literal,
    pair_andrews_abc,
    pair_andrews_b_neg_c,
    pair_cor22,
    pair_cor23,
    pair_cor24,
    pair_theorem21,
    pair_x_to_zero,
    theorem21_direct,
)
from .qseries import (
    Monomial,
    QSeries,
    TermAccumulator,
    arith,
    coeff_at,
    invert,
    monomial_series,
    poch_finite,
    poch_finite_inverse,
    poch_infinite,
    poch_infinite_inverse,
)

__version__ = "0.1.0"
