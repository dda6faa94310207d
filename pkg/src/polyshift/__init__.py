"""Full-rank factorization and strong shift equivalence over Z[x] and Q[x]."""

from .factor import (
    FactorizationIncomplete,
    FullRankFactorization,
    LUFactorization,
    MLPCertificate,
    NotIntegral,
    NotMLP,
    RankDeficient,
    full_rank_factorization,
    is_mlp,
    lu_gcd_factor,
    mlp_certificate,
    rational_matrix_quotient,
)
from .matrix import (
    Matrix,
    adjugate,
    char_poly_reversed,
    compound,
    det,
    mat_pow,
    minor,
    rank,
    rank_by_minors,
)
from .ring import QX, ZX, Domain, Poly, PolyRing, content_primitive, extended_gcd_field, poly_gcd
from .sse import (
    ElementaryStep,
    NilpotencyWitness,
    SSEChain,
    ShiftEquivalencePair,
    compose_chain_to_se,
    lag_index,
    power_chain_identity,
    sse_to_nonsingular,
    verify_elementary,
    verify_se,
    verify_sse_chain,
)
from .sphere import SPHERE, TRI, reduce_mod_sphere, verify_counterexample

__version__ = "0.1.0"
