"""Exact-arithmetic border-rank certification and Waring decomposition.

The package certifies lower bounds on the symmetric border rank of
homogeneous polynomials through exact rank computations on catalecticant,
Young-flattening, and twisted-flattening matrices, evaluates the classical
invariants attached to them (Aronhold quartic, determinantal sextic), and
decomposes binary forms and general ternary quintics into sums of powers.
"""

from .exactla import ExactMatrix
from .forms import (
    HomogForm,
    LinearForm,
    from_monomial_coeffs,
    parse_polynomial,
    polynomial_from_json,
    power_form,
    power_sum,
    random_power_sum,
    to_polynomial_json,
    zero_form,
)
from .flattenings import (
    SkewTensor,
    cat_border_rank_lb,
    cat_matrix,
    grass_border_rank_lb,
    grass_skew_flattening,
    rank_profile,
    ternary_membership_consistent,
)
from .youngflat import (
    KoszulPattern,
    PowerRule,
    YoungFlattening,
    flattening_from_power_rule,
    koszul_matrix,
    power_span_basis,
    q_twisted_flattening,
    symmetric_twisted_flattening,
    x_power_yf_rank,
    yf_border_rank_lb,
    young_flattening,
)
from .invariants import (
    CertificateReport,
    StrategyRow,
    aronhold,
    aronhold_rank_test,
    certify,
    sextic_det33,
    strategy,
)
from .geom import (
    SecantDimReport,
    dim_sab,
    grass_series_degree,
    known_secant_degree,
    secant_dim,
    segre_grass,
    segre_sym,
    sym_series_degree,
)
from .decompose import (
    DecompositionError,
    WaringDecomposition,
    decompose_binary,
    decompose_quintic,
    kernel_base_locus_hint,
)

__version__ = "0.1.0"

__all__ = [
    "ExactMatrix",
    "HomogForm",
    "LinearForm",
    "SkewTensor",
    "KoszulPattern",
    "PowerRule",
    "YoungFlattening",
    "CertificateReport",
    "StrategyRow",
    "SecantDimReport",
    "WaringDecomposition",
    "DecompositionError",
    "aronhold",
    "aronhold_rank_test",
    "cat_border_rank_lb",
    "cat_matrix",
    "certify",
    "decompose_binary",
    "decompose_quintic",
    "dim_sab",
    "flattening_from_power_rule",
    "from_monomial_coeffs",
    "grass_border_rank_lb",
    "grass_series_degree",
    "grass_skew_flattening",
    "kernel_base_locus_hint",
    "known_secant_degree",
    "koszul_matrix",
    "parse_polynomial",
    "polynomial_from_json",
    "power_form",
    "power_span_basis",
    "power_sum",
    "q_twisted_flattening",
    "random_power_sum",
    "rank_profile",
    "secant_dim",
    "segre_grass",
    "segre_sym",
    "sextic_det33",
    "strategy",
    "sym_series_degree",
    "symmetric_twisted_flattening",
    "ternary_membership_consistent",
    "to_polynomial_json",
    "x_power_yf_rank",
    "yf_border_rank_lb",
    "young_flattening",
    "zero_form",
]
