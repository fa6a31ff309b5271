"""tailcmp: exact and certified tail-comparison verification.

Compares P(S >= s) against P(S + X >= s + m) for independent non-negative
integer random variables with integer means, decides the skewness and
loadedness hypotheses behind the comparison with certified trichotomous
verdicts, reproduces the classical binomial and Poisson tail chains, and
sweeps parameter grids hunting counterexamples to the two open prefix-sum
conjectures.
"""

__version__ = "0.1.0"

from .exact import (
    CertInterval,
    Comparison,
    UnresolvedError,
    as_interval,
    binom_coeff,
    compare,
    exp_interval,
)
from .dists import (
    BinomialSpec,
    CertDist,
    DEFAULT_PRECISION,
    FiniteDist,
    PoissonSpec,
    Precision,
    binomial_dist,
    convolve,
    convolve_cert,
    default_cutoff,
    mean_exact,
    poisson_pmf_ratio,
    poisson_truncate,
    tail_prob,
)
from .predicates import (
    AlphaSequence,
    ModeReport,
    Verdict,
    VerdictTag,
    alpha_sequence,
    check_l1,
    check_l2,
    check_right_skewed,
    check_single_sign_change,
    check_u_shaped,
    integer_mean_identity,
    mode_and_unimodality,
    poisson_alpha1_positive,
    poisson_l1_exact,
    poisson_right_skew_exact,
    power_vs_factorial,
)
from .verify import (
    HypothesisError,
    ProofCertificate,
    TailComparisonReport,
    compare_tails,
    poisson_left_loaded_route,
    tail_comparison_certificate,
    verify_chaundy_bullard,
    verify_jogdeo_samuels,
    verify_kane_poisson,
    verify_teicher,
)
from .sweep import (
    SweepOutcome,
    SweepResult,
    SweepSpec,
    check_conjecture1_point,
    check_conjecture2_point,
    conjecture1_grid,
    replay,
    run_sweep,
)

__all__ = [
    "__version__",
    "CertInterval",
    "Comparison",
    "UnresolvedError",
    "as_interval",
    "binom_coeff",
    "compare",
    "exp_interval",
    "BinomialSpec",
    "CertDist",
    "DEFAULT_PRECISION",
    "FiniteDist",
    "PoissonSpec",
    "Precision",
    "binomial_dist",
    "convolve",
    "convolve_cert",
    "default_cutoff",
    "mean_exact",
    "poisson_pmf_ratio",
    "poisson_truncate",
    "tail_prob",
    "AlphaSequence",
    "ModeReport",
    "Verdict",
    "VerdictTag",
    "alpha_sequence",
    "check_l1",
    "check_l2",
    "check_right_skewed",
    "check_single_sign_change",
    "check_u_shaped",
    "integer_mean_identity",
    "mode_and_unimodality",
    "poisson_alpha1_positive",
    "poisson_l1_exact",
    "poisson_right_skew_exact",
    "power_vs_factorial",
    "HypothesisError",
    "ProofCertificate",
    "TailComparisonReport",
    "compare_tails",
    "poisson_left_loaded_route",
    "tail_comparison_certificate",
    "verify_chaundy_bullard",
    "verify_jogdeo_samuels",
    "verify_kane_poisson",
    "verify_teicher",
    "SweepOutcome",
    "SweepResult",
    "SweepSpec",
    "check_conjecture1_point",
    "check_conjecture2_point",
    "conjecture1_grid",
    "replay",
    "run_sweep",
]
