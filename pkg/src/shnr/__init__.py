"""Operator functionals on PSD-weighted spaces and inequality certification."""

__version__ = "0.1.0"

from .errors import (
    ArityMismatchError,
    DimensionMismatchError,
    FamilyNeedsIdentityAError,
    NoAdjointError,
    NonSquareError,
    NotHermitianError,
    NotPSDError,
    ShnrError,
    UnknownIdError,
    ZeroOperatorError,
)
from .linalg import RankTolerance, hermitian_eig, pinv, psd_sqrt, spectral_norm, svd
from .space import CompressedOperator, SemiHilbertSpace, make_space
from .functionals import (
    BRUTE_FORCE_RANK_LIMIT,
    CosEstimate,
    Enclosure,
    ScanConfig,
    cos_A,
    crawford_A,
    dist_to_scalars,
    gap_bound,
    op_seminorm,
    oracle_sample_cA,
    oracle_sample_normA,
    oracle_sample_wA,
    sin_A,
    w_A,
)
from .certify import (
    Certificate,
    CertifyConfig,
    REGISTRY,
    SUITES,
    evaluate_certificate,
    run_suite,
    summarize,
)
from .ensembles import FAMILIES, EnsembleSpec, gen_operator, gen_space
from .campaign import campaign_config, run_campaign

__all__ = [
    "ArityMismatchError",
    "BRUTE_FORCE_RANK_LIMIT",
    "Certificate",
    "CertifyConfig",
    "CompressedOperator",
    "CosEstimate",
    "DimensionMismatchError",
    "EnsembleSpec",
    "Enclosure",
    "FAMILIES",
    "FamilyNeedsIdentityAError",
    "NoAdjointError",
    "NonSquareError",
    "NotHermitianError",
    "NotPSDError",
    "REGISTRY",
    "RankTolerance",
    "SUITES",
    "ScanConfig",
    "SemiHilbertSpace",
    "ShnrError",
    "UnknownIdError",
    "ZeroOperatorError",
    "campaign_config",
    "cos_A",
    "crawford_A",
    "dist_to_scalars",
    "evaluate_certificate",
    "gap_bound",
    "gen_operator",
    "gen_space",
    "hermitian_eig",
    "make_space",
    "op_seminorm",
    "oracle_sample_cA",
    "oracle_sample_normA",
    "oracle_sample_wA",
    "pinv",
    "psd_sqrt",
    "run_campaign",
    "run_suite",
    "sin_A",
    "spectral_norm",
    "summarize",
    "svd",
    "w_A",
]
