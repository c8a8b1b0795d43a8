"""Parameter-free outlier removal for robust PCA.

Columns of a data matrix are scored by the minimum acute angle they
subtend with the other columns; scores above a threshold that depends
only on the matrix shape mark outliers.  The package bundles the
detector, the statistical machinery behind its threshold, a synthetic
data generator, a Coherence Pursuit baseline, and a benchmark harness
exposed through the ``roma`` CLI.
"""

from .angles import (
    AngleScores,
    acute_angle_scores,
    min_angle_scores,
    normalize_columns,
    pairwise_acute_angles,
    pairwise_principal_angles,
)
from .cop import cop_recover, cop_scores
from .detector import (
    GuaranteeReport,
    RomaPartition,
    detect,
    erp_failure_prob_bound,
    guarantee_report,
    non_erp_inlier_bound,
    separation_condition,
)
from .errors import (
    DegenerateCdfError,
    DimensionMismatchError,
    EmptyInlierSetError,
    MatrixParseError,
    RomaError,
    ZeroColumnError,
)
from .recovery import SubspaceBasis, log_recovery_error, recover_basis
from .synth import (
    LabeledDataset,
    SynthSpec,
    assemble_dataset,
    sample_inliers,
    sample_outliers,
    sample_subspace_basis,
    stream_rng,
)
from .thresholds import (
    AcuteConcentration,
    acute_angle_concentration,
    evt_constant,
    folded_normal_moments,
    phi_cdf,
    roma_threshold,
    theta_cdf_exact,
    theta_cdf_gauss,
    theta_pdf,
)

__all__ = [
    "AngleScores",
    "AcuteConcentration",
    "DegenerateCdfError",
    "DimensionMismatchError",
    "EmptyInlierSetError",
    "GuaranteeReport",
    "LabeledDataset",
    "MatrixParseError",
    "RomaError",
    "RomaPartition",
    "SubspaceBasis",
    "SynthSpec",
    "ZeroColumnError",
    "acute_angle_concentration",
    "acute_angle_scores",
    "assemble_dataset",
    "cop_recover",
    "cop_scores",
    "detect",
    "erp_failure_prob_bound",
    "evt_constant",
    "folded_normal_moments",
    "guarantee_report",
    "log_recovery_error",
    "min_angle_scores",
    "non_erp_inlier_bound",
    "normalize_columns",
    "pairwise_acute_angles",
    "pairwise_principal_angles",
    "phi_cdf",
    "recover_basis",
    "roma_threshold",
    "sample_inliers",
    "sample_outliers",
    "sample_subspace_basis",
    "separation_condition",
    "stream_rng",
    "theta_cdf_exact",
    "theta_cdf_gauss",
    "theta_pdf",
]

__version__ = "0.1.0"
