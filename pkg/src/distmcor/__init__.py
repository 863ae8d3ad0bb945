"""Distance multicorrelations, their copula versions and independence tests."""

from .centering import CenteredMatrix, EstimatorKind, double_center, u_center
from .copula import (
    TransformDraws,
    TransformedDataset,
    cmcor,
    decreasing_transform_identity_check,
    mc_transform_column,
    population_transform,
    transform_dataset,
    transform_draws,
)
from .inference import (
    DominanceReport,
    TestMethod,
    TestResult,
    binomial_two_sided_p,
    conservative_pvalue,
    dominance_experiment,
    holm_adjust,
    independence_test,
    permutation_test,
    star_notation,
)
from .kernels import (
    ComponentPartition,
    Dataset,
    DistanceMatrix,
    KernelSpec,
    distance_matrix,
    psi_eval,
    stack_components,
)
from .measures import (
    DegenerateStatisticError,
    MeasureResult,
    MeasureVariant,
    mcor,
    mcor_alpha_limit_check,
    mcor_pairwise,
    mcor_squared_m,
    mcor_unnormalized,
    norming_constant,
    pearson_cor,
    sign_root,
    total_mcor,
    total_mcor_bound,
    total_multivariance_normalized,
)

__version__ = "0.1.0"
