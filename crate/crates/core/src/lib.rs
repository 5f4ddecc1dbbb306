//! Evaluation of binary-response targeting models.
//!
//! Two families of measures are provided side by side:
//!
//! * the benefit index BenI, the response-rate lift of the names selected at a
//!   cut-off, together with its ceiling and the attainment ratio;
//! * the Score Potential (PoP), the responders' rank sum as a share of the
//!   best achievable rank sum, which needs no cut-off and reaches 100 only for
//!   a model that ranks every responder above every non-responder.
//!
//! All metrics are generic over [`Scalar`]; [`Real`] (`f64`) is the working
//! type and [`Exact`] (`Ratio<i64>`) reproduces worked examples without
//! rounding.

pub mod economics;
pub mod engine;
pub mod error;
pub mod figure;
pub mod gains;
pub mod io;
pub mod metrics;
pub mod report;
pub mod sample;
pub mod scalar;

pub use economics::{
    cost_per_responder, cost_per_thousand, economics_report, spreading_loss, CampaignEconomics,
    EconomicsReport, SpreadingLoss,
};
pub use engine::{
    compare_models, evaluate_batch, evaluate_model, generate_sample, BeniPoint, ComparisonReport,
    Degeneracy, EvaluationContext, ModelEvaluation,
};
pub use error::{MetricError, Result};
pub use gains::{
    attainment_ratio_column, build_gains_chart, p_up_avg_bucket, p_up_max_bucket, p_up_min_bucket,
    pop_approx, pop_denominator_chart, Bucket, CumulativeRow, GainsChart, PopApprox,
};
pub use metrics::{
    auc_crosscheck, beni, beni_at_cutoff, beni_max, pop_denominator_closed_form,
    pop_denominator_exact, pop_exact, pop_numerator_exact, top_rank_sum,
};
pub use sample::{rank_sample, CutOff, RankedRecord, RankedSample, ScoredRecord, TiePolicy};
pub use scalar::Scalar;

/// Working precision.
pub type Real = f64;
/// Exact rational arithmetic.
pub type Exact = num_rational::Ratio<i64>;

pub type RealEvaluation = ModelEvaluation<Real>;
pub type ExactEvaluation = ModelEvaluation<Exact>;
pub type RealGainsChart = GainsChart<Real>;
pub type ExactGainsChart = GainsChart<Exact>;
pub type RealComparison = ComparisonReport<Real>;
pub type RealEconomics = CampaignEconomics<Real>;
pub type ExactEconomics = CampaignEconomics<Exact>;
