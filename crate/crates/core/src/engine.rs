//! Batch evaluation and comparison of many models.

use std::cmp::Ordering;

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{MetricError, Result};
use crate::gains::{build_gains_chart, pop_approx, GainsChart, PopApprox};
use crate::metrics::{beni_at_cutoff, beni_max, pop_denominator_exact, pop_exact, pop_numerator_exact};
use crate::sample::{CutOff, RankedSample, ScoredRecord, TiePolicy};
use crate::scalar::{round_half_up, Scalar};

/// Everything needed to evaluate one model's test sample.
#[derive(Debug, Clone)]
pub struct EvaluationContext<S> {
    pub sample: RankedSample,
    /// Size of the promotable universe; only used to size rollouts in reports.
    pub total_potential: Option<u64>,
    pub bucket_count: usize,
    pub cutoffs: Vec<CutOff>,
    pub stretch_target: Option<S>,
}

impl<S: Scalar> EvaluationContext<S> {
    /// Deciles, ten buckets, no target.
    pub fn new(sample: RankedSample) -> Self {
        EvaluationContext {
            sample,
            total_potential: None,
            bucket_count: 10,
            cutoffs: CutOff::deciles(),
            stretch_target: None,
        }
    }

    pub fn with_buckets(mut self, bucket_count: usize) -> Self {
        self.bucket_count = bucket_count;
        self
    }

    /// Cut-offs are sorted ascending and deduplicated.
    pub fn with_cutoffs(mut self, mut cutoffs: Vec<CutOff>) -> Self {
        cutoffs.sort();
        cutoffs.dedup();
        self.cutoffs = cutoffs;
        self
    }

    pub fn with_stretch_target(mut self, target: Option<S>) -> Result<Self> {
        if let Some(t) = target {
            if t <= S::zero() || t > S::hundred() {
                return Err(MetricError::InvalidTarget(format!("{t:?}")));
            }
        }
        self.stretch_target = target;
        Ok(self)
    }

    pub fn with_total_potential(mut self, total: Option<u64>) -> Self {
        self.total_potential = total;
        self
    }
}

/// BenI figures at one requested cut-off.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BeniPoint<S> {
    pub cutoff: CutOff,
    /// Names selected within the test sample.
    pub selected: usize,
    /// Pass names at this cut-off when rolled out to the total potential.
    pub rollout_pass_names: Option<u64>,
    pub beni: S,
    pub beni_max: S,
    pub attainment: S,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Degeneracy {
    /// Every record responded; PoP is 100 by definition.
    AllResponders,
    /// Some scores are tied; ranks follow the tie policy.
    TiesPresent,
}

/// Full metric report for one model.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelEvaluation<S> {
    pub model_id: String,
    pub sample_size: usize,
    pub responders: usize,
    pub base_rate: S,
    pub tie_policy: TiePolicy,
    pub total_potential: Option<u64>,
    pub p_up_exact: S,
    pub p_down_exact: S,
    pub pop_exact: S,
    pub pop_approx: PopApprox<S>,
    pub gains: GainsChart<S>,
    pub beni_profile: Vec<BeniPoint<S>>,
    pub stretch_target: Option<S>,
    pub meets_stretch_target: Option<bool>,
    pub degeneracy: Vec<Degeneracy>,
}

/// Evaluates one model. Errors carry the model id.
pub fn evaluate_model<S: Scalar>(ctx: &EvaluationContext<S>, model_id: &str) -> Result<ModelEvaluation<S>> {
    evaluate_inner(ctx, model_id).map_err(|e| e.for_model(model_id))
}

fn evaluate_inner<S: Scalar>(ctx: &EvaluationContext<S>, model_id: &str) -> Result<ModelEvaluation<S>> {
    let sample = &ctx.sample;
    let pop = pop_exact::<S>(sample)?;
    let gains = build_gains_chart::<S>(sample, ctx.bucket_count)?;
    let base_rate: S = sample.response_rate();

    let beni_profile = ctx
        .cutoffs
        .iter()
        .map(|&cut| {
            let beni = beni_at_cutoff::<S>(sample, cut)?;
            let ceiling = beni_max(cut, base_rate)?;
            Ok(BeniPoint {
                cutoff: cut,
                selected: cut.selection_count(sample.size()),
                rollout_pass_names: ctx
                    .total_potential
                    .map(|t| cut.selection_count(t as usize) as u64),
                beni,
                beni_max: ceiling,
                attainment: beni * S::hundred() / ceiling,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let mut degeneracy = Vec::new();
    if sample.responders() == sample.size() {
        degeneracy.push(Degeneracy::AllResponders);
    }
    if sample.has_ties() {
        degeneracy.push(Degeneracy::TiesPresent);
    }

    Ok(ModelEvaluation {
        model_id: model_id.to_owned(),
        sample_size: sample.size(),
        responders: sample.responders(),
        base_rate,
        tie_policy: sample.tie_policy(),
        total_potential: ctx.total_potential,
        p_up_exact: pop_numerator_exact(sample),
        p_down_exact: pop_denominator_exact(sample)?,
        pop_exact: pop,
        pop_approx: pop_approx(&gains),
        gains,
        beni_profile,
        stretch_target: ctx.stretch_target,
        meets_stretch_target: ctx.stretch_target.map(|t| pop >= t),
        degeneracy,
    })
}

/// Evaluates models concurrently. Results keep the input order.
pub fn evaluate_batch<S: Scalar>(models: &[(String, EvaluationContext<S>)]) -> Result<Vec<ModelEvaluation<S>>> {
    models
        .par_iter()
        .map(|(id, ctx)| evaluate_model(ctx, id))
        .collect()
}

/// Models ranked by exact Score Potential.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonReport<S> {
    /// In ranking order.
    pub evaluations: Vec<ModelEvaluation<S>>,
    pub ranking: Vec<String>,
    pub below_target: Vec<String>,
}

fn ranking_order<S: Scalar>(a: &ModelEvaluation<S>, b: &ModelEvaluation<S>) -> Ordering {
    let desc = |x: S, y: S| y.partial_cmp(&x).unwrap_or(Ordering::Equal);
    desc(a.pop_exact, b.pop_exact)
        .then_with(|| desc(a.pop_approx.avg, b.pop_approx.avg))
        .then_with(|| a.model_id.cmp(&b.model_id))
}

/// Ranks by exact PoP descending, then approximate PoP descending, then model
/// id. Models with `meets_stretch_target == Some(false)` are listed below
/// target.
pub fn compare_models<S: Scalar>(evals: Vec<ModelEvaluation<S>>) -> Result<ComparisonReport<S>> {
    if evals.is_empty() {
        return Err(MetricError::EmptyBatch);
    }
    let mut evaluations = evals;
    evaluations.sort_by(ranking_order);
    let ranking = evaluations.iter().map(|e| e.model_id.clone()).collect();
    let below_target = evaluations
        .iter()
        .filter(|e| e.meets_stretch_target == Some(false))
        .map(|e| e.model_id.clone())
        .collect();
    Ok(ComparisonReport {
        evaluations,
        ranking,
        below_target,
    })
}

/// Responders realized by [`generate_sample`]: `base_rate·size` rounded half up.
pub fn generated_responders(size: usize, base_rate: f64) -> usize {
    round_half_up(base_rate * size as f64) as usize
}

/// Synthetic scored sample.
///
/// `quality` blends a uniform noise score (0) with a score that puts every
/// responder above every non-responder (1): the score is
/// `(1 − q)·u₁ + q·(v + u₂)/2` with `u₁, u₂` uniform on `[0, 1)` and `v` the
/// response. Output is a pure function of the arguments.
pub fn generate_sample(size: usize, base_rate: f64, quality: f64, seed: u64) -> Result<Vec<ScoredRecord>> {
    if size == 0 {
        return Err(MetricError::InvalidParameter("size must be at least 1".into()));
    }
    if !(base_rate > 0.0 && base_rate <= 1.0) {
        return Err(MetricError::InvalidParameter(format!("base rate {base_rate} outside (0, 1]")));
    }
    if !(0.0..=1.0).contains(&quality) {
        return Err(MetricError::InvalidParameter(format!("quality {quality} outside [0, 1]")));
    }
    let k = generated_responders(size, base_rate).min(size);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut responder = vec![false; size];
    for i in index::sample(&mut rng, size, k) {
        responder[i] = true;
    }
    let width = size.to_string().len();
    Ok(responder
        .into_iter()
        .enumerate()
        .map(|(i, v)| {
            let noise: f64 = rng.gen();
            let jitter: f64 = rng.gen();
            let signal = (f64::from(u8::from(v)) + jitter) / 2.0;
            let score = (1.0 - quality) * noise + quality * signal;
            ScoredRecord::new(format!("r{:0width$}", i + 1), score, v)
        })
        .collect())
}
