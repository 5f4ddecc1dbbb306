//! Bucket-level gains chart combining BenI and an approximate Score Potential.
//!
//! The sample is split into `#B` equal buckets of consecutive ranks. Inside a
//! bucket individual ranks are unknown, so each bucket's share of the rank sum
//! is bracketed: responders packed at the top of the bucket give the maximum,
//! packed at the bottom the minimum, and the midpoint serves as the estimate.
//! Ranks are expressed in bucket units (`rank · #B/#X`), so bucket `b` covers
//! `(b − 1, b]`.

use serde::{Deserialize, Serialize};

use crate::error::{MetricError, Result};
use crate::metrics::beni_max;
use crate::sample::{CutOff, RankedSample};
use crate::scalar::Scalar;

/// Marginal columns of one bucket.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Bucket<S> {
    /// 1 = lowest scores, `#B` = highest.
    pub bucket_no: usize,
    pub names: usize,
    pub responders: usize,
    pub p_up_max: S,
    pub p_up_min: S,
    pub p_up_avg: S,
    pub pop_marginal: S,
    pub beni_marginal: S,
}

/// Cumulative columns of one printed row, counting from the top bucket down to
/// and including this one.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CumulativeRow<S> {
    pub bucket_no: usize,
    pub cutoff: CutOff,
    pub names: usize,
    pub responders: usize,
    pub pop_cumulative: S,
    pub beni_cumulative: S,
    pub beni_max_cumulative: S,
    /// Cumulative BenI as a percentage of its ceiling.
    pub attainment: S,
}

/// A gains chart with buckets stored highest bucket first.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GainsChart<S> {
    pub buckets: Vec<Bucket<S>>,
    pub rows: Vec<CumulativeRow<S>>,
    pub bucket_count: usize,
    pub sample_size: usize,
    pub responders: usize,
    pub base_rate: S,
    /// `#B / #X`, the width of one name in bucket units.
    pub spacing: S,
    pub p_up_approx: S,
    pub p_up_max_total: S,
    pub p_up_min_total: S,
    pub p_down_chart: S,
    pub pop_approx: S,
    pub pop_max_variant: S,
    pub pop_min_variant: S,
}

/// Approximate Score Potential with both bracketing variants.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PopApprox<S> {
    pub avg: S,
    pub min: S,
    pub max: S,
}

/// Bucket-unit rank sum with all responders at the top of the bucket:
/// `b·r − s·r(r−1)/2`.
pub fn p_up_max_bucket<S: Scalar>(bucket_no: usize, responders: usize, spacing: S) -> S {
    let r = responders as u64;
    S::from_count(bucket_no as u64 * r) - spacing * S::ratio(r * r.saturating_sub(1), 2)
}

/// Bucket-unit rank sum with all responders at the bottom of the bucket:
/// `(b − 1 + s)·r + s·r(r−1)/2`.
pub fn p_up_min_bucket<S: Scalar>(bucket_no: usize, responders: usize, spacing: S) -> S {
    if responders == 0 {
        return S::zero();
    }
    let r = responders as u64;
    (S::from_count(bucket_no as u64 - 1) + spacing) * S::from_count(r)
        + spacing * S::ratio(r * (r - 1), 2)
}

pub fn p_up_avg_bucket<S: Scalar>(max: S, min: S) -> S {
    (max + min) / S::two()
}

/// Chart-unit denominator `#B·k − s·k(k−1)/2`, i.e. the top `k` ranks in
/// bucket units.
pub fn pop_denominator_chart<S: Scalar>(bucket_count: usize, responders: usize, spacing: S) -> Result<S> {
    if responders == 0 {
        return Err(MetricError::NoResponders);
    }
    let k = responders as u64;
    Ok(S::from_count(bucket_count as u64 * k) - spacing * S::ratio(k * (k - 1), 2))
}

/// Ranks the chart's buckets from a sample.
///
/// Bucket `b` holds positions `(b−1)·#X/#B + 1 ..= b·#X/#B`.
pub fn build_gains_chart<S: Scalar>(sample: &RankedSample, bucket_count: usize) -> Result<GainsChart<S>> {
    if bucket_count == 0 {
        return Err(MetricError::ZeroBuckets);
    }
    let size = sample.size();
    if !size.is_multiple_of(bucket_count) {
        return Err(MetricError::IndivisibleBuckets {
            names: size,
            buckets: bucket_count,
        });
    }
    let per_bucket = size / bucket_count;
    let flags: Vec<bool> = sample.responder_flags().collect();
    let top_down: Vec<usize> = flags
        .chunks(per_bucket)
        .rev()
        .map(|chunk| chunk.iter().filter(|&&r| r).count())
        .collect();
    GainsChart::from_bucket_counts(per_bucket, &top_down)
}

impl<S: Scalar> GainsChart<S> {
    /// Builds a chart from responder counts per bucket, listed from the top
    /// bucket down, with `per_bucket` names in every bucket.
    pub fn from_bucket_counts(per_bucket: usize, responders_top_down: &[usize]) -> Result<Self> {
        let bucket_count = responders_top_down.len();
        if bucket_count == 0 {
            return Err(MetricError::ZeroBuckets);
        }
        if per_bucket == 0 {
            return Err(MetricError::EmptySample);
        }
        if let Some(&r) = responders_top_down.iter().find(|&&r| r > per_bucket) {
            return Err(MetricError::InvalidParameter(format!(
                "bucket with {r} responders but only {per_bucket} names"
            )));
        }
        let size = per_bucket * bucket_count;
        let k: usize = responders_top_down.iter().sum();
        if k == 0 {
            return Err(MetricError::NoResponders);
        }
        let x = size as u64;
        let spacing = S::ratio(bucket_count as u64, x);
        let base_rate = S::ratio(k as u64, x);
        let p_down_chart = pop_denominator_chart(bucket_count, k, spacing)?;

        let mut buckets = Vec::with_capacity(bucket_count);
        let mut rows = Vec::with_capacity(bucket_count);
        let (mut cum_names, mut cum_resp) = (0usize, 0usize);
        let mut cum_avg = S::zero();
        let (mut sum_max, mut sum_min) = (S::zero(), S::zero());
        for (i, &r) in responders_top_down.iter().enumerate() {
            let bucket_no = bucket_count - i;
            let p_up_max = p_up_max_bucket(bucket_no, r, spacing);
            let p_up_min = p_up_min_bucket(bucket_no, r, spacing);
            let p_up_avg = p_up_avg_bucket(p_up_max, p_up_min);
            sum_max = sum_max + p_up_max;
            sum_min = sum_min + p_up_min;
            cum_avg = cum_avg + p_up_avg;
            cum_names += per_bucket;
            cum_resp += r;
            buckets.push(Bucket {
                bucket_no,
                names: per_bucket,
                responders: r,
                p_up_max,
                p_up_min,
                p_up_avg,
                pop_marginal: p_up_avg * S::hundred() / p_down_chart,
                beni_marginal: S::ratio(r as u64 * x * 100, (per_bucket * k) as u64),
            });

            let cutoff = CutOff::new(cum_names as u64, x)?;
            let beni_cumulative = S::ratio(cum_resp as u64 * x * 100, (cum_names * k) as u64);
            let beni_max_cumulative = beni_max(cutoff, base_rate)?;
            rows.push(CumulativeRow {
                bucket_no,
                cutoff,
                names: cum_names,
                responders: cum_resp,
                pop_cumulative: cum_avg * S::hundred() / p_down_chart,
                beni_cumulative,
                beni_max_cumulative,
                attainment: beni_cumulative * S::hundred() / beni_max_cumulative,
            });
        }

        Ok(GainsChart {
            buckets,
            rows,
            bucket_count,
            sample_size: size,
            responders: k,
            base_rate,
            spacing,
            p_up_approx: cum_avg,
            p_up_max_total: sum_max,
            p_up_min_total: sum_min,
            p_down_chart,
            pop_approx: cum_avg * S::hundred() / p_down_chart,
            pop_max_variant: sum_max * S::hundred() / p_down_chart,
            pop_min_variant: sum_min * S::hundred() / p_down_chart,
        })
    }

    /// Attainment ratio at the row whose cut-off equals the base rate, if the
    /// chart has such a row.
    pub fn attainment_at_base_rate(&self) -> Option<S> {
        self.rows
            .iter()
            .find(|row| row.names == self.responders)
            .map(|row| row.attainment)
    }
}

/// `100 · ΣP'↑ / P↓` with the average, minimum and maximum numerators.
pub fn pop_approx<S: Scalar>(chart: &GainsChart<S>) -> PopApprox<S> {
    PopApprox {
        avg: chart.pop_approx,
        min: chart.pop_min_variant,
        max: chart.pop_max_variant,
    }
}

/// Cumulative BenI over its ceiling, per printed row, in percent.
pub fn attainment_ratio_column<S: Scalar>(chart: &GainsChart<S>) -> Vec<S> {
    chart.rows.iter().map(|row| row.attainment).collect()
}
