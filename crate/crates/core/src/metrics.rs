//! Benefit index (BenI) and exact Score Potential (PoP) on an individually
//! ranked sample.
//!
//! BenI compares the response rate of the pass names at a cut-off with the
//! sample's base rate. PoP compares the responders' rank sum with the largest
//! rank sum `k` responders could have, so it needs no cut-off at all.

use crate::error::{MetricError, Result};
use crate::sample::{CutOff, RankedSample};
use crate::scalar::Scalar;

fn check_rate<S: Scalar>(rate: S) -> Result<()> {
    if rate < S::zero() || rate > S::one() {
        return Err(MetricError::InvalidRate(format!("{rate:?}")));
    }
    Ok(())
}

/// `R(P) / R(X) · 100` at full precision.
pub fn beni<S: Scalar>(optimized_rate: S, base_rate: S) -> Result<S> {
    check_rate(optimized_rate)?;
    check_rate(base_rate)?;
    if base_rate == S::zero() {
        return Err(MetricError::ZeroBaseRate);
    }
    Ok(optimized_rate * S::hundred() / base_rate)
}

/// Largest BenI any model can reach at `cut`.
///
/// When the base rate is below the cut-off the ceiling is `100 / cut`: every
/// responder fits into the pass set. Otherwise the pass set can be filled with
/// responders only, and the ceiling is `100 / R(X)`.
pub fn beni_max<S: Scalar>(cut: CutOff, base_rate: S) -> Result<S> {
    check_rate(base_rate)?;
    if base_rate == S::zero() {
        return Err(MetricError::ZeroBaseRate);
    }
    let fraction: S = cut.fraction();
    if base_rate < fraction {
        Ok(S::hundred() / fraction)
    } else {
        Ok(S::hundred() / base_rate)
    }
}

/// BenI of the top `cut` names of `sample`.
pub fn beni_at_cutoff<S: Scalar>(sample: &RankedSample, cut: CutOff) -> Result<S> {
    let selected = cut.selection_count(sample.size());
    if selected == 0 {
        return Err(MetricError::CutoffTooSmall);
    }
    let k = sample.responders();
    if k == 0 {
        return Err(MetricError::NoResponders);
    }
    let hits = sample.responders_in_top(selected) as u64;
    // (hits / selected) / (k / X) · 100, as one division of integers.
    Ok(S::ratio(
        hits * sample.size() as u64 * 100,
        selected as u64 * k as u64,
    ))
}

/// `P↑`: the sum of responder ranks (midranks under ties).
pub fn pop_numerator_exact<S: Scalar>(sample: &RankedSample) -> S {
    S::ratio(sample.responder_rank_sum_x2(), 2)
}

/// `P↓` in integer form: the sum of the top `k` ranks, `k·X − k(k−1)/2`.
pub fn top_rank_sum(size: u64, responders: u64) -> u64 {
    responders * size - responders * responders.saturating_sub(1) / 2
}

/// `P↓`: the largest rank sum the sample's responders could have.
pub fn pop_denominator_exact<S: Scalar>(sample: &RankedSample) -> Result<S> {
    let k = sample.responders() as u64;
    if k == 0 {
        return Err(MetricError::NoResponders);
    }
    Ok(S::from_count(top_rank_sum(sample.size() as u64, k)))
}

/// `P↓` written in terms of sample size and response rate:
/// `−(X²R²/2 − (X² + X/2)·R)`.
///
/// Equal to [`top_rank_sum`] whenever `R·X` is an integer.
pub fn pop_denominator_closed_form<S: Scalar>(size: u64, rate: S) -> S {
    let x = S::from_count(size);
    let two = S::two();
    let x2 = x * x;
    S::zero() - (x2 * rate * rate / two - (x2 + x / two) * rate)
}

/// Exact Score Potential in percent, `100 · P↑ / P↓`.
pub fn pop_exact<S: Scalar>(sample: &RankedSample) -> Result<S> {
    let k = sample.responders() as u64;
    if k == 0 {
        return Err(MetricError::NoResponders);
    }
    let down = top_rank_sum(sample.size() as u64, k);
    Ok(S::ratio(100 * sample.responder_rank_sum_x2(), 2 * down))
}

/// Mann–Whitney AUC by direct pairwise comparison of responder and
/// non-responder scores; tied pairs count one half.
///
/// Satisfies `P↑ = AUC·k(X−k) + k(k+1)/2` under the midrank policy.
pub fn auc_crosscheck<S: Scalar>(sample: &RankedSample) -> Result<S> {
    let k = sample.responders();
    if k == 0 || k == sample.size() {
        return Err(MetricError::DegenerateClasses);
    }
    let (pos, neg): (Vec<f64>, Vec<f64>) = {
        let mut pos = Vec::with_capacity(k);
        let mut neg = Vec::with_capacity(sample.size() - k);
        for r in sample.records() {
            if r.record.responder {
                pos.push(r.record.score);
            } else {
                neg.push(r.record.score);
            }
        }
        (pos, neg)
    };
    let mut wins_x2: u64 = 0;
    for p in &pos {
        for n in &neg {
            if p > n {
                wins_x2 += 2;
            } else if p == n {
                wins_x2 += 1;
            }
        }
    }
    Ok(S::ratio(wins_x2, 2 * pos.len() as u64 * neg.len() as u64))
}
