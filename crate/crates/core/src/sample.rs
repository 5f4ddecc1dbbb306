//! Scored records, ranking and cut-offs.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{MetricError, Result};
use crate::scalar::Scalar;

/// One promotable name with its model score and observed response.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScoredRecord {
    pub id: String,
    pub score: f64,
    pub responder: bool,
}

impl ScoredRecord {
    pub fn new(id: impl Into<String>, score: f64, responder: bool) -> Self {
        ScoredRecord {
            id: id.into(),
            score,
            responder,
        }
    }

    /// Builds a record from a numeric response indicator, which must be 0 or 1.
    pub fn try_new(id: impl Into<String>, score: f64, response: u8) -> Result<Self> {
        let id = id.into();
        match response {
            0 | 1 => Ok(ScoredRecord::new(id, score, response == 1)),
            value => Err(MetricError::InvalidResponse { id, value }),
        }
    }

    /// The response value as 0 or 1.
    pub fn response(&self) -> u8 {
        u8::from(self.responder)
    }
}

/// How records sharing a score are ordered and ranked.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TiePolicy {
    /// Tied records share the mean of the ranks they occupy.
    #[default]
    Midrank,
    /// Responders take the lowest ranks of their tie group.
    Pessimistic,
    /// Responders take the highest ranks of their tie group.
    Optimistic,
}

impl fmt::Display for TiePolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TiePolicy::Midrank => "midrank",
            TiePolicy::Pessimistic => "pessimistic",
            TiePolicy::Optimistic => "optimistic",
        })
    }
}

impl FromStr for TiePolicy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "midrank" => Ok(TiePolicy::Midrank),
            "pessimistic" => Ok(TiePolicy::Pessimistic),
            "optimistic" => Ok(TiePolicy::Optimistic),
            other => Err(format!(
                "unknown tie policy `{other}` (expected midrank, pessimistic or optimistic)"
            )),
        }
    }
}

/// A record placed in the ranking.
///
/// Ranks are stored doubled so that midranks (which are multiples of one half)
/// stay exact integers.
#[derive(Debug, Clone, PartialEq)]
pub struct RankedRecord {
    pub record: ScoredRecord,
    rank_x2: u64,
}

impl RankedRecord {
    /// Rank 1 is the lowest score. Midranks may be half-integers.
    pub fn rank<S: Scalar>(&self) -> S {
        S::ratio(self.rank_x2, 2)
    }

    pub fn rank_x2(&self) -> u64 {
        self.rank_x2
    }
}

/// A test sample ordered by ascending score with ranks `1..=#X` assigned.
///
/// Records are held in position order: position `i` (zero based) is the
/// `i + 1`-th lowest score after the tie policy has been applied. Cut-off
/// selection and bucketing work on positions; rank sums use the (possibly
/// averaged) ranks.
#[derive(Debug, Clone, PartialEq)]
pub struct RankedSample {
    records: Vec<RankedRecord>,
    responders: usize,
    tie_policy: TiePolicy,
    ties_present: bool,
}

/// Ranks `records` ascending by score.
///
/// Records with equal scores keep their input order unless the tie policy
/// moves responders within the tie group.
pub fn rank_sample(records: Vec<ScoredRecord>, tie_policy: TiePolicy) -> Result<RankedSample> {
    if records.is_empty() {
        return Err(MetricError::EmptySample);
    }
    if let Some(bad) = records.iter().find(|r| !r.score.is_finite()) {
        return Err(MetricError::NonFiniteScore { id: bad.id.clone() });
    }

    let mut records = records;
    // Scores are finite, so partial_cmp never fails; the sort is stable.
    records.sort_by(|a, b| a.score.partial_cmp(&b.score).unwrap_or(Ordering::Equal));

    let n = records.len();
    let mut ranked = Vec::with_capacity(n);
    let mut ties_present = false;
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && records[end].score == records[start].score {
            end += 1;
        }
        let group = &mut records[start..end];
        if group.len() > 1 {
            ties_present = true;
        }
        match tie_policy {
            TiePolicy::Midrank => {}
            TiePolicy::Pessimistic => group.sort_by_key(|r| !r.responder),
            TiePolicy::Optimistic => group.sort_by_key(|r| r.responder),
        }
        // Positions start+1 ..= end; their doubled mean is start + 1 + end.
        let shared = (start + 1 + end) as u64;
        for (offset, record) in group.iter().enumerate() {
            let rank_x2 = match tie_policy {
                TiePolicy::Midrank => shared,
                _ => 2 * (start + offset + 1) as u64,
            };
            ranked.push(RankedRecord {
                record: record.clone(),
                rank_x2,
            });
        }
        start = end;
    }

    let responders = ranked.iter().filter(|r| r.record.responder).count();
    Ok(RankedSample {
        records: ranked,
        responders,
        tie_policy,
        ties_present,
    })
}

impl RankedSample {
    /// `#X`.
    pub fn size(&self) -> usize {
        self.records.len()
    }

    /// Number of responders `k = R(X)·#X`.
    pub fn responders(&self) -> usize {
        self.responders
    }

    /// `R(X) = k / #X`.
    pub fn response_rate<S: Scalar>(&self) -> S {
        S::ratio(self.responders as u64, self.size() as u64)
    }

    pub fn tie_policy(&self) -> TiePolicy {
        self.tie_policy
    }

    pub fn has_ties(&self) -> bool {
        self.ties_present
    }

    /// Records in ascending position order.
    pub fn records(&self) -> &[RankedRecord] {
        &self.records
    }

    /// Responder flags in ascending position order.
    pub fn responder_flags(&self) -> impl Iterator<Item = bool> + '_ {
        self.records.iter().map(|r| r.record.responder)
    }

    /// Twice the sum of responder ranks.
    pub fn responder_rank_sum_x2(&self) -> u64 {
        self.records
            .iter()
            .filter(|r| r.record.responder)
            .map(|r| r.rank_x2)
            .sum()
    }

    /// Responders among the `count` highest positions.
    pub fn responders_in_top(&self, count: usize) -> usize {
        let count = count.min(self.size());
        self.records[self.size() - count..]
            .iter()
            .filter(|r| r.record.responder)
            .count()
    }
}

/// Fraction of top-scored names selected for promotion (pass names / total
/// names), kept as an exact reduced fraction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CutOff {
    num: u64,
    den: u64,
}

impl CutOff {
    pub fn new(num: u64, den: u64) -> Result<Self> {
        if den == 0 || num == 0 || num > den {
            return Err(MetricError::InvalidCutoff(format!("{num}/{den}")));
        }
        let g = num.gcd(&den);
        Ok(CutOff {
            num: num / g,
            den: den / g,
        })
    }

    pub fn percent(p: u64) -> Result<Self> {
        CutOff::new(p, 100)
    }

    /// `10%, 20%, …, 100%`.
    pub fn deciles() -> Vec<CutOff> {
        (1..=10).map(|d| CutOff { num: d, den: 10 }.reduced()).collect()
    }

    fn reduced(self) -> Self {
        CutOff::new(self.num, self.den).expect("valid cut-off")
    }

    pub fn numer(&self) -> u64 {
        self.num
    }

    pub fn denom(&self) -> u64 {
        self.den
    }

    pub fn fraction<S: Scalar>(&self) -> S {
        S::ratio(self.num, self.den)
    }

    /// Names selected from a sample of `size`: `fraction·size` rounded half up.
    pub fn selection_count(&self, size: usize) -> usize {
        let num = u128::from(self.num) * size as u128;
        let den = u128::from(self.den);
        ((2 * num + den) / (2 * den)) as usize
    }
}

impl Ord for CutOff {
    fn cmp(&self, other: &Self) -> Ordering {
        (u128::from(self.num) * u128::from(other.den))
            .cmp(&(u128::from(other.num) * u128::from(self.den)))
    }
}

impl PartialOrd for CutOff {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for CutOff {
    /// Percent with up to four decimals, e.g. `40%` or `33.3333%`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pct = self.num as f64 * 100.0 / self.den as f64;
        write!(f, "{}%", crate::report::trim_decimal(pct, 4))
    }
}

impl FromStr for CutOff {
    type Err = MetricError;

    /// Accepts `0.4`, `40%` or `2/5`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let invalid = || MetricError::InvalidCutoff(s.to_owned());
        if let Some((n, d)) = s.split_once('/') {
            let n = n.trim().parse().map_err(|_| invalid())?;
            let d = d.trim().parse().map_err(|_| invalid())?;
            return CutOff::new(n, d).map_err(|_| invalid());
        }
        let (text, scale) = match s.strip_suffix('%') {
            Some(t) => (t, 100),
            None => (s, 1),
        };
        let value = crate::scalar::parse_decimal_ratio(text).ok_or_else(invalid)?;
        let value = value / scale;
        let (n, d) = (*value.numer(), *value.denom());
        if n <= 0 {
            return Err(invalid());
        }
        CutOff::new(n as u64, d as u64).map_err(|_| invalid())
    }
}

impl Serialize for CutOff {
    fn serialize<Se: serde::Serializer>(&self, serializer: Se) -> Result<Se::Ok, Se::Error> {
        serializer.serialize_str(&format!("{}/{}", self.num, self.den))
    }
}

impl<'de> Deserialize<'de> for CutOff {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}
