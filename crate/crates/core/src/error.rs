use thiserror::Error;

/// Failures raised by metric computations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MetricError {
    #[error("sample is empty")]
    EmptySample,
    #[error("record `{id}` has a non-finite score")]
    NonFiniteScore { id: String },
    #[error("record `{id}` has response {value}; expected 0 or 1")]
    InvalidResponse { id: String, value: u8 },
    #[error("sample contains no responders")]
    NoResponders,
    #[error("base response rate is zero")]
    ZeroBaseRate,
    #[error("rate {0} is outside [0, 1]")]
    InvalidRate(String),
    #[error("cut-off selects no names")]
    CutoffTooSmall,
    #[error("cut-off {0} is outside (0, 1]")]
    InvalidCutoff(String),
    #[error("{names} names cannot be split into {buckets} equal buckets")]
    IndivisibleBuckets { names: usize, buckets: usize },
    #[error("bucket count must be at least 1")]
    ZeroBuckets,
    #[error("all or no records are responders")]
    DegenerateClasses,
    #[error("no models to compare")]
    EmptyBatch,
    #[error("stretch target {0} is outside (0, 100]")]
    InvalidTarget(String),
    #[error("invalid generator parameter: {0}")]
    InvalidParameter(String),
    #[error("model `{model}`: {source}")]
    Model {
        model: String,
        #[source]
        source: Box<MetricError>,
    },
}

impl MetricError {
    /// Strips any model context.
    pub fn root(&self) -> &MetricError {
        match self {
            MetricError::Model { source, .. } => source.root(),
            other => other,
        }
    }

    pub(crate) fn for_model(self, model: &str) -> MetricError {
        MetricError::Model {
            model: model.to_owned(),
            source: Box::new(self),
        }
    }
}

pub type Result<T, E = MetricError> = std::result::Result<T, E>;
