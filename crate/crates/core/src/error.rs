use std::path::PathBuf;

use crate::model::CustomerId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(
        "invalid demand for customer {id}: P={p}, Q={q} (both must be finite and non-negative)"
    )]
    InvalidDemand { id: CustomerId, p: f64, q: f64 },

    #[error("invalid {field} for customer {id}: {value} (must be finite and non-negative)")]
    InvalidMoney {
        id: CustomerId,
        field: &'static str,
        value: f64,
    },

    #[error("duplicate customer id {0}")]
    DuplicateId(CustomerId),

    #[error("capacity must be finite and positive, got {0}")]
    InvalidCapacity(f64),

    #[error("demand magnitude exceeds capacity {capacity} for customer ids {ids:?}")]
    DemandExceedsCapacity { capacity: f64, ids: Vec<CustomerId> },

    #[error("selection references unknown customer id {0}")]
    UnknownCustomer(CustomerId),

    #[error("forced customers {ids:?} do not fit within capacity on their own")]
    ForcedInfeasible { ids: Vec<CustomerId> },

    #[error("forced and pool sets overlap on customer id {0}")]
    ForcedPoolOverlap(CustomerId),

    #[error("phase spread is undefined: every demand has zero magnitude")]
    UndefinedPhaseSpread,

    #[error("aggregate demand has zero magnitude")]
    ZeroAggregate,

    #[error("exhaustive oracle refuses n = {n} (budget allows n <= {max_n} and at most {max_subsets} subsets); shrink the instance or raise the budget")]
    OracleBudget {
        n: usize,
        max_n: usize,
        max_subsets: u64,
    },

    #[error("invalid valuation model: {0}")]
    InvalidModel(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("unknown scenario acronym {0:?} (expected power F|A, correlation C|U|L, load R|I|M, e.g. \"FCR\")")]
    UnknownScenario(String),

    #[error("unknown algorithm {0:?}")]
    UnknownAlgorithm(String),

    #[error("malformed JSON in {context}: {source}")]
    Json {
        context: String,
        #[source]
        source: serde_json::Error,
    },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: {source}")]
    Csv {
        path: PathBuf,
        #[source]
        source: csv::Error,
    },
}

impl Error {
    /// Process exit code for the command-line front end.
    ///
    /// | code | meaning                                  |
    /// |------|------------------------------------------|
    /// | 1    | I/O failure                              |
    /// | 2    | malformed input, usage or configuration  |
    /// | 3    | exhaustive oracle budget exceeded        |
    /// | 4    | a demand exceeds the instance capacity   |
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Io { .. } | Error::Csv { .. } => 1,
            Error::OracleBudget { .. } => 3,
            Error::DemandExceedsCapacity { .. } => 4,
            _ => 2,
        }
    }
}
