//! Customer valuation and compensation models.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::ComplexDemand;

/// Maps a demand to the pair (valuation, compensation).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ValuationModel {
    /// `a|d|² + b|d| + c`, used for both valuation and compensation.
    Quadratic { a: f64, b: f64, c: f64 },
    /// `m|d| + z`, used for both valuation and compensation.
    Linear { m: f64, z: f64 },
    /// Valuation uniform on `(0, max_valuation]`, compensation uniform on
    /// `(0, max_compensation)`, both independent of the demand.
    Uncorrelated {
        max_valuation: f64,
        max_compensation: f64,
    },
}

impl ValuationModel {
    pub fn quadratic(a: f64, b: f64, c: f64) -> Result<Self> {
        ValuationModel::Quadratic { a, b, c }.validated()
    }

    pub fn linear(m: f64, z: f64) -> Result<Self> {
        ValuationModel::Linear { m, z }.validated()
    }

    pub fn uncorrelated(max_valuation: f64, max_compensation: f64) -> Result<Self> {
        ValuationModel::Uncorrelated {
            max_valuation,
            max_compensation,
        }
        .validated()
    }

    pub fn validated(self) -> Result<Self> {
        let positive = |x: f64| x.is_finite() && x > 0.0;
        let non_negative = |x: f64| x.is_finite() && x >= 0.0;
        let ok = match self {
            ValuationModel::Quadratic { a, b, c } => {
                positive(a) && non_negative(b) && non_negative(c)
            }
            ValuationModel::Linear { m, z } => positive(m) && positive(z),
            ValuationModel::Uncorrelated {
                max_valuation,
                max_compensation,
            } => positive(max_valuation) && positive(max_compensation),
        };
        if ok {
            Ok(self)
        } else {
            Err(Error::InvalidModel(format!("{self:?}")))
        }
    }

    /// Returns `(valuation, compensation)` for `demand`. Only the
    /// uncorrelated model draws from `rng`.
    pub fn evaluate<R: Rng + ?Sized>(&self, demand: ComplexDemand, rng: &mut R) -> (f64, f64) {
        let x = demand.magnitude();
        match *self {
            ValuationModel::Quadratic { a, b, c } => {
                let v = a * x * x + b * x + c;
                (v, v)
            }
            ValuationModel::Linear { m, z } => {
                let v = m * x + z;
                (v, v)
            }
            ValuationModel::Uncorrelated {
                max_valuation,
                max_compensation,
            } => {
                let valuation = max_valuation * (1.0 - rng.random::<f64>());
                let compensation = loop {
                    let u: f64 = rng.random();
                    if u > 0.0 {
                        break max_compensation * u;
                    }
                };
                (valuation, compensation)
            }
        }
    }
}
