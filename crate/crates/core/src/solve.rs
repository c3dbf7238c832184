use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::cmin::{cmin_gda, cmin_gma, cmin_gra, cmin_gva};
use crate::error::{Error, Result};
use crate::greedy::{gda, gma, gra, gva};
use crate::gsa::{gsa, GsaConfig};
use crate::model::{Instance, Objective, Solution};
use crate::oracle::{brute_force_cmin, brute_force_vmax, OracleBudget};

/// A named solver, as used in plans and on the command line.
///
/// Parses from `gva`, `gma`, `gra`, `gda`, `gsa`, `gsa:<epsilon>` and
/// `oracle`. A bare `gsa` picks its epsilon from context.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum Algorithm {
    Gva,
    Gma,
    Gra,
    Gda,
    Gsa(Option<f64>),
    Oracle,
}

impl Algorithm {
    pub fn with_default_epsilon(self, epsilon: f64) -> Algorithm {
        match self {
            Algorithm::Gsa(None) => Algorithm::Gsa(Some(epsilon)),
            other => other,
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Algorithm::Gva => f.write_str("gva"),
            Algorithm::Gma => f.write_str("gma"),
            Algorithm::Gra => f.write_str("gra"),
            Algorithm::Gda => f.write_str("gda"),
            Algorithm::Gsa(None) => f.write_str("gsa"),
            Algorithm::Gsa(Some(eps)) => write!(f, "gsa:{eps}"),
            Algorithm::Oracle => f.write_str("oracle"),
        }
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lower = s.trim().to_ascii_lowercase();
        Ok(match lower.as_str() {
            "gva" => Algorithm::Gva,
            "gma" => Algorithm::Gma,
            "gra" => Algorithm::Gra,
            "gda" => Algorithm::Gda,
            "gsa" => Algorithm::Gsa(None),
            "oracle" => Algorithm::Oracle,
            other => match other.strip_prefix("gsa:") {
                Some(eps) => {
                    let eps: f64 = eps
                        .parse()
                        .map_err(|_| Error::UnknownAlgorithm(s.to_string()))?;
                    GsaConfig::new(eps)?;
                    Algorithm::Gsa(Some(eps))
                }
                None => return Err(Error::UnknownAlgorithm(s.to_string())),
            },
        })
    }
}

impl TryFrom<String> for Algorithm {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<Algorithm> for String {
    fn from(a: Algorithm) -> String {
        a.to_string()
    }
}

/// Runs `algorithm` on `instance` for the requested objective.
///
/// A bare `gsa` uses ε = 1/4. GSA has no compensation-minimising variant.
pub fn solve(
    instance: &Instance,
    algorithm: Algorithm,
    objective: Objective,
    budget: OracleBudget,
) -> Result<Solution> {
    Ok(match (objective, algorithm) {
        (Objective::Vmax, Algorithm::Gva) => gva(instance),
        (Objective::Vmax, Algorithm::Gma) => gma(instance),
        (Objective::Vmax, Algorithm::Gra) => gra(instance),
        (Objective::Vmax, Algorithm::Gda) => gda(instance),
        (Objective::Vmax, Algorithm::Gsa(eps)) => {
            let config = match eps {
                Some(e) => GsaConfig::new(e)?,
                None => GsaConfig::MIXED,
            };
            gsa(instance, config)
        }
        (Objective::Vmax, Algorithm::Oracle) => brute_force_vmax(instance, budget)?,
        (Objective::Cmin, Algorithm::Gva) => cmin_gva(instance),
        (Objective::Cmin, Algorithm::Gma) => cmin_gma(instance),
        (Objective::Cmin, Algorithm::Gra) => cmin_gra(instance),
        (Objective::Cmin, Algorithm::Gda) => cmin_gda(instance),
        (Objective::Cmin, Algorithm::Oracle) => brute_force_cmin(instance, budget)?,
        (Objective::Cmin, Algorithm::Gsa(_)) => {
            return Err(Error::InvalidConfig(
                "gsa has no compensation-minimising variant".into(),
            ))
        }
    })
}
