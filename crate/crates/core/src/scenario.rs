//! Seeded random instances for the scenario taxonomy.
//!
//! A scenario is named by three letters: power kind (`F` full, `A`
//! active-only), valuation correlation (`C` quadratic, `U` uncorrelated,
//! `L` linear) and load type (`R` residential, `I` industrial, `M` mixed).
//! `ACR` is active-only, quadratic valuations, residential customers.

use std::f64::consts::FRAC_PI_2;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{ComplexDemand, Customer, CustomerId, Instance};
use crate::valuation::ValuationModel;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PowerKind {
    Full,
    ActiveOnly,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Correlation {
    Correlated,
    Uncorrelated,
    Linear,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LoadType {
    Residential,
    Industrial,
    Mixed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Scenario {
    pub power: PowerKind,
    pub correlation: Correlation,
    pub load: LoadType,
}

impl Scenario {
    pub const fn new(power: PowerKind, correlation: Correlation, load: LoadType) -> Self {
        Scenario {
            power,
            correlation,
            load,
        }
    }

    /// All eighteen acronyms, in `F/A × C/U/L × R/I/M` order.
    pub fn all() -> Vec<Scenario> {
        let mut out = Vec::with_capacity(18);
        for power in [PowerKind::Full, PowerKind::ActiveOnly] {
            for correlation in [
                Correlation::Correlated,
                Correlation::Uncorrelated,
                Correlation::Linear,
            ] {
                for load in [LoadType::Residential, LoadType::Industrial, LoadType::Mixed] {
                    out.push(Scenario::new(power, correlation, load));
                }
            }
        }
        out
    }
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = match self.power {
            PowerKind::Full => 'F',
            PowerKind::ActiveOnly => 'A',
        };
        let c = match self.correlation {
            Correlation::Correlated => 'C',
            Correlation::Uncorrelated => 'U',
            Correlation::Linear => 'L',
        };
        let l = match self.load {
            LoadType::Residential => 'R',
            LoadType::Industrial => 'I',
            LoadType::Mixed => 'M',
        };
        write!(f, "{p}{c}{l}")
    }
}

impl FromStr for Scenario {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let unknown = || Error::UnknownScenario(s.to_string());
        let chars: Vec<char> = s.trim().to_ascii_uppercase().chars().collect();
        let [p, c, l] = chars[..] else {
            return Err(unknown());
        };
        let power = match p {
            'F' => PowerKind::Full,
            'A' => PowerKind::ActiveOnly,
            _ => return Err(unknown()),
        };
        let correlation = match c {
            'C' => Correlation::Correlated,
            'U' => Correlation::Uncorrelated,
            'L' => Correlation::Linear,
            _ => return Err(unknown()),
        };
        let load = match l {
            'R' => LoadType::Residential,
            'I' => LoadType::Industrial,
            'M' => LoadType::Mixed,
            _ => return Err(unknown()),
        };
        Ok(Scenario::new(power, correlation, load))
    }
}

impl TryFrom<String> for Scenario {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<Scenario> for String {
    fn from(s: Scenario) -> String {
        s.to_string()
    }
}

/// Demand-magnitude ranges per load type, in volt-amperes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DemandRanges {
    pub residential: (f64, f64),
    pub industrial: (f64, f64),
}

impl DemandRanges {
    /// Residential 500 VA – 8 kVA, industrial 500 kVA – 2 MVA.
    pub const WIDE: DemandRanges = DemandRanges {
        residential: (500.0, 8_000.0),
        industrial: (500_000.0, 2_000_000.0),
    };
    /// Residential 500 VA – 5 kVA, industrial 300 kVA – 1 MVA.
    pub const NARROW: DemandRanges = DemandRanges {
        residential: (500.0, 5_000.0),
        industrial: (300_000.0, 1_000_000.0),
    };

    fn range(&self, industrial: bool) -> (f64, f64) {
        if industrial {
            self.industrial
        } else {
            self.residential
        }
    }
}

impl Default for DemandRanges {
    fn default() -> Self {
        DemandRanges::WIDE
    }
}

/// Valuation models per correlation type. Quadratic parameters are shared
/// by both load types; linear and uncorrelated models differ per type.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ValuationParams {
    pub quadratic: ValuationModel,
    pub linear_residential: ValuationModel,
    pub linear_industrial: ValuationModel,
    pub uncorrelated_residential: ValuationModel,
    pub uncorrelated_industrial: ValuationModel,
}

impl ValuationParams {
    /// `|d|²` for correlated scenarios; `|d| + lo` for linear ones;
    /// uncorrelated draws bounded by the type's largest demand.
    pub fn for_ranges(ranges: &DemandRanges) -> Self {
        let linear = |(lo, _): (f64, f64)| ValuationModel::Linear { m: 1.0, z: lo };
        let uncorrelated = |(_, hi): (f64, f64)| ValuationModel::Uncorrelated {
            max_valuation: hi,
            max_compensation: hi,
        };
        ValuationParams {
            quadratic: ValuationModel::Quadratic {
                a: 1.0,
                b: 0.0,
                c: 0.0,
            },
            linear_residential: linear(ranges.residential),
            linear_industrial: linear(ranges.industrial),
            uncorrelated_residential: uncorrelated(ranges.residential),
            uncorrelated_industrial: uncorrelated(ranges.industrial),
        }
    }

    fn model(&self, correlation: Correlation, industrial: bool) -> ValuationModel {
        match (correlation, industrial) {
            (Correlation::Correlated, _) => self.quadratic,
            (Correlation::Linear, false) => self.linear_residential,
            (Correlation::Linear, true) => self.linear_industrial,
            (Correlation::Uncorrelated, false) => self.uncorrelated_residential,
            (Correlation::Uncorrelated, true) => self.uncorrelated_industrial,
        }
    }

    fn validate(&self) -> Result<()> {
        if !matches!(self.quadratic, ValuationModel::Quadratic { .. })
            || !matches!(self.linear_residential, ValuationModel::Linear { .. })
            || !matches!(self.linear_industrial, ValuationModel::Linear { .. })
            || !matches!(
                self.uncorrelated_residential,
                ValuationModel::Uncorrelated { .. }
            )
            || !matches!(
                self.uncorrelated_industrial,
                ValuationModel::Uncorrelated { .. }
            )
        {
            return Err(Error::InvalidModel(
                "valuation parameters do not match their correlation slots".into(),
            ));
        }
        for m in [
            self.quadratic,
            self.linear_residential,
            self.linear_industrial,
            self.uncorrelated_residential,
            self.uncorrelated_industrial,
        ] {
            m.validated()?;
        }
        Ok(())
    }
}

impl Default for ValuationParams {
    fn default() -> Self {
        ValuationParams::for_ranges(&DemandRanges::WIDE)
    }
}

/// 36°, the spread implied by a 0.8 minimum power factor.
pub const DEFAULT_MAX_THETA: f64 = 36.0 * std::f64::consts::PI / 180.0;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ScenarioSpec {
    pub scenario: Scenario,
    pub n: usize,
    /// Absolute capacity in volt-amperes.
    pub capacity: f64,
    /// When set, overrides `capacity` with `max(f·Σ|d|, max |d|)` so small
    /// instances stay constrained.
    pub capacity_fraction: Option<f64>,
    /// Largest phase difference between any two demands, radians.
    pub max_theta: f64,
    /// Lowest phase; clamped so every phase stays within `[0, π/2]`.
    pub phase_anchor: f64,
    /// Probability that a customer is industrial in mixed scenarios.
    pub industrial_fraction: f64,
    pub ranges: DemandRanges,
    pub valuation: ValuationParams,
    pub seed: u64,
}

impl Default for ScenarioSpec {
    fn default() -> Self {
        ScenarioSpec {
            scenario: Scenario::new(
                PowerKind::Full,
                Correlation::Correlated,
                LoadType::Residential,
            ),
            n: 100,
            capacity: 2_000_000.0,
            capacity_fraction: None,
            max_theta: DEFAULT_MAX_THETA,
            phase_anchor: 0.0,
            industrial_fraction: 0.2,
            ranges: DemandRanges::WIDE,
            valuation: ValuationParams::default(),
            seed: 0,
        }
    }
}

impl ScenarioSpec {
    pub fn new(scenario: Scenario, n: usize, capacity: f64, seed: u64) -> Self {
        ScenarioSpec {
            scenario,
            n,
            capacity,
            seed,
            ..ScenarioSpec::default()
        }
    }

    /// Switches demand ranges and re-derives the range-dependent
    /// valuation defaults.
    pub fn with_ranges(mut self, ranges: DemandRanges) -> Self {
        let q = self.valuation.quadratic;
        self.ranges = ranges;
        self.valuation = ValuationParams::for_ranges(&ranges);
        self.valuation.quadratic = q;
        self
    }

    pub fn acronym(&self) -> String {
        self.scenario.to_string()
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidConfig(msg));
        if !(0.0..=FRAC_PI_2).contains(&self.max_theta) {
            return bad(format!("max_theta {} outside [0, π/2]", self.max_theta));
        }
        if !self.phase_anchor.is_finite() {
            return bad("phase_anchor must be finite".into());
        }
        if self.scenario.load == LoadType::Mixed
            && !(self.industrial_fraction > 0.0 && self.industrial_fraction <= 1.0)
        {
            return bad(format!(
                "industrial_fraction {} outside (0, 1]",
                self.industrial_fraction
            ));
        }
        if let Some(f) = self.capacity_fraction {
            if !(f.is_finite() && f > 0.0) {
                return bad(format!("capacity_fraction {f} must be positive"));
            }
        } else if !(self.capacity.is_finite() && self.capacity > 0.0) {
            return Err(Error::InvalidCapacity(self.capacity));
        }
        for (lo, hi) in [self.ranges.residential, self.ranges.industrial] {
            if !(lo.is_finite() && hi.is_finite() && 0.0 <= lo && lo < hi) {
                return bad(format!("demand range [{lo}, {hi}) is empty or invalid"));
            }
        }
        self.valuation.validate()
    }
}

/// Mixes `stream` into `base` (splitmix64 finaliser per word), giving
/// independent seeds for trials, instances and event streams.
pub fn derive_seed(base: u64, stream: &[u64]) -> u64 {
    fn mix(mut z: u64) -> u64 {
        z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }
    stream.iter().fold(mix(base), |acc, &w| mix(acc ^ mix(w)))
}

/// Builds the instance described by `spec`. Identical specs give
/// identical instances.
pub fn generate(spec: &ScenarioSpec) -> Result<Instance> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let anchor = spec
        .phase_anchor
        .clamp(0.0, (FRAC_PI_2 - spec.max_theta).max(0.0));
    let mut customers = Vec::with_capacity(spec.n);
    for k in 0..spec.n {
        let industrial = match spec.scenario.load {
            LoadType::Residential => false,
            LoadType::Industrial => true,
            LoadType::Mixed => rng.random::<f64>() < spec.industrial_fraction,
        };
        let (lo, hi) = spec.ranges.range(industrial);
        let magnitude = rng.random_range(lo..hi);
        let demand = match spec.scenario.power {
            PowerKind::ActiveOnly => ComplexDemand::new(magnitude, 0.0),
            PowerKind::Full => {
                let phase = anchor + spec.max_theta * rng.random::<f64>();
                ComplexDemand::from_polar(magnitude, phase)
            }
        };
        let (valuation, compensation) = spec
            .valuation
            .model(spec.scenario.correlation, industrial)
            .evaluate(demand, &mut rng);
        let id = CustomerId::try_from(k)
            .map_err(|_| Error::InvalidConfig(format!("n = {} exceeds the id range", spec.n)))?;
        customers.push(Customer::new(id, demand, valuation, compensation));
    }
    let capacity = match spec.capacity_fraction {
        Some(f) => {
            let total: f64 = customers.iter().map(|c| c.demand.magnitude()).sum();
            let largest = customers
                .iter()
                .map(|c| c.demand.magnitude())
                .fold(0.0, f64::max);
            (f * total).max(largest).max(f64::MIN_POSITIVE)
        }
        None => spec.capacity,
    };
    Instance::new(customers, capacity)
}
