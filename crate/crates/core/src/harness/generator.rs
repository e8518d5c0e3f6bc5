//! Random instance families.
//!
//! [`Family::UniformIndependent`] draws the weight and the buck-per-bang
//! independently, which is what makes `P(w(i) > w(j) | b(i) > b(j)) = 1/2`
//! hold. Drawing value and weight independently instead would tie `b = w/v`
//! to the weight and push that frequency to about 3/4.

use std::fmt;
use std::str::FromStr;

use rand::distributions::Open01;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{Instance, Item};

/// Smallest buck-per-bang produced by the uniform and correlated families.
pub const MIN_BPB: f64 = 0.25;

/// ChaCha stream reserved for instance generation so it never overlaps the
/// per-trial streams derived from the same seed.
const INSTANCE_STREAM: u64 = u64::MAX;

/// Anything that can draw a single random item.
pub trait ItemSampler: Sync {
    fn sample_item(&self, id: usize, rng: &mut dyn RngCore) -> Item;
}

/// Adapts a closure returning `(value, weight)`.
pub struct FnSampler<F>(pub F);

impl<F> ItemSampler for FnSampler<F>
where
    F: Fn(&mut dyn RngCore) -> (f64, f64) + Sync,
{
    fn sample_item(&self, id: usize, rng: &mut dyn RngCore) -> Item {
        let (value, weight) = (self.0)(rng);
        Item { id, value, weight }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Family {
    /// `w ~ U(0, 1]`, `b ~ U[0.25, 1]` independent, `v = w / b`.
    UniformIndependent,
    /// `v ~ Exp(mean)`, `w ~ U(0, 1]` independent.
    Exponential { mean: f64 },
    /// `w ~ U(0, 1]`, `b = 0.25 + 0.75 (rho w + (1 - rho) u)` with `u ~ U(0, 1]`.
    /// `rho = 1` makes the weight strictly increasing in buck-per-bang.
    CorrelatedBuckWeight { rho: f64 },
    /// `v ~ U[value_lo, value_hi]`, `w ~ U[weight_lo, weight_hi]` independent.
    Custom {
        value_lo: f64,
        value_hi: f64,
        weight_lo: f64,
        weight_hi: f64,
    },
}

impl Family {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidArgument(msg));
        match *self {
            Family::UniformIndependent => Ok(()),
            Family::Exponential { mean } if !(mean > 0.0 && mean.is_finite()) => {
                bad(format!("exponential mean must be > 0, got {mean}"))
            }
            Family::CorrelatedBuckWeight { rho } if !(0.0..=1.0).contains(&rho) => {
                bad(format!("correlation must lie in [0, 1], got {rho}"))
            }
            Family::Custom {
                value_lo,
                value_hi,
                weight_lo,
                weight_hi,
            } if !(value_lo > 0.0 && value_lo <= value_hi && weight_lo > 0.0 && weight_lo <= weight_hi && weight_hi <= 1.0) => {
                bad(format!(
                    "custom ranges need 0 < value_lo <= value_hi and 0 < weight_lo <= weight_hi <= 1, got \
                     [{value_lo}, {value_hi}] x [{weight_lo}, {weight_hi}]"
                ))
            }
            _ => Ok(()),
        }
    }
}

/// `U(0, 1]`.
fn unit_open_closed(rng: &mut dyn RngCore) -> f64 {
    1.0 - rng.gen::<f64>()
}

impl ItemSampler for Family {
    fn sample_item(&self, id: usize, rng: &mut dyn RngCore) -> Item {
        let (value, weight) = match *self {
            Family::UniformIndependent => {
                let w = unit_open_closed(rng);
                let b = rng.gen_range(MIN_BPB..=1.0);
                (w / b, w)
            }
            Family::Exponential { mean } => {
                let u: f64 = rng.sample(Open01);
                (-mean * u.ln(), unit_open_closed(rng))
            }
            Family::CorrelatedBuckWeight { rho } => {
                let w = unit_open_closed(rng);
                let u = unit_open_closed(rng);
                let b = MIN_BPB + (1.0 - MIN_BPB) * (rho * w + (1.0 - rho) * u);
                (w / b, w)
            }
            Family::Custom {
                value_lo,
                value_hi,
                weight_lo,
                weight_hi,
            } => (
                rng.gen_range(value_lo..=value_hi),
                rng.gen_range(weight_lo..=weight_hi),
            ),
        };
        Item { id, value, weight }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::UniformIndependent => write!(f, "uniform"),
            Family::Exponential { mean } => write!(f, "exponential:{mean}"),
            Family::CorrelatedBuckWeight { rho } => write!(f, "correlated:{rho}"),
            Family::Custom {
                value_lo,
                value_hi,
                weight_lo,
                weight_hi,
            } => write!(f, "custom:{value_lo}:{value_hi}:{weight_lo}:{weight_hi}"),
        }
    }
}

/// Parses `uniform`, `exponential[:mean]`, `correlated[:rho]` or
/// `custom:vlo:vhi:wlo:whi`.
impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut parts = s.split(':');
        let name = parts.next().unwrap_or_default();
        let params = parts
            .map(|p| {
                p.parse::<f64>()
                    .map_err(|_| Error::InvalidArgument(format!("bad generator parameter `{p}` in `{s}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        let family = match (name, params.as_slice()) {
            ("uniform", []) => Family::UniformIndependent,
            ("exponential", []) => Family::Exponential { mean: 1.0 },
            ("exponential", [mean]) => Family::Exponential { mean: *mean },
            ("correlated", []) => Family::CorrelatedBuckWeight { rho: 1.0 },
            ("correlated", [rho]) => Family::CorrelatedBuckWeight { rho: *rho },
            ("custom", [a, b, c, d]) => Family::Custom {
                value_lo: *a,
                value_hi: *b,
                weight_lo: *c,
                weight_hi: *d,
            },
            _ => {
                return Err(Error::InvalidArgument(format!(
                    "unknown generator `{s}` (expected uniform, exponential[:mean], correlated[:rho], custom:vlo:vhi:wlo:whi)"
                )))
            }
        };
        family.validate()?;
        Ok(family)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GeneratorSpec {
    pub family: Family,
    pub n: usize,
}

impl GeneratorSpec {
    pub fn new(family: Family, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("generator needs n >= 1".into()));
        }
        family.validate()?;
        Ok(Self { family, n })
    }
}

/// Draws an instance; the same `(spec, seed)` always yields the same items.
pub fn generate_instance(spec: &GeneratorSpec, seed: u64) -> Result<Instance> {
    let spec = GeneratorSpec::new(spec.family, spec.n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(INSTANCE_STREAM);
    let items = (0..spec.n)
        .map(|id| spec.family.sample_item(id, &mut rng))
        .collect();
    Instance::new(items)
}
