//! Base parametric continuous distributions behind a single evaluation
//! interface: cdf / sf / quantile / draw.
//!
//! Five families cover bounded, light-tailed and heavy-tailed bases:
//! exponential, Weibull, Pareto, Frechet and uniform. All have closed-form
//! quantiles, so sampling is inverse-transform everywhere and therefore
//! exactly reproducible from a seeded stream.

use rand::RngCore;

use crate::error::{Error, Result};
use crate::numeric::uniform53;

/// Evaluation interface shared by base families and every transformed law.
///
/// `cdf` and `sf` are total on the reals: arguments below the support yield
/// 0 (resp. 1), arguments above yield 1 (resp. 0). `quantile(q)` is the
/// smallest x with cdf(x) >= q and rejects q outside [0, 1].
pub trait ContinuousDistribution {
    fn cdf(&self, x: f64) -> f64;

    fn sf(&self, x: f64) -> f64 {
        1.0 - self.cdf(x)
    }

    fn quantile(&self, q: f64) -> Result<f64>;

    /// Closed support as (lower, upper); either end may be infinite.
    fn support(&self) -> (f64, f64);

    /// One inverse-transform draw. Consumes exactly 64 bits of the stream.
    fn draw(&self, rng: &mut dyn RngCore) -> f64 {
        self.quantile(uniform53(rng))
            .expect("uniform deviate lies in [0,1)")
    }

    /// `n` independent draws; deterministic given the rng state.
    fn sample(&self, rng: &mut dyn RngCore, n: usize) -> Vec<f64> {
        (0..n).map(|_| self.draw(rng)).collect()
    }
}

fn require_positive(name: &'static str, value: f64) -> Result<()> {
    if value.is_finite() && value > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParam {
            name,
            value,
            constraint: "a positive finite real",
        })
    }
}

pub(crate) fn require_probability(name: &'static str, q: f64) -> Result<()> {
    if (0.0..=1.0).contains(&q) {
        Ok(())
    } else {
        Err(Error::OutOfDomain {
            name,
            value: q,
            domain: "[0, 1]",
        })
    }
}

/// A parametric continuous family with closed-form cdf, sf and quantile.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BaseDistribution {
    /// Support [0, inf), F(x) = 1 - exp(-rate x).
    Exponential { rate: f64 },
    /// Support [0, inf), F(x) = 1 - exp(-(x/scale)^shape).
    Weibull { shape: f64, scale: f64 },
    /// Support [minimum, inf), F(x) = 1 - (minimum/x)^shape.
    Pareto { shape: f64, minimum: f64 },
    /// Support [0, inf), F(x) = exp(-(x/scale)^-shape).
    Frechet { shape: f64, scale: f64 },
    /// Support [lower, upper], F linear in between.
    Uniform { lower: f64, upper: f64 },
}

impl BaseDistribution {
    pub fn exponential(rate: f64) -> Result<Self> {
        require_positive("rate", rate)?;
        Ok(Self::Exponential { rate })
    }

    pub fn weibull(shape: f64, scale: f64) -> Result<Self> {
        require_positive("shape", shape)?;
        require_positive("scale", scale)?;
        Ok(Self::Weibull { shape, scale })
    }

    pub fn pareto(shape: f64, minimum: f64) -> Result<Self> {
        require_positive("shape", shape)?;
        require_positive("minimum", minimum)?;
        Ok(Self::Pareto { shape, minimum })
    }

    pub fn frechet(shape: f64, scale: f64) -> Result<Self> {
        require_positive("shape", shape)?;
        require_positive("scale", scale)?;
        Ok(Self::Frechet { shape, scale })
    }

    pub fn uniform(lower: f64, upper: f64) -> Result<Self> {
        if !lower.is_finite() {
            return Err(Error::InvalidParam {
                name: "lower",
                value: lower,
                constraint: "a finite real",
            });
        }
        if !(upper.is_finite() && upper > lower) {
            return Err(Error::InvalidParam {
                name: "upper",
                value: upper,
                constraint: "finite and greater than lower",
            });
        }
        Ok(Self::Uniform { lower, upper })
    }
}

impl ContinuousDistribution for BaseDistribution {
    fn cdf(&self, x: f64) -> f64 {
        match *self {
            Self::Exponential { rate } => {
                if x <= 0.0 {
                    0.0
                } else {
                    -(-rate * x).exp_m1()
                }
            }
            Self::Weibull { shape, scale } => {
                if x <= 0.0 {
                    0.0
                } else {
                    -(-(x / scale).powf(shape)).exp_m1()
                }
            }
            Self::Pareto { shape, minimum } => {
                if x <= minimum {
                    0.0
                } else {
                    -(shape * (minimum / x).ln()).exp_m1()
                }
            }
            Self::Frechet { shape, scale } => {
                if x <= 0.0 {
                    0.0
                } else {
                    (-(x / scale).powf(-shape)).exp()
                }
            }
            Self::Uniform { lower, upper } => ((x - lower) / (upper - lower)).clamp(0.0, 1.0),
        }
    }

    fn sf(&self, x: f64) -> f64 {
        // direct forms where the upper tail would otherwise round to zero
        match *self {
            Self::Exponential { rate } => {
                if x <= 0.0 {
                    1.0
                } else {
                    (-rate * x).exp()
                }
            }
            Self::Weibull { shape, scale } => {
                if x <= 0.0 {
                    1.0
                } else {
                    (-(x / scale).powf(shape)).exp()
                }
            }
            Self::Pareto { shape, minimum } => {
                if x <= minimum {
                    1.0
                } else {
                    (minimum / x).powf(shape)
                }
            }
            Self::Frechet { shape, scale } => {
                if x <= 0.0 {
                    1.0
                } else {
                    -(-(x / scale).powf(-shape)).exp_m1()
                }
            }
            Self::Uniform { .. } => 1.0 - self.cdf(x),
        }
    }

    fn quantile(&self, q: f64) -> Result<f64> {
        require_probability("q", q)?;
        Ok(match *self {
            Self::Exponential { rate } => -(-q).ln_1p() / rate,
            Self::Weibull { shape, scale } => scale * (-(-q).ln_1p()).powf(1.0 / shape),
            Self::Pareto { shape, minimum } => minimum * (1.0 - q).powf(-1.0 / shape),
            Self::Frechet { shape, scale } => scale * (-q.ln()).powf(-1.0 / shape),
            Self::Uniform { lower, upper } => lower + q * (upper - lower),
        })
    }

    fn support(&self) -> (f64, f64) {
        match *self {
            Self::Exponential { .. } | Self::Weibull { .. } | Self::Frechet { .. } => {
                (0.0, f64::INFINITY)
            }
            Self::Pareto { minimum, .. } => (minimum, f64::INFINITY),
            Self::Uniform { lower, upper } => (lower, upper),
        }
    }
}
