//! Non-increasing exponent functions psi >= 0 with psi -> 0 at infinity.
//!
//! Any such function induces a distribution function (1/(1 + a psi(x)))^{1/k}
//! (see [`crate::transform::psi_cdf`]); the same object doubles as the
//! max-increment exponent of a homogeneous extremal process, where the
//! marginal at unit time is exp(-psi(x)).

use std::fmt;
use std::sync::Arc;

use crate::dist::{BaseDistribution, ContinuousDistribution};
use crate::error::{Error, Result};
use crate::numeric::{invert_nonincreasing, log_grid};

/// Output-side scaling of the log-periodic carrier: 1 + epsilon sin(...).
fn log_periodic_factor(x: f64, epsilon: f64, c_scale: f64) -> f64 {
    1.0 + epsilon * (std::f64::consts::TAU * x.ln() / c_scale.ln()).sin()
}

#[derive(Clone)]
pub enum PsiFunction {
    /// psi(x) = x^{-theta} on x > 0.
    Power { theta: f64 },
    /// psi(x) = x^{-theta} (1 + epsilon sin(2 pi ln x / ln c)) on x > 0.
    ///
    /// The sine has period ln c in ln x, so psi(x) = a psi(c x) holds exactly
    /// when theta = ln a / ln c. Built through [`make_semistable_psi`], which
    /// also checks monotonicity on a grid.
    LogPeriodic {
        theta: f64,
        epsilon: f64,
        c_scale: f64,
    },
    /// psi(x) = -ln F(x) on {F > 0}.
    NegLogCdf { base: BaseDistribution },
    /// psi(x) = (1 - F(x)) / F(x) on {F > 0}; with a = k = 1 the induced
    /// distribution function 1/(1 + psi) is F itself.
    SurvivalOdds { base: BaseDistribution },
    /// User-supplied rule, inverted by bisection. `bottom` is the infimum of
    /// the domain on which the rule is finite and non-increasing.
    Custom {
        eval: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
        bottom: f64,
    },
}

impl fmt::Debug for PsiFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Power { theta } => write!(f, "Power {{ theta: {theta} }}"),
            Self::LogPeriodic {
                theta,
                epsilon,
                c_scale,
            } => write!(
                f,
                "LogPeriodic {{ theta: {theta}, epsilon: {epsilon}, c_scale: {c_scale} }}"
            ),
            Self::NegLogCdf { base } => write!(f, "NegLogCdf {{ base: {base:?} }}"),
            Self::SurvivalOdds { base } => write!(f, "SurvivalOdds {{ base: {base:?} }}"),
            Self::Custom { bottom, .. } => write!(f, "Custom {{ bottom: {bottom} }}"),
        }
    }
}

impl PsiFunction {
    pub fn power(theta: f64) -> Result<Self> {
        if theta.is_finite() && theta > 0.0 {
            Ok(Self::Power { theta })
        } else {
            Err(Error::InvalidParam {
                name: "theta",
                value: theta,
                constraint: "a positive finite real",
            })
        }
    }

    /// Log-periodic perturbation of a pure power law. Rejects parameter sets
    /// whose evaluation rule increases anywhere on the validation grid.
    pub fn log_periodic(theta: f64, epsilon: f64, c_scale: f64) -> Result<Self> {
        if !(theta.is_finite() && theta > 0.0) {
            return Err(Error::InvalidParam {
                name: "theta",
                value: theta,
                constraint: "a positive finite real",
            });
        }
        if !(0.0..1.0).contains(&epsilon) {
            return Err(Error::InvalidParam {
                name: "epsilon",
                value: epsilon,
                constraint: "in [0, 1)",
            });
        }
        if !(c_scale.is_finite() && c_scale > 1.0) {
            return Err(Error::InvalidParam {
                name: "c_scale",
                value: c_scale,
                constraint: "a finite real greater than 1",
            });
        }
        let psi = Self::LogPeriodic {
            theta,
            epsilon,
            c_scale,
        };
        psi.validate_nonincreasing()?;
        Ok(psi)
    }

    pub fn neg_log_cdf(base: BaseDistribution) -> Self {
        Self::NegLogCdf { base }
    }

    pub fn survival_odds(base: BaseDistribution) -> Self {
        Self::SurvivalOdds { base }
    }

    pub fn custom<F>(eval: F, bottom: f64) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        Self::Custom {
            eval: Arc::new(eval),
            bottom,
        }
    }

    /// Infimum of the domain; psi blows up (or the carrier cdf is zero) at
    /// and below this point.
    pub fn support_bottom(&self) -> f64 {
        match self {
            Self::Power { .. } | Self::LogPeriodic { .. } => 0.0,
            Self::NegLogCdf { base } | Self::SurvivalOdds { base } => base.support().0,
            Self::Custom { bottom, .. } => *bottom,
        }
    }

    /// Supremum of the carrier support: where psi reaches 0.
    pub fn support_top(&self) -> f64 {
        match self {
            Self::Power { .. } | Self::LogPeriodic { .. } | Self::Custom { .. } => f64::INFINITY,
            Self::NegLogCdf { base } | Self::SurvivalOdds { base } => base.support().1,
        }
    }

    /// psi(x); +inf at and below the support bottom.
    pub fn eval(&self, x: f64) -> f64 {
        match self {
            Self::Power { theta } => {
                if x <= 0.0 {
                    f64::INFINITY
                } else {
                    x.powf(-theta)
                }
            }
            Self::LogPeriodic {
                theta,
                epsilon,
                c_scale,
            } => {
                if x <= 0.0 {
                    f64::INFINITY
                } else {
                    x.powf(-theta) * log_periodic_factor(x, *epsilon, *c_scale)
                }
            }
            Self::NegLogCdf { base } => {
                let f = base.cdf(x);
                if f <= 0.0 {
                    f64::INFINITY
                } else {
                    -f.ln()
                }
            }
            Self::SurvivalOdds { base } => {
                let f = base.cdf(x);
                if f <= 0.0 {
                    f64::INFINITY
                } else {
                    base.sf(x) / f
                }
            }
            Self::Custom { eval, bottom } => {
                if x <= *bottom {
                    f64::INFINITY
                } else {
                    eval(x)
                }
            }
        }
    }

    /// Generalized inverse: the x with psi(x) = y. `y = inf` maps to the
    /// support bottom and `y <= 0` to the support top.
    pub fn inverse(&self, y: f64) -> f64 {
        if y.is_infinite() && y > 0.0 {
            return self.support_bottom();
        }
        if y <= 0.0 {
            return self.support_top();
        }
        match self {
            Self::Power { theta } => y.powf(-1.0 / theta),
            Self::LogPeriodic { .. } => invert_nonincreasing(|x| self.eval(x), y, 0.0),
            Self::NegLogCdf { base } => base
                .quantile((-y).exp())
                .expect("exp(-y) lies in (0, 1) for y > 0"),
            Self::SurvivalOdds { base } => base
                .quantile(1.0 / (1.0 + y))
                .expect("1/(1+y) lies in (0, 1) for y > 0"),
            Self::Custom { bottom, .. } => invert_nonincreasing(|x| self.eval(x), y, *bottom),
        }
    }

    /// Checks non-negativity and monotone decrease on 10^4 log-spaced points
    /// spanning ten log-periods around x = 1 (ten decades for non-periodic
    /// rules).
    pub fn validate_nonincreasing(&self) -> Result<()> {
        let half_span = match self {
            Self::LogPeriodic { c_scale, .. } => (5.0 * c_scale.ln()).exp(),
            _ => 1e5,
        };
        let bottom = self.support_bottom();
        let lo = if bottom > 0.0 {
            bottom * 1.000_001
        } else {
            1.0 / half_span
        };
        let grid = log_grid(lo, lo.max(1.0) * half_span, 10_000);
        let mut prev = f64::INFINITY;
        for &x in &grid {
            let v = self.eval(x);
            if v < 0.0 {
                return Err(Error::NonMonotonePsi { x });
            }
            if v > prev * (1.0 + 1e-12) + 1e-300 {
                return Err(Error::NonMonotonePsi { x });
            }
            prev = v.min(prev);
        }
        Ok(())
    }
}

/// Builds the log-periodic solution of the semi-stability equation
/// psi(x) = a psi(c x): theta = ln a / ln c and a sine carrier with period
/// ln c in ln x, which the substitution x -> c x leaves invariant.
///
/// Requires a > 1 and c > 1. For a non-increasing psi the exponent
/// ln a / ln c must be positive, so c on the other side of 1 is rejected
/// with [`Error::WrongOrientation`] rather than silently reoriented.
/// Parameter sets whose perturbation overwhelms the power decay are rejected
/// by the grid monotonicity check.
pub fn make_semistable_psi(a: f64, c: f64, epsilon: f64) -> Result<PsiFunction> {
    if !(a.is_finite() && a > 1.0) {
        return Err(Error::InvalidParam {
            name: "a",
            value: a,
            constraint: "a finite real greater than 1",
        });
    }
    if !(c.is_finite() && c > 0.0 && c != 1.0) {
        return Err(Error::InvalidParam {
            name: "c",
            value: c,
            constraint: "a positive finite real different from 1",
        });
    }
    let theta = a.ln() / c.ln();
    if theta <= 0.0 {
        return Err(Error::WrongOrientation { theta });
    }
    PsiFunction::log_periodic(theta, epsilon, c)
}
