//! The Harris(a, k) counting distribution.
//!
//! Its probability generating function is
//!
//! ```text
//! P(s) = ( s^k / (a - (a-1) s^k) )^{1/k},   a > 1, k >= 1 integer,
//! ```
//!
//! the kernel shared by the Harris-minimum and Harris-maximum parametrization
//! schemes. Writing N = 1 + kM, the count M is negative binomial with pgf
//! (1/(a - (a-1)t))^{1/k}, i.e. a gamma(shape 1/k, scale a-1) mixed Poisson,
//! so the support is {1, 1+k, 1+2k, ...} and
//!
//! ```text
//! pmf(1 + jk) = a^{-1/k} * Gamma(1/k + j) / (Gamma(1/k) j!) * ((a-1)/a)^j.
//! ```
//!
//! At k = 1 this is the geometric law on {1, 2, ...} with success probability
//! 1/a. The mean is a: differentiating P at s = 1 gives
//! E N = 1 + k * (1/k)(a-1) = a.

use rand::Rng;
use rand_distr::Distribution as _;

use crate::error::{Error, Result};

/// The pair (a, k) parameterizing the Harris distribution and the transform
/// schemes built on its pgf.
///
/// The transforms accept any a > 0; the counting distribution itself (pgf,
/// pmf, mean, draw) exists only for a > 1 and those operations reject
/// smaller values.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HarrisParams {
    a: f64,
    k: u32,
}

impl HarrisParams {
    pub fn new(a: f64, k: u32) -> Result<Self> {
        if !(a.is_finite() && a > 0.0) {
            return Err(Error::InvalidParam {
                name: "a",
                value: a,
                constraint: "a positive finite real",
            });
        }
        if k == 0 {
            return Err(Error::InvalidParam {
                name: "k",
                value: 0.0,
                constraint: "a positive integer",
            });
        }
        Ok(Self { a, k })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    fn require_counting(&self) -> Result<()> {
        if self.a > 1.0 {
            Ok(())
        } else {
            Err(Error::NotACountingLaw { a: self.a })
        }
    }

    /// Probability generating function E[s^N] for s in [0, 1].
    pub fn pgf(&self, s: f64) -> Result<f64> {
        self.require_counting()?;
        crate::dist::require_probability("s", s)?;
        Ok(crate::transform::harris_kernel(s, self.a, self.k))
    }

    /// P(N = n). Zero off the support {1 + jk : j >= 0}.
    ///
    /// Evaluated in log-gamma arithmetic and exponentiated at the end, so it
    /// stays finite for deep support points where Gamma(1/k + j)/j! would
    /// overflow or underflow on its own.
    pub fn pmf(&self, n: u64) -> Result<f64> {
        self.require_counting()?;
        if n < 1 || !(n - 1).is_multiple_of(self.k as u64) {
            return Ok(0.0);
        }
        let j = ((n - 1) / self.k as u64) as f64;
        let r = 1.0 / self.k as f64;
        let ln_p = -r * self.a.ln()
            + crate::numeric::ln_gamma(r + j)
            - crate::numeric::ln_gamma(r)
            - crate::numeric::ln_gamma(j + 1.0)
            + j * ((self.a - 1.0) / self.a).ln();
        Ok(ln_p.exp())
    }

    /// E[N] = a.
    pub fn mean(&self) -> Result<f64> {
        self.require_counting()?;
        Ok(self.a)
    }

    /// One exact draw: N = 1 + k M with M sampled as a gamma(1/k, a-1) mixed
    /// Poisson. Exact for the non-integer shape 1/k, unlike Bernoulli-run
    /// negative-binomial samplers.
    pub fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<u64> {
        self.require_counting()?;
        let shape = 1.0 / self.k as f64;
        let gamma = rand_distr::Gamma::new(shape, self.a - 1.0).expect("validated parameters");
        let lambda = gamma.sample(rng);
        let m = if lambda > 0.0 {
            rand_distr::Poisson::new(lambda)
                .expect("positive finite mean")
                .sample(rng) as u64
        } else {
            0
        };
        Ok(1 + self.k as u64 * m)
    }

    /// `n` independent draws.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R, n: usize) -> Result<Vec<u64>> {
        self.require_counting()?;
        (0..n).map(|_| self.draw(rng)).collect()
    }
}
