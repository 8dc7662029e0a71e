//! Marshall-Olkin and Harris parametrization schemes for probability
//! distributions, the Harris(a, k) counting law, and the stochastic models
//! built on them: Harris-maximum sampling, max-AR(1) recursions and
//! gamma-compounded extremal processes.
//!
//! The crate is organized around a small evaluation interface
//! ([`dist::ContinuousDistribution`]) implemented by five closed-form base
//! families and by every transformed law, so transforms nest and feed the
//! simulators directly. The [`statcheck`] module holds the independent
//! statistical oracles (Kolmogorov-Smirnov, Pearson chi-square, contour
//! integration for pgf coefficients) that the test suite uses to audit every
//! closed form and stationarity statement by simulation.
//!
//! Monte Carlo path generation is data-parallel with rayon under the
//! `parallel` feature (enabled by default) and falls back to the identical
//! sequential kernels without it; per-path seeded streams make the output
//! bit-identical either way.

pub mod dist;
pub mod error;
pub mod harris;
pub mod numeric;
pub mod process;
pub mod statcheck;
pub mod transform;

pub use dist::{BaseDistribution, ContinuousDistribution};
pub use error::{Error, Result};
pub use harris::HarrisParams;
pub use process::{
    ar1_path, ep_marginal_cdf, gamma_ep_path, marginal_at, simulate_ar1, simulate_ar1_scaled,
    simulate_gamma_ep, ArConfig, EpConfig, Law, SamplePath,
};
pub use transform::{
    harris_max_cdf, harris_max_draw, harris_max_quantile, harris_min_sf, make_semistable_psi,
    mo_sf, psi_cdf, HarrisMax, HarrisMin, MarshallOlkin, PsiFunction, PsiLaw, Rescaled,
};
