//! The Marshall-Olkin and Harris parametrization schemes.
//!
//! For a survival function Fbar the one-parameter Marshall-Olkin family is
//!
//! ```text
//! Gbar(x) = alpha Fbar(x) / (1 - (1 - alpha) Fbar(x)),   alpha > 0,
//! ```
//!
//! and its two-parameter generalization applies the Harris kernel
//!
//! ```text
//! v  |->  ( v^k / (a - (a-1) v^k) )^{1/k},   a > 0, k >= 1,
//! ```
//!
//! to either the survival function (Harris-minimum scheme) or the
//! distribution function (Harris-maximum scheme). For a > 1 the kernel is the
//! Harris(a, k) pgf, so the maximum scheme is the law of the maximum of a
//! Harris-distributed number of i.i.d. draws. A third route builds
//! distribution functions (1/(1 + a psi(x)))^{1/k} directly from a
//! non-increasing exponent function psi.
//!
//! Everything is exposed both as point evaluators and as law objects
//! implementing [`ContinuousDistribution`], so transformed laws nest (the
//! schemes are closed under composition: parameters multiply) and feed the
//! process simulators unchanged.

mod psi;

pub use psi::{make_semistable_psi, PsiFunction};

use rand::Rng;

use crate::dist::{require_probability, ContinuousDistribution};
use crate::error::{Error, Result};
use crate::harris::HarrisParams;

/// The Harris kernel v (a - (a-1) v^k)^{-1/k} on v in [0, 1].
///
/// The leading v is kept outside the power so that v^k underflow for large k
/// is harmless (it only perturbs the denominator toward a), and a = 1 maps to
/// the exact identity. The final min guards the v = 1 endpoint, where
/// a - (a-1) can round below 1 for non-representable a.
pub(crate) fn harris_kernel(v: f64, a: f64, k: u32) -> f64 {
    (v * (a - (a - 1.0) * v.powi(k as i32)).powf(-1.0 / k as f64)).min(1.0)
}

/// Inverse of [`harris_kernel`] on [0, 1]:
/// q |-> (a q^k / (1 + (a-1) q^k))^{1/k}, clamped so roundoff at the
/// endpoints can never push the result outside [0, 1].
pub(crate) fn harris_kernel_inverse(q: f64, a: f64, k: u32) -> f64 {
    let qk = q.powi(k as i32);
    ((a * qk) / (1.0 + (a - 1.0) * qk))
        .powf(1.0 / k as f64)
        .clamp(0.0, 1.0)
}

fn require_alpha(alpha: f64) -> Result<()> {
    if alpha.is_finite() && alpha > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParam {
            name: "alpha",
            value: alpha,
            constraint: "a positive finite real",
        })
    }
}

/// Marshall-Olkin survival value alpha Fbar / (1 - (1-alpha) Fbar) at x.
pub fn mo_sf<D>(base: &D, alpha: f64, x: f64) -> Result<f64>
where
    D: ContinuousDistribution + ?Sized,
{
    require_alpha(alpha)?;
    Ok(mo_sf_value(base.sf(x), alpha))
}

/// alpha sbar / (1 - (1-alpha) sbar), guarded at sbar = 1 where the
/// denominator can round past the numerator.
fn mo_sf_value(sbar: f64, alpha: f64) -> f64 {
    (alpha * sbar / (1.0 - (1.0 - alpha) * sbar)).min(1.0)
}

/// Harris-minimum survival value (Fbar^k / (a - (a-1) Fbar^k))^{1/k} at x.
/// At k = 1 this is the Marshall-Olkin scheme with alpha = 1/a.
pub fn harris_min_sf<D>(base: &D, hp: HarrisParams, x: f64) -> Result<f64>
where
    D: ContinuousDistribution + ?Sized,
{
    Ok(harris_kernel(base.sf(x), hp.a(), hp.k()))
}

/// Harris-maximum distribution value (F^k / (a - (a-1) F^k))^{1/k} at x.
/// For a > 1 this equals the Harris(a, k) pgf evaluated at F(x).
pub fn harris_max_cdf<D>(base: &D, hp: HarrisParams, x: f64) -> Result<f64>
where
    D: ContinuousDistribution + ?Sized,
{
    Ok(harris_kernel(base.cdf(x), hp.a(), hp.k()))
}

/// Closed-form inverse of the Harris-maximum scheme.
pub fn harris_max_quantile<D>(base: &D, hp: HarrisParams, q: f64) -> Result<f64>
where
    D: ContinuousDistribution + ?Sized,
{
    require_probability("q", q)?;
    base.quantile(harris_kernel_inverse(q, hp.a(), hp.k()))
}

/// The distribution value (1/(1 + a psi(x)))^{1/k} of Theorem-style
/// psi-constructions. Errors for x at or below psi's domain bottom.
pub fn psi_cdf(psi: &PsiFunction, hp: HarrisParams, x: f64) -> Result<f64> {
    let bottom = psi.support_bottom();
    if x <= bottom {
        return Err(Error::OutOfDomain {
            name: "x",
            value: x,
            domain: "(support bottom, inf)",
        });
    }
    Ok(psi_cdf_value(psi, hp, x))
}

fn psi_cdf_value(psi: &PsiFunction, hp: HarrisParams, x: f64) -> f64 {
    (1.0 / (1.0 + hp.a() * psi.eval(x))).powf(1.0 / hp.k() as f64)
}

/// One draw from the Harris-maximum law of `base`.
///
/// For a > 1 this is the literal random maximum: N ~ Harris(a, k), then the
/// max of N base draws. For 0 < a <= 1 the scheme is still a distribution
/// function but not a random maximum, so the draw falls back to inverse
/// transform through [`harris_max_quantile`].
pub fn harris_max_draw<D, R>(base: &D, hp: HarrisParams, rng: &mut R) -> f64
where
    D: ContinuousDistribution + ?Sized,
    R: Rng,
{
    if hp.a() > 1.0 {
        let n = hp.draw(rng).expect("a > 1");
        let mut best = f64::NEG_INFINITY;
        for _ in 0..n {
            best = best.max(base.draw(rng));
        }
        best
    } else {
        harris_max_quantile(base, hp, crate::numeric::uniform53(rng))
            .expect("uniform deviate lies in [0,1)")
    }
}

/// Marshall-Olkin transformed law.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MarshallOlkin<D> {
    base: D,
    alpha: f64,
}

impl<D: ContinuousDistribution> MarshallOlkin<D> {
    pub fn new(base: D, alpha: f64) -> Result<Self> {
        require_alpha(alpha)?;
        Ok(Self { base, alpha })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }
}

impl<D: ContinuousDistribution> ContinuousDistribution for MarshallOlkin<D> {
    fn cdf(&self, x: f64) -> f64 {
        1.0 - self.sf(x)
    }

    fn sf(&self, x: f64) -> f64 {
        mo_sf_value(self.base.sf(x), self.alpha)
    }

    fn quantile(&self, q: f64) -> Result<f64> {
        require_probability("q", q)?;
        let u = 1.0 - q;
        let sbar = (u / (self.alpha + u * (1.0 - self.alpha))).clamp(0.0, 1.0);
        self.base.quantile(1.0 - sbar)
    }

    fn support(&self) -> (f64, f64) {
        self.base.support()
    }
}

/// Harris-minimum transformed law (survival-side scheme).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HarrisMin<D> {
    base: D,
    hp: HarrisParams,
}

impl<D: ContinuousDistribution> HarrisMin<D> {
    pub fn new(base: D, hp: HarrisParams) -> Self {
        Self { base, hp }
    }

    pub fn params(&self) -> HarrisParams {
        self.hp
    }
}

impl<D: ContinuousDistribution> ContinuousDistribution for HarrisMin<D> {
    fn cdf(&self, x: f64) -> f64 {
        1.0 - self.sf(x)
    }

    fn sf(&self, x: f64) -> f64 {
        harris_kernel(self.base.sf(x), self.hp.a(), self.hp.k())
    }

    fn quantile(&self, q: f64) -> Result<f64> {
        require_probability("q", q)?;
        let sbar = harris_kernel_inverse(1.0 - q, self.hp.a(), self.hp.k());
        self.base.quantile(1.0 - sbar)
    }

    fn support(&self) -> (f64, f64) {
        self.base.support()
    }
}

/// Harris-maximum transformed law (distribution-side scheme).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HarrisMax<D> {
    base: D,
    hp: HarrisParams,
}

impl<D: ContinuousDistribution> HarrisMax<D> {
    pub fn new(base: D, hp: HarrisParams) -> Self {
        Self { base, hp }
    }

    pub fn params(&self) -> HarrisParams {
        self.hp
    }

    pub fn base(&self) -> &D {
        &self.base
    }
}

impl<D: ContinuousDistribution> ContinuousDistribution for HarrisMax<D> {
    fn cdf(&self, x: f64) -> f64 {
        harris_kernel(self.base.cdf(x), self.hp.a(), self.hp.k())
    }

    fn quantile(&self, q: f64) -> Result<f64> {
        require_probability("q", q)?;
        self.base
            .quantile(harris_kernel_inverse(q, self.hp.a(), self.hp.k()))
    }

    fn support(&self) -> (f64, f64) {
        self.base.support()
    }
}

/// Law with distribution function (1/(1 + a psi(x)))^{1/k}.
#[derive(Debug, Clone)]
pub struct PsiLaw {
    psi: PsiFunction,
    hp: HarrisParams,
}

impl PsiLaw {
    pub fn new(psi: PsiFunction, hp: HarrisParams) -> Self {
        Self { psi, hp }
    }

    pub fn psi(&self) -> &PsiFunction {
        &self.psi
    }
}

impl ContinuousDistribution for PsiLaw {
    fn cdf(&self, x: f64) -> f64 {
        if x <= self.psi.support_bottom() {
            0.0
        } else {
            psi_cdf_value(&self.psi, self.hp, x)
        }
    }

    fn quantile(&self, q: f64) -> Result<f64> {
        require_probability("q", q)?;
        if q == 0.0 {
            return Ok(self.psi.support_bottom());
        }
        // (1/(1 + a psi))^{1/k} = q  <=>  psi(x) = (q^{-k} - 1)/a
        let target = (q.powi(-(self.hp.k() as i32)) - 1.0) / self.hp.a();
        Ok(self.psi.inverse(target))
    }

    fn support(&self) -> (f64, f64) {
        (self.psi.support_bottom(), self.psi.support_top())
    }
}

/// Law of X / factor for X ~ base: the scale change appearing in the
/// semi-stability statements.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rescaled<D> {
    base: D,
    factor: f64,
}

impl<D: ContinuousDistribution> Rescaled<D> {
    pub fn new(base: D, factor: f64) -> Result<Self> {
        if factor.is_finite() && factor > 0.0 {
            Ok(Self { base, factor })
        } else {
            Err(Error::InvalidParam {
                name: "factor",
                value: factor,
                constraint: "a positive finite real",
            })
        }
    }
}

impl<D: ContinuousDistribution> ContinuousDistribution for Rescaled<D> {
    fn cdf(&self, x: f64) -> f64 {
        self.base.cdf(self.factor * x)
    }

    fn sf(&self, x: f64) -> f64 {
        self.base.sf(self.factor * x)
    }

    fn quantile(&self, q: f64) -> Result<f64> {
        Ok(self.base.quantile(q)? / self.factor)
    }

    fn support(&self) -> (f64, f64) {
        let (lo, hi) = self.base.support();
        (lo / self.factor, hi / self.factor)
    }
}
