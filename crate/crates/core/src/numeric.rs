//! Small numeric helpers shared across the crate: uniform deviates from raw
//! RNG bits, a Lanczos log-gamma, monotone-function inversion and log grids.

use rand::RngCore;

/// A uniform deviate in [0, 1) with 53 random bits, taken directly from the
/// next 64 bits of the stream. Keeping this in one place pins the exact
/// bit-to-float mapping that all inverse-transform samplers rely on.
#[inline]
pub fn uniform53(rng: &mut dyn RngCore) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

// Lanczos approximation, g = 7, 9 terms, coefficients as published.
const LANCZOS_G: f64 = 7.0;
#[allow(clippy::excessive_precision)]
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Natural log of the gamma function for z > 0.
///
/// Relative accuracy is ~1e-13 over the ranges used here (arguments up to a
/// few hundred), which is far below the tolerances of any caller.
pub fn ln_gamma(z: f64) -> f64 {
    if z < 0.5 {
        // reflection: Gamma(z) Gamma(1-z) = pi / sin(pi z)
        let s = (std::f64::consts::PI * z).sin();
        std::f64::consts::PI.ln() - s.ln() - ln_gamma(1.0 - z)
    } else {
        let z = z - 1.0;
        let mut x = LANCZOS[0];
        for (i, c) in LANCZOS.iter().enumerate().skip(1) {
            x += c / (z + i as f64);
        }
        let t = z + LANCZOS_G + 0.5;
        0.5 * (2.0 * std::f64::consts::PI).ln() + (z + 0.5) * t.ln() - t + x.ln()
    }
}

/// Invert a non-increasing function on (bottom, inf) at `target`: returns an
/// x with f(x) = target to within 1e-10 (relative), found by doubling the
/// bracket away from `bottom` and then bisecting.
///
/// `target = inf` maps to `bottom`, `target <= 0` to `inf` (the function is
/// assumed to decay to zero).
// the negated comparisons stop the bracket walks on NaN as well
#[allow(clippy::neg_cmp_op_on_partial_ord)]
pub fn invert_nonincreasing<F: Fn(f64) -> f64>(f: F, target: f64, bottom: f64) -> f64 {
    if target.is_infinite() && target > 0.0 {
        return bottom;
    }
    if target <= 0.0 {
        return f64::INFINITY;
    }
    let start = if bottom > 0.0 { 2.0 * bottom } else { 1.0 };
    let (mut lo, mut hi);
    if f(start) > target {
        // expand to the right until f drops below the target
        lo = start;
        hi = start;
        for _ in 0..2100 {
            hi = bottom + (hi - bottom) * 2.0;
            if !(f(hi) > target) {
                break;
            }
            lo = hi;
        }
    } else {
        // shrink toward the bottom until f rises above the target
        hi = start;
        lo = start;
        for _ in 0..2100 {
            lo = bottom + (lo - bottom) * 0.5;
            if !(f(lo) < target) {
                break;
            }
            hi = lo;
        }
    }
    if hi.is_infinite() {
        hi = f64::MAX;
    }
    for _ in 0..200 {
        if hi - lo <= 1e-10 * hi.abs() {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if f(mid) > target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// `n` log-spaced points from `lo` to `hi` inclusive (both > 0).
pub fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    assert!(lo > 0.0 && hi > lo && n >= 2);
    let (llo, lhi) = (lo.ln(), hi.ln());
    (0..n)
        .map(|i| (llo + (lhi - llo) * i as f64 / (n - 1) as f64).exp())
        .collect()
}
