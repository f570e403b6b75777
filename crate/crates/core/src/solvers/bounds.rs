//! Proven quality guarantees of the solvers, as functions of the instance size.

use num::{BigInt, BigRational, One};

use super::numeric::{harmonic, lambert_w};

fn ratio(num: u64, den: u64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Lower bound on greedy Monroe's total Borda satisfaction, for `k ≥ 3`:
/// `(m−1)·n·(1 − (k−1)/(2(m−1)) − H_k/k)`.
pub fn greedy_monroe_bound(n: usize, m: usize, k: usize) -> Option<BigRational> {
    if k < 3 || m < 2 {
        return None;
    }
    let (n, m, k) = (n as u64, m as u64, k as u64);
    let factor = BigRational::one() - ratio(k - 1, 2 * (m - 1)) - harmonic(k) / BigInt::from(k);
    Some(factor * BigInt::from((m - 1) * n))
}

/// Optimal Monroe Borda satisfaction when all agents share one order and `k | n`:
/// `n(m−1)(1 − (k−1)/(2(m−1)))`.
pub fn identical_profile_optimum(n: usize, m: usize, k: usize) -> BigRational {
    let (n, m, k) = (n as u64, m as u64, k as u64);
    if m < 2 {
        return BigRational::from_integer(0.into());
    }
    (BigRational::one() - ratio(k - 1, 2 * (m - 1))) * BigInt::from(n * (m - 1))
}

/// Approximation factor of greedy CC: `1 − 2w(k)/k`.
pub fn greedy_cc_ratio(k: usize) -> f64 {
    let k = k as f64;
    1.0 - 2.0 * lambert_w(k).expect("k is non-negative") / k
}

/// Lower bound on greedy CC's total Borda satisfaction: `(1 − 2w(k)/k)(m−1)n`.
pub fn greedy_cc_bound(n: usize, m: usize, k: usize) -> f64 {
    greedy_cc_ratio(k) * ((m - 1) * n) as f64
}

/// The δ-majority guarantee `(1 + ln(δ)/k)·(m−1)` on the relaxed egalitarian metric,
/// for an unrounded cover depth. The solver rounds the depth up; its bound is
/// [`majority_guarantee`](crate::solvers::majority_guarantee).
pub fn majority_bound(m: usize, k: usize, delta: f64) -> f64 {
    (1.0 + delta.ln() / k as f64) * (m - 1) as f64
}

/// Expected approximation ratio of one uniform sample:
/// `½(1 + k/m − k²/(m²−m) + k³/(m³−m²))`.
pub fn sampling_expected_ratio(m: usize, k: usize) -> f64 {
    let (m, k) = (m as f64, k as f64);
    0.5 * (1.0 + k / m - k * k / (m * m - m) + k * k * k / (m * m * m - m * m))
}

/// Bound on the probability that one sample deviates from its expectation by
/// more than a relative `epsilon`, valid for `k ≥ 8`: `exp(−k·ε²/128)`.
pub fn sampling_deviation_bound(k: usize, epsilon: f64) -> f64 {
    (-(k as f64) * epsilon * epsilon / 128.0).exp()
}

/// Greedy max-cover guarantee against the optimum: `1 − 1/e`.
pub const MAXCOVER_RATIO: f64 = 1.0 - 1.0 / std::f64::consts::E;

/// Guaranteed ratio of the combined Monroe algorithm, before subtracting ε.
pub const COMBINED_RATIO: f64 = 0.715;
