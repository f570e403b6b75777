use num::{BigInt, BigRational, One, ToPrimitive, Zero};

use crate::error::{domain, Result};

/// Exact `H_k = 1 + 1/2 + … + 1/k`; `H_0 = 0`.
pub fn harmonic(k: u64) -> BigRational {
    (1..=k).fold(BigRational::zero(), |acc, i| {
        acc + BigRational::new(BigInt::one(), BigInt::from(i))
    })
}

pub fn harmonic_f64(k: u64) -> f64 {
    harmonic(k).to_f64().unwrap_or(f64::INFINITY)
}

/// Principal branch of the Lambert W function on `x ≥ 0`: the `w ≥ 0` with
/// `w·e^w = x`, found by Newton iteration from `ln(1 + x)`.
pub fn lambert_w(x: f64) -> Result<f64> {
    if x.is_nan() || x < 0.0 || x.is_infinite() {
        return domain(format!("lambert_w is defined here for finite x >= 0, got {x}"));
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    let mut w = x.ln_1p();
    for _ in 0..100 {
        let ew = w.exp();
        let f = w * ew - x;
        let step = f / (ew * (w + 1.0));
        w -= step;
        if step.abs() <= 1e-15 * w.abs().max(1.0) {
            break;
        }
    }
    Ok(w)
}

/// `⌈v⌉`, except that values within floating-point noise of an integer
/// round to that integer (so `10·1/2` stays 5 when `ln` rounds a hair up).
pub(crate) fn ceil_tolerant(v: f64) -> f64 {
    let r = v.round();
    if (v - r).abs() <= 1e-9 * r.abs().max(1.0) {
        r
    } else {
        v.ceil()
    }
}
