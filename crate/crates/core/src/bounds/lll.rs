//! The local-lemma condition `m^r n^m < l^(C(m, r) - 1)` by exact
//! integer comparison.

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::binom::big_binomial;
use crate::error::{ensure, Error, Result};

/// Largest `C(m, r) - 1` accepted as an exponent.
pub const MAX_EXPONENT: u64 = 1 << 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LllParams {
    pub r: u32,
    pub m: u32,
    pub k: u32,
    pub ell: u32,
    pub n: u64,
}

impl LllParams {
    pub fn new(r: u32, m: u32, k: u32, ell: u32, n: u64) -> Result<LllParams> {
        ensure!(m >= r && r >= 1, "need m >= r >= 1");
        ensure!(n >= m as u64, "need n >= m");
        ensure!(ell >= 1, "need at least one color");
        Ok(LllParams { r, m, k, ell, n })
    }

    pub fn holds(&self) -> Result<bool> {
        lll_condition(self.r, self.m, self.ell, self.n)
    }
}

/// `l^(C(m, r) - 1)`, the reciprocal of the probability that one daisy is
/// monochromatic.
pub fn inverse_probability(r: u32, m: u32, ell: u32) -> Result<BigUint> {
    ensure!(m >= r && r >= 1, "need m >= r >= 1");
    let edges = big_binomial(m as u64, r as u64);
    let exponent = (edges - 1u32)
        .to_u64()
        .filter(|&e| e <= MAX_EXPONENT)
        .ok_or_else(|| Error::Capacity(format!("C({m}, {r}) - 1 exceeds {MAX_EXPONENT}")))?;
    Ok(BigUint::from(ell).pow(exponent as u32))
}

fn lhs(r: u32, m: u32, n: u64) -> BigUint {
    BigUint::from(m).pow(r) * BigUint::from(n).pow(m)
}

pub fn lll_condition(r: u32, m: u32, ell: u32, n: u64) -> Result<bool> {
    Ok(lhs(r, m, n) < inverse_probability(r, m, ell)?)
}

/// Largest `n` with the condition true, or 0 if it fails at `n = 1`. The
/// left side grows with `n`, so doubling brackets the answer and bisection
/// finds it.
pub fn lll_threshold(r: u32, m: u32, ell: u32) -> Result<u64> {
    let rhs = inverse_probability(r, m, ell)?;
    let ok = |n: u64| lhs(r, m, n) < rhs;
    if !ok(1) {
        return Ok(0);
    }
    let mut lo = 1u64;
    let mut hi = 2u64;
    while ok(hi) {
        lo = hi;
        hi = hi
            .checked_mul(2)
            .ok_or_else(|| Error::Capacity("threshold exceeds 2^64".into()))?;
    }
    // ok(lo), !ok(hi)
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if ok(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(lo)
}

/// Whether `lll_threshold` equals `n`: the condition holds at `n` and fails
/// at `n + 1`.
pub fn is_threshold(r: u32, m: u32, ell: u32, n: u64) -> Result<bool> {
    let holds_at = |n: u64| -> Result<bool> {
        if n == 0 {
            Ok(true)
        } else {
            lll_condition(r, m, ell, n)
        }
    };
    Ok(holds_at(n)? && !holds_at(n + 1)?)
}
