//! Tower `t_j(x)` and binomial tower `bt_j(x)`, exact while they fit a bit
//! budget and in height form beyond it.

use std::cmp::Ordering;
use std::f64::consts::PI;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use super::binom::big_binomial;
use crate::error::{Error, Result};

pub const DEFAULT_BIT_BUDGET: u64 = 1 << 24;
/// Relative tolerance for comparing height-form tops.
pub const TOP_TOLERANCE: f64 = 1.0 / (1u64 << 40) as f64;

/// `Height { h, top }` stands for `2^2^...^top` with `h` twos.
#[derive(Clone, Debug, PartialEq)]
pub enum TowerValue {
    Exact(BigUint),
    Height { h: u32, top: f64 },
}

pub fn log2_big(v: &BigUint) -> f64 {
    let bits = v.bits();
    if bits <= 64 {
        return v.to_u64().expect("fits").to_f64().expect("finite").log2();
    }
    let head = (v >> (bits - 64)).to_u64().expect("64 bits");
    (head as f64).log2() + (bits - 64) as f64
}

impl TowerValue {
    fn from_big(v: BigUint, budget: u64) -> TowerValue {
        if v.bits() <= budget {
            TowerValue::Exact(v)
        } else {
            TowerValue::height(1, log2_big(&v))
        }
    }

    /// Lowers the height while the top stays below `2^1024`.
    fn height(mut h: u32, mut top: f64) -> TowerValue {
        while h > 0 && top < 1024.0 {
            top = top.exp2();
            h -= 1;
        }
        TowerValue::Height { h, top }
    }

    pub fn exact(&self) -> Option<&BigUint> {
        match self {
            TowerValue::Exact(v) => Some(v),
            TowerValue::Height { .. } => None,
        }
    }

    pub fn bits(&self) -> Option<u64> {
        self.exact().map(BigUint::bits)
    }

    /// `(h, top)` with `top < 2^1024` and `top >= 1024` whenever `h >= 1`.
    fn canonical(&self) -> (u32, f64) {
        match self {
            TowerValue::Exact(v) if v.bits() <= 1023 => (0, v.to_f64().expect("finite")),
            TowerValue::Exact(v) => (1, log2_big(v)),
            TowerValue::Height { h, top } => match TowerValue::height(*h, *top) {
                TowerValue::Height { h, top } => (h, top),
                TowerValue::Exact(_) => unreachable!(),
            },
        }
    }

    /// Exact between two exact values. Otherwise by height, then by top;
    /// tops closer than the relative tolerance are inconclusive.
    pub fn compare(&self, other: &TowerValue) -> Result<Ordering> {
        if let (TowerValue::Exact(a), TowerValue::Exact(b)) = (self, other) {
            return Ok(a.cmp(b));
        }
        let (ha, ta) = self.canonical();
        let (hb, tb) = other.canonical();
        if ha != hb {
            return Ok(ha.cmp(&hb));
        }
        if (ta - tb).abs() <= TOP_TOLERANCE * ta.abs().max(tb.abs()) {
            return Err(Error::Inconclusive);
        }
        Ok(ta.partial_cmp(&tb).expect("finite tops"))
    }
}

fn tower_step(v: TowerValue, budget: u64) -> TowerValue {
    match v {
        TowerValue::Exact(t) => match t.to_u64() {
            Some(e) if e < budget => TowerValue::Exact(BigUint::one() << e),
            _ => match t.to_f64() {
                Some(top) if top.is_finite() => TowerValue::height(1, top),
                _ => TowerValue::height(2, log2_big(&t)),
            },
        },
        TowerValue::Height { h, top } => TowerValue::Height { h: h + 1, top },
    }
}

/// `log2 C(b, floor(b / 2))` by Stirling, accurate to `O(1 / b)`.
fn log2_central_binomial(b: f64) -> f64 {
    let even = 2.0 * (b / 2.0).ceil();
    let stirling = even - 0.5 * (PI * even / 2.0).log2();
    if even == b {
        stirling
    } else {
        stirling - 1.0
    }
}

fn btower_step(v: TowerValue, level: u32, budget: u64) -> Result<TowerValue> {
    let b = match v {
        TowerValue::Exact(b) => b,
        TowerValue::Height { .. } => return Err(Error::Unrepresentable { level }),
    };
    if let Some(small) = b.to_u64().filter(|&b| b < 1 << 20) {
        return Ok(TowerValue::from_big(big_binomial(small, small / 2), budget));
    }
    match b.to_f64().filter(|f| f.is_finite()) {
        Some(bf) => {
            let est = log2_central_binomial(bf);
            match b.to_u64() {
                Some(bu) if est + 1.0 <= budget as f64 => {
                    Ok(TowerValue::from_big(big_binomial(bu, bu / 2), budget))
                }
                _ => Ok(TowerValue::height(1, est)),
            }
        }
        // b >= 2^1024: the Stirling correction vanishes against log2 b
        None => Ok(TowerValue::height(2, log2_big(&b))),
    }
}

pub fn tower_with(j: u32, x: u64, budget: u64) -> TowerValue {
    let mut v = TowerValue::from_big(BigUint::from(x), budget);
    for _ in 0..j {
        v = tower_step(v, budget);
    }
    v
}

/// `t_0(x) = x`, `t_{i+1}(x) = 2^{t_i(x)}`.
pub fn tower(j: u32, x: u64) -> TowerValue {
    tower_with(j, x, DEFAULT_BIT_BUDGET)
}

pub fn btower_with(j: u32, x: u64, budget: u64) -> Result<TowerValue> {
    let mut v = TowerValue::from_big(BigUint::from(x), budget);
    for level in 1..=j {
        v = btower_step(v, level, budget)?;
    }
    Ok(v)
}

/// `bt_0(x) = x`, `bt_{i+1}(x) = C(bt_i(x), floor(bt_i(x) / 2))`.
pub fn btower(j: u32, x: u64) -> Result<TowerValue> {
    btower_with(j, x, DEFAULT_BIT_BUDGET)
}

/// `bt_j(x) >= t_j(x / 2)`, decided exactly.
///
/// `j = 1` squares both sides. `j = 2` compares `bt_2(x)` with
/// `2^(2^(x/2))` exactly for even `x`, and brackets by bit length for odd
/// `x` (inconclusive if the bracket straddles). Larger `j`, or `bt_j(x)`
/// outside the exact budget, is unrepresentable.
pub fn check_bt_dominates_t(j: u32, x: u64) -> Result<bool> {
    match j {
        0 => Ok(true),
        1 => {
            let c = big_binomial(x, x / 2);
            Ok(&c * &c >= BigUint::one() << x)
        }
        2 => {
            let bt = btower(2, x)?;
            let bt = bt.exact().ok_or(Error::Unrepresentable { level: 2 })?;
            if x.is_multiple_of(2) {
                let e = x / 2;
                if e >= 63 {
                    return Err(Error::Unrepresentable { level: 2 });
                }
                // bt >= 2^E iff bit length > E
                Ok(bt.bits() > 1 << e)
            } else {
                // 2^(L-1) <= bt < 2^L; compare L - 1 and L against E = sqrt(2^x)
                let l = bt.bits();
                let pow = BigUint::one() << x;
                let below = BigUint::from(l - 1);
                if &below * &below >= pow {
                    Ok(true)
                } else if BigUint::from(l) * BigUint::from(l) <= pow {
                    Ok(false)
                } else {
                    Err(Error::Inconclusive)
                }
            }
        }
        _ => Err(Error::Unrepresentable { level: j }),
    }
}

/// `C(x, floor(x / 2)) > 2^(2x / 3)`, checked as `C^3 > 2^(2x)`.
pub fn check_central_binomial_two_thirds(x: u64) -> bool {
    let c = big_binomial(x, x / 2);
    &c * &c * &c > BigUint::one() << (2 * x)
}
