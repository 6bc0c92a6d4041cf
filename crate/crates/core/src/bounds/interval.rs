//! Fixed-point interval arithmetic with outward rounding, and the
//! certified check of `(1 - mu) t_j(z) >= t_j(z - 3^j mu / 2^((j-1) z))`
//! for `j` in `{1, 2}`.

use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{ensure, Error, Result};

pub const MIN_PRECISION: u32 = 64;
/// Largest `z` accepted; `2^z` is held as a fixed-point integer.
pub const MAX_Z: u32 = 1 << 16;

/// `[lo, hi] * 2^-p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lo: BigInt,
    pub hi: BigInt,
}

fn ceil_div(a: &BigInt, b: &BigInt) -> BigInt {
    -((-a).div_floor(b))
}

/// Arithmetic at scale `2^-p`; every operation rounds `lo` down and `hi` up.
#[derive(Clone, Debug)]
pub struct FixedPoint {
    p: u32,
    one: BigInt,
}

impl FixedPoint {
    pub fn new(p: u32) -> FixedPoint {
        FixedPoint {
            p,
            one: BigInt::one() << p,
        }
    }

    pub fn precision(&self) -> u32 {
        self.p
    }

    pub fn point(&self, v: BigInt) -> Interval {
        Interval {
            lo: v.clone(),
            hi: v,
        }
    }

    pub fn integer(&self, v: i64) -> Interval {
        self.point(BigInt::from(v) << self.p)
    }

    pub fn ratio(&self, r: &BigRational) -> Interval {
        let num = r.numer() << self.p;
        Interval {
            lo: num.div_floor(r.denom()),
            hi: ceil_div(&num, r.denom()),
        }
    }

    pub fn add(&self, a: &Interval, b: &Interval) -> Interval {
        Interval {
            lo: &a.lo + &b.lo,
            hi: &a.hi + &b.hi,
        }
    }

    pub fn sub(&self, a: &Interval, b: &Interval) -> Interval {
        Interval {
            lo: &a.lo - &b.hi,
            hi: &a.hi - &b.lo,
        }
    }

    pub fn neg(&self, a: &Interval) -> Interval {
        Interval {
            lo: -&a.hi,
            hi: -&a.lo,
        }
    }

    pub fn mul(&self, a: &Interval, b: &Interval) -> Interval {
        let products = [&a.lo * &b.lo, &a.lo * &b.hi, &a.hi * &b.lo, &a.hi * &b.hi];
        let min = products.iter().min().expect("four");
        let max = products.iter().max().expect("four");
        Interval {
            lo: min.div_floor(&self.one),
            hi: ceil_div(max, &self.one),
        }
    }

    pub fn div_int(&self, a: &Interval, k: u64) -> Interval {
        let k = BigInt::from(k);
        Interval {
            lo: a.lo.div_floor(&k),
            hi: ceil_div(&a.hi, &k),
        }
    }

    /// `1 / a` for `a > 0`.
    pub fn recip(&self, a: &Interval) -> Result<Interval> {
        if !a.lo.is_positive() {
            return Err(Error::Inconclusive);
        }
        let sq = &self.one * &self.one;
        Ok(Interval {
            lo: sq.div_floor(&a.hi),
            hi: ceil_div(&sq, &a.lo),
        })
    }

    /// `ln 2 = sum 1 / (k 2^k)`; the tail after `p + 2` terms is below one
    /// unit in the last place.
    pub fn ln2(&self) -> Interval {
        let mut sum = self.point(BigInt::zero());
        for k in 1..=(self.p as u64 + 2) {
            let term = BigRational::new(BigInt::one(), BigInt::from(k) << k);
            sum = self.add(&sum, &self.ratio(&term));
        }
        sum.hi += 1;
        sum
    }

    /// `ln(1 - mu) = -sum mu^k / k` for `0 <= mu < 3/4`.
    pub fn ln_one_minus(&self, mu: &Interval) -> Result<Interval> {
        ensure!(
            !mu.lo.is_negative() && &mu.hi * 4 < &self.one * 3,
            "ln(1 - mu) needs 0 <= mu < 3/4"
        );
        let mut sum = self.point(BigInt::zero());
        let mut pow = mu.clone();
        let mut k = 1u64;
        while pow.hi > BigInt::one() {
            sum = self.add(&sum, &self.div_int(&pow, k));
            pow = self.mul(&pow, mu);
            k += 1;
        }
        // remaining terms sum to at most mu^k / (1 - mu) <= 4 mu^k
        let tail: BigInt = &pow.hi * 4;
        Ok(Interval {
            lo: -(&sum.hi + tail),
            hi: -&sum.lo,
        })
    }

    /// `e^y` for `0 <= y < 1`.
    fn exp_unit(&self, y: &Interval) -> Interval {
        debug_assert!(!y.lo.is_negative() && y.hi < self.one);
        let mut sum = self.point(self.one.clone());
        let mut term = sum.clone();
        let mut k = 1u64;
        loop {
            term = self.div_int(&self.mul(&term, y), k);
            sum = self.add(&sum, &term);
            if term.hi <= BigInt::one() {
                break;
            }
            k += 1;
        }
        // later terms shrink by a factor of at least 2
        sum.hi += &term.hi * 2;
        sum
    }

    fn shift(&self, a: Interval, n: &BigInt) -> Result<Interval> {
        let s = n
            .magnitude()
            .to_u64()
            .filter(|&s| s <= 1 << 24)
            .ok_or(Error::Inconclusive)? as usize;
        Ok(if n.sign() == Sign::Minus {
            let d = BigInt::one() << s;
            Interval {
                lo: a.lo.div_floor(&d),
                hi: ceil_div(&a.hi, &d),
            }
        } else {
            Interval {
                lo: a.lo << s,
                hi: a.hi << s,
            }
        })
    }

    fn exp2_point(&self, v: &BigInt, ln2: &Interval) -> Result<Interval> {
        let (int, frac) = v.div_mod_floor(&self.one);
        let y = self.mul(&self.point(frac), ln2);
        let y = Interval {
            lo: y.lo.max(BigInt::zero()),
            hi: y.hi.min(&self.one - 1),
        };
        self.shift(self.exp_unit(&y), &int)
    }

    /// `2^x`, monotone so each end is evaluated separately.
    pub fn exp2(&self, x: &Interval) -> Result<Interval> {
        let ln2 = self.ln2();
        let lo = self.exp2_point(&x.lo, &ln2)?.lo;
        let hi = self.exp2_point(&x.hi, &ln2)?.hi;
        Ok(Interval { lo, hi })
    }

    pub fn log2_one_minus(&self, mu: &Interval) -> Result<Interval> {
        let ln = self.ln_one_minus(mu)?;
        Ok(self.mul(&ln, &self.recip(&self.ln2())?))
    }

    pub fn to_f64(&self, a: &Interval) -> (f64, f64) {
        let scale = (self.p as f64).exp2();
        (
            a.lo.to_f64().unwrap_or(f64::NAN) / scale,
            a.hi.to_f64().unwrap_or(f64::NAN) / scale,
        )
    }
}

/// Base-2 logarithms of both sides, as intervals.
#[derive(Clone, Debug)]
pub struct LemmaSides {
    pub lhs: Interval,
    pub rhs: Interval,
}

/// Encloses `log2` of each side. For `j = 1`: `log2(1 - mu) + z` against
/// `z - 3 mu`. For `j = 2`: `log2(1 - mu) + 2^z` against `2^(z - 9 mu / 2^z)`.
pub fn lemma_sides(
    j: u32,
    z: &BigRational,
    mu: &BigRational,
    precision: u32,
) -> Result<LemmaSides> {
    if j == 0 || j > 2 {
        return Err(Error::Unrepresentable { level: j });
    }
    ensure!(
        precision >= MIN_PRECISION,
        "precision must be at least {MIN_PRECISION} bits"
    );
    ensure!(*z >= BigRational::from_integer(2.into()), "need z >= 2");
    ensure!(
        *z <= BigRational::from_integer(MAX_Z.into()),
        "need z <= {MAX_Z}"
    );
    let half = BigRational::new(1.into(), 2.into());
    ensure!(mu.is_positive() && *mu < half, "need 0 < mu < 1/2");
    let fx = FixedPoint::new(precision);
    let zi = fx.ratio(z);
    let mui = fx.ratio(mu);
    let log_factor = fx.log2_one_minus(&mui)?;
    if j == 1 {
        let lhs = fx.add(&log_factor, &zi);
        let rhs = fx.sub(&zi, &fx.mul(&fx.integer(3), &mui));
        return Ok(LemmaSides { lhs, rhs });
    }
    let two_z = fx.exp2(&zi)?;
    let shift = fx.mul(&fx.mul(&fx.integer(9), &mui), &fx.recip(&two_z)?);
    let lhs = fx.add(&log_factor, &two_z);
    let rhs = fx.exp2(&fx.sub(&zi, &shift))?;
    Ok(LemmaSides { lhs, rhs })
}

/// `Ok(true)` or `Ok(false)` only when the enclosures separate; otherwise
/// `Inconclusive`, and a higher precision may settle it.
pub fn check_lemma_comput(
    j: u32,
    z: &BigRational,
    mu: &BigRational,
    precision: u32,
) -> Result<bool> {
    let sides = lemma_sides(j, z, mu, precision)?;
    if sides.lhs.lo >= sides.rhs.hi {
        Ok(true)
    } else if sides.lhs.hi < sides.rhs.lo {
        Ok(false)
    } else {
        Err(Error::Inconclusive)
    }
}

/// Accepts `a`, `a/b`, and decimals such as `1.25`.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    if let Some((int, frac)) = s.split_once('.') {
        let digits = format!("{int}{frac}");
        let num =
            BigInt::from_str(&digits).map_err(|_| Error::Contract(format!("not a number: {s}")))?;
        let den = num_traits::pow(BigInt::from(10), frac.len());
        return Ok(BigRational::new(num, den));
    }
    BigRational::from_str(s).map_err(|_| Error::Contract(format!("not a rational: {s}")))
}
