//! Exact binomial coefficients of any size.

use num_bigint::BigUint;
use num_traits::One;

fn primes_up_to(n: u64) -> Vec<u64> {
    let n = n as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            primes.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    primes
}

fn product(factors: &[BigUint]) -> BigUint {
    match factors.len() {
        0 => BigUint::one(),
        1 => factors[0].clone(),
        len => product(&factors[..len / 2]) * product(&factors[len / 2..]),
    }
}

/// Exponent of the prime `p` in `C(n, k)` (Legendre).
fn prime_exponent(n: u64, k: u64, p: u64) -> u32 {
    let mut e = 0;
    let mut q = p;
    loop {
        e += n / q - k / q - (n - k) / q;
        match q.checked_mul(p) {
            Some(next) if next <= n => q = next,
            _ => break,
        }
    }
    e as u32
}

/// `C(n, k)`, zero when `k > n`. Large arguments go through the prime
/// factorization and a balanced product tree.
pub fn big_binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::ZERO;
    }
    let k = k.min(n - k);
    if k <= 64 || n <= 4096 {
        let mut acc = BigUint::one();
        for i in 0..k {
            acc *= n - i;
            acc /= i + 1;
        }
        return acc;
    }
    let factors: Vec<BigUint> = primes_up_to(n)
        .into_iter()
        .filter_map(|p| match prime_exponent(n, k, p) {
            0 => None,
            e => Some(BigUint::from(p).pow(e)),
        })
        .collect();
    product(&factors)
}
