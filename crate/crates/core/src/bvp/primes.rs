use num_bigint::BigUint;
use num_traits::One;

use super::BvpError;
use crate::polyring::ceil_log2;

/// Largest bound accepted by [`primes_below`].
pub const SIEVE_LIMIT: u64 = 1 << 24;

/// Primes `p < bound`, ascending.
pub fn primes_below(bound: u64) -> Result<Vec<u64>, BvpError> {
    if bound > SIEVE_LIMIT {
        return Err(BvpError::SieveGuard { bound, limit: SIEVE_LIMIT });
    }
    let len = bound as usize;
    if len < 3 {
        return Ok(Vec::new());
    }
    let mut composite = vec![false; len];
    let mut p = 2;
    while p * p < len {
        if !composite[p] {
            for m in (p * p..len).step_by(p) {
                composite[m] = true;
            }
        }
        p += 1;
    }
    Ok((2..len).filter(|&i| !composite[i]).map(|i| i as u64).collect())
}

/// `⌈log₂ ∏_{p < bound} p⌉`.
pub fn primorial_bits(bound: u64) -> Result<u64, BvpError> {
    let primes: Vec<BigUint> = primes_below(bound)?.into_iter().map(BigUint::from).collect();
    Ok(ceil_log2(&product(&primes)))
}

/// Balanced product tree, to keep the multiplications even-sized.
fn product(xs: &[BigUint]) -> BigUint {
    match xs {
        [] => BigUint::one(),
        [x] => x.clone(),
        _ => {
            let (a, b) = xs.split_at(xs.len() / 2);
            product(a) * product(b)
        }
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}
