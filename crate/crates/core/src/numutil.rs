//! Small number-theoretic helpers: p-valuations, digit sums and the Sylow
//! bound on the permutation-group order.

use crate::cycleset::CycleSet;
use crate::structure::permutation_group;
use crate::{Error, Limits};

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut f = 2;
    while f * f <= p {
        if p % f == 0 {
            return false;
        }
        f += 1;
    }
    true
}

/// Largest `v` with `p^v | n`, for `p` prime and `n ≥ 1`.
pub fn vp(n: u64, p: u64) -> Result<u32, Error> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    assert!(n >= 1, "valuation of 0 is undefined");
    let mut n = n;
    let mut v = 0;
    while n % p == 0 {
        n /= p;
        v += 1;
    }
    Ok(v)
}

/// Sum of the base-`p` digits of `n`, for `p` prime.
pub fn digit_sum(n: u64, p: u64) -> Result<u64, Error> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let mut n = n;
    let mut s = 0;
    while n > 0 {
        s += n % p;
        n /= p;
    }
    Ok(s)
}

/// Checks `v_p(|G|) ≤ (n-1)/(p-1)` for every prime `p` dividing the
/// permutation-group order. This always holds for a valid cycle set; a
/// `false` return signals an upstream bug.
pub fn sylow_bound_check(x: &CycleSet, limits: &Limits) -> Result<bool, Error> {
    let order = permutation_group(x, limits)?.order();
    let n = x.n() as u64;
    for p in 2..=order {
        if is_prime(p) && order % p == 0 {
            let v = vp(order, p)? as u64;
            // v ≤ (n-1)/(p-1) as rationals, compared exactly.
            if v * (p - 1) > n - 1 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
