//! 64-bit primality and factorization.
//!
//! Miller-Rabin with the first twelve prime bases is deterministic for every
//! `u64`. Factorization strips small primes by trial division and splits any
//! remaining composite 64-bit cofactor with Brent's variant of Pollard rho.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use std::collections::BTreeMap;

const TRIAL_LIMIT: u64 = 1 << 12;
const MR_BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &MR_BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let d = (n - 1) >> (n - 1).trailing_zeros();
    let s = (n - 1).trailing_zeros();
    'bases: for &a in &MR_BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

/// Finds a nontrivial factor of an odd composite `n`.
fn brent_rho(n: u64) -> u64 {
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut g, mut q) = (2u64, 2u64, 1u64, 1u64);
        let mut r = 1u64;
        let m = 128u64;
        let mut ys = 0u64;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..m.min(r - k) {
                    y = f(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = gcd(q, n);
                k += m;
            }
            r <<= 1;
        }
        if g == n {
            loop {
                ys = f(ys);
                g = gcd(x.abs_diff(ys), n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
        c += 1;
    }
}

fn factor_u64_into(n: u64, out: &mut BTreeMap<u64, u64>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        *out.entry(n).or_insert(0) += 1;
        return;
    }
    let d = brent_rho(n);
    factor_u64_into(d, out);
    factor_u64_into(n / d, out);
}

/// Prime factorization of a 64-bit integer `n ≥ 1`.
pub fn factor_u64(mut n: u64) -> BTreeMap<u64, u64> {
    assert!(n >= 1, "factor_u64 requires n >= 1");
    let mut out = BTreeMap::new();
    let mut p = 2u64;
    while p < TRIAL_LIMIT && p * p <= n {
        while n.is_multiple_of(p) {
            *out.entry(p).or_insert(0) += 1;
            n /= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    factor_u64_into(n, &mut out);
    out
}

/// Prime factorization of an arbitrary natural number, provided every prime
/// factor beyond the trial-division range leaves a cofactor that fits in 64
/// bits. Returns the unfactored cofactor otherwise.
pub fn factor_biguint(n: &BigUint) -> Result<BTreeMap<u64, u64>, BigUint> {
    assert!(!n.is_zero(), "factor_biguint requires n >= 1");
    if let Some(small) = n.to_u64() {
        return Ok(factor_u64(small));
    }
    let mut rest = n.clone();
    let mut out = BTreeMap::new();
    let mut p = 2u64;
    while p < TRIAL_LIMIT {
        let bp = BigUint::from(p);
        while (&rest % &bp).is_zero() {
            *out.entry(p).or_insert(0) += 1;
            rest /= &bp;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if rest.is_one() {
        return Ok(out);
    }
    match rest.to_u64() {
        Some(small) => {
            for (q, e) in factor_u64(small) {
                *out.entry(q).or_insert(0) += e;
            }
            Ok(out)
        }
        None => Err(rest),
    }
}

/// Exponent of `p` in `n` together with the cofactor. `n` must be nonzero.
pub fn strip_prime(n: &BigUint, p: u64) -> (u64, BigUint) {
    let bp = BigUint::from(p);
    let mut rest = n.clone();
    let mut e = 0;
    loop {
        let (q, r) = rest.div_rem(&bp);
        if !r.is_zero() {
            return (e, rest);
        }
        rest = q;
        e += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive_is_prime(n: u64) -> bool {
        n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
    }

    #[test]
    fn primality_matches_naive_below_ten_thousand() {
        for n in 0..10_000u64 {
            assert_eq!(is_prime(n), naive_is_prime(n), "n = {n}");
        }
    }

    #[test]
    fn large_primes_and_pseudoprimes() {
        assert!(is_prime(18_446_744_073_709_551_557)); // largest 64-bit prime
        assert!(!is_prime(3_215_031_751)); // strong pseudoprime to 2,3,5,7
        assert!(!is_prime(341_550_071_728_321));
    }

    #[test]
    fn factors_semiprime_of_large_primes() {
        let p = 4_294_967_291u64;
        let q = 4_294_967_279u64;
        let f = factor_u64(p * q);
        assert_eq!(f.into_iter().collect::<Vec<_>>(), vec![(q, 1), (p, 1)]);
    }

    #[test]
    fn factor_product_round_trip() {
        for n in 1..3000u64 {
            let back: u64 = factor_u64(n).iter().map(|(p, e)| p.pow(*e as u32)).product();
            assert_eq!(back, n);
        }
    }

    #[test]
    fn big_factorization() {
        let n = BigUint::from(2u8).pow(100) * BigUint::from(1_000_003u64);
        let f = factor_biguint(&n).unwrap();
        assert_eq!(f.get(&2), Some(&100));
        assert_eq!(f.get(&1_000_003), Some(&1));
        let hard = BigUint::from(18_446_744_073_709_551_557u64) * BigUint::from(18_446_744_073_709_551_557u64);
        assert!(factor_biguint(&hard).is_err());
    }
}
