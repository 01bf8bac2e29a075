//! Integer primality and factorization at desk scale.
//!
//! Primality is decided by trial division below 10^6 and by the
//! deterministic Miller-Rabin base set for 64-bit inputs; larger inputs use
//! the same test as a strong probable-prime check. Factorization is trial
//! division followed by Pollard rho (Brent variant) and is capped at 2^128.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

const TRIAL_LIMIT: u64 = 1000;
const FACTOR_CAP_BITS: u64 = 128;

fn small_primes() -> impl Iterator<Item = u64> {
    (2..TRIAL_LIMIT).filter(|&n| (2..).take_while(|d| d * d <= n).all(|d| n % d != 0))
}

fn mr_witness(n: &BigUint, a: &BigUint, d: &BigUint, s: u32) -> bool {
    let one = BigUint::one();
    let nm1 = n - &one;
    let mut x = a.modpow(d, n);
    if x == one || x == nm1 {
        return false;
    }
    for _ in 1..s {
        x = (&x * &x) % n;
        if x == nm1 {
            return false;
        }
    }
    true
}

/// Primality of `|n|`.
pub fn is_prime(n: &BigInt) -> bool {
    let n = n.magnitude();
    if n < &BigUint::from(2u32) {
        return false;
    }
    for p in small_primes() {
        let bp = BigUint::from(p);
        if n == &bp {
            return true;
        }
        if (n % &bp).is_zero() {
            return false;
        }
    }
    if n < &BigUint::from(TRIAL_LIMIT * TRIAL_LIMIT) {
        return true;
    }
    let one = BigUint::one();
    let nm1 = n - &one;
    let s = nm1.trailing_zeros().unwrap_or(0) as u32;
    let d = &nm1 >> s;
    // Deterministic for n < 3.3e24; strong probable prime beyond.
    const BASES: [u32; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];
    BASES
        .iter()
        .all(|&a| !mr_witness(n, &BigUint::from(a), &d, s))
}

fn pollard_brent(n: &BigUint, c: u64) -> Option<BigUint> {
    let one = BigUint::one();
    let cc = BigUint::from(c);
    let f = |x: &BigUint| (x * x + &cc) % n;
    let mut y = BigUint::from(2u32);
    let mut r: u64 = 1;
    let mut q = BigUint::one();
    let mut g = BigUint::one();
    let m = 64;
    let mut x = y.clone();
    let mut ys = y.clone();
    while g == one {
        x = y.clone();
        for _ in 0..r {
            y = f(&y);
        }
        let mut k = 0;
        while k < r && g == one {
            ys = y.clone();
            for _ in 0..m.min(r - k) {
                y = f(&y);
                let diff = if x > y { &x - &y } else { &y - &x };
                q = (q * diff) % n;
            }
            g = q.gcd(n);
            k += m;
        }
        r *= 2;
        if r > 1 << 26 {
            return None;
        }
    }
    if &g == n {
        loop {
            ys = f(&ys);
            let diff = if x > ys { &x - &ys } else { &ys - &x };
            g = diff.gcd(n);
            if g != one {
                break;
            }
        }
    }
    (&g != n).then_some(g)
}

fn split(n: BigUint, out: &mut Vec<BigUint>) {
    if n.is_one() {
        return;
    }
    if is_prime(&BigInt::from(n.clone())) {
        out.push(n);
        return;
    }
    for c in 1u64.. {
        if let Some(d) = pollard_brent(&n, c) {
            let other = &n / &d;
            split(d, out);
            split(other, out);
            return;
        }
        assert!(c < 64, "pollard rho failed to split a composite");
    }
}

/// Prime factorization of `|n|` as sorted `(prime, exponent)` pairs.
///
/// `n = 0` is rejected; `|n| = 1` yields the empty list.
pub fn factor_integer(n: &BigInt) -> Result<Vec<(BigInt, u32)>> {
    if n.is_zero() {
        return Err(Error::InvalidInput("cannot factor zero".into()));
    }
    let mut m = n.magnitude().clone();
    if m.bits() > FACTOR_CAP_BITS {
        return Err(Error::InvalidInput(format!(
            "integer exceeds the 2^{FACTOR_CAP_BITS} factorization cap"
        )));
    }
    let mut primes = Vec::new();
    for p in small_primes() {
        let bp = BigUint::from(p);
        while (&m % &bp).is_zero() {
            m /= &bp;
            primes.push(bp.clone());
        }
    }
    split(m, &mut primes);
    primes.sort();
    let mut out: Vec<(BigInt, u32)> = Vec::new();
    for p in primes {
        let p = BigInt::from_biguint(Sign::Plus, p);
        match out.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => out.push((p, 1)),
        }
    }
    Ok(out)
}

/// The distinct primes dividing `n`.
pub fn prime_support(n: &BigInt) -> Result<Vec<BigInt>> {
    Ok(factor_integer(n)?.into_iter().map(|(p, _)| p).collect())
}

/// `p`-adic valuation of a nonzero integer.
pub fn int_valuation(n: &BigInt, p: &BigInt) -> u32 {
    debug_assert!(!n.is_zero());
    let mut k = 0;
    let mut m = n.clone();
    loop {
        let (q, r) = m.div_rem(p);
        if !r.is_zero() {
            return k;
        }
        m = q;
        k += 1;
    }
}

pub fn to_u64(n: &BigInt) -> Option<u64> {
    n.to_u64()
}
