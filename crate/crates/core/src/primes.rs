//! Integer factorization helpers used for denominator prime supports.
//!
//! Trial division handles small factors; anything left over goes through
//! Miller-Rabin and Pollard's rho (Brent variant).

use std::collections::BTreeSet;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

const TRIAL_LIMIT: u32 = 10_000;

// First 20 primes. As Miller-Rabin bases these are deterministic far past
// 2^64 and give a negligible error bound beyond that.
const WITNESSES: [u32; 20] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71,
];

pub fn is_prime(n: &BigUint) -> bool {
    if n < &BigUint::from(2u32) {
        return false;
    }
    for &p in &WITNESSES {
        let p = BigUint::from(p);
        if n == &p {
            return true;
        }
        if (n % &p).is_zero() {
            return false;
        }
    }
    let one = BigUint::one();
    let n_minus_one = n - &one;
    let mut d = n_minus_one.clone();
    let mut s = 0u32;
    while d.is_even() {
        d >>= 1;
        s += 1;
    }
    'witness: for &a in &WITNESSES {
        let mut x = BigUint::from(a).modpow(&d, n);
        if x == one || x == n_minus_one {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_one {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pollard_brent(n: &BigUint, seed: u32) -> Option<BigUint> {
    let one = BigUint::one();
    let c = BigUint::from(seed);
    let f = |x: &BigUint| (x * x + &c) % n;
    let mut y = BigUint::from(2u32);
    let mut r: u64 = 1;
    let mut q = one.clone();
    let mut g = one.clone();
    let mut x = y.clone();
    let mut ys = y.clone();
    let batch = 64u64;
    while g == one {
        x = y.clone();
        for _ in 0..r {
            y = f(&y);
        }
        let mut k = 0;
        while k < r && g == one {
            ys = y.clone();
            for _ in 0..batch.min(r - k) {
                y = f(&y);
                let diff = if x > y { &x - &y } else { &y - &x };
                q = (q * diff) % n;
            }
            g = q.gcd(n);
            k += batch;
        }
        r *= 2;
        if r > 1 << 24 {
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
    if &g == n {
        None
    } else {
        Some(g)
    }
}

fn split_into(n: BigUint, out: &mut BTreeSet<BigUint>) {
    if n.is_one() {
        return;
    }
    if is_prime(&n) {
        out.insert(n);
        return;
    }
    for seed in 1u32.. {
        if let Some(d) = pollard_brent(&n, seed) {
            let other = &n / &d;
            split_into(d, out);
            split_into(other, out);
            return;
        }
    }
}

/// Distinct prime divisors of `n`. Returns the empty set for 0 and 1.
pub fn prime_factors(n: &BigUint) -> BTreeSet<BigUint> {
    let mut out = BTreeSet::new();
    if n.is_zero() {
        return out;
    }
    let mut rest = n.clone();
    if let Some(small) = rest.to_u64() {
        let mut m = small;
        let mut p = 2u64;
        while p * p <= m {
            if m % p == 0 {
                out.insert(BigUint::from(p));
                while m % p == 0 {
                    m /= p;
                }
            }
            p += if p == 2 { 1 } else { 2 };
            if p > u64::from(TRIAL_LIMIT) {
                break;
            }
        }
        rest = BigUint::from(m);
    } else {
        let mut p = 2u32;
        while p <= TRIAL_LIMIT {
            let bp = BigUint::from(p);
            if (&rest % &bp).is_zero() {
                out.insert(bp.clone());
                while (&rest % &bp).is_zero() {
                    rest /= &bp;
                }
            }
            p += if p == 2 { 1 } else { 2 };
        }
    }
    split_into(rest, &mut out);
    out
}

/// The square-free `s` with `n = s·k²`.
pub fn square_free_part(n: &BigUint) -> BigUint {
    let mut rest = n.clone();
    let mut out = BigUint::one();
    for p in prime_factors(n) {
        let mut odd = false;
        while (&rest % &p).is_zero() {
            rest /= &p;
            odd = !odd;
        }
        if odd {
            out *= &p;
        }
    }
    out
}
