//! Modular fingerprints: rational functions evaluated at a fixed pseudo-random
//! point modulo the Mersenne prime 2^61 - 1. Equal functions share a
//! fingerprint, so it serves as a hash; equality itself is always confirmed by
//! exact cross-multiplication.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};

use super::rational::Rational;

pub const P: u64 = (1u64 << 61) - 1;

/// Reserved fingerprint of the point at infinity (outside `0..P`).
pub const INFINITY: u64 = u64::MAX;
/// Reserved fingerprint of a function whose denominator vanishes mod P.
pub const POLE: u64 = u64::MAX - 1;

pub fn mul_mod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % P as u128) as u64
}

pub fn pow_mod(mut base: u64, mut e: u64) -> u64 {
    let mut acc = 1u64;
    base %= P;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base);
        }
        base = mul_mod(base, base);
        e >>= 1;
    }
    acc
}

pub fn inv_mod(a: u64) -> Option<u64> {
    (a % P != 0).then(|| pow_mod(a, P - 2))
}

fn bigint_mod(n: &BigInt) -> u64 {
    let m = BigInt::from(P);
    let r = n.mod_floor(&m);
    r.to_u64().expect("reduced residue fits in u64")
}

pub fn rational_mod(q: &Rational) -> Option<u64> {
    let n = bigint_mod(q.numer());
    let d = inv_mod(bigint_mod(q.denom()))?;
    let v = mul_mod(n, d);
    debug_assert!(!q.numer().is_negative() || v < P);
    Some(v)
}

/// Evaluation point assigned to a variable name (FNV-1a, reduced mod P).
pub fn variable_point(name: &str) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in name.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    // one extra avalanche round so that short names spread out
    h ^= h >> 33;
    h = h.wrapping_mul(0xff51_afd7_ed55_8ccd);
    h ^= h >> 33;
    h % P
}
