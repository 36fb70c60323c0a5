use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// Square-and-multiply for a non-negative exponent in any monoid.
pub(crate) fn power<T: Clone>(identity: T, base: T, n: &BigInt, mul: impl Fn(&T, &T) -> T) -> T {
    assert!(!n.is_negative(), "power expects a non-negative exponent");
    let mut result = identity;
    let mut square = base;
    let mut e = n.clone();
    while !e.is_zero() {
        if e.is_odd() {
            result = mul(&result, &square);
        }
        e >>= 1;
        if !e.is_zero() {
            square = mul(&square, &square);
        }
    }
    result
}

pub(crate) fn lcm_u64(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        return 0;
    }
    (a / a.gcd(&b))
        .checked_mul(b)
        .expect("element order exceeds u64")
}

/// Order of `x` in `Z/n` (n > 0).
pub(crate) fn residue_order(x: &BigInt, n: u64) -> u64 {
    let g = x.gcd(&BigInt::from(n));
    if g.is_zero() {
        return 1;
    }
    let g = u64::try_from(g).expect("gcd bounded by modulus");
    n / g
}

/// Non-negative residue of `x` mod `n` (n > 0).
pub(crate) fn residue(x: &BigInt, n: u64) -> BigInt {
    x.mod_floor(&BigInt::from(n))
}
