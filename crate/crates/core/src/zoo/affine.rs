//! Exact arithmetic for `BS(1, m)` as affine pairs `(q, t)` over `Z[1/|m|]`.
//!
//! The pair `(q, t)` stands for `k^q g^t`; multiplication is
//! `(q1, t1)(q2, t2) = (q1 + m^t1 q2, t1 + t2)`. The rational `q` is stored
//! as `numerator / |m|^denominator_exp`, normalized so `|m|` does not divide
//! the numerator whenever the exponent is positive.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Affine {
    pub numerator: BigInt,
    pub denominator_exp: u64,
    pub height: BigInt,
}

impl Affine {
    pub fn identity() -> Self {
        Affine {
            numerator: BigInt::zero(),
            denominator_exp: 0,
            height: BigInt::zero(),
        }
    }

    /// `k^e`.
    pub fn translation(e: BigInt) -> Self {
        Affine {
            numerator: e,
            denominator_exp: 0,
            height: BigInt::zero(),
        }
    }

    /// `g^e`.
    pub fn lift(e: BigInt) -> Self {
        Affine {
            numerator: BigInt::zero(),
            denominator_exp: 0,
            height: e,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct BsParams {
    pub m: BigInt,
    modulus: BigInt,
    negative: bool,
}

fn small_exponent(e: &BigInt) -> u32 {
    u32::try_from(e).expect("Baumslag-Solitar exponent exceeds supported range")
}

impl BsParams {
    pub fn new(m: i64) -> Self {
        let m = BigInt::from(m);
        BsParams {
            modulus: m.abs(),
            negative: m.is_negative(),
            m,
        }
    }

    fn trivial_modulus(&self) -> bool {
        self.modulus.is_one()
    }

    fn normalize(&self, mut num: BigInt, mut j: u64) -> (BigInt, u64) {
        if num.is_zero() || self.trivial_modulus() {
            return (num, 0);
        }
        while j > 0 && num.is_multiple_of(&self.modulus) {
            num /= &self.modulus;
            j -= 1;
        }
        (num, j)
    }

    /// `m^s · num / |m|^j`, normalized.
    fn scale(&self, num: &BigInt, j: u64, s: &BigInt) -> (BigInt, u64) {
        let mut num = num.clone();
        if self.negative && s.is_odd() {
            num = -num;
        }
        if self.trivial_modulus() {
            return (num, 0);
        }
        let e = s - BigInt::from(j);
        if e.is_negative() {
            let j = u64::try_from(-e).expect("denominator exponent exceeds u64");
            self.normalize(num, j)
        } else {
            (num * self.modulus.pow(small_exponent(&e)), 0)
        }
    }

    fn add(&self, (n1, j1): (BigInt, u64), (n2, j2): (BigInt, u64)) -> (BigInt, u64) {
        if self.trivial_modulus() {
            return (n1 + n2, 0);
        }
        let j = j1.max(j2);
        let lift = |n: BigInt, from: u64| {
            let gap = u32::try_from(j - from).expect("denominator exponent exceeds u32");
            n * self.modulus.pow(gap)
        };
        self.normalize(lift(n1, j1) + lift(n2, j2), j)
    }

    pub fn mul(&self, x: &Affine, y: &Affine) -> Affine {
        let moved = self.scale(&y.numerator, y.denominator_exp, &x.height);
        let (numerator, denominator_exp) =
            self.add((x.numerator.clone(), x.denominator_exp), moved);
        Affine {
            numerator,
            denominator_exp,
            height: &x.height + &y.height,
        }
    }

    pub fn inv(&self, x: &Affine) -> Affine {
        let (n, j) = self.scale(&x.numerator, x.denominator_exp, &-&x.height);
        Affine {
            numerator: -n,
            denominator_exp: j,
            height: -&x.height,
        }
    }

    pub fn is_canonical(&self, x: &Affine) -> bool {
        if x.denominator_exp == 0 {
            return true;
        }
        !x.numerator.is_zero()
            && !self.trivial_modulus()
            && !x.numerator.is_multiple_of(&self.modulus)
    }

    /// Syllables `(is_g, exponent)` of a word `g^-j k^(num·sign^j) g^(j+t)`
    /// representing `x`.
    pub fn word_parts(&self, x: &Affine) -> [(bool, BigInt); 3] {
        let j = BigInt::from(x.denominator_exp);
        let mut k_exp = x.numerator.clone();
        if self.negative && j.is_odd() {
            k_exp = -k_exp;
        }
        [(true, -j.clone()), (false, k_exp), (true, j + &x.height)]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(n: i64, j: u64, t: i64) -> Affine {
        Affine {
            numerator: n.into(),
            denominator_exp: j,
            height: t.into(),
        }
    }

    #[test]
    fn conjugating_k_by_g_gives_k_to_the_m() {
        for m in [-3i64, -2, -1, 1, 2, 5] {
            let bs = BsParams::new(m);
            let g = Affine::lift(1.into());
            let k = Affine::translation(1.into());
            let c = bs.mul(&bs.mul(&g, &k), &bs.inv(&g));
            assert_eq!(c, Affine::translation(m.into()), "m = {m}");
        }
    }

    #[test]
    fn inverse_conjugation_yields_fractions() {
        let bs = BsParams::new(-2);
        let g = Affine::lift(1.into());
        let k = Affine::translation(1.into());
        // g^-1 k g = k^(1/m) = k^(-1/2)
        let c = bs.mul(&bs.mul(&bs.inv(&g), &k), &g);
        assert_eq!(c, a(-1, 1, 0));
        // squaring (k^(-1/2))^2 = k^-1
        assert_eq!(bs.mul(&c, &c), a(-1, 0, 0));
    }

    #[test]
    fn normalization_strips_common_powers() {
        let bs = BsParams::new(2);
        let half = a(1, 1, 0);
        assert_eq!(bs.mul(&half, &half), a(1, 0, 0));
        assert!(bs.is_canonical(&half));
        assert!(!bs.is_canonical(&a(2, 1, 0)));
        assert!(!bs.is_canonical(&a(0, 1, 0)));
    }

    #[test]
    fn inverse_round_trips() {
        let bs = BsParams::new(-3);
        for x in [a(5, 2, 3), a(-7, 0, -4), a(1, 1, 0), a(0, 0, 7)] {
            assert_eq!(bs.mul(&x, &bs.inv(&x)), Affine::identity());
            assert_eq!(bs.mul(&bs.inv(&x), &x), Affine::identity());
        }
    }
}
