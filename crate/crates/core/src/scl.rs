//! Exact bounds on stable commutator length.
//!
//! A generalized torsion element always has `scl < 1/2`, so any lower bound
//! reaching `1/2` refutes it. Values are never computed, only bounded.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::search::abelianization_obstruction;
use crate::witness::Witness;
use crate::word::{Syllable, Word};
use crate::zoo::{Element, Group, Side};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SclError {
    #[error("witness does not verify")]
    Unverified,
    #[error("the constant must be positive, got {0}")]
    NonPositive(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BoundValue {
    Finite(BigRational),
    Infinite,
}

impl BoundValue {
    pub fn at_least_half(&self) -> bool {
        match self {
            BoundValue::Finite(q) => q >= &half(),
            BoundValue::Infinite => true,
        }
    }
}

impl PartialOrd for BoundValue {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        use std::cmp::Ordering::*;
        Some(match (self, other) {
            (BoundValue::Finite(a), BoundValue::Finite(b)) => a.cmp(b),
            (BoundValue::Finite(_), BoundValue::Infinite) => Less,
            (BoundValue::Infinite, BoundValue::Finite(_)) => Greater,
            (BoundValue::Infinite, BoundValue::Infinite) => Equal,
        })
    }
}

impl fmt::Display for BoundValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundValue::Finite(q) => write!(f, "{}/{}", q.numer(), q.denom()),
            BoundValue::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for BoundValue {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundKind {
    Lower,
    Upper,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    /// `1/2 − 1/N` for alternating words in a free product of two cyclics.
    Chen,
    /// `1/2 − 1/n` from an `n`-conjugate witness.
    WitnessLength,
    /// Infinite-order abelianization image: no power is a product of
    /// commutators.
    Abelianization,
    /// Nontrivial elements of free groups have `scl ≥ 1/2`.
    FreeGroup,
    /// Derived from a caller-supplied constant.
    Parametric,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RationalBound {
    pub value: BoundValue,
    pub kind: BoundKind,
    pub provenance: Provenance,
    /// Product of the `|m|` factors applied by [`power_bound`].
    #[serde(serialize_with = "serialize_display")]
    pub scaled_by: BigUint,
}

fn serialize_display<T: fmt::Display, S: Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

impl RationalBound {
    fn new(value: BoundValue, kind: BoundKind, provenance: Provenance) -> Self {
        RationalBound {
            value,
            kind,
            provenance,
            scaled_by: BigUint::one(),
        }
    }

    pub fn finite(&self) -> Option<&BigRational> {
        match &self.value {
            BoundValue::Finite(q) => Some(q),
            BoundValue::Infinite => None,
        }
    }
}

pub fn half() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(2))
}

/// `1/2 − 1/n`, with `n = None` meaning `n = ∞`.
fn half_minus_reciprocal(n: Option<u64>) -> BigRational {
    match n {
        Some(n) => half() - BigRational::new(BigInt::one(), BigInt::from(n)),
        None => half(),
    }
}

/// Order of `a^e` in `Z_p`; `None` is infinite.
fn letter_order(p: u64, e: &BigInt) -> Option<u64> {
    if p == 0 {
        return None;
    }
    let g = e.gcd(&BigInt::from(p));
    Some(p / u64::try_from(g).expect("gcd divides a u64"))
}

/// Syllables of the cyclic reduction of `x`, when `group` is a free product
/// of exactly two cyclic groups.
fn two_factor_syllables(group: &Group, x: &Element) -> Option<Vec<Syllable>> {
    let orders = group.free_product_orders()?;
    if orders.len() != 2 {
        return None;
    }
    let reduced = group.cyclically_reduce(x)?;
    Some(group.to_word(&reduced).into_syllables())
}

fn alternating(group: &Group, syllables: &[Syllable]) -> bool {
    let n = syllables.len();
    n >= 2
        && n.is_multiple_of(2)
        && (0..n).all(|i| {
            let here = group.alphabet().index_of(syllables[i].generator.as_str());
            let next = group
                .alphabet()
                .index_of(syllables[(i + 1) % n].generator.as_str());
            here != next
        })
}

/// Lower bound `1/2 − 1/N` for a cyclically reduced word `a_1 b_1 ⋯ a_L b_L`
/// in `Z_p ∗ Z_q`, where `N` is the least order among its letters. `None`
/// when the element is not in that form after cyclic reduction.
pub fn chen_lower_bound(group: &Group, x: &Element) -> Option<RationalBound> {
    let syllables = two_factor_syllables(group, x)?;
    if !alternating(group, &syllables) {
        return None;
    }
    let orders = group.free_product_orders()?;
    let n = syllables
        .iter()
        .map(|s| {
            let i = group
                .alphabet()
                .index_of(s.generator.as_str())
                .expect("own generator");
            letter_order(orders[i], &s.exponent)
        })
        .min_by(|a, b| match (a, b) {
            (Some(a), Some(b)) => a.cmp(b),
            (Some(_), None) => std::cmp::Ordering::Less,
            (None, Some(_)) => std::cmp::Ordering::Greater,
            (None, None) => std::cmp::Ordering::Equal,
        })
        .expect("at least two syllables");
    Some(RationalBound::new(
        BoundValue::Finite(half_minus_reciprocal(n)),
        BoundKind::Lower,
        Provenance::Chen,
    ))
}

/// Writes the cyclic reduction of `x` as `u^k` with `k` maximal.
pub fn primitive_root(group: &Group, x: &Element) -> Option<(Element, u64)> {
    let reduced = group.cyclically_reduce(x)?;
    let syllables = group.to_word(&reduced).into_syllables();
    let n = syllables.len();
    if n == 0 {
        return None;
    }
    let period = (1..=n)
        .find(|&p| n.is_multiple_of(p) && (p..n).all(|i| syllables[i] == syllables[i - p]))
        .expect("n is always a period");
    let root = Word::reduce(
        syllables[..period]
            .iter()
            .map(|s| (s.generator.clone(), s.exponent.clone())),
    );
    let root = group
        .from_word(&root)
        .expect("syllables come from the group");
    Some((root, (n / period) as u64))
}

pub fn witness_upper_bound(w: &Witness) -> Result<RationalBound, SclError> {
    if !w.verify() {
        return Err(SclError::Unverified);
    }
    Ok(RationalBound::new(
        BoundValue::Finite(half_minus_reciprocal(Some(w.len() as u64))),
        BoundKind::Upper,
        Provenance::WitnessLength,
    ))
}

/// Homogeneity: a bound for `g` becomes a bound for `g^m` scaled by `|m|`.
pub fn power_bound(b: &RationalBound, m: &BigInt) -> RationalBound {
    let factor = m.abs();
    let value = match &b.value {
        BoundValue::Finite(q) => BoundValue::Finite(q * BigRational::from_integer(factor.clone())),
        BoundValue::Infinite if factor.is_zero() => BoundValue::Finite(BigRational::zero()),
        BoundValue::Infinite => BoundValue::Infinite,
    };
    RationalBound {
        value,
        kind: b.kind,
        provenance: b.provenance,
        scaled_by: &b.scaled_by * factor.magnitude(),
    }
}

/// Smallest integer `m` with `m > 1/(2C)`: beyond it no power `g^m` of an
/// element with `scl(g) ≥ C` is generalized torsion.
pub fn hyperbolic_power_threshold(c: &BigRational) -> Result<BigInt, SclError> {
    if !c.is_positive() {
        return Err(SclError::NonPositive(format!(
            "{}/{}",
            c.numer(),
            c.denom()
        )));
    }
    let ratio = (c * BigRational::from_integer(BigInt::from(2))).recip();
    Ok(ratio.floor().to_integer() + 1)
}

/// Why an element is not generalized torsion.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "rule", rename_all = "snake_case")]
pub enum Certificate {
    /// The identity is excluded by definition.
    TrivialElement,
    Abelianization {
        image: Vec<String>,
        abelianization: String,
    },
    FreeGroup {
        bound: RationalBound,
    },
    ChenPower {
        root: String,
        power: u64,
        root_bound: RationalBound,
        bound: RationalBound,
    },
    /// The image under a projection is nontrivial and refuted; a witness
    /// would push forward to one for the image.
    Projection {
        side: Side,
        image: String,
        inner: Box<Certificate>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[allow(clippy::large_enum_variant)]
pub enum Refutation {
    Refuted(Certificate),
    Inconclusive,
}

impl Refutation {
    pub fn is_refuted(&self) -> bool {
        matches!(self, Refutation::Refuted(_))
    }
}

pub fn refute_generalized_torsion(group: &Group, x: &Element) -> Refutation {
    if group.is_identity(x) {
        return Refutation::Refuted(Certificate::TrivialElement);
    }
    if abelianization_obstruction(group, x).blocked {
        return Refutation::Refuted(Certificate::Abelianization {
            image: group
                .abelianization_image(x)
                .iter()
                .map(|c| c.to_string())
                .collect(),
            abelianization: group.abelianization().to_string(),
        });
    }
    if group.is_free() {
        return Refutation::Refuted(Certificate::FreeGroup {
            bound: RationalBound::new(
                BoundValue::Finite(half()),
                BoundKind::Lower,
                Provenance::FreeGroup,
            ),
        });
    }
    if let Some(cert) = chen_power_certificate(group, x) {
        return Refutation::Refuted(cert);
    }
    if let Some((left, right)) = group.components() {
        let (l, r) = project(x);
        for (side, factor, image) in [(Side::Left, left, l), (Side::Right, right, r)] {
            if factor.is_identity(image) {
                continue;
            }
            if let Refutation::Refuted(inner) = refute_generalized_torsion(factor, image) {
                return Refutation::Refuted(Certificate::Projection {
                    side,
                    image: factor.render(image),
                    inner: Box::new(inner),
                });
            }
        }
    }
    Refutation::Inconclusive
}

fn project(x: &Element) -> (&Element, &Element) {
    match x {
        Element::Pair(l, r) => (l, r),
        other => panic!("product element expected, got {other:?}"),
    }
}

fn chen_power_certificate(group: &Group, x: &Element) -> Option<Certificate> {
    let (root, power) = primitive_root(group, x)?;
    let root_bound = chen_lower_bound(group, &root)?;
    let bound = power_bound(&root_bound, &BigInt::from(power));
    bound.value.at_least_half().then(|| Certificate::ChenPower {
        root: group.render(&root),
        power,
        root_bound,
        bound,
    })
}

/// All bounds available for an element, optionally including a witness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundsReport {
    pub element: String,
    pub lower: Vec<RationalBound>,
    pub upper: Vec<RationalBound>,
    pub verdict: BoundsVerdict,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundsVerdict {
    /// Some lower bound reaches `1/2`.
    Refuted,
    /// A verified witness bounds scl strictly below `1/2`.
    WitnessAttested,
    Inconclusive,
}

pub fn bounds_report(
    group: &Group,
    x: &Element,
    witness: Option<&Witness>,
) -> Result<BoundsReport, SclError> {
    let mut lower = Vec::new();
    if abelianization_obstruction(group, x).blocked {
        lower.push(RationalBound::new(
            BoundValue::Infinite,
            BoundKind::Lower,
            Provenance::Abelianization,
        ));
    }
    if group.is_free() && !group.is_identity(x) {
        lower.push(RationalBound::new(
            BoundValue::Finite(half()),
            BoundKind::Lower,
            Provenance::FreeGroup,
        ));
    }
    if let Some(b) = chen_lower_bound(group, x) {
        lower.push(b);
    }
    if let Some((root, power)) = primitive_root(group, x) {
        if power > 1 {
            if let Some(b) = chen_lower_bound(group, &root) {
                lower.push(power_bound(&b, &BigInt::from(power)));
            }
        }
    }
    let upper = match witness {
        Some(w) => vec![witness_upper_bound(w)?],
        None => Vec::new(),
    };
    let verdict = if lower.iter().any(|b| b.value.at_least_half()) {
        BoundsVerdict::Refuted
    } else if !upper.is_empty() {
        BoundsVerdict::WitnessAttested
    } else {
        BoundsVerdict::Inconclusive
    };
    Ok(BoundsReport {
        element: group.render(x),
        lower,
        upper,
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::witness::{construct_prod_torsion_witness, dinf_witness, torsion_witness};
    use crate::zoo::GroupSpec;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn fp(orders: &[u64]) -> Group {
        Group::new(GroupSpec::free_product(orders)).unwrap()
    }

    #[test]
    fn chen_examples() {
        let g33 = fp(&[3, 3]);
        let b = chen_lower_bound(&g33, &g33.parse("a b").unwrap()).unwrap();
        assert_eq!(b.finite(), Some(&q(1, 6)));
        assert_eq!(b.kind, BoundKind::Lower);
        let g22 = fp(&[2, 2]);
        let b = chen_lower_bound(&g22, &g22.parse("a b").unwrap()).unwrap();
        assert_eq!(b.finite(), Some(&q(0, 1)));
        let g23 = fp(&[2, 3]);
        assert_eq!(chen_lower_bound(&g23, &g23.parse("a").unwrap()), None);
    }

    #[test]
    fn chen_uses_cyclic_reduction_and_letter_orders() {
        let g = fp(&[4, 6]);
        // conjugate of a^2 b^3 a b: letters of orders 2, 2, 4, 6
        let x = g.parse("b a^2 b^3 a b b^-1").unwrap();
        assert_eq!(chen_lower_bound(&g, &x).unwrap().finite(), Some(&q(0, 1)));
        let x = g.parse("a b").unwrap();
        assert_eq!(chen_lower_bound(&g, &x).unwrap().finite(), Some(&q(1, 4)));
        // infinite letters contribute 1/infinity = 0
        let g = fp(&[0, 0]);
        let x = g.parse("a b").unwrap();
        assert_eq!(chen_lower_bound(&g, &x).unwrap().finite(), Some(&half()));
        let three = fp(&[3, 3, 3]);
        assert_eq!(chen_lower_bound(&three, &three.parse("a b").unwrap()), None);
    }

    #[test]
    fn witness_upper_examples() {
        let d = Group::new(GroupSpec::dihedral()).unwrap();
        let w = dinf_witness(&d, &d.generator(0)).unwrap();
        assert_eq!(witness_upper_bound(&w).unwrap().finite(), Some(&q(0, 1)));

        let g23 = fp(&[2, 3]);
        let w = construct_prod_torsion_witness(&g23, &g23.generator(0), &g23.generator(1)).unwrap();
        assert_eq!(witness_upper_bound(&w).unwrap().finite(), Some(&q(1, 3)));

        let z5 = Group::new(GroupSpec::cyclic(5)).unwrap();
        let w = torsion_witness(&z5, &Element::integer(2)).unwrap();
        assert_eq!(witness_upper_bound(&w).unwrap().finite(), Some(&q(3, 10)));

        let bad = Witness::new(d.clone(), d.generator(0), vec![d.identity()]).unwrap();
        assert_eq!(witness_upper_bound(&bad), Err(SclError::Unverified));
    }

    #[test]
    fn power_examples() {
        let sixth = RationalBound::new(
            BoundValue::Finite(q(1, 6)),
            BoundKind::Lower,
            Provenance::Chen,
        );
        let cubed = power_bound(&sixth, &BigInt::from(3));
        assert_eq!(cubed.finite(), Some(&half()));
        assert_eq!(cubed.kind, BoundKind::Lower);
        assert_eq!(cubed.provenance, Provenance::Chen);
        assert_eq!(power_bound(&sixth, &BigInt::from(-3)), cubed);
        let zero = RationalBound::new(
            BoundValue::Finite(q(0, 1)),
            BoundKind::Upper,
            Provenance::WitnessLength,
        );
        assert_eq!(
            power_bound(&zero, &BigInt::from(17)).finite(),
            Some(&q(0, 1))
        );
    }

    #[test]
    fn threshold_examples() {
        assert_eq!(hyperbolic_power_threshold(&q(1, 10)), Ok(BigInt::from(6)));
        assert_eq!(hyperbolic_power_threshold(&q(1, 1)), Ok(BigInt::from(1)));
        assert_eq!(hyperbolic_power_threshold(&q(1, 2)), Ok(BigInt::from(2)));
        assert_eq!(hyperbolic_power_threshold(&q(1, 3)), Ok(BigInt::from(2)));
        assert!(hyperbolic_power_threshold(&q(0, 1)).is_err());
        assert!(hyperbolic_power_threshold(&q(-1, 2)).is_err());
    }

    #[test]
    fn refutation_examples() {
        let g33 = fp(&[3, 3]);
        let x = g33.parse("a b a b a b").unwrap();
        match refute_generalized_torsion(&g33, &x) {
            Refutation::Refuted(Certificate::ChenPower {
                root, power, bound, ..
            }) => {
                assert_eq!(root, "a b");
                assert_eq!(power, 3);
                assert_eq!(bound.finite(), Some(&half()));
            }
            other => panic!("unexpected {other:?}"),
        }
        // a single copy only reaches 1/6
        assert_eq!(
            refute_generalized_torsion(&g33, &g33.parse("a b").unwrap()),
            Refutation::Inconclusive
        );

        let f2 = Group::new(GroupSpec::free(2)).unwrap();
        let c = f2.parse("a b a^-1 b^-1").unwrap();
        assert!(matches!(
            refute_generalized_torsion(&f2, &c),
            Refutation::Refuted(Certificate::FreeGroup { .. })
        ));
        assert!(matches!(
            refute_generalized_torsion(&f2, &f2.generator(0)),
            Refutation::Refuted(Certificate::Abelianization { .. })
        ));

        let d = Group::new(GroupSpec::dihedral()).unwrap();
        assert_eq!(
            refute_generalized_torsion(&d, &d.generator(0)),
            Refutation::Inconclusive
        );
    }

    #[test]
    fn refutation_through_projection() {
        let g = Group::new(GroupSpec::product(
            GroupSpec::dihedral(),
            GroupSpec::free(2),
        ))
        .unwrap();
        let x = g.parse("k_1 a_2 b_2 a_2^-1 b_2^-1").unwrap();
        match refute_generalized_torsion(&g, &x) {
            Refutation::Refuted(Certificate::Projection { side, inner, .. }) => {
                assert_eq!(side, Side::Right);
                assert!(matches!(*inner, Certificate::FreeGroup { .. }));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn primitive_roots() {
        let g = fp(&[3, 3]);
        let x = g.conjugate(&g.parse("b^-1").unwrap(), &g.parse("a b a b a b").unwrap());
        assert_eq!(g.render(&x), "b^2 a b a b a b^2");
        let (root, k) = primitive_root(&g, &x).unwrap();
        assert_eq!(k, 3);
        assert_eq!(g.render(&root).split(' ').count(), 2);
        let f = Group::new(GroupSpec::free(2)).unwrap();
        let (root, k) = primitive_root(&f, &f.parse("a^4").unwrap()).unwrap();
        assert_eq!((f.render(&root).as_str(), k), ("a^4", 1));
    }

    #[test]
    fn bounds_report_examples() {
        let d = Group::new(GroupSpec::dihedral()).unwrap();
        let w = dinf_witness(&d, &d.generator(0)).unwrap();
        let r = bounds_report(&d, &d.generator(0), Some(&w)).unwrap();
        assert_eq!(r.verdict, BoundsVerdict::WitnessAttested);
        assert!(r.lower.is_empty());
        let z = Group::new(GroupSpec::cyclic(0)).unwrap();
        let r = bounds_report(&z, &Element::integer(3), None).unwrap();
        assert_eq!(r.verdict, BoundsVerdict::Refuted);
        assert_eq!(r.lower[0].value, BoundValue::Infinite);
        let json = serde_json::to_value(&r).unwrap();
        assert_eq!(json["lower"][0]["value"], "inf");
    }
}
