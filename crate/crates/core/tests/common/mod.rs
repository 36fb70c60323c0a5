//! Independent models used as oracles. None of them calls the library's
//! group arithmetic; they only read generator indices off its words.

#![allow(dead_code)]

use gentorsion::{Element, Group, GroupSpec};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use proptest::prelude::*;

/// A word as `(generator index, exponent)` pairs.
pub type Letters = Vec<(usize, i64)>;

pub fn letters_of(group: &Group, x: &Element) -> Letters {
    group
        .to_word(x)
        .syllables()
        .iter()
        .map(|s| {
            let i = group
                .alphabet()
                .index_of(s.generator.as_str())
                .expect("generator of the group");
            (i, s.exponent.to_i64().expect("small exponent"))
        })
        .collect()
}

pub fn conjugate_letters(x: &Letters, g: &Letters) -> Letters {
    let mut out = x.clone();
    out.extend(g);
    out.extend(x.iter().rev().map(|&(i, e)| (i, -e)));
    out
}

pub fn witness_letters(group: &Group, base: &Element, conjugators: &[Element]) -> Letters {
    let g = letters_of(group, base);
    conjugators
        .iter()
        .flat_map(|x| conjugate_letters(&letters_of(group, x), &g))
        .collect()
}

/// Free product of cyclic groups: stack reduction merging equal adjacent
/// generators, exponents taken modulo the factor order (`0` for `Z`).
pub fn free_product_is_identity(orders: &[u64], letters: &Letters) -> bool {
    let mut stack: Vec<(usize, i64)> = Vec::new();
    for &(i, e) in letters {
        let reduce = |e: i64| {
            if orders[i] == 0 {
                e
            } else {
                e.rem_euclid(orders[i] as i64)
            }
        };
        let e = reduce(e);
        if e == 0 {
            continue;
        }
        match stack.last_mut() {
            Some((j, f)) if *j == i => {
                *f = reduce(*f + e);
                if *f == 0 {
                    stack.pop();
                }
            }
            _ => stack.push((i, e)),
        }
    }
    stack.is_empty()
}

/// Affine map `t ↦ s·t + c` with `s ∈ Q^×`, composed as functions.
#[derive(Clone, Debug, PartialEq)]
pub struct AffineMap {
    pub scale: BigRational,
    pub shift: BigRational,
}

impl AffineMap {
    pub fn identity() -> Self {
        AffineMap {
            scale: BigRational::one(),
            shift: BigRational::zero(),
        }
    }

    /// `self ∘ other`.
    pub fn then_apply(&self, other: &AffineMap) -> AffineMap {
        AffineMap {
            scale: &self.scale * &other.scale,
            shift: &self.scale * &other.shift + &self.shift,
        }
    }

    pub fn inverse(&self) -> AffineMap {
        let inv = self.scale.recip();
        AffineMap {
            shift: -(&inv * &self.shift),
            scale: inv,
        }
    }

    pub fn power(&self, e: i64) -> AffineMap {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        (0..e.abs()).fold(AffineMap::identity(), |acc, _| acc.then_apply(&base))
    }

    pub fn is_identity(&self) -> bool {
        self.scale.is_one() && self.shift.is_zero()
    }
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Generators as affine maps of `Q`:
/// * D∞ `[k, g]`: `k(t) = t + 1`, `g(t) = -t`;
/// * `BS(1, m)` `[g, k]`: `g(t) = m t`, `k(t) = t + 1`, faithful for
///   `|m| ≥ 2`;
/// * `Z_2 ∗ Z_2` `[s, t]`: `s(t) = -t`, `t(t) = 1 - t`.
pub fn affine_generators(spec: &GroupSpec) -> Option<Vec<AffineMap>> {
    let map = |scale: i64, shift: i64| AffineMap {
        scale: rat(scale),
        shift: rat(shift),
    };
    match spec {
        GroupSpec::InfiniteDihedral {} => Some(vec![map(1, 1), map(-1, 0)]),
        GroupSpec::BaumslagSolitar { m } if *m != 0 => Some(vec![map(*m, 0), map(1, 1)]),
        GroupSpec::FreeProductOfCyclics { orders, .. } if orders == &[2, 2] => {
            Some(vec![map(-1, 0), map(-1, 1)])
        }
        _ => None,
    }
}

pub fn affine_eval(gens: &[AffineMap], letters: &Letters) -> AffineMap {
    letters.iter().fold(AffineMap::identity(), |acc, &(i, e)| {
        acc.then_apply(&gens[i].power(e))
    })
}

/// `Z_2 ∗ Z_3 ≅ PSL(2, Z)` with `a = [[0,-1],[1,0]]` and
/// `b = [[0,-1],[1,1]]`; identity means `±I`.
pub fn psl2z_is_identity(letters: &Letters) -> bool {
    type M = [[i64; 2]; 2];
    let mul = |x: M, y: M| -> M {
        [
            [
                x[0][0] * y[0][0] + x[0][1] * y[1][0],
                x[0][0] * y[0][1] + x[0][1] * y[1][1],
            ],
            [
                x[1][0] * y[0][0] + x[1][1] * y[1][0],
                x[1][0] * y[0][1] + x[1][1] * y[1][1],
            ],
        ]
    };
    let a: M = [[0, -1], [1, 0]];
    let b: M = [[0, -1], [1, 1]];
    let mut acc: M = [[1, 0], [0, 1]];
    for &(i, e) in letters {
        let g = if i == 0 { a } else { b };
        // a⁻¹ = a³ and b⁻¹ = b⁵ up to sign, so positive powers suffice.
        let n = e.rem_euclid(if i == 0 { 4 } else { 6 });
        for _ in 0..n {
            acc = mul(acc, g);
        }
    }
    acc == [[1, 0], [0, 1]] || acc == [[-1, 0], [0, -1]]
}

/// Abelian groups: the exponent sum per generator modulo its order.
pub fn abelian_is_identity(orders: &[u64], letters: &Letters) -> bool {
    let mut sums = vec![0i64; orders.len()];
    for &(i, e) in letters {
        sums[i] += e;
    }
    sums.iter().zip(orders).all(|(&s, &n)| {
        if n == 0 {
            s == 0
        } else {
            s.rem_euclid(n as i64) == 0
        }
    })
}

/// Identity test from the oracle models, `None` if no model covers the group.
pub fn oracle_is_identity(group: &Group, letters: &Letters) -> Option<bool> {
    let spec = group.spec();
    if let Some(gens) = affine_generators(spec) {
        let acts_trivially = affine_eval(&gens, letters).is_identity();
        // For BS(1, ±1) the action forgets powers of g; its exponent sum
        // is the height, which must vanish as well.
        if let GroupSpec::BaumslagSolitar { .. } = spec {
            let height: i64 = letters.iter().filter(|l| l.0 == 0).map(|l| l.1).sum();
            return Some(acts_trivially && height == 0);
        }
        return Some(acts_trivially);
    }
    match spec {
        GroupSpec::FreeProductOfCyclics { orders, .. } => {
            Some(free_product_is_identity(orders, letters))
        }
        GroupSpec::Free { rank, .. } => Some(free_product_is_identity(&vec![0; *rank], letters)),
        GroupSpec::Cyclic { order, .. } => Some(abelian_is_identity(&[*order], letters)),
        GroupSpec::FgAbelian { rank, factors, .. } => {
            let mut orders = vec![0; *rank];
            orders.extend(factors);
            Some(abelian_is_identity(&orders, letters))
        }
        _ => None,
    }
}

/// Oracle verdict on the defining equation, split by factor for direct
/// products (whose generators are left ones then right ones).
pub fn oracle_verifies(group: &Group, base: &Element, conjugators: &[Element]) -> Option<bool> {
    if let (Some((l, r)), Element::Pair(bl, br)) = (group.components(), base) {
        let split = |side: usize| -> Vec<Element> {
            conjugators
                .iter()
                .map(|c| match c {
                    Element::Pair(a, b) => {
                        if side == 0 {
                            (**a).clone()
                        } else {
                            (**b).clone()
                        }
                    }
                    other => panic!("pair expected, got {other:?}"),
                })
                .collect()
        };
        let left = oracle_verifies(l, bl, &split(0))?;
        let right = oracle_verifies(r, br, &split(1))?;
        return Some(left && right);
    }
    oracle_is_identity(group, &witness_letters(group, base, conjugators))
}

/// Random element as a product of generator powers.
pub fn element_strategy(group: Group, max_len: usize) -> impl Strategy<Value = Element> {
    let n = group.alphabet().len();
    prop::collection::vec((0..n, -3i64..=3), 0..=max_len).prop_map(move |letters| {
        letters.iter().fold(group.identity(), |acc, &(i, e)| {
            group.mul(&acc, &group.pow(&group.generator(i), &BigInt::from(e)))
        })
    })
}

pub fn is_positive(x: &BigRational) -> bool {
    x.is_positive()
}

pub fn group(spec: GroupSpec) -> Group {
    Group::new(spec).expect("valid spec")
}
