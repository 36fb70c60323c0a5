//! Concrete group families with canonical forms.
//!
//! Every family has a decidable word problem: elements are stored in a
//! canonical form so equality of group elements is structural equality of
//! [`Element`] values.
//!
//! Declared generators per family (these fix word length and ball contents):
//!
//! | family | generators |
//! |---|---|
//! | free | `rank` names, default `a, b, ...` |
//! | cyclic | one name, default `a` |
//! | free product of cyclics | one name per factor, default `a, b, ...` |
//! | infinite dihedral | `k` (translation), `g` (reflection) |
//! | Baumslag-Solitar | `g`, `k` |
//! | direct product | left names suffixed `_1`, right names suffixed `_2` |
//! | f.g. abelian | one name per direct factor, free factors first |

mod abelian;
mod affine;
mod ball;
mod spec;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::Serialize;
use thiserror::Error;

pub use abelian::AbelianGroup;
pub use affine::Affine;
pub use spec::GroupSpec;

use crate::util::{lcm_u64, power, residue, residue_order};
use crate::word::{parse_word, render_word, Alphabet, Generator, Word, WordError};
use affine::BsParams;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("invalid group description: {0}")]
    InvalidSpec(String),
    #[error(transparent)]
    Word(#[from] WordError),
    #[error("element does not belong to {family} group: {detail}")]
    FamilyMismatch {
        family: &'static str,
        detail: String,
    },
}

/// An element in canonical form for its family.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Element {
    /// Free groups and free products of cyclics.
    Word(Word),
    /// Cyclic groups; reduced into `0..n` for finite order `n`.
    Integer(BigInt),
    /// `k^shift g^flip` in the infinite dihedral group.
    Dihedral {
        shift: BigInt,
        flip: bool,
    },
    /// Baumslag-Solitar groups.
    Affine(Affine),
    Pair(Box<Element>, Box<Element>),
    /// F.g. abelian groups; torsion coordinates reduced.
    Vector(Vec<BigInt>),
}

impl Element {
    pub fn pair(left: Element, right: Element) -> Self {
        Element::Pair(Box::new(left), Box::new(right))
    }

    pub fn dihedral(shift: i64, flip: bool) -> Self {
        Element::Dihedral {
            shift: shift.into(),
            flip,
        }
    }

    pub fn integer(n: i64) -> Self {
        Element::Integer(n.into())
    }
}

/// Exact element order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Order {
    Finite(u64),
    Infinite,
}

impl Order {
    pub fn is_finite(self) -> bool {
        matches!(self, Order::Finite(_))
    }
}

/// Result of a bounded order search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundedOrder {
    Finite(u64),
    Infinite,
    NotFoundWithin(u64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Left,
    Right,
}

#[derive(Debug, Clone)]
enum Family {
    Free,
    Cyclic(u64),
    FreeProduct(Vec<u64>),
    Dihedral,
    BaumslagSolitar(BsParams),
    Product {
        left: Box<Group>,
        right: Box<Group>,
        /// Alphabet index -> (component, component generator index).
        origin: Vec<(Side, usize)>,
    },
    Abelian(AbelianGroup),
}

/// A validated group instance: normalized spec, alphabet and family data.
#[derive(Debug, Clone)]
pub struct Group {
    spec: GroupSpec,
    alphabet: Alphabet,
    family: Family,
}

impl PartialEq for Group {
    fn eq(&self, other: &Self) -> bool {
        self.spec == other.spec
    }
}

impl Eq for Group {}

fn names_or_default(
    names: &Option<Vec<String>>,
    n: usize,
    what: &str,
) -> Result<Vec<String>, GroupError> {
    match names {
        Some(v) if v.len() != n => Err(GroupError::InvalidSpec(format!(
            "{what}: expected {n} generator names, got {}",
            v.len()
        ))),
        Some(v) => Ok(v.clone()),
        None => Ok(spec::default_names(n)),
    }
}

impl Group {
    pub fn new(spec: GroupSpec) -> Result<Self, GroupError> {
        let invalid = |msg: String| Err(GroupError::InvalidSpec(msg));
        match spec {
            GroupSpec::Free { rank, generators } => {
                if rank == 0 {
                    return invalid("free: rank must be at least 1".into());
                }
                let names = names_or_default(&generators, rank, "free")?;
                let alphabet = Alphabet::from_names(&names)?;
                Ok(Group {
                    spec: GroupSpec::Free {
                        rank,
                        generators: Some(names),
                    },
                    alphabet,
                    family: Family::Free,
                })
            }
            GroupSpec::Cyclic { order, generator } => {
                let name = generator.unwrap_or_else(|| "a".to_string());
                let alphabet = Alphabet::from_names(&[&name])?;
                Ok(Group {
                    spec: GroupSpec::Cyclic {
                        order,
                        generator: Some(name),
                    },
                    alphabet,
                    family: Family::Cyclic(order),
                })
            }
            GroupSpec::FreeProductOfCyclics { orders, generators } => {
                if orders.is_empty() {
                    return invalid("free_product_of_cyclics: orders must be nonempty".into());
                }
                let names = names_or_default(&generators, orders.len(), "free_product_of_cyclics")?;
                let alphabet = Alphabet::from_names(&names)?;
                Ok(Group {
                    spec: GroupSpec::FreeProductOfCyclics {
                        orders: orders.clone(),
                        generators: Some(names),
                    },
                    alphabet,
                    family: Family::FreeProduct(orders),
                })
            }
            GroupSpec::InfiniteDihedral {} => Ok(Group {
                spec: GroupSpec::InfiniteDihedral {},
                alphabet: Alphabet::from_names(&["k", "g"])?,
                family: Family::Dihedral,
            }),
            GroupSpec::BaumslagSolitar { m } => {
                if m == 0 {
                    return invalid("baumslag_solitar: m must be nonzero".into());
                }
                Ok(Group {
                    spec: GroupSpec::BaumslagSolitar { m },
                    alphabet: Alphabet::from_names(&["g", "k"])?,
                    family: Family::BaumslagSolitar(BsParams::new(m)),
                })
            }
            GroupSpec::DirectProduct { left, right } => {
                let left = Group::new(*left)?;
                let right = Group::new(*right)?;
                let mut names = Vec::new();
                let mut origin = Vec::new();
                for (side, g, suffix) in [(Side::Left, &left, "_1"), (Side::Right, &right, "_2")] {
                    for (i, gen) in g.alphabet.generators().iter().enumerate() {
                        names.push(format!("{gen}{suffix}"));
                        origin.push((side, i));
                    }
                }
                let alphabet = Alphabet::from_names(&names)?;
                Ok(Group {
                    spec: GroupSpec::DirectProduct {
                        left: Box::new(left.spec.clone()),
                        right: Box::new(right.spec.clone()),
                    },
                    alphabet,
                    family: Family::Product {
                        left: Box::new(left),
                        right: Box::new(right),
                        origin,
                    },
                })
            }
            GroupSpec::FgAbelian {
                rank,
                factors,
                generators,
            } => {
                if let Some(d) = factors.iter().find(|&&d| d < 2) {
                    return invalid(format!(
                        "fg_abelian: invariant factor {d} must be at least 2"
                    ));
                }
                if let Some(w) = factors.windows(2).find(|w| w[1] % w[0] != 0) {
                    return invalid(format!(
                        "fg_abelian: invariant factors must divide each other ({} does not divide {})",
                        w[0], w[1]
                    ));
                }
                let n = rank + factors.len();
                let names = names_or_default(&generators, n, "fg_abelian")?;
                let alphabet = Alphabet::from_names(&names)?;
                let mut orders = vec![0; rank];
                orders.extend_from_slice(&factors);
                Ok(Group {
                    spec: GroupSpec::FgAbelian {
                        rank,
                        factors,
                        generators: Some(names),
                    },
                    alphabet,
                    family: Family::Abelian(AbelianGroup::new(orders)),
                })
            }
        }
    }

    /// Normalized description (generator names filled in).
    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn family_name(&self) -> &'static str {
        self.spec.family_name()
    }

    pub fn is_dihedral(&self) -> bool {
        matches!(self.family, Family::Dihedral)
    }

    pub fn is_free(&self) -> bool {
        matches!(self.family, Family::Free)
    }

    /// Factor orders if this is a free product of cyclics.
    pub fn free_product_orders(&self) -> Option<&[u64]> {
        match &self.family {
            Family::FreeProduct(orders) => Some(orders),
            _ => None,
        }
    }

    /// `m` if this is `BS(1, m)`.
    pub fn baumslag_solitar_m(&self) -> Option<&BigInt> {
        match &self.family {
            Family::BaumslagSolitar(p) => Some(&p.m),
            _ => None,
        }
    }

    pub fn cyclic_order(&self) -> Option<u64> {
        match self.family {
            Family::Cyclic(n) => Some(n),
            _ => None,
        }
    }

    pub fn components(&self) -> Option<(&Group, &Group)> {
        match &self.family {
            Family::Product { left, right, .. } => Some((left, right)),
            _ => None,
        }
    }

    pub fn abelian_structure(&self) -> Option<&AbelianGroup> {
        match &self.family {
            Family::Abelian(a) => Some(a),
            _ => None,
        }
    }

    fn mismatch(&self, x: &Element) -> GroupError {
        GroupError::FamilyMismatch {
            family: self.family_name(),
            detail: format!("{x:?}"),
        }
    }

    fn modulus_of<'a>(&'a self, orders: &'a [u64]) -> impl Fn(&Generator) -> u64 + 'a {
        move |gen: &Generator| {
            let i = self
                .alphabet
                .generators()
                .iter()
                .position(|g| g == gen)
                .expect("generator of this free product");
            orders[i]
        }
    }

    pub fn identity(&self) -> Element {
        match &self.family {
            Family::Free | Family::FreeProduct(_) => Element::Word(Word::identity()),
            Family::Cyclic(_) => Element::Integer(BigInt::zero()),
            Family::Dihedral => Element::dihedral(0, false),
            Family::BaumslagSolitar(_) => Element::Affine(Affine::identity()),
            Family::Product { left, right, .. } => Element::pair(left.identity(), right.identity()),
            Family::Abelian(a) => Element::Vector(a.zero()),
        }
    }

    pub fn is_identity(&self, x: &Element) -> bool {
        *x == self.identity()
    }

    /// Checks that `x` is a canonical element of this group.
    pub fn check(&self, x: &Element) -> Result<(), GroupError> {
        let ok = match (&self.family, x) {
            (Family::Free, Element::Word(w)) => self.alphabet.check(w).is_ok(),
            (Family::FreeProduct(orders), Element::Word(w)) => {
                self.alphabet.check(w).is_ok()
                    && w.syllables()
                        .windows(2)
                        .all(|p| p[0].generator != p[1].generator)
                    && w.syllables().iter().all(|s| {
                        let n = self.modulus_of(orders)(&s.generator);
                        n == 0 || (s.exponent.is_positive() && s.exponent < BigInt::from(n))
                    })
            }
            (Family::Cyclic(n), Element::Integer(v)) => {
                *n == 0 || (!v.is_negative() && *v < BigInt::from(*n))
            }
            (Family::Dihedral, Element::Dihedral { .. }) => true,
            (Family::BaumslagSolitar(p), Element::Affine(a)) => p.is_canonical(a),
            (Family::Product { left, right, .. }, Element::Pair(a, b)) => {
                left.check(a).is_ok() && right.check(b).is_ok()
            }
            (Family::Abelian(a), Element::Vector(v)) => a.is_reduced(v),
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(self.mismatch(x))
        }
    }

    /// Group multiplication. Panics if an operand is from another family;
    /// use [`Group::try_mul`] on unchecked input.
    pub fn mul(&self, x: &Element, y: &Element) -> Element {
        match (&self.family, x, y) {
            (Family::Free, Element::Word(u), Element::Word(v)) => Element::Word(u.concat(v)),
            (Family::FreeProduct(orders), Element::Word(u), Element::Word(v)) => {
                Element::Word(u.concat_with(v, self.modulus_of(orders)))
            }
            (Family::Cyclic(n), Element::Integer(a), Element::Integer(b)) => {
                Element::Integer(self.reduce_integer(*n, a + b))
            }
            (
                Family::Dihedral,
                Element::Dihedral {
                    shift: a1,
                    flip: e1,
                },
                Element::Dihedral {
                    shift: a2,
                    flip: e2,
                },
            ) => Element::Dihedral {
                shift: if *e1 { a1 - a2 } else { a1 + a2 },
                flip: e1 ^ e2,
            },
            (Family::BaumslagSolitar(p), Element::Affine(a), Element::Affine(b)) => {
                Element::Affine(p.mul(a, b))
            }
            (Family::Product { left, right, .. }, Element::Pair(a1, b1), Element::Pair(a2, b2)) => {
                Element::pair(left.mul(a1, a2), right.mul(b1, b2))
            }
            (Family::Abelian(a), Element::Vector(u), Element::Vector(v)) => {
                Element::Vector(a.add(u, v))
            }
            _ => panic!("{}", self.mismatch(&Element::pair(x.clone(), y.clone()))),
        }
    }

    pub fn try_mul(&self, x: &Element, y: &Element) -> Result<Element, GroupError> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.mul(x, y))
    }

    fn reduce_integer(&self, n: u64, v: BigInt) -> BigInt {
        if n == 0 {
            v
        } else {
            residue(&v, n)
        }
    }

    pub fn inv(&self, x: &Element) -> Element {
        match (&self.family, x) {
            (Family::Free, Element::Word(w)) => Element::Word(w.inverse()),
            (Family::FreeProduct(orders), Element::Word(w)) => {
                Element::Word(w.inverse_with(self.modulus_of(orders)))
            }
            (Family::Cyclic(n), Element::Integer(a)) => {
                Element::Integer(self.reduce_integer(*n, -a))
            }
            (Family::Dihedral, Element::Dihedral { shift, flip }) => Element::Dihedral {
                shift: if *flip { shift.clone() } else { -shift },
                flip: *flip,
            },
            (Family::BaumslagSolitar(p), Element::Affine(a)) => Element::Affine(p.inv(a)),
            (Family::Product { left, right, .. }, Element::Pair(a, b)) => {
                Element::pair(left.inv(a), right.inv(b))
            }
            (Family::Abelian(a), Element::Vector(v)) => Element::Vector(a.neg(v)),
            _ => panic!("{}", self.mismatch(x)),
        }
    }

    pub fn try_inv(&self, x: &Element) -> Result<Element, GroupError> {
        self.check(x)?;
        Ok(self.inv(x))
    }

    /// `x · w · x⁻¹`.
    pub fn conjugate(&self, x: &Element, w: &Element) -> Element {
        self.mul(&self.mul(x, w), &self.inv(x))
    }

    pub fn pow(&self, x: &Element, n: &BigInt) -> Element {
        if n.is_negative() {
            let inv = self.inv(x);
            return power(self.identity(), inv, &-n, |a, b| self.mul(a, b));
        }
        power(self.identity(), x.clone(), n, |a, b| self.mul(a, b))
    }

    pub fn product<'a>(&self, xs: impl IntoIterator<Item = &'a Element>) -> Element {
        xs.into_iter()
            .fold(self.identity(), |acc, x| self.mul(&acc, x))
    }

    /// The `i`-th declared generator as an element.
    pub fn generator(&self, i: usize) -> Element {
        self.generator_power(i, &BigInt::from(1))
    }

    pub fn generators(&self) -> Vec<Element> {
        (0..self.alphabet.len())
            .map(|i| self.generator(i))
            .collect()
    }

    fn generator_power(&self, i: usize, e: &BigInt) -> Element {
        match &self.family {
            Family::Free => Element::Word(Word::letter(
                self.alphabet.generators()[i].clone(),
                e.clone(),
            )),
            Family::FreeProduct(orders) => Element::Word(Word::reduce_with(
                [(self.alphabet.generators()[i].clone(), e.clone())],
                self.modulus_of(orders),
            )),
            Family::Cyclic(n) => Element::Integer(self.reduce_integer(*n, e.clone())),
            Family::Dihedral => {
                if i == 0 {
                    Element::Dihedral {
                        shift: e.clone(),
                        flip: false,
                    }
                } else {
                    Element::Dihedral {
                        shift: BigInt::zero(),
                        flip: e.is_odd(),
                    }
                }
            }
            Family::BaumslagSolitar(_) => {
                if i == 0 {
                    Element::Affine(Affine::lift(e.clone()))
                } else {
                    Element::Affine(Affine::translation(e.clone()))
                }
            }
            Family::Product {
                left,
                right,
                origin,
            } => match origin[i] {
                (Side::Left, j) => Element::pair(left.generator_power(j, e), right.identity()),
                (Side::Right, j) => Element::pair(left.identity(), right.generator_power(j, e)),
            },
            Family::Abelian(a) => Element::Vector(a.scale(&a.unit(i), e)),
        }
    }

    /// Evaluates a word over this group's alphabet.
    pub fn from_word(&self, w: &Word) -> Result<Element, GroupError> {
        self.alphabet.check(w)?;
        Ok(match &self.family {
            Family::Free => Element::Word(w.clone()),
            Family::FreeProduct(orders) => Element::Word(Word::reduce_with(
                w.syllables()
                    .iter()
                    .map(|s| (s.generator.clone(), s.exponent.clone())),
                self.modulus_of(orders),
            )),
            _ => w.syllables().iter().fold(self.identity(), |acc, s| {
                let i = self
                    .alphabet
                    .index_of(s.generator.as_str())
                    .expect("checked above");
                self.mul(&acc, &self.generator_power(i, &s.exponent))
            }),
        })
    }

    /// A word over the alphabet evaluating to `x`.
    pub fn to_word(&self, x: &Element) -> Word {
        let gens = self.alphabet.generators();
        match (&self.family, x) {
            (Family::Free | Family::FreeProduct(_), Element::Word(w)) => w.clone(),
            (Family::Cyclic(_), Element::Integer(n)) => Word::letter(gens[0].clone(), n.clone()),
            (Family::Dihedral, Element::Dihedral { shift, flip }) => Word::reduce([
                (gens[0].clone(), shift.clone()),
                (gens[1].clone(), BigInt::from(*flip as u8)),
            ]),
            (Family::BaumslagSolitar(p), Element::Affine(a)) => Word::reduce(
                p.word_parts(a)
                    .into_iter()
                    .map(|(is_g, e)| (gens[if is_g { 0 } else { 1 }].clone(), e)),
            ),
            (
                Family::Product {
                    left,
                    right,
                    origin,
                },
                Element::Pair(a, b),
            ) => {
                let rename = |side: Side, inner: &Generator, comp: &Group| {
                    let j = comp
                        .alphabet
                        .index_of(inner.as_str())
                        .expect("component generator");
                    let i = origin
                        .iter()
                        .position(|&o| o == (side, j))
                        .expect("qualified generator");
                    gens[i].clone()
                };
                let lw = left
                    .to_word(a)
                    .map_generators(|g| rename(Side::Left, g, left));
                let rw = right
                    .to_word(b)
                    .map_generators(|g| rename(Side::Right, g, right));
                lw.concat(&rw)
            }
            (Family::Abelian(_), Element::Vector(v)) => {
                Word::reduce(gens.iter().cloned().zip(v.iter().cloned()))
            }
            _ => panic!("{}", self.mismatch(x)),
        }
    }

    pub fn parse(&self, text: &str) -> Result<Element, GroupError> {
        let w = parse_word(text, &self.alphabet)?;
        self.from_word(&w)
    }

    pub fn render(&self, x: &Element) -> String {
        render_word(&self.to_word(x))
    }

    /// Exact order for every family in the zoo.
    pub fn order(&self, x: &Element) -> Order {
        match (&self.family, x) {
            (Family::Free, Element::Word(w)) => {
                if w.is_identity() {
                    Order::Finite(1)
                } else {
                    Order::Infinite
                }
            }
            (Family::FreeProduct(orders), Element::Word(w)) => {
                let core = self.cyclic_core(orders, w);
                match core.syllables() {
                    [] => Order::Finite(1),
                    [s] => match self.modulus_of(orders)(&s.generator) {
                        0 => Order::Infinite,
                        n => Order::Finite(residue_order(&s.exponent, n)),
                    },
                    _ => Order::Infinite,
                }
            }
            (Family::Cyclic(n), Element::Integer(v)) => match n {
                0 if v.is_zero() => Order::Finite(1),
                0 => Order::Infinite,
                n => Order::Finite(residue_order(v, *n)),
            },
            (Family::Dihedral, Element::Dihedral { shift, flip }) => {
                if *flip {
                    Order::Finite(2)
                } else if shift.is_zero() {
                    Order::Finite(1)
                } else {
                    Order::Infinite
                }
            }
            (Family::BaumslagSolitar(_), _) => {
                if self.is_identity(x) {
                    Order::Finite(1)
                } else {
                    Order::Infinite
                }
            }
            (Family::Product { left, right, .. }, Element::Pair(a, b)) => {
                match (left.order(a), right.order(b)) {
                    (Order::Finite(p), Order::Finite(q)) => Order::Finite(lcm_u64(p, q)),
                    _ => Order::Infinite,
                }
            }
            (Family::Abelian(a), Element::Vector(v)) => a.order(v),
            _ => panic!("{}", self.mismatch(x)),
        }
    }

    /// Smallest `n <= max` with `x^n = 1`; families with exact orders
    /// answer directly regardless of `max`.
    pub fn order_bounded(&self, x: &Element, _max: u64) -> BoundedOrder {
        match self.order(x) {
            Order::Finite(n) => BoundedOrder::Finite(n),
            Order::Infinite => BoundedOrder::Infinite,
        }
    }

    /// Brute-force order search by repeated multiplication.
    pub fn order_by_powers(&self, x: &Element, max: u64) -> BoundedOrder {
        let mut acc = x.clone();
        for n in 1..=max {
            if self.is_identity(&acc) {
                return BoundedOrder::Finite(n);
            }
            acc = self.mul(&acc, x);
        }
        BoundedOrder::NotFoundWithin(max)
    }

    /// Cyclic reduction in a free product: a conjugate of `w` whose first and
    /// last syllables lie in different factors (or of length <= 1).
    fn cyclic_core(&self, orders: &[u64], w: &Word) -> Word {
        let modulus = self.modulus_of(orders);
        let mut syl: Vec<_> = w.syllables().to_vec();
        loop {
            if syl.len() < 2 || syl[0].generator != syl[syl.len() - 1].generator {
                break;
            }
            let last = syl.pop().expect("len >= 2");
            let first = syl.remove(0);
            let merged = Word::reduce_with(
                [(first.generator, first.exponent + last.exponent)],
                &modulus,
            );
            let mut next = merged.into_syllables();
            next.extend(syl);
            syl = next;
        }
        Word::reduce_with(syl.into_iter().map(|s| (s.generator, s.exponent)), &modulus)
    }

    /// Cyclically reduced conjugate of a free-product or free-group element.
    pub fn cyclically_reduce(&self, x: &Element) -> Option<Element> {
        match (&self.family, x) {
            (Family::FreeProduct(orders), Element::Word(w)) => {
                Some(Element::Word(self.cyclic_core(orders, w)))
            }
            (Family::Free, Element::Word(w)) => {
                let zeros = vec![0; self.alphabet.len()];
                Some(Element::Word(self.cyclic_core(&zeros, w)))
            }
            _ => None,
        }
    }

    /// Relators whose normal closure presents the family on its alphabet.
    pub fn relators(&self) -> Vec<Word> {
        let gens = self.alphabet.generators();
        let commutator = |a: &Generator, b: &Generator| {
            Word::reduce([
                (a.clone(), 1.into()),
                (b.clone(), 1.into()),
                (a.clone(), (-1).into()),
                (b.clone(), (-1).into()),
            ])
        };
        match &self.family {
            Family::Free => Vec::new(),
            Family::Cyclic(n) => {
                if *n == 0 {
                    Vec::new()
                } else {
                    vec![Word::letter(gens[0].clone(), *n)]
                }
            }
            Family::FreeProduct(orders) => gens
                .iter()
                .zip(orders)
                .filter(|(_, &n)| n > 0)
                .map(|(g, &n)| Word::letter(g.clone(), n))
                .collect(),
            Family::Dihedral => {
                let (k, g) = (&gens[0], &gens[1]);
                vec![
                    Word::letter(g.clone(), 2),
                    Word::reduce([
                        (g.clone(), 1.into()),
                        (k.clone(), 1.into()),
                        (g.clone(), (-1).into()),
                        (k.clone(), 1.into()),
                    ]),
                ]
            }
            Family::BaumslagSolitar(p) => {
                let (g, k) = (&gens[0], &gens[1]);
                vec![Word::reduce([
                    (g.clone(), 1.into()),
                    (k.clone(), 1.into()),
                    (g.clone(), (-1).into()),
                    (k.clone(), -p.m.clone()),
                ])]
            }
            Family::Product {
                left,
                right,
                origin,
            } => {
                let qualify = |side: Side, comp: &Group, w: Word| {
                    w.map_generators(|inner| {
                        let j = comp
                            .alphabet
                            .index_of(inner.as_str())
                            .expect("component generator");
                        let i = origin
                            .iter()
                            .position(|&o| o == (side, j))
                            .expect("qualified");
                        gens[i].clone()
                    })
                };
                let mut out: Vec<Word> = left
                    .relators()
                    .into_iter()
                    .map(|w| qualify(Side::Left, left, w))
                    .chain(
                        right
                            .relators()
                            .into_iter()
                            .map(|w| qualify(Side::Right, right, w)),
                    )
                    .collect();
                for (i, a) in gens.iter().enumerate() {
                    for (j, b) in gens.iter().enumerate() {
                        if origin[i].0 == Side::Left && origin[j].0 == Side::Right {
                            out.push(commutator(a, b));
                        }
                    }
                }
                out
            }
            Family::Abelian(a) => {
                let mut out = Vec::new();
                for (i, x) in gens.iter().enumerate() {
                    if a.orders()[i] > 0 {
                        out.push(Word::letter(x.clone(), a.orders()[i]));
                    }
                    for y in &gens[i + 1..] {
                        out.push(commutator(x, y));
                    }
                }
                out
            }
        }
    }

    /// The abelianization as a direct sum of cyclic groups.
    pub fn abelianization(&self) -> AbelianGroup {
        match &self.family {
            Family::Free => AbelianGroup::new(vec![0; self.alphabet.len()]),
            Family::Cyclic(n) => AbelianGroup::new(vec![*n]),
            Family::FreeProduct(orders) => AbelianGroup::new(orders.clone()),
            Family::Dihedral => AbelianGroup::new(vec![2, 2]),
            Family::BaumslagSolitar(p) => {
                let torsion =
                    u64::try_from((&p.m - BigInt::from(1)).abs()).expect("|m - 1| fits u64");
                AbelianGroup::new(vec![0, torsion])
            }
            Family::Product { left, right, .. } => {
                let mut orders = left.abelianization().orders().to_vec();
                orders.extend_from_slice(right.abelianization().orders());
                AbelianGroup::new(orders)
            }
            Family::Abelian(a) => a.clone(),
        }
    }

    /// Image of the `i`-th generator in [`Group::abelianization`].
    fn abelian_generator_image(&self, i: usize, target: &AbelianGroup) -> Vec<BigInt> {
        match &self.family {
            Family::Free | Family::Cyclic(_) | Family::FreeProduct(_) | Family::Abelian(_) => {
                target.unit(i)
            }
            // k -> (1, 1), g -> (1, 0)
            Family::Dihedral => target.reduce(if i == 0 {
                vec![1.into(), 1.into()]
            } else {
                vec![1.into(), 0.into()]
            }),
            // g -> (1, 0), k -> (0, 1)
            Family::BaumslagSolitar(_) => target.unit(if i == 0 { 0 } else { 1 }),
            Family::Product {
                left,
                right,
                origin,
            } => {
                let (side, j) = origin[i];
                let la = left.abelianization();
                let ra = right.abelianization();
                let mut v = la.zero();
                v.extend(ra.zero());
                match side {
                    Side::Left => {
                        for (c, x) in left.abelian_generator_image(j, &la).into_iter().enumerate() {
                            v[c] = x;
                        }
                    }
                    Side::Right => {
                        for (c, x) in right
                            .abelian_generator_image(j, &ra)
                            .into_iter()
                            .enumerate()
                        {
                            v[la.dim() + c] = x;
                        }
                    }
                }
                v
            }
        }
    }

    pub fn abelianization_image(&self, x: &Element) -> Vec<BigInt> {
        let target = self.abelianization();
        let images: Vec<_> = (0..self.alphabet.len())
            .map(|i| self.abelian_generator_image(i, &target))
            .collect();
        let w = self.to_word(x);
        w.syllables().iter().fold(target.zero(), |acc, s| {
            let i = self
                .alphabet
                .index_of(s.generator.as_str())
                .expect("to_word stays in alphabet");
            target.add(&acc, &target.scale(&images[i], &s.exponent))
        })
    }

    /// All elements of word length at most `radius`, deduplicated and
    /// sorted by length, then by canonical form.
    pub fn ball(&self, radius: usize) -> Vec<Element> {
        ball::ball(self, radius)
            .into_iter()
            .map(|(x, _)| x)
            .collect()
    }

    /// Like [`Group::ball`], paired with each element's word length.
    pub fn ball_with_lengths(&self, radius: usize) -> Vec<(Element, usize)> {
        ball::ball(self, radius)
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.spec {
            GroupSpec::Free { rank, .. } => write!(f, "F_{rank}"),
            GroupSpec::Cyclic { order: 0, .. } => write!(f, "Z"),
            GroupSpec::Cyclic { order, .. } => write!(f, "Z_{order}"),
            GroupSpec::FreeProductOfCyclics { orders, .. } => {
                let parts: Vec<String> = orders
                    .iter()
                    .map(|&n| {
                        if n == 0 {
                            "Z".to_string()
                        } else {
                            format!("Z_{n}")
                        }
                    })
                    .collect();
                write!(f, "{}", parts.join(" * "))
            }
            GroupSpec::InfiniteDihedral {} => write!(f, "D_inf"),
            GroupSpec::BaumslagSolitar { m } => write!(f, "BS(1,{m})"),
            GroupSpec::DirectProduct { .. } => {
                let (l, r) = self.components().expect("product");
                write!(f, "({l} x {r})")
            }
            GroupSpec::FgAbelian { rank, factors, .. } => {
                let mut parts = vec![];
                if *rank > 0 {
                    parts.push(format!("Z^{rank}"));
                }
                parts.extend(factors.iter().map(|d| format!("Z_{d}")));
                if parts.is_empty() {
                    parts.push("1".into());
                }
                write!(f, "{}", parts.join(" + "))
            }
        }
    }
}

/// The two-generator word model `Z_2 * Z_2 = <s, t>` of the infinite dihedral group.
pub fn dihedral_word_model() -> Group {
    Group::new(GroupSpec::free_product_named(&[2, 2], &["s", "t"])).expect("valid spec")
}

/// Isomorphism from the semidirect model to the word model: `g ↦ s`, `k ↦ s t`.
pub fn dinf_iso(x: &Element) -> Element {
    let model = dihedral_word_model();
    let Element::Dihedral { shift, flip } = x else {
        panic!("dinf_iso expects an infinite dihedral element, got {x:?}");
    };
    let st = model.parse("s t").expect("valid word");
    let s = model.generator(0);
    let k_part = model.pow(&st, shift);
    if *flip {
        model.mul(&k_part, &s)
    } else {
        k_part
    }
}

/// Inverse of [`dinf_iso`]: `s ↦ g`, `t ↦ g k`.
pub fn dinf_iso_inverse(y: &Element) -> Element {
    let model = dihedral_word_model();
    let dinf = Group::new(GroupSpec::InfiniteDihedral {}).expect("valid spec");
    let Element::Word(w) = y else {
        panic!("dinf_iso_inverse expects a word element, got {y:?}");
    };
    let s_image = dinf.generator(1);
    let t_image = dinf.mul(&dinf.generator(1), &dinf.generator(0));
    w.syllables().iter().fold(dinf.identity(), |acc, syl| {
        debug_assert!(model.alphabet().contains(&syl.generator));
        let image = if syl.generator.as_str() == "s" {
            &s_image
        } else {
            &t_image
        };
        dinf.mul(&acc, &dinf.pow(image, &syl.exponent))
    })
}

#[cfg(test)]
mod tests;
