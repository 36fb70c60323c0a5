//! Witness builders. Each one verifies its own output before returning.

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::Serialize;

use super::{conjugate_product, Witness, WitnessError};
use crate::morphism::Morphism;
use crate::zoo::{BoundedOrder, Element, Group, Order};

/// Cap on residual-order searches when the caller does not give one.
pub const DEFAULT_ORDER_CAP: u64 = 64;

/// Whether the base of a witness is itself torsion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GenuinenessTag {
    Torsion { order: u64 },
    Genuine,
    UnknownGenuineness { probed: u64 },
}

/// Result of pushing a witness through a morphism.
#[derive(Debug, Clone, PartialEq, Eq)]
#[allow(clippy::large_enum_variant)]
pub enum Pushed {
    Witness(Witness),
    /// The base maps to the identity.
    Collapsed,
}

fn checked(w: Witness, who: &'static str) -> Result<Witness, WitnessError> {
    if w.verify() {
        Ok(w)
    } else {
        Err(WitnessError::SelfCheckFailed(who))
    }
}

fn finite_order(group: &Group, x: &Element) -> Result<u64, WitnessError> {
    match group.order(x) {
        Order::Finite(n) => Ok(n),
        Order::Infinite => Err(WitnessError::NotTorsion(group.render(x))),
    }
}

fn repeat(block: &[Element], times: u64) -> Vec<Element> {
    let times = usize::try_from(times).expect("repetition count fits usize");
    let mut out = Vec::with_capacity(block.len() * times);
    for _ in 0..times {
        out.extend_from_slice(block);
    }
    out
}

/// `x` repeated `ord(x)` times with identity conjugators.
pub fn torsion_witness(group: &Group, x: &Element) -> Result<Witness, WitnessError> {
    group.check(x)?;
    if group.is_identity(x) {
        return Err(WitnessError::BaseTrivial);
    }
    let n = finite_order(group, x)?;
    let w = Witness::new(group.clone(), x.clone(), repeat(&[group.identity()], n))?;
    checked(w, "torsion_witness")
}

/// Witness for `a·b` where `a`, `b` are torsion of orders `m`, `n`.
///
/// The block conjugates `ab` by `1, b^(n-1), b^(n-2), ..., b^(n-m+1)`. Its
/// product is computed directly; if the residual is nontrivial the block is
/// repeated `ord(residual)` times.
pub fn construct_prod_torsion_witness(
    group: &Group,
    a: &Element,
    b: &Element,
) -> Result<Witness, WitnessError> {
    group.check(a)?;
    group.check(b)?;
    let m = finite_order(group, a)?;
    let n = finite_order(group, b)?;
    let ab = group.mul(a, b);
    if group.is_identity(&ab) {
        return Err(WitnessError::BaseTrivial);
    }
    let block: Vec<Element> = (1..=m)
        .map(|i| {
            if i == 1 {
                group.identity()
            } else {
                let e = BigInt::from(n) - BigInt::from(i - 1);
                group.pow(b, &e)
            }
        })
        .collect();
    let residual = conjugate_product(group, &ab, &block);
    let reps = if group.is_identity(&residual) {
        1
    } else {
        match group.order(&residual) {
            Order::Finite(r) => r,
            Order::Infinite => return Err(WitnessError::ResidualOrderNotFound(DEFAULT_ORDER_CAP)),
        }
    };
    let w = Witness::new(group.clone(), ab, repeat(&block, reps))?;
    checked(w, "construct_prod_torsion_witness")
}

/// Lifts the quotient conjugators through the section of `p` and returns
/// them together with the residual `∏ g^{x_i}`, which lies in the kernel.
fn lift_conjugators(
    p: &Morphism,
    g: &Element,
    wq: &Witness,
) -> Result<(Vec<Element>, Element), WitnessError> {
    let (domain, codomain) = (p.domain(), p.codomain());
    domain.check(g)?;
    if wq.group() != codomain {
        return Err(WitnessError::WrongFamily {
            expected: codomain.family_name(),
            got: wq.group().to_string(),
        });
    }
    let image = p.apply(g);
    if codomain.is_identity(&image) {
        return Err(WitnessError::TrivialImage);
    }
    if wq.base() != &image {
        return Err(WitnessError::BaseMismatch);
    }
    if !wq.verify() {
        return Err(WitnessError::Unverified);
    }
    let lifted = wq
        .conjugators()
        .iter()
        .map(|y| p.lift(y))
        .collect::<Result<Vec<_>, _>>()?;
    let residual = conjugate_product(domain, g, &lifted);
    if !p.in_kernel(&residual) {
        return Err(WitnessError::SelfCheckFailed(
            "lift residual outside kernel",
        ));
    }
    Ok((lifted, residual))
}

/// Lifts a quotient witness through an extension with torsion kernel: the
/// residual has some finite order `m` and the lifted block is repeated `m`
/// times.
pub fn lift_witness_torsion_kernel(
    p: &Morphism,
    g: &Element,
    wq: &Witness,
    order_cap: u64,
) -> Result<Witness, WitnessError> {
    let (lifted, residual) = lift_conjugators(p, g, wq)?;
    let domain = p.domain();
    let m = if domain.is_identity(&residual) {
        1
    } else {
        match domain.order_bounded(&residual, order_cap) {
            BoundedOrder::Finite(m) if m <= order_cap => m,
            _ => return Err(WitnessError::ResidualOrderNotFound(order_cap)),
        }
    };
    let w = Witness::new(domain.clone(), g.clone(), repeat(&lifted, m))?;
    checked(w, "lift_witness_torsion_kernel")
}

/// Lifts a quotient witness through an extension whose kernel consists of
/// generalized torsion elements of the whole group.
///
/// With residual `k = ∏ g^{x_i}` and a kernel witness `∏ k^{z_j} = 1`, the
/// output conjugators are `z_j · x_i`, `j` outer and `i` inner, since
/// `(g^{x})^{z} = g^{z x}` under `g^x = x g x⁻¹`.
pub fn lift_witness_gt_kernel(
    p: &Morphism,
    g: &Element,
    wq: &Witness,
    provider: &dyn Fn(&Element) -> Option<Witness>,
) -> Result<Witness, WitnessError> {
    let (lifted, residual) = lift_conjugators(p, g, wq)?;
    let domain = p.domain();
    let conjugators = if domain.is_identity(&residual) {
        lifted
    } else {
        let failed = || WitnessError::ProviderFailed(domain.render(&residual));
        let kw = provider(&residual).ok_or_else(failed)?;
        if kw.group() != domain || kw.base() != &residual || !kw.verify() {
            return Err(failed());
        }
        kw.conjugators()
            .iter()
            .flat_map(|z| lifted.iter().map(move |x| domain.mul(z, x)))
            .collect()
    };
    let w = Witness::new(domain.clone(), g.clone(), conjugators)?;
    checked(w, "lift_witness_gt_kernel")
}

/// In `BS(1, m)` with `m < 0`: `(g kⁿ g⁻¹)(kⁿ)^|m| = k^(mn) k^(|m|n) = 1`.
pub fn bs_power_witness(group: &Group, n: &BigInt) -> Result<Witness, WitnessError> {
    let m = group
        .baumslag_solitar_m()
        .ok_or_else(|| WitnessError::WrongFamily {
            expected: "baumslag_solitar",
            got: group.to_string(),
        })?;
    if !m.is_negative() {
        return Err(WitnessError::NonNegativeM(m.to_string()));
    }
    if n < &BigInt::one() {
        return Err(WitnessError::InvalidPower(n.to_string()));
    }
    let k = group.generator(1);
    let g = group.generator(0);
    let base = group.pow(&k, n);
    let copies = u64::try_from(m.abs()).expect("|m| fits u64");
    let mut conjugators = vec![g];
    conjugators.extend(repeat(&[group.identity()], copies));
    let w = Witness::new(group.clone(), base, conjugators)?;
    checked(w, "bs_power_witness")
}

/// Pushes a verified witness forward along `p`.
pub fn push_witness(p: &Morphism, w: &Witness) -> Result<Pushed, WitnessError> {
    if w.group() != p.domain() {
        return Err(WitnessError::WrongFamily {
            expected: p.domain().family_name(),
            got: w.group().to_string(),
        });
    }
    if !w.verify() {
        return Err(WitnessError::Unverified);
    }
    let base = p.apply(w.base());
    if p.codomain().is_identity(&base) {
        return Ok(Pushed::Collapsed);
    }
    let conjugators = w.conjugators().iter().map(|x| p.apply(x)).collect();
    let pushed = Witness::new(p.codomain().clone(), base, conjugators)?;
    checked(pushed, "push_witness").map(Pushed::Witness)
}

pub fn genuineness(w: &Witness, order_cap: u64) -> GenuinenessTag {
    match w.group().order_bounded(w.base(), order_cap) {
        BoundedOrder::Finite(order) => GenuinenessTag::Torsion { order },
        BoundedOrder::Infinite => GenuinenessTag::Genuine,
        BoundedOrder::NotFoundWithin(probed) => GenuinenessTag::UnknownGenuineness { probed },
    }
}

/// Witnesses of length at most 2 for every nontrivial element of D∞, in the
/// semidirect model (`k^a g` is an involution; `g k^a g⁻¹ = k^-a`) or in the
/// word model `Z_2 * Z_2` (conjugating by the first generator inverts every
/// infinite-order element).
pub fn dinf_witness(group: &Group, x: &Element) -> Result<Witness, WitnessError> {
    group.check(x)?;
    let word_model = group.free_product_orders() == Some(&[2, 2][..]);
    if !group.is_dihedral() && !word_model {
        return Err(WitnessError::WrongFamily {
            expected: "infinite_dihedral",
            got: group.to_string(),
        });
    }
    if group.is_identity(x) {
        return Err(WitnessError::BaseTrivial);
    }
    if group.order(x).is_finite() {
        return torsion_witness(group, x);
    }
    let flip = if word_model {
        group.generator(0)
    } else {
        group.generator(1)
    };
    let w = Witness::new(group.clone(), x.clone(), vec![group.identity(), flip])?;
    checked(w, "dinf_witness")
}
