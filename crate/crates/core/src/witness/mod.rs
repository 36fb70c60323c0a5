//! Generalized torsion certificates.
//!
//! A [`Witness`] for `g` is an ordered list of conjugators `x_1, ..., x_n`
//! with `x_1 g x_1⁻¹ · x_2 g x_2⁻¹ ⋯ x_n g x_n⁻¹ = 1`, conjugation being
//! `g^x = x g x⁻¹` throughout the crate.

mod construct;
mod file;

use thiserror::Error;

pub use construct::{
    bs_power_witness, construct_prod_torsion_witness, dinf_witness, genuineness,
    lift_witness_gt_kernel, lift_witness_torsion_kernel, push_witness, torsion_witness,
    GenuinenessTag, Pushed, DEFAULT_ORDER_CAP,
};
pub use file::WitnessFile;

use crate::morphism::MorphismError;
use crate::zoo::{Element, Group, GroupError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WitnessError {
    #[error("invalid witness: {0}")]
    InvalidWitness(String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Morphism(#[from] MorphismError),
    #[error("`{0}` is not a torsion element")]
    NotTorsion(String),
    #[error("base element is trivial")]
    BaseTrivial,
    #[error("Baumslag-Solitar parameter m = {0} must be negative")]
    NonNegativeM(String),
    #[error("power must be at least 1, got {0}")]
    InvalidPower(String),
    #[error("expected a {expected} group, got {got}")]
    WrongFamily { expected: &'static str, got: String },
    #[error("quotient witness is not a witness for the image of the base")]
    BaseMismatch,
    #[error("image of the base is trivial; no quotient witness can exist")]
    TrivialImage,
    #[error("input witness does not verify")]
    Unverified,
    #[error("residual order not found within {0}")]
    ResidualOrderNotFound(u64),
    #[error("kernel witness provider failed for `{0}`")]
    ProviderFailed(String),
    #[error("internal self-check failed in {0}")]
    SelfCheckFailed(&'static str),
    #[error("malformed witness file: {0}")]
    Json(String),
}

/// A base element with an ordered, nonempty list of conjugators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    group: Group,
    base: Element,
    conjugators: Vec<Element>,
}

impl Witness {
    /// Rejects identity bases and empty conjugator lists with `InvalidWitness`.
    /// Does not require the witness to verify.
    pub fn new(
        group: Group,
        base: Element,
        conjugators: Vec<Element>,
    ) -> Result<Self, WitnessError> {
        group.check(&base)?;
        for x in &conjugators {
            group.check(x)?;
        }
        if group.is_identity(&base) {
            return Err(WitnessError::InvalidWitness("base is the identity".into()));
        }
        if conjugators.is_empty() {
            return Err(WitnessError::InvalidWitness("no conjugators".into()));
        }
        Ok(Witness {
            group,
            base,
            conjugators,
        })
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn base(&self) -> &Element {
        &self.base
    }

    pub fn conjugators(&self) -> &[Element] {
        &self.conjugators
    }

    /// Number of conjugates in the product.
    pub fn len(&self) -> usize {
        self.conjugators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.conjugators.is_empty()
    }

    /// The ordered product of conjugates `∏ x_i g x_i⁻¹`.
    pub fn product(&self) -> Element {
        conjugate_product(&self.group, &self.base, &self.conjugators)
    }

    pub fn verify(&self) -> bool {
        self.group.is_identity(&self.product())
    }

    pub fn to_file(&self) -> WitnessFile {
        WitnessFile {
            group: self.group.spec().clone(),
            base: self.group.render(&self.base),
            conjugators: self
                .conjugators
                .iter()
                .map(|x| self.group.render(x))
                .collect(),
        }
    }
}

pub(crate) fn conjugate_product(group: &Group, base: &Element, conjugators: &[Element]) -> Element {
    conjugators.iter().fold(group.identity(), |acc, x| {
        group.mul(&acc, &group.conjugate(x, base))
    })
}

/// Checks the defining equation for raw parts. An identity base is an
/// `InvalidWitness` error rather than `false`.
pub fn verify_parts(
    group: &Group,
    base: &Element,
    conjugators: &[Element],
) -> Result<bool, WitnessError> {
    let w = Witness::new(group.clone(), base.clone(), conjugators.to_vec())?;
    Ok(w.verify())
}
