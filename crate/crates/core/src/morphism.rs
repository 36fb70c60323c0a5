//! Homomorphisms between zoo groups, given by generator images.
//!
//! A [`Morphism`] `p: G -> Q` is validated on construction: every defining
//! relator of `G` must map to the identity of `Q`. Kernels are never
//! enumerated; membership is decided by `in_kernel`. An optional
//! set-theoretic [`Section`] picks preimages for `lift`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::word::render_word;
use crate::zoo::{dihedral_word_model, Affine, Element, Group, GroupError, GroupSpec, Side};

/// Codomain ball radius used to spot-check sections.
pub const SECTION_CHECK_RADIUS: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MorphismError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("relator `{0}` does not map to the identity")]
    NotAHomomorphism(String),
    #[error("no image given for generator `{0}`")]
    MissingImage(String),
    #[error("image given for unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("expected {expected} generator images, got {got}")]
    ImageCount { expected: usize, got: usize },
    #[error("section `{0}` does not apply to this domain/codomain pair")]
    SectionMismatch(String),
    #[error("unknown section `{0}`")]
    UnknownSection(String),
    #[error("section fails p(s(q)) = q at q = `{0}`")]
    SectionInvalid(String),
    #[error("morphism has no section")]
    NoSection,
    #[error("malformed morphism file: {0}")]
    Json(String),
}

/// Canonical sections shipped with the library.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BuiltinSection {
    /// `A x B -> A`, `a ↦ (a, 1)`.
    Proj1,
    /// `A x B -> B`, `b ↦ (1, b)`.
    Proj2,
    /// `D∞ -> Z_2`, `0 ↦ 1`, `1 ↦ g`.
    DihedralParity,
    /// `BS(1, m) -> Z`, `t ↦ g^t`.
    BsHeight,
    /// `Z -> Z_n`, residue representative in `0..n`.
    Residue,
}

impl BuiltinSection {
    pub fn name(self) -> &'static str {
        match self {
            BuiltinSection::Proj1 => "proj1",
            BuiltinSection::Proj2 => "proj2",
            BuiltinSection::DihedralParity => "dihedral-parity",
            BuiltinSection::BsHeight => "bs-height",
            BuiltinSection::Residue => "residue",
        }
    }

    pub fn from_name(name: &str) -> Result<Self, MorphismError> {
        Ok(match name {
            "proj1" => BuiltinSection::Proj1,
            "proj2" => BuiltinSection::Proj2,
            "dihedral-parity" => BuiltinSection::DihedralParity,
            "bs-height" => BuiltinSection::BsHeight,
            "residue" => BuiltinSection::Residue,
            other => return Err(MorphismError::UnknownSection(other.to_string())),
        })
    }

    fn applies(self, domain: &Group, codomain: &Group) -> bool {
        match self {
            BuiltinSection::Proj1 => domain.components().is_some_and(|(l, _)| l == codomain),
            BuiltinSection::Proj2 => domain.components().is_some_and(|(_, r)| r == codomain),
            BuiltinSection::DihedralParity => {
                domain.is_dihedral() && codomain.cyclic_order() == Some(2)
            }
            BuiltinSection::BsHeight => {
                domain.baumslag_solitar_m().is_some() && codomain.cyclic_order() == Some(0)
            }
            BuiltinSection::Residue => {
                domain.cyclic_order() == Some(0) && codomain.cyclic_order().is_some_and(|n| n > 0)
            }
        }
    }

    fn lift(self, domain: &Group, q: &Element) -> Element {
        match (self, q) {
            (BuiltinSection::Proj1, q) => {
                let (_, r) = domain.components().expect("checked product");
                Element::pair(q.clone(), r.identity())
            }
            (BuiltinSection::Proj2, q) => {
                let (l, _) = domain.components().expect("checked product");
                Element::pair(l.identity(), q.clone())
            }
            (BuiltinSection::DihedralParity, Element::Integer(n)) => Element::Dihedral {
                shift: 0.into(),
                flip: n == &1.into(),
            },
            (BuiltinSection::BsHeight, Element::Integer(t)) => {
                Element::Affine(Affine::lift(t.clone()))
            }
            (BuiltinSection::Residue, Element::Integer(r)) => Element::Integer(r.clone()),
            (s, q) => panic!("section {} cannot lift {q:?}", s.name()),
        }
    }
}

pub type SectionFn = Arc<dyn Fn(&Element) -> Element + Send + Sync>;

/// A set-theoretic right inverse of a morphism.
#[derive(Clone)]
pub enum Section {
    Builtin(BuiltinSection),
    Custom(SectionFn),
}

impl fmt::Debug for Section {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Section::Builtin(b) => write!(f, "Builtin({})", b.name()),
            Section::Custom(_) => write!(f, "Custom(..)"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Morphism {
    domain: Group,
    codomain: Group,
    images: Vec<Element>,
    section: Option<Section>,
}

impl Morphism {
    /// `images[i]` is the image of the `i`-th domain generator.
    pub fn new(
        domain: Group,
        codomain: Group,
        images: Vec<Element>,
        section: Option<Section>,
    ) -> Result<Self, MorphismError> {
        if images.len() != domain.alphabet().len() {
            return Err(MorphismError::ImageCount {
                expected: domain.alphabet().len(),
                got: images.len(),
            });
        }
        for x in &images {
            codomain.check(x)?;
        }
        let p = Morphism {
            domain,
            codomain,
            images,
            section: None,
        };
        for r in p.domain.relators() {
            if !p.codomain.is_identity(&p.apply_word(&r)) {
                return Err(MorphismError::NotAHomomorphism(render_word(&r)));
            }
        }
        p.with_section(section)
    }

    fn with_section(mut self, section: Option<Section>) -> Result<Self, MorphismError> {
        if let Some(Section::Builtin(b)) = &section {
            if !b.applies(&self.domain, &self.codomain) {
                return Err(MorphismError::SectionMismatch(b.name().to_string()));
            }
        }
        self.section = section;
        if self.section.is_some() {
            for q in self.codomain.ball(SECTION_CHECK_RADIUS) {
                let x = self.lift(&q)?;
                if self.domain.check(&x).is_err() || self.apply(&x) != q {
                    return Err(MorphismError::SectionInvalid(self.codomain.render(&q)));
                }
            }
        }
        Ok(self)
    }

    /// Builds a morphism from images written as words in the codomain.
    pub fn from_word_images(
        domain: Group,
        codomain: Group,
        images: &BTreeMap<String, String>,
        section: Option<Section>,
    ) -> Result<Self, MorphismError> {
        if let Some(extra) = images
            .keys()
            .find(|name| domain.alphabet().index_of(name).is_none())
        {
            return Err(MorphismError::UnknownGenerator(extra.clone()));
        }
        let mut elems = Vec::new();
        for gen in domain.alphabet().generators() {
            let text = images
                .get(gen.as_str())
                .ok_or_else(|| MorphismError::MissingImage(gen.to_string()))?;
            elems.push(codomain.parse(text)?);
        }
        Morphism::new(domain, codomain, elems, section)
    }

    pub fn projection(product: &Group, side: Side) -> Result<Self, MorphismError> {
        let (left, right) = product.components().ok_or_else(|| {
            MorphismError::SectionMismatch("projection needs a direct product".into())
        })?;
        let target = match side {
            Side::Left => left,
            Side::Right => right,
        };
        let images = product
            .generators()
            .into_iter()
            .map(|x| match (x, side) {
                (Element::Pair(a, _), Side::Left) => *a,
                (Element::Pair(_, b), Side::Right) => *b,
                _ => unreachable!("product generators are pairs"),
            })
            .collect();
        let section = match side {
            Side::Left => BuiltinSection::Proj1,
            Side::Right => BuiltinSection::Proj2,
        };
        Morphism::new(
            product.clone(),
            target.clone(),
            images,
            Some(Section::Builtin(section)),
        )
    }

    /// `D∞ -> Z_2`, `k ↦ 0`, `g ↦ 1`.
    pub fn dihedral_parity() -> Self {
        let domain = Group::new(GroupSpec::InfiniteDihedral {}).expect("valid");
        let codomain = Group::new(GroupSpec::cyclic(2)).expect("valid");
        Morphism::new(
            domain,
            codomain,
            vec![Element::integer(0), Element::integer(1)],
            Some(Section::Builtin(BuiltinSection::DihedralParity)),
        )
        .expect("D∞ -> Z_2 is a homomorphism")
    }

    /// `BS(1, m) -> Z`, `g ↦ 1`, `k ↦ 0`.
    pub fn bs_height(m: i64) -> Result<Self, MorphismError> {
        let domain = Group::new(GroupSpec::baumslag_solitar(m))?;
        let codomain = Group::new(GroupSpec::cyclic(0))?;
        Morphism::new(
            domain,
            codomain,
            vec![Element::integer(1), Element::integer(0)],
            Some(Section::Builtin(BuiltinSection::BsHeight)),
        )
    }

    /// `Z -> Z_n`.
    pub fn residue(n: u64) -> Result<Self, MorphismError> {
        let domain = Group::new(GroupSpec::cyclic(0))?;
        let codomain = Group::new(GroupSpec::cyclic(n))?;
        let image = codomain.generator(0);
        Morphism::new(
            domain,
            codomain,
            vec![image],
            Some(Section::Builtin(BuiltinSection::Residue)),
        )
    }

    /// The isomorphism from the semidirect model of D∞ to `<s, t | s², t²>`.
    pub fn dinf_iso() -> Self {
        let domain = Group::new(GroupSpec::InfiniteDihedral {}).expect("valid");
        let codomain = dihedral_word_model();
        let images = vec![
            codomain.parse("s t").expect("valid"),
            codomain.parse("s").expect("valid"),
        ];
        let section: SectionFn = Arc::new(crate::zoo::dinf_iso_inverse);
        Morphism::new(domain, codomain, images, Some(Section::Custom(section)))
            .expect("D∞ isomorphism is a homomorphism")
    }

    pub fn domain(&self) -> &Group {
        &self.domain
    }

    pub fn codomain(&self) -> &Group {
        &self.codomain
    }

    pub fn images(&self) -> &[Element] {
        &self.images
    }

    pub fn section(&self) -> Option<&Section> {
        self.section.as_ref()
    }

    pub fn has_section(&self) -> bool {
        self.section.is_some()
    }

    fn apply_word(&self, w: &crate::word::Word) -> Element {
        w.syllables()
            .iter()
            .fold(self.codomain.identity(), |acc, s| {
                let i = self
                    .domain
                    .alphabet()
                    .index_of(s.generator.as_str())
                    .expect("word over the domain alphabet");
                self.codomain
                    .mul(&acc, &self.codomain.pow(&self.images[i], &s.exponent))
            })
    }

    pub fn apply(&self, x: &Element) -> Element {
        self.apply_word(&self.domain.to_word(x))
    }

    pub fn in_kernel(&self, x: &Element) -> bool {
        self.codomain.is_identity(&self.apply(x))
    }

    pub fn lift(&self, q: &Element) -> Result<Element, MorphismError> {
        match &self.section {
            None => Err(MorphismError::NoSection),
            Some(Section::Builtin(b)) => Ok(b.lift(&self.domain, q)),
            Some(Section::Custom(f)) => Ok(f(q)),
        }
    }

    pub fn to_file(&self) -> MorphismFile {
        MorphismFile {
            domain: self.domain.spec().clone(),
            codomain: self.codomain.spec().clone(),
            images: self
                .domain
                .alphabet()
                .generators()
                .iter()
                .zip(&self.images)
                .map(|(g, x)| (g.to_string(), self.codomain.render(x)))
                .collect(),
            section: match &self.section {
                Some(Section::Builtin(b)) => Some(b.name().to_string()),
                _ => None,
            },
        }
    }
}

/// JSON form of a morphism:
/// `{"domain": .., "codomain": .., "images": {"g": "<word>"}, "section": "<name>" | null}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismFile {
    pub domain: GroupSpec,
    pub codomain: GroupSpec,
    pub images: BTreeMap<String, String>,
    #[serde(default)]
    pub section: Option<String>,
}

impl MorphismFile {
    pub fn from_json(text: &str) -> Result<Self, MorphismError> {
        serde_json::from_str(text).map_err(|e| MorphismError::Json(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("morphism file serializes")
    }

    pub fn into_morphism(self) -> Result<Morphism, MorphismError> {
        let domain = Group::new(self.domain)?;
        let codomain = Group::new(self.codomain)?;
        let section = self
            .section
            .as_deref()
            .map(BuiltinSection::from_name)
            .transpose()?
            .map(Section::Builtin);
        Morphism::from_word_images(domain, codomain, &self.images, section)
    }
}

/// Parses and validates a morphism file.
pub fn parse_morphism(text: &str) -> Result<Morphism, MorphismError> {
    MorphismFile::from_json(text)?.into_morphism()
}
