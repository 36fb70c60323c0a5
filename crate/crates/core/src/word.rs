//! Reduced words over a finite alphabet.
//!
//! A [`Word`] is a list of syllables `(generator, exponent)` with nonzero
//! exponents and no two adjacent syllables on the same generator. Every
//! element in the crate is read and printed through this syntax.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("invalid generator name `{0}`")]
    InvalidGeneratorName(String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("malformed exponent in token `{0}`")]
    MalformedExponent(String),
    #[error("duplicate generator `{0}` in alphabet")]
    DuplicateGenerator(String),
}

/// A generator symbol, matching `[a-zA-Z][a-zA-Z0-9_]*`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Generator(Arc<str>);

impl Generator {
    pub fn new(name: &str) -> Result<Self, WordError> {
        let mut chars = name.chars();
        let head_ok = chars.next().is_some_and(|c| c.is_ascii_alphabetic());
        if head_ok && chars.all(|c| c.is_ascii_alphanumeric() || c == '_') {
            Ok(Generator(Arc::from(name)))
        } else {
            Err(WordError::InvalidGeneratorName(name.to_string()))
        }
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Debug for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Syllable {
    pub generator: Generator,
    pub exponent: BigInt,
}

/// A freely reduced word. The empty word is the identity.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    syllables: Vec<Syllable>,
}

/// Pushes a syllable onto a reduced stack, merging with the top and
/// normalizing exponents through `modulus` (0 = no relation on that generator).
fn push_syllable(
    stack: &mut Vec<Syllable>,
    generator: Generator,
    exponent: BigInt,
    modulus: &impl Fn(&Generator) -> u64,
) {
    let normalize = |g: &Generator, e: BigInt| -> BigInt {
        match modulus(g) {
            0 => e,
            n => {
                let n = BigInt::from(n);
                ((e % &n) + &n) % &n
            }
        }
    };
    let exponent = normalize(&generator, exponent);
    if exponent.is_zero() {
        return;
    }
    match stack.last_mut() {
        Some(top) if top.generator == generator => {
            let merged = normalize(&generator, &top.exponent + exponent);
            if merged.is_zero() {
                stack.pop();
            } else {
                top.exponent = merged;
            }
        }
        _ => stack.push(Syllable {
            generator,
            exponent,
        }),
    }
}

impl Word {
    pub fn identity() -> Self {
        Word::default()
    }

    /// `generator^exponent` as a one-syllable word (empty if the exponent is 0).
    pub fn letter(generator: Generator, exponent: impl Into<BigInt>) -> Self {
        Word::reduce([(generator, exponent.into())])
    }

    /// Free reduction of an arbitrary syllable list.
    pub fn reduce(raw: impl IntoIterator<Item = (Generator, BigInt)>) -> Self {
        Word::reduce_with(raw, |_| 0)
    }

    /// Reduction in a free product of cyclic groups: `modulus(g)` is the
    /// order of `g` (0 for infinite order), and exponents of finite-order
    /// generators are brought into `1..n`.
    pub fn reduce_with(
        raw: impl IntoIterator<Item = (Generator, BigInt)>,
        modulus: impl Fn(&Generator) -> u64,
    ) -> Self {
        let mut stack = Vec::new();
        for (g, e) in raw {
            push_syllable(&mut stack, g, e, &modulus);
        }
        Word { syllables: stack }
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.syllables
    }

    pub fn into_syllables(self) -> Vec<Syllable> {
        self.syllables
    }

    pub fn is_identity(&self) -> bool {
        self.syllables.is_empty()
    }

    pub fn syllable_count(&self) -> usize {
        self.syllables.len()
    }

    /// Sum of absolute exponents.
    pub fn letter_length(&self) -> BigInt {
        self.syllables.iter().map(|s| s.exponent.abs()).sum()
    }

    pub fn concat(&self, other: &Word) -> Word {
        self.concat_with(other, |_| 0)
    }

    pub(crate) fn concat_with(&self, other: &Word, modulus: impl Fn(&Generator) -> u64) -> Word {
        let mut stack = self.syllables.clone();
        let mut rest = other.syllables.iter();
        // Only the seam can cancel; once a syllable lands without merging the
        // remainder of `other` is already reduced.
        for s in rest.by_ref() {
            let before = stack.len();
            let merges = stack.last().is_some_and(|t| t.generator == s.generator);
            push_syllable(
                &mut stack,
                s.generator.clone(),
                s.exponent.clone(),
                &modulus,
            );
            if !(merges && stack.len() < before) {
                break;
            }
        }
        stack.extend(rest.cloned());
        Word { syllables: stack }
    }

    pub fn inverse(&self) -> Word {
        self.inverse_with(|_| 0)
    }

    pub(crate) fn inverse_with(&self, modulus: impl Fn(&Generator) -> u64) -> Word {
        Word::reduce_with(
            self.syllables
                .iter()
                .rev()
                .map(|s| (s.generator.clone(), -s.exponent.clone())),
            modulus,
        )
    }

    /// `x · self · x⁻¹`.
    pub fn conjugated_by(&self, x: &Word) -> Word {
        x.concat(self).concat(&x.inverse())
    }

    pub fn pow(&self, n: &BigInt) -> Word {
        if n.is_negative() {
            return self.inverse().pow(&-n);
        }
        crate::util::power(Word::identity(), self.clone(), n, |a, b| a.concat(b))
    }

    /// Renames every generator; the result is re-reduced.
    pub fn map_generators(&self, f: impl Fn(&Generator) -> Generator) -> Word {
        Word::reduce(
            self.syllables
                .iter()
                .map(|s| (f(&s.generator), s.exponent.clone())),
        )
    }
}

/// `x · w · x⁻¹` in the free group.
pub fn conjugate(x: &Word, w: &Word) -> Word {
    w.conjugated_by(x)
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_word(self))
    }
}

/// Canonical text form: `1` for the identity, otherwise space separated
/// tokens `name` or `name^e`.
pub fn render_word(w: &Word) -> String {
    if w.is_identity() {
        return "1".to_string();
    }
    let mut out = String::new();
    for (i, s) in w.syllables.iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        out.push_str(s.generator.as_str());
        if !s.exponent.is_one() {
            out.push('^');
            out.push_str(&s.exponent.to_string());
        }
    }
    out
}

/// An ordered set of generator names.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    names: Vec<Generator>,
}

impl Alphabet {
    pub fn new(names: Vec<Generator>) -> Result<Self, WordError> {
        for (i, g) in names.iter().enumerate() {
            if names[..i].contains(g) {
                return Err(WordError::DuplicateGenerator(g.to_string()));
            }
        }
        Ok(Alphabet { names })
    }

    pub fn from_names<S: AsRef<str>>(names: &[S]) -> Result<Self, WordError> {
        let gens = names
            .iter()
            .map(|s| Generator::new(s.as_ref()))
            .collect::<Result<Vec<_>, _>>()?;
        Alphabet::new(gens)
    }

    pub fn generators(&self) -> &[Generator] {
        &self.names
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|g| g.as_str() == name)
    }

    pub fn contains(&self, g: &Generator) -> bool {
        self.names.contains(g)
    }

    /// Fails with `UnknownGenerator` on the first letter outside the alphabet.
    pub fn check(&self, w: &Word) -> Result<(), WordError> {
        match w.syllables.iter().find(|s| !self.contains(&s.generator)) {
            Some(s) => Err(WordError::UnknownGenerator(s.generator.to_string())),
            None => Ok(()),
        }
    }
}

/// Parses whitespace separated `name` / `name^int` tokens; `1` is the identity.
pub fn parse_word(text: &str, alphabet: &Alphabet) -> Result<Word, WordError> {
    let mut raw = Vec::new();
    for token in text.split_whitespace() {
        if token == "1" {
            continue;
        }
        let (name, exponent) = match token.split_once('^') {
            Some((name, exp)) => {
                let digits = exp.strip_prefix(['-', '+']).unwrap_or(exp);
                if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                    return Err(WordError::MalformedExponent(token.to_string()));
                }
                let e = BigInt::from_str(exp)
                    .map_err(|_| WordError::MalformedExponent(token.to_string()))?;
                (name, e)
            }
            None => (token, BigInt::one()),
        };
        let idx = alphabet
            .index_of(name)
            .ok_or_else(|| WordError::UnknownGenerator(name.to_string()))?;
        raw.push((alphabet.names[idx].clone(), exponent));
    }
    Ok(Word::reduce(raw))
}
