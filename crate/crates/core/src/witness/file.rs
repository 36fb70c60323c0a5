use serde::{Deserialize, Serialize};

use super::{Witness, WitnessError};
use crate::zoo::{Group, GroupSpec};

/// JSON form of a witness:
/// `{"group": <GroupSpec>, "base": "<word>", "conjugators": ["<word>", ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessFile {
    pub group: GroupSpec,
    pub base: String,
    pub conjugators: Vec<String>,
}

impl WitnessFile {
    pub fn from_json(text: &str) -> Result<Self, WitnessError> {
        serde_json::from_str(text).map_err(|e| WitnessError::Json(e.to_string()))
    }

    /// Canonical pretty-printed JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("witness file serializes");
        s.push('\n');
        s
    }

    pub fn into_witness(self) -> Result<Witness, WitnessError> {
        let group = Group::new(self.group)?;
        let base = group.parse(&self.base)?;
        let conjugators = self
            .conjugators
            .iter()
            .map(|c| group.parse(c))
            .collect::<Result<Vec<_>, _>>()?;
        Witness::new(group, base, conjugators)
    }
}

impl Witness {
    pub fn from_json(text: &str) -> Result<Self, WitnessError> {
        WitnessFile::from_json(text)?.into_witness()
    }

    pub fn to_json(&self) -> String {
        self.to_file().to_json()
    }
}

impl Serialize for Witness {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_file().serialize(s)
    }
}
