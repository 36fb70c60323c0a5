use serde::{Deserialize, Serialize};

/// Serializable description of a group family instance.
///
/// JSON form is `{"family": "<name>", ...parameters}`. Generator names are
/// optional on input; [`crate::zoo::Group::new`] fills in defaults
/// (`a`, `b`, `c`, ... ; `x1`, `x2`, ... beyond 26 generators).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case", deny_unknown_fields)]
pub enum GroupSpec {
    /// Free group of rank `rank >= 1`.
    Free {
        rank: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        generators: Option<Vec<String>>,
    },
    /// `Z/order`, with `order = 0` meaning `Z`.
    Cyclic {
        order: u64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        generator: Option<String>,
    },
    /// Free product of cyclic groups of the given orders (0 = infinite).
    FreeProductOfCyclics {
        orders: Vec<u64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        generators: Option<Vec<String>>,
    },
    /// `Z ⋊ Z/2` on generators `k` (translation) and `g` (reflection).
    InfiniteDihedral {},
    /// `BS(1, m) = <g, k | g k g^-1 = k^m>`, `m != 0`.
    BaumslagSolitar { m: i64 },
    /// Generators are the component generators suffixed `_1` and `_2`.
    DirectProduct {
        left: Box<GroupSpec>,
        right: Box<GroupSpec>,
    },
    /// `Z^rank ⊕ Z/d_1 ⊕ ... ⊕ Z/d_s` with `d_i >= 2` and `d_i | d_{i+1}`.
    FgAbelian {
        rank: usize,
        #[serde(default)]
        factors: Vec<u64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        generators: Option<Vec<String>>,
    },
}

impl GroupSpec {
    pub fn free(rank: usize) -> Self {
        GroupSpec::Free {
            rank,
            generators: None,
        }
    }

    pub fn free_named(names: &[&str]) -> Self {
        GroupSpec::Free {
            rank: names.len(),
            generators: Some(names.iter().map(|s| s.to_string()).collect()),
        }
    }

    pub fn cyclic(order: u64) -> Self {
        GroupSpec::Cyclic {
            order,
            generator: None,
        }
    }

    pub fn cyclic_named(order: u64, name: &str) -> Self {
        GroupSpec::Cyclic {
            order,
            generator: Some(name.to_string()),
        }
    }

    pub fn free_product(orders: &[u64]) -> Self {
        GroupSpec::FreeProductOfCyclics {
            orders: orders.to_vec(),
            generators: None,
        }
    }

    pub fn free_product_named(orders: &[u64], names: &[&str]) -> Self {
        GroupSpec::FreeProductOfCyclics {
            orders: orders.to_vec(),
            generators: Some(names.iter().map(|s| s.to_string()).collect()),
        }
    }

    pub fn dihedral() -> Self {
        GroupSpec::InfiniteDihedral {}
    }

    pub fn baumslag_solitar(m: i64) -> Self {
        GroupSpec::BaumslagSolitar { m }
    }

    pub fn product(left: GroupSpec, right: GroupSpec) -> Self {
        GroupSpec::DirectProduct {
            left: Box::new(left),
            right: Box::new(right),
        }
    }

    pub fn abelian(rank: usize, factors: &[u64]) -> Self {
        GroupSpec::FgAbelian {
            rank,
            factors: factors.to_vec(),
            generators: None,
        }
    }

    pub fn abelian_named(rank: usize, factors: &[u64], names: &[&str]) -> Self {
        GroupSpec::FgAbelian {
            rank,
            factors: factors.to_vec(),
            generators: Some(names.iter().map(|s| s.to_string()).collect()),
        }
    }

    pub fn family_name(&self) -> &'static str {
        match self {
            GroupSpec::Free { .. } => "free",
            GroupSpec::Cyclic { .. } => "cyclic",
            GroupSpec::FreeProductOfCyclics { .. } => "free_product_of_cyclics",
            GroupSpec::InfiniteDihedral {} => "infinite_dihedral",
            GroupSpec::BaumslagSolitar { .. } => "baumslag_solitar",
            GroupSpec::DirectProduct { .. } => "direct_product",
            GroupSpec::FgAbelian { .. } => "fg_abelian",
        }
    }
}

pub(crate) fn default_names(n: usize) -> Vec<String> {
    if n <= 26 {
        (0..n)
            .map(|i| ((b'a' + i as u8) as char).to_string())
            .collect()
    } else {
        (1..=n).map(|i| format!("x{i}")).collect()
    }
}
