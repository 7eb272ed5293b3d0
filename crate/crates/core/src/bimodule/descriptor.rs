use serde::{Deserialize, Serialize};

use crate::ring::RingDescriptor;

/// Construction recipe of a bimodule.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BimoduleDescriptor {
    #[serde(flatten)]
    pub kind: BimoduleKind,
    pub left: RingDescriptor,
    pub right: RingDescriptor,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", content = "params", rename_all = "snake_case")]
pub enum BimoduleKind {
    /// `_S S _S`; `left` and `right` are the same ring.
    Regular {},
    /// `k x l` matrices over `base`, acted on by `k x k` and `l x l` matrices.
    MatrixShape { base: Box<BimoduleDescriptor>, k: u32, l: u32 },
    /// Left action pulled back along the ring map with table `image`
    /// from `left` into the left ring of `base`.
    RestrictLeft { base: Box<BimoduleDescriptor>, image: Vec<u32> },
    RestrictRight { base: Box<BimoduleDescriptor>, image: Vec<u32> },
    /// `_C M _Z` of `base`.
    Canonical { base: Box<BimoduleDescriptor> },
    /// Socle intersection over the semisimple quotients.
    Induced { base: Box<BimoduleDescriptor> },
    Derived { label: String },
}

impl BimoduleDescriptor {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("descriptor serializes")
    }

    pub fn from_json(s: &str) -> crate::Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn regular(ring: RingDescriptor) -> Self {
        BimoduleDescriptor { kind: BimoduleKind::Regular {}, left: ring.clone(), right: ring }
    }

    pub fn label(&self) -> String {
        match &self.kind {
            BimoduleKind::Regular {} => format!("regular {}", self.left.label()),
            BimoduleKind::MatrixShape { base, k, l } => format!("{k}x{l} over ({})", base.label()),
            BimoduleKind::RestrictLeft { base, .. } => {
                format!("({}) restricted to {} on the left", base.label(), self.left.label())
            }
            BimoduleKind::RestrictRight { base, .. } => {
                format!("({}) restricted to {} on the right", base.label(), self.right.label())
            }
            BimoduleKind::Canonical { base } => format!("canonical ({})", base.label()),
            BimoduleKind::Induced { base } => format!("induced socle ({})", base.label()),
            BimoduleKind::Derived { label } => label.clone(),
        }
    }
}
