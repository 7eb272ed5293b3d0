use serde::{Deserialize, Serialize};

use crate::geo::GeoSpec;

/// Construction recipe of a ring. Identical descriptors build identical
/// tables.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RingDescriptor {
    #[serde(flatten)]
    pub kind: RingKind,
    #[serde(default)]
    pub cap: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", content = "params", rename_all = "snake_case")]
pub enum RingKind {
    Residue { m: u64 },
    Galois { p: u64, d: u32, r: u32 },
    Matrix { base: Box<RingDescriptor>, n: u32 },
    /// Quotient by the two-sided ideal generated by `gens`.
    Quotient { base: Box<RingDescriptor>, gens: Vec<u32> },
    RadicalQuotient { base: Box<RingDescriptor> },
    DirectSum { parts: Vec<RingDescriptor> },
    Geo(GeoSpec),
    /// Built from other data (translation rings, table input); not rebuildable
    /// from the descriptor alone.
    Derived { label: String },
}

impl RingDescriptor {
    pub fn new(kind: RingKind) -> Self {
        RingDescriptor { kind, cap: None }
    }

    pub fn residue(m: u64) -> Self {
        Self::new(RingKind::Residue { m })
    }

    pub fn galois(p: u64, d: u32, r: u32) -> Self {
        Self::new(RingKind::Galois { p, d, r })
    }

    pub fn matrix(base: RingDescriptor, n: u32) -> Self {
        Self::new(RingKind::Matrix { base: Box::new(base), n })
    }

    pub fn derived(label: impl Into<String>) -> Self {
        Self::new(RingKind::Derived { label: label.into() })
    }

    pub fn with_cap(mut self, cap: u64) -> Self {
        self.cap = Some(cap);
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("descriptor serializes")
    }

    pub fn from_json(s: &str) -> crate::Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    /// Short human-readable label.
    pub fn label(&self) -> String {
        match &self.kind {
            RingKind::Residue { m } => format!("Z/{m}"),
            RingKind::Galois { p, d, r } => format!("GR({},{r})", p.pow(*d)),
            RingKind::Matrix { base, n } => format!("M_{n}({})", base.label()),
            RingKind::Quotient { base, gens } => format!("{}/({gens:?})", base.label()),
            RingKind::RadicalQuotient { base } => format!("{}/J", base.label()),
            RingKind::DirectSum { parts } => {
                parts.iter().map(|p| p.label()).collect::<Vec<_>>().join(" + ")
            }
            RingKind::Geo(spec) => spec.label(),
            RingKind::Derived { label } => label.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_shape() {
        let d = RingDescriptor::residue(4);
        assert_eq!(d.to_json(), r#"{"kind":"residue","params":{"m":4},"cap":null}"#);
        let m = RingDescriptor::matrix(RingDescriptor::galois(2, 1, 2), 2).with_cap(1 << 20);
        let back = RingDescriptor::from_json(&m.to_json()).unwrap();
        assert_eq!(back, m);
        assert_eq!(back.to_json(), m.to_json());
    }
}
