use serde::{Deserialize, Serialize};

use super::{dichotomy_applies, GeoRing};
use crate::bimodule::regular_bimodule;
use crate::qf::{agreed_verdict, run_all_routes, QfVerdict};
use crate::ring::{center, FiniteRing};
use crate::translations::{canonical_bimodule, common_center, ring_c};
use crate::{Caps, Result, Side};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Block {
    pub order: usize,
    pub commutative: bool,
    pub field: bool,
}

/// Splitting of a semisimple ring by its primitive central idempotents.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockStructure {
    pub order: usize,
    pub blocks: Vec<Block>,
}

impl BlockStructure {
    /// `k` fields of order `q` each.
    pub fn is_fields(&self, k: usize, q: u64) -> bool {
        self.blocks.len() == k && self.blocks.iter().all(|b| b.field && b.order as u64 == q)
    }
}

pub fn block_structure(ring: &FiniteRing) -> BlockStructure {
    let zero = ring.zero();
    let central: Vec<u32> = center(ring).into_iter().filter(|&e| e != zero && ring.mul(e, e) == e).collect();
    let primitive: Vec<u32> = central
        .iter()
        .copied()
        .filter(|&e| !central.iter().any(|&f| f != e && ring.mul(e, f) == f))
        .collect();
    let blocks = primitive
        .iter()
        .map(|&e| {
            let mut members: Vec<u32> = ring.elements().map(|x| ring.mul(e, x)).collect();
            members.sort_unstable();
            members.dedup();
            let commutative = members.iter().all(|&a| members.iter().all(|&b| ring.mul(a, b) == ring.mul(b, a)));
            let field = commutative
                && members
                    .iter()
                    .filter(|&&a| a != zero)
                    .all(|&a| members.iter().any(|&b| ring.mul(a, b) == e));
            Block { order: members.len(), commutative, field }
        })
        .collect();
    BlockStructure { order: ring.order(), blocks }
}

/// QF verdicts for `_S S _S` and for the canonical bimodule `_C S _Z`, with
/// the shape of `C/J(C)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeoVerdict {
    pub label: String,
    pub order: usize,
    pub commutative: bool,
    pub t: u32,
    pub q: u64,
    pub regular: Vec<QfVerdict>,
    pub regular_qf: Option<bool>,
    pub canonical: Vec<QfVerdict>,
    pub canonical_qf: Option<bool>,
    pub c_order: u64,
    pub z_order: u64,
    pub c_bar: BlockStructure,
    /// `C/J(C)` is `t` copies of the residue field.
    pub c_bar_as_expected: bool,
    pub dichotomy_applies: bool,
    /// Canonical QF iff commutative; `None` when the hypotheses fail.
    pub dichotomy_holds: Option<bool>,
}

impl GeoVerdict {
    pub fn regular_holds(&self) -> bool {
        self.regular_qf == Some(true)
    }
}

pub fn geo_translation_verdict(geo: &GeoRing, caps: &Caps) -> Result<GeoVerdict> {
    let reg = regular_bimodule(&geo.ring)?;
    let regular = run_all_routes(&reg, caps)?;
    let c = ring_c(&reg, caps)?;
    let z = common_center(&reg, caps)?;
    let can = canonical_bimodule(&reg, caps)?;
    let canonical = run_all_routes(&can, caps)?;
    let c_bar = block_structure(&can.semisimple_quotient(Side::Left, caps.closure)?.ring);
    let commutative = geo.is_commutative();
    let canonical_qf = agreed_verdict(&canonical);
    let applies = dichotomy_applies(&geo.spec);
    Ok(GeoVerdict {
        label: geo.spec.label(),
        order: geo.ring.order(),
        commutative,
        t: geo.t,
        q: geo.q,
        regular_qf: agreed_verdict(&regular),
        regular,
        canonical_qf,
        canonical,
        c_order: c.order(),
        z_order: z.order(),
        c_bar_as_expected: c_bar.is_fields(geo.t as usize, geo.q),
        c_bar,
        dichotomy_applies: applies,
        dichotomy_holds: applies.then(|| canonical_qf == Some(commutative)),
    })
}
