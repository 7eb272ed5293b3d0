//! Translations of a bimodule, the ring of translations `C`, the common
//! center `Z`, and the canonical bimodule `_C M _Z`.

mod endo;

pub use endo::{closure_ring, generated_ring, span_ring, Endo, EndoRing, EndoSpace};

use std::collections::HashMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::bimodule::{Acting, BimoduleDescriptor, BimoduleKind, FiniteBimodule};
use crate::ring::{jacobson_radical, FiniteRing, RingDescriptor, RingRule, TABLE_LIMIT};
use crate::{Caps, Error, Result, Side};

/// `m -> a m`.
pub fn hat(bm: &FiniteBimodule, a: u32) -> Result<Endo> {
    bm.translation(Side::Left, a)
        .ok_or_else(|| Error::Unsupported("left side acts by unlisted operators".into()))
}

/// `m -> m b`.
pub fn check(bm: &FiniteBimodule, b: u32) -> Result<Endo> {
    bm.translation(Side::Right, b)
        .ok_or_else(|| Error::Unsupported("right side acts by unlisted operators".into()))
}

fn space_of(bm: &FiniteBimodule) -> Arc<EndoSpace> {
    EndoSpace::single(bm.carrier().clone())
}

fn gen_endos(bm: &FiniteBimodule, side: Side) -> Vec<Endo> {
    bm.maps(side).iter().map(|g| Endo::from_map(g)).collect()
}

/// The image `Â` (left) or `B̌` (right) of the acting ring in `End(M)`.
pub fn translation_ring(bm: &FiniteBimodule, side: Side, caps: &Caps) -> Result<EndoRing> {
    if let Acting::Operators { ring, .. } = bm.acting(side) {
        return match ring.members() {
            Some(m) => EndoRing::from_members(space_of(bm), m.to_vec(), ring.label()),
            None => Err(Error::Unsupported("operator ring is not enumerated".into())),
        };
    }
    let label = if side == Side::Left { "A^" } else { "B^" };
    closure_ring(&space_of(bm), &gen_endos(bm, side), caps.closure, label)
}

/// The ring of translations: generated in `End(M)` by all left and right
/// translations.
pub fn ring_c(bm: &FiniteBimodule, caps: &Caps) -> Result<EndoRing> {
    generated_ring(&space_of(bm), &gen_endos(bm, Side::TwoSided), caps.closure, "C")
}

/// The common center `Â ∩ B̌`.
pub fn common_center(bm: &FiniteBimodule, caps: &Caps) -> Result<EndoRing> {
    let a = translation_ring(bm, Side::Left, caps)?;
    let b = translation_ring(bm, Side::Right, caps)?;
    let members = sorted_intersection(a.members().expect("enumerated"), b.members().expect("enumerated"));
    EndoRing::from_members(space_of(bm), members, "Z")
}

fn sorted_intersection(a: &[Endo], b: &[Endo]) -> Vec<Endo> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i].clone());
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// Members of an enumerated endo ring commuting with all its generators.
pub fn endo_center(ring: &EndoRing) -> Result<Vec<Endo>> {
    let members = ring
        .members()
        .ok_or_else(|| Error::Unsupported("center of an unlisted ring".into()))?;
    let space = ring.space();
    Ok(members
        .iter()
        .filter(|z| ring.generators().iter().all(|g| space.compose(z, g) == space.compose(g, z)))
        .cloned()
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CenterReport {
    pub common_center_order: usize,
    pub centers_intersection_order: usize,
    /// `Â ∩ B̌ = Z(Â) ∩ Z(B̌)`.
    pub equal: bool,
    pub commutative: bool,
    /// `Z(Â) = Z(B̌)` as table sets.
    pub centers_equal: bool,
}

/// Compare `Â ∩ B̌` with `Z(Â) ∩ Z(B̌)` by exhaustive table-set computation.
pub fn center_intersection_check(bm: &FiniteBimodule, caps: &Caps) -> Result<CenterReport> {
    let a = translation_ring(bm, Side::Left, caps)?;
    let b = translation_ring(bm, Side::Right, caps)?;
    let z = sorted_intersection(a.members().expect("enumerated"), b.members().expect("enumerated"));
    let za = endo_center(&a)?;
    let zb = endo_center(&b)?;
    let zz = sorted_intersection(&za, &zb);
    let space = a.space().clone();
    let commutative = z.iter().all(|x| z.iter().all(|y| space.compose(x, y) == space.compose(y, x)));
    Ok(CenterReport {
        common_center_order: z.len(),
        centers_intersection_order: zz.len(),
        equal: z == zz,
        commutative,
        centers_equal: za == zb,
    })
}

struct EndoTable {
    space: Arc<EndoSpace>,
    members: Vec<Endo>,
    index: HashMap<Endo, u32>,
}

impl RingRule for EndoTable {
    fn add(&self, a: u32, b: u32) -> u32 {
        self.index[&self.space.add(&self.members[a as usize], &self.members[b as usize])]
    }
    fn neg(&self, a: u32) -> u32 {
        self.index[&self.space.neg(&self.members[a as usize])]
    }
    fn mul(&self, a: u32, b: u32) -> u32 {
        self.index[&self.space.compose(&self.members[a as usize], &self.members[b as usize])]
    }
}

/// An enumerated endo ring as a [`FiniteRing`]: elements are the members in
/// sorted table order, `+` is pointwise and `*` is composition.
pub fn endo_ring_as_ring(e: &EndoRing, size_cap: u64) -> Result<Arc<FiniteRing>> {
    let members = e
        .members()
        .ok_or_else(|| Error::Unsupported(format!("{} is not enumerated", e.label())))?
        .to_vec();
    if members.len() as u64 > size_cap {
        return Err(Error::cap("endo ring order", size_cap, members.len() as u64));
    }
    let space = e.space().clone();
    let index: HashMap<Endo, u32> = members.iter().cloned().enumerate().map(|(i, m)| (m, i as u32)).collect();
    let zero = index[&space.zero()];
    let one = index[&space.identity()];
    let n = members.len();
    let rule = EndoTable { space, members, index };
    Ok(Arc::new(FiniteRing::from_rule(
        n,
        zero,
        one,
        Arc::new(rule),
        RingDescriptor::derived(e.label()),
        None,
    )?))
}

/// `_C M _Z`: `C` acts by evaluation on the left, `Z` on the right. `C` is
/// carried as a listed ring when small and as an operator ring otherwise.
pub fn canonical_bimodule(bm: &FiniteBimodule, caps: &Caps) -> Result<FiniteBimodule> {
    let c = ring_c(bm, caps)?;
    let z = common_center(bm, caps)?;
    let n = bm.order();
    let base_label = bm.descriptor().label();
    let left = if c.is_enumerated() && c.order() as usize <= TABLE_LIMIT {
        let cr = endo_ring_as_ring(&c, caps.size)?;
        let members = c.members().expect("enumerated").to_vec();
        Acting::from_ring(cr, n, |x, m| members[x as usize].apply(m))?
    } else {
        Acting::from_operators(Arc::new(c))
    };
    let zr = endo_ring_as_ring(&z, caps.size)?;
    let zm = z.members().expect("enumerated").to_vec();
    let right = Acting::from_ring(zr, n, |x, m| zm[x as usize].apply(m))?;
    let descriptor = BimoduleDescriptor {
        kind: BimoduleKind::Canonical { base: Box::new(bm.descriptor().clone()) },
        left: RingDescriptor::derived(format!("C({base_label})")),
        right: RingDescriptor::derived(format!("Z({base_label})")),
    };
    FiniteBimodule::new(bm.carrier().clone(), left, right, descriptor)
}

/// `c ∈ J(C)` for `c` in the ring of translations of `bm`: `c` kills every
/// composition factor of `M` as a sub-bimodule lattice (= `C`-module).
pub fn in_radical_of_c(bm: &FiniteBimodule, c: &Endo) -> bool {
    bm.kills_composition_factors(Side::TwoSided, &c.to_map())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SideCompatibility {
    /// `|J(Â)|` (or `|J(B̌)|`).
    pub radical_order: usize,
    /// `|J(C) ∩ Â|`.
    pub intersection_order: usize,
    pub holds: bool,
    /// A table in exactly one of the two sets.
    pub witness: Option<Endo>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RadicalCompatibility {
    pub left: SideCompatibility,
    pub right: SideCompatibility,
}

impl RadicalCompatibility {
    pub fn holds(&self) -> bool {
        self.left.holds && self.right.holds
    }
}

/// `J(Â) = J(C) ∩ Â` and `J(B̌) = J(C) ∩ B̌`.
pub fn radical_compatibility_check(bm: &FiniteBimodule, caps: &Caps) -> Result<RadicalCompatibility> {
    let side_check = |side: Side| -> Result<SideCompatibility> {
        let t = translation_ring(bm, side, caps)?;
        let ring = endo_ring_as_ring(&t, caps.size)?;
        let members = t.members().expect("enumerated");
        let j: Vec<Endo> = jacobson_radical(&ring).members.iter().map(|&i| members[i as usize].clone()).collect();
        let cap: Vec<Endo> = members.iter().filter(|e| in_radical_of_c(bm, e)).cloned().collect();
        let witness = j
            .iter()
            .find(|e| cap.binary_search(e).is_err())
            .or_else(|| cap.iter().find(|e| j.binary_search(e).is_err()))
            .cloned();
        Ok(SideCompatibility { radical_order: j.len(), intersection_order: cap.len(), holds: j == cap, witness })
    };
    Ok(RadicalCompatibility { left: side_check(Side::Left)?, right: side_check(Side::Right)? })
}

/// Serializable form of an endo ring: generators plus either the full
/// member list or the span rows.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EndoRingRecord {
    pub label: String,
    pub order: u64,
    pub generators: Vec<Endo>,
    pub members: Option<Vec<Endo>>,
}

impl EndoRingRecord {
    pub fn of(ring: &EndoRing) -> Self {
        EndoRingRecord {
            label: ring.label().to_string(),
            order: ring.order(),
            generators: ring.generators().to_vec(),
            members: ring.members().map(|m| m.to_vec()),
        }
    }
}

/// Positions of the members of `sub` inside the sorted `all`.
pub fn positions(all: &[Endo], sub: &[Endo]) -> Vec<u32> {
    sub.iter()
        .filter_map(|e| all.binary_search(e).ok().map(|i| i as u32))
        .collect()
}
