use std::collections::BTreeSet;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{quotient_ring, FiniteRing, IdealSet};
use crate::closure::SubgroupBuilder;
use crate::{Error, Result, Side};

impl FiniteRing {
    /// `mask[a]` iff `a` is a unit. One-sided inverses are two-sided here.
    pub fn unit_mask(&self) -> &[bool] {
        self.units.get_or_init(|| {
            let mut mask = vec![false; self.order()];
            for a in self.elements() {
                if mask[a as usize] {
                    continue;
                }
                if let Some(x) = self.elements().find(|&x| self.mul(a, x) == self.one()) {
                    mask[a as usize] = true;
                    mask[x as usize] = true;
                }
            }
            mask
        })
    }

    pub fn is_unit(&self, a: u32) -> bool {
        self.unit_mask()[a as usize]
    }

    pub fn inverse(&self, a: u32) -> Option<u32> {
        if !self.is_unit(a) {
            return None;
        }
        self.elements().find(|&x| self.mul(a, x) == self.one())
    }
}

pub fn units(ring: &FiniteRing) -> Vec<u32> {
    ring.elements().filter(|&a| ring.is_unit(a)).collect()
}

/// `J(R) = { a : 1 - x a is a unit for every x }`.
pub fn jacobson_radical(ring: &FiniteRing) -> IdealSet {
    ring.radical
        .get_or_init(|| {
            let one = ring.one();
            let members = ring
                .elements()
                .filter(|&a| ring.elements().all(|x| ring.is_unit(ring.sub(one, ring.mul(x, a)))))
                .collect();
            IdealSet::new(Side::TwoSided, members)
        })
        .clone()
}

/// Smallest `side`-ideal containing `gens`.
pub fn ideal_generated(ring: &FiniteRing, gens: &[u32], side: Side) -> IdealSet {
    let group = ring.additive_group();
    let maps = ring.generator_maps(side);
    let refs: Vec<&[u32]> = maps.iter().map(|m| m.as_slice()).collect();
    let mut b = SubgroupBuilder::new(&group);
    b.close(gens.iter().copied(), &refs);
    IdealSet::new(side, b.into_sorted())
}

/// Additive subgroup generated by all products `a b`, `a` in `x`, `b` in `y`.
pub fn ideal_product(ring: &FiniteRing, x: &[u32], y: &[u32]) -> Vec<u32> {
    let group = ring.additive_group();
    let gx = additive_generators(ring, x);
    let gy = additive_generators(ring, y);
    let mut b = SubgroupBuilder::new(&group);
    for &a in &gx {
        for &c in &gy {
            b.adjoin(ring.mul(a, c));
        }
    }
    b.into_sorted()
}

fn additive_generators(ring: &FiniteRing, members: &[u32]) -> Vec<u32> {
    let group = ring.additive_group();
    let mut b = SubgroupBuilder::new(&group);
    for &x in members {
        b.adjoin(x);
    }
    b.generators().to_vec()
}

/// `[I, I^2, I^3, ..]` up to and including the first zero power, or until
/// the chain stabilizes at a nonzero ideal.
pub fn power_chain(ring: &FiniteRing, ideal: &[u32]) -> Vec<Vec<u32>> {
    let mut chain = vec![ideal.to_vec()];
    loop {
        let last = chain.last().expect("nonempty");
        if last.len() <= 1 {
            return chain;
        }
        let next = ideal_product(ring, last, ideal);
        if next.len() == last.len() {
            return chain;
        }
        chain.push(next);
    }
}

/// Least `k` with `I^k = 0`, or `None` when `I` is not nilpotent.
pub fn nilpotency_index(ring: &FiniteRing, ideal: &[u32]) -> Option<u32> {
    let chain = power_chain(ring, ideal);
    let last = chain.last().expect("nonempty");
    (last.len() == 1).then_some(if ideal.len() == 1 { 1 } else { chain.len() as u32 })
}

/// Every `side`-ideal, from principal ideals closed under sums.
pub fn all_ideals(ring: &FiniteRing, side: Side, lattice_cap: usize) -> Result<Vec<IdealSet>> {
    if ring.order() > lattice_cap {
        return Err(Error::cap("ideal lattice ring order", lattice_cap as u64, ring.order() as u64));
    }
    let group = ring.additive_group();
    let mut principal: Vec<(Vec<u32>, Vec<u32>)> = Vec::new();
    let mut seen: BTreeSet<Vec<u32>> = BTreeSet::new();
    for a in ring.elements() {
        let ideal = ideal_generated(ring, &[a], side).members;
        if seen.insert(ideal.clone()) {
            let gens = additive_generators(ring, &ideal);
            principal.push((ideal, gens));
        }
    }
    let mut all: Vec<(Vec<u32>, Vec<u32>)> = principal.clone();
    let mut i = 0;
    while i < all.len() {
        for (pm, pg) in &principal {
            if crate::closure::is_subset_sorted(pm, &all[i].0) {
                continue;
            }
            let mut b = SubgroupBuilder::new(&group);
            for &g in all[i].1.iter().chain(pg) {
                b.adjoin(g);
            }
            let gens = b.generators().to_vec();
            let sum = b.into_sorted();
            if seen.insert(sum.clone()) {
                all.push((sum, gens));
            }
        }
        i += 1;
    }
    let mut out: Vec<IdealSet> = all.into_iter().map(|(m, _)| IdealSet::new(side, m)).collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.members.cmp(&b.members)));
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MaximalMode {
    /// Scan the full ideal lattice of the ring.
    Lattice,
    /// Work in `R/J(R)` and pull back.
    RadicalShortcut,
}

/// Maximal proper `side`-ideals.
pub fn maximal_ideals(
    ring: &Arc<FiniteRing>,
    side: Side,
    mode: MaximalMode,
    lattice_cap: usize,
) -> Result<Vec<IdealSet>> {
    match mode {
        MaximalMode::Lattice => {
            let all = all_ideals(ring, side, lattice_cap)?;
            Ok(maximal_in(all, ring.order()))
        }
        MaximalMode::RadicalShortcut => {
            let j = jacobson_radical(ring);
            if j.is_zero() {
                let all = all_ideals(ring, side, lattice_cap)?;
                return Ok(maximal_in(all, ring.order()));
            }
            let (quot, proj) = quotient_ring(ring, &j)?;
            let all = all_ideals(&quot, side, lattice_cap)?;
            let mut out: Vec<IdealSet> = maximal_in(all, quot.order())
                .into_iter()
                .map(|m| {
                    let members = ring.elements().filter(|&x| m.contains(proj.apply(x))).collect();
                    IdealSet::new(side, members)
                })
                .collect();
            out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.members.cmp(&b.members)));
            Ok(out)
        }
    }
}

fn maximal_in(all: Vec<IdealSet>, order: usize) -> Vec<IdealSet> {
    let proper: Vec<IdealSet> = all.into_iter().filter(|i| i.len() < order).collect();
    proper
        .iter()
        .filter(|i| {
            !proper
                .iter()
                .any(|k| k.len() > i.len() && crate::closure::is_subset_sorted(&i.members, &k.members))
        })
        .cloned()
        .collect()
}

pub fn center(ring: &FiniteRing) -> Vec<u32> {
    let gens = ring.generators();
    ring.elements()
        .filter(|&z| gens.iter().all(|&g| ring.mul(z, g) == ring.mul(g, z)))
        .collect()
}

/// `None` when the ring is simple, otherwise a proper nonzero two-sided
/// ideal.
pub fn simplicity_witness(ring: &FiniteRing) -> Option<IdealSet> {
    if ring.order() == 1 {
        return Some(IdealSet::new(Side::TwoSided, vec![ring.zero()]));
    }
    ring.elements().filter(|&a| a != ring.zero()).find_map(|a| {
        let ideal = ideal_generated(ring, &[a], Side::TwoSided);
        (ideal.len() < ring.order()).then_some(ideal)
    })
}

pub fn is_simple(ring: &FiniteRing) -> bool {
    simplicity_witness(ring).is_none()
}

pub fn idempotents(ring: &FiniteRing) -> Vec<u32> {
    ring.elements().filter(|&e| ring.mul(e, e) == e).collect()
}

/// Isomorphism-invariant shadow of a ring.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingProfile {
    pub order: usize,
    pub radical_order: usize,
    pub nilpotency_index: u32,
    pub center_order: usize,
    pub semisimple_quotient_simple: bool,
    pub unit_count: usize,
}

pub fn ring_profile(ring: &Arc<FiniteRing>) -> Result<RingProfile> {
    let j = jacobson_radical(ring);
    let nil = nilpotency_index(ring, &j.members)
        .ok_or_else(|| Error::Internal("Jacobson radical is not nilpotent".into()))?;
    let quotient_simple = if j.is_zero() {
        is_simple(ring)
    } else {
        is_simple(&quotient_ring(ring, &j)?.0)
    };
    Ok(RingProfile {
        order: ring.order(),
        radical_order: j.len(),
        nilpotency_index: nil,
        center_order: center(ring).len(),
        semisimple_quotient_simple: quotient_simple,
        unit_count: ring.unit_mask().iter().filter(|&&u| u).count(),
    })
}
