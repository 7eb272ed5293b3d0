use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::bimodule::FiniteBimodule;
use crate::ring::{all_ideals, ideal_generated, FiniteRing};
use crate::{Caps, Error, Result, Side};

/// A module map from an ideal that does not extend to the whole ring,
/// given by the images of the ideal's generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BaerWitness {
    pub ideal: Vec<u32>,
    /// `(generator, image)` pairs.
    pub assignment: Vec<(u32, u32)>,
    /// The whole map as `(x, f(x))`, sorted by `x`.
    pub map: Vec<(u32, u32)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BaerReport {
    pub side: Side,
    pub injective: bool,
    pub ideals_checked: usize,
    pub maps_checked: u64,
    pub witness: Option<BaerWitness>,
}

/// `a * g` for a left ideal, `g * a` for a right one.
fn ring_act(ring: &FiniteRing, side: Side, a: u32, g: u32) -> u32 {
    match side {
        Side::Left => ring.mul(a, g),
        _ => ring.mul(g, a),
    }
}

/// Greedy generators of an ideal as a `side`-module over the ring.
fn module_generators(ring: &FiniteRing, side: Side, ideal: &[u32]) -> Vec<u32> {
    let mut gens = Vec::new();
    let mut span = vec![ring.zero()];
    for &x in ideal {
        if span.binary_search(&x).is_err() {
            gens.push(x);
            span = ideal_generated(ring, &gens, side).members;
        }
    }
    gens
}

/// Odometer over `base^len` tuples.
fn next_tuple(t: &mut [u32], base: u32) -> bool {
    for d in t.iter_mut() {
        *d += 1;
        if *d < base {
            return true;
        }
        *d = 0;
    }
    false
}

/// Baer's criterion for the `side`-module `M`: every module map from a
/// `side`-ideal `I` into `M` is `x -> x m` (or `m x`) for some `m`. Maps are
/// enumerated as generator assignments that respect every relation among
/// the generators. Cap-guarded by `caps.homs`.
pub fn is_injective_baer(bm: &FiniteBimodule, side: Side, caps: &Caps) -> Result<BaerReport> {
    if side == Side::TwoSided {
        return Err(Error::InvalidInput("Baer test is one-sided".into()));
    }
    let ring = bm
        .acting(side)
        .ring()
        .ok_or_else(|| Error::Unsupported("Baer test over an unlisted operator ring".into()))?
        .clone();
    let n = bm.order() as u64;
    let mut report = BaerReport { side, injective: true, ideals_checked: 0, maps_checked: 0, witness: None };
    for ideal in all_ideals(&ring, side, caps.lattice)? {
        report.ideals_checked += 1;
        let gens = module_generators(&ring, side, &ideal.members);
        let k = gens.len() as u32;
        let tuples_a = (ring.order() as u64).checked_pow(k);
        let tuples_m = n.checked_pow(k);
        let work = tuples_a.zip(tuples_m).and_then(|(a, m)| a.checked_add(m));
        match work {
            Some(w) if w <= caps.homs => {}
            _ => return Err(Error::cap("Baer map enumeration", caps.homs, work.unwrap_or(u64::MAX))),
        }
        // Coefficient tuples with sum zero.
        let mut relations = Vec::new();
        let mut coeffs = vec![0u32; gens.len()];
        loop {
            let s = coeffs
                .iter()
                .zip(&gens)
                .fold(ring.zero(), |acc, (&a, &g)| ring.add(acc, ring_act(&ring, side, a, g)));
            if s == ring.zero() && coeffs.iter().any(|&a| a != ring.zero()) {
                relations.push(coeffs.clone());
            }
            if !next_tuple(&mut coeffs, ring.order() as u32) {
                break;
            }
        }
        let extendable: HashSet<Vec<u32>> = (0..n as u32)
            .map(|m| gens.iter().map(|&g| bm.act(side, g, m)).collect())
            .collect();
        let zero = bm.carrier().zero();
        let mut images = vec![0u32; gens.len()];
        loop {
            let well_defined = relations.iter().all(|r| {
                r.iter()
                    .zip(&images)
                    .fold(zero, |acc, (&a, &m)| bm.carrier().add(acc, bm.act(side, a, m)))
                    == zero
            });
            if well_defined {
                report.maps_checked += 1;
                if !extendable.contains(&images) {
                    report.injective = false;
                    report.witness = Some(BaerWitness {
                        ideal: ideal.members.clone(),
                        assignment: gens.iter().copied().zip(images.iter().copied()).collect(),
                        map: spell_out(bm, &ring, side, &gens, &images),
                    });
                    return Ok(report);
                }
            }
            if !next_tuple(&mut images, n as u32) {
                break;
            }
        }
    }
    Ok(report)
}

/// The map determined by a well-defined generator assignment.
fn spell_out(bm: &FiniteBimodule, ring: &FiniteRing, side: Side, gens: &[u32], images: &[u32]) -> Vec<(u32, u32)> {
    let mut map = std::collections::BTreeMap::new();
    let mut coeffs = vec![0u32; gens.len()];
    loop {
        let x = coeffs
            .iter()
            .zip(gens)
            .fold(ring.zero(), |acc, (&a, &g)| ring.add(acc, ring_act(ring, side, a, g)));
        let fx = coeffs
            .iter()
            .zip(images)
            .fold(bm.carrier().zero(), |acc, (&a, &m)| bm.carrier().add(acc, bm.act(side, a, m)));
        map.entry(x).or_insert(fx);
        if !next_tuple(&mut coeffs, ring.order() as u32) {
            break;
        }
    }
    map.into_iter().collect()
}
