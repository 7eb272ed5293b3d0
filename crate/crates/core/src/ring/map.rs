use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::FiniteRing;
use crate::{Error, Result};

/// Pairs checked exhaustively up to this many, sampled above.
const EXHAUSTIVE_PAIRS: usize = 1 << 24;
const SAMPLED_PAIRS: usize = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapFlags {
    pub is_additive: bool,
    pub is_multiplicative: bool,
    pub is_unital: bool,
    pub is_injective: bool,
}

impl MapFlags {
    pub fn is_ring_hom(&self) -> bool {
        self.is_additive && self.is_multiplicative && self.is_unital
    }
}

/// A map between rings given by its full image table.
#[derive(Clone, Debug)]
pub struct RingMap {
    source: Arc<FiniteRing>,
    target: Arc<FiniteRing>,
    image: Vec<u32>,
    flags: MapFlags,
}

impl RingMap {
    pub fn new(source: Arc<FiniteRing>, target: Arc<FiniteRing>, image: Vec<u32>) -> Result<RingMap> {
        if image.len() != source.order() {
            return Err(Error::InvalidInput(format!(
                "map table has {} entries, source has {}",
                image.len(),
                source.order()
            )));
        }
        if let Some(&bad) = image.iter().find(|&&y| y as usize >= target.order()) {
            return Err(Error::InvalidInput(format!("map image {bad} outside target")));
        }
        let flags = compute_flags(&source, &target, &image);
        Ok(RingMap { source, target, image, flags })
    }

    pub fn identity(ring: &Arc<FiniteRing>) -> RingMap {
        RingMap::new(ring.clone(), ring.clone(), ring.elements().collect()).expect("identity map")
    }

    pub fn source(&self) -> &Arc<FiniteRing> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FiniteRing> {
        &self.target
    }

    pub fn image(&self) -> &[u32] {
        &self.image
    }

    pub fn flags(&self) -> MapFlags {
        self.flags
    }

    #[inline]
    pub fn apply(&self, x: u32) -> u32 {
        self.image[x as usize]
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &RingMap) -> Result<RingMap> {
        if !Arc::ptr_eq(&self.target, &other.source) && self.target.order() != other.source.order() {
            return Err(Error::InvalidInput("maps do not compose".into()));
        }
        let image = self.image.iter().map(|&y| other.apply(y)).collect();
        RingMap::new(self.source.clone(), other.target.clone(), image)
    }

    /// Recompute flags from the table; they must agree with the stored ones.
    pub fn flags_consistent(&self) -> bool {
        compute_flags(&self.source, &self.target, &self.image) == self.flags
    }

    /// `self` applied `k` times (source and target must coincide).
    pub fn power(&self, k: u64) -> RingMap {
        let mut image: Vec<u32> = self.source.elements().collect();
        for _ in 0..k {
            image = image.iter().map(|&y| self.apply(y)).collect();
        }
        RingMap::new(self.source.clone(), self.target.clone(), image).expect("power of endomorphism")
    }

    /// Smallest `k >= 1` with `self^k = id`.
    pub fn order(&self) -> u64 {
        let mut cur: Vec<u32> = self.image.clone();
        let mut k = 1;
        while cur.iter().enumerate().any(|(i, &y)| i as u32 != y) {
            cur = cur.iter().map(|&y| self.apply(y)).collect();
            k += 1;
        }
        k
    }

    pub fn fixed_points(&self) -> Vec<u32> {
        self.source.elements().filter(|&x| self.apply(x) == x).collect()
    }
}

fn compute_flags(source: &FiniteRing, target: &FiniteRing, image: &[u32]) -> MapFlags {
    let f = |x: u32| image[x as usize];
    let n = source.order();
    let mut additive = true;
    let mut multiplicative = true;
    let mut check = |a: u32, b: u32| {
        additive &= f(source.add(a, b)) == target.add(f(a), f(b));
        multiplicative &= f(source.mul(a, b)) == target.mul(f(a), f(b));
    };
    if n.saturating_mul(n) <= EXHAUSTIVE_PAIRS {
        for a in 0..n as u32 {
            for b in 0..n as u32 {
                check(a, b);
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(0x6d6170);
        for _ in 0..SAMPLED_PAIRS {
            check(rng.gen_range(0..n as u32), rng.gen_range(0..n as u32));
        }
    }
    let mut seen = vec![false; target.order()];
    let mut injective = true;
    for &y in image {
        if std::mem::replace(&mut seen[y as usize], true) {
            injective = false;
            break;
        }
    }
    MapFlags {
        is_additive: additive,
        is_multiplicative: multiplicative,
        is_unital: f(source.one()) == target.one(),
        is_injective: injective,
    }
}
