//! Finite rings with identity on dense encodings `0..order`.
//!
//! Small rings (order <= [`TABLE_LIMIT`]) have their operations tabulated at
//! construction; larger structured rings evaluate a rule on demand.

mod build;
mod descriptor;
pub mod galois;
mod ideals;
mod map;

pub use build::{
    build, decode_matrix, direct_sum, encode_matrix, from_tables, matrix_ring, quotient_ring, residue_ring, scalar_embedding,
};
pub use descriptor::{RingDescriptor, RingKind};
pub use galois::galois_ring;
pub use ideals::*;
pub use map::{MapFlags, RingMap};

#[cfg(test)]
mod tests;

use std::sync::{Arc, OnceLock};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::closure::SubgroupBuilder;
use crate::group::{AbelianGroup, Basis};
use crate::{Error, Result, Side};

pub const TABLE_LIMIT: usize = 4096;

/// Exhaustive axiom checks run up to this order, sampled checks above.
pub const AXIOM_EXHAUSTIVE_LIMIT: usize = 512;

/// Operations of a ring that is not tabulated.
pub trait RingRule: Send + Sync {
    fn add(&self, a: u32, b: u32) -> u32;
    fn neg(&self, a: u32) -> u32;
    fn mul(&self, a: u32, b: u32) -> u32;
}

enum Ops {
    Table {
        add: Vec<u16>,
        mul: Vec<u16>,
        neg: Vec<u16>,
    },
    Rule(Arc<dyn RingRule>),
}

pub struct FiniteRing {
    order: usize,
    zero: u32,
    one: u32,
    ops: Ops,
    descriptor: RingDescriptor,
    basis: Option<Basis>,
    generators: OnceLock<Vec<u32>>,
    group: OnceLock<Arc<AbelianGroup>>,
    units: OnceLock<Vec<bool>>,
    radical: OnceLock<IdealSet>,
}

impl std::fmt::Debug for FiniteRing {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FiniteRing")
            .field("order", &self.order)
            .field("descriptor", &self.descriptor)
            .finish()
    }
}

impl FiniteRing {
    pub fn from_rule(
        order: usize,
        zero: u32,
        one: u32,
        rule: Arc<dyn RingRule>,
        descriptor: RingDescriptor,
        basis: Option<Basis>,
    ) -> Result<FiniteRing> {
        if order == 0 {
            return Err(Error::InvalidInput("ring of order 0".into()));
        }
        if order > 1 && zero == one {
            return Err(Error::Construction("identity equals zero".into()));
        }
        let ops = if order <= TABLE_LIMIT {
            let n = order;
            let mut add = vec![0u16; n * n];
            let mut mul = vec![0u16; n * n];
            let mut neg = vec![0u16; n];
            for a in 0..n {
                neg[a] = rule.neg(a as u32) as u16;
                for b in 0..n {
                    add[a * n + b] = rule.add(a as u32, b as u32) as u16;
                    mul[a * n + b] = rule.mul(a as u32, b as u32) as u16;
                }
            }
            Ops::Table { add, mul, neg }
        } else {
            Ops::Rule(rule)
        };
        Ok(FiniteRing {
            order,
            zero,
            one,
            ops,
            descriptor,
            basis,
            generators: OnceLock::new(),
            group: OnceLock::new(),
            units: OnceLock::new(),
            radical: OnceLock::new(),
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn zero(&self) -> u32 {
        self.zero
    }

    pub fn one(&self) -> u32 {
        self.one
    }

    pub fn descriptor(&self) -> &RingDescriptor {
        &self.descriptor
    }

    pub fn basis(&self) -> Option<&Basis> {
        self.basis.as_ref()
    }

    pub fn is_tabulated(&self) -> bool {
        matches!(self.ops, Ops::Table { .. })
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        match &self.ops {
            Ops::Table { add, .. } => add[a as usize * self.order + b as usize] as u32,
            Ops::Rule(r) => r.add(a, b),
        }
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        match &self.ops {
            Ops::Table { mul, .. } => mul[a as usize * self.order + b as usize] as u32,
            Ops::Rule(r) => r.mul(a, b),
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        match &self.ops {
            Ops::Table { neg, .. } => neg[a as usize] as u32,
            Ops::Rule(r) => r.neg(a),
        }
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.order as u32
    }

    pub fn pow(&self, a: u32, k: u64) -> u32 {
        let mut acc = self.one;
        for _ in 0..k {
            acc = self.mul(acc, a);
        }
        acc
    }

    /// `k * 1` in the ring.
    pub fn integer(&self, k: u64) -> u32 {
        self.scale(k, self.one)
    }

    /// `k * x` by double-and-add.
    pub fn scale(&self, mut k: u64, x: u32) -> u32 {
        let (mut acc, mut base) = (self.zero, x);
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(acc, base);
            }
            base = self.add(base, base);
            k >>= 1;
        }
        acc
    }

    /// The additive group of the ring as a module carrier. Panics above
    /// [`crate::group::MAX_CARRIER`].
    pub fn additive_group(&self) -> Arc<AbelianGroup> {
        self.group
            .get_or_init(|| {
                Arc::new(
                    AbelianGroup::from_fn(
                        self.order,
                        self.zero,
                        |a, b| self.add(a, b),
                        self.basis.clone(),
                    )
                    .expect("ring additive group within carrier limit"),
                )
            })
            .clone()
    }

    /// Left multiplication by `g` as a table.
    pub fn left_mul_map(&self, g: u32) -> Vec<u32> {
        self.elements().map(|x| self.mul(g, x)).collect()
    }

    /// Right multiplication by `g` as a table.
    pub fn right_mul_map(&self, g: u32) -> Vec<u32> {
        self.elements().map(|x| self.mul(x, g)).collect()
    }

    /// A set of elements that, together with 1, generates the ring as a
    /// ring. Chosen greedily in encoding order, so it is deterministic.
    pub fn generators(&self) -> &[u32] {
        self.generators.get_or_init(|| {
            if self.order > crate::group::MAX_CARRIER {
                // Additive generators also generate the ring.
                return match &self.basis {
                    Some(b) => (0..b.len()).map(|j| b.unit(j)).collect(),
                    None => self.elements().collect(),
                };
            }
            let group = self.additive_group();
            let mut gens: Vec<u32> = Vec::new();
            let mut maps: Vec<Vec<u32>> = Vec::new();
            let mut b = SubgroupBuilder::new(&group);
            b.close([self.one], &[]);
            for x in self.elements() {
                if b.contains(x) {
                    continue;
                }
                gens.push(x);
                maps.push(self.left_mul_map(x));
                let refs: Vec<&[u32]> = maps.iter().map(|m| m.as_slice()).collect();
                b = SubgroupBuilder::new(&group);
                b.close([self.one], &refs);
                if b.len() == self.order {
                    break;
                }
            }
            gens
        })
    }

    /// Left (or right) multiplication tables of the ring generators; the
    /// closure of a subgroup under these is closure under the whole ring.
    pub fn generator_maps(&self, side: Side) -> Vec<Vec<u32>> {
        let mut out = Vec::new();
        for &g in self.generators() {
            if matches!(side, Side::Left | Side::TwoSided) {
                out.push(self.left_mul_map(g));
            }
            if matches!(side, Side::Right | Side::TwoSided) {
                out.push(self.right_mul_map(g));
            }
        }
        out
    }

    pub fn is_commutative(&self) -> bool {
        let gens = self.generators();
        gens.iter()
            .all(|&a| gens.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Ring axioms: exhaustive up to [`AXIOM_EXHAUSTIVE_LIMIT`], otherwise
    /// `samples` random triples drawn from `seed`.
    pub fn check_axioms(&self, samples: usize, seed: u64) -> Result<()> {
        let n = self.order as u32;
        let check = |a: u32, b: u32, c: u32| -> Result<()> {
            if self.add(self.add(a, b), c) != self.add(a, self.add(b, c)) {
                return Err(Error::Construction(format!("addition not associative at ({a},{b},{c})")));
            }
            if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                return Err(Error::Construction(format!(
                    "multiplication not associative at ({a},{b},{c})"
                )));
            }
            if self.mul(a, self.add(b, c)) != self.add(self.mul(a, b), self.mul(a, c)) {
                return Err(Error::Construction(format!("left distributivity fails at ({a},{b},{c})")));
            }
            if self.mul(self.add(a, b), c) != self.add(self.mul(a, c), self.mul(b, c)) {
                return Err(Error::Construction(format!("right distributivity fails at ({a},{b},{c})")));
            }
            Ok(())
        };
        for a in 0..n {
            if self.add(a, self.zero) != a || self.add(a, self.neg(a)) != self.zero {
                return Err(Error::Construction(format!("additive group fails at {a}")));
            }
            if self.mul(a, self.one) != a || self.mul(self.one, a) != a {
                return Err(Error::Construction(format!("identity fails at {a}")));
            }
        }
        if self.order <= AXIOM_EXHAUSTIVE_LIMIT {
            for a in 0..n {
                for b in 0..n {
                    if self.add(a, b) != self.add(b, a) {
                        return Err(Error::Construction(format!("addition not commutative at ({a},{b})")));
                    }
                    for c in 0..n {
                        check(a, b, c)?;
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..samples {
                let (a, b, c) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
                if self.add(a, b) != self.add(b, a) {
                    return Err(Error::Construction(format!("addition not commutative at ({a},{b})")));
                }
                check(a, b, c)?;
            }
        }
        Ok(())
    }
}

/// A one- or two-sided ideal as a sorted member list.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct IdealSet {
    pub side: Side,
    pub members: Vec<u32>,
}

impl IdealSet {
    pub fn new(side: Side, mut members: Vec<u32>) -> Self {
        members.sort_unstable();
        members.dedup();
        IdealSet { side, members }
    }

    pub fn zero(ring: &FiniteRing, side: Side) -> Self {
        IdealSet::new(side, vec![ring.zero()])
    }

    pub fn whole(ring: &FiniteRing, side: Side) -> Self {
        IdealSet::new(side, ring.elements().collect())
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, x: u32) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    pub fn is_zero(&self) -> bool {
        self.members.len() == 1
    }

    /// Closure under addition, negation and the declared side multiplications.
    pub fn is_valid(&self, ring: &FiniteRing) -> bool {
        let group = ring.additive_group();
        if !group.is_subgroup(&self.members) {
            return false;
        }
        let left = matches!(self.side, Side::Left | Side::TwoSided);
        let right = matches!(self.side, Side::Right | Side::TwoSided);
        self.members.iter().all(|&x| {
            ring.elements().all(|r| {
                (!left || self.contains(ring.mul(r, x))) && (!right || self.contains(ring.mul(x, r)))
            })
        })
    }
}
