//! Finite `(A, B)`-bimodules on a tabulated abelian group.
//!
//! An acting ring is either a [`FiniteRing`] with a full action table, or a
//! ring of operators on the carrier (an [`EndoRing`]) that is only known
//! through its generators and is never listed.

mod build;
mod descriptor;
mod semisimple;
mod submodules;

pub use build::{build_bimodule, column_bimodule, matrix_shape, regular_bimodule, restrict_left, restrict_right};
pub use descriptor::{BimoduleDescriptor, BimoduleKind};
pub use semisimple::SemisimpleQuotient;

use std::sync::{Arc, OnceLock};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::group::AbelianGroup;
use crate::ring::FiniteRing;
use crate::translations::{Endo, EndoRing};
use crate::{Error, Result, Side};

/// Triple evaluations checked exhaustively up to this count.
pub const EXHAUSTIVE_TRIPLES: u64 = 1 << 24;
pub const SAMPLED_TRIPLES: usize = 100_000;
/// Largest action table (`|A| * |M|` entries).
pub const MAX_ACTION_TABLE: usize = 1 << 26;

#[derive(Clone)]
pub enum Acting {
    /// `table[a * |M| + m]` is `a` acting on `m`.
    Ring {
        ring: Arc<FiniteRing>,
        table: Vec<u16>,
        gen_maps: Vec<Vec<u32>>,
    },
    Operators {
        ring: Arc<EndoRing>,
        gen_maps: Vec<Vec<u32>>,
    },
}

impl std::fmt::Debug for Acting {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Acting::Ring { ring, .. } => write!(f, "Ring({})", ring.descriptor().label()),
            Acting::Operators { ring, .. } => write!(f, "Operators({}, order {})", ring.label(), ring.order()),
        }
    }
}

impl Acting {
    /// A ring acting by `act(a, m)`.
    pub fn from_ring(ring: Arc<FiniteRing>, carrier_order: usize, act: impl Fn(u32, u32) -> u32) -> Result<Acting> {
        let n = ring.order();
        if n.saturating_mul(carrier_order) > MAX_ACTION_TABLE {
            return Err(Error::cap("action table", MAX_ACTION_TABLE as u64, (n * carrier_order) as u64));
        }
        let mut table = Vec::with_capacity(n * carrier_order);
        for a in ring.elements() {
            for m in 0..carrier_order as u32 {
                table.push(act(a, m) as u16);
            }
        }
        let gen_maps = ring
            .generators()
            .iter()
            .map(|&g| table[g as usize * carrier_order..(g as usize + 1) * carrier_order].iter().map(|&x| x as u32).collect())
            .collect();
        Ok(Acting::Ring { ring, table, gen_maps })
    }

    pub fn from_operators(ring: Arc<EndoRing>) -> Acting {
        let gen_maps = ring.generators().iter().map(|e| e.to_map()).collect();
        Acting::Operators { ring, gen_maps }
    }

    pub fn ring(&self) -> Option<&Arc<FiniteRing>> {
        match self {
            Acting::Ring { ring, .. } => Some(ring),
            Acting::Operators { .. } => None,
        }
    }

    pub fn operators(&self) -> Option<&Arc<EndoRing>> {
        match self {
            Acting::Ring { .. } => None,
            Acting::Operators { ring, .. } => Some(ring),
        }
    }

    pub fn order(&self) -> u64 {
        match self {
            Acting::Ring { ring, .. } => ring.order() as u64,
            Acting::Operators { ring, .. } => ring.order(),
        }
    }

    /// Maps generating the acting ring (besides the identity).
    pub fn gen_maps(&self) -> &[Vec<u32>] {
        match self {
            Acting::Ring { gen_maps, .. } | Acting::Operators { gen_maps, .. } => gen_maps,
        }
    }

    /// Row of the action table: the translation by `a`.
    pub fn translation(&self, a: u32) -> Option<&[u16]> {
        match self {
            Acting::Ring { table, ring, .. } => {
                let n = table.len() / ring.order();
                Some(&table[a as usize * n..(a as usize + 1) * n])
            }
            Acting::Operators { .. } => None,
        }
    }

    pub fn label(&self) -> String {
        match self {
            Acting::Ring { ring, .. } => ring.descriptor().label(),
            Acting::Operators { ring, .. } => ring.label().to_string(),
        }
    }
}

/// A closed subset of the carrier: additive subgroup stable under the
/// declared side(s).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SubmoduleSet {
    pub side: Side,
    pub members: Vec<u32>,
}

impl SubmoduleSet {
    pub fn new(side: Side, mut members: Vec<u32>) -> Self {
        members.sort_unstable();
        members.dedup();
        SubmoduleSet { side, members }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.members.len() == 1
    }

    pub fn contains(&self, m: u32) -> bool {
        self.members.binary_search(&m).is_ok()
    }
}

fn side_index(side: Side) -> usize {
    match side {
        Side::Left => 0,
        Side::Right => 1,
        Side::TwoSided => 2,
    }
}

#[derive(Clone)]
pub struct FiniteBimodule {
    carrier: Arc<AbelianGroup>,
    left: Acting,
    right: Acting,
    descriptor: BimoduleDescriptor,
    series: [OnceLock<Vec<Vec<u32>>>; 3],
    semisimple: [OnceLock<Arc<SemisimpleQuotient>>; 3],
}

impl std::fmt::Debug for FiniteBimodule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FiniteBimodule")
            .field("order", &self.order())
            .field("left", &self.left)
            .field("right", &self.right)
            .finish()
    }
}

impl FiniteBimodule {
    /// Assemble a bimodule. Tables are checked for shape here; the axioms
    /// are checked by [`FiniteBimodule::verify`].
    pub fn new(carrier: Arc<AbelianGroup>, left: Acting, right: Acting, descriptor: BimoduleDescriptor) -> Result<Self> {
        let n = carrier.order();
        for acting in [&left, &right] {
            match acting {
                Acting::Ring { ring, table, gen_maps } => {
                    if table.len() != ring.order() * n || gen_maps.iter().any(|g| g.len() != n) {
                        return Err(Error::InvalidInput("action table does not match the carrier".into()));
                    }
                    if table.iter().any(|&x| x as usize >= n) {
                        return Err(Error::InvalidInput("action table leaves the carrier".into()));
                    }
                }
                Acting::Operators { ring, .. } => {
                    if ring.space().blocks().len() != 1 || ring.space().table_len() != n {
                        return Err(Error::InvalidInput("operators do not act on this carrier".into()));
                    }
                }
            }
        }
        if left.operators().is_some() && right.operators().is_some() {
            return Err(Error::Unsupported("operator rings on both sides".into()));
        }
        Ok(FiniteBimodule {
            carrier,
            left,
            right,
            descriptor,
            series: [OnceLock::new(), OnceLock::new(), OnceLock::new()],
            semisimple: [OnceLock::new(), OnceLock::new(), OnceLock::new()],
        })
    }

    pub fn carrier(&self) -> &Arc<AbelianGroup> {
        &self.carrier
    }

    pub fn order(&self) -> usize {
        self.carrier.order()
    }

    pub fn descriptor(&self) -> &BimoduleDescriptor {
        &self.descriptor
    }

    pub fn acting(&self, side: Side) -> &Acting {
        match side {
            Side::Left => &self.left,
            Side::Right => &self.right,
            Side::TwoSided => panic!("acting ring of one side expected"),
        }
    }

    pub fn left(&self) -> &Acting {
        &self.left
    }

    pub fn right(&self) -> &Acting {
        &self.right
    }

    /// `a m` for a ring-acting left side.
    #[inline]
    pub fn act_left(&self, a: u32, m: u32) -> u32 {
        match &self.left {
            Acting::Ring { table, .. } => table[a as usize * self.order() + m as usize] as u32,
            Acting::Operators { .. } => panic!("left side acts by operators"),
        }
    }

    /// `m b` for a ring-acting right side.
    #[inline]
    pub fn act_right(&self, m: u32, b: u32) -> u32 {
        match &self.right {
            Acting::Ring { table, .. } => table[b as usize * self.order() + m as usize] as u32,
            Acting::Operators { .. } => panic!("right side acts by operators"),
        }
    }

    pub fn act(&self, side: Side, a: u32, m: u32) -> u32 {
        match side {
            Side::Left => self.act_left(a, m),
            Side::Right => self.act_right(m, a),
            Side::TwoSided => panic!("one side expected"),
        }
    }

    /// The generator maps for `side` (both sides for `TwoSided`).
    pub fn maps(&self, side: Side) -> Vec<&[u32]> {
        let mut out: Vec<&[u32]> = Vec::new();
        if matches!(side, Side::Left | Side::TwoSided) {
            out.extend(self.left.gen_maps().iter().map(|g| g.as_slice()));
        }
        if matches!(side, Side::Right | Side::TwoSided) {
            out.extend(self.right.gen_maps().iter().map(|g| g.as_slice()));
        }
        out
    }

    /// Check the bimodule axioms: actions additive in both arguments,
    /// multiplicative, unital, and `(am)b = a(mb)`. Exhaustive when each
    /// family has at most [`EXHAUSTIVE_TRIPLES`] cases, otherwise
    /// [`SAMPLED_TRIPLES`] random cases drawn from `seed`.
    pub fn verify(&self, seed: u64) -> Result<()> {
        let g = &self.carrier;
        let n = self.order() as u32;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for side in [Side::Left, Side::Right] {
            let Acting::Ring { ring, .. } = self.acting(side) else {
                // Operators are additive maps by construction; they must
                // commute with the other side.
                continue;
            };
            let a_n = ring.order() as u32;
            for m in 0..n {
                if self.act(side, ring.one(), m) != m {
                    return Err(Error::Construction(format!("identity does not act trivially on {m}")));
                }
            }
            let ring_law = |a: u32, a2: u32, m: u32| -> Result<()> {
                if self.act(side, ring.add(a, a2), m) != g.add(self.act(side, a, m), self.act(side, a2, m)) {
                    return Err(Error::Construction(format!(
                        "{side:?} action not additive in the ring at ({a},{a2},{m})"
                    )));
                }
                let prod = match side {
                    Side::Left => self.act(side, ring.mul(a, a2), m) == self.act(side, a, self.act(side, a2, m)),
                    _ => self.act(side, ring.mul(a, a2), m) == self.act(side, a2, self.act(side, a, m)),
                };
                if !prod {
                    return Err(Error::Construction(format!(
                        "{side:?} action not multiplicative at ({a},{a2},{m})"
                    )));
                }
                Ok(())
            };
            let module_law = |a: u32, m: u32, m2: u32| -> Result<()> {
                if self.act(side, a, g.add(m, m2)) != g.add(self.act(side, a, m), self.act(side, a, m2)) {
                    return Err(Error::Construction(format!(
                        "{side:?} action not additive in the module at ({a},{m},{m2})"
                    )));
                }
                Ok(())
            };
            if (a_n as u64) * (a_n as u64) * (n as u64) <= EXHAUSTIVE_TRIPLES {
                for a in 0..a_n {
                    for a2 in 0..a_n {
                        for m in 0..n {
                            ring_law(a, a2, m)?;
                        }
                    }
                }
            } else {
                for _ in 0..SAMPLED_TRIPLES {
                    ring_law(rng.gen_range(0..a_n), rng.gen_range(0..a_n), rng.gen_range(0..n))?;
                }
            }
            if (a_n as u64) * (n as u64) * (n as u64) <= EXHAUSTIVE_TRIPLES {
                for a in 0..a_n {
                    for m in 0..n {
                        for m2 in 0..n {
                            module_law(a, m, m2)?;
                        }
                    }
                }
            } else {
                for _ in 0..SAMPLED_TRIPLES {
                    module_law(rng.gen_range(0..a_n), rng.gen_range(0..n), rng.gen_range(0..n))?;
                }
            }
        }
        self.verify_associativity(&mut rng)
    }

    fn verify_associativity(&self, rng: &mut ChaCha8Rng) -> Result<()> {
        let n = self.order() as u32;
        match (&self.left, &self.right) {
            (Acting::Ring { ring: a, .. }, Acting::Ring { ring: b, .. }) => {
                let check = |x: u32, m: u32, y: u32| -> Result<()> {
                    if self.act_right(self.act_left(x, m), y) != self.act_left(x, self.act_right(m, y)) {
                        return Err(Error::Construction(format!("(am)b != a(mb) at ({x},{m},{y})")));
                    }
                    Ok(())
                };
                if (a.order() as u64) * (n as u64) * (b.order() as u64) <= EXHAUSTIVE_TRIPLES {
                    for x in a.elements() {
                        for m in 0..n {
                            for y in b.elements() {
                                check(x, m, y)?;
                            }
                        }
                    }
                } else {
                    for _ in 0..SAMPLED_TRIPLES {
                        let x = rng.gen_range(0..a.order() as u32);
                        let y = rng.gen_range(0..b.order() as u32);
                        check(x, rng.gen_range(0..n), y)?;
                    }
                }
                Ok(())
            }
            (ops, Acting::Ring { ring, .. }) | (Acting::Ring { ring, .. }, ops) => {
                let left_ops = self.left.operators().is_some();
                for g in ops.gen_maps() {
                    for b in ring.elements() {
                        for m in 0..n {
                            let ok = if left_ops {
                                self.act_right(g[m as usize], b) == g[self.act_right(m, b) as usize]
                            } else {
                                self.act_left(b, g[m as usize]) == g[self.act_left(b, m) as usize]
                            };
                            if !ok {
                                return Err(Error::Construction("operators do not commute with the ring action".into()));
                            }
                        }
                    }
                }
                Ok(())
            }
            _ => Err(Error::Unsupported("operator rings on both sides".into())),
        }
    }

    /// Translation of the ring element `a` on `side` as an [`Endo`].
    pub fn translation(&self, side: Side, a: u32) -> Option<Endo> {
        self.acting(side).translation(a).map(|t| Endo(t.to_vec()))
    }
}

#[cfg(test)]
mod tests;
