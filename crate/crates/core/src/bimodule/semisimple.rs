use std::sync::Arc;

use super::{side_index, Acting, FiniteBimodule, SubmoduleSet};
use crate::group::{local_index, FactorGroup};
use crate::ring::{jacobson_radical, quotient_ring, FiniteRing};
use crate::translations::{closure_ring, endo_ring_as_ring, Endo, EndoSpace};
use crate::{Error, Result, Side};

/// The semisimple quotient `A/J(A)` of an acting ring, with its action on
/// the socle of the one-sided module (which `J(A)` annihilates).
#[derive(Debug)]
pub struct SemisimpleQuotient {
    pub ring: Arc<FiniteRing>,
    /// Socle members (sorted carrier encodings).
    pub socle: SubmoduleSet,
    /// For every element of `ring`, its action on the socle in positions
    /// of `socle.members`.
    pub on_socle: Vec<Vec<u32>>,
    /// Position of the carrier zero in `socle.members`.
    pub zero_position: u32,
}

impl SemisimpleQuotient {
    /// `r_Soc(I)` (left side) or `l_Soc(I)` (right side): socle elements
    /// killed by every element of `ideal`.
    pub fn annihilated(&self, ideal: &[u32]) -> Vec<u32> {
        (0..self.socle.len())
            .filter(|&i| ideal.iter().all(|&a| self.on_socle[a as usize][i] == self.zero_position))
            .map(|i| self.socle.members[i])
            .collect()
    }
}

impl FiniteBimodule {
    /// `A/J(A)` for the `side` ring and its action on the `side` socle.
    ///
    /// For an operator ring the quotient is realized as its image in the
    /// endomorphisms of the composition factors (which is faithful for the
    /// quotient), extended by the action on the socle.
    pub fn semisimple_quotient(&self, side: Side, closure_cap: usize) -> Result<Arc<SemisimpleQuotient>> {
        if let Some(q) = self.semisimple[side_index(side)].get() {
            return Ok(q.clone());
        }
        let socle = self.socle(side)?;
        let q = match self.acting(side) {
            Acting::Ring { ring, .. } => {
                let j = jacobson_radical(ring);
                let (quot, proj) = quotient_ring(ring, &j)?;
                let local = local_index(self.order(), &socle.members);
                let mut reps = vec![u32::MAX; quot.order()];
                for a in ring.elements() {
                    let c = proj.apply(a) as usize;
                    if reps[c] == u32::MAX {
                        reps[c] = a;
                    }
                }
                let on_socle = reps
                    .iter()
                    .map(|&a| socle.members.iter().map(|&m| local[self.act(side, a, m) as usize]).collect())
                    .collect();
                let zero_position = local[self.carrier.zero() as usize];
                SemisimpleQuotient { ring: quot, socle, on_socle, zero_position }
            }
            Acting::Operators { .. } => self.operator_quotient(side, socle, closure_cap)?,
        };
        let q = Arc::new(q);
        Ok(self.semisimple[side_index(side)].get_or_init(|| q).clone())
    }

    fn operator_quotient(&self, side: Side, socle: SubmoduleSet, closure_cap: usize) -> Result<SemisimpleQuotient> {
        let series = self.composition_series(side).to_vec();
        let mut blocks = Vec::new();
        let mut factors = Vec::new();
        for w in series.windows(2) {
            let f = FactorGroup::new(&self.carrier, &w[1], &w[0])?;
            blocks.push(Arc::new(f.group.clone()));
            factors.push(f);
        }
        let socle_group = Arc::new(self.carrier.restrict(&socle.members)?);
        blocks.push(socle_group);
        let space = EndoSpace::new(blocks);
        let local = local_index(self.order(), &socle.members);
        let block_map = |g: &[u32]| -> Endo {
            let mut t: Vec<u16> = Vec::with_capacity(space.table_len());
            for f in &factors {
                t.extend(f.reps.iter().map(|&r| f.class_of[g[r as usize] as usize] as u16));
            }
            t.extend(socle.members.iter().map(|&m| local[g[m as usize] as usize] as u16));
            Endo(t)
        };
        let gens: Vec<Endo> = self.acting(side).gen_maps().iter().map(|g| block_map(g)).collect();
        let label = format!("{}/J", self.acting(side).label());
        let image = closure_ring(&space, &gens, closure_cap, &label)?;
        let members = image.members().expect("closure is enumerated");
        let socle_block = space.blocks().len() - 1;
        let cf_len = space.block_range(socle_block).start;
        let mut cf_parts: Vec<&[u16]> = members.iter().map(|e| &e.0[..cf_len]).collect();
        cf_parts.sort();
        cf_parts.dedup();
        if cf_parts.len() != members.len() {
            return Err(Error::Internal(
                "action on the socle is not determined by the composition factors".into(),
            ));
        }
        let on_socle = members
            .iter()
            .map(|e| space.block(e, socle_block).iter().map(|&x| x as u32).collect())
            .collect();
        let ring = endo_ring_as_ring(&image, u32::MAX as u64)?;
        let zero_position = local[self.carrier.zero() as usize];
        Ok(SemisimpleQuotient { ring, socle, on_socle, zero_position })
    }
}
