use std::collections::BTreeSet;

use super::{side_index, Acting, FiniteBimodule, SubmoduleSet};
use crate::closure::{is_subset_sorted, SubgroupBuilder};
use crate::ring::{jacobson_radical, IdealSet};
use crate::{Error, Result, Side};

impl FiniteBimodule {
    fn closure_of(&self, side: Side, seeds: impl IntoIterator<Item = u32>) -> SubgroupBuilder<'_> {
        let maps = self.maps(side);
        let mut b = SubgroupBuilder::new(&self.carrier);
        b.close(seeds, &maps);
        b
    }

    /// Smallest `side`-submodule containing `seeds`.
    pub fn submodule_generated(&self, side: Side, seeds: &[u32]) -> SubmoduleSet {
        SubmoduleSet::new(side, self.closure_of(side, seeds.iter().copied()).into_sorted())
    }

    pub fn is_submodule(&self, side: Side, members: &[u32]) -> bool {
        let mut sorted = members.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        self.carrier.is_subgroup(&sorted)
            && self
                .maps(side)
                .iter()
                .all(|g| sorted.iter().all(|&m| sorted.binary_search(&g[m as usize]).is_ok()))
    }

    /// Sizes of the cyclic submodules `A m` for every `m`.
    fn cyclic_sizes(&self, side: Side) -> Vec<usize> {
        (0..self.order() as u32).map(|m| self.closure_of(side, [m]).len()).collect()
    }

    /// Every `side`-submodule, from cyclic submodules closed under sums.
    pub fn all_submodules(&self, side: Side, lattice_cap: usize) -> Result<Vec<SubmoduleSet>> {
        if self.order() > lattice_cap {
            return Err(Error::cap("submodule lattice carrier order", lattice_cap as u64, self.order() as u64));
        }
        let mut seen: BTreeSet<Vec<u32>> = BTreeSet::new();
        let mut cyclic: Vec<(Vec<u32>, Vec<u32>)> = Vec::new();
        for m in 0..self.order() as u32 {
            let b = self.closure_of(side, [m]);
            let gens = b.generators().to_vec();
            let members = b.into_sorted();
            if seen.insert(members.clone()) {
                cyclic.push((members, gens));
            }
        }
        let mut all = cyclic.clone();
        let mut i = 0;
        while i < all.len() {
            for (cm, cg) in &cyclic {
                if is_subset_sorted(cm, &all[i].0) {
                    continue;
                }
                let mut b = SubgroupBuilder::new(&self.carrier);
                for &g in all[i].1.iter().chain(cg) {
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
        let mut out: Vec<SubmoduleSet> = all.into_iter().map(|(m, _)| SubmoduleSet::new(side, m)).collect();
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.members.cmp(&b.members)));
        Ok(out)
    }

    /// `N` is nonzero and every nonzero element generates `N`.
    pub fn is_irreducible(&self, side: Side, n: &SubmoduleSet) -> Result<bool> {
        if !self.is_submodule(side, &n.members) {
            return Err(Error::InvalidInput("not a submodule on this side".into()));
        }
        if n.is_zero() {
            return Ok(false);
        }
        let zero = self.carrier.zero();
        Ok(n.members
            .iter()
            .filter(|&&m| m != zero)
            .all(|&m| self.closure_of(side, [m]).len() == n.len()))
    }

    /// Sum of all irreducible `side`-submodules.
    pub fn socle_by_irreducibles(&self, side: Side) -> SubmoduleSet {
        let sizes = self.cyclic_sizes(side);
        let zero = self.carrier.zero();
        let mut irreducible_generators = Vec::new();
        for m in 0..self.order() as u32 {
            if m == zero {
                continue;
            }
            let c = self.closure_of(side, [m]).into_sorted();
            if c.iter().all(|&x| x == zero || sizes[x as usize] == c.len()) {
                irreducible_generators.push(m);
            }
        }
        self.submodule_generated(side, &irreducible_generators)
    }

    /// `r_M(J(A))` (left) or `l_M(J(B))` (right); ring sides only.
    pub fn socle_by_radical(&self, side: Side) -> Result<SubmoduleSet> {
        let ring = self
            .acting(side)
            .ring()
            .ok_or_else(|| Error::Unsupported("radical of an operator ring is not listed".into()))?;
        let j = jacobson_radical(ring);
        let s = match side {
            Side::Left => self.r_m(&j.members)?,
            _ => self.l_m(&j.members)?,
        };
        Ok(SubmoduleSet::new(side, s.members))
    }

    /// The socle of the one-sided module. On ring sides it is computed as
    /// the annihilator of the radical and cross-checked against the sum of
    /// irreducible submodules.
    pub fn socle(&self, side: Side) -> Result<SubmoduleSet> {
        let by_sum = self.socle_by_irreducibles(side);
        match self.acting(side) {
            Acting::Ring { .. } => {
                let by_radical = self.socle_by_radical(side)?;
                if by_radical != by_sum {
                    return Err(Error::Internal(format!(
                        "{side:?} socle: radical annihilator has {} elements, irreducible sum {}",
                        by_radical.len(),
                        by_sum.len()
                    )));
                }
                Ok(by_radical)
            }
            Acting::Operators { .. } => Ok(by_sum),
        }
    }

    fn ring_side(&self, side: Side) -> Result<&std::sync::Arc<crate::ring::FiniteRing>> {
        self.acting(side)
            .ring()
            .ok_or_else(|| Error::Unsupported(format!("{side:?} side acts by operators that are not listed")))
    }

    /// Additive generators of the subgroup of the `side` ring generated by
    /// `set` (annihilating them annihilates the whole subgroup).
    fn ring_generators_of(&self, side: Side, set: &[u32]) -> Result<Vec<u32>> {
        let ring = self.ring_side(side)?;
        let group = ring.additive_group();
        let mut b = SubgroupBuilder::new(&group);
        for &x in set {
            if x as usize >= ring.order() {
                return Err(Error::InvalidInput(format!("ring element {x} out of range")));
            }
            b.adjoin(x);
        }
        Ok(b.generators().to_vec())
    }

    fn carrier_generators_of(&self, set: &[u32]) -> Result<Vec<u32>> {
        let mut b = SubgroupBuilder::new(&self.carrier);
        for &x in set {
            if x as usize >= self.order() {
                return Err(Error::InvalidInput(format!("carrier element {x} out of range")));
            }
            b.adjoin(x);
        }
        Ok(b.generators().to_vec())
    }

    /// `r_M(I) = { m : I m = 0 }`, a right submodule.
    pub fn r_m(&self, ideal: &[u32]) -> Result<SubmoduleSet> {
        let gens = self.ring_generators_of(Side::Left, ideal)?;
        let zero = self.carrier.zero();
        let members = (0..self.order() as u32)
            .filter(|&m| gens.iter().all(|&a| self.act_left(a, m) == zero))
            .collect();
        Ok(SubmoduleSet::new(Side::Right, members))
    }

    /// `l_M(J) = { m : m J = 0 }`, a left submodule.
    pub fn l_m(&self, ideal: &[u32]) -> Result<SubmoduleSet> {
        let gens = self.ring_generators_of(Side::Right, ideal)?;
        let zero = self.carrier.zero();
        let members = (0..self.order() as u32)
            .filter(|&m| gens.iter().all(|&b| self.act_right(m, b) == zero))
            .collect();
        Ok(SubmoduleSet::new(Side::Left, members))
    }

    /// `l_A(W) = { a : a W = 0 }`, a left ideal of `A`.
    pub fn l_a(&self, w: &[u32]) -> Result<IdealSet> {
        let ring = self.ring_side(Side::Left)?.clone();
        let gens = self.carrier_generators_of(w)?;
        let zero = self.carrier.zero();
        let members = ring.elements().filter(|&a| gens.iter().all(|&m| self.act_left(a, m) == zero)).collect();
        Ok(IdealSet::new(Side::Left, members))
    }

    /// `r_B(V) = { b : V b = 0 }`, a right ideal of `B`.
    pub fn r_b(&self, v: &[u32]) -> Result<IdealSet> {
        let ring = self.ring_side(Side::Right)?.clone();
        let gens = self.carrier_generators_of(v)?;
        let zero = self.carrier.zero();
        let members = ring.elements().filter(|&b| gens.iter().all(|&m| self.act_right(m, b) == zero)).collect();
        Ok(IdealSet::new(Side::Right, members))
    }

    /// A nonzero element of the `side` ring acting as zero, if any.
    /// Operator rings act faithfully by construction.
    pub fn unfaithful_witness(&self, side: Side) -> Option<u32> {
        let Acting::Ring { ring, table, .. } = self.acting(side) else {
            return None;
        };
        let n = self.order();
        let zero = self.carrier.zero() as u16;
        ring.elements()
            .filter(|&a| a != ring.zero())
            .find(|&a| table[a as usize * n..(a as usize + 1) * n].iter().all(|&x| x == zero))
    }

    pub fn is_faithful(&self, side: Side) -> bool {
        self.unfaithful_witness(side).is_none()
    }

    /// A composition series `0 = N_0 < N_1 < .. < N_k = M` of the `side`
    /// module: each step adds a minimal over-module of the previous term.
    pub fn composition_series(&self, side: Side) -> &[Vec<u32>] {
        self.series[side_index(side)].get_or_init(|| {
            let n = self.order();
            let mut series = vec![vec![self.carrier.zero()]];
            loop {
                let cur = series.last().expect("nonempty");
                if cur.len() == n {
                    break;
                }
                let member = crate::group::local_index(n, cur);
                let outside = (0..n as u32).find(|&x| member[x as usize] == u32::MAX).expect("proper");
                let grow = |x: u32| self.closure_of(side, cur.iter().copied().chain([x])).into_sorted();
                let mut best = grow(outside);
                'shrink: loop {
                    for &y in &best {
                        if member[y as usize] != u32::MAX {
                            continue;
                        }
                        let cand = grow(y);
                        if cand.len() < best.len() {
                            best = cand;
                            continue 'shrink;
                        }
                    }
                    break;
                }
                series.push(best);
            }
            series
        })
    }

    /// Whether the additive map `f` sends every term of the `side`
    /// composition series into the previous one, i.e. kills every
    /// composition factor. For an element of the acting ring this is
    /// membership in its Jacobson radical.
    pub fn kills_composition_factors(&self, side: Side, f: &[u32]) -> bool {
        let series = self.composition_series(side);
        series.windows(2).all(|w| w[1].iter().all(|&m| w[0].binary_search(&f[m as usize]).is_ok()))
    }
}
