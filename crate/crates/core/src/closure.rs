//! Smallest subgroup containing a seed set and stable under additive maps.
//!
//! The subgroup is grown one cyclic extension at a time: a candidate outside
//! the current subgroup `N` is adjoined by listing the cosets `N + k*g`, and
//! its images under every map become new candidates. Because the maps are
//! additive, stability on the adjoined generators implies stability on `N`.

use crate::group::AbelianGroup;

pub struct SubgroupBuilder<'a> {
    group: &'a AbelianGroup,
    member: Vec<bool>,
    members: Vec<u32>,
    generators: Vec<u32>,
}

impl<'a> SubgroupBuilder<'a> {
    pub fn new(group: &'a AbelianGroup) -> Self {
        let mut member = vec![false; group.order()];
        member[group.zero() as usize] = true;
        SubgroupBuilder {
            group,
            member,
            members: vec![group.zero()],
            generators: Vec::new(),
        }
    }

    pub fn contains(&self, x: u32) -> bool {
        self.member[x as usize]
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Generators adjoined so far, in order.
    pub fn generators(&self) -> &[u32] {
        &self.generators
    }

    /// Adjoin `g` to the subgroup (no map closure). Returns whether it grew.
    pub fn adjoin(&mut self, g: u32) -> bool {
        if self.member[g as usize] {
            return false;
        }
        let base = self.members.clone();
        let mut c = g;
        while !self.member[c as usize] {
            for &n in &base {
                let y = self.group.add(n, c);
                debug_assert!(!self.member[y as usize]);
                self.member[y as usize] = true;
                self.members.push(y);
            }
            c = self.group.add(c, g);
        }
        self.generators.push(g);
        true
    }

    /// Adjoin the seeds and close under the maps.
    pub fn close(&mut self, seeds: impl IntoIterator<Item = u32>, maps: &[&[u32]]) {
        let mut queue: Vec<u32> = seeds.into_iter().collect();
        queue.reverse();
        // generators already present must also be closed under the new maps
        for &g in self.generators.clone().iter().rev() {
            for m in maps {
                queue.push(m[g as usize]);
            }
        }
        while let Some(x) = queue.pop() {
            if self.adjoin(x) {
                for m in maps.iter().rev() {
                    queue.push(m[x as usize]);
                }
            }
        }
    }

    pub fn into_sorted(mut self) -> Vec<u32> {
        self.members.sort_unstable();
        self.members
    }

    pub fn sorted(&self) -> Vec<u32> {
        let mut v = self.members.clone();
        v.sort_unstable();
        v
    }
}

/// Sorted members of the subgroup generated by `seeds` and closed under `maps`.
pub fn generated_subgroup(
    group: &AbelianGroup,
    seeds: impl IntoIterator<Item = u32>,
    maps: &[&[u32]],
) -> Vec<u32> {
    let mut b = SubgroupBuilder::new(group);
    b.close(seeds, maps);
    b.into_sorted()
}

/// Sorted intersection of two sorted lists.
pub fn intersect_sorted(a: &[u32], b: &[u32]) -> Vec<u32> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// Whether sorted `a` is a subset of sorted `b`.
pub fn is_subset_sorted(a: &[u32], b: &[u32]) -> bool {
    intersect_sorted(a, b).len() == a.len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::Basis;

    #[test]
    fn subgroup_of_z4_squared() {
        let g = AbelianGroup::from_basis(Basis::new(vec![4, 4])).unwrap();
        // (2,0) and (0,2)
        let s = generated_subgroup(&g, [2, 8], &[]);
        assert_eq!(s, vec![0, 2, 8, 10]);
        assert_eq!(generated_subgroup(&g, [1], &[]).len(), 4);
        assert_eq!(generated_subgroup(&g, [1, 4], &[]).len(), 16);
    }

    #[test]
    fn closure_under_swap_map() {
        let g = AbelianGroup::from_basis(Basis::new(vec![4, 4])).unwrap();
        let swap: Vec<u32> = (0..16u32).map(|x| (x % 4) * 4 + x / 4).collect();
        let s = generated_subgroup(&g, [1], &[&swap]);
        assert_eq!(s.len(), 16);
        let s = generated_subgroup(&g, [5], &[&swap]);
        assert_eq!(s, vec![0, 5, 10, 15]);
    }
}
