//! Additive self-maps of a carrier and rings built from them.

use std::collections::HashMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::group::AbelianGroup;
use crate::span::Span;
use crate::{Error, Result};

/// A self-map stored as a full table. On a multi-block space the table is
/// the concatenation of the per-block tables (block-diagonal map).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Endo(pub Vec<u16>);

impl Endo {
    pub fn from_map(map: &[u32]) -> Endo {
        Endo(map.iter().map(|&x| x as u16).collect())
    }

    #[inline]
    pub fn apply(&self, m: u32) -> u32 {
        self.0[m as usize] as u32
    }

    pub fn to_map(&self) -> Vec<u32> {
        self.0.iter().map(|&x| x as u32).collect()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// The ambient ring of block-diagonal additive maps on a direct sum of
/// finite abelian groups.
#[derive(Debug)]
pub struct EndoSpace {
    blocks: Vec<Arc<AbelianGroup>>,
    offsets: Vec<usize>,
    len: usize,
}

impl EndoSpace {
    pub fn new(blocks: Vec<Arc<AbelianGroup>>) -> Arc<EndoSpace> {
        let mut offsets = Vec::with_capacity(blocks.len());
        let mut len = 0;
        for b in &blocks {
            offsets.push(len);
            len += b.order();
        }
        Arc::new(EndoSpace { blocks, offsets, len })
    }

    pub fn single(group: Arc<AbelianGroup>) -> Arc<EndoSpace> {
        Self::new(vec![group])
    }

    pub fn blocks(&self) -> &[Arc<AbelianGroup>] {
        &self.blocks
    }

    /// Table length of an endo in this space.
    pub fn table_len(&self) -> usize {
        self.len
    }

    pub fn block_range(&self, i: usize) -> std::ops::Range<usize> {
        self.offsets[i]..self.offsets[i] + self.blocks[i].order()
    }

    /// The part of `e` acting on block `i`.
    pub fn block<'e>(&self, e: &'e Endo, i: usize) -> &'e [u16] {
        &e.0[self.block_range(i)]
    }

    pub fn identity(&self) -> Endo {
        let mut t = Vec::with_capacity(self.len);
        for b in &self.blocks {
            t.extend((0..b.order()).map(|x| x as u16));
        }
        Endo(t)
    }

    pub fn zero(&self) -> Endo {
        let mut t = Vec::with_capacity(self.len);
        for b in &self.blocks {
            t.extend(std::iter::repeat_n(b.zero() as u16, b.order()));
        }
        Endo(t)
    }

    pub fn add(&self, f: &Endo, g: &Endo) -> Endo {
        let mut t = Vec::with_capacity(self.len);
        for (i, b) in self.blocks.iter().enumerate() {
            let r = self.block_range(i);
            t.extend(f.0[r.clone()].iter().zip(&g.0[r]).map(|(&x, &y)| b.add(x as u32, y as u32) as u16));
        }
        Endo(t)
    }

    pub fn neg(&self, f: &Endo) -> Endo {
        let mut t = Vec::with_capacity(self.len);
        for (i, b) in self.blocks.iter().enumerate() {
            t.extend(f.0[self.block_range(i)].iter().map(|&x| b.neg(x as u32) as u16));
        }
        Endo(t)
    }

    /// `f ∘ g` (apply `g` first).
    pub fn compose(&self, f: &Endo, g: &Endo) -> Endo {
        let mut t = Vec::with_capacity(self.len);
        for i in 0..self.blocks.len() {
            let r = self.block_range(i);
            let fb = &f.0[r.clone()];
            t.extend(g.0[r].iter().map(|&x| fb[x as usize]));
        }
        Endo(t)
    }

    pub fn is_additive(&self, f: &Endo) -> bool {
        self.blocks.iter().enumerate().all(|(i, b)| {
            let fb = &f.0[self.block_range(i)];
            b.elements().all(|x| {
                b.elements()
                    .all(|y| fb[b.add(x, y) as usize] as u32 == b.add(fb[x as usize] as u32, fb[y as usize] as u32))
            })
        })
    }

    pub fn is_valid(&self, f: &Endo) -> bool {
        f.len() == self.len
            && self
                .blocks
                .iter()
                .enumerate()
                .all(|(i, b)| f.0[self.block_range(i)].iter().all(|&x| (x as usize) < b.order()))
    }
}

#[derive(Debug)]
enum Body {
    /// Every member, sorted by table.
    Enumerated { members: Vec<Endo>, index: HashMap<Endo, u32> },
    /// Additive span in coordinates of a carrier basis; members are never
    /// listed.
    Spanned { span: Span, order: u64 },
}

/// A subring of the block-diagonal endomorphisms of an [`EndoSpace`].
#[derive(Debug)]
pub struct EndoRing {
    space: Arc<EndoSpace>,
    generators: Vec<Endo>,
    label: String,
    body: Body,
}

impl EndoRing {
    pub fn space(&self) -> &Arc<EndoSpace> {
        &self.space
    }

    /// Ring generators (together with the identity).
    pub fn generators(&self) -> &[Endo] {
        &self.generators
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn order(&self) -> u64 {
        match &self.body {
            Body::Enumerated { members, .. } => members.len() as u64,
            Body::Spanned { order, .. } => *order,
        }
    }

    pub fn is_enumerated(&self) -> bool {
        matches!(self.body, Body::Enumerated { .. })
    }

    pub fn members(&self) -> Option<&[Endo]> {
        match &self.body {
            Body::Enumerated { members, .. } => Some(members),
            Body::Spanned { .. } => None,
        }
    }

    pub fn index_of(&self, e: &Endo) -> Option<u32> {
        match &self.body {
            Body::Enumerated { index, .. } => index.get(e).copied(),
            Body::Spanned { .. } => None,
        }
    }

    pub fn contains(&self, e: &Endo) -> bool {
        match &self.body {
            Body::Enumerated { index, .. } => index.contains_key(e),
            Body::Spanned { span, .. } => {
                let coords = carrier_coordinates(&self.space, e).expect("spanned ring has a basis");
                span.contains(&coords)
            }
        }
    }

    pub fn is_commutative(&self) -> bool {
        let g = &self.generators;
        g.iter()
            .all(|a| g.iter().all(|b| self.space.compose(a, b) == self.space.compose(b, a)))
    }

    /// An enumerated ring on explicit members (must be closed; checked).
    pub fn from_members(space: Arc<EndoSpace>, members: Vec<Endo>, label: impl Into<String>) -> Result<EndoRing> {
        let mut members = members;
        members.sort();
        members.dedup();
        let index: HashMap<Endo, u32> = members.iter().cloned().enumerate().map(|(i, e)| (e, i as u32)).collect();
        if !index.contains_key(&space.identity()) || !index.contains_key(&space.zero()) {
            return Err(Error::Construction("endo set lacks zero or identity".into()));
        }
        for a in &members {
            for b in &members {
                if !index.contains_key(&space.add(a, b)) || !index.contains_key(&space.compose(a, b)) {
                    return Err(Error::Construction("endo set is not closed".into()));
                }
            }
        }
        Ok(EndoRing { space, generators: members.clone(), label: label.into(), body: Body::Enumerated { members, index } })
    }
}

/// Smallest set of endos containing `gens`, zero and identity and closed
/// under addition and composition. Fails once more than `cap` members
/// are reached, reporting the size reached.
pub fn closure_ring(space: &Arc<EndoSpace>, gens: &[Endo], cap: usize, label: &str) -> Result<EndoRing> {
    for g in gens {
        if !space.is_valid(g) {
            return Err(Error::InvalidInput("generator table does not match the space".into()));
        }
    }
    let mut members: Vec<Endo> = vec![space.zero()];
    let mut index: HashMap<Endo, u32> = HashMap::new();
    index.insert(space.zero(), 0);
    let mut work = vec![space.identity()];
    while let Some(h) = work.pop() {
        if index.contains_key(&h) {
            continue;
        }
        let base = members.len();
        let mut c = h.clone();
        while !index.get(&c).is_some_and(|&i| (i as usize) < base) {
            for i in 0..base {
                let y = space.add(&members[i], &c);
                if members.len() >= cap {
                    return Err(Error::cap("endomorphism ring closure", cap as u64, members.len() as u64 + 1));
                }
                index.insert(y.clone(), members.len() as u32);
                members.push(y);
            }
            c = space.add(&c, &h);
        }
        for g in gens {
            work.push(space.compose(g, &h));
        }
    }
    members.sort();
    let index = members.iter().cloned().enumerate().map(|(i, e)| (e, i as u32)).collect();
    Ok(EndoRing {
        space: space.clone(),
        generators: gens.to_vec(),
        label: label.to_string(),
        body: Body::Enumerated { members, index },
    })
}

/// Coordinates of a single-block endo: images of the carrier basis vectors,
/// each digit embedded into `Z/exponent`.
fn carrier_coordinates(space: &EndoSpace, e: &Endo) -> Result<Vec<u64>> {
    let (basis, exp) = span_setup(space)?;
    let mut out = Vec::with_capacity(basis.len() * basis.len());
    for j in 0..basis.len() {
        let img = e.apply(basis.unit(j));
        for (d, m) in basis.digits(img as u64).iter().zip(basis.moduli()) {
            out.push(d * (exp / m));
        }
    }
    Ok(out)
}

fn span_setup(space: &EndoSpace) -> Result<(crate::group::Basis, u64)> {
    if space.blocks().len() != 1 {
        return Err(Error::Unsupported("spans only on single-block spaces".into()));
    }
    let basis = space.blocks()[0]
        .basis()
        .cloned()
        .ok_or_else(|| Error::Unsupported("carrier has no known basis".into()))?;
    Ok((basis.clone(), basis.exponent()))
}

/// Additive span of the ring generated by `gens`, in carrier-basis
/// coordinates. Requires a carrier that is a p-group with known basis.
pub fn span_ring(space: &Arc<EndoSpace>, gens: &[Endo]) -> Result<Span> {
    let (basis, exp) = span_setup(space)?;
    let p = basis
        .prime()
        .ok_or_else(|| Error::Unsupported("carrier is not a p-group".into()))?;
    let mut k = 0;
    while p.pow(k) < exp {
        k += 1;
    }
    let nb = basis.len();
    let mut span = Span::new(p, k.max(1), nb * nb)?;
    span.insert(&carrier_coordinates(space, &space.identity())?);
    // Images of basis vectors under a coordinate row.
    let images = |row: &[u64]| -> Vec<u32> {
        (0..nb)
            .map(|j| {
                let digits: Vec<u64> = (0..nb)
                    .map(|i| row[j * nb + i] / (exp / basis.moduli()[i]))
                    .collect();
                basis.encode(&digits)
            })
            .collect()
    };
    loop {
        let rows: Vec<Vec<u64>> = span.rows().map(|r| r.to_vec()).collect();
        let mut grew = false;
        for row in &rows {
            let imgs = images(row);
            for g in gens {
                let mut v = Vec::with_capacity(nb * nb);
                for &x in &imgs {
                    let y = g.apply(x);
                    for (d, m) in basis.digits(y as u64).iter().zip(basis.moduli()) {
                        v.push(d * (exp / m));
                    }
                }
                grew |= span.insert(&v);
            }
        }
        if !grew {
            break;
        }
    }
    Ok(span)
}

/// The ring generated by `gens`: enumerated when its order (known from the
/// span whenever the carrier admits one) is at most `cap`, spanned
/// otherwise. Both orders are cross-checked when both are available.
pub fn generated_ring(space: &Arc<EndoSpace>, gens: &[Endo], cap: usize, label: &str) -> Result<EndoRing> {
    let span = match span_ring(space, gens) {
        Ok(s) => Some(s),
        Err(Error::Unsupported(_)) => None,
        Err(e) => return Err(e),
    };
    match span {
        Some(span) => {
            let order = span.order().filter(|&o| o <= cap as u64);
            match order {
                Some(o) => {
                    let ring = closure_ring(space, gens, cap, label)?;
                    if ring.order() != o {
                        return Err(Error::Internal(format!(
                            "closure has {} members but the span has order {o}",
                            ring.order()
                        )));
                    }
                    Ok(ring)
                }
                None => {
                    let order = span
                        .order()
                        .ok_or_else(|| Error::Unsupported("ring order overflows u64".into()))?;
                    Ok(EndoRing {
                        space: space.clone(),
                        generators: gens.to_vec(),
                        label: label.to_string(),
                        body: Body::Spanned { span, order },
                    })
                }
            }
        }
        None => closure_ring(space, gens, cap, label),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::Basis;

    fn z4z2() -> Arc<EndoSpace> {
        EndoSpace::single(Arc::new(AbelianGroup::from_basis(Basis::new(vec![4, 2])).unwrap()))
    }

    /// All additive endos of Z/4 x Z/2, by brute force over images of the
    /// basis.
    fn all_endos(space: &EndoSpace) -> Vec<Endo> {
        let g = &space.blocks()[0];
        let mut out = Vec::new();
        for a in g.elements() {
            for b in g.elements() {
                let t: Vec<u32> = g
                    .elements()
                    .map(|x| g.add(g.scalar((x % 4) as u64, a), g.scalar((x / 4) as u64, b)))
                    .collect();
                let e = Endo::from_map(&t);
                if space.is_additive(&e) {
                    out.push(e);
                }
            }
        }
        out.sort();
        out.dedup();
        out
    }

    #[test]
    fn identity_generates_integers() {
        let s = z4z2();
        let r = closure_ring(&s, &[], 100, "Z").unwrap();
        assert_eq!(r.order(), 4);
        assert!(r.contains(&s.identity()));
    }

    #[test]
    fn full_endomorphism_ring_matches_brute_force() {
        let s = z4z2();
        let all = all_endos(&s);
        let r = closure_ring(&s, &all, 1000, "End").unwrap();
        assert_eq!(r.members().unwrap(), all.as_slice());
        let span = span_ring(&s, &all).unwrap();
        assert_eq!(span.order(), Some(all.len() as u64));
        assert!(closure_ring(&s, &all, 5, "End").unwrap_err().is_cap());
        let small = generated_ring(&s, &all, 4, "End").unwrap();
        assert!(!small.is_enumerated());
        assert_eq!(small.order(), all.len() as u64);
        assert!(all.iter().all(|e| small.contains(e)));
    }
}
