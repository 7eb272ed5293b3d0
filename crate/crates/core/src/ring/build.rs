use std::sync::Arc;

use super::{
    galois_ring, ideal_generated, jacobson_radical, FiniteRing, IdealSet, RingDescriptor,
    RingKind, RingMap, RingRule,
};
use crate::group::{Basis, FactorGroup};
use crate::{Caps, Error, Result, Side};

struct Residue {
    m: u64,
}

impl RingRule for Residue {
    fn add(&self, a: u32, b: u32) -> u32 {
        ((a as u64 + b as u64) % self.m) as u32
    }
    fn neg(&self, a: u32) -> u32 {
        ((self.m - a as u64) % self.m) as u32
    }
    fn mul(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.m) as u32
    }
}

/// Integers modulo `m`, encoded naturally.
pub fn residue_ring(m: u64) -> Result<Arc<FiniteRing>> {
    if m < 2 {
        return Err(Error::InvalidInput(format!("residue ring needs m >= 2, got {m}")));
    }
    if m > u32::MAX as u64 {
        return Err(Error::cap("residue ring order", u32::MAX as u64, m));
    }
    let ring = FiniteRing::from_rule(
        m as usize,
        0,
        1,
        Arc::new(Residue { m }),
        RingDescriptor::residue(m),
        Some(Basis::new(vec![m])),
    )?;
    Ok(Arc::new(ring))
}

/// A ring given by explicit operation tables.
struct Tables {
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    n: usize,
}

impl RingRule for Tables {
    fn add(&self, a: u32, b: u32) -> u32 {
        self.add[a as usize * self.n + b as usize]
    }
    fn neg(&self, a: u32) -> u32 {
        self.neg[a as usize]
    }
    fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[a as usize * self.n + b as usize]
    }
}

/// Build a ring from `n*n` addition and multiplication tables. Axioms are
/// checked before returning.
pub fn from_tables(
    add: Vec<u32>,
    mul: Vec<u32>,
    zero: u32,
    one: u32,
    descriptor: RingDescriptor,
) -> Result<Arc<FiniteRing>> {
    let n = (add.len() as f64).sqrt().round() as usize;
    if n == 0 || n * n != add.len() || mul.len() != add.len() {
        return Err(Error::InvalidInput("operation tables must be square and equal-sized".into()));
    }
    if add.iter().chain(mul.iter()).any(|&x| x as usize >= n) || zero as usize >= n || one as usize >= n {
        return Err(Error::InvalidInput("table entry out of range".into()));
    }
    let mut neg = vec![u32::MAX; n];
    for a in 0..n {
        for b in 0..n {
            if add[a * n + b] == zero {
                neg[a] = b as u32;
                break;
            }
        }
    }
    if neg.contains(&u32::MAX) {
        return Err(Error::Construction("addition table has no inverses".into()));
    }
    let ring = FiniteRing::from_rule(n, zero, one, Arc::new(Tables { add, mul, neg, n }), descriptor, None)?;
    ring.check_axioms(10_000, 0)?;
    Ok(Arc::new(ring))
}

struct Matrix {
    base: Arc<FiniteRing>,
    n: usize,
    q: u64,
}

impl Matrix {
    fn decode(&self, mut x: u32) -> Vec<u32> {
        let mut out = vec![0u32; self.n * self.n];
        for slot in out.iter_mut() {
            *slot = (x as u64 % self.q) as u32;
            x = (x as u64 / self.q) as u32;
        }
        out
    }

    fn encode(&self, entries: &[u32]) -> u32 {
        entries.iter().rev().fold(0u64, |acc, &e| acc * self.q + e as u64) as u32
    }
}

impl RingRule for Matrix {
    fn add(&self, a: u32, b: u32) -> u32 {
        let (x, y) = (self.decode(a), self.decode(b));
        let z: Vec<u32> = x.iter().zip(&y).map(|(&u, &v)| self.base.add(u, v)).collect();
        self.encode(&z)
    }
    fn neg(&self, a: u32) -> u32 {
        let z: Vec<u32> = self.decode(a).iter().map(|&u| self.base.neg(u)).collect();
        self.encode(&z)
    }
    fn mul(&self, a: u32, b: u32) -> u32 {
        let (x, y) = (self.decode(a), self.decode(b));
        let n = self.n;
        let mut z = vec![self.base.zero(); n * n];
        for i in 0..n {
            for j in 0..n {
                let mut acc = self.base.zero();
                for k in 0..n {
                    acc = self.base.add(acc, self.base.mul(x[i * n + k], y[k * n + j]));
                }
                z[i * n + j] = acc;
            }
        }
        self.encode(&z)
    }
}

/// Encoding of the matrix with row-major `entries` in `matrix_ring(base, n)`.
pub fn encode_matrix(base: &FiniteRing, entries: &[u32]) -> u32 {
    let q = base.order() as u64;
    entries.iter().rev().fold(0u64, |acc, &e| acc * q + e as u64) as u32
}

/// Row-major entries of a matrix encoding.
pub fn decode_matrix(base: &FiniteRing, n: usize, mut x: u32) -> Vec<u32> {
    let q = base.order() as u64;
    let mut out = vec![0u32; n * n];
    for slot in out.iter_mut() {
        *slot = (x as u64 % q) as u32;
        x = (x as u64 / q) as u32;
    }
    out
}

/// `n x n` matrices over `base`, row-major encoding with entry `(i,j)` as
/// digit `i*n+j` in base `|base|`.
pub fn matrix_ring(base: &Arc<FiniteRing>, n: usize, size_cap: u64) -> Result<Arc<FiniteRing>> {
    if n == 0 {
        return Err(Error::InvalidInput("matrix size must be positive".into()));
    }
    let q = base.order() as u64;
    let order = q
        .checked_pow((n * n) as u32)
        .filter(|&o| o <= size_cap && o <= u32::MAX as u64)
        .ok_or_else(|| Error::cap("matrix ring order", size_cap, q.saturating_pow((n * n) as u32)))?;
    if n == 1 {
        return Ok(base.clone());
    }
    let rule = Matrix { base: base.clone(), n, q };
    let mut one = vec![base.zero(); n * n];
    for i in 0..n {
        one[i * n + i] = base.one();
    }
    let zero = rule.encode(&vec![base.zero(); n * n]);
    let one = rule.encode(&one);
    let basis = base.basis().map(|b| Basis::concat(&vec![b; n * n]));
    let ring = FiniteRing::from_rule(
        order as usize,
        zero,
        one,
        Arc::new(rule),
        RingDescriptor::matrix(base.descriptor().clone(), n as u32),
        basis,
    )?;
    Ok(Arc::new(ring))
}

/// The scalar embedding `base -> M_n(base)`.
pub fn scalar_embedding(base: &Arc<FiniteRing>, matrices: &Arc<FiniteRing>, n: usize) -> Result<RingMap> {
    let image = base
        .elements()
        .map(|a| {
            let mut e = vec![base.zero(); n * n];
            for i in 0..n {
                e[i * n + i] = a;
            }
            encode_matrix(base, &e)
        })
        .collect();
    RingMap::new(base.clone(), matrices.clone(), image)
}

struct Quotient {
    base: Arc<FiniteRing>,
    reps: Vec<u32>,
    class_of: Vec<u32>,
}

impl RingRule for Quotient {
    fn add(&self, a: u32, b: u32) -> u32 {
        self.class_of[self.base.add(self.reps[a as usize], self.reps[b as usize]) as usize]
    }
    fn neg(&self, a: u32) -> u32 {
        self.class_of[self.base.neg(self.reps[a as usize]) as usize]
    }
    fn mul(&self, a: u32, b: u32) -> u32 {
        self.class_of[self.base.mul(self.reps[a as usize], self.reps[b as usize]) as usize]
    }
}

/// `R/I` with its canonical surjection. Cosets are encoded in the order of
/// their smallest representatives.
pub fn quotient_ring(ring: &Arc<FiniteRing>, ideal: &IdealSet) -> Result<(Arc<FiniteRing>, RingMap)> {
    if ideal.side != Side::TwoSided {
        return Err(Error::InvalidInput("quotient needs a two-sided ideal".into()));
    }
    if ideal.len() == ring.order() {
        return Err(Error::InvalidInput("quotient by the whole ring".into()));
    }
    if ideal.is_zero() {
        let id = RingMap::identity(ring);
        return Ok((ring.clone(), id));
    }
    let group = ring.additive_group();
    let all: Vec<u32> = ring.elements().collect();
    let fg = FactorGroup::new(&group, &all, &ideal.members)?;
    let descriptor = quotient_descriptor(ring, ideal);
    let zero = fg.class_of[ring.zero() as usize];
    let one = fg.class_of[ring.one() as usize];
    let order = fg.reps.len();
    let class_of = fg.class_of.clone();
    let rule = Quotient { base: ring.clone(), reps: fg.reps, class_of: fg.class_of };
    let q = Arc::new(FiniteRing::from_rule(order, zero, one, Arc::new(rule), descriptor, None)?);
    let map = RingMap::new(ring.clone(), q.clone(), class_of)?;
    Ok((q, map))
}

fn quotient_descriptor(ring: &FiniteRing, ideal: &IdealSet) -> RingDescriptor {
    let base = Box::new(ring.descriptor().clone());
    if jacobson_radical(ring).members == ideal.members {
        return RingDescriptor::new(RingKind::RadicalQuotient { base });
    }
    // A generating set small enough to keep the descriptor readable.
    let group = ring.additive_group();
    let mut b = crate::closure::SubgroupBuilder::new(&group);
    for &x in &ideal.members {
        b.adjoin(x);
    }
    RingDescriptor::new(RingKind::Quotient { base, gens: b.generators().to_vec() })
}

struct DirectSum {
    parts: Vec<Arc<FiniteRing>>,
    radix: Vec<u64>,
}

impl DirectSum {
    fn split(&self, x: u32) -> Vec<u32> {
        self.radix
            .iter()
            .zip(&self.parts)
            .map(|(&r, p)| ((x as u64 / r) % p.order() as u64) as u32)
            .collect()
    }

    fn join(&self, parts: &[u32]) -> u32 {
        parts.iter().zip(&self.radix).map(|(&c, &r)| c as u64 * r).sum::<u64>() as u32
    }

    fn lift(&self, a: u32, b: u32, f: impl Fn(&FiniteRing, u32, u32) -> u32) -> u32 {
        let (x, y) = (self.split(a), self.split(b));
        let z: Vec<u32> = self.parts.iter().enumerate().map(|(i, p)| f(p, x[i], y[i])).collect();
        self.join(&z)
    }
}

impl RingRule for DirectSum {
    fn add(&self, a: u32, b: u32) -> u32 {
        self.lift(a, b, |p, x, y| p.add(x, y))
    }
    fn neg(&self, a: u32) -> u32 {
        let z: Vec<u32> = self.split(a).iter().zip(&self.parts).map(|(&x, p)| p.neg(x)).collect();
        self.join(&z)
    }
    fn mul(&self, a: u32, b: u32) -> u32 {
        self.lift(a, b, |p, x, y| p.mul(x, y))
    }
}

/// Direct sum with component `i` as the `i`-th mixed-radix digit (first
/// component least significant), plus the projections.
pub fn direct_sum(parts: &[Arc<FiniteRing>], size_cap: u64) -> Result<(Arc<FiniteRing>, Vec<RingMap>)> {
    if parts.is_empty() {
        return Err(Error::InvalidInput("direct sum of no rings".into()));
    }
    let mut radix = Vec::with_capacity(parts.len());
    let mut order = 1u64;
    for p in parts {
        radix.push(order);
        order = order.saturating_mul(p.order() as u64);
    }
    if order > size_cap || order > u32::MAX as u64 {
        return Err(Error::cap("direct sum order", size_cap, order));
    }
    let rule = DirectSum { parts: parts.to_vec(), radix };
    let zero = rule.join(&parts.iter().map(|p| p.zero()).collect::<Vec<_>>());
    let one = rule.join(&parts.iter().map(|p| p.one()).collect::<Vec<_>>());
    let basis = parts
        .iter()
        .map(|p| p.basis())
        .collect::<Option<Vec<_>>>()
        .map(|bs| Basis::concat(&bs));
    let descriptor = RingDescriptor::new(RingKind::DirectSum {
        parts: parts.iter().map(|p| p.descriptor().clone()).collect(),
    });
    let splitter = DirectSum { parts: parts.to_vec(), radix: rule.radix.clone() };
    let ring = Arc::new(FiniteRing::from_rule(order as usize, zero, one, Arc::new(rule), descriptor, basis)?);
    let projections = parts
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let image = ring.elements().map(|x| splitter.split(x)[i]).collect();
            RingMap::new(ring.clone(), p.clone(), image)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((ring, projections))
}

/// Rebuild a ring from its descriptor.
pub fn build(desc: &RingDescriptor, caps: &Caps) -> Result<Arc<FiniteRing>> {
    let size_cap = desc.cap.unwrap_or(caps.size);
    match &desc.kind {
        RingKind::Residue { m } => {
            if *m > size_cap {
                return Err(Error::cap("residue ring order", size_cap, *m));
            }
            residue_ring(*m)
        }
        RingKind::Galois { p, d, r } => Ok(galois_ring(*p, *d, *r, size_cap)?.0),
        RingKind::Matrix { base, n } => matrix_ring(&build(base, caps)?, *n as usize, size_cap),
        RingKind::Quotient { base, gens } => {
            let r = build(base, caps)?;
            if let Some(&g) = gens.iter().find(|&&g| g as usize >= r.order()) {
                return Err(Error::InvalidInput(format!("ideal generator {g} out of range")));
            }
            let ideal = ideal_generated(&r, gens, Side::TwoSided);
            Ok(quotient_ring(&r, &ideal)?.0)
        }
        RingKind::RadicalQuotient { base } => {
            let r = build(base, caps)?;
            let j = jacobson_radical(&r);
            Ok(quotient_ring(&r, &j)?.0)
        }
        RingKind::DirectSum { parts } => {
            let rings = parts.iter().map(|p| build(p, caps)).collect::<Result<Vec<_>>>()?;
            Ok(direct_sum(&rings, size_cap)?.0)
        }
        RingKind::Geo(spec) => Ok(crate::geo::build_geo_ring(spec, caps)?.ring.clone()),
        RingKind::Derived { label } => Err(Error::InvalidInput(format!(
            "ring '{label}' was derived from other data and cannot be rebuilt from its descriptor"
        ))),
    }
}
