use std::sync::Arc;

use super::{Acting, BimoduleDescriptor, BimoduleKind, FiniteBimodule, SemisimpleQuotient};
use crate::closure::intersect_sorted;
use crate::group::{AbelianGroup, Basis};
use crate::ring::{build, decode_matrix, matrix_ring, FiniteRing, RingMap};
use crate::{Caps, Error, Result, Side};

/// `_S S _S` with both actions given by multiplication.
pub fn regular_bimodule(ring: &Arc<FiniteRing>) -> Result<FiniteBimodule> {
    if ring.order() > crate::group::MAX_CARRIER {
        return Err(Error::cap("carrier order", crate::group::MAX_CARRIER as u64, ring.order() as u64));
    }
    let n = ring.order();
    let carrier = ring.additive_group();
    let left = Acting::from_ring(ring.clone(), n, |a, m| ring.mul(a, m))?;
    let right = Acting::from_ring(ring.clone(), n, |b, m| ring.mul(m, b))?;
    FiniteBimodule::new(carrier, left, right, BimoduleDescriptor::regular(ring.descriptor().clone()))
}

/// `k x l` matrices over the bimodule `_A W _B`, with `M_k(A)` acting on the
/// left and `M_l(B)` on the right by matrix multiplication. Entry `(i,j)` is
/// digit `i*l + j` of the encoding in base `|W|`.
pub fn matrix_shape(base: &FiniteBimodule, k: usize, l: usize, caps: &Caps) -> Result<FiniteBimodule> {
    let (Some(a), Some(b)) = (base.left().ring(), base.right().ring()) else {
        return Err(Error::Unsupported("matrix shape needs ring actions on both sides".into()));
    };
    if k == 0 || l == 0 {
        return Err(Error::InvalidInput("matrix shape needs k, l >= 1".into()));
    }
    let w = base.carrier().clone();
    let q = w.order() as u64;
    let cells = k * l;
    let order = q
        .checked_pow(cells as u32)
        .filter(|&o| o <= crate::group::MAX_CARRIER as u64)
        .ok_or_else(|| Error::cap("carrier order", crate::group::MAX_CARRIER as u64, q.saturating_pow(cells as u32)))?
        as usize;
    let decode = |mut x: u32| -> Vec<u32> {
        (0..cells)
            .map(|_| {
                let d = x % q as u32;
                x /= q as u32;
                d
            })
            .collect()
    };
    let encode = |e: &[u32]| -> u32 { e.iter().rev().fold(0u64, |acc, &d| acc * q + d as u64) as u32 };
    let basis = w.basis().map(|bs| Basis::concat(&vec![bs; cells]));
    let carrier = Arc::new(AbelianGroup::from_fn(
        order,
        encode(&vec![w.zero(); cells]),
        |x, y| {
            let (dx, dy) = (decode(x), decode(y));
            let s: Vec<u32> = dx.iter().zip(&dy).map(|(&u, &v)| w.add(u, v)).collect();
            encode(&s)
        },
        basis,
    )?);
    let mk = matrix_ring(a, k, caps.size)?;
    let ml = matrix_ring(b, l, caps.size)?;
    let left = Acting::from_ring(mk.clone(), order, |x, m| {
        let am = decode_matrix(a, k, x);
        let wm = decode(m);
        let out: Vec<u32> = (0..cells)
            .map(|c| {
                let (i, j) = (c / l, c % l);
                (0..k).fold(w.zero(), |acc, t| w.add(acc, base.act_left(am[i * k + t], wm[t * l + j])))
            })
            .collect();
        encode(&out)
    })?;
    let right = Acting::from_ring(ml.clone(), order, |y, m| {
        let bm = decode_matrix(b, l, y);
        let wm = decode(m);
        let out: Vec<u32> = (0..cells)
            .map(|c| {
                let (i, j) = (c / l, c % l);
                (0..l).fold(w.zero(), |acc, t| w.add(acc, base.act_right(wm[i * l + t], bm[t * l + j])))
            })
            .collect();
        encode(&out)
    })?;
    let descriptor = BimoduleDescriptor {
        kind: BimoduleKind::MatrixShape { base: Box::new(base.descriptor().clone()), k: k as u32, l: l as u32 },
        left: mk.descriptor().clone(),
        right: ml.descriptor().clone(),
    };
    FiniteBimodule::new(carrier, left, right, descriptor)
}

/// `r x s` matrices over a commutative ring `Z`, acted on by `Z_{r,r}` and
/// `Z_{s,s}`.
pub fn column_bimodule(z: &Arc<FiniteRing>, r: usize, s: usize, caps: &Caps) -> Result<FiniteBimodule> {
    if !z.is_commutative() {
        return Err(Error::InvalidInput("column bimodule needs a commutative ring".into()));
    }
    matrix_shape(&regular_bimodule(z)?, r, s, caps)
}

fn check_pullback(f: &RingMap, target: &FiniteRing) -> Result<()> {
    let flags = f.flags();
    if !flags.is_unital {
        return Err(Error::InvalidInput("restriction map is not unital".into()));
    }
    if !flags.is_additive || !flags.is_multiplicative {
        return Err(Error::InvalidInput("restriction map is not a ring homomorphism".into()));
    }
    if f.target().order() != target.order() || f.target().descriptor() != target.descriptor() {
        return Err(Error::InvalidInput("restriction map does not land in the acting ring".into()));
    }
    Ok(())
}

/// Pull the left action back along `f: A' -> A`.
pub fn restrict_left(bm: &FiniteBimodule, f: &RingMap) -> Result<FiniteBimodule> {
    let a = bm
        .left()
        .ring()
        .ok_or_else(|| Error::Unsupported("restriction of an operator action".into()))?;
    check_pullback(f, a)?;
    let left = Acting::from_ring(f.source().clone(), bm.order(), |x, m| bm.act_left(f.apply(x), m))?;
    let descriptor = BimoduleDescriptor {
        kind: BimoduleKind::RestrictLeft { base: Box::new(bm.descriptor().clone()), image: f.image().to_vec() },
        left: f.source().descriptor().clone(),
        right: bm.descriptor().right.clone(),
    };
    FiniteBimodule::new(bm.carrier().clone(), left, bm.right().clone(), descriptor)
}

/// Pull the right action back along `f: B' -> B`.
pub fn restrict_right(bm: &FiniteBimodule, f: &RingMap) -> Result<FiniteBimodule> {
    let b = bm
        .right()
        .ring()
        .ok_or_else(|| Error::Unsupported("restriction of an operator action".into()))?;
    check_pullback(f, b)?;
    let right = Acting::from_ring(f.source().clone(), bm.order(), |y, m| bm.act_right(m, f.apply(y)))?;
    let descriptor = BimoduleDescriptor {
        kind: BimoduleKind::RestrictRight { base: Box::new(bm.descriptor().clone()), image: f.image().to_vec() },
        left: bm.descriptor().left.clone(),
        right: f.source().descriptor().clone(),
    };
    FiniteBimodule::new(bm.carrier().clone(), bm.left().clone(), right, descriptor)
}

impl FiniteBimodule {
    /// The `(A/J(A), B/J(B))`-bimodule on `Soc(_A M) ∩ Soc(M_B)`.
    pub fn induced_semisimple(&self, caps: &Caps) -> Result<FiniteBimodule> {
        let ql = self.semisimple_quotient(Side::Left, caps.closure)?;
        let qr = self.semisimple_quotient(Side::Right, caps.closure)?;
        let n = intersect_sorted(&ql.socle.members, &qr.socle.members);
        let local = crate::group::local_index(self.order(), &n);
        let carrier = Arc::new(self.carrier().restrict(&n)?);
        let action = |q: &SemisimpleQuotient, a: u32, x: u32| -> u32 {
            let m = n[x as usize];
            let pos = q.socle.members.binary_search(&m).expect("intersection lies in the socle");
            let image = q.socle.members[q.on_socle[a as usize][pos] as usize];
            local[image as usize]
        };
        let mut stray = false;
        let mut checked = |v: u32| {
            if v == u32::MAX {
                stray = true;
                0
            } else {
                v
            }
        };
        let lt: Vec<u32> = (0..ql.ring.order() as u32)
            .flat_map(|a| (0..n.len() as u32).map(move |x| (a, x)))
            .map(|(a, x)| checked(action(&ql, a, x)))
            .collect();
        let rt: Vec<u32> = (0..qr.ring.order() as u32)
            .flat_map(|b| (0..n.len() as u32).map(move |x| (b, x)))
            .map(|(b, x)| checked(action(&qr, b, x)))
            .collect();
        if stray {
            return Err(Error::Internal("socle intersection is not a sub-bimodule".into()));
        }
        let nn = n.len();
        let left = Acting::from_ring(ql.ring.clone(), nn, |a, x| lt[a as usize * nn + x as usize])?;
        let right = Acting::from_ring(qr.ring.clone(), nn, |b, x| rt[b as usize * nn + x as usize])?;
        let descriptor = BimoduleDescriptor {
            kind: BimoduleKind::Induced { base: Box::new(self.descriptor().clone()) },
            left: ql.ring.descriptor().clone(),
            right: qr.ring.descriptor().clone(),
        };
        FiniteBimodule::new(carrier, left, right, descriptor)
    }
}

/// Rebuild a bimodule from its descriptor.
pub fn build_bimodule(desc: &BimoduleDescriptor, caps: &Caps) -> Result<FiniteBimodule> {
    match &desc.kind {
        BimoduleKind::Regular {} => {
            if desc.left != desc.right {
                return Err(Error::InvalidInput("regular bimodule needs equal left and right rings".into()));
            }
            regular_bimodule(&build(&desc.left, caps)?)
        }
        BimoduleKind::MatrixShape { base, k, l } => matrix_shape(&build_bimodule(base, caps)?, *k as usize, *l as usize, caps),
        BimoduleKind::RestrictLeft { base, image } => {
            let b = build_bimodule(base, caps)?;
            let src = build(&desc.left, caps)?;
            let target = b.left().ring().ok_or_else(|| Error::Unsupported("restriction of operators".into()))?.clone();
            restrict_left(&b, &RingMap::new(src, target, image.clone())?)
        }
        BimoduleKind::RestrictRight { base, image } => {
            let b = build_bimodule(base, caps)?;
            let src = build(&desc.right, caps)?;
            let target = b.right().ring().ok_or_else(|| Error::Unsupported("restriction of operators".into()))?.clone();
            restrict_right(&b, &RingMap::new(src, target, image.clone())?)
        }
        BimoduleKind::Canonical { base } => crate::translations::canonical_bimodule(&build_bimodule(base, caps)?, caps),
        BimoduleKind::Induced { base } => build_bimodule(base, caps)?.induced_semisimple(caps),
        BimoduleKind::Derived { label } => Err(Error::InvalidInput(format!(
            "bimodule '{label}' was derived from other data and cannot be rebuilt"
        ))),
    }
}
