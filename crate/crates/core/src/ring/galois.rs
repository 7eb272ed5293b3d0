//! Galois rings `GR(p^d, r) = Z/p^d[xi]/(f)`.

use std::sync::Arc;

use super::{FiniteRing, RingDescriptor, RingMap, RingRule};
use crate::group::{is_prime, Basis};
use crate::{Error, Result};

/// Remainder of `a` modulo the monic `b` over `F_p` (coefficients low to high).
fn poly_rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a: Vec<u64> = a.iter().map(|c| c % p).collect();
    let db = b.len() - 1;
    while a.len() > db {
        let lead = a.pop().expect("nonempty");
        if lead != 0 {
            let shift = a.len() - db;
            for (i, &bc) in b[..db].iter().enumerate() {
                a[shift + i] = (a[shift + i] + (p - lead) * bc) % p;
            }
        }
    }
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

/// Monic `f` (lower coefficients given, leading 1 implied) is irreducible
/// over `F_p`, by trial division by every monic polynomial of degree up to
/// `deg f / 2`.
pub fn is_irreducible_mod_p(lower: &[u64], p: u64) -> bool {
    let r = lower.len();
    let mut f = lower.to_vec();
    f.push(1);
    for k in 1..=r / 2 {
        for v in 0..p.pow(k as u32) {
            let mut g: Vec<u64> = (0..k).map(|i| (v / p.pow(i as u32)) % p).collect();
            g.push(1);
            if poly_rem(&f, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// Lower coefficients of the monic irreducible of degree `r` over `F_p`
/// with the smallest value `sum c_i p^i`.
pub fn smallest_irreducible(p: u64, r: u32) -> Vec<u64> {
    (0..p.pow(r))
        .map(|v| (0..r).map(|i| (v / p.pow(i)) % p).collect::<Vec<_>>())
        .find(|c| is_irreducible_mod_p(c, p))
        .expect("an irreducible of every degree exists over a prime field")
}

struct GaloisRule {
    modulus: u64,
    r: usize,
    /// Reduced coordinates of `xi^k` for `k < 2r - 1`.
    powers: Vec<Vec<u64>>,
}

impl GaloisRule {
    fn decode(&self, mut x: u32) -> Vec<u64> {
        (0..self.r)
            .map(|_| {
                let d = x as u64 % self.modulus;
                x = (x as u64 / self.modulus) as u32;
                d
            })
            .collect()
    }

    fn encode(&self, c: &[u64]) -> u32 {
        c.iter().rev().fold(0u64, |acc, &d| acc * self.modulus + d) as u32
    }
}

impl RingRule for GaloisRule {
    fn add(&self, a: u32, b: u32) -> u32 {
        let (x, y) = (self.decode(a), self.decode(b));
        let z: Vec<u64> = x.iter().zip(&y).map(|(u, v)| (u + v) % self.modulus).collect();
        self.encode(&z)
    }

    fn neg(&self, a: u32) -> u32 {
        let z: Vec<u64> = self.decode(a).iter().map(|u| (self.modulus - u) % self.modulus).collect();
        self.encode(&z)
    }

    fn mul(&self, a: u32, b: u32) -> u32 {
        let (x, y) = (self.decode(a), self.decode(b));
        let m = self.modulus;
        let mut out = vec![0u64; self.r];
        for (i, &u) in x.iter().enumerate() {
            if u == 0 {
                continue;
            }
            for (j, &v) in y.iter().enumerate() {
                let c = u * v % m;
                for (slot, &w) in out.iter_mut().zip(&self.powers[i + j]) {
                    *slot = (*slot + c * w) % m;
                }
            }
        }
        self.encode(&out)
    }
}

/// `GR(p^d, r)` and its Frobenius automorphism. Elements are coefficient
/// vectors in `1, xi, .., xi^{r-1}` with encoding `sum a_i (p^d)^i`.
pub fn galois_ring(p: u64, d: u32, r: u32, size_cap: u64) -> Result<(Arc<FiniteRing>, RingMap)> {
    if !is_prime(p) {
        return Err(Error::InvalidInput(format!("{p} is not prime")));
    }
    if d == 0 || r == 0 {
        return Err(Error::InvalidInput("Galois ring needs d, r >= 1".into()));
    }
    let modulus = p
        .checked_pow(d)
        .ok_or_else(|| Error::cap("Galois ring order", size_cap, u64::MAX))?;
    let order = modulus
        .checked_pow(r)
        .filter(|&o| o <= size_cap && o <= u32::MAX as u64)
        .ok_or_else(|| Error::cap("Galois ring order", size_cap, modulus.saturating_pow(r)))?;
    let lower = smallest_irreducible(p, r);
    let r = r as usize;
    let mut powers: Vec<Vec<u64>> = Vec::with_capacity(2 * r);
    for k in 0..(2 * r).saturating_sub(1).max(1) {
        if k < r {
            let mut e = vec![0u64; r];
            e[k] = 1;
            powers.push(e);
        } else {
            // xi^k = xi * xi^{k-1}, with xi^r = -sum f_i xi^i.
            let prev = &powers[k - 1];
            let top = prev[r - 1];
            let mut next = vec![0u64; r];
            next[1..r].copy_from_slice(&prev[..r - 1]);
            for i in 0..r {
                next[i] = (next[i] + (modulus - lower[i] % modulus) * top) % modulus;
            }
            powers.push(next);
        }
    }
    let rule = Arc::new(GaloisRule { modulus, r, powers });
    let one = 1u32;
    let ring = Arc::new(FiniteRing::from_rule(
        order as usize,
        0,
        one,
        rule.clone(),
        RingDescriptor::galois(p, d, r as u32),
        Some(Basis::new(vec![modulus; r])),
    )?);

    let xi = if r == 1 { rule.encode(&[0]) } else { rule.encode(&{
        let mut e = vec![0u64; r];
        e[1] = 1;
        e
    }) };
    let int = |c: u64| {
        let mut e = vec![0u64; r];
        e[0] = c % modulus;
        rule.encode(&e)
    };
    let xi_p = ring.pow(xi, p);
    let target: Vec<u64> = rule.decode(xi_p).iter().map(|c| c % p).collect();
    let eval_f = |y: u32| {
        let mut acc = ring.one();
        for i in (0..r).rev() {
            acc = ring.add(ring.mul(acc, y), int(lower[i]));
        }
        acc
    };
    let roots: Vec<u32> = ring
        .elements()
        .filter(|&y| rule.decode(y).iter().map(|c| c % p).eq(target.iter().copied()) && eval_f(y) == ring.zero())
        .collect();
    let sigma_xi = match roots.as_slice() {
        [y] => *y,
        _ => {
            return Err(Error::Internal(format!(
                "Frobenius root search found {} candidates",
                roots.len()
            )))
        }
    };
    let ypow: Vec<u32> = (0..r).map(|i| ring.pow(sigma_xi, i as u64)).collect();
    let image = ring
        .elements()
        .map(|x| {
            rule.decode(x).iter().zip(&ypow).fold(ring.zero(), |acc, (&c, &yp)| {
                ring.add(acc, ring.mul(int(c), yp))
            })
        })
        .collect();
    let sigma = RingMap::new(ring.clone(), ring.clone(), image)?;
    if !sigma.flags().is_ring_hom() || !sigma.flags().is_injective {
        return Err(Error::Internal("Frobenius is not an automorphism".into()));
    }
    Ok((ring, sigma))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smallest_irreducibles() {
        assert_eq!(smallest_irreducible(2, 1), vec![0]);
        assert_eq!(smallest_irreducible(2, 2), vec![1, 1]);
        assert_eq!(smallest_irreducible(3, 2), vec![1, 0]);
        assert_eq!(smallest_irreducible(2, 3), vec![1, 1, 0]);
    }

    #[test]
    fn gr_9_2_frobenius_conjugates() {
        let (r, s) = galois_ring(3, 2, 2, 1 << 20).unwrap();
        assert_eq!(r.order(), 81);
        // xi is coordinate vector (0,1) -> encoding 9; sigma(xi) = -xi = 8*9.
        assert_eq!(s.apply(9), 72);
        assert_eq!(s.order(), 2);
        assert_eq!(s.fixed_points().len(), 9);
    }
}
