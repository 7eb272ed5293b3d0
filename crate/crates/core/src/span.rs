//! Submodules of `(Z/p^k)^n` in Howell form.
//!
//! Rows are kept with pivot entries exactly `p^v`, sorted by pivot column,
//! and the span is closed under the "annihilator shift" `p^(k-v) * row`, so
//! membership is decided by plain reduction and the order is
//! `prod p^(k - v)`.

use crate::{Error, Result};

#[derive(Clone, Debug)]
pub struct Span {
    p: u64,
    k: u32,
    modulus: u64,
    width: usize,
    /// `(pivot column, valuation, row)` sorted by pivot column.
    rows: Vec<(usize, u32, Vec<u64>)>,
}

impl Span {
    pub fn new(p: u64, k: u32, width: usize) -> Result<Span> {
        if !crate::group::is_prime(p) || k == 0 {
            return Err(Error::InvalidInput(format!("span over Z/{p}^{k}")));
        }
        let modulus = p
            .checked_pow(k)
            .filter(|m| m.checked_mul(*m).is_some())
            .ok_or_else(|| Error::Unsupported(format!("span modulus {p}^{k} too large")))?;
        Ok(Span { p, k, modulus, width, rows: Vec::new() })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn rows(&self) -> impl Iterator<Item = &[u64]> {
        self.rows.iter().map(|(_, _, r)| r.as_slice())
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Number of elements; `None` if it does not fit in `u64`.
    pub fn order(&self) -> Option<u64> {
        self.rows
            .iter()
            .try_fold(1u64, |acc, (_, v, _)| acc.checked_mul(self.p.pow(self.k - v)))
    }

    /// log_p of the order.
    pub fn log_order(&self) -> u32 {
        self.rows.iter().map(|(_, v, _)| self.k - v).sum()
    }

    fn valuation(&self, mut x: u64) -> u32 {
        let mut v = 0;
        while x.is_multiple_of(self.p) && v < self.k {
            x /= self.p;
            v += 1;
        }
        v
    }

    fn inverse_unit(&self, u: u64) -> u64 {
        // Euler: u^(phi(p^k) - 1).
        let phi = self.modulus / self.p * (self.p - 1);
        let mut acc = 1u64;
        let (mut base, mut e) = (u % self.modulus, phi - 1);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % self.modulus;
            }
            base = base * base % self.modulus;
            e >>= 1;
        }
        acc
    }

    fn scaled(&self, v: &[u64], c: u64) -> Vec<u64> {
        v.iter().map(|x| x * c % self.modulus).collect()
    }

    /// Reduce `v` by the rows; returns the remainder and the first column
    /// where reduction got stuck.
    fn reduce(&self, mut v: Vec<u64>) -> (Vec<u64>, Option<usize>) {
        let m = self.modulus;
        let mut ri = 0;
        for c in 0..self.width {
            if v[c] == 0 {
                continue;
            }
            while ri < self.rows.len() && self.rows[ri].0 < c {
                ri += 1;
            }
            match self.rows.get(ri) {
                Some((pc, pv, row)) if *pc == c && self.valuation(v[c]) >= *pv => {
                    let factor = v[c] / self.p.pow(*pv);
                    for (x, r) in v.iter_mut().zip(row) {
                        *x = (*x + m - factor * r % m) % m;
                    }
                }
                _ => return (v, Some(c)),
            }
        }
        (v, None)
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        assert_eq!(v.len(), self.width);
        self.reduce(v.iter().map(|x| x % self.modulus).collect()).1.is_none()
    }

    /// Add `v` to the span; true when the span grew.
    pub fn insert(&mut self, v: &[u64]) -> bool {
        assert_eq!(v.len(), self.width);
        let mut grew = false;
        let mut work = vec![v.iter().map(|x| x % self.modulus).collect::<Vec<u64>>()];
        while let Some(v) = work.pop() {
            let (v, stuck) = self.reduce(v);
            let Some(c) = stuck else { continue };
            let val = self.valuation(v[c]);
            let unit = v[c] / self.p.pow(val);
            let row = self.scaled(&v, self.inverse_unit(unit));
            work.push(self.scaled(&row, self.p.pow(self.k - val)));
            match self.rows.iter().position(|(pc, _, _)| *pc >= c) {
                Some(i) if self.rows[i].0 == c => {
                    let old = std::mem::replace(&mut self.rows[i], (c, val, row));
                    work.push(old.2);
                }
                Some(i) => self.rows.insert(i, (c, val, row)),
                None => self.rows.push((c, val, row)),
            }
            grew = true;
        }
        grew
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Brute-force span by closing under addition.
    fn brute(m: u64, width: usize, gens: &[Vec<u64>]) -> std::collections::BTreeSet<Vec<u64>> {
        let mut set = std::collections::BTreeSet::new();
        set.insert(vec![0; width]);
        loop {
            let mut next = set.clone();
            for s in &set {
                for g in gens {
                    next.insert(s.iter().zip(g).map(|(a, b)| (a + b) % m).collect());
                }
            }
            if next.len() == set.len() {
                return set;
            }
            set = next;
        }
    }

    #[test]
    fn annihilator_shift_is_needed() {
        // Over Z/4: span of (2, 1) contains (0, 2).
        let mut s = Span::new(2, 2, 2).unwrap();
        s.insert(&[2, 1]);
        assert_eq!(s.order(), Some(4));
        assert!(s.contains(&[0, 2]));
        assert!(!s.contains(&[0, 1]));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn matches_brute_force(
            pk in prop::sample::select(vec![(2u64, 1u32), (2, 2), (3, 2), (2, 3)]),
            raw in prop::collection::vec(prop::collection::vec(0u64..27, 3), 1..4),
        ) {
            let (p, k) = pk;
            let m = p.pow(k);
            let gens: Vec<Vec<u64>> = raw.iter().map(|g| g.iter().map(|x| x % m).collect()).collect();
            let mut s = Span::new(p, k, 3).unwrap();
            for g in &gens {
                s.insert(g);
            }
            let set = brute(m, 3, &gens);
            prop_assert_eq!(s.order(), Some(set.len() as u64));
            for a in 0..m {
                for b in 0..m {
                    for c in 0..m {
                        let v = vec![a, b, c];
                        prop_assert_eq!(s.contains(&v), set.contains(&v));
                    }
                }
            }
        }
    }
}
