use std::sync::Arc;

use crate::ring::{FiniteRing, RingMap};
use crate::{Error, Result};

/// A polynomial in `R[x, sigma]`, where `x r = sigma(r) x`. Coefficients are
/// ring encodings, lowest degree first, with no trailing zeros.
#[derive(Clone, Debug)]
pub struct SkewPoly {
    ring: Arc<FiniteRing>,
    sigma: Arc<RingMap>,
    coeffs: Vec<u32>,
}

impl PartialEq for SkewPoly {
    fn eq(&self, other: &Self) -> bool {
        self.same_base(other) && self.coeffs == other.coeffs
    }
}

impl SkewPoly {
    pub fn new(ring: Arc<FiniteRing>, sigma: Arc<RingMap>, coeffs: Vec<u32>) -> Result<SkewPoly> {
        if !Arc::ptr_eq(sigma.source(), &ring) && sigma.source().descriptor() != ring.descriptor() {
            return Err(Error::InvalidInput("automorphism is not defined on the coefficient ring".into()));
        }
        if !sigma.flags().is_ring_hom() || !sigma.flags().is_injective {
            return Err(Error::InvalidInput("sigma is not a ring automorphism".into()));
        }
        if let Some(&c) = coeffs.iter().find(|&&c| c as usize >= ring.order()) {
            return Err(Error::InvalidInput(format!("coefficient {c} out of range")));
        }
        let mut p = SkewPoly { ring, sigma, coeffs };
        p.trim();
        Ok(p)
    }

    pub fn constant(ring: &Arc<FiniteRing>, sigma: &Arc<RingMap>, r: u32) -> Result<SkewPoly> {
        SkewPoly::new(ring.clone(), sigma.clone(), vec![r])
    }

    pub fn x(ring: &Arc<FiniteRing>, sigma: &Arc<RingMap>) -> Result<SkewPoly> {
        SkewPoly::new(ring.clone(), sigma.clone(), vec![ring.zero(), ring.one()])
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&self.ring.zero()) {
            self.coeffs.pop();
        }
    }

    pub fn ring(&self) -> &Arc<FiniteRing> {
        &self.ring
    }

    pub fn sigma(&self) -> &Arc<RingMap> {
        &self.sigma
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> u32 {
        self.coeffs.get(i).copied().unwrap_or(self.ring.zero())
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn same_base(&self, other: &SkewPoly) -> bool {
        (Arc::ptr_eq(&self.ring, &other.ring) || self.ring.descriptor() == other.ring.descriptor())
            && self.sigma.image() == other.sigma.image()
    }

    fn check_base(&self, other: &SkewPoly) -> Result<()> {
        if self.same_base(other) {
            Ok(())
        } else {
            Err(Error::InvalidInput("skew polynomials over different bases".into()))
        }
    }

    fn with(&self, coeffs: Vec<u32>) -> SkewPoly {
        let mut p = SkewPoly { ring: self.ring.clone(), sigma: self.sigma.clone(), coeffs };
        p.trim();
        p
    }

    /// `sigma^k(r)`.
    pub fn twist(&self, r: u32, k: usize) -> u32 {
        (0..k).fold(r, |a, _| self.sigma.apply(a))
    }

    pub fn skew_add(&self, other: &SkewPoly) -> Result<SkewPoly> {
        self.check_base(other)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        Ok(self.with((0..n).map(|i| self.ring.add(self.coeff(i), other.coeff(i))).collect()))
    }

    pub fn neg(&self) -> SkewPoly {
        self.with(self.coeffs.iter().map(|&c| self.ring.neg(c)).collect())
    }

    pub fn skew_sub(&self, other: &SkewPoly) -> Result<SkewPoly> {
        self.skew_add(&other.neg())
    }

    /// `(a x^i)(b x^j) = a sigma^i(b) x^{i+j}`.
    pub fn skew_mul(&self, other: &SkewPoly) -> Result<SkewPoly> {
        self.check_base(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(self.with(vec![]));
        }
        let mut out = vec![self.ring.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == self.ring.zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                let term = self.ring.mul(a, self.twist(b, i));
                out[i + j] = self.ring.add(out[i + j], term);
            }
        }
        Ok(self.with(out))
    }

    /// Commutes with `x` and with every ring generator of the coefficients.
    pub fn is_central(&self) -> Result<bool> {
        let x = SkewPoly::x(&self.ring, &self.sigma)?;
        if self.skew_mul(&x)? != x.skew_mul(self)? {
            return Ok(false);
        }
        for &g in self.ring.generators() {
            let g = SkewPoly::constant(&self.ring, &self.sigma, g)?;
            if self.skew_mul(&g)? != g.skew_mul(self)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}
