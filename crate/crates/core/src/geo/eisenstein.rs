use serde::{Deserialize, Serialize};

use super::skew::SkewPoly;
use crate::Result;

/// A candidate defining polynomial `c(x)` of degree `t m` with the
/// truncation exponent `rho`; `a` pins the non-central coefficient index
/// `t a` when the caller expects the almost-central shape.
#[derive(Clone, Debug)]
pub struct EisensteinSpec {
    pub c: SkewPoly,
    /// Order of the twisting automorphism.
    pub t: u32,
    pub m: u32,
    pub rho: u32,
    pub a: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EisensteinCheck {
    pub eisenstein: bool,
    pub central: bool,
    /// `Some(a)` when `c - c_{ta} x^{ta}` is central and `c_{ta}` moves by a
    /// nonzero element of the last radical power.
    pub almost_central_at: Option<u32>,
    pub special: bool,
    pub reasons: Vec<String>,
}

/// `c` is monic of degree `t m` with only powers `x^{tk}`, lower
/// coefficients in the radical `pR`, `c_0` outside `p^2 R` when `d > 1`,
/// and either central or almost central (then `rho = t a + 1`).
pub fn validate_special_eisenstein(spec: &EisensteinSpec, p: u64, d: u32) -> Result<EisensteinCheck> {
    let c = &spec.c;
    let ring = c.ring();
    let mut reasons = Vec::new();
    let e = (spec.t * spec.m) as usize;
    if c.degree() != Some(e) || c.coeff(e) != ring.one() {
        reasons.push(format!("c must be monic of degree t*m = {e}"));
    }
    if spec.rho == 0 || spec.rho as usize > e {
        reasons.push(format!("rho = {} must lie in 1..={e}", spec.rho));
    }
    if let Some(i) = (0..e).find(|&i| i % spec.t as usize != 0 && c.coeff(i) != ring.zero()) {
        reasons.push(format!("coefficient of x^{i} must vanish (only powers of x^t allowed)"));
    }
    // a in pR iff a = p * b for some b; p^2 R likewise.
    let multiples = |k: u64| -> Vec<u32> {
        let mut v: Vec<u32> = ring.elements().map(|b| ring.scale(k, b)).collect();
        v.sort_unstable();
        v.dedup();
        v
    };
    let radical = multiples(p);
    let mut eisenstein = true;
    if let Some(i) = (0..e).find(|&i| radical.binary_search(&c.coeff(i)).is_err()) {
        eisenstein = false;
        reasons.push(format!("c_{i} is not in the radical"));
    }
    if d > 1 && multiples(p * p).binary_search(&c.coeff(0)).is_ok() {
        eisenstein = false;
        reasons.push("c_0 lies in the square of the radical".into());
    }
    let central = c.is_central()?;
    let mut almost = None;
    if !central {
        let last_power = multiples(p.pow(d - 1));
        let candidates: Vec<u32> = match spec.a {
            Some(a) => vec![a],
            None => (0..spec.m).collect(),
        };
        for a in candidates {
            let idx = (spec.t * a) as usize;
            let cta = c.coeff(idx);
            let mut rest = c.coeffs().to_vec();
            if idx < rest.len() {
                rest[idx] = ring.zero();
            }
            let rest = SkewPoly::new(ring.clone(), c.sigma().clone(), rest)?;
            let moved = ring.sub(c.sigma().apply(cta), cta);
            if a < spec.m && rest.is_central()? && moved != ring.zero() && last_power.binary_search(&moved).is_ok() {
                almost = Some(a);
                break;
            }
        }
        match almost {
            None => reasons.push("c is neither central nor almost central".into()),
            Some(a) if spec.rho != spec.t * a + 1 => {
                reasons.push(format!("almost central at a = {a} requires rho = {}", spec.t * a + 1))
            }
            Some(_) => {}
        }
    }
    Ok(EisensteinCheck { eisenstein, central, almost_central_at: almost, special: reasons.is_empty(), reasons })
}
