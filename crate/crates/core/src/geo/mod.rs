//! Finite completely primary principal ideal rings presented as quotients
//! of skew polynomial rings over Galois rings: `R[x, sigma] / I` with
//! `I = c(x) R[x, sigma] + x^rho p^{d-1} R[x, sigma]`.

mod components;
mod eisenstein;
mod skew;
mod verdict;

pub use components::{
    component_idempotents, geo_center, translation_r_ring, GeoCenterReport, TranslationDecomposition,
};
pub use eisenstein::{validate_special_eisenstein, EisensteinCheck, EisensteinSpec};
pub use skew::SkewPoly;
pub use verdict::{block_structure, geo_translation_verdict, Block, BlockStructure, GeoVerdict};

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::group::{gcd, Basis};
use crate::ring::{
    all_ideals, galois_ring, jacobson_radical, nilpotency_index, power_chain, FiniteRing, RingDescriptor, RingKind,
    RingMap, RingRule,
};
use crate::{Caps, Error, Result, Side};

/// Recipe for a GEO ring. `c_coeffs` are encodings in `GR(p^d, r)`, lowest
/// degree first, including the leading 1; `sigma` is the `sigma_power`-th
/// power of Frobenius.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GeoSpec {
    pub p: u64,
    pub d: u32,
    pub r: u32,
    pub sigma_power: u32,
    pub c_coeffs: Vec<u32>,
    pub rho: u32,
}

impl GeoSpec {
    pub fn new(p: u64, d: u32, r: u32, sigma_power: u32, c_coeffs: Vec<u32>, rho: u32) -> Self {
        GeoSpec { p, d, r, sigma_power, c_coeffs, rho }
    }

    pub fn label(&self) -> String {
        let c: Vec<String> = self.c_coeffs.iter().map(|c| c.to_string()).collect();
        format!(
            "GEO(GR({}^{},{}),s={},c=[{}],rho={})",
            self.p,
            self.d,
            self.r,
            self.sigma_power,
            c.join(","),
            self.rho
        )
    }

    pub fn descriptor(&self) -> RingDescriptor {
        RingDescriptor { kind: RingKind::Geo(self.clone()), cap: None }
    }

    /// Degree of `c`.
    pub fn e(&self) -> u32 {
        self.c_coeffs.len().saturating_sub(1) as u32
    }
}

/// Multiplication on normal forms `sum_{j<e} r_j pi^j`: skew product, then
/// reduction of the degree by right multiples of `c`, then truncation of the
/// coefficients at `j >= rho` modulo `p^{d-1}`.
struct GeoRule {
    coeff: Arc<FiniteRing>,
    /// `twists[k][a] = sigma^k(a)` for `k < t`.
    twists: Vec<Vec<u32>>,
    c: Vec<u32>,
    e: usize,
    rho: usize,
    /// Coordinates of an `R` element (base `p^d`, `r` digits).
    coeff_basis: Basis,
    /// Modulus applied to coordinates at positions `>= rho`.
    truncated: u64,
    basis: Basis,
}

impl GeoRule {
    fn twist(&self, a: u32, k: isize) -> u32 {
        let t = self.twists.len() as isize;
        self.twists[k.rem_euclid(t) as usize][a as usize]
    }

    fn position_modulus(&self, j: usize) -> u64 {
        if j < self.rho {
            self.coeff_basis.moduli()[0]
        } else {
            self.truncated
        }
    }

    /// Reduce an `R` element for position `j`.
    fn reduce_at(&self, j: usize, a: u32) -> u32 {
        if j < self.rho {
            return a;
        }
        let digits: Vec<u64> = self.coeff_basis.digits(a as u64).into_iter().map(|x| x % self.truncated).collect();
        self.coeff_basis.encode(&digits)
    }

    fn decode(&self, s: u32) -> Vec<u32> {
        let mut rest = s as u64;
        let r = self.coeff_basis.len();
        (0..self.e)
            .map(|j| {
                let m = self.position_modulus(j);
                let digits: Vec<u64> = (0..r)
                    .map(|_| {
                        if m <= 1 {
                            return 0;
                        }
                        let d = rest % m;
                        rest /= m;
                        d
                    })
                    .collect();
                self.coeff_basis.encode(&digits)
            })
            .collect()
    }

    fn encode(&self, coords: &[u32]) -> u32 {
        let digits: Vec<u64> = coords
            .iter()
            .enumerate()
            .flat_map(|(j, &a)| {
                let m = self.position_modulus(j);
                self.coeff_basis
                    .digits(self.reduce_at(j, a) as u64)
                    .into_iter()
                    .filter(move |_| m > 1)
                    .map(move |x| x % m)
            })
            .collect();
        self.basis.encode(&digits)
    }

    fn product(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        let ring = &self.coeff;
        let mut h = vec![ring.zero(); 2 * self.e - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == ring.zero() {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                h[i + j] = ring.add(h[i + j], ring.mul(x, self.twist(y, i as isize)));
            }
        }
        for k in (self.e..h.len()).rev() {
            let top = h[k];
            if top == ring.zero() {
                continue;
            }
            // Subtract c(x) * sigma^{-e}(top) x^{k-e}.
            let shift = k - self.e;
            for (i, &ci) in self.c.iter().enumerate() {
                let term = ring.mul(ci, self.twist(top, i as isize - self.e as isize));
                h[i + shift] = ring.sub(h[i + shift], term);
            }
            debug_assert_eq!(h[k], ring.zero());
        }
        h.truncate(self.e);
        h
    }
}

impl RingRule for GeoRule {
    fn add(&self, a: u32, b: u32) -> u32 {
        let (x, y) = (self.basis.digits(a as u64), self.basis.digits(b as u64));
        let s: Vec<u64> = x.iter().zip(&y).map(|(p, q)| p + q).collect();
        self.basis.encode(&s)
    }
    fn neg(&self, a: u32) -> u32 {
        let s: Vec<u64> = self
            .basis
            .digits(a as u64)
            .iter()
            .zip(self.basis.moduli())
            .map(|(x, m)| (m - x) % m)
            .collect();
        self.basis.encode(&s)
    }
    fn mul(&self, a: u32, b: u32) -> u32 {
        self.encode(&self.product(&self.decode(a), &self.decode(b)))
    }
}

/// A constructed GEO ring with its coefficient ring, twist and
/// distinguished generator `pi` (the image of `x`).
pub struct GeoRing {
    pub spec: GeoSpec,
    pub ring: Arc<FiniteRing>,
    /// The coefficient ring `GR(p^d, r)`.
    pub coeff: Arc<FiniteRing>,
    pub sigma: RingMap,
    /// `R -> S`, `r -> r pi^0`.
    pub embed: RingMap,
    pub pi: u32,
    pub e: u32,
    pub t: u32,
    pub m: u32,
    pub rho: u32,
    /// Nilpotency index of the radical, `(d-1) e + rho`.
    pub n: u32,
    /// Order of the residue field.
    pub q: u64,
    rule: Arc<GeoRule>,
}

impl std::fmt::Debug for GeoRing {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("GeoRing").field("spec", &self.spec).field("order", &self.ring.order()).finish()
    }
}

impl GeoRing {
    /// Normal-form coordinates `(r_0, .., r_{e-1})` as `R` encodings.
    pub fn coords(&self, s: u32) -> Vec<u32> {
        self.rule.decode(s)
    }

    /// Inverse of [`GeoRing::coords`]; positions `>= rho` are reduced.
    pub fn from_coords(&self, coords: &[u32]) -> Result<u32> {
        if coords.len() != self.e as usize || coords.iter().any(|&c| c as usize >= self.coeff.order()) {
            return Err(Error::InvalidInput("coordinates do not fit the normal form".into()));
        }
        Ok(self.rule.encode(coords))
    }

    /// Range of admissible coordinates at position `j`.
    pub fn coordinate_order(&self, j: usize) -> u64 {
        self.rule.position_modulus(j).pow(self.spec.r)
    }

    /// `pi^k`.
    pub fn pi_power(&self, k: u32) -> u32 {
        self.ring.pow(self.pi, k as u64)
    }

    pub fn is_commutative(&self) -> bool {
        self.ring.is_commutative()
    }

    /// `p(S)^0 = S, p(S), .., p(S)^n = 0`.
    pub fn radical_powers(&self) -> Vec<Vec<u32>> {
        let j = jacobson_radical(&self.ring);
        let mut out = vec![self.ring.elements().collect::<Vec<u32>>()];
        out.extend(power_chain(&self.ring, &j.members));
        if out.last().map(|v| v.len()) != Some(1) {
            out.push(vec![self.ring.zero()]);
        }
        out
    }

    pub fn eisenstein(&self) -> Result<EisensteinCheck> {
        let sigma = Arc::new(self.sigma.clone());
        let c = SkewPoly::new(self.coeff.clone(), sigma, self.spec.c_coeffs.clone())?;
        validate_special_eisenstein(&EisensteinSpec { c, t: self.t, m: self.m, rho: self.rho, a: None }, self.spec.p, self.spec.d)
    }
}

/// Structural facts checked after construction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeoInvariants {
    pub order: usize,
    pub n: u32,
    pub q: u64,
    /// `|p(S)^j|` for `j = 0..=n`.
    pub radical_power_orders: Vec<usize>,
    pub order_matches: bool,
    pub nilpotency_matches: bool,
    pub radical_powers_match: bool,
    pub pi_is_sigma_element: bool,
    pub pi_generates_radical: bool,
    /// Elements killed by `p^{d-1}` form `p(S)^rho`.
    pub torsion_matches: bool,
    /// Associativity on all triples of additive basis elements.
    pub associative_on_basis: bool,
    pub residue_field_order: usize,
}

impl GeoInvariants {
    pub fn all_hold(&self) -> bool {
        self.order_matches
            && self.nilpotency_matches
            && self.radical_powers_match
            && self.pi_is_sigma_element
            && self.pi_generates_radical
            && self.torsion_matches
            && self.associative_on_basis
            && self.residue_field_order as u64 == self.q
    }
}

/// Validate the recipe and build the ring; any failed invariant aborts.
pub fn build_geo_ring(spec: &GeoSpec, caps: &Caps) -> Result<GeoRing> {
    let (coeff, frob) = galois_ring(spec.p, spec.d, spec.r, caps.size)?;
    let sigma = frob.power(spec.sigma_power as u64);
    let t = sigma.order() as u32;
    let e = spec.e();
    if e == 0 {
        return Err(Error::InvalidInput("c must have positive degree".into()));
    }
    if !e.is_multiple_of(t) {
        return Err(Error::InvalidInput(format!("order of sigma ({t}) must divide deg c ({e})")));
    }
    let m = e / t;
    let sig = Arc::new(sigma.clone());
    let c = SkewPoly::new(coeff.clone(), sig, spec.c_coeffs.clone())?;
    let check = validate_special_eisenstein(&EisensteinSpec { c, t, m, rho: spec.rho, a: None }, spec.p, spec.d)?;
    if !check.special {
        return Err(Error::InvalidInput(format!("c is not special Eisenstein: {}", check.reasons.join("; "))));
    }
    let q = spec.p.pow(spec.r);
    let n = (spec.d - 1) * e + spec.rho;
    let order = q
        .checked_pow(n)
        .filter(|&o| o <= caps.size && o <= u32::MAX as u64)
        .ok_or_else(|| Error::cap("GEO ring order", caps.size, q.saturating_pow(n)))?;
    let pd = spec.p.pow(spec.d);
    let truncated = spec.p.pow(spec.d - 1);
    let coeff_basis = Basis::new(vec![pd; spec.r as usize]);
    let moduli: Vec<u64> = (0..e as usize)
        .flat_map(|j| {
            let m = if j < spec.rho as usize { pd } else { truncated };
            std::iter::repeat_n(m, spec.r as usize)
        })
        .collect();
    let basis = Basis::new(moduli);
    if basis.order() != order {
        return Err(Error::Internal("normal form count disagrees with q^n".into()));
    }
    let twists: Vec<Vec<u32>> = (0..t as u64).map(|k| sigma.power(k).image().to_vec()).collect();
    let rule = Arc::new(GeoRule {
        coeff: coeff.clone(),
        twists,
        c: spec.c_coeffs.clone(),
        e: e as usize,
        rho: spec.rho as usize,
        coeff_basis,
        truncated,
        basis: basis.clone(),
    });
    let one = rule.encode(&{
        let mut v = vec![coeff.zero(); e as usize];
        v[0] = coeff.one();
        v
    });
    let ring = Arc::new(FiniteRing::from_rule(
        order as usize,
        0,
        one,
        rule.clone(),
        spec.descriptor(),
        Some(basis),
    )?);
    let embed_image: Vec<u32> = coeff
        .elements()
        .map(|a| {
            let mut v = vec![coeff.zero(); e as usize];
            v[0] = a;
            rule.encode(&v)
        })
        .collect();
    let embed = RingMap::new(coeff.clone(), ring.clone(), embed_image)?;
    let pi = if e == 1 {
        // x = -c_0 in degree zero.
        rule.encode(&[coeff.neg(spec.c_coeffs[0])])
    } else {
        let mut v = vec![coeff.zero(); e as usize];
        v[1] = coeff.one();
        rule.encode(&v)
    };
    let geo = GeoRing {
        spec: spec.clone(),
        ring,
        coeff,
        sigma,
        embed,
        pi,
        e,
        t,
        m,
        rho: spec.rho,
        n,
        q,
        rule,
    };
    geo.ring.check_axioms(2000, caps.seed)?;
    let inv = geo_invariants(&geo)?;
    if !inv.all_hold() {
        return Err(Error::Construction(format!("{}: invariants fail: {inv:?}", spec.label())));
    }
    Ok(geo)
}

/// Recompute every structural invariant of a constructed ring.
pub fn geo_invariants(geo: &GeoRing) -> Result<GeoInvariants> {
    let s = &geo.ring;
    let j = jacobson_radical(s);
    let n = nilpotency_index(s, &j.members).ok_or_else(|| Error::Construction("radical is not nilpotent".into()))?;
    let powers = geo.radical_powers();
    let orders: Vec<usize> = powers.iter().map(|v| v.len()).collect();
    let expected: Vec<usize> = (0..=geo.n).map(|k| geo.q.pow(geo.n - k) as usize).collect();
    let pi_sigma = geo
        .coeff
        .elements()
        .all(|r| s.mul(geo.pi, geo.embed.apply(r)) == s.mul(geo.embed.apply(geo.sigma.apply(r)), geo.pi));
    let pi_generates = {
        let left: Vec<u32> = {
            let mut v: Vec<u32> = s.elements().map(|x| s.mul(x, geo.pi)).collect();
            v.sort_unstable();
            v.dedup();
            v
        };
        left == j.members && (geo.n < 2 || powers.get(2).is_some_and(|p2| p2.binary_search(&geo.pi).is_err()))
    };
    let killer = geo.embed.apply(geo.coeff.integer(geo.spec.p.pow(geo.spec.d - 1)));
    let torsion: Vec<u32> = s.elements().filter(|&x| s.mul(killer, x) == s.zero()).collect();
    let torsion_matches = powers.get(geo.rho as usize).is_some_and(|p| *p == torsion);
    let basis = s.basis().expect("GEO rings carry a basis").clone();
    let units: Vec<u32> = (0..basis.len()).map(|i| basis.unit(i)).collect();
    let assoc = units.iter().all(|&a| {
        units
            .iter()
            .all(|&b| units.iter().all(|&c| s.mul(s.mul(a, b), c) == s.mul(a, s.mul(b, c))))
    });
    Ok(GeoInvariants {
        order: s.order(),
        n,
        q: geo.q,
        radical_power_orders: orders.clone(),
        order_matches: s.order() as u64 == geo.q.pow(geo.n),
        nilpotency_matches: n == geo.n,
        radical_powers_match: orders == expected,
        pi_is_sigma_element: pi_sigma,
        pi_generates_radical: pi_generates,
        torsion_matches,
        associative_on_basis: assoc,
        residue_field_order: s.order() / j.len(),
    })
}

/// Every one-sided ideal is a power of the radical: by full enumeration
/// up to `caps.lattice` elements, otherwise on the principal ideals of a
/// seeded sample.
pub fn ideals_are_radical_powers(geo: &GeoRing, caps: &Caps) -> Result<bool> {
    let powers = geo.radical_powers();
    let s = &geo.ring;
    if s.order() <= caps.lattice {
        for side in [Side::Left, Side::Right] {
            let mut ideals: Vec<Vec<u32>> = all_ideals(s, side, caps.lattice)?.into_iter().map(|i| i.members).collect();
            ideals.sort();
            let mut expected = powers.clone();
            expected.sort();
            if ideals != expected {
                return Ok(false);
            }
        }
        return Ok(true);
    }
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(caps.seed);
    for _ in 0..64 {
        let x = rng.gen_range(0..s.order() as u32);
        for side in [Side::Left, Side::Right] {
            let ideal = crate::ring::ideal_generated(s, &[x], side);
            if !powers.contains(&ideal.members) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Both socles of `S` against the last radical power, and the orders of
/// all radical powers against `q^{n-j}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SocleFormulaReport {
    pub left_is_last_power: bool,
    pub right_is_last_power: bool,
    pub socle_order: usize,
    pub q: u64,
    pub power_orders: Vec<usize>,
    pub expected_orders: Vec<usize>,
}

impl SocleFormulaReport {
    pub fn holds(&self) -> bool {
        self.left_is_last_power
            && self.right_is_last_power
            && self.socle_order as u64 == self.q
            && self.power_orders == self.expected_orders
    }
}

pub fn socle_formula_check(geo: &GeoRing) -> Result<SocleFormulaReport> {
    let bm = crate::bimodule::regular_bimodule(&geo.ring)?;
    let powers = geo.radical_powers();
    let last = &powers[geo.n as usize - 1];
    let left = bm.socle(Side::Left)?;
    let right = bm.socle(Side::Right)?;
    Ok(SocleFormulaReport {
        left_is_last_power: left.members == *last,
        right_is_last_power: right.members == *last,
        socle_order: left.len(),
        q: geo.q,
        power_orders: powers.iter().map(|p| p.len()).collect(),
        expected_orders: (0..=geo.n).map(|j| geo.q.pow(geo.n - j) as usize).collect(),
    })
}

/// `(r, p) = 1` and `d > 1`: the setting where the translation ring
/// dichotomy is claimed.
pub fn dichotomy_applies(spec: &GeoSpec) -> bool {
    spec.d > 1 && gcd(spec.r as u64, spec.p) == 1
}

#[cfg(test)]
mod tests;
