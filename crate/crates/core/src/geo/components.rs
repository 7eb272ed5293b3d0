use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::GeoRing;
use crate::bimodule::{regular_bimodule, restrict_left, restrict_right, FiniteBimodule};
use crate::closure::generated_subgroup;
use crate::group::gcd;
use crate::ring::{center, FiniteRing};
use crate::translations::{ring_c, Endo, EndoRing, EndoSpace};
use crate::{Caps, Error, Result};

/// The projections `eps_l` onto the coordinates `j = l (mod t)`, obtained
/// as combinations of left and right multiplications by coefficients.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ComponentIdempotents {
    /// The coefficient whose twisted circulant matrix was inverted; `None`
    /// when `t = 1`.
    pub pivot_element: Option<u32>,
    /// Smaller units outside the fixed ring whose circulant matrix had no
    /// unit pivot.
    pub singular_candidates: Vec<u32>,
    /// `maps[l]` is `eps_l`.
    pub maps: Vec<Endo>,
}

fn space_of(geo: &GeoRing) -> Arc<EndoSpace> {
    EndoSpace::single(geo.ring.additive_group())
}

fn table(geo: &GeoRing, f: impl Fn(u32) -> u32) -> Endo {
    Endo::from_map(&geo.ring.elements().map(f).collect::<Vec<_>>())
}

/// `s -> sum of the coordinates j = l (mod t)`.
fn coordinate_projection(geo: &GeoRing, l: u32) -> Result<Endo> {
    let zero = geo.coeff.zero();
    let mut out = Vec::with_capacity(geo.ring.order());
    for s in geo.ring.elements() {
        let c: Vec<u32> = geo
            .coords(s)
            .into_iter()
            .enumerate()
            .map(|(j, a)| if j as u32 % geo.t == l { a } else { zero })
            .collect();
        out.push(geo.from_coords(&c)?);
    }
    Ok(Endo::from_map(&out))
}

/// Solve `T C = 1` for the circulant `C` with rows `(sigma^i r, sigma^{i+1} r, ..)`
/// by row reduction with unit pivots. `None` when some column has no unit.
fn invert_circulant(geo: &GeoRing, r: u32) -> Option<Vec<Vec<u32>>> {
    let ring = &geo.coeff;
    let t = geo.t as usize;
    let twist = |a: u32, k: usize| -> u32 { geo.sigma.power(k as u64).apply(a) };
    let mut m: Vec<Vec<u32>> = (0..t).map(|i| (0..t).map(|j| twist(r, i + j)).collect()).collect();
    let mut inv: Vec<Vec<u32>> = (0..t)
        .map(|i| (0..t).map(|j| if i == j { ring.one() } else { ring.zero() }).collect())
        .collect();
    for col in 0..t {
        let piv = (col..t).find(|&i| ring.is_unit(m[i][col]))?;
        m.swap(col, piv);
        inv.swap(col, piv);
        let u = ring.inverse(m[col][col]).expect("unit");
        for v in [&mut m[col], &mut inv[col]] {
            for x in v.iter_mut() {
                *x = ring.mul(u, *x);
            }
        }
        for i in (0..t).filter(|&i| i != col) {
            let f = m[i][col];
            if f == ring.zero() {
                continue;
            }
            for j in 0..t {
                m[i][j] = ring.sub(m[i][j], ring.mul(f, m[col][j]));
                inv[i][j] = ring.sub(inv[i][j], ring.mul(f, inv[col][j]));
            }
        }
    }
    Some(inv)
}

/// Build `eps_0, .., eps_{t-1}` inside the ring generated by left and right
/// multiplications by `R`, then check them against the coordinate
/// projections on every element.
pub fn component_idempotents(geo: &GeoRing) -> Result<ComponentIdempotents> {
    let space = space_of(geo);
    if geo.t == 1 {
        return Ok(ComponentIdempotents { pivot_element: None, singular_candidates: vec![], maps: vec![space.identity()] });
    }
    if gcd(geo.t as u64, geo.spec.p) != 1 {
        return Err(Error::Unsupported(format!("order of sigma {} is not prime to p = {}", geo.t, geo.spec.p)));
    }
    let ring = &geo.coeff;
    let fixed = geo.sigma.fixed_points();
    let mut singular = Vec::new();
    let mut found = None;
    for r in ring.elements().filter(|&r| ring.is_unit(r) && fixed.binary_search(&r).is_err()) {
        match invert_circulant(geo, r) {
            Some(inv) => {
                found = Some((r, inv));
                break;
            }
            None => singular.push(r),
        }
    }
    let (r, inv) = found.ok_or_else(|| Error::Construction("no circulant matrix with unit pivots".into()))?;
    let s = &geo.ring;
    let twisted: Vec<u32> = (0..geo.t as u64).map(|i| geo.embed.apply(geo.sigma.power(i).apply(r))).collect();
    let mut maps = Vec::with_capacity(geo.t as usize);
    for row in &inv {
        let lefts: Vec<u32> = row.iter().map(|&a| geo.embed.apply(a)).collect();
        maps.push(table(geo, |x| {
            lefts
                .iter()
                .zip(&twisted)
                .fold(s.zero(), |acc, (&a, &b)| s.add(acc, s.mul(s.mul(a, x), b)))
        }));
    }
    let comps = ComponentIdempotents { pivot_element: Some(r), singular_candidates: singular, maps };
    verify_components(geo, &space, &comps.maps)?;
    Ok(comps)
}

fn verify_components(geo: &GeoRing, space: &EndoSpace, maps: &[Endo]) -> Result<()> {
    let zero = space.zero();
    let mut sum = zero.clone();
    for (l, e) in maps.iter().enumerate() {
        if *e != coordinate_projection(geo, l as u32)? {
            return Err(Error::Construction(format!("eps_{l} is not the coordinate projection")));
        }
        for (k, f) in maps.iter().enumerate() {
            let ef = space.compose(e, f);
            if (l == k && ef != *e) || (l != k && ef != zero) {
                return Err(Error::Construction(format!("eps_{l} eps_{k} breaks orthogonality")));
            }
        }
        sum = space.add(&sum, e);
    }
    if sum != space.identity() {
        return Err(Error::Construction("components do not sum to the identity".into()));
    }
    Ok(())
}

/// `S` as a bimodule over the coefficient ring on both sides.
pub fn coefficient_bimodule(geo: &GeoRing) -> Result<FiniteBimodule> {
    let reg = regular_bimodule(&geo.ring)?;
    restrict_right(&restrict_left(&reg, &geo.embed)?, &geo.embed)
}

/// The ring of translations of `_R S _R` and its splitting into the
/// orthogonal pieces `phi_l(R) = { (m -> m r) eps_l }`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TranslationDecomposition {
    pub ring_order: u64,
    pub component_orders: Vec<usize>,
    /// `p^{dr}` below `min(t, rho)`, `p^{(d-1)r}` from `rho` on.
    pub expected_orders: Vec<usize>,
    /// `(m -> m r) eps_l = (m -> sigma^l(r) m) eps_l` for every `r`.
    pub left_right_agree: bool,
    pub orthogonal: bool,
    pub identity_sum: bool,
    pub components_in_ring: bool,
    /// Every translation is the sum of its components.
    pub direct_sum: bool,
    pub commutative: bool,
    pub idempotents: ComponentIdempotents,
}

impl TranslationDecomposition {
    pub fn holds(&self) -> bool {
        self.component_orders == self.expected_orders
            && self.ring_order == self.component_orders.iter().map(|&o| o as u64).product::<u64>()
            && self.left_right_agree
            && self.orthogonal
            && self.identity_sum
            && self.components_in_ring
            && self.direct_sum
    }
}

fn sorted_unique(mut v: Vec<Endo>) -> Vec<Endo> {
    v.sort();
    v.dedup();
    v
}

pub fn translation_r_ring(geo: &GeoRing, caps: &Caps) -> Result<(EndoRing, TranslationDecomposition)> {
    let bm = coefficient_bimodule(geo)?;
    let ring = ring_c(&bm, caps)?;
    let members = ring
        .members()
        .ok_or_else(|| Error::cap("translation ring of the coefficients", caps.closure as u64, ring.order()))?
        .to_vec();
    let comps = component_idempotents(geo)?;
    let space = ring.space().clone();
    let s = &geo.ring;
    let coeff = &geo.coeff;
    let mut left_right_agree = true;
    let mut components = Vec::new();
    for (l, eps) in comps.maps.iter().enumerate() {
        let mut phi = Vec::with_capacity(coeff.order());
        let twist = geo.sigma.power(l as u64);
        for r in coeff.elements() {
            let right = table(geo, |x| s.mul(x, geo.embed.apply(r)));
            let left = table(geo, |x| s.mul(geo.embed.apply(twist.apply(r)), x));
            let a = space.compose(&right, eps);
            left_right_agree &= a == space.compose(&left, eps);
            phi.push(a);
        }
        components.push(sorted_unique(phi));
    }
    let zero = space.zero();
    let orthogonal = components.iter().enumerate().all(|(l, a)| {
        components.iter().enumerate().filter(|&(k, _)| k != l).all(|(_, b)| {
            a.iter().all(|x| b.iter().all(|y| space.compose(x, y) == zero))
        })
    });
    let identity_sum = comps.maps.iter().fold(zero.clone(), |acc, e| space.add(&acc, e)) == space.identity();
    let components_in_ring = comps.maps.iter().chain(components.iter().flatten()).all(|x| ring.contains(x));
    let direct_sum = members.iter().all(|x| {
        let parts: Vec<Endo> = comps.maps.iter().map(|e| space.compose(x, e)).collect();
        parts.iter().zip(&components).all(|(p, c)| c.binary_search(p).is_ok())
            && parts.iter().fold(zero.clone(), |acc, p| space.add(&acc, p)) == *x
    });
    let (p, d, r) = (geo.spec.p, geo.spec.d, geo.spec.r);
    let expected_orders = (0..geo.t)
        .map(|l| if l < geo.t.min(geo.rho) { p.pow(d * r) } else { p.pow((d - 1) * r) } as usize)
        .collect();
    let report = TranslationDecomposition {
        ring_order: ring.order(),
        component_orders: components.iter().map(|c| c.len()).collect(),
        expected_orders,
        left_right_agree,
        orthogonal,
        identity_sum,
        components_in_ring,
        direct_sum,
        commutative: ring.is_commutative(),
        idempotents: comps,
    };
    Ok((ring, report))
}

/// Brute-force center and centralizer of the coefficients, compared with
/// their closed forms: the centralizer is spanned by `R pi^{tk}`, the
/// center by `R_sigma pi^{tk}`, together with the last radical power when
/// `rho = 1 (mod t)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeoCenterReport {
    pub center: Vec<u32>,
    pub formula: Vec<u32>,
    pub formula_agrees: bool,
    pub centralizer: Vec<u32>,
    pub centralizer_formula: Vec<u32>,
    pub centralizer_agrees: bool,
    /// `|Z / (Z cap J(S))|`.
    pub residue_field_order: usize,
}

pub fn geo_center(geo: &GeoRing) -> Result<GeoCenterReport> {
    let s: &Arc<FiniteRing> = &geo.ring;
    let z = center(s);
    let gens: Vec<u32> = geo.coeff.generators().iter().map(|&g| geo.embed.apply(g)).collect();
    let centralizer: Vec<u32> = s.elements().filter(|&x| gens.iter().all(|&g| s.mul(x, g) == s.mul(g, x))).collect();
    let group = s.additive_group();
    let fixed = geo.sigma.fixed_points();
    let pi_t: Vec<u32> = (0..geo.m).map(|k| geo.pi_power(geo.t * k)).collect();
    let span = |coeffs: &[u32], extra: &[u32]| -> Vec<u32> {
        let seeds: Vec<u32> = pi_t
            .iter()
            .flat_map(|&y| coeffs.iter().map(move |&a| (a, y)))
            .map(|(a, y)| s.mul(geo.embed.apply(a), y))
            .chain(extra.iter().copied())
            .collect();
        generated_subgroup(&group, seeds, &[])
    };
    let powers = geo.radical_powers();
    let last = &powers[geo.n as usize - 1];
    let extra: &[u32] = if geo.rho % geo.t == 1 % geo.t { last } else { &[] };
    let formula = span(&fixed, extra);
    let all: Vec<u32> = geo.coeff.elements().collect();
    let centralizer_formula = span(&all, &[]);
    let radical = crate::ring::jacobson_radical(s);
    let in_radical = z.iter().filter(|&&x| radical.contains(x)).count();
    Ok(GeoCenterReport {
        formula_agrees: formula == z,
        centralizer_agrees: centralizer_formula == centralizer,
        residue_field_order: z.len() / in_radical,
        center: z,
        formula,
        centralizer,
        centralizer_formula,
    })
}
