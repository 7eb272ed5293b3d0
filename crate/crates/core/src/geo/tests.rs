use std::collections::HashSet;
use std::sync::Arc;

use super::*;
use crate::bimodule::regular_bimodule;
use crate::translations::{Endo, EndoSpace};

fn caps() -> Caps {
    Caps::default()
}

fn ge8() -> GeoSpec {
    GeoSpec::new(2, 2, 1, 0, vec![2, 0, 1], 1)
}

fn ge16() -> GeoSpec {
    GeoSpec::new(2, 2, 1, 0, vec![2, 0, 1], 2)
}

/// `GF(4)[x, frobenius] / (x^2)`.
fn skew16() -> GeoSpec {
    GeoSpec::new(2, 1, 2, 1, vec![0, 0, 1], 2)
}

/// `GR(9,2)[x, frobenius] / (x^2 + 3)`.
fn geo729() -> GeoSpec {
    GeoSpec::new(3, 2, 2, 1, vec![3, 0, 1], 1)
}

fn build(spec: &GeoSpec) -> GeoRing {
    build_geo_ring(spec, &caps()).unwrap()
}

/// Independent product: skew polynomial product, then strip the leading
/// term with right multiples of `c`, then reduce the positions `>= rho`
/// digit by digit modulo `p^{d-1}`.
fn oracle_product(geo: &GeoRing, a: u32, b: u32) -> Vec<u32> {
    let r = &geo.coeff;
    let sigma = Arc::new(geo.sigma.clone());
    let poly = |c: Vec<u32>| SkewPoly::new(r.clone(), sigma.clone(), c).unwrap();
    let c = poly(geo.spec.c_coeffs.clone());
    let e = geo.e as usize;
    let sigma_e = geo.sigma.power(e as u64);
    let mut h = poly(geo.coords(a)).skew_mul(&poly(geo.coords(b))).unwrap();
    while let Some(deg) = h.degree().filter(|&d| d >= e) {
        let lead = h.coeff(deg);
        let pre = r.elements().find(|&y| sigma_e.apply(y) == lead).unwrap();
        let mut shift = vec![0; deg - e + 1];
        shift[deg - e] = pre;
        h = h.skew_sub(&c.skew_mul(&poly(shift)).unwrap()).unwrap();
    }
    let pd = geo.spec.p.pow(geo.spec.d);
    let low = geo.spec.p.pow(geo.spec.d - 1);
    (0..e)
        .map(|j| {
            let x = h.coeff(j) as u64;
            if j < geo.rho as usize {
                return x as u32;
            }
            let (mut rest, mut out, mut place) = (x, 0u64, 1u64);
            for _ in 0..geo.spec.r {
                out += (rest % pd) % low * place;
                rest /= pd;
                place *= pd;
            }
            out as u32
        })
        .collect()
}

#[test]
fn orders_and_invariants() {
    // (spec, |S|, n, q, commutative)
    let cases = [
        (ge8(), 8, 3, 2, true),
        (ge16(), 16, 4, 2, true),
        (skew16(), 16, 2, 4, false),
        (geo729(), 729, 3, 9, false),
    ];
    for (spec, order, n, q, comm) in cases {
        let g = build(&spec);
        assert_eq!((g.ring.order(), g.n, g.q, g.is_commutative()), (order, n, q, comm), "{}", spec.label());
        let inv = geo_invariants(&g).unwrap();
        assert!(inv.all_hold(), "{inv:?}");
        let expected: Vec<usize> = (0..=n).map(|j| (q as usize).pow(n - j)).collect();
        assert_eq!(inv.radical_power_orders, expected);
        assert!(g.eisenstein().unwrap().special);
    }
}

#[test]
fn product_matches_skew_oracle() {
    for spec in [ge8(), ge16(), skew16()] {
        let g = build(&spec);
        for a in g.ring.elements() {
            for b in g.ring.elements() {
                assert_eq!(g.coords(g.ring.mul(a, b)), oracle_product(&g, a, b), "{a} * {b}");
            }
        }
    }
    use rand::{Rng, SeedableRng};
    let g = build(&geo729());
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    for _ in 0..3000 {
        let (a, b) = (rng.gen_range(0..729), rng.gen_range(0..729));
        assert_eq!(g.coords(g.ring.mul(a, b)), oracle_product(&g, a, b), "{a} * {b}");
    }
}

#[test]
fn noncommutative_witness_and_sigma_element() {
    let g = build(&geo729());
    let xi = g.embed.apply(9);
    assert_ne!(g.ring.mul(g.pi, xi), g.ring.mul(xi, g.pi));
    assert_eq!(g.ring.mul(g.pi, xi), g.ring.mul(g.embed.apply(g.sigma.apply(9)), g.pi));
    // pi^2 = -3.
    assert_eq!(g.pi_power(2), g.embed.apply(6));
    assert_eq!(g.coords(g.pi), vec![0, 1]);
}

#[test]
fn one_sided_ideals_are_radical_powers() {
    for spec in [ge8(), ge16(), skew16(), geo729()] {
        let g = build(&spec);
        assert!(ideals_are_radical_powers(&g, &caps()).unwrap(), "{}", spec.label());
        let all = all_ideals(&g.ring, Side::Left, 1024).unwrap();
        assert_eq!(all.len() as u32, g.n + 1);
    }
}

#[test]
fn socle_is_last_radical_power() {
    for spec in [ge8(), ge16(), skew16(), geo729()] {
        let g = build(&spec);
        let bm = regular_bimodule(&g.ring).unwrap();
        let last = &g.radical_powers()[g.n as usize - 1];
        for side in [Side::Left, Side::Right] {
            let soc = bm.socle(side).unwrap();
            assert_eq!(&soc.members, last);
            assert_eq!(soc.len() as u64, g.q);
        }
    }
    assert_eq!(build(&ge8()).radical_powers()[2].len(), 2);
}

#[test]
fn eisenstein_conditions() {
    let check = |spec: &GeoSpec| {
        let (r, f) = galois_ring(spec.p, spec.d, spec.r, 1 << 20).unwrap();
        let sigma = Arc::new(f.power(spec.sigma_power as u64));
        let t = sigma.order() as u32;
        let c = SkewPoly::new(r, sigma, spec.c_coeffs.clone()).unwrap();
        validate_special_eisenstein(&EisensteinSpec { c, t, m: spec.e() / t, rho: spec.rho, a: None }, spec.p, spec.d)
            .unwrap()
    };
    let ok = check(&ge8());
    assert!(ok.special && ok.central && ok.eisenstein);
    assert!(check(&geo729()).central);
    // 27 encodes 3 xi, which sigma moves by -6 xi, a nonzero element of 3R.
    let moved = GeoSpec::new(3, 2, 2, 1, vec![27, 0, 1], 2);
    let v = check(&moved);
    assert!(!v.central && !v.special);
    assert_eq!(v.almost_central_at, Some(0));
    let v = check(&GeoSpec { rho: 1, ..moved });
    assert!(v.special, "{:?}", v.reasons);
    // Unit constant term.
    let v = check(&GeoSpec::new(2, 2, 1, 0, vec![1, 0, 1], 1));
    assert!(!v.eisenstein && !v.special);
    // c_0 in p^2 R.
    assert!(!check(&GeoSpec::new(2, 3, 1, 0, vec![4, 0, 1], 1)).eisenstein);
    // Odd power with t = 2.
    assert!(!check(&GeoSpec::new(3, 2, 2, 1, vec![3, 3, 1], 1)).special);
}

#[test]
fn almost_central_ring_is_a_geo_ring() {
    let g = build(&GeoSpec::new(3, 2, 2, 1, vec![27, 0, 1], 1));
    assert_eq!(g.ring.order(), 729);
    assert!(ideals_are_radical_powers(&g, &caps()).unwrap());
}

#[test]
fn construction_rejects_bad_recipes() {
    let err = |spec: GeoSpec, caps: &Caps| build_geo_ring(&spec, caps).unwrap_err();
    assert!(matches!(err(GeoSpec::new(3, 2, 2, 1, vec![3, 1], 1), &caps()), Error::InvalidInput(_)));
    assert!(matches!(err(GeoSpec::new(3, 2, 2, 1, vec![27, 0, 1], 2), &caps()), Error::InvalidInput(_)));
    assert!(matches!(err(GeoSpec::new(2, 2, 1, 0, vec![2, 0, 1], 3), &caps()), Error::InvalidInput(_)));
    assert!(matches!(err(GeoSpec::new(2, 2, 1, 0, vec![1], 1), &caps()), Error::InvalidInput(_)));
    let small = Caps { size: 100, ..caps() };
    assert!(err(geo729(), &small).is_cap());
}

#[test]
fn spec_json_and_descriptor_rebuild() {
    let spec = geo729();
    let json = serde_json::to_string(&spec).unwrap();
    assert_eq!(json, r#"{"p":3,"d":2,"r":2,"sigma_power":1,"c_coeffs":[3,0,1],"rho":1}"#);
    assert_eq!(serde_json::from_str::<GeoSpec>(&json).unwrap(), spec);
    let ring = crate::ring::build(&ge8().descriptor(), &caps()).unwrap();
    assert_eq!(ring.order(), 8);
    assert_eq!(ring.descriptor().label(), ge8().label());
}

#[test]
fn component_idempotents_project_on_coordinates() {
    let g = build(&ge8());
    let c = component_idempotents(&g).unwrap();
    assert_eq!(c.maps, vec![EndoSpace::single(g.ring.additive_group()).identity()]);
    assert_eq!(c.pivot_element, None);

    let g = build(&geo729());
    let c = component_idempotents(&g).unwrap();
    assert_eq!(c.maps.len(), 2);
    // xi has a singular circulant matrix; 1 + xi does not.
    assert_eq!(c.singular_candidates, vec![9]);
    assert_eq!(c.pivot_element, Some(10));
    assert_eq!(c.maps[0].apply(g.pi), 0);
    assert_eq!(c.maps[1].apply(g.pi), g.pi);
    let one = g.ring.one();
    assert_eq!((c.maps[0].apply(one), c.maps[1].apply(one)), (one, 0));

    assert!(matches!(component_idempotents(&build(&skew16())), Err(Error::Unsupported(_))));
}

/// All additive combinations of `s -> a s b` for `a, b` in an additive
/// basis of the coefficients: the translation ring of `_R S _R`, since `R`
/// is commutative.
fn translation_ring_oracle(geo: &GeoRing) -> usize {
    let s = &geo.ring;
    let basis = geo.coeff.basis().unwrap();
    let gens: Vec<u32> = (0..basis.len()).map(|j| geo.embed.apply(basis.unit(j))).collect();
    let space = EndoSpace::single(s.additive_group());
    let maps: Vec<Endo> = gens
        .iter()
        .flat_map(|&a| gens.iter().map(move |&b| (a, b)))
        .map(|(a, b)| Endo::from_map(&s.elements().map(|x| s.mul(s.mul(a, x), b)).collect::<Vec<_>>()))
        .collect();
    let mut set: HashSet<Endo> = HashSet::from([space.zero()]);
    for g in &maps {
        loop {
            let new: Vec<Endo> = set.iter().map(|x| space.add(x, g)).filter(|y| !set.contains(y)).collect();
            if new.is_empty() {
                break;
            }
            set.extend(new);
        }
    }
    set.len()
}

#[test]
fn coefficient_translation_ring_splits() {
    let g = build(&geo729());
    let (ring, report) = translation_r_ring(&g, &caps()).unwrap();
    assert_eq!(ring.order() as usize, translation_ring_oracle(&g));
    assert_eq!(report.ring_order, 729);
    assert_eq!(report.component_orders, vec![81, 9]);
    assert!(report.holds(), "{report:?}");
    assert!(report.commutative);

    for spec in [ge8(), ge16()] {
        let g = build(&spec);
        let (ring, report) = translation_r_ring(&g, &caps()).unwrap();
        assert_eq!(ring.order() as usize, translation_ring_oracle(&g));
        assert_eq!(report.component_orders, vec![4]);
        assert!(report.holds());
    }
}

#[test]
fn center_and_centralizer() {
    let g = build(&geo729());
    let z = geo_center(&g).unwrap();
    assert_eq!(z.center.len(), 27);
    assert_eq!(z.residue_field_order, 3);
    let mut r: Vec<u32> = g.coeff.elements().map(|a| g.embed.apply(a)).collect();
    r.sort_unstable();
    assert_eq!(z.centralizer, r);
    assert!(z.formula_agrees && z.centralizer_agrees);

    let g = build(&ge8());
    let z = geo_center(&g).unwrap();
    assert_eq!(z.center, g.ring.elements().collect::<Vec<_>>());
    assert!(z.formula_agrees && z.centralizer_agrees);

    // m = 1 and t = 2 = rho: center is the fixed field only.
    let z = geo_center(&build(&skew16())).unwrap();
    assert_eq!(z.center.len(), 2);
    assert!(z.formula_agrees);
}

#[test]
fn block_structure_of_small_rings() {
    let gf4 = galois_ring(2, 1, 2, 1 << 20).unwrap().0;
    let b = block_structure(&gf4);
    assert!(b.is_fields(1, 4));
    let sum = crate::ring::direct_sum(&[gf4.clone(), gf4], 1 << 20).unwrap().0;
    assert!(block_structure(&sum).is_fields(2, 4));
    let m2 = crate::ring::matrix_ring(&crate::ring::residue_ring(2).unwrap(), 2, 1 << 20).unwrap();
    let b = block_structure(&m2);
    assert_eq!(b.blocks, vec![Block { order: 16, commutative: false, field: false }]);
}

#[test]
fn translation_verdicts_small() {
    let v = geo_translation_verdict(&build(&ge8()), &caps()).unwrap();
    assert_eq!((v.regular_qf, v.canonical_qf), (Some(true), Some(true)));
    assert_eq!((v.c_order, v.z_order), (8, 8));
    assert!(v.c_bar_as_expected);
    assert_eq!(v.dichotomy_holds, Some(true));

    let v = geo_translation_verdict(&build(&skew16()), &caps()).unwrap();
    assert_eq!(v.regular_qf, Some(true));
    assert!(!v.dichotomy_applies);
    assert_eq!(v.dichotomy_holds, None);
}

#[test]
fn translation_verdict_729() {
    let v = geo_translation_verdict(&build(&geo729()), &caps()).unwrap();
    assert_eq!(v.regular_qf, Some(true));
    assert_eq!(v.canonical_qf, Some(false));
    assert_eq!((v.c_order, v.z_order), (3u64.pow(16), 27));
    assert!(v.c_bar.is_fields(2, 9), "{:?}", v.c_bar);
    assert_eq!(v.dichotomy_holds, Some(true));
}

proptest::proptest! {
    #![proptest_config(proptest::prelude::ProptestConfig::with_cases(64))]
    #[test]
    fn coordinates_are_a_bijection(s in 0u32..729) {
        let g = build(&geo729());
        let c = g.coords(s);
        proptest::prop_assert_eq!(g.from_coords(&c).unwrap(), s);
        for (j, &a) in c.iter().enumerate() {
            let digits = crate::group::Basis::new(vec![9, 9]).digits(a as u64);
            let bound = if j < 1 { 9 } else { 3 };
            proptest::prop_assert!(digits.iter().all(|&x| x < bound));
        }
    }
}
