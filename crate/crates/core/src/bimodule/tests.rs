use std::sync::Arc;

use proptest::prelude::*;

use super::*;
use crate::ring::{
    all_ideals, direct_sum, galois_ring, matrix_ring, quotient_ring, residue_ring, scalar_embedding, IdealSet,
};
use crate::Caps;

/// Every subset of a carrier of order <= 16 closed under addition and the
/// given maps.
fn subset_submodules(group: &AbelianGroup, maps: &[&[u32]]) -> Vec<Vec<u32>> {
    let n = group.order();
    assert!(n <= 16);
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        let has = |x: u32| mask >> x & 1 == 1;
        if !has(group.zero()) {
            continue;
        }
        let members: Vec<u32> = (0..n as u32).filter(|&x| has(x)).collect();
        let closed = members
            .iter()
            .all(|&a| members.iter().all(|&b| has(group.add(a, b))) && maps.iter().all(|g| has(g[a as usize])));
        if closed {
            out.push(members);
        }
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

/// All translations of the acting ring, not only generators.
fn all_translations(bm: &FiniteBimodule, side: Side) -> Vec<Vec<u32>> {
    let ring = bm.acting(side).ring().unwrap();
    ring.elements().map(|a| (0..bm.order() as u32).map(|m| bm.act(side, a, m)).collect()).collect()
}

fn z4() -> Arc<FiniteRing> {
    residue_ring(4).unwrap()
}

fn column(r: usize, s: usize) -> FiniteBimodule {
    column_bimodule(&z4(), r, s, &Caps::default()).unwrap()
}

/// `_Z (Z/4)^2 _Z` with the left action restricted to scalars.
fn scalar_restricted() -> FiniteBimodule {
    let col = column(2, 1);
    let m2 = col.left().ring().unwrap().clone();
    let f = scalar_embedding(&z4(), &m2, 2).unwrap();
    restrict_left(&col, &f).unwrap()
}

/// `_Z4 GF(2) _Z4` through the quotient map.
fn quotient_module() -> FiniteBimodule {
    let z = z4();
    let (f2, proj) = quotient_ring(&z, &IdealSet::new(Side::TwoSided, vec![0, 2])).unwrap();
    let reg = regular_bimodule(&f2).unwrap();
    let l = restrict_left(&reg, &proj).unwrap();
    restrict_right(&l, &proj).unwrap()
}

fn corpus() -> Vec<FiniteBimodule> {
    let (gf4, _) = galois_ring(2, 1, 2, 1 << 20).unwrap();
    vec![
        regular_bimodule(&residue_ring(2).unwrap()).unwrap(),
        regular_bimodule(&z4()).unwrap(),
        regular_bimodule(&gf4).unwrap(),
        regular_bimodule(&matrix_ring(&residue_ring(2).unwrap(), 2, 1 << 20).unwrap()).unwrap(),
        column(2, 1),
        column(1, 2),
        scalar_restricted(),
        quotient_module(),
    ]
}

#[test]
fn constructions_verify() {
    for bm in corpus() {
        bm.verify(3).unwrap();
    }
    let col = column(2, 1);
    assert_eq!(col.order(), 16);
    assert_eq!(col.left().order(), 256);
    assert_eq!(col.right().order(), 4);
    assert_eq!(column(1, 2).order(), 16);
    let gf2 = residue_ring(2).unwrap();
    let one = column_bimodule(&gf2, 1, 1, &Caps::default()).unwrap();
    assert_eq!(one.order(), 2);
    assert_eq!(one.act_left(1, 1), 1);
}

#[test]
fn rejects_bad_restrictions() {
    let (s, proj) = direct_sum(&[residue_ring(2).unwrap(), residue_ring(2).unwrap()], 1 << 10).unwrap();
    let reg = regular_bimodule(&residue_ring(2).unwrap()).unwrap();
    assert!(restrict_left(&reg, &proj[0]).is_ok());
    // x -> (x, 0) is not unital.
    let f = crate::ring::RingMap::new(residue_ring(2).unwrap(), s.clone(), vec![0, 1]).unwrap();
    let reg_s = regular_bimodule(&s).unwrap();
    assert!(restrict_left(&reg_s, &f).is_err());
    let id = crate::ring::RingMap::identity(&z4());
    let same = restrict_left(&regular_bimodule(&z4()).unwrap(), &id).unwrap();
    assert_eq!(same.act_left(3, 3), 1);
    assert!(column_bimodule(&matrix_ring(&residue_ring(2).unwrap(), 2, 99).unwrap(), 1, 1, &Caps::default()).is_err());
}

#[test]
fn submodule_lattices_match_subset_oracle() {
    for bm in corpus() {
        for side in [Side::Left, Side::Right, Side::TwoSided] {
            let maps: Vec<Vec<u32>> = match side {
                Side::TwoSided => {
                    let mut v = all_translations(&bm, Side::Left);
                    v.extend(all_translations(&bm, Side::Right));
                    v
                }
                s => all_translations(&bm, s),
            };
            let refs: Vec<&[u32]> = maps.iter().map(|m| m.as_slice()).collect();
            let oracle = subset_submodules(bm.carrier(), &refs);
            let lattice: Vec<Vec<u32>> =
                bm.all_submodules(side, 1024).unwrap().into_iter().map(|s| s.members).collect();
            assert_eq!(lattice, oracle, "{} {side:?}", bm.descriptor().label());
        }
    }
    assert_eq!(regular_bimodule(&z4()).unwrap().all_submodules(Side::Left, 1024).unwrap().len(), 3);
    // Every subgroup of (Z/4)^2 is stable under scalars: 15 of them.
    assert_eq!(scalar_restricted().all_submodules(Side::Left, 1024).unwrap().len(), 15);
    assert!(column(2, 1).all_submodules(Side::Left, 8).unwrap_err().is_cap());
}

#[test]
fn irreducibility_and_socles() {
    let reg = regular_bimodule(&z4()).unwrap();
    let two = SubmoduleSet::new(Side::Left, vec![0, 2]);
    assert!(reg.is_irreducible(Side::Left, &two).unwrap());
    assert!(!reg.is_irreducible(Side::Left, &SubmoduleSet::new(Side::Left, vec![0])).unwrap());
    assert!(reg.is_irreducible(Side::Left, &SubmoduleSet::new(Side::Left, vec![0, 1])).is_err());
    assert_eq!(reg.socle(Side::Left).unwrap().members, vec![0, 2]);
    assert_eq!(reg.socle(Side::Right).unwrap().members, vec![0, 2]);
    assert_eq!(reg.r_m(&[0, 2]).unwrap().members, vec![0, 2]);
    assert_eq!(reg.r_m(&[0]).unwrap().len(), 4);
    assert!(reg.r_m(&[0, 1, 2, 3]).unwrap().is_zero());

    let sr = scalar_restricted();
    let two_m: Vec<u32> = (0..16).filter(|&m| m % 2 == 0 && (m / 4) % 2 == 0).collect();
    let two_m = SubmoduleSet::new(Side::Left, two_m);
    assert_eq!(two_m.len(), 4);
    assert!(!sr.is_irreducible(Side::Left, &two_m).unwrap());
    for bm in corpus() {
        for side in [Side::Left, Side::Right] {
            // socle() itself cross-checks both methods.
            let s = bm.socle(side).unwrap();
            assert!(bm.is_submodule(side, &s.members));
        }
    }
}

#[test]
fn faithfulness() {
    for bm in corpus().into_iter().take(6) {
        assert!(bm.is_faithful(Side::Left) && bm.is_faithful(Side::Right));
    }
    let q = quotient_module();
    assert_eq!(q.unfaithful_witness(Side::Left), Some(2));
    assert!(!q.is_faithful(Side::Right));
}

#[test]
fn induced_semisimple_bimodules() {
    let caps = Caps::default();
    let reg = regular_bimodule(&z4()).unwrap();
    let ind = reg.induced_semisimple(&caps).unwrap();
    assert_eq!(ind.order(), 2);
    assert_eq!(ind.left().order(), 2);
    assert_eq!(ind.right().order(), 2);
    ind.verify(0).unwrap();
    let col = column(2, 1);
    let ind = col.induced_semisimple(&caps).unwrap();
    assert_eq!((ind.order(), ind.left().order(), ind.right().order()), (4, 16, 2));
    ind.verify(0).unwrap();
    assert!(ind.is_faithful(Side::Left));
}

#[test]
fn composition_series_are_maximal_chains() {
    for bm in corpus() {
        for side in [Side::Left, Side::Right, Side::TwoSided] {
            let series = bm.composition_series(side).to_vec();
            let lattice = bm.all_submodules(side, 1024).unwrap();
            for w in series.windows(2) {
                assert!(bm.is_submodule(side, &w[1]));
                // No submodule strictly between consecutive terms.
                assert!(!lattice.iter().any(|s| s.len() > w[0].len()
                    && s.len() < w[1].len()
                    && crate::closure::is_subset_sorted(&w[0], &s.members)
                    && crate::closure::is_subset_sorted(&s.members, &w[1])));
            }
            assert_eq!(series.last().unwrap().len(), bm.order());
        }
    }
}

#[test]
fn descriptors_round_trip_and_rebuild() {
    let caps = Caps::default();
    for bm in corpus() {
        let json = bm.descriptor().to_json();
        let back = BimoduleDescriptor::from_json(&json).unwrap();
        assert_eq!(back.to_json(), json);
        let rebuilt = build_bimodule(&back, &caps).unwrap();
        assert_eq!(rebuilt.order(), bm.order());
        for side in [Side::Left, Side::Right] {
            assert_eq!(all_translations(&rebuilt, side), all_translations(&bm, side));
        }
    }
    let json = column(2, 1).descriptor().to_json();
    assert!(json.starts_with(r#"{"kind":"matrix_shape","params":{"base":{"kind":"regular","params":{}"#));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn galois_connection_laws(idx in 0usize..6) {
        let bm = &corpus()[idx];
        let a = bm.left().ring().unwrap().clone();
        let b = bm.right().ring().unwrap().clone();
        let left_ideals = all_ideals(&a, Side::Left, 1024).unwrap();
        for i in &left_ideals {
            let w = bm.r_m(&i.members).unwrap();
            let back = bm.l_a(&w.members).unwrap();
            prop_assert!(crate::closure::is_subset_sorted(&i.members, &back.members));
            prop_assert_eq!(&bm.r_m(&back.members).unwrap(), &w);
            for i2 in &left_ideals {
                if crate::closure::is_subset_sorted(&i.members, &i2.members) {
                    let w2 = bm.r_m(&i2.members).unwrap();
                    prop_assert!(crate::closure::is_subset_sorted(&w2.members, &w.members));
                }
            }
        }
        for w in bm.all_submodules(Side::Right, 1024).unwrap() {
            let i = bm.l_a(&w.members).unwrap();
            let back = bm.r_m(&i.members).unwrap();
            prop_assert!(crate::closure::is_subset_sorted(&w.members, &back.members));
            prop_assert_eq!(&bm.l_a(&back.members).unwrap(), &i);
        }
        for j in all_ideals(&b, Side::Right, 1024).unwrap() {
            let v = bm.l_m(&j.members).unwrap();
            let back = bm.r_b(&v.members).unwrap();
            prop_assert!(crate::closure::is_subset_sorted(&j.members, &back.members));
        }
        for side in [Side::Left, Side::Right] {
            let j = crate::ring::jacobson_radical(bm.acting(side).ring().unwrap());
            let s = bm.socle(side).unwrap();
            for &m in &s.members {
                for &x in &j.members {
                    prop_assert_eq!(bm.act(side, x, m), bm.carrier().zero());
                }
            }
        }
    }
}
