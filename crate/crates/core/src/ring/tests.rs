use std::sync::Arc;

use proptest::prelude::*;

use super::*;

/// Every subset of a ring of order <= 16 that is a `side`-ideal, by
/// direct enumeration of bitmasks.
fn subset_ideals(r: &FiniteRing, side: Side) -> Vec<Vec<u32>> {
    let n = r.order();
    assert!(n <= 16);
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        let has = |x: u32| mask >> x & 1 == 1;
        if !has(r.zero()) {
            continue;
        }
        let members: Vec<u32> = (0..n as u32).filter(|&x| has(x)).collect();
        let closed = members.iter().all(|&a| {
            members.iter().all(|&b| has(r.add(a, b)))
                && r.elements().all(|s| match side {
                    Side::Left => has(r.mul(s, a)),
                    Side::Right => has(r.mul(a, s)),
                    Side::TwoSided => has(r.mul(s, a)) && has(r.mul(a, s)),
                })
        });
        if closed {
            out.push(members);
        }
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

/// Intersection of the maximal left ideals.
fn radical_oracle(r: &FiniteRing) -> Vec<u32> {
    let ideals = subset_ideals(r, Side::Left);
    let n = r.order();
    let proper: Vec<&Vec<u32>> = ideals.iter().filter(|i| i.len() < n).collect();
    let maximal: Vec<&Vec<u32>> = proper
        .iter()
        .filter(|i| !proper.iter().any(|k| k.len() > i.len() && i.iter().all(|x| k.contains(x))))
        .copied()
        .collect();
    r.elements().filter(|x| maximal.iter().all(|m| m.contains(x))).collect()
}

fn gf2() -> Arc<FiniteRing> {
    residue_ring(2).unwrap()
}

fn z4() -> Arc<FiniteRing> {
    residue_ring(4).unwrap()
}

fn m2f2() -> Arc<FiniteRing> {
    matrix_ring(&gf2(), 2, 1 << 20).unwrap()
}

fn members(i: &[IdealSet]) -> Vec<Vec<u32>> {
    i.iter().map(|x| x.members.clone()).collect()
}

#[test]
fn residue_rings() {
    assert!(residue_ring(1).is_err());
    assert!(jacobson_radical(&gf2()).is_zero());
    assert_eq!(jacobson_radical(&z4()).members, vec![0, 2]);
    assert_eq!(radical_oracle(&z4()), vec![0, 2]);
    gf2().check_axioms(0, 0).unwrap();
    residue_ring(12).unwrap().check_axioms(0, 0).unwrap();
}

#[test]
fn galois_rings() {
    let (r, s) = galois_ring(2, 2, 1, 1 << 20).unwrap();
    let z = z4();
    assert!(r.elements().all(|a| r.elements().all(|b| r.mul(a, b) == z.mul(a, b) && r.add(a, b) == z.add(a, b))));
    assert_eq!(s.fixed_points().len(), 4);

    let (gf4, frob) = galois_ring(2, 1, 2, 1 << 20).unwrap();
    assert_eq!(gf4.order(), 4);
    assert!(gf4.elements().all(|x| frob.apply(x) == gf4.mul(x, x)));
    assert_eq!(frob.order(), 2);
    assert!(jacobson_radical(&gf4).is_zero());

    let (gr, sigma) = galois_ring(3, 2, 2, 1 << 20).unwrap();
    gr.check_axioms(0, 0).unwrap();
    let j = jacobson_radical(&gr);
    // Radical oracle: all coordinates divisible by 3.
    let expected: Vec<u32> = gr.elements().filter(|&x| x % 3 == 0 && (x / 9) % 3 == 0).collect();
    assert_eq!(j.members, expected);
    assert_eq!(j.len(), 9);
    assert_eq!(sigma.power(2).fixed_points().len(), 81);
    assert_eq!(sigma.fixed_points().len(), 9);
    assert!(sigma.flags_consistent());
    assert!(galois_ring(4, 1, 1, 100).is_err());
    assert!(galois_ring(3, 4, 4, 1000).unwrap_err().is_cap());
}

#[test]
fn matrix_rings() {
    let m = m2f2();
    assert_eq!(m.order(), 16);
    m.check_axioms(0, 0).unwrap();
    assert!(jacobson_radical(&m).is_zero());
    assert!(is_simple(&m));
    assert_eq!(center(&m), vec![0, encode_matrix(&gf2(), &[1, 0, 0, 1])]);
    let same = matrix_ring(&gf2(), 1, 100).unwrap();
    assert_eq!(same.order(), 2);

    let m4 = matrix_ring(&z4(), 2, 1 << 20).unwrap();
    assert_eq!(m4.order(), 256);
    let j = jacobson_radical(&m4);
    let even: Vec<u32> = m4
        .elements()
        .filter(|&x| decode_matrix(&z4(), 2, x).iter().all(|e| e % 2 == 0))
        .collect();
    assert_eq!(j.members, even);
    assert_eq!(j.len(), 16);
    let (q, proj) = quotient_ring(&m4, &j).unwrap();
    assert_eq!(q.order(), 16);
    assert!(jacobson_radical(&q).is_zero());
    assert!(proj.flags().is_ring_hom());
}

#[test]
fn ideal_generation() {
    assert!(ideal_generated(&z4(), &[0], Side::TwoSided).is_zero());
    assert_eq!(ideal_generated(&z4(), &[2], Side::TwoSided).members, vec![0, 2]);
    let m = m2f2();
    let e11 = encode_matrix(&gf2(), &[1, 0, 0, 0]);
    let col = ideal_generated(&m, &[e11], Side::Left);
    let oracle: Vec<u32> = m
        .elements()
        .filter(|&x| {
            let e = decode_matrix(&gf2(), 2, x);
            e[1] == 0 && e[3] == 0
        })
        .collect();
    assert_eq!(col.members, oracle);
    assert_eq!(col.len(), 4);
    assert!(col.is_valid(&m));
}

#[test]
fn ideal_lattices_match_subset_oracle() {
    let (gf4, _) = galois_ring(2, 1, 2, 1 << 20).unwrap();
    let rings = [gf2(), z4(), gf4, m2f2(), residue_ring(12).unwrap()];
    for r in &rings {
        for side in [Side::Left, Side::Right, Side::TwoSided] {
            let lattice = all_ideals(r, side, 1024).unwrap();
            assert_eq!(members(&lattice), subset_ideals(r, side), "{} {side:?}", r.descriptor().label());
        }
        assert_eq!(jacobson_radical(r).members, radical_oracle(r));
    }
    assert_eq!(all_ideals(&m2f2(), Side::Left, 1024).unwrap().len(), 5);
    assert_eq!(all_ideals(&z4(), Side::Left, 1024).unwrap().len(), 3);
    assert!(all_ideals(&m2f2(), Side::Left, 8).unwrap_err().is_cap());
}

#[test]
fn maximal_ideal_modes_agree() {
    let m = m2f2();
    let lat = maximal_ideals(&m, Side::Left, MaximalMode::Lattice, 1024).unwrap();
    assert_eq!(lat.len(), 3);
    assert!(lat.iter().all(|i| i.len() == 4));
    let m4 = matrix_ring(&z4(), 2, 1 << 20).unwrap();
    let (gr, _) = galois_ring(3, 2, 2, 1 << 20).unwrap();
    for r in [gf2(), z4(), m, m4, gr, residue_ring(12).unwrap()] {
        for side in [Side::Left, Side::Right] {
            let a = maximal_ideals(&r, side, MaximalMode::Lattice, 1024).unwrap();
            let b = maximal_ideals(&r, side, MaximalMode::RadicalShortcut, 1024).unwrap();
            assert_eq!(a, b);
        }
    }
    assert_eq!(
        members(&maximal_ideals(&z4(), Side::Left, MaximalMode::Lattice, 1024).unwrap()),
        vec![vec![0, 2]]
    );
    assert_eq!(maximal_ideals(&gf2(), Side::Left, MaximalMode::Lattice, 1024).unwrap()[0].members, vec![0]);
}

#[test]
fn simplicity_and_profiles() {
    assert!(is_simple(&gf2()));
    assert_eq!(simplicity_witness(&z4()).unwrap().members, vec![0, 2]);
    let (gf4, _) = galois_ring(2, 1, 2, 1 << 20).unwrap();
    let p = ring_profile(&gf4).unwrap();
    assert_eq!(
        (p.order, p.radical_order, p.nilpotency_index, p.center_order, p.semisimple_quotient_simple, p.unit_count),
        (4, 1, 1, 4, true, 3)
    );
    let p = ring_profile(&z4()).unwrap();
    assert_eq!(
        (p.order, p.radical_order, p.nilpotency_index, p.center_order, p.semisimple_quotient_simple, p.unit_count),
        (4, 2, 2, 4, true, 2)
    );
    let p = ring_profile(&m2f2()).unwrap();
    assert_eq!(
        (p.order, p.radical_order, p.nilpotency_index, p.center_order, p.semisimple_quotient_simple, p.unit_count),
        (16, 1, 1, 2, true, 6)
    );
}

#[test]
fn quotients_and_sums() {
    let (q, map) = quotient_ring(&z4(), &IdealSet::new(Side::TwoSided, vec![0, 2])).unwrap();
    let f = gf2();
    assert!(q.elements().all(|a| q.elements().all(|b| q.mul(a, b) == f.mul(a, b) && q.add(a, b) == f.add(a, b))));
    assert_eq!(map.image(), &[0, 1, 0, 1]);
    let (same, id) = quotient_ring(&z4(), &IdealSet::new(Side::TwoSided, vec![0])).unwrap();
    assert_eq!(same.order(), 4);
    assert_eq!(id.image(), &[0, 1, 2, 3]);
    assert!(quotient_ring(&z4(), &IdealSet::new(Side::Left, vec![0, 2])).is_err());
    assert!(quotient_ring(&z4(), &IdealSet::whole(&z4(), Side::TwoSided)).is_err());

    let (s, proj) = direct_sum(&[gf2(), gf2()], 1 << 20).unwrap();
    s.check_axioms(0, 0).unwrap();
    assert_eq!(s.order(), 4);
    assert_eq!(idempotents(&s).len(), 4);
    assert!(proj.iter().all(|p| p.flags().is_ring_hom()));
    assert_eq!(maximal_ideals(&s, Side::Left, MaximalMode::Lattice, 1024).unwrap().len(), 2);
}

#[test]
fn descriptors_rebuild_identical_tables() {
    let caps = crate::Caps::default();
    let descs = [
        RingDescriptor::residue(6),
        RingDescriptor::galois(3, 2, 2),
        RingDescriptor::matrix(RingDescriptor::residue(2), 2),
        RingDescriptor::new(RingKind::RadicalQuotient {
            base: Box::new(RingDescriptor::matrix(RingDescriptor::residue(4), 2)),
        }),
        RingDescriptor::new(RingKind::DirectSum { parts: vec![RingDescriptor::residue(2), RingDescriptor::residue(3)] }),
    ];
    for d in descs {
        let json = d.to_json();
        let back = RingDescriptor::from_json(&json).unwrap();
        assert_eq!(back.to_json(), json);
        let a = build(&d, &caps).unwrap();
        let b = build(&back, &caps).unwrap();
        assert_eq!(a.order(), b.order());
        assert!(a.elements().all(|x| a.elements().all(|y| a.mul(x, y) == b.mul(x, y) && a.add(x, y) == b.add(x, y))));
        a.check_axioms(10_000, 1).unwrap();
    }
    assert!(build(&RingDescriptor::derived("C"), &caps).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn residue_radical_is_nilpotent_with_semisimple_quotient(m in 2u64..60) {
        let r = residue_ring(m).unwrap();
        let j = jacobson_radical(&r);
        prop_assert!(nilpotency_index(&r, &j.members).is_some());
        if !j.is_zero() {
            let (q, _) = quotient_ring(&r, &j).unwrap();
            prop_assert!(jacobson_radical(&q).is_zero());
        }
    }

    #[test]
    fn galois_ring_axioms_and_frobenius(idx in 0usize..6) {
        let (p, d, r) = [(2, 1, 2), (2, 2, 2), (3, 1, 2), (2, 3, 1), (2, 1, 3), (5, 1, 2)][idx];
        let (ring, sigma) = galois_ring(p, d, r, 1 << 20).unwrap();
        ring.check_axioms(10_000, 7).unwrap();
        prop_assert_eq!(sigma.order(), r as u64);
        let fixed = sigma.fixed_points();
        prop_assert_eq!(fixed.len() as u64, p.pow(d));
        prop_assert!(fixed.iter().all(|&x| x < p.pow(d) as u32));
        let j = jacobson_radical(&ring);
        prop_assert_eq!(j.len() as u64, p.pow((d - 1) * r));
    }

    #[test]
    fn ideals_are_closed_and_generation_is_idempotent(idx in 0usize..5, side_idx in 0usize..3) {
        let rings = [z4(), m2f2(), residue_ring(18).unwrap(), galois_ring(2, 2, 2, 1 << 20).unwrap().0,
            direct_sum(&[z4(), gf2()], 1 << 20).unwrap().0];
        let side = [Side::Left, Side::Right, Side::TwoSided][side_idx];
        let r = &rings[idx];
        for ideal in all_ideals(r, side, 1024).unwrap() {
            prop_assert!(ideal.is_valid(r));
            prop_assert_eq!(&ideal_generated(r, &ideal.members, side), &ideal);
        }
    }
}
