use std::sync::Arc;

use super::*;
use crate::bimodule::{column_bimodule, regular_bimodule, restrict_left, restrict_right};
use crate::ring::{
    direct_sum, from_tables, galois_ring, jacobson_radical, matrix_ring, quotient_ring, residue_ring,
    scalar_embedding, FiniteRing, IdealSet, RingDescriptor,
};

fn z4() -> Arc<FiniteRing> {
    residue_ring(4).unwrap()
}

fn caps() -> Caps {
    Caps::default()
}

/// A three-digit GF(2) ring from a product on digit triples.
fn gf2_cube(label: &str, mul: impl Fn([u32; 3], [u32; 3]) -> [u32; 3], one: u32) -> Arc<FiniteRing> {
    let digits = |x: u32| [x & 1, x >> 1 & 1, x >> 2 & 1];
    let enc = |d: [u32; 3]| (d[0] & 1) | (d[1] & 1) << 1 | (d[2] & 1) << 2;
    let add = (0..64).map(|i| (i / 8) ^ (i % 8)).collect();
    let mul = (0..64).map(|i| enc(mul(digits(i / 8), digits(i % 8)))).collect();
    from_tables(add, mul, 0, one, RingDescriptor::derived(label)).unwrap()
}

/// `[[a, b], [0, c]]` over GF(2): not self-injective.
fn upper_triangular() -> Arc<FiniteRing> {
    gf2_cube("T2(GF2)", |[a, b, c], [x, y, z]| [a * x, a * y + b * z, c * z], 0b101)
}

/// `GF(2)[u, v]/(u, v)^2`: local with a two-dimensional socle.
fn square_zero() -> Arc<FiniteRing> {
    gf2_cube("GF2[u,v]/(u,v)^2", |[a, b, c], [x, y, z]| [a * x, a * y + b * x, a * z + c * x], 1)
}

fn column() -> FiniteBimodule {
    column_bimodule(&z4(), 2, 1, &caps()).unwrap()
}

fn scalar_restricted() -> FiniteBimodule {
    let col = column();
    let m2 = col.left().ring().unwrap().clone();
    restrict_left(&col, &scalar_embedding(&z4(), &m2, 2).unwrap()).unwrap()
}

fn quotient_module() -> FiniteBimodule {
    let (f2, proj) = quotient_ring(&z4(), &IdealSet::new(Side::TwoSided, vec![0, 2])).unwrap();
    let reg = regular_bimodule(&f2).unwrap();
    restrict_right(&restrict_left(&reg, &proj).unwrap(), &proj).unwrap()
}

/// `(bimodule, expected QF verdict)`.
fn corpus() -> Vec<(FiniteBimodule, bool)> {
    let (gf4, _) = galois_ring(2, 1, 2, 1 << 20).unwrap();
    let (gr9, _) = galois_ring(3, 2, 2, 1 << 20).unwrap();
    let (sum, _) = direct_sum(&[residue_ring(2).unwrap(), residue_ring(3).unwrap()], 1 << 10).unwrap();
    vec![
        (regular_bimodule(&residue_ring(2).unwrap()).unwrap(), true),
        (regular_bimodule(&z4()).unwrap(), true),
        (regular_bimodule(&residue_ring(8).unwrap()).unwrap(), true),
        (regular_bimodule(&gf4).unwrap(), true),
        (regular_bimodule(&gr9).unwrap(), true),
        (regular_bimodule(&sum).unwrap(), true),
        (regular_bimodule(&matrix_ring(&residue_ring(2).unwrap(), 2, 1 << 20).unwrap()).unwrap(), true),
        (column(), true),
        (column_bimodule(&z4(), 1, 2, &caps()).unwrap(), true),
        (scalar_restricted(), false),
        (regular_bimodule(&upper_triangular()).unwrap(), false),
        (regular_bimodule(&square_zero()).unwrap(), false),
    ]
}

/// Independent re-verification of a witness from the defining test or the
/// annihilator route.
fn reverify(bm: &FiniteBimodule, w: &Witness, caps: &Caps) {
    match w.kind {
        WitnessKind::ReducibleRightAnnihilator | WitnessKind::ReducibleLeftAnnihilator => {
            let side = if w.kind == WitnessKind::ReducibleRightAnnihilator { Side::Left } else { Side::Right };
            let ring = bm.acting(side).ring().unwrap();
            let maximal = maximal_ideals(ring, side, MaximalMode::Lattice, caps.lattice).unwrap();
            assert!(maximal.iter().any(|m| m.members == w.ideal));
            let ann = if side == Side::Left { bm.r_m(&w.ideal).unwrap() } else { bm.l_m(&w.ideal).unwrap() };
            assert_eq!(ann.members, w.submodule);
            let other = side.opposite();
            assert!(bm.is_submodule(other, &w.found));
            assert!(w.found.len() > 1 && w.found.len() < w.submodule.len());
            assert!(crate::closure::is_subset_sorted(&w.found, &w.submodule));
        }
        WitnessKind::LeftIdealNotClosed => {
            assert_ne!(bm.l_a(&bm.r_m(&w.ideal).unwrap().members).unwrap().members, w.ideal)
        }
        WitnessKind::RightSubmoduleNotClosed => {
            assert_ne!(bm.r_m(&bm.l_a(&w.submodule).unwrap().members).unwrap().members, w.submodule)
        }
        WitnessKind::RightIdealNotClosed => {
            assert_ne!(bm.r_b(&bm.l_m(&w.ideal).unwrap().members).unwrap().members, w.ideal)
        }
        WitnessKind::LeftSubmoduleNotClosed => {
            assert_ne!(bm.l_m(&bm.r_b(&w.submodule).unwrap().members).unwrap().members, w.submodule)
        }
        WitnessKind::SocleMismatch => {
            let l = bm.socle(Side::Left).unwrap();
            let r = bm.socle(Side::Right).unwrap();
            assert_ne!(l.contains(w.submodule[0]), r.contains(w.submodule[0]));
        }
        _ => {}
    }
}

#[test]
fn routes_agree_with_expected_verdicts() {
    let caps = caps();
    for (bm, expected) in corpus() {
        let label = bm.descriptor().label();
        let mut verdicts = run_all_routes(&bm, &caps).unwrap();
        verdicts.push(run_route(&bm, Route::MinimalSubmodules, &caps).unwrap());
        for v in &verdicts {
            assert_eq!(v.verdict, Some(expected), "{label} {:?}: {v:?}", v.route);
            assert_eq!(v.witnesses.is_empty(), expected, "{label} {:?}", v.route);
            for w in &v.witnesses {
                reverify(&bm, w, &caps);
            }
        }
        assert_eq!(agreed_verdict(&verdicts), Some(expected));
    }
}

/// Commutative local rings are self-injective exactly when the socle is
/// simple, i.e. as large as the residue field.
#[test]
fn commutative_local_oracle() {
    let caps = caps();
    for ring in [z4(), residue_ring(8).unwrap(), residue_ring(9).unwrap(), square_zero()] {
        let bm = regular_bimodule(&ring).unwrap();
        let j = jacobson_radical(&ring);
        let socle = bm.socle(Side::Left).unwrap();
        let expected = socle.len() == ring.order() / j.len();
        assert_eq!(is_qf_azumaya(&bm, &caps).unwrap().verdict, Some(expected));
    }
}

#[test]
fn frozen_route_details() {
    let caps = caps();
    let z = regular_bimodule(&z4()).unwrap();
    let ann = annihilator_correspondence_check(&z, &caps).unwrap();
    assert_eq!(ann.checked, 12);
    let soc = socle_criterion(&z, &caps).unwrap();
    assert!(soc.holds());
    assert_eq!(z.socle(Side::Left).unwrap().members, vec![0, 2]);

    let v = is_qf_azumaya(&scalar_restricted(), &caps).unwrap();
    assert_eq!(v.verdict, Some(false));
    let w = &v.witnesses[0];
    assert_eq!(w.kind, WitnessKind::ReducibleRightAnnihilator);
    assert_eq!(w.ideal, vec![0, 2]);
    // 2M: both coordinates even.
    assert_eq!(w.submodule, vec![0, 2, 8, 10]);

    let v = annihilator_correspondence_check(&scalar_restricted(), &caps).unwrap();
    assert!(v.witnesses.iter().any(|w| w.kind == WitnessKind::RightSubmoduleNotClosed));

    let v = th1_condition4_check(&scalar_restricted(), &caps).unwrap();
    let w = &v.witnesses[0];
    assert_eq!(w.kind, WitnessKind::NoMinimalSubmodule);
    assert_eq!(w.submodule.len(), 16);
    assert!(w.found.is_empty());
    let v = th1_condition4_check(&column(), &caps).unwrap();
    assert_eq!(v.note.as_deref(), Some("t = 1, admissible pairings: 1"));
}

#[test]
fn unfaithful_input_is_a_precondition_error() {
    let caps = caps();
    let q = quotient_module();
    for route in [Route::Azumaya, Route::Socle, Route::MinimalSubmodules] {
        assert!(matches!(run_route(&q, route, &caps), Err(Error::Precondition(_))));
    }
    let json = serde_json::to_value(is_qf_azumaya(&column(), &caps).unwrap()).unwrap();
    assert_eq!(json["route"], "azumaya");
    assert_eq!(json["verdict"], true);
    assert!(json["timings"]["total_ms"].is_number());
}

#[test]
fn caps_give_undecided_verdicts() {
    let tight = Caps { lattice: 4, ..caps() };
    let v = run_route(&column(), Route::Annihilator, &tight).unwrap();
    assert_eq!(v.verdict, None);
    assert!(v.note.unwrap().starts_with("not decided: cap"));
}

#[test]
fn distinguished_modules() {
    let caps = caps();
    for (bm, qf) in corpus() {
        if qf {
            assert!(is_distinguished(&bm, Side::Left, &caps).unwrap());
            assert!(is_distinguished(&bm, Side::Right, &caps).unwrap());
        }
    }
    assert!(is_distinguished(&column(), Side::Left, &caps).unwrap());
    let gf2 = residue_ring(2).unwrap();
    let (sum, proj) = direct_sum(&[gf2.clone(), gf2.clone()], 1 << 10).unwrap();
    let bm = restrict_left(&regular_bimodule(&gf2).unwrap(), &proj[0]).unwrap();
    assert_eq!(bm.left().order(), sum.order() as u64);
    assert!(!is_distinguished(&bm, Side::Left, &caps).unwrap());
}

#[test]
fn baer_injectivity() {
    let caps = caps();
    let r = is_injective_baer(&regular_bimodule(&z4()).unwrap(), Side::Left, &caps).unwrap();
    assert!(r.injective && r.witness.is_none());
    assert_eq!(r.ideals_checked, 3);
    assert!(is_injective_baer(&regular_bimodule(&residue_ring(2).unwrap()).unwrap(), Side::Left, &caps)
        .unwrap()
        .injective);
    let r = is_injective_baer(&quotient_module(), Side::Left, &caps).unwrap();
    assert!(!r.injective);
    let w = r.witness.unwrap();
    assert_eq!(w.ideal, vec![0, 2]);
    assert_eq!(w.assignment, vec![(2, 1)]);
    assert_eq!(w.map, vec![(0, 0), (2, 1)]);
    // Self-injectivity of the QF corpus, both sides.
    for (bm, qf) in corpus() {
        if qf {
            for side in [Side::Left, Side::Right] {
                assert!(is_injective_baer(&bm, side, &caps).unwrap().injective, "{}", bm.descriptor().label());
            }
        }
    }
    let t2 = regular_bimodule(&upper_triangular()).unwrap();
    assert!(!is_injective_baer(&t2, Side::Left, &caps).unwrap().injective);
    let tight = Caps { homs: 10, ..caps };
    assert!(is_injective_baer(&column(), Side::Right, &tight).unwrap_err().is_cap());
}

fn assert_complete_orthogonal(ring: &FiniteRing, d: &IdempotentDecomposition) {
    let sum = d.idempotents.iter().fold(ring.zero(), |a, &e| ring.add(a, e));
    assert_eq!(sum, ring.one());
    for (i, &e) in d.idempotents.iter().enumerate() {
        assert_eq!(ring.mul(e, e), e);
        for &f in &d.idempotents[i + 1..] {
            assert_eq!(ring.mul(e, f), ring.zero());
            assert_eq!(ring.mul(f, e), ring.zero());
        }
    }
}

#[test]
fn idempotent_decompositions() {
    let gf2 = residue_ring(2).unwrap();
    let cases: Vec<(Arc<FiniteRing>, usize, usize)> = vec![
        (z4(), 1, 1),
        (matrix_ring(&gf2, 2, 1 << 20).unwrap(), 2, 1),
        (matrix_ring(&z4(), 2, 1 << 20).unwrap(), 2, 1),
        (direct_sum(&[gf2.clone(), gf2.clone()], 1 << 10).unwrap().0, 2, 2),
        (upper_triangular(), 2, 2),
    ];
    for (ring, count, classes) in cases {
        let d = primitive_idempotent_decomposition(&ring, 1 << 20).unwrap();
        assert_eq!((d.idempotents.len(), d.classes), (count, classes));
        assert_complete_orthogonal(&ring, &d);
    }
    assert_eq!(primitive_idempotent_decomposition(&z4(), 1 << 20).unwrap().idempotents, vec![1]);
    assert!(primitive_idempotent_decomposition(&z4(), 2).unwrap_err().is_cap());
}

#[test]
fn matrix_reduction() {
    let caps = caps();
    let z = regular_bimodule(&z4()).unwrap();
    let r = matrix_reduction_check(&z, 1, 1, &caps).unwrap();
    assert!(r.agree && r.base == Outcome::Qf(true));
    let r = matrix_reduction_check(&z, 2, 1, &caps).unwrap();
    assert_eq!((r.base.clone(), r.shaped.clone(), r.agree), (Outcome::Qf(true), Outcome::Qf(true), true));
    let r = matrix_reduction_check(&quotient_module(), 2, 1, &caps).unwrap();
    assert!(matches!(r.base, Outcome::Precondition(_)));
    assert!(matches!(r.shaped, Outcome::Precondition(_)));
    assert!(r.agree);
    let r = matrix_reduction_check(&regular_bimodule(&square_zero()).unwrap(), 1, 2, &caps).unwrap();
    assert_eq!((r.base.clone(), r.shaped.clone()), (Outcome::Qf(false), Outcome::Qf(false)));
}
