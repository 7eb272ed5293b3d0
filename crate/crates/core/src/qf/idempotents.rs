use std::sync::Arc;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use super::{require_faithful, QfVerdict, Route, Witness, WitnessKind};
use crate::bimodule::FiniteBimodule;
use crate::closure::intersect_sorted;
use crate::ring::{ideal_generated, idempotents, jacobson_radical, quotient_ring, FiniteRing, RingMap};
use crate::{Caps, Error, Result, Side};

/// A complete set of orthogonal primitive idempotents, grouped by the
/// isomorphism class of `A e` (equivalently of `A/J e`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdempotentDecomposition {
    pub idempotents: Vec<u32>,
    /// Class index of each idempotent, numbered by first appearance.
    pub class_of: Vec<usize>,
    pub classes: usize,
}

impl IdempotentDecomposition {
    /// First idempotent of each class.
    pub fn representatives(&self) -> Vec<u32> {
        (0..self.classes)
            .map(|c| self.idempotents[self.class_of.iter().position(|&k| k == c).expect("class is inhabited")])
            .collect()
    }
}

/// Split `1` repeatedly: while some `e` has an idempotent `f` with
/// `0 != f != e` in `eRe`, replace `e` by `f` and `e - f`. The smallest
/// encoding is always chosen, so the result is deterministic.
pub fn primitive_idempotent_decomposition(ring: &Arc<FiniteRing>, size_cap: u64) -> Result<IdempotentDecomposition> {
    if ring.order() as u64 > size_cap {
        return Err(Error::cap("idempotent search ring order", size_cap, ring.order() as u64));
    }
    let all = idempotents(ring);
    let zero = ring.zero();
    let mut work = vec![ring.one()];
    let mut done = Vec::new();
    while let Some(e) = work.pop() {
        let split = all
            .iter()
            .copied()
            .find(|&f| f != zero && f != e && ring.mul(e, f) == f && ring.mul(f, e) == f);
        match split {
            Some(f) => {
                work.push(f);
                work.push(ring.sub(e, f));
            }
            None => done.push(e),
        }
    }
    done.sort_unstable();

    let j = jacobson_radical(ring);
    let (bar, proj) = quotient_ring(ring, &j)?;
    for &e in &done {
        if !is_minimal_left_ideal(&bar, &ideal_generated(&bar, &[proj.apply(e)], Side::Left).members) {
            return Err(Error::Internal(format!("idempotent {e} is not primitive")));
        }
    }
    let mut class_of: Vec<usize> = Vec::with_capacity(done.len());
    let mut reps: Vec<u32> = Vec::new();
    for &e in &done {
        match reps.iter().position(|&r| isomorphic_projectives(&bar, &proj, r, e)) {
            Some(c) => class_of.push(c),
            None => {
                class_of.push(reps.len());
                reps.push(e);
            }
        }
    }
    Ok(IdempotentDecomposition { idempotents: done, class_of, classes: reps.len() })
}

fn is_minimal_left_ideal(ring: &FiniteRing, members: &[u32]) -> bool {
    members.len() > 1
        && members
            .iter()
            .filter(|&&x| x != ring.zero())
            .all(|&x| ideal_generated(ring, &[x], Side::Left).len() == members.len())
}

/// `A/J e ~ A/J f`: search `x` in `e (A/J) f` whose right multiplication
/// maps `A/J e` injectively, hence bijectively, onto `A/J f`.
fn isomorphic_projectives(bar: &FiniteRing, proj: &RingMap, e: u32, f: u32) -> bool {
    let (e, f) = (proj.apply(e), proj.apply(f));
    let ae = ideal_generated(bar, &[e], Side::Left).members;
    let af = ideal_generated(bar, &[f], Side::Left).members;
    if ae.len() != af.len() {
        return false;
    }
    let zero = bar.zero();
    bar.elements()
        .map(|y| bar.mul(bar.mul(e, y), f))
        .filter(|&x| x != zero)
        .any(|x| ae.iter().all(|&u| u == zero || bar.mul(u, x) != zero))
}

/// Intersection of all nonzero cyclic `side`-submodules inside `n`, when
/// nonzero: the unique minimal submodule.
fn minimal_submodule(bm: &FiniteBimodule, side: Side, n: &[u32]) -> Option<Vec<u32>> {
    let zero = bm.carrier().zero();
    let mut acc: Option<Vec<u32>> = None;
    for &m in n.iter().filter(|&&m| m != zero) {
        let c = bm.submodule_generated(side, &[m]).members;
        acc = Some(match acc {
            None => c,
            Some(a) => intersect_sorted(&a, &c),
        });
        if acc.as_ref().is_some_and(|a| a.len() == 1) {
            return None;
        }
    }
    acc
}

/// For a simple `side`-module `u` and primitive `e`: `u` is the top of
/// `A e` (or `e A`) iff `e u != 0` and the orders agree.
fn matches_top(bm: &FiniteBimodule, side: Side, u: &[u32], e: u32, top_order: usize) -> bool {
    let zero = bm.carrier().zero();
    u.len() == top_order && u.iter().any(|&m| bm.act(side, e, m) != zero)
}

/// Both rings have the same number `t` of classes of primitive idempotents,
/// and under some pairing `e_l <-> f_l` the left module `M f_l` has a
/// minimal submodule isomorphic to the top of `A e_l` while `e_l M` has one
/// isomorphic to the top of `f_l B`. The number of admissible pairings is
/// reported in the detail line when one exists.
pub fn th1_condition4_check(bm: &FiniteBimodule, caps: &Caps) -> Result<QfVerdict> {
    let start = Instant::now();
    let (Some(a), Some(b)) = (bm.left().ring().cloned(), bm.right().ring().cloned()) else {
        return Ok(QfVerdict::undecided(
            Route::MinimalSubmodules,
            "not decided: cap (operator ring idempotents are not enumerated)",
            start,
        ));
    };
    require_faithful(bm)?;
    let da = primitive_idempotent_decomposition(&a, caps.size)?;
    let db = primitive_idempotent_decomposition(&b, caps.size)?;
    let (ea, fb) = (da.representatives(), db.representatives());
    if ea.len() != fb.len() {
        let w = Witness::new(
            WitnessKind::ClassCountMismatch,
            ea.clone(),
            vec![],
            fb.clone(),
            format!("{} classes on the left, {} on the right", ea.len(), fb.len()),
        );
        return Ok(QfVerdict::decided(Route::MinimalSubmodules, 0, vec![w], start));
    }
    let top_order = |ring: &Arc<FiniteRing>, e: u32, side: Side| -> Result<usize> {
        let j = jacobson_radical(ring);
        let (bar, proj) = quotient_ring(ring, &j)?;
        Ok(ideal_generated(&bar, &[proj.apply(e)], side).len())
    };
    let t = ea.len();
    let n = bm.order() as u32;
    let mut ok = vec![vec![false; t]; t];
    let mut witnesses = Vec::new();
    let mut checked = 0;
    for (l, &e) in ea.iter().enumerate() {
        let e_top = top_order(&a, e, Side::Left)?;
        let mut e_m: Vec<u32> = (0..n).map(|m| bm.act_left(e, m)).collect();
        e_m.sort_unstable();
        e_m.dedup();
        let min_right = minimal_submodule(bm, Side::Right, &e_m);
        for (k, &f) in fb.iter().enumerate() {
            checked += 1;
            let f_top = top_order(&b, f, Side::Right)?;
            let mut m_f: Vec<u32> = (0..n).map(|m| bm.act_right(m, f)).collect();
            m_f.sort_unstable();
            m_f.dedup();
            let min_left = minimal_submodule(bm, Side::Left, &m_f);
            let first = min_left.as_ref().is_some_and(|u| matches_top(bm, Side::Left, u, e, e_top));
            let second = min_right.as_ref().is_some_and(|v| matches_top(bm, Side::Right, v, f, f_top));
            ok[l][k] = first && second;
            if !first {
                witnesses.push(Witness::new(
                    WitnessKind::NoMinimalSubmodule,
                    vec![e, f],
                    m_f,
                    min_left.unwrap_or_default(),
                    "M f: no minimal left submodule matching A e",
                ));
            } else if !second {
                witnesses.push(Witness::new(
                    WitnessKind::NoMinimalSubmodule,
                    vec![e, f],
                    e_m.clone(),
                    min_right.clone().unwrap_or_default(),
                    "e M: no minimal right submodule matching f B",
                ));
            }
        }
    }
    let pairings = count_pairings(&ok, 0, &mut vec![false; t]);
    let mut v = QfVerdict::decided(Route::MinimalSubmodules, checked, vec![], start);
    if pairings == 0 {
        v = QfVerdict::decided(Route::MinimalSubmodules, checked, witnesses, start);
    } else {
        v.note = Some(format!("t = {t}, admissible pairings: {pairings}"));
    }
    Ok(v)
}

fn count_pairings(ok: &[Vec<bool>], row: usize, used: &mut Vec<bool>) -> u64 {
    if row == ok.len() {
        return 1;
    }
    let mut total = 0;
    for k in 0..ok.len() {
        if ok[row][k] && !used[k] {
            used[k] = true;
            total += count_pairings(ok, row + 1, used);
            used[k] = false;
        }
    }
    total
}
