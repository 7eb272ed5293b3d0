//! Deciding whether a bimodule is quasi-Frobenius, by three independent
//! routes, plus the auxiliary criteria that go with it.

mod baer;
mod idempotents;

pub use baer::{is_injective_baer, BaerReport, BaerWitness};
pub use idempotents::{primitive_idempotent_decomposition, th1_condition4_check, IdempotentDecomposition};

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::bimodule::{matrix_shape, Acting, FiniteBimodule, SubmoduleSet};
use crate::closure::intersect_sorted;
use crate::ring::{all_ideals, maximal_ideals, MaximalMode};
use crate::{Caps, Error, Result, Side};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Route {
    Azumaya,
    Annihilator,
    Socle,
    /// Paired primitive idempotents with minimal submodules.
    MinimalSubmodules,
}

impl Route {
    pub const ALL: [Route; 3] = [Route::Azumaya, Route::Annihilator, Route::Socle];

    pub fn name(self) -> &'static str {
        match self {
            Route::Azumaya => "azumaya",
            Route::Annihilator => "annihilator",
            Route::Socle => "socle",
            Route::MinimalSubmodules => "minimal_submodules",
        }
    }
}

impl std::str::FromStr for Route {
    type Err = Error;
    fn from_str(s: &str) -> Result<Route> {
        match s {
            "azumaya" => Ok(Route::Azumaya),
            "annihilator" => Ok(Route::Annihilator),
            "socle" => Ok(Route::Socle),
            "minimal_submodules" => Ok(Route::MinimalSubmodules),
            _ => Err(Error::InvalidInput(format!("unknown route '{s}'"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessKind {
    /// `r_M(I)` for a maximal left ideal `I` is nonzero and reducible.
    ReducibleRightAnnihilator,
    /// `l_M(J)` for a maximal right ideal `J` is nonzero and reducible.
    ReducibleLeftAnnihilator,
    /// `I != l_A(r_M(I))`.
    LeftIdealNotClosed,
    /// `W != r_M(l_A(W))`.
    RightSubmoduleNotClosed,
    /// `J != r_B(l_M(J))`.
    RightIdealNotClosed,
    /// `V != l_M(r_B(V))`.
    LeftSubmoduleNotClosed,
    /// An element in exactly one of the two socles.
    SocleMismatch,
    /// A nonzero ring element acting as zero on the induced bimodule.
    InducedUnfaithful,
    /// A witness found inside the induced semisimple bimodule.
    Induced,
    ClassCountMismatch,
    /// No admissible pairing of idempotent classes; the submodule is one
    /// lacking a suitable minimal submodule.
    NoMinimalSubmodule,
}

/// A concrete violation. `ideal` holds ring encodings (for an operator ring,
/// positions in its semisimple quotient), `submodule` carrier encodings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub kind: WitnessKind,
    pub ideal: Vec<u32>,
    pub submodule: Vec<u32>,
    /// What the closure or annihilator actually came out as.
    pub found: Vec<u32>,
    pub detail: String,
}

impl Witness {
    fn new(kind: WitnessKind, ideal: Vec<u32>, submodule: Vec<u32>, found: Vec<u32>, detail: impl Into<String>) -> Self {
        Witness { kind, ideal, submodule, found, detail: detail.into() }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Timings {
    pub total_ms: f64,
}

/// Outcome of one QF route. `verdict` is `None` when the route could not
/// decide (cap or an operator ring it cannot enumerate); `note` then says
/// why, and otherwise may carry extra context.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QfVerdict {
    pub route: Route,
    pub verdict: Option<bool>,
    pub note: Option<String>,
    /// Number of ideals and submodules examined.
    pub checked: usize,
    pub witnesses: Vec<Witness>,
    pub timings: Timings,
}

impl QfVerdict {
    fn decided(route: Route, checked: usize, witnesses: Vec<Witness>, start: Instant) -> Self {
        QfVerdict {
            route,
            verdict: Some(witnesses.is_empty()),
            note: None,
            checked,
            witnesses,
            timings: elapsed(start),
        }
    }

    pub fn undecided(route: Route, reason: impl Into<String>, start: Instant) -> Self {
        QfVerdict { route, verdict: None, note: Some(reason.into()), checked: 0, witnesses: vec![], timings: elapsed(start) }
    }

    pub fn holds(&self) -> bool {
        self.verdict == Some(true)
    }
}

fn elapsed(start: Instant) -> Timings {
    Timings { total_ms: start.elapsed().as_secs_f64() * 1e3 }
}

fn require_faithful(bm: &FiniteBimodule) -> Result<()> {
    for side in [Side::Left, Side::Right] {
        if let Some(a) = bm.unfaithful_witness(side) {
            return Err(Error::Precondition(format!(
                "{} action is not faithful: {a} acts as zero",
                if side == Side::Left { "left" } else { "right" }
            )));
        }
    }
    Ok(())
}

/// For every maximal `side`-ideal, the ideal and the part of `M` it
/// annihilates. On an operator side the ideals live in the semisimple
/// quotient and only socle elements can be annihilated.
pub fn maximal_annihilators(bm: &FiniteBimodule, side: Side, caps: &Caps) -> Result<Vec<(Vec<u32>, Vec<u32>)>> {
    match bm.acting(side) {
        Acting::Ring { ring, .. } => maximal_ideals(ring, side, MaximalMode::RadicalShortcut, caps.lattice)?
            .into_iter()
            .map(|i| {
                let ann = match side {
                    Side::Left => bm.r_m(&i.members)?,
                    _ => bm.l_m(&i.members)?,
                };
                Ok((i.members, ann.members))
            })
            .collect(),
        Acting::Operators { .. } => {
            let q = bm.semisimple_quotient(side, caps.closure)?;
            Ok(maximal_ideals(&q.ring, side, MaximalMode::Lattice, caps.lattice)?
                .into_iter()
                .map(|i| {
                    let ann = q.annihilated(&i.members);
                    (i.members, ann)
                })
                .collect())
        }
    }
}

/// The defining test: for every maximal left ideal `I` of `A`, `r_M(I)` is
/// zero or an irreducible right `B`-module, and symmetrically for maximal
/// right ideals of `B`. Unfaithful input is a precondition error.
pub fn is_qf_azumaya(bm: &FiniteBimodule, caps: &Caps) -> Result<QfVerdict> {
    let start = Instant::now();
    require_faithful(bm)?;
    let mut witnesses = Vec::new();
    let mut checked = 0;
    for side in [Side::Left, Side::Right] {
        let other = side.opposite();
        for (ideal, ann) in maximal_annihilators(bm, side, caps)? {
            checked += 1;
            let w = SubmoduleSet::new(other, ann);
            if !w.is_zero() && !bm.is_irreducible(other, &w)? {
                let kind = if side == Side::Left {
                    WitnessKind::ReducibleRightAnnihilator
                } else {
                    WitnessKind::ReducibleLeftAnnihilator
                };
                let proper = smaller_submodule(bm, other, &w.members);
                witnesses.push(Witness::new(kind, ideal, w.members, proper, "annihilator is reducible"));
            }
        }
    }
    Ok(QfVerdict::decided(Route::Azumaya, checked, witnesses, start))
}

/// A nonzero proper submodule of `w`, proving it reducible.
fn smaller_submodule(bm: &FiniteBimodule, side: Side, w: &[u32]) -> Vec<u32> {
    let zero = bm.carrier().zero();
    w.iter()
        .filter(|&&m| m != zero)
        .map(|&m| bm.submodule_generated(side, &[m]).members)
        .find(|c| c.len() < w.len())
        .unwrap_or_default()
}

/// All four annihilator correspondences over the full ideal and submodule
/// lattices. Needs both acting rings listed.
pub fn annihilator_correspondence_check(bm: &FiniteBimodule, caps: &Caps) -> Result<QfVerdict> {
    let start = Instant::now();
    let (Some(a), Some(b)) = (bm.left().ring(), bm.right().ring()) else {
        return Ok(QfVerdict::undecided(
            Route::Annihilator,
            "not decided: cap (operator ring lattice is not enumerated)",
            start,
        ));
    };
    let mut witnesses = Vec::new();
    let mut checked = 0;
    for i in all_ideals(a, Side::Left, caps.lattice)? {
        checked += 1;
        let back = bm.l_a(&bm.r_m(&i.members)?.members)?;
        if back != i {
            witnesses.push(Witness::new(WitnessKind::LeftIdealNotClosed, i.members, vec![], back.members, ""));
        }
    }
    for w in bm.all_submodules(Side::Right, caps.lattice)? {
        checked += 1;
        let back = bm.r_m(&bm.l_a(&w.members)?.members)?;
        if back.members != w.members {
            witnesses.push(Witness::new(WitnessKind::RightSubmoduleNotClosed, vec![], w.members, back.members, ""));
        }
    }
    for j in all_ideals(b, Side::Right, caps.lattice)? {
        checked += 1;
        let back = bm.r_b(&bm.l_m(&j.members)?.members)?;
        if back != j {
            witnesses.push(Witness::new(WitnessKind::RightIdealNotClosed, j.members, vec![], back.members, ""));
        }
    }
    for v in bm.all_submodules(Side::Left, caps.lattice)? {
        checked += 1;
        let back = bm.l_m(&bm.r_b(&v.members)?.members)?;
        if back.members != v.members {
            witnesses.push(Witness::new(WitnessKind::LeftSubmoduleNotClosed, vec![], v.members, back.members, ""));
        }
    }
    Ok(QfVerdict::decided(Route::Annihilator, checked, witnesses, start))
}

/// Left and right socles coincide and the induced semisimple bimodule on
/// the socle passes the defining test.
pub fn socle_criterion(bm: &FiniteBimodule, caps: &Caps) -> Result<QfVerdict> {
    let start = Instant::now();
    require_faithful(bm)?;
    let sl = bm.socle(Side::Left)?;
    let sr = bm.socle(Side::Right)?;
    if sl.members != sr.members {
        let both = intersect_sorted(&sl.members, &sr.members);
        let odd = sl
            .members
            .iter()
            .chain(&sr.members)
            .find(|m| both.binary_search(m).is_err())
            .copied()
            .expect("socles differ");
        let w = Witness::new(
            WitnessKind::SocleMismatch,
            vec![],
            vec![odd],
            both,
            format!("left socle has {} elements, right socle {}", sl.len(), sr.len()),
        );
        return Ok(QfVerdict::decided(Route::Socle, 2, vec![w], start));
    }
    let induced = bm.induced_semisimple(caps)?;
    for side in [Side::Left, Side::Right] {
        if let Some(a) = induced.unfaithful_witness(side) {
            let w = Witness::new(
                WitnessKind::InducedUnfaithful,
                vec![a],
                sl.members.clone(),
                vec![],
                format!("{side:?} semisimple quotient does not act faithfully on the socle"),
            );
            return Ok(QfVerdict::decided(Route::Socle, 2, vec![w], start));
        }
    }
    let inner = is_qf_azumaya(&induced, caps)?;
    let witnesses = inner
        .witnesses
        .into_iter()
        .map(|w| {
            // Map socle positions back to carrier encodings.
            let lift = |v: Vec<u32>| v.into_iter().map(|x| sl.members[x as usize]).collect();
            Witness::new(
                WitnessKind::Induced,
                w.ideal,
                lift(w.submodule),
                lift(w.found),
                format!("{:?} in the induced semisimple bimodule", w.kind),
            )
        })
        .collect();
    Ok(QfVerdict::decided(Route::Socle, 2 + inner.checked, witnesses, start))
}

/// Run one route. A cap failure becomes an undecided verdict; other
/// errors (including unfaithful input) are returned.
pub fn run_route(bm: &FiniteBimodule, route: Route, caps: &Caps) -> Result<QfVerdict> {
    let start = Instant::now();
    let out = match route {
        Route::Azumaya => is_qf_azumaya(bm, caps),
        Route::Annihilator => annihilator_correspondence_check(bm, caps),
        Route::Socle => socle_criterion(bm, caps),
        Route::MinimalSubmodules => th1_condition4_check(bm, caps),
    };
    match out {
        Err(e) if e.is_cap() => Ok(QfVerdict::undecided(route, format!("not decided: cap ({e})"), start)),
        other => other,
    }
}

/// All three QF routes, in a fixed order.
pub fn run_all_routes(bm: &FiniteBimodule, caps: &Caps) -> Result<Vec<QfVerdict>> {
    Route::ALL.iter().map(|&r| run_route(bm, r, caps)).collect()
}

/// `Some(v)` when every decided route says `v`, `None` when they disagree
/// or none decided.
pub fn agreed_verdict(verdicts: &[QfVerdict]) -> Option<bool> {
    let mut decided = verdicts.iter().filter_map(|v| v.verdict);
    let first = decided.next()?;
    decided.all(|v| v == first).then_some(first)
}

/// `M` contains a copy of every simple `side`-module: every maximal
/// `side`-ideal annihilates something nonzero.
pub fn is_distinguished(bm: &FiniteBimodule, side: Side, caps: &Caps) -> Result<bool> {
    let zero = bm.carrier().zero();
    Ok(maximal_annihilators(bm, side, caps)?
        .iter()
        .all(|(_, ann)| ann.iter().any(|&m| m != zero)))
}

/// How one bimodule fared under the defining test.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", content = "value", rename_all = "snake_case")]
pub enum Outcome {
    Qf(bool),
    Precondition(String),
    Undecided(String),
}

impl Outcome {
    fn of(bm: Result<FiniteBimodule>, caps: &Caps) -> Outcome {
        let v = bm.and_then(|bm| run_route(&bm, Route::Azumaya, caps));
        match v {
            Ok(v) => match v.verdict {
                Some(b) => Outcome::Qf(b),
                None => Outcome::Undecided(v.note.unwrap_or_default()),
            },
            Err(Error::Precondition(s)) => Outcome::Precondition(s),
            Err(e) => Outcome::Undecided(e.to_string()),
        }
    }

    fn class(&self) -> std::mem::Discriminant<Outcome> {
        std::mem::discriminant(self)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixReductionReport {
    pub k: usize,
    pub l: usize,
    pub base: Outcome,
    pub shaped: Outcome,
    /// Same verdict, or both rejected for the same kind of reason.
    pub agree: bool,
}

/// Compare the defining test on `_S W _T` and on its `k x l` matrix shape
/// over `S_{k,k}` and `T_{l,l}`.
pub fn matrix_reduction_check(base: &FiniteBimodule, k: usize, l: usize, caps: &Caps) -> Result<MatrixReductionReport> {
    let shaped_bm = matrix_shape(base, k, l, caps);
    if let Err(e) = &shaped_bm {
        if !e.is_cap() {
            return Err(shaped_bm.expect_err("error"));
        }
    }
    let base_outcome = Outcome::of(Ok(base.clone()), caps);
    let shaped = Outcome::of(shaped_bm, caps);
    let agree = match (&base_outcome, &shaped) {
        (Outcome::Qf(a), Outcome::Qf(b)) => a == b,
        (a, b) => a.class() == b.class() && !matches!(a, Outcome::Undecided(_)),
    };
    Ok(MatrixReductionReport { k, l, base: base_outcome, shaped, agree })
}

#[cfg(test)]
mod tests;
