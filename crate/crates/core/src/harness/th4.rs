//! Structural checks of the matrix-ring description of `C` for a QF
//! canonical bimodule over a local `Z`, and of the GEO dichotomy.

use serde::{Deserialize, Serialize};

use crate::bimodule::FiniteBimodule;
use crate::geo::{geo_translation_verdict, GeoRing, GeoVerdict};
use crate::qf::{agreed_verdict, run_all_routes};
use crate::ring::{is_simple, jacobson_radical, units};
use crate::translations::{canonical_bimodule, common_center, endo_center, endo_ring_as_ring, ring_c, translation_ring};
use crate::{Caps, Error, Result, Side};

/// `|C| = |Z|^{n^2}`, `Z(C) = Z`, `C/J(C)` simple.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixShapeCheck {
    pub c_order_matches: bool,
    /// `None` when `C` is too large to list.
    pub center_matches: Option<bool>,
    pub c_bar_simple: bool,
}

/// QF of the original bimodule against equality of the three socles.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SocleCheck {
    pub qf: Option<bool>,
    pub left_socle: Vec<u32>,
    pub right_socle: Vec<u32>,
    pub canonical_socle: Vec<u32>,
    pub socles_equal: bool,
    /// `qf == socles_equal`.
    pub equivalence_holds: Option<bool>,
}

/// Over a finite residue field: QF, and `r s = n` with `|A^| = |Z|^{r^2}`
/// and `|B^| = |Z|^{s^2}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShapeCheck {
    pub qf: bool,
    pub left_order: u64,
    pub right_order: u64,
    pub shape: Option<(u32, u32)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Th4Report {
    pub label: String,
    pub hypotheses_met: bool,
    pub notes: Vec<String>,
    pub canonical_qf: Option<bool>,
    pub z_order: u64,
    pub z_local: bool,
    pub residue_order: u64,
    pub c_order: u64,
    pub canonical_socle_order: usize,
    /// Dimension of the socle of `_C M` over `Z/J(Z)`.
    pub n: Option<u32>,
    pub matrix_shape: MatrixShapeCheck,
    pub socles: SocleCheck,
    pub shape: ShapeCheck,
}

impl Th4Report {
    /// `None` when the hypotheses fail: nothing is claimed then.
    pub fn holds(&self) -> Option<bool> {
        self.hypotheses_met.then(|| {
            self.n.is_some()
                && self.matrix_shape.c_order_matches
                && self.matrix_shape.center_matches != Some(false)
                && self.matrix_shape.c_bar_simple
                && self.socles.equivalence_holds == Some(true)
                && self.shape.qf
                && self.shape.shape.is_some()
        })
    }
}

fn exact_log(base: u64, x: u64) -> Option<u32> {
    if base < 2 {
        return None;
    }
    let (mut k, mut acc) = (0, 1u64);
    while acc < x {
        acc = acc.checked_mul(base)?;
        k += 1;
    }
    (acc == x).then_some(k)
}

pub fn verify_th4(bm: &FiniteBimodule, caps: &Caps) -> Result<Th4Report> {
    let mut notes = Vec::new();
    let can = canonical_bimodule(bm, caps)?;
    let canonical_qf = match run_all_routes(&can, caps) {
        Ok(v) => agreed_verdict(&v),
        Err(Error::Precondition(m)) => {
            notes.push(m);
            None
        }
        Err(e) => return Err(e),
    };
    if canonical_qf != Some(true) {
        notes.push("canonical bimodule is not QF".into());
    }
    let c = ring_c(bm, caps)?;
    let z = common_center(bm, caps)?;
    let zr = endo_ring_as_ring(&z, caps.size)?;
    let zj = jacobson_radical(&zr);
    let z_local = units(&zr).len() + zj.len() == zr.order();
    if !z_local {
        notes.push("common center is not local".into());
    }
    let residue_order = (zr.order() / zj.len()) as u64;
    let canonical_socle = can.socle(Side::Left)?;
    let n = if z_local { exact_log(residue_order, canonical_socle.len() as u64) } else { None };
    let c_order_matches = n.is_some_and(|n| exact_log(z.order(), c.order()) == Some(n * n));
    let center_matches = match endo_center(&c) {
        Ok(mut center) => {
            center.sort();
            Some(center.as_slice() == z.members().expect("enumerated"))
        }
        Err(Error::Unsupported(_)) => None,
        Err(e) => return Err(e),
    };
    let c_bar_simple = is_simple(&can.semisimple_quotient(Side::Left, caps.closure)?.ring);

    let qf = match run_all_routes(bm, caps) {
        Ok(v) => agreed_verdict(&v),
        Err(Error::Precondition(m)) => {
            notes.push(m);
            None
        }
        Err(e) => return Err(e),
    };
    let left_socle = bm.socle(Side::Left)?.members;
    let right_socle = bm.socle(Side::Right)?.members;
    let socles_equal = left_socle == right_socle && right_socle == canonical_socle.members;

    let a = translation_ring(bm, Side::Left, caps)?;
    let b = translation_ring(bm, Side::Right, caps)?;
    let shape = n.and_then(|n| {
        (1..=n).filter(|r| n % r == 0).map(|r| (r, n / r)).find(|&(r, s)| {
            exact_log(z.order(), a.order()) == Some(r * r) && exact_log(z.order(), b.order()) == Some(s * s)
        })
    });
    Ok(Th4Report {
        label: bm.descriptor().label(),
        hypotheses_met: canonical_qf == Some(true) && z_local,
        notes,
        canonical_qf,
        z_order: z.order(),
        z_local,
        residue_order,
        c_order: c.order(),
        canonical_socle_order: canonical_socle.len(),
        n,
        matrix_shape: MatrixShapeCheck { c_order_matches, center_matches, c_bar_simple },
        socles: SocleCheck {
            qf,
            socles_equal,
            equivalence_holds: qf.map(|q| q == socles_equal),
            left_socle,
            right_socle,
            canonical_socle: canonical_socle.members,
        },
        shape: ShapeCheck { qf: qf == Some(true), left_order: a.order(), right_order: b.order(), shape },
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Th4Plus1Report {
    pub entries: Vec<GeoVerdict>,
    /// Every regular bimodule is QF.
    pub regular_all_qf: bool,
    /// Canonical QF iff commutative, wherever the hypotheses hold.
    pub dichotomy_holds: bool,
    /// `C/J(C)` is `t` copies of the residue field wherever the hypotheses
    /// hold.
    pub c_bar_holds: bool,
    pub warnings: Vec<String>,
}

impl Th4Plus1Report {
    pub fn holds(&self) -> bool {
        self.regular_all_qf && self.dichotomy_holds && self.c_bar_holds
    }
}

pub fn verify_th4plus1<'a>(rings: impl IntoIterator<Item = &'a GeoRing>, caps: &Caps) -> Result<Th4Plus1Report> {
    let entries = rings.into_iter().map(|g| geo_translation_verdict(g, caps)).collect::<Result<Vec<_>>>()?;
    let mut warnings = Vec::new();
    if entries.is_empty() {
        warnings.push("empty corpus: vacuous pass".into());
    }
    for e in entries.iter().filter(|e| !e.dichotomy_applies) {
        warnings.push(format!("{}: dichotomy hypotheses not met, reported only", e.label));
    }
    Ok(Th4Plus1Report {
        regular_all_qf: entries.iter().all(|e| e.regular_holds()),
        dichotomy_holds: entries.iter().all(|e| e.dichotomy_holds != Some(false)),
        c_bar_holds: entries.iter().filter(|e| e.dichotomy_applies).all(|e| e.c_bar_as_expected),
        entries,
        warnings,
    })
}
