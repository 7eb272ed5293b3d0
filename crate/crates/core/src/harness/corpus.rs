//! Named example objects shared by the CLI, the scenario runner and the
//! bindings.

use std::sync::Arc;

use crate::bimodule::{column_bimodule, regular_bimodule, restrict_left, restrict_right, FiniteBimodule};
use crate::geo::{build_geo_ring, GeoSpec};
use crate::ring::{quotient_ring, residue_ring, scalar_embedding, IdealSet};
use crate::{Caps, Error, Result, Side};

/// `Z/4` written as `Z/4[x]/(x - 2)`.
pub fn z4_spec() -> GeoSpec {
    GeoSpec::new(2, 2, 1, 0, vec![2, 1], 1)
}

/// `Z/4[x]/(x^2 - 2, 2x)`, order 8.
pub fn ge8_spec() -> GeoSpec {
    GeoSpec::new(2, 2, 1, 0, vec![2, 0, 1], 1)
}

/// `Z/4[x]/(x^2 - 2)`, order 16.
pub fn ge16_spec() -> GeoSpec {
    GeoSpec::new(2, 2, 1, 0, vec![2, 0, 1], 2)
}

/// `GF(4)[x, frobenius]/(x^2)`, order 16, noncommutative.
pub fn skew16_spec() -> GeoSpec {
    GeoSpec::new(2, 1, 2, 1, vec![0, 0, 1], 2)
}

/// `GR(9,2)[x, frobenius]/(x^2 + 3, 3x)`, order 729, noncommutative.
pub fn geo729_spec() -> GeoSpec {
    GeoSpec::new(3, 2, 2, 1, vec![3, 0, 1], 1)
}

pub fn geo_corpus() -> Vec<(&'static str, GeoSpec)> {
    vec![
        ("z4", z4_spec()),
        ("ge8", ge8_spec()),
        ("ge16", ge16_spec()),
        ("skew16", skew16_spec()),
        ("geo729", geo729_spec()),
    ]
}

pub fn geo_spec(name: &str) -> Option<GeoSpec> {
    geo_corpus().into_iter().find(|(n, _)| *n == name).map(|(_, s)| s)
}

/// `_Z (Z/4)^2 _Z` with `M_2(Z/4)` cut down to scalars on the left.
pub fn scalar_restricted(caps: &Caps) -> Result<FiniteBimodule> {
    let col = column_bimodule(&residue_ring(4)?, 2, 1, caps)?;
    let m2 = col.left().ring().expect("matrix action").clone();
    restrict_left(&col, &scalar_embedding(&residue_ring(4)?, &m2, 2)?)
}

/// `_R (R/I) _R` through the projection.
pub fn quotient_module(ring: &Arc<crate::ring::FiniteRing>, ideal: &[u32]) -> Result<FiniteBimodule> {
    let (q, proj) = quotient_ring(ring, &IdealSet::new(Side::TwoSided, ideal.to_vec()))?;
    let reg = regular_bimodule(&q)?;
    restrict_right(&restrict_left(&reg, &proj)?, &proj)
}

pub const BIMODULE_NAMES: &[&str] = &[
    "regular_gf2",
    "regular_z4",
    "regular_ge8",
    "regular_ge16",
    "column_z4_2_1",
    "scalar_restricted",
    "z4_mod_2",
];

/// A bimodule by name, or the regular bimodule of a named GEO ring as
/// `regular_<geo name>`.
pub fn named_bimodule(name: &str, caps: &Caps) -> Result<FiniteBimodule> {
    match name {
        "regular_gf2" => regular_bimodule(&residue_ring(2)?),
        "regular_z4" => regular_bimodule(&residue_ring(4)?),
        "column_z4_2_1" => column_bimodule(&residue_ring(4)?, 2, 1, caps),
        "scalar_restricted" => scalar_restricted(caps),
        "z4_mod_2" => quotient_module(&residue_ring(4)?, &[0, 2]),
        _ => match name.strip_prefix("regular_").and_then(geo_spec) {
            Some(spec) => regular_bimodule(&build_geo_ring(&spec, caps)?.ring),
            None => Err(Error::InvalidInput(format!("unknown bimodule name '{name}'"))),
        },
    }
}

/// The six bimodules on which all QF routes must agree.
pub fn route_corpus(caps: &Caps) -> Result<Vec<(&'static str, FiniteBimodule)>> {
    BIMODULE_NAMES[..6].iter().map(|&n| Ok((n, named_bimodule(n, caps)?))).collect()
}
