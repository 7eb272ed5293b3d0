//! Scenario files, the check runner, reports and their comparison.

pub mod cache;
pub mod corpus;
mod th4;

pub use cache::{Cache, CACHE_VERSION};
pub use th4::{verify_th4, verify_th4plus1, MatrixShapeCheck, ShapeCheck, SocleCheck, Th4Plus1Report, Th4Report};

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::bimodule::{
    build_bimodule, column_bimodule, regular_bimodule, restrict_left, BimoduleDescriptor, FiniteBimodule,
};
use crate::geo::{
    build_geo_ring, geo_center, geo_invariants, geo_translation_verdict,
    ideals_are_radical_powers, socle_formula_check, translation_r_ring, GeoRing, GeoSpec,
};
use crate::qf::{agreed_verdict, is_injective_baer, run_route, th1_condition4_check, Route};
use crate::ring::{build, ring_profile, scalar_embedding, FiniteRing, RingDescriptor};
use crate::translations::{center_intersection_check, radical_compatibility_check};
use crate::{Caps, Error, Result, Side};

/// Version of the scenario and report formats.
pub const SCHEMA_VERSION: u32 = 1;

/// How to make one object. References name earlier constructions.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "make", rename_all = "snake_case", deny_unknown_fields)]
pub enum Recipe {
    Ring { ring: RingDescriptor },
    Geo { spec: GeoSpec },
    /// A GEO ring from the built-in corpus (`z4`, `ge8`, `ge16`, `skew16`, `geo729`).
    NamedGeo { name: String },
    Bimodule { bimodule: BimoduleDescriptor },
    /// A bimodule from the built-in corpus.
    NamedBimodule { name: String },
    Regular { of: String },
    Column { of: String, r: u32, s: u32 },
    /// Left action cut down to the scalar matrices over the ring `scalars`.
    ScalarRestrict { of: String, scalars: String, n: u32 },
    /// `_R (R/I) _R`.
    Quotient { of: String, ideal: Vec<u32> },
    Canonical { of: String },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Construction {
    pub id: String,
    #[serde(flatten)]
    pub recipe: Recipe,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "check", rename_all = "snake_case")]
pub enum Check {
    RingInfo {},
    Qf {
        #[serde(default)]
        routes: Option<Vec<Route>>,
        #[serde(default)]
        expect: Option<bool>,
    },
    Lattice {
        side: Side,
        #[serde(default)]
        expect: Option<usize>,
    },
    CenterIntersection {},
    RadicalCompatibility {},
    Baer {
        #[serde(default = "left")]
        side: Side,
        #[serde(default)]
        expect: Option<bool>,
    },
    MinimalSubmodules {
        #[serde(default)]
        expect: Option<bool>,
    },
    Th4 {},
    GeoInvariants {},
    GeoSocle {},
    GeoDecomposition {
        #[serde(default)]
        expect_orders: Option<Vec<usize>>,
    },
    GeoCenter {
        #[serde(default)]
        expect_order: Option<usize>,
    },
    GeoVerdict {},
    /// Aggregate over `targets`.
    Th4plus1 {},
}

fn left() -> Side {
    Side::Left
}

impl Check {
    pub fn name(&self) -> &'static str {
        match self {
            Check::RingInfo {} => "ring_info",
            Check::Qf { .. } => "qf",
            Check::Lattice { .. } => "lattice",
            Check::CenterIntersection {} => "center_intersection",
            Check::RadicalCompatibility {} => "radical_compatibility",
            Check::Baer { .. } => "baer",
            Check::MinimalSubmodules { .. } => "minimal_submodules",
            Check::Th4 {} => "th4",
            Check::GeoInvariants {} => "geo_invariants",
            Check::GeoSocle {} => "geo_socle",
            Check::GeoDecomposition { .. } => "geo_decomposition",
            Check::GeoCenter { .. } => "geo_center",
            Check::GeoVerdict {} => "geo_verdict",
            Check::Th4plus1 {} => "th4plus1",
        }
    }

    fn wants(&self) -> Kind {
        match self {
            Check::RingInfo {} => Kind::Ring,
            Check::GeoInvariants {}
            | Check::GeoSocle {}
            | Check::GeoDecomposition { .. }
            | Check::GeoCenter { .. }
            | Check::GeoVerdict {}
            | Check::Th4plus1 {} => Kind::Geo,
            _ => Kind::Bimodule,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckSpec {
    pub id: String,
    #[serde(default)]
    pub target: Option<String>,
    #[serde(default)]
    pub targets: Vec<String>,
    #[serde(flatten)]
    pub check: Check,
    /// Where the expected value comes from, copied to the report.
    #[serde(default)]
    pub expected_source: Option<String>,
}

impl CheckSpec {
    fn all_targets(&self) -> Vec<&str> {
        self.target.iter().chain(&self.targets).map(|s| s.as_str()).collect()
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CapsOverride {
    pub size: Option<u64>,
    pub lattice: Option<usize>,
    pub closure: Option<usize>,
    pub homs: Option<u64>,
    pub seed: Option<u64>,
}

impl CapsOverride {
    pub fn apply(&self, base: Caps) -> Caps {
        Caps {
            size: self.size.unwrap_or(base.size),
            lattice: self.lattice.unwrap_or(base.lattice),
            closure: self.closure.unwrap_or(base.closure),
            homs: self.homs.unwrap_or(base.homs),
            seed: self.seed.unwrap_or(base.seed),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Scenario {
    pub schema_version: u32,
    pub name: String,
    #[serde(default)]
    pub caps: CapsOverride,
    #[serde(default)]
    pub constructions: Vec<Construction>,
    #[serde(default)]
    pub checks: Vec<CheckSpec>,
}

impl Scenario {
    pub fn new(name: impl Into<String>) -> Self {
        Scenario {
            schema_version: SCHEMA_VERSION,
            name: name.into(),
            caps: CapsOverride::default(),
            constructions: vec![],
            checks: vec![],
        }
    }

    pub fn construct(mut self, id: &str, recipe: Recipe) -> Self {
        self.constructions.push(Construction { id: id.into(), recipe });
        self
    }

    pub fn check(mut self, id: &str, target: &str, check: Check) -> Self {
        self.checks.push(CheckSpec {
            id: id.into(),
            target: Some(target.into()),
            targets: vec![],
            check,
            expected_source: None,
        });
        self
    }

    pub fn from_json(text: &str) -> Result<Scenario> {
        let s: Scenario = serde_json::from_str(text)?;
        s.validate()?;
        Ok(s)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Scenario> {
        Scenario::from_json(&std::fs::read_to_string(path)?)
    }

    /// Schema version, unique ids, references to earlier constructions of
    /// the right kind, and check targets.
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidInput(m));
        if self.schema_version != SCHEMA_VERSION {
            return bad(format!("schema version {} is not {SCHEMA_VERSION}", self.schema_version));
        }
        let mut kinds: BTreeMap<&str, Kind> = BTreeMap::new();
        for c in &self.constructions {
            let need = |id: &str, want: &[Kind]| -> Result<()> {
                match kinds.get(id) {
                    Some(k) if want.contains(k) => Ok(()),
                    Some(k) => Err(Error::InvalidInput(format!("'{}' refers to '{id}', a {k:?}", c.id))),
                    None => Err(Error::InvalidInput(format!("'{}' refers to '{id}' before it is declared", c.id))),
                }
            };
            let kind = match &c.recipe {
                Recipe::Ring { .. } => Kind::Ring,
                Recipe::Geo { .. } | Recipe::NamedGeo { .. } => Kind::Geo,
                Recipe::Bimodule { .. } | Recipe::NamedBimodule { .. } => Kind::Bimodule,
                Recipe::Regular { of } | Recipe::Column { of, .. } | Recipe::Quotient { of, .. } => {
                    need(of, &[Kind::Ring, Kind::Geo])?;
                    Kind::Bimodule
                }
                Recipe::ScalarRestrict { of, scalars, .. } => {
                    need(of, &[Kind::Bimodule])?;
                    need(scalars, &[Kind::Ring, Kind::Geo])?;
                    Kind::Bimodule
                }
                Recipe::Canonical { of } => {
                    need(of, &[Kind::Bimodule])?;
                    Kind::Bimodule
                }
            };
            if kinds.insert(&c.id, kind).is_some() {
                return bad(format!("construction id '{}' is declared twice", c.id));
            }
        }
        let mut ids = std::collections::BTreeSet::new();
        for chk in &self.checks {
            if !ids.insert(&chk.id) {
                return bad(format!("check id '{}' is used twice", chk.id));
            }
            let targets = chk.all_targets();
            if targets.is_empty() && !matches!(chk.check, Check::Th4plus1 {}) {
                return bad(format!("check '{}' has no target", chk.id));
            }
            for t in targets {
                match kinds.get(t) {
                    None => return bad(format!("check '{}' targets unknown '{t}'", chk.id)),
                    Some(k) if !chk.check.wants().accepts(*k) => {
                        return bad(format!("check '{}' cannot run on '{t}' ({k:?})", chk.id))
                    }
                    _ => {}
                }
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Kind {
    Ring,
    Geo,
    Bimodule,
}

impl Kind {
    fn accepts(self, k: Kind) -> bool {
        self == k || (self == Kind::Ring && k == Kind::Geo)
    }
}

// A scenario holds a handful of objects; boxing buys nothing.
#[allow(clippy::large_enum_variant)]
enum Object {
    Ring(Arc<FiniteRing>),
    Geo(Arc<GeoRing>),
    Bimodule(FiniteBimodule),
}

impl Object {
    fn ring(&self) -> Option<&Arc<FiniteRing>> {
        match self {
            Object::Ring(r) => Some(r),
            Object::Geo(g) => Some(&g.ring),
            Object::Bimodule(_) => None,
        }
    }

    /// What the object was built from, as hashed by the cache.
    fn subtree(&self) -> Value {
        match self {
            Object::Ring(r) => json!({ "ring": r.descriptor() }),
            Object::Geo(g) => json!({ "geo": g.spec }),
            Object::Bimodule(b) => json!({ "bimodule": b.descriptor() }),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    /// A cap stopped the computation.
    Undecided,
    /// The statement does not apply; nothing is claimed.
    HypothesisNotMet,
    Error,
}

impl Status {
    pub fn tag(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Undecided => "UNDECIDED",
            Status::HypothesisNotMet => "N/A",
            Status::Error => "ERROR",
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct CheckTimings {
    pub total_ms: f64,
    pub cached: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub id: String,
    pub check: String,
    pub targets: Vec<String>,
    pub status: Status,
    pub summary: String,
    pub details: Value,
    pub expected_source: Option<String>,
    pub timings: CheckTimings,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub undecided: usize,
    pub hypothesis_not_met: usize,
    pub error: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub tool_version: String,
    pub scenario: String,
    pub caps: Caps,
    pub checks: Vec<CheckRecord>,
    pub summary: Summary,
    pub warnings: Vec<String>,
    pub passed: bool,
}

impl Report {
    /// 0 all pass, 1 a mathematical failure, 2 undecided, 3 a check that
    /// errored on its input.
    pub fn exit_code(&self) -> i32 {
        let s = &self.summary;
        if s.fail > 0 {
            1
        } else if s.error > 0 {
            3
        } else if s.undecided > 0 {
            2
        } else {
            0
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn lines(&self) -> Vec<String> {
        let mut out: Vec<String> =
            self.checks.iter().map(|c| format!("[{}] {}: {}", c.status.tag(), c.id, c.summary)).collect();
        out.extend(self.warnings.iter().map(|w| format!("warning: {w}")));
        let s = &self.summary;
        out.push(format!(
            "{}: {} pass, {} fail, {} undecided, {} not applicable, {} error",
            self.scenario, s.pass, s.fail, s.undecided, s.hypothesis_not_met, s.error
        ));
        out
    }
}

#[derive(Clone, Debug, Default)]
pub struct RunOptions {
    pub caps: Caps,
    pub cache: Option<Cache>,
}

fn construct(recipe: &Recipe, objects: &BTreeMap<String, Object>, caps: &Caps) -> Result<Object> {
    let ring_of = |id: &str| -> Result<Arc<FiniteRing>> {
        objects
            .get(id)
            .and_then(|o| o.ring())
            .cloned()
            .ok_or_else(|| Error::InvalidInput(format!("'{id}' is not a ring")))
    };
    let bimodule_of = |id: &str| -> Result<&FiniteBimodule> {
        match objects.get(id) {
            Some(Object::Bimodule(b)) => Ok(b),
            _ => Err(Error::InvalidInput(format!("'{id}' is not a bimodule"))),
        }
    };
    Ok(match recipe {
        Recipe::Ring { ring } => Object::Ring(build(ring, caps)?),
        Recipe::Geo { spec } => Object::Geo(Arc::new(build_geo_ring(spec, caps)?)),
        Recipe::NamedGeo { name } => {
            let spec = corpus::geo_spec(name).ok_or_else(|| Error::InvalidInput(format!("unknown GEO ring '{name}'")))?;
            Object::Geo(Arc::new(build_geo_ring(&spec, caps)?))
        }
        Recipe::Bimodule { bimodule } => Object::Bimodule(build_bimodule(bimodule, caps)?),
        Recipe::NamedBimodule { name } => Object::Bimodule(corpus::named_bimodule(name, caps)?),
        Recipe::Regular { of } => Object::Bimodule(regular_bimodule(&ring_of(of)?)?),
        Recipe::Column { of, r, s } => Object::Bimodule(column_bimodule(&ring_of(of)?, *r as usize, *s as usize, caps)?),
        Recipe::ScalarRestrict { of, scalars, n } => {
            let bm = bimodule_of(of)?;
            let target = bm
                .left()
                .ring()
                .ok_or_else(|| Error::InvalidInput(format!("'{of}' acts by operators on the left")))?;
            let f = scalar_embedding(&ring_of(scalars)?, target, *n as usize)?;
            Object::Bimodule(restrict_left(bm, &f)?)
        }
        Recipe::Quotient { of, ideal } => Object::Bimodule(corpus::quotient_module(&ring_of(of)?, ideal)?),
        Recipe::Canonical { of } => Object::Bimodule(crate::translations::canonical_bimodule(bimodule_of(of)?, caps)?),
    })
}

type Outcome = (Status, String, Value);

fn to_value(x: &impl Serialize) -> Value {
    serde_json::to_value(x).expect("serializable")
}

fn expect_status<T: PartialEq + std::fmt::Debug>(got: T, expect: &Option<T>) -> (Status, String) {
    match expect {
        Some(e) if *e != got => (Status::Fail, format!("got {got:?}, expected {e:?}")),
        Some(_) => (Status::Pass, format!("{got:?} as expected")),
        None => (Status::Pass, format!("{got:?}")),
    }
}

fn run_check(check: &Check, targets: &[&Object], caps: &Caps) -> Result<Outcome> {
    let bimodule = || match targets[0] {
        Object::Bimodule(b) => b,
        _ => unreachable!("validated"),
    };
    let geo = || match targets[0] {
        Object::Geo(g) => g,
        _ => unreachable!("validated"),
    };
    Ok(match check {
        Check::RingInfo {} => {
            let ring = targets[0].ring().expect("validated");
            let p = ring_profile(ring)?;
            let s = format!("order {}, |J| = {}, commutative: {}", p.order, p.radical_order, ring.is_commutative());
            (Status::Pass, s, json!({ "profile": p, "commutative": ring.is_commutative(), "label": ring.descriptor().label() }))
        }
        Check::Qf { routes, expect } => {
            let routes = routes.clone().unwrap_or_else(|| Route::ALL.to_vec());
            let verdicts = match routes.iter().map(|&r| run_route(bimodule(), r, caps)).collect::<Result<Vec<_>>>() {
                Ok(v) => v,
                Err(Error::Precondition(m)) => return Ok((Status::HypothesisNotMet, m, Value::Null)),
                Err(e) => return Err(e),
            };
            let decided: Vec<bool> = verdicts.iter().filter_map(|v| v.verdict).collect();
            let names: Vec<&str> = routes.iter().map(|r| r.name()).collect();
            let (status, summary) = if decided.is_empty() {
                let why = verdicts.iter().find_map(|v| v.note.clone()).unwrap_or_default();
                (Status::Undecided, why)
            } else if decided.iter().any(|&v| v != decided[0]) {
                (Status::Fail, format!("routes disagree: {decided:?}"))
            } else {
                let (st, s) = expect_status(decided[0], expect);
                let undecided = verdicts.len() - decided.len();
                let tail = if undecided > 0 { format!(", {undecided} undecided") } else { String::new() };
                (st, format!("QF {s} ({} of {} routes{tail})", decided.len(), names.join("/")))
            };
            (status, summary, json!({ "verdict": agreed_verdict(&verdicts), "routes": verdicts }))
        }
        Check::Lattice { side, expect } => match bimodule().all_submodules(*side, caps.lattice) {
            Ok(l) => {
                let (st, s) = expect_status(l.len(), expect);
                (st, format!("{s} submodules"), json!({ "count": l.len(), "orders": l.iter().map(|x| x.len()).collect::<Vec<_>>() }))
            }
            Err(e) if e.is_cap() => (Status::Undecided, format!("not decided: cap ({e})"), Value::Null),
            Err(e) => return Err(e),
        },
        Check::CenterIntersection {} => {
            let r = center_intersection_check(bimodule(), caps)?;
            let st = if r.equal { Status::Pass } else { Status::Fail };
            (st, format!("|Z| = {}, intersection of centers {}", r.common_center_order, r.centers_intersection_order), to_value(&r))
        }
        Check::RadicalCompatibility {} => {
            let r = radical_compatibility_check(bimodule(), caps)?;
            let st = if r.holds() { Status::Pass } else { Status::Fail };
            let s = format!("|J(A^)| = {}, |J(B^)| = {}", r.left.radical_order, r.right.radical_order);
            (st, s, to_value(&r))
        }
        Check::Baer { side, expect } => {
            let r = is_injective_baer(bimodule(), *side, caps)?;
            let (st, s) = expect_status(r.injective, expect);
            (st, format!("injective {s}"), to_value(&r))
        }
        Check::MinimalSubmodules { expect } => {
            let v = th1_condition4_check(bimodule(), caps)?;
            match v.verdict {
                None => (Status::Undecided, v.note.clone().unwrap_or_default(), to_value(&v)),
                Some(q) => {
                    let (st, s) = expect_status(q, expect);
                    (st, format!("QF {s}"), to_value(&v))
                }
            }
        }
        Check::Th4 {} => {
            let r = verify_th4(bimodule(), caps)?;
            let (st, s) = match r.holds() {
                None => (Status::HypothesisNotMet, format!("hypothesis not met: {}", r.notes.join("; "))),
                Some(ok) => (
                    if ok { Status::Pass } else { Status::Fail },
                    format!("n = {:?}, |C| = {}, |Z| = {}, shape {:?}", r.n, r.c_order, r.z_order, r.shape.shape),
                ),
            };
            (st, s, to_value(&r))
        }
        Check::GeoInvariants {} => {
            let g = geo();
            let inv = geo_invariants(g)?;
            let ideals = ideals_are_radical_powers(g, caps)?;
            let st = if inv.all_hold() && ideals { Status::Pass } else { Status::Fail };
            let s = format!("|S| = {}, n = {}, q = {}, ideals are radical powers: {ideals}", inv.order, inv.n, inv.q);
            (st, s, json!({ "invariants": inv, "ideals_are_radical_powers": ideals, "label": g.spec.label() }))
        }
        Check::GeoSocle {} => {
            let r = socle_formula_check(geo())?;
            let st = if r.holds() { Status::Pass } else { Status::Fail };
            (st, format!("|socle| = {}, q = {}, powers {:?}", r.socle_order, r.q, r.power_orders), to_value(&r))
        }
        Check::GeoDecomposition { expect_orders } => {
            let (_, r) = match translation_r_ring(geo(), caps) {
                Ok(x) => x,
                Err(Error::Unsupported(m)) => return Ok((Status::HypothesisNotMet, m, Value::Null)),
                Err(e) => return Err(e),
            };
            let (st, s) = expect_status(r.component_orders.clone(), expect_orders);
            let st = if r.holds() { st } else { Status::Fail };
            (st, format!("|R| = {}, components {s}", r.ring_order), to_value(&r))
        }
        Check::GeoCenter { expect_order } => {
            let r = geo_center(geo())?;
            let (st, s) = expect_status(r.center.len(), expect_order);
            let formula = if r.formula_agrees { "agrees" } else { "disagrees (informational)" };
            let details = json!({
                "center_order": r.center.len(),
                "centralizer_order": r.centralizer.len(),
                "residue_field_order": r.residue_field_order,
                "formula_agrees": r.formula_agrees,
                "centralizer_agrees": r.centralizer_agrees,
                "report": r,
            });
            (st, format!("|Z(S)| = {s}, closed form {formula}"), details)
        }
        Check::GeoVerdict {} => {
            let v = geo_translation_verdict(geo(), caps)?;
            let ok = v.regular_holds() && v.dichotomy_holds != Some(false) && (!v.dichotomy_applies || v.c_bar_as_expected);
            let blocks: Vec<usize> = v.c_bar.blocks.iter().map(|b| b.order).collect();
            let s = format!(
                "regular QF {:?}, canonical QF {:?}, commutative {}, C/J blocks {blocks:?}",
                v.regular_qf, v.canonical_qf, v.commutative
            );
            (if ok { Status::Pass } else { Status::Fail }, s, to_value(&v))
        }
        Check::Th4plus1 {} => {
            let rings = targets
                .iter()
                .map(|o| match o {
                    Object::Geo(g) => g.as_ref(),
                    _ => unreachable!("validated"),
                });
            let r = verify_th4plus1(rings, caps)?;
            let st = if r.holds() { Status::Pass } else { Status::Fail };
            let s = format!(
                "{} rings, regular all QF {}, dichotomy {}, C/J shape {}",
                r.entries.len(),
                r.regular_all_qf,
                r.dichotomy_holds,
                r.c_bar_holds
            );
            (st, s, to_value(&r))
        }
    })
}

fn error_outcome(e: Error) -> Outcome {
    match e {
        e if e.is_cap() => (Status::Undecided, format!("not decided: cap ({e})"), Value::Null),
        Error::Precondition(m) | Error::Unsupported(m) => (Status::HypothesisNotMet, m, Value::Null),
        e => (Status::Error, e.to_string(), Value::Null),
    }
}

/// Build the constructions in order, then run the checks in order. A
/// construction failure is an input error; check failures become report
/// entries.
pub fn run_scenario(scenario: &Scenario, opts: &RunOptions) -> Result<Report> {
    scenario.validate()?;
    let caps = scenario.caps.apply(opts.caps);
    let mut objects: BTreeMap<String, Object> = BTreeMap::new();
    for c in &scenario.constructions {
        let obj = construct(&c.recipe, &objects, &caps)?;
        objects.insert(c.id.clone(), obj);
    }
    let mut checks = Vec::new();
    let mut warnings = Vec::new();
    for spec in &scenario.checks {
        let names = spec.all_targets();
        let targets: Vec<&Object> = names.iter().map(|n| &objects[*n]).collect();
        if matches!(spec.check, Check::Th4plus1 {}) && targets.is_empty() {
            warnings.push(format!("{}: empty corpus, vacuous pass", spec.id));
        }
        let start = Instant::now();
        let key = match &opts.cache {
            Some(_) => {
                let subtrees: Vec<Value> = targets.iter().map(|o| o.subtree()).collect();
                Some(Cache::key("check", &json!({ "check": spec.check, "targets": subtrees, "caps": caps }))?)
            }
            None => None,
        };
        let hit: Option<(Status, String, Value)> =
            opts.cache.as_ref().zip(key.as_ref()).and_then(|(c, k)| c.get(k));
        let cached = hit.is_some();
        let (status, summary, details) = match hit {
            Some(o) => o,
            None => {
                let o = run_check(&spec.check, &targets, &caps).unwrap_or_else(error_outcome);
                if let (Some(c), Some(k)) = (&opts.cache, &key) {
                    if o.0 != Status::Error {
                        c.put(k, &o)?;
                    }
                }
                o
            }
        };
        checks.push(CheckRecord {
            id: spec.id.clone(),
            check: spec.check.name().into(),
            targets: names.iter().map(|s| s.to_string()).collect(),
            status,
            summary,
            details,
            expected_source: spec.expected_source.clone(),
            timings: CheckTimings { total_ms: start.elapsed().as_secs_f64() * 1e3, cached },
        });
    }
    let mut summary = Summary::default();
    for c in &checks {
        *match c.status {
            Status::Pass => &mut summary.pass,
            Status::Fail => &mut summary.fail,
            Status::Undecided => &mut summary.undecided,
            Status::HypothesisNotMet => &mut summary.hypothesis_not_met,
            Status::Error => &mut summary.error,
        } += 1;
    }
    Ok(Report {
        schema_version: SCHEMA_VERSION,
        tool_version: env!("CARGO_PKG_VERSION").into(),
        scenario: scenario.name.clone(),
        caps,
        passed: summary.fail == 0 && summary.undecided == 0 && summary.error == 0,
        checks,
        summary,
        warnings,
    })
}

/// A report with every `timings` field removed.
pub fn normalized(report: &Value) -> Value {
    match report {
        Value::Object(map) => {
            Value::Object(map.iter().filter(|(k, _)| *k != "timings").map(|(k, v)| (k.clone(), normalized(v))).collect())
        }
        Value::Array(a) => Value::Array(a.iter().map(normalized).collect()),
        v => v.clone(),
    }
}

/// JSON paths at which two reports differ, ignoring timings.
pub fn diff_reports(a: &Value, b: &Value) -> Vec<String> {
    fn walk(a: &Value, b: &Value, path: String, out: &mut Vec<String>) {
        match (a, b) {
            (Value::Object(x), Value::Object(y)) => {
                let keys: std::collections::BTreeSet<&String> = x.keys().chain(y.keys()).collect();
                for k in keys {
                    match (x.get(k), y.get(k)) {
                        (Some(u), Some(v)) => walk(u, v, format!("{path}/{k}"), out),
                        _ => out.push(format!("{path}/{k}")),
                    }
                }
            }
            (Value::Array(x), Value::Array(y)) if x.len() == y.len() => {
                for (i, (u, v)) in x.iter().zip(y).enumerate() {
                    walk(u, v, format!("{path}/{i}"), out);
                }
            }
            _ if a != b => out.push(if path.is_empty() { "/".into() } else { path }),
            _ => {}
        }
    }
    let mut out = Vec::new();
    walk(&normalized(a), &normalized(b), String::new(), &mut out);
    out
}

#[cfg(test)]
mod tests;
