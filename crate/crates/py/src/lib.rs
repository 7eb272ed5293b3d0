//! Python bindings. Structured results come back as plain dicts and lists.

use std::sync::Arc;

use pyo3::create_exception;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use serde::Serialize;

use qfbim_core::bimodule::{build_bimodule, BimoduleDescriptor, FiniteBimodule};
use qfbim_core::geo::{
    build_geo_ring, geo_center, geo_translation_verdict, socle_formula_check, translation_r_ring, GeoRing, GeoSpec,
};
use qfbim_core::harness::corpus::{geo_spec, named_bimodule};
use qfbim_core::harness::{diff_reports, verify_th4, RunOptions, Scenario};
use qfbim_core::qf::{agreed_verdict, is_injective_baer, run_route, Route};
use qfbim_core::ring::{build, ring_profile, FiniteRing, RingDescriptor};
use qfbim_core::translations::{center_intersection_check, radical_compatibility_check};
use qfbim_core::{Caps, Error, Side};

create_exception!(qfbim, QfbimError, PyRuntimeError);
create_exception!(qfbim, CapExceeded, QfbimError);

fn err(e: Error) -> PyErr {
    match e {
        e if e.is_cap() => CapExceeded::new_err(e.to_string()),
        Error::InvalidInput(_) | Error::Json(_) => PyValueError::new_err(e.to_string()),
        e => QfbimError::new_err(e.to_string()),
    }
}

fn to_py<'py>(py: Python<'py>, value: &impl Serialize) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| err(e.into()))?;
    py.import("json")?.call_method1("loads", (text,))
}

fn side(s: &str) -> PyResult<Side> {
    match s {
        "left" => Ok(Side::Left),
        "right" => Ok(Side::Right),
        _ => Err(PyValueError::new_err(format!("side must be 'left' or 'right', not '{s}'"))),
    }
}

fn caps(cap: Option<usize>) -> Caps {
    let mut c = Caps::default();
    if let Some(n) = cap {
        c.lattice = n;
        c.closure = n;
    }
    c
}

/// A finite ring with elements encoded as integers `0..order`.
#[pyclass(frozen, name = "Ring")]
struct PyRing {
    ring: Arc<FiniteRing>,
}

#[pymethods]
impl PyRing {
    /// `Z/m`.
    #[staticmethod]
    fn residue(m: u64) -> PyResult<Self> {
        Self::from_json(&RingDescriptor::residue(m).to_json())
    }

    /// Galois ring `GR(p^d, r)`.
    #[staticmethod]
    fn galois(p: u64, d: u32, r: u32) -> PyResult<Self> {
        Self::from_json(&RingDescriptor::galois(p, d, r).to_json())
    }

    #[staticmethod]
    fn from_json(descriptor: &str) -> PyResult<Self> {
        let desc = RingDescriptor::from_json(descriptor).map_err(err)?;
        Ok(PyRing { ring: build(&desc, &Caps::default()).map_err(err)? })
    }

    #[getter]
    fn order(&self) -> usize {
        self.ring.order()
    }

    #[getter]
    fn label(&self) -> String {
        self.ring.descriptor().label()
    }

    fn is_commutative(&self) -> bool {
        self.ring.is_commutative()
    }

    fn add(&self, a: u32, b: u32) -> PyResult<u32> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.ring.add(a, b))
    }

    fn mul(&self, a: u32, b: u32) -> PyResult<u32> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.ring.mul(a, b))
    }

    /// Order, radical, center and unit counts.
    fn info<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &ring_profile(&self.ring).map_err(err)?)
    }

    fn __repr__(&self) -> String {
        format!("Ring({}, order {})", self.label(), self.order())
    }
}

impl PyRing {
    fn check(&self, a: u32) -> PyResult<()> {
        if (a as usize) < self.ring.order() {
            Ok(())
        } else {
            Err(PyValueError::new_err(format!("{a} is not an element of a ring of order {}", self.ring.order())))
        }
    }
}

/// A finite bimodule `_A M _B`.
#[pyclass(frozen, name = "Bimodule")]
struct PyBimodule {
    bm: FiniteBimodule,
}

#[pymethods]
impl PyBimodule {
    /// One of the built-in bimodules, for instance `"column_z4_2_1"` or
    /// `"regular_geo729"`.
    #[staticmethod]
    fn named(name: &str) -> PyResult<Self> {
        Ok(PyBimodule { bm: named_bimodule(name, &Caps::default()).map_err(err)? })
    }

    #[staticmethod]
    fn from_json(descriptor: &str) -> PyResult<Self> {
        let desc: BimoduleDescriptor = serde_json::from_str(descriptor).map_err(|e| err(e.into()))?;
        Ok(PyBimodule { bm: build_bimodule(&desc, &Caps::default()).map_err(err)? })
    }

    #[getter]
    fn order(&self) -> usize {
        self.bm.order()
    }

    #[getter]
    fn label(&self) -> String {
        self.bm.descriptor().label()
    }

    /// QF verdict along the given routes (all by default); `None` when no
    /// route decides.
    #[pyo3(signature = (routes = None, cap = None))]
    fn is_qf(&self, routes: Option<Vec<String>>, cap: Option<usize>) -> PyResult<Option<bool>> {
        let routes: Vec<Route> = match routes {
            None => Route::ALL.to_vec(),
            Some(names) => names
                .iter()
                .map(|n| n.parse::<Route>().map_err(|_| PyValueError::new_err(format!("unknown route '{n}'"))))
                .collect::<PyResult<_>>()?,
        };
        let c = caps(cap);
        let verdicts = routes.iter().map(|&r| run_route(&self.bm, r, &c)).collect::<Result<Vec<_>, _>>().map_err(err)?;
        Ok(agreed_verdict(&verdicts))
    }

    /// Every route's verdict with notes and witnesses.
    #[pyo3(signature = (cap = None))]
    fn qf_report<'py>(&self, py: Python<'py>, cap: Option<usize>) -> PyResult<Bound<'py, PyAny>> {
        let c = caps(cap);
        let verdicts = Route::ALL.iter().map(|&r| run_route(&self.bm, r, &c)).collect::<Result<Vec<_>, _>>().map_err(err)?;
        to_py(py, &verdicts)
    }

    /// Sorted carrier elements of the socle.
    #[pyo3(signature = (side = "left"))]
    fn socle(&self, side: &str) -> PyResult<Vec<u32>> {
        Ok(self.bm.socle(self::side(side)?).map_err(err)?.members)
    }

    /// Baer's criterion for the `side` module; includes a non-extending map
    /// when it fails.
    #[pyo3(signature = (side = "left"))]
    fn baer<'py>(&self, py: Python<'py>, side: &str) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &is_injective_baer(&self.bm, self::side(side)?, &Caps::default()).map_err(err)?)
    }

    fn center_intersection<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &center_intersection_check(&self.bm, &Caps::default()).map_err(err)?)
    }

    fn radical_compatibility<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &radical_compatibility_check(&self.bm, &Caps::default()).map_err(err)?)
    }

    fn verify_th4<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &verify_th4(&self.bm, &Caps::default()).map_err(err)?)
    }

    fn __repr__(&self) -> String {
        format!("Bimodule({}, order {})", self.label(), self.order())
    }
}

/// A GEO ring `R[x, sigma]` modulo an Eisenstein polynomial and a radical
/// power.
#[pyclass(frozen, name = "GeoRing")]
struct PyGeoRing {
    geo: GeoRing,
}

#[pymethods]
impl PyGeoRing {
    /// One of `z4`, `ge8`, `ge16`, `skew16`, `geo729`.
    #[staticmethod]
    fn named(name: &str) -> PyResult<Self> {
        let spec = geo_spec(name).ok_or_else(|| PyValueError::new_err(format!("unknown GEO ring '{name}'")))?;
        Self::build(&spec)
    }

    #[new]
    #[pyo3(signature = (p, d, r, sigma_power, c_coeffs, rho))]
    fn new(p: u64, d: u32, r: u32, sigma_power: u32, c_coeffs: Vec<u32>, rho: u32) -> PyResult<Self> {
        Self::build(&GeoSpec::new(p, d, r, sigma_power, c_coeffs, rho))
    }

    #[getter]
    fn order(&self) -> usize {
        self.geo.ring.order()
    }

    #[getter]
    fn n(&self) -> u32 {
        self.geo.n
    }

    #[getter]
    fn q(&self) -> u64 {
        self.geo.q
    }

    #[getter]
    fn label(&self) -> String {
        self.geo.spec.label()
    }

    fn is_commutative(&self) -> bool {
        self.geo.is_commutative()
    }

    fn ring(&self) -> PyRing {
        PyRing { ring: self.geo.ring.clone() }
    }

    /// Orders of the radical powers `p^0 = S, ..., p^n = 0`.
    fn radical_power_orders(&self) -> Vec<usize> {
        self.geo.radical_powers().iter().map(|p| p.len()).collect()
    }

    fn socle_report<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &socle_formula_check(&self.geo).map_err(err)?)
    }

    fn center_order(&self) -> PyResult<usize> {
        Ok(geo_center(&self.geo).map_err(err)?.center.len())
    }

    fn decomposition<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &translation_r_ring(&self.geo, &Caps::default()).map_err(err)?.1)
    }

    /// QF of the regular and canonical bimodules and the shape of `C/J(C)`.
    fn verdict<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &geo_translation_verdict(&self.geo, &Caps::default()).map_err(err)?)
    }

    fn __repr__(&self) -> String {
        format!("GeoRing({}, order {})", self.label(), self.order())
    }
}

impl PyGeoRing {
    fn build(spec: &GeoSpec) -> PyResult<Self> {
        Ok(PyGeoRing { geo: build_geo_ring(spec, &Caps::default()).map_err(err)? })
    }
}

/// Run a scenario given as JSON text and return the report.
#[pyfunction]
#[pyo3(signature = (scenario, cache_dir = None))]
fn run_scenario<'py>(py: Python<'py>, scenario: &str, cache_dir: Option<&str>) -> PyResult<Bound<'py, PyAny>> {
    let s = Scenario::from_json(scenario).map_err(err)?;
    let cache = cache_dir.map(qfbim_core::harness::Cache::open).transpose().map_err(err)?;
    let report = qfbim_core::harness::run_scenario(&s, &RunOptions { caps: Caps::default(), cache }).map_err(err)?;
    to_py(py, &report)
}

/// Paths at which two JSON reports differ, ignoring timings.
#[pyfunction]
fn diff(a: &str, b: &str) -> PyResult<Vec<String>> {
    let parse = |t: &str| serde_json::from_str::<serde_json::Value>(t).map_err(|e| err(e.into()));
    Ok(diff_reports(&parse(a)?, &parse(b)?))
}

#[pymodule]
fn qfbim(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyRing>()?;
    m.add_class::<PyBimodule>()?;
    m.add_class::<PyGeoRing>()?;
    m.add_function(wrap_pyfunction!(run_scenario, m)?)?;
    m.add_function(wrap_pyfunction!(diff, m)?)?;
    m.add("QfbimError", m.py().get_type::<QfbimError>())?;
    m.add("CapExceeded", m.py().get_type::<CapExceeded>())?;
    Ok(())
}
