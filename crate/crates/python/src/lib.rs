//! Python module `drinfeld`.
//!
//! Exact values cross the boundary as strings in the `Q(ζ_N)` notation used
//! by the Rust side (`"1 - 2*z^3"` with `z = exp(2πi/N)`); integer vectors and
//! reports become lists and dicts.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};
use serde_json::Value;

use drinfeld_core::brauer::{brauer_character_sym, regular_character, BrauerBasis};
use drinfeld_core::classfn::{gelfand_graev, steinberg, trivial, ClassFn};
use drinfeld_core::curve::{canonical_brauer, count_points, genus_report, smoothness_check};
use drinfeld_core::cyclotomic::CycNum;
use drinfeld_core::deligne_lusztig::{dl_character, lefschetz_c};
use drinfeld_core::fields::FieldTower;
use drinfeld_core::verify::{self, check_supported, parse_selection, VerifyOptions};
use drinfeld_core::Sl2Context;

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn strings(values: &[CycNum]) -> Vec<String> {
    values.iter().map(ToString::to_string).collect()
}

fn to_python<'py>(py: Python<'py>, value: &Value) -> PyResult<Bound<'py, PyAny>> {
    Ok(match value {
        Value::Null => py.None().into_bound(py),
        Value::Bool(b) => b.into_pyobject(py)?.to_owned().into_any(),
        Value::Number(n) => match (n.as_i64(), n.as_u64()) {
            (Some(i), _) => i.into_pyobject(py)?.into_any(),
            (None, Some(u)) => u.into_pyobject(py)?.into_any(),
            _ => n.as_f64().unwrap_or(f64::NAN).into_pyobject(py)?.into_any(),
        },
        Value::String(s) => s.into_pyobject(py)?.into_any(),
        Value::Array(items) => {
            let list = PyList::empty(py);
            for item in items {
                list.append(to_python(py, item)?)?;
            }
            list.into_any()
        }
        Value::Object(map) => {
            let dict = PyDict::new(py);
            for (k, v) in map {
                dict.set_item(k, to_python(py, v)?)?;
            }
            dict.into_any()
        }
    })
}

/// Tables for `SL₂(F_q)`: classes, characters and the Brauer basis.
#[pyclass(frozen, name = "Sl2")]
struct PySl2 {
    ctx: Sl2Context,
    basis: BrauerBasis,
}

impl PySl2 {
    fn reduce(&self, chi: &ClassFn) -> PyResult<Vec<i64>> {
        self.basis.decomposition_map(&self.ctx, chi).map(|v| v.0).map_err(value_error)
    }
}

#[pymethods]
impl PySl2 {
    #[new]
    #[pyo3(signature = (q, allow_large = false))]
    fn new(q: u32, allow_large: bool) -> PyResult<Self> {
        check_supported(q, allow_large).map_err(value_error)?;
        let ctx = Sl2Context::new(q).map_err(value_error)?;
        let basis = BrauerBasis::new(&ctx).map_err(value_error)?;
        Ok(PySl2 { ctx, basis })
    }

    #[getter]
    fn q(&self) -> u32 {
        self.ctx.q()
    }

    #[getter]
    fn p(&self) -> u32 {
        self.ctx.p()
    }

    #[getter]
    fn group_order(&self) -> usize {
        self.ctx.group_order()
    }

    /// Conductor `N` of the cyclotomic field holding all values.
    #[getter]
    fn conductor(&self) -> u32 {
        self.ctx.cyclo.conductor()
    }

    /// One dict per conjugacy class, in class order.
    fn classes<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyList>> {
        let list = PyList::empty(py);
        for c in self.ctx.classes.iter() {
            let m = self.ctx.group.element(c.representative);
            let d = PyDict::new(py);
            d.set_item("representative", [[m.a.0, m.b.0], [m.c.0, m.d.0]])?;
            d.set_item("size", c.size)?;
            d.set_item("order", c.order)?;
            d.set_item("p_regular", c.p_regular)?;
            d.set_item("kind", serde_json::to_value(c.kind).map_err(value_error)?.as_str())?;
            list.append(d)?;
        }
        Ok(list)
    }

    fn p_regular_classes(&self) -> Vec<usize> {
        self.ctx.classes.p_regular().to_vec()
    }

    fn dl_character(&self, j: u32) -> PyResult<Vec<String>> {
        let r = dl_character(&self.ctx, j).map_err(value_error)?;
        Ok(strings(r.values.values()))
    }

    fn gelfand_graev(&self, i: u32) -> PyResult<Vec<String>> {
        Ok(strings(gelfand_graev(&self.ctx, i).map_err(value_error)?.values()))
    }

    /// Brauer character of `Sym^i` on the p-regular classes.
    fn brauer_character(&self, i: u32) -> PyResult<Vec<String>> {
        Ok(strings(&brauer_character_sym(&self.ctx, i).map_err(value_error)?.values))
    }

    fn canonical_brauer(&self) -> Vec<String> {
        strings(&canonical_brauer(&self.ctx).values)
    }

    fn lefschetz_c(&self, class_index: usize) -> PyResult<i64> {
        if class_index >= self.ctx.classes.len() {
            return Err(value_error(format!("no class {class_index}")));
        }
        let rep = self.ctx.classes.get(class_index).representative;
        lefschetz_c(&self.ctx, rep).map_err(value_error)
    }

    /// Decomposition of a named ordinary character in the basis `[V_0..V_{q-1}]`.
    ///
    /// Names: `trivial`, `steinberg`, `regular`, `gamma1`, `gamma2`, `dl<j>`.
    fn decompose(&self, name: &str) -> PyResult<Vec<i64>> {
        let chi = match name {
            "trivial" => trivial(&self.ctx),
            "steinberg" => steinberg(&self.ctx),
            "regular" => regular_character(&self.ctx),
            "gamma1" => gelfand_graev(&self.ctx, 1).map_err(value_error)?,
            "gamma2" => gelfand_graev(&self.ctx, 2).map_err(value_error)?,
            other => {
                let j = other
                    .strip_prefix("dl")
                    .and_then(|j| j.parse().ok())
                    .ok_or_else(|| value_error(format!("unknown character {other:?}")))?;
                dl_character(&self.ctx, j).map_err(value_error)?.values
            }
        };
        self.reduce(&chi)
    }

    /// The canonical representation in `G₀`, solved in the Brauer basis.
    fn canonical_decomposition(&self) -> PyResult<Vec<i64>> {
        self.basis.decompose(&canonical_brauer(&self.ctx)).map(|v| v.0).map_err(value_error)
    }

    fn __repr__(&self) -> String {
        format!("Sl2(q={}, classes={})", self.ctx.q(), self.ctx.classes.len())
    }
}

/// Runs the verifier and returns the report as a dict.
#[pyfunction]
#[pyo3(signature = (q, checks = None, cross_check = false, allow_large = false))]
fn verify_report<'py>(
    py: Python<'py>,
    q: u32,
    checks: Option<Vec<String>>,
    cross_check: bool,
    allow_large: bool,
) -> PyResult<Bound<'py, PyAny>> {
    let selection = checks.map(|c| parse_selection(&c.join(","))).transpose().map_err(value_error)?;
    let options = VerifyOptions { allow_large, cross_check, stable: true };
    let report = py
        .detach(|| verify::run_all(q, selection.as_ref(), options))
        .map_err(value_error)?;
    to_python(py, &serde_json::to_value(&report).map_err(value_error)?)
}

#[pyfunction]
fn check_names() -> Vec<&'static str> {
    verify::CheckName::ALL.iter().map(|c| c.as_str()).collect()
}

/// Smoothness, both genus routes and the point counts of the curve.
#[pyfunction]
fn curve_summary<'py>(py: Python<'py>, q: u32) -> PyResult<Bound<'py, PyDict>> {
    let tower = FieldTower::new(q).map_err(value_error)?;
    let report = genus_report(&tower).map_err(value_error)?;
    let d = PyDict::new(py);
    d.set_item("smooth", smoothness_check(q).map_err(value_error)?)?;
    d.set_item("genus_degree_formula", report.plane)?;
    d.set_item("genus_weil", report.weil)?;
    d.set_item("points_fq", count_points(&tower, 1).map_err(value_error)?)?;
    d.set_item("points_fq2", report.points_fq2)?;
    Ok(d)
}

#[pymodule]
pub fn drinfeld(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PySl2>()?;
    m.add_function(wrap_pyfunction!(verify_report, m)?)?;
    m.add_function(wrap_pyfunction!(check_names, m)?)?;
    m.add_function(wrap_pyfunction!(curve_summary, m)?)?;
    m.add("__version__", verify::VERSION)?;
    Ok(())
}
