//! Python module `isogeny_alpha_py`.
//!
//! Rationals cross the boundary as strings ("3", "-7/2"); structured results
//! come back as plain dicts.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyList, PyString};
use serde::Serialize;

use isogeny_alpha::exactnum::{Rational, RationalPolynomial};
use isogeny_alpha::formalgroup::{default_order, formal_height as height, isogeny_series as phi_series};
use isogeny_alpha::isogeny::{alpha_exponent, dual_isogeny, find_kernels, velu, IsogenyData, KernelPolynomial};
use isogeny_alpha::localdata::{minimal_model, tate_algorithm};
use isogeny_alpha::verify::{self, builtin_corpus, load_corpus, CorpusEntry, SeriesOrders, VerifyOptions};
use isogeny_alpha::weierstrass::{Transformation, WeierstrassModel};

fn err(e: isogeny_alpha::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_py<T: Serialize>(py: Python<'_>, value: &T) -> PyResult<Py<PyAny>> {
    let s = serde_json::to_string(value).map_err(|e| PyValueError::new_err(e.to_string()))?;
    Ok(py.import("json")?.call_method1("loads", (s,))?.unbind())
}

/// A string, or a sequence whose items are rendered with `str()`.
fn joined(obj: &Bound<'_, PyAny>) -> PyResult<String> {
    if let Ok(s) = obj.cast::<PyString>() {
        return Ok(s.to_string());
    }
    let mut parts = Vec::new();
    for item in obj.try_iter()? {
        parts.push(item?.str()?.to_string());
    }
    Ok(parts.join(","))
}

fn rational(obj: &Bound<'_, PyAny>) -> PyResult<Rational> {
    obj.str()?.to_string().parse().map_err(err)
}

fn kernel_arg(kernel: Option<&Bound<'_, PyAny>>) -> PyResult<Option<KernelPolynomial>> {
    kernel
        .map(|k| {
            let h: RationalPolynomial = joined(k)?.parse().map_err(err)?;
            KernelPolynomial::new(h).map_err(err)
        })
        .transpose()
}

fn coefficient_strings(m: &WeierstrassModel) -> Vec<String> {
    m.coefficients().iter().map(|c| c.to_string()).collect()
}

/// A Weierstrass equation y² + a1xy + a3y = x³ + a2x² + a4x + a6 over Q.
#[pyclass(name = "Curve", module = "isogeny_alpha_py", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct Curve {
    model: WeierstrassModel,
}

impl Curve {
    fn pick_isogeny(&self, p: u64, kernel: Option<KernelPolynomial>) -> PyResult<IsogenyData> {
        let k = match kernel {
            Some(k) => k,
            None => {
                let mut ks = find_kernels(&self.model, p).map_err(err)?;
                if ks.len() != 1 {
                    return Err(PyValueError::new_err(format!("{} rational {p}-isogenies; pass kernel=", ks.len())));
                }
                ks.remove(0)
            }
        };
        velu(&self.model, &k).map_err(err)
    }
}

#[pymethods]
impl Curve {
    /// `coefficients` is [a1, a2, a3, a4, a6] or a string such as "[0,0,1,0,0]".
    #[new]
    fn new(coefficients: &Bound<'_, PyAny>) -> PyResult<Self> {
        let model: WeierstrassModel = joined(coefficients)?.parse().map_err(err)?;
        if model.is_singular() {
            return Err(PyValueError::new_err(format!("{model} is singular")));
        }
        Ok(Curve { model })
    }

    #[getter]
    fn coefficients(&self) -> Vec<String> {
        coefficient_strings(&self.model)
    }

    fn discriminant(&self) -> String {
        self.model.discriminant().to_string()
    }

    fn j_invariant(&self) -> PyResult<String> {
        Ok(self.model.j_invariant().map_err(err)?.to_string())
    }

    fn discriminant_valuation(&self, p: u64) -> PyResult<i64> {
        self.model.discriminant_valuation(p).map_err(err)
    }

    /// v_min, Kodaira symbol, component count, conductor exponent, reduction type.
    fn local_data(&self, py: Python<'_>, p: u64) -> PyResult<Py<PyAny>> {
        to_py(py, &tate_algorithm(&self.model, p).map_err(err)?.record())
    }

    fn minimal_model(&self, p: u64) -> PyResult<Curve> {
        Ok(Curve { model: minimal_model(&self.model, p).map_err(err)?.0 })
    }

    /// x = u²x' + r, y = u³y' + su²x' + t.
    fn transform(
        &self,
        u: &Bound<'_, PyAny>,
        r: &Bound<'_, PyAny>,
        s: &Bound<'_, PyAny>,
        t: &Bound<'_, PyAny>,
    ) -> PyResult<Curve> {
        let tr = Transformation::new(rational(u)?, rational(r)?, rational(s)?, rational(t)?).map_err(err)?;
        Ok(Curve { model: self.model.transform(&tr).map_err(err)? })
    }

    fn is_isomorphic_to(&self, other: &Curve) -> bool {
        self.model.is_isomorphic_to(&other.model)
    }

    /// Kernel polynomials of the rational p-isogenies, constant term first.
    fn kernels(&self, p: u64) -> PyResult<Vec<Vec<String>>> {
        let ks = find_kernels(&self.model, p).map_err(err)?;
        Ok(ks.iter().map(|k| k.polynomial().coeffs().iter().map(|c| c.to_string()).collect()).collect())
    }

    /// Codomain and alpha exponents of a p-isogeny and its dual.
    #[pyo3(signature = (p, kernel=None))]
    fn isogeny(&self, py: Python<'_>, p: u64, kernel: Option<&Bound<'_, PyAny>>) -> PyResult<Py<PyAny>> {
        let iso = self.pick_isogeny(p, kernel_arg(kernel)?)?;
        let dual = dual_isogeny(&iso).map_err(err)?;
        let out = serde_json::json!({
            "kernel": iso.kernel.polynomial().coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            "codomain": coefficient_strings(&iso.codomain),
            "alpha_exponent": alpha_exponent(&iso).map_err(err)?,
            "dual_alpha_exponent": alpha_exponent(&dual.isogeny).map_err(err)?,
        });
        to_py(py, &out)
    }

    /// Coefficients of z, z², ... of the formal isogeny between minimal models.
    #[pyo3(signature = (p, kernel=None, precision=None))]
    fn isogeny_series(
        &self,
        p: u64,
        kernel: Option<&Bound<'_, PyAny>>,
        precision: Option<i64>,
    ) -> PyResult<Vec<String>> {
        let iso = self.pick_isogeny(p, kernel_arg(kernel)?)?;
        let n = precision.unwrap_or_else(|| default_order(p));
        let phi = phi_series(&iso, n).map_err(err)?;
        (1..phi.precision())
            .map(|k| phi.series.coeff(k).map(|c| c.to_string()).map_err(err))
            .collect()
    }

    /// Height of the formal group of the reduction; needs good reduction at p.
    #[pyo3(signature = (p, precision=None))]
    fn formal_height(&self, p: u64, precision: Option<i64>) -> PyResult<u32> {
        height(&self.model, p, precision.unwrap_or_else(|| default_order(p))).map_err(err)
    }

    fn __repr__(&self) -> String {
        format!("Curve({:?})", coefficient_strings(&self.model))
    }

    fn __str__(&self) -> String {
        self.model.to_string()
    }
}

/// Full report for one curve: local data on both sides, alpha, every check.
#[pyfunction]
#[pyo3(signature = (curve, p, f=1, kernel=None))]
fn analyze(py: Python<'_>, curve: &Curve, p: u64, f: u32, kernel: Option<&Bound<'_, PyAny>>) -> PyResult<Py<PyAny>> {
    let mut entry = CorpusEntry::new("python", curve.model.clone(), p);
    entry.f = f;
    entry.kernel = kernel_arg(kernel)?;
    let report = py.detach(|| verify::analyze(&entry, &SeriesOrders::default()));
    to_py(py, &report)
}

/// Runs a line-delimited JSON corpus, or the built-in one.
#[pyfunction]
#[pyo3(signature = (corpus=None))]
fn run_verification(py: Python<'_>, corpus: Option<std::path::PathBuf>) -> PyResult<Py<PyAny>> {
    let entries = match corpus {
        Some(path) => load_corpus(path).map_err(err)?,
        None => builtin_corpus(),
    };
    let report = py.detach(|| verify::run_verification(&entries, &VerifyOptions::default()));
    to_py(py, &report)
}

#[pyfunction]
fn builtin_labels(py: Python<'_>) -> PyResult<Bound<'_, PyList>> {
    PyList::new(py, builtin_corpus().into_iter().map(|e| e.label))
}

#[pymodule]
fn isogeny_alpha_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Curve>()?;
    m.add_function(wrap_pyfunction!(analyze, m)?)?;
    m.add_function(wrap_pyfunction!(run_verification, m)?)?;
    m.add_function(wrap_pyfunction!(builtin_labels, m)?)?;
    m.add("SCOPE", verify::SCOPE_NOTE)?;
    Ok(())
}
