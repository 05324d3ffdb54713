//! Python bindings for the monomial-ideal workbench: the `MonomialIdeal`
//! type with its lattice operations, plus the chain verifiers and the
//! cohomology-table calculus. Large reports come back as JSON strings;
//! scalars and generator lists convert to native Python values.

use blowup_core::adjoint as core_adjoint;
use blowup_core::bs;
use blowup_core::hilbert;
use blowup_core::newton;
use blowup_core::verifiers;
use blowup_core::{ExponentVector, MonomialIdeal};
use num::bigint::BigInt;
use num::rational::BigRational;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;
use std::str::FromStr;

fn core_err(e: blowup_core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn vector(coords: Vec<BigInt>) -> PyResult<ExponentVector> {
    ExponentVector::new(coords).map_err(core_err)
}

/// Monomial ideal in a fixed number of variables, held as the antichain of
/// its minimal generators.
#[pyclass(frozen, eq, skip_from_py_object, name = "MonomialIdeal", module = "blowup_py")]
#[derive(PartialEq, Eq, Clone)]
struct PyMonomialIdeal {
    inner: MonomialIdeal,
}

#[pymethods]
impl PyMonomialIdeal {
    /// MonomialIdeal(dim, generators) minimalizes the generators on entry.
    #[new]
    fn new(dim: usize, generators: Vec<Vec<BigInt>>) -> PyResult<Self> {
        let gens = generators
            .into_iter()
            .map(vector)
            .collect::<PyResult<Vec<_>>>()?;
        Ok(Self {
            inner: MonomialIdeal::minimalize(dim, gens).map_err(core_err)?,
        })
    }

    /// Parses `{"dim": 3, "generators": [[2,0,0], ...]}`.
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(Self {
            inner: serde_json::from_str(text)
                .map_err(|e| PyValueError::new_err(e.to_string()))?,
        })
    }

    #[staticmethod]
    fn maximal(dim: usize) -> Self {
        Self {
            inner: MonomialIdeal::maximal(dim),
        }
    }

    #[staticmethod]
    fn unit(dim: usize) -> Self {
        Self {
            inner: MonomialIdeal::unit(dim),
        }
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string(&self.inner).map_err(|e| PyValueError::new_err(e.to_string()))
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    fn generators(&self) -> Vec<Vec<BigInt>> {
        self.inner
            .generators()
            .iter()
            .map(|g| g.coords().to_vec())
            .collect()
    }

    fn is_m_primary(&self) -> bool {
        self.inner.is_m_primary()
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    fn is_unit(&self) -> bool {
        self.inner.is_unit()
    }

    /// Membership of the monomial with this exponent vector.
    fn contains(&self, exponents: Vec<BigInt>) -> PyResult<bool> {
        let v = vector(exponents)?;
        if v.dim() != self.inner.dim() {
            return Err(PyValueError::new_err("dimension mismatch"));
        }
        Ok(self.inner.contains(&v))
    }

    fn contains_ideal(&self, other: &Self) -> PyResult<bool> {
        if other.inner.dim() != self.inner.dim() {
            return Err(PyValueError::new_err("dimension mismatch"));
        }
        Ok(self.inner.contains_ideal(&other.inner))
    }

    fn multiply(&self, other: &Self) -> PyResult<Self> {
        if other.inner.dim() != self.inner.dim() {
            return Err(PyValueError::new_err("dimension mismatch"));
        }
        Ok(Self {
            inner: self.inner.multiply(&other.inner),
        })
    }

    fn pow(&self, n: u64) -> Self {
        Self {
            inner: self.inner.pow(n),
        }
    }

    fn colength(&self) -> PyResult<BigInt> {
        self.inner.colength().map_err(core_err)
    }

    fn quotient_length(&self, smaller: &Self) -> PyResult<BigInt> {
        if smaller.inner.dim() != self.inner.dim() {
            return Err(PyValueError::new_err("dimension mismatch"));
        }
        self.inner.quotient_length(&smaller.inner).map_err(core_err)
    }

    /// Minimal generators of the integral closure of the n-th power.
    fn integral_closure(&self, n: u64) -> PyResult<Self> {
        Ok(Self {
            inner: newton::integral_closure(&self.inner, n).map_err(core_err)?,
        })
    }

    /// Adjoint (multiplier) ideal of the n-th power.
    fn adjoint(&self, n: u64) -> PyResult<Self> {
        Ok(Self {
            inner: core_adjoint::adjoint(&self.inner, n).map_err(core_err)?,
        })
    }

    /// Facets of the Newton polyhedron as `(normal, rhs)` pairs.
    fn newton_facets(&self) -> PyResult<Vec<(Vec<BigInt>, BigInt)>> {
        let np = newton::NewtonPolyhedron::of(&self.inner).map_err(core_err)?;
        Ok(np
            .facets()
            .iter()
            .map(|f| (f.normal().to_vec(), f.rhs().clone()))
            .collect())
    }

    /// Samples and fits the normal Hilbert function; returns a dict with
    /// `samples`, `postulation` and `ebar`.
    fn normal_hilbert<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let profile = hilbert::normal_hilbert_profile(&self.inner).map_err(core_err)?;
        let out = PyDict::new(py);
        out.set_item(
            "samples",
            profile
                .samples
                .iter()
                .map(|(n, l)| (*n, l.clone()))
                .collect::<Vec<_>>(),
        )?;
        out.set_item("postulation", profile.postulation)?;
        out.set_item("ebar", profile.ebar.to_vec())?;
        Ok(out)
    }

    /// `3! * vol` of the staircase region under the Newton polyhedron.
    fn multiplicity_volume(&self) -> PyResult<BigInt> {
        hilbert::multiplicity_volume(&self.inner).map_err(core_err)
    }

    fn __repr__(&self) -> String {
        format!("MonomialIdeal(dim={}, generators={})", self.inner.dim(), self.inner)
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }
}

/// True iff `q` is a reduction of `ideal` (equal Newton polyhedra).
#[pyfunction]
fn is_reduction(q: &PyMonomialIdeal, ideal: &PyMonomialIdeal) -> PyResult<bool> {
    newton::is_reduction(&q.inner, &ideal.inner).map_err(core_err)
}

/// Chain condition on integral closures; returns the report as JSON.
#[pyfunction]
#[pyo3(signature = (ideal, q, n_max = 6))]
fn verify_itoh_chain(
    ideal: &PyMonomialIdeal,
    q: &PyMonomialIdeal,
    n_max: u64,
) -> PyResult<String> {
    let report = verifiers::verify_itoh_chain(&ideal.inner, &q.inner, n_max).map_err(core_err)?;
    Ok(report.to_json().to_string())
}

/// Adjoint chain check; returns the report as JSON.
#[pyfunction]
#[pyo3(signature = (ideal, n_max = 6))]
fn verify_lipman_chain(ideal: &PyMonomialIdeal, n_max: u64) -> PyResult<String> {
    let report = core_adjoint::verify_lipman_chain(&ideal.inner, n_max).map_err(core_err)?;
    Ok(report.to_json().to_string())
}

/// Kernel-length identity report as JSON.
#[pyfunction]
fn e2_identity(ideal: &PyMonomialIdeal, q: &PyMonomialIdeal) -> PyResult<String> {
    let report = verifiers::e2_identity(&ideal.inner, &q.inner).map_err(core_err)?;
    Ok(report.to_json().to_string())
}

/// Dichotomy verdict as JSON.
#[pyfunction]
#[pyo3(signature = (ideal, q, n_max = 6))]
fn dichotomy_report(
    ideal: &PyMonomialIdeal,
    q: &PyMonomialIdeal,
    n_max: u64,
) -> PyResult<String> {
    let report = verifiers::dichotomy_report(&ideal.inner, &q.inner, n_max).map_err(core_err)?;
    Ok(report.to_json().to_string())
}

/// Supernatural cohomology table on a window, as JSON.
#[pyfunction]
fn supernatural_table(zeros: Vec<i64>, lo: i64, hi: i64) -> PyResult<String> {
    let z = bs::ZeroSequence::new(zeros).map_err(core_err)?;
    let table = bs::supernatural_table(&z, lo, hi).map_err(core_err)?;
    Ok(table.to_json().to_string())
}

/// Decomposes an h^1 row (strings like "7/6" or "1") into supernatural
/// coefficients; returns a dict with `coeffs`, `in_cone` and `ker_psi2`.
#[pyfunction]
fn decompose_h1<'py>(py: Python<'py>, h1: Vec<String>) -> PyResult<Bound<'py, PyDict>> {
    let row = h1
        .iter()
        .map(|s| {
            BigRational::from_str(s.trim())
                .map_err(|e| PyValueError::new_err(format!("cannot parse {s:?}: {e}")))
        })
        .collect::<PyResult<Vec<_>>>()?;
    let solved = bs::decompose_h1(&row).map_err(core_err)?;
    let out = PyDict::new(py);
    out.set_item(
        "coeffs",
        solved.coeffs.iter().map(|a| a.to_string()).collect::<Vec<_>>(),
    )?;
    out.set_item("in_cone", solved.in_cone)?;
    out.set_item("ker_psi2", solved.kernel_dimension().to_string())?;
    Ok(out)
}

/// Exhaustive kernel-dichotomy scan; returns the report as JSON.
#[pyfunction]
fn dichotomy_scan(h1_max: u64, r_max: usize) -> PyResult<String> {
    if r_max == 0 {
        return Err(PyValueError::new_err("r_max must be at least 1"));
    }
    Ok(bs::dichotomy_scan(h1_max, r_max).to_json().to_string())
}

#[pymodule]
fn blowup_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyMonomialIdeal>()?;
    m.add_function(wrap_pyfunction!(is_reduction, m)?)?;
    m.add_function(wrap_pyfunction!(verify_itoh_chain, m)?)?;
    m.add_function(wrap_pyfunction!(verify_lipman_chain, m)?)?;
    m.add_function(wrap_pyfunction!(e2_identity, m)?)?;
    m.add_function(wrap_pyfunction!(dichotomy_report, m)?)?;
    m.add_function(wrap_pyfunction!(supernatural_table, m)?)?;
    m.add_function(wrap_pyfunction!(decompose_h1, m)?)?;
    m.add_function(wrap_pyfunction!(dichotomy_scan, m)?)?;
    Ok(())
}
