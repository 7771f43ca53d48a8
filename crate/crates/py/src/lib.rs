//! Python bindings. Structured values cross the boundary as plain Python
//! objects in the same JSON shapes the CLI reads and writes.

use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use serde::Serialize;
use serde_json::Value;

use hodgekit::json::{
    construction_doc, matrix_doc, parse_construction, parse_mhs, parse_pencil, parse_rows,
    parse_scalar, parse_tpoint, parse_triple, parse_vector, subspace_doc, LocusDoc, MhsDoc,
    TPointDoc, TripleDoc,
};
use hodgekit::mhs::functors;
use hodgekit::{loci, radical, sample, Error, GaussRat, Rat, Subspace};

create_exception!(pyhodgekit, HodgekitError, PyValueError);
create_exception!(pyhodgekit, RegimeError, HodgekitError);
create_exception!(pyhodgekit, ResourceGuardError, HodgekitError);

fn err(e: Error) -> PyErr {
    match e {
        Error::Regime(_) => RegimeError::new_err(e.to_string()),
        Error::ResourceGuard { .. } => ResourceGuardError::new_err(e.to_string()),
        _ => HodgekitError::new_err(e.to_string()),
    }
}

fn to_value(obj: &Bound<'_, PyAny>) -> PyResult<Value> {
    let text: String = obj.py().import("json")?.call_method1("dumps", (obj,))?.extract()?;
    serde_json::from_str(&text).map_err(|e| HodgekitError::new_err(e.to_string()))
}

fn to_py<'py, T: Serialize>(py: Python<'py>, doc: &T) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(doc).map_err(|e| HodgekitError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

fn rows(obj: &Bound<'_, PyAny>, dim: usize) -> PyResult<Subspace<Rat>> {
    let r = parse_rows::<Rat>(&to_value(obj)?, Some(dim), "").map_err(err)?;
    Subspace::span(dim, r).map_err(err)
}

type Blocks = Vec<((i32, i32), Vec<Vec<String>>)>;

fn scalar(obj: &Bound<'_, PyAny>) -> PyResult<GaussRat> {
    parse_scalar(&to_value(obj)?, "").map_err(err)
}

/// A mixed Hodge structure over ℚ with Hodge filtration over ℚ(i).
#[pyclass(name = "MHS", module = "pyhodgekit", frozen, skip_from_py_object)]
#[derive(Clone)]
pub struct PyMhs(hodgekit::Mhs);

#[pymethods]
impl PyMhs {
    /// From `{"dim", "W", "F"}`.
    #[staticmethod]
    fn from_doc(doc: &Bound<'_, PyAny>) -> PyResult<Self> {
        Ok(PyMhs(parse_mhs(&to_value(doc)?, "").map_err(err)?))
    }

    fn to_doc<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &MhsDoc::from(&self.0))
    }

    #[getter]
    fn dim(&self) -> usize {
        self.0.dim()
    }

    fn weights(&self) -> Vec<i32> {
        self.0.weight().jumps()
    }

    fn dual(&self) -> Self {
        PyMhs(functors::dual(&self.0))
    }

    fn tensor(&self, other: &PyMhs) -> Self {
        PyMhs(functors::tensor(&self.0, &other.0))
    }

    fn hom(&self, other: &PyMhs) -> Self {
        PyMhs(functors::hom(&self.0, &other.0))
    }

    fn end(&self) -> Self {
        PyMhs(functors::end(&self.0))
    }

    fn direct_sum(&self, other: &PyMhs) -> Self {
        PyMhs(functors::direct_sum(&self.0, &other.0))
    }

    fn graded(&self) -> Vec<(i32, PyMhs)> {
        self.0.gr_w().into_iter().map(|(n, g)| (n, PyMhs(g))).collect()
    }

    fn sub(&self, rows_: &Bound<'_, PyAny>) -> PyResult<Self> {
        Ok(PyMhs(self.0.sub(&rows(rows_, self.0.dim())?).map_err(err)?))
    }

    fn quotient(&self, rows_: &Bound<'_, PyAny>) -> PyResult<Self> {
        Ok(PyMhs(self.0.quotient(&rows(rows_, self.0.dim())?).map_err(err)?))
    }

    fn same_as(&self, other: &PyMhs) -> bool {
        self.0.same_as(&other.0)
    }

    fn hodge_classes(&self) -> Vec<Vec<String>> {
        subspace_doc(&self.0.hodge_classes())
    }

    fn deligne_splitting(&self) -> Vec<Vec<String>> {
        matrix_doc(&self.0.deligne_splitting())
    }

    /// Nonzero `I^{p,q}` keyed by `(p, q)`.
    fn bigrading(&self) -> Blocks {
        self.0
            .bigrading()
            .components
            .iter()
            .filter(|(_, s)| !s.is_zero())
            .map(|(k, s)| (*k, subspace_doc(s)))
            .collect()
    }

    /// Lift of a graded subobject, or `None`.
    fn can_lift(&self, graded: &Bound<'_, PyAny>) -> PyResult<Option<Vec<Vec<String>>>> {
        let g = rows(graded, self.0.dim())?;
        Ok(loci::can_lift(&self.0, &g).map_err(err)?.map(|a| subspace_doc(&a)))
    }

    /// Representative of `E_p(M)` in `Hom(M/W_p, W_p)`.
    fn ext_class(&self, p: i32) -> PyResult<Vec<String>> {
        let (_, rep) = radical::ext_class_rep(&self.0, p).map_err(err)?;
        Ok(rep.e.iter().map(hodgekit::Scalar::format).collect())
    }

    #[pyo3(signature = (p, rows_=None))]
    fn splits_mod(&self, p: i32, rows_: Option<&Bound<'_, PyAny>>) -> PyResult<bool> {
        let hd = radical::hom_dagger(&self.0, p).map_err(err)?;
        let a = match rows_ {
            Some(r) => rows(r, hd.h.dim())?,
            None => Subspace::zero(hd.h.dim()),
        };
        radical::splits_mod(&self.0, p, &a).map_err(err)
    }

    /// `(large, dim, basis)` of `u_p` in the rank-one Tate regime.
    fn u_p(&self, p: i32) -> PyResult<(bool, usize, Vec<Vec<String>>)> {
        let r = radical::u_p_tate(&self.0, p).map_err(err)?;
        Ok((r.large, r.subspace.dim(), subspace_doc(&r.subspace)))
    }

    /// `(large, failing_p)`.
    fn is_u_large(&self) -> PyResult<(bool, Vec<i32>)> {
        let r = radical::is_u_large(&self.0).map_err(err)?;
        Ok((r.large, r.failing_p))
    }

    #[pyo3(signature = (degree=2))]
    fn mt_bound(&self, degree: usize) -> PyResult<Vec<Vec<String>>> {
        Ok(subspace_doc(&radical::mt_lie_upper_bound(&self.0, degree).map_err(err)?))
    }

    fn __repr__(&self) -> String {
        format!("MHS(dim={}, weights={:?})", self.0.dim(), self.0.weight().jumps())
    }
}

#[pyclass(name = "Triple", module = "pyhodgekit", frozen, skip_from_py_object)]
#[derive(Clone)]
pub struct PyTriple(hodgekit::triple::Triple);

#[pymethods]
impl PyTriple {
    /// From `{"dim", "W", "graded": [{"weight", "F"}]}`.
    #[staticmethod]
    fn from_doc(doc: &Bound<'_, PyAny>) -> PyResult<Self> {
        Ok(PyTriple(parse_triple(&to_value(doc)?, "").map_err(err)?))
    }

    #[staticmethod]
    fn of(m: &PyMhs) -> Self {
        PyTriple(hodgekit::triple::Triple::of(&m.0))
    }

    fn to_doc<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &TripleDoc::from(&self.0))
    }

    #[getter]
    fn dim(&self) -> usize {
        self.0.dim()
    }

    fn dim_s(&self) -> usize {
        self.0.dim_s()
    }

    /// The MHS at a point `{"sections": {...}}`; the split one by default.
    #[pyo3(signature = (point=None))]
    fn build(&self, point: Option<&Bound<'_, PyAny>>) -> PyResult<PyMhs> {
        let alpha = match point {
            Some(p) => parse_tpoint(&to_value(p)?, "").map_err(err)?,
            None => self.0.identity_point(),
        };
        Ok(PyMhs(self.0.build(&alpha).map_err(err)?))
    }

    #[pyo3(signature = (seed, height=10))]
    fn sample_point<'py>(&self, py: Python<'py>, seed: u64, height: u32) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &TPointDoc::from(&self.0.sample_point(seed, height)))
    }

    fn sections<'py>(&self, py: Python<'py>, m: &PyMhs) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &TPointDoc::from(&self.0.sections_from_mhs(&m.0).map_err(err)?))
    }

    fn equal_in_s(&self, a: &Bound<'_, PyAny>, b: &Bound<'_, PyAny>) -> PyResult<bool> {
        let a = parse_tpoint(&to_value(a)?, "").map_err(err)?;
        let b = parse_tpoint(&to_value(b)?, "").map_err(err)?;
        self.0.equal_in_s(&a, &b).map_err(err)
    }

    /// `(μ_p, μ_{>p})`.
    fn truncate(&self, p: i32) -> (PyTriple, PyTriple) {
        let tr = self.0.truncate(p);
        (PyTriple(tr.sub), PyTriple(tr.quot))
    }

    #[pyo3(signature = (samples=100, seed=7, height=10))]
    fn experiment<'py>(
        &self,
        py: Python<'py>,
        samples: usize,
        seed: u64,
        height: u32,
    ) -> PyResult<Bound<'py, PyAny>> {
        let report = py
            .detach(|| radical::genericity_experiment(&self.0, samples, seed, height))
            .map_err(err)?;
        to_py(py, &report)
    }
}

#[pyclass(name = "Pencil", module = "pyhodgekit", frozen, skip_from_py_object)]
pub struct PyPencil(loci::Pencil);

#[pymethods]
impl PyPencil {
    #[staticmethod]
    fn from_doc(doc: &Bound<'_, PyAny>) -> PyResult<Self> {
        Ok(PyPencil(parse_pencil(&to_value(doc)?, "").map_err(err)?))
    }

    /// `t` as a string such as `"1/2+i"`.
    fn mhs_at(&self, t: &Bound<'_, PyAny>) -> PyResult<PyMhs> {
        Ok(PyMhs(self.0.mhs_at(&scalar(t)?).map_err(err)?))
    }

    /// Hodge locus of `vector` in the family given by `construction`.
    fn locus<'py>(
        &self,
        py: Python<'py>,
        construction: &Bound<'_, PyAny>,
        vector: &Bound<'_, PyAny>,
    ) -> PyResult<Bound<'py, PyAny>> {
        let c = parse_construction(&to_value(construction)?, "").map_err(err)?;
        let v = parse_vector::<Rat>(&to_value(vector)?, None, "").map_err(err)?;
        let r = loci::locus_on_pencil(&self.0, &v, &c).map_err(err)?;
        to_py(py, &LocusDoc::from(&r))
    }

    /// Locus of the splitting witness, with the construction used.
    fn witness_locus<'py>(&self, py: Python<'py>) -> PyResult<(Bound<'py, PyAny>, Bound<'py, PyAny>)> {
        let (c, v) = self.0.splitting_witness().map_err(err)?;
        let r = loci::locus_on_pencil(&self.0, &v, &c).map_err(err)?;
        Ok((to_py(py, &construction_doc(&c))?, to_py(py, &LocusDoc::from(&r))?))
    }
}

#[pyfunction]
fn tate(k: i32) -> PyMhs {
    PyMhs(functors::tate(k))
}

#[pyfunction]
#[pyo3(signature = (seed, max_dim=6))]
fn random_mhs(seed: u64, max_dim: usize) -> PyMhs {
    PyMhs(sample::random_mhs(seed, max_dim))
}

/// Validation report `{"filtration": [...], "purity": [...]}` of a raw document.
#[pyfunction]
fn validate<'py>(py: Python<'py>, doc: &Bound<'_, PyAny>) -> PyResult<Bound<'py, PyAny>> {
    let (dim, w, f) = hodgekit::json::parse_mhs_parts(&to_value(doc)?, "").map_err(err)?;
    to_py(py, &hodgekit::Mhs::check(dim, &w, &f))
}

#[pymodule]
fn pyhodgekit(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", hodgekit::VERSION)?;
    m.add("HodgekitError", m.py().get_type::<HodgekitError>())?;
    m.add("RegimeError", m.py().get_type::<RegimeError>())?;
    m.add("ResourceGuardError", m.py().get_type::<ResourceGuardError>())?;
    m.add_class::<PyMhs>()?;
    m.add_class::<PyTriple>()?;
    m.add_class::<PyPencil>()?;
    m.add_function(wrap_pyfunction!(tate, m)?)?;
    m.add_function(wrap_pyfunction!(random_mhs, m)?)?;
    m.add_function(wrap_pyfunction!(validate, m)?)?;
    Ok(())
}
