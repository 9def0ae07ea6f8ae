//! Python bindings: `gkm.Gkm`, `gkm.Class` and the catalogue runner.

use std::collections::BTreeMap;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use gkm_core::catalogue::{run_catalogue, CatalogueConfig, DEFAULT_DET_CAP};
use gkm_core::cohomology::{self, EquivariantClass, Flavor};
use gkm_core::io::{character_to_json, class_to_json, parse_class};
use gkm_core::parabolic::{certify_basis, ParabolicBasis, ParabolicExpander};
use gkm_core::polyring::RootPolynomial;
use gkm_core::springer;
use gkm_core::verify::{run_check, Check};
use gkm_core::weyl::ParabolicSubset;
use gkm_core::GkmError;

fn err(e: GkmError) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_json<T: serde::Serialize>(x: &T) -> String {
    serde_json::to_string(x).expect("serializable")
}

/// Localization tables and Schubert calculus for one root system.
#[pyclass(frozen, name = "Gkm")]
struct PyGkm {
    inner: cohomology::Gkm,
}

/// An equivariant class given by its localizations.
#[pyclass(frozen, name = "Class")]
struct PyClass {
    gkm: cohomology::Gkm,
    inner: EquivariantClass,
}

impl PyGkm {
    fn parabolic(&self, s: &str) -> PyResult<ParabolicSubset> {
        ParabolicSubset::parse(self.inner.root_system(), s).map_err(err)
    }

    fn element(&self, w: &str) -> PyResult<usize> {
        self.inner.parse_element(w).map_err(err)
    }

    fn wrap(&self, inner: EquivariantClass) -> PyClass {
        PyClass {
            gkm: self.inner.clone(),
            inner,
        }
    }
}

#[pymethods]
impl PyGkm {
    #[new]
    fn new(spec: &str) -> PyResult<Self> {
        Ok(PyGkm {
            inner: cohomology::Gkm::parse(spec).map_err(err)?,
        })
    }

    #[getter]
    fn root_system(&self) -> String {
        self.inner.root_system().spec().to_string()
    }

    #[getter]
    fn rank(&self) -> usize {
        self.inner.nvars()
    }

    fn __len__(&self) -> usize {
        self.inner.group().len()
    }

    /// Canonical reduced words in canonical order.
    fn elements(&self) -> Vec<String> {
        (0..self.inner.group().len()).map(|k| self.inner.word(k)).collect()
    }

    /// σ_v(u) as a polynomial string.
    fn billey(&self, v: &str, u: &str) -> PyResult<String> {
        Ok(self.inner.sigma(self.element(v)?, self.element(u)?).to_string())
    }

    #[pyo3(signature = (w, flavor = "GB", parabolic = ""))]
    fn schubert(&self, w: &str, flavor: &str, parabolic: &str) -> PyResult<PyClass> {
        let space = self
            .inner
            .space(Flavor::parse(flavor).map_err(err)?, &self.parabolic(parabolic)?);
        let class = self.inner.schubert_class(&space, self.element(w)?).map_err(err)?;
        Ok(self.wrap(class))
    }

    /// Class from its JSON form.
    fn class_from_json(&self, text: &str) -> PyResult<PyClass> {
        Ok(self.wrap(parse_class(&self.inner, text).map_err(err)?))
    }

    /// Constant class on G/B.
    fn constant(&self, poly: &str) -> PyResult<PyClass> {
        let p = RootPolynomial::parse(self.inner.nvars(), poly).map_err(err)?;
        Ok(self.wrap(self.inner.constant(&self.inner.gb(), p)))
    }

    /// `[(word, coefficient)]` in canonical order.
    fn expand(&self, class: &PyClass) -> PyResult<Vec<(String, String)>> {
        let exp = self.inner.expand_in_schubert(&class.inner).map_err(err)?;
        Ok(exp
            .coeffs()
            .iter()
            .map(|(&w, c)| (self.inner.word(w), c.to_string()))
            .collect())
    }

    /// `[(v, w, coefficient)]` in the basis `B_P`.
    fn expand_parabolic(&self, class: &PyClass, parabolic: &str) -> PyResult<Vec<(String, String, String)>> {
        let basis = ParabolicBasis::new(&self.inner, &self.parabolic(parabolic)?);
        let ex = ParabolicExpander::new(&self.inner, &basis).map_err(err)?;
        let exp = ex.expand(&class.inner).map_err(err)?;
        Ok(exp
            .coeffs
            .iter()
            .map(|((v, w), c)| (self.inner.word(*v), self.inner.word(*w), c.to_string()))
            .collect())
    }

    /// Basis certificate as JSON.
    #[pyo3(signature = (parabolic, det_cap = DEFAULT_DET_CAP))]
    fn certify(&self, parabolic: &str, det_cap: usize) -> PyResult<String> {
        let basis = ParabolicBasis::new(&self.inner, &self.parabolic(parabolic)?);
        Ok(to_json(&certify_basis(&self.inner, &basis, det_cap)))
    }

    /// `{word: trace}` over `W_P`.
    #[pyo3(signature = (parabolic, space = "PB"))]
    fn character(&self, parabolic: &str, space: &str) -> PyResult<BTreeMap<String, String>> {
        let table = springer::character(
            &self.inner,
            &self.parabolic(parabolic)?,
            Flavor::parse(space).map_err(err)?,
        )
        .map_err(err)?;
        let json = character_to_json(&table);
        Ok(json["values"]
            .as_object()
            .expect("object")
            .iter()
            .map(|(k, v)| (k.clone(), v.as_str().unwrap_or_default().to_string()))
            .collect())
    }

    /// Character table as JSON.
    #[pyo3(signature = (parabolic, space = "PB"))]
    fn character_json(&self, parabolic: &str, space: &str) -> PyResult<String> {
        let table = springer::character(
            &self.inner,
            &self.parabolic(parabolic)?,
            Flavor::parse(space).map_err(err)?,
        )
        .map_err(err)?;
        Ok(character_to_json(&table).to_string())
    }

    /// `(ok, report_json)` for a named check over one or all parabolics.
    #[pyo3(signature = (check, parabolic = None, det_cap = DEFAULT_DET_CAP))]
    fn verify(&self, check: &str, parabolic: Option<&str>, det_cap: usize) -> PyResult<(bool, String)> {
        let check: Check = check.parse().map_err(err)?;
        let parabolics = match parabolic {
            Some(s) => vec![self.parabolic(s)?],
            None => ParabolicSubset::all(self.inner.root_system()),
        };
        let out = run_check(&self.inner, check, &parabolics, None, det_cap).map_err(err)?;
        Ok((out.ok, out.report.to_string()))
    }

    fn __repr__(&self) -> String {
        format!("Gkm('{}')", self.root_system())
    }
}

impl PyClass {
    fn combine(
        &self,
        other: &PyClass,
        f: impl Fn(&EquivariantClass, &EquivariantClass) -> gkm_core::Result<EquivariantClass>,
    ) -> PyResult<PyClass> {
        Ok(PyClass {
            gkm: self.gkm.clone(),
            inner: f(&self.inner, &other.inner).map_err(err)?,
        })
    }
}

#[pymethods]
impl PyClass {
    /// `{word: polynomial}` over all fixed points, zeros included.
    fn values(&self) -> BTreeMap<String, String> {
        self.inner
            .iter()
            .map(|(k, p)| (self.gkm.word(k), p.to_string()))
            .collect()
    }

    fn at(&self, w: &str) -> PyResult<String> {
        let k = self.gkm.parse_element(w).map_err(err)?;
        self.inner
            .at(k)
            .map(|p| p.to_string())
            .ok_or_else(|| PyValueError::new_err(format!("{w} is not a fixed point of this space")))
    }

    fn to_json(&self) -> String {
        to_json(&class_to_json(&self.gkm, &self.inner))
    }

    fn __add__(&self, other: &PyClass) -> PyResult<PyClass> {
        self.combine(other, EquivariantClass::add)
    }

    fn __sub__(&self, other: &PyClass) -> PyResult<PyClass> {
        self.combine(other, EquivariantClass::sub)
    }

    fn __mul__(&self, other: &PyClass) -> PyResult<PyClass> {
        self.combine(other, EquivariantClass::mul)
    }

    fn __eq__(&self, other: &PyClass) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!("Class({})", self.to_json())
    }
}

/// Runs the catalogue for a JSON config and returns the JSON report.
#[pyfunction]
fn catalogue(config: &str) -> PyResult<String> {
    let cfg = CatalogueConfig::from_json(config).map_err(err)?;
    Ok(run_catalogue(&cfg, None).map_err(err)?.to_json_string())
}

#[pymodule]
fn gkm(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGkm>()?;
    m.add_class::<PyClass>()?;
    m.add_function(wrap_pyfunction!(catalogue, m)?)?;
    Ok(())
}
