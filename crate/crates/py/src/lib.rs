use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use solvlat_core::ceh::{betti, hard_lefschetz as lefschetz, symplectic_check, TwoForm};
use solvlat_core::exact::{
    isolate_roots as isolate, parse_rational, rational_roots as rat_roots, to_exact_string,
};
use solvlat_core::lattice::{
    build_lattice as build, verify_certificate as verify_cert, LatticeCertificate,
};
use solvlat_core::multipoly::{buchberger, parse_polys, MonomialOrder};
use solvlat_core::obstruct::{
    example2_obstruction, example3_obstruction, verify_report, ObstructionReport,
};
use solvlat_core::{registry, Error, Rational, UniPoly};

fn err(e: Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn loads<'py>(py: Python<'py>, s: &str) -> PyResult<Bound<'py, PyAny>> {
    py.import("json")?.call_method1("loads", (s,))
}

fn fraction<'py>(py: Python<'py>, r: &Rational) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?
        .getattr("Fraction")?
        .call1((to_exact_string(r),))
}

fn rational(x: &Bound<'_, PyAny>) -> PyResult<Rational> {
    parse_rational(&x.str()?.to_string()).map_err(err)
}

/// Coefficients from the constant term up.
fn poly(coeffs: &[Bound<'_, PyAny>]) -> PyResult<UniPoly> {
    Ok(UniPoly::new(
        coeffs.iter().map(rational).collect::<PyResult<_>>()?,
    ))
}

#[pyclass(name = "LieAlgebra", module = "solvlat", frozen)]
struct PyLieAlgebra {
    inner: solvlat_core::LieAlgebra,
}

#[pymethods]
impl PyLieAlgebra {
    /// A registered algebra such as `example2`, `g65(2)` or `modified(1,-4)`.
    #[staticmethod]
    fn builtin(name: &str) -> PyResult<Self> {
        Ok(Self {
            inner: registry::lookup(name).map_err(err)?,
        })
    }

    #[staticmethod]
    fn from_text(src: &str) -> PyResult<Self> {
        Ok(Self {
            inner: solvlat_core::LieAlgebra::from_text(src).map_err(err)?,
        })
    }

    fn to_text(&self) -> String {
        self.inner.to_text()
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    #[getter]
    fn labels(&self) -> Vec<String> {
        self.inner.labels().to_vec()
    }

    fn validate<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        loads(
            py,
            &serde_json::to_string(&self.inner.validate()).expect("json"),
        )
    }

    fn is_valid(&self) -> bool {
        self.inner.is_valid()
    }

    fn is_nilpotent(&self) -> bool {
        self.inner.is_nilpotent()
    }

    fn is_solvable(&self) -> bool {
        self.inner.is_solvable()
    }

    fn is_completely_solvable(&self) -> bool {
        self.inner.is_completely_solvable()
    }

    /// `[a, b]` in the basis, as fractions.
    fn bracket<'py>(&self, py: Python<'py>, a: &str, b: &str) -> PyResult<Vec<Bound<'py, PyAny>>> {
        let (i, j) = (
            self.inner.index(a).map_err(err)?,
            self.inner.index(b).map_err(err)?,
        );
        self.inner
            .bracket_basis(i, j)
            .iter()
            .map(|c| fraction(py, c))
            .collect()
    }

    fn betti(&self) -> PyResult<Vec<usize>> {
        betti(&self.inner).map_err(err)
    }

    fn __repr__(&self) -> String {
        format!(
            "LieAlgebra(dim={}, basis={})",
            self.inner.dim(),
            self.inner.labels().join(" ")
        )
    }
}

fn two_form(l: &PyLieAlgebra, omega: Option<&str>, name: Option<&str>) -> PyResult<TwoForm> {
    let src = match (omega, name) {
        (Some(s), _) => s.to_string(),
        (None, Some(n)) => registry::default_omega(n)
            .ok_or_else(|| PyValueError::new_err(format!("no default two-form for {n}")))?,
        (None, None) => return Err(PyValueError::new_err("omega is required")),
    };
    TwoForm::parse(&src, &l.inner).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (algebra, omega=None, name=None))]
fn symplectic<'py>(
    py: Python<'py>,
    algebra: &PyLieAlgebra,
    omega: Option<&str>,
    name: Option<&str>,
) -> PyResult<Bound<'py, PyAny>> {
    let r = symplectic_check(&algebra.inner, &two_form(algebra, omega, name)?).map_err(err)?;
    loads(py, &serde_json::to_string(&r).expect("json"))
}

/// Report with `holds`, `failing_degree`, `betti` and the rank of every map.
#[pyfunction]
#[pyo3(signature = (algebra, omega=None, name=None))]
fn hard_lefschetz<'py>(
    py: Python<'py>,
    algebra: &PyLieAlgebra,
    omega: Option<&str>,
    name: Option<&str>,
) -> PyResult<Bound<'py, PyAny>> {
    let r = lefschetz(&algebra.inner, &two_form(algebra, omega, name)?).map_err(err)?;
    loads(py, &serde_json::to_string(&r).expect("json"))
}

/// JSON obstruction report for `example2` or `example3`.
#[pyfunction]
fn obstruct(name: &str) -> PyResult<String> {
    let report = match name {
        "example2" => example2_obstruction(),
        "example3" => example3_obstruction(),
        _ => {
            return Err(PyValueError::new_err(format!(
                "no obstruction analysis for {name}"
            )))
        }
    };
    Ok(report.to_json())
}

/// Raises `ValueError` naming the first failing check.
#[pyfunction]
fn verify_obstruction(report: &str) -> PyResult<bool> {
    let r = ObstructionReport::from_json(report).map_err(err)?;
    verify_report(&r).map_err(err)?;
    Ok(r.is_obstructed())
}

/// JSON certificate for the lattice built from `x^3 - p x^2 + q x - 1`.
#[pyfunction]
fn build_lattice(p: i64, q: i64) -> PyResult<String> {
    Ok(build(p, q).map_err(err)?.to_json())
}

/// Names of the passed checks; raises `ValueError` on the first failure.
#[pyfunction]
fn verify_certificate(certificate: &str) -> PyResult<Vec<String>> {
    let cert = LatticeCertificate::from_json(certificate).map_err(err)?;
    Ok(verify_cert(&cert).map_err(err)?.checks)
}

/// Disjoint enclosures `(lo, hi)` of the real roots; `lo == hi` for exact rational roots.
#[pyfunction]
#[pyo3(signature = (coeffs, width="1/1000000"))]
fn isolate_roots<'py>(
    py: Python<'py>,
    coeffs: Vec<Bound<'py, PyAny>>,
    width: &str,
) -> PyResult<Vec<(Bound<'py, PyAny>, Bound<'py, PyAny>)>> {
    let w = parse_rational(width).map_err(err)?;
    isolate(&poly(&coeffs)?, &w)
        .intervals
        .iter()
        .map(|iv| Ok((fraction(py, &iv.lo)?, fraction(py, &iv.hi)?)))
        .collect()
}

#[pyfunction]
fn rational_roots<'py>(
    py: Python<'py>,
    coeffs: Vec<Bound<'py, PyAny>>,
) -> PyResult<Vec<Bound<'py, PyAny>>> {
    rat_roots(&poly(&coeffs)?)
        .iter()
        .map(|r| fraction(py, r))
        .collect()
}

/// Reduced Groebner basis; variables are ordered by first appearance.
#[pyfunction]
#[pyo3(signature = (polys, order="lex"))]
fn groebner(polys: Vec<String>, order: &str) -> PyResult<Vec<String>> {
    let refs: Vec<&str> = polys.iter().map(String::as_str).collect();
    let (vars, ps) = parse_polys(&refs).map_err(err)?;
    let mo = match order {
        "lex" => MonomialOrder::lex(vars.len()),
        "grevlex" => MonomialOrder::grevlex(vars.len()),
        o => {
            return Err(PyValueError::new_err(format!(
                "unknown order {o}; use lex or grevlex"
            )))
        }
    };
    let gb = buchberger(&ps, &mo).map_err(err)?;
    Ok(gb.generators().iter().map(|g| g.render(&mo)).collect())
}

#[pyfunction]
fn list_examples() -> Vec<String> {
    registry::list_examples().iter().map(|e| e.line()).collect()
}

#[pymodule]
fn solvlat(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyLieAlgebra>()?;
    m.add_function(wrap_pyfunction!(symplectic, m)?)?;
    m.add_function(wrap_pyfunction!(hard_lefschetz, m)?)?;
    m.add_function(wrap_pyfunction!(obstruct, m)?)?;
    m.add_function(wrap_pyfunction!(verify_obstruction, m)?)?;
    m.add_function(wrap_pyfunction!(build_lattice, m)?)?;
    m.add_function(wrap_pyfunction!(verify_certificate, m)?)?;
    m.add_function(wrap_pyfunction!(isolate_roots, m)?)?;
    m.add_function(wrap_pyfunction!(rational_roots, m)?)?;
    m.add_function(wrap_pyfunction!(groebner, m)?)?;
    m.add_function(wrap_pyfunction!(list_examples, m)?)?;
    Ok(())
}
