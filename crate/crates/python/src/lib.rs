//! Python bindings: `import ffcn`.
//!
//! Polynomials are passed as text (`"t^2+1"`) together with the field size
//! `q`, or as `ffcn.Poly` objects. Exact rationals come back as
//! `fractions.Fraction`.

use ffcn_core::eichler::{LocalQuadKind, LocalQuatKind};
use ffcn_core::theta::{theta_lambda_table, theta_o_table, DEFAULT_MAX_DEG_CEILING};
use ffcn_core::{
    factor, BigRational, FieldCtx, FourierTable, LevelPair, Poly, Strategy, ThetaLambdaParams, ThetaOParams,
};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn fraction<'py>(py: Python<'py>, r: &BigRational) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?.getattr("Fraction")?.call1((r.to_string(),))
}

fn field(q: u64) -> PyResult<FieldCtx> {
    FieldCtx::new(q).map_err(err)
}

/// A polynomial over F_q.
#[pyclass(name = "Poly", module = "ffcn", frozen, eq, ord, hash, from_py_object)]
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct PyPoly {
    inner: Poly,
}

/// A polynomial argument: either a `Poly` or its text form.
#[derive(FromPyObject)]
enum PolyArg {
    Poly(PyPoly),
    Text(String),
}

impl PolyArg {
    fn resolve(self, ctx: FieldCtx) -> PyResult<Poly> {
        match self {
            PolyArg::Poly(p) if p.inner.ctx() == ctx => Ok(p.inner),
            PolyArg::Poly(p) => Err(err(format!("{} lives over F_{}, expected F_{}", p.inner, p.inner.q(), ctx.q()))),
            PolyArg::Text(s) => Poly::parse(ctx, &s).map_err(err),
        }
    }
}

#[pymethods]
impl PyPoly {
    #[new]
    fn new(q: u64, text: &str) -> PyResult<Self> {
        Ok(Self { inner: Poly::parse(field(q)?, text).map_err(err)? })
    }

    /// Build from coefficients, constant term first.
    #[staticmethod]
    fn from_coeffs(q: u64, coeffs: Vec<i64>) -> PyResult<Self> {
        Ok(Self { inner: Poly::from_coeffs(field(q)?, &coeffs) })
    }

    #[getter]
    fn q(&self) -> u32 {
        self.inner.q()
    }

    /// Degree, or None for the zero polynomial.
    #[getter]
    fn degree(&self) -> Option<usize> {
        self.inner.deg()
    }

    #[getter]
    fn coeffs(&self) -> Vec<u32> {
        self.inner.coeffs().to_vec()
    }

    fn is_monic(&self) -> bool {
        self.inner.is_monic()
    }

    fn is_imaginary(&self) -> bool {
        ffcn_core::is_imaginary(&self.inner)
    }

    /// Monic prime factors with multiplicities, plus the leading coefficient.
    fn factor(&self) -> PyResult<(u32, Vec<(PyPoly, u32)>)> {
        let f = factor(&self.inner).map_err(err)?;
        let primes = f.primes().map(|p| (PyPoly { inner: p.clone() }, f.multiplicity(p))).collect();
        Ok((self.inner.leading_coeff(), primes))
    }

    fn __add__(&self, other: &PyPoly) -> PyResult<PyPoly> {
        self.same_field(other)?;
        Ok(PyPoly { inner: &self.inner + &other.inner })
    }

    fn __sub__(&self, other: &PyPoly) -> PyResult<PyPoly> {
        self.same_field(other)?;
        Ok(PyPoly { inner: &self.inner - &other.inner })
    }

    fn __mul__(&self, other: &PyPoly) -> PyResult<PyPoly> {
        self.same_field(other)?;
        Ok(PyPoly { inner: &self.inner * &other.inner })
    }

    fn __neg__(&self) -> PyPoly {
        PyPoly { inner: -&self.inner }
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Poly({}, '{}')", self.inner.q(), self.inner)
    }
}

impl PyPoly {
    fn same_field(&self, other: &PyPoly) -> PyResult<()> {
        if self.inner.ctx() == other.inner.ctx() {
            Ok(())
        } else {
            Err(err("polynomials over different fields"))
        }
    }
}

/// Class number h, normalized unit count w and h/w of A[√d].
#[pyclass(name = "ClassData", module = "ffcn", frozen, get_all)]
struct PyClassData {
    h: u64,
    w: u64,
    h_over_w: Py<PyAny>,
}

#[pymethods]
impl PyClassData {
    fn __repr__(&self) -> String {
        format!("ClassData(h={}, w={})", self.h, self.w)
    }
}

#[pyfunction]
fn class_data(py: Python<'_>, q: u64, d: PolyArg) -> PyResult<PyClassData> {
    let d = d.resolve(field(q)?)?;
    let c = ffcn_core::class_data(&d).map_err(err)?;
    Ok(PyClassData { h: c.h, w: c.w, h_over_w: fraction(py, &c.h_over_w)?.unbind() })
}

fn levels(ctx: FieldCtx, n_plus: PolyArg, n_minus: PolyArg) -> PyResult<LevelPair> {
    LevelPair::new(n_plus.resolve(ctx)?, n_minus.resolve(ctx)?).map_err(err)
}

/// H^{n+,n-}(d); strategy is "definition" or "product".
#[pyfunction]
#[pyo3(signature = (q, d, n_plus = PolyArg::Text("1".into()), n_minus = PolyArg::Text("1".into()), strategy = "definition"))]
fn hurwitz_h<'py>(
    py: Python<'py>,
    q: u64,
    d: PolyArg,
    n_plus: PolyArg,
    n_minus: PolyArg,
    strategy: &str,
) -> PyResult<Bound<'py, PyAny>> {
    let ctx = field(q)?;
    let strategy = match strategy {
        "definition" => Strategy::DefinitionSum,
        "product" => Strategy::LocalProduct,
        other => return Err(err(format!("unknown strategy {other:?}"))),
    };
    let levels = levels(ctx, n_plus, n_minus)?;
    let value = ffcn_core::hurwitz_h(&levels, &d.resolve(ctx)?, strategy).map_err(err)?;
    fraction(py, &value)
}

/// (H^{n+,n-}(0), unit volume).
#[pyfunction]
#[pyo3(signature = (q, n_plus = PolyArg::Text("1".into()), n_minus = PolyArg::Text("1".into())))]
fn hurwitz_h_zero<'py>(
    py: Python<'py>,
    q: u64,
    n_plus: PolyArg,
    n_minus: PolyArg,
) -> PyResult<(Bound<'py, PyAny>, Bound<'py, PyAny>)> {
    let levels = levels(field(q)?, n_plus, n_minus)?;
    Ok((
        fraction(py, &ffcn_core::hurwitz_h_zero(&levels))?,
        fraction(py, &ffcn_core::tamagawa_unit_volume(&levels))?,
    ))
}

fn poly_obj(p: &Poly) -> PyPoly {
    PyPoly { inner: p.clone() }
}

fn split(q: u64, frak_d: PolyArg, frak_n: PolyArg) -> PyResult<ThetaLambdaParams> {
    let ctx = field(q)?;
    ffcn_core::split_level(&frak_d.resolve(ctx)?, &frak_n.resolve(ctx)?).map_err(err)
}

/// Dict with n_plus, n_minus, d_plus, d_minus.
#[pyfunction]
fn split_level<'py>(py: Python<'py>, q: u64, frak_d: PolyArg, frak_n: PolyArg) -> PyResult<Bound<'py, PyDict>> {
    let params = split(q, frak_d, frak_n)?;
    let out = PyDict::new(py);
    out.set_item("n_plus", poly_obj(&params.n_plus))?;
    out.set_item("n_minus", poly_obj(&params.n_minus))?;
    out.set_item("d_plus", poly_obj(&params.d_plus))?;
    out.set_item("d_minus", poly_obj(&params.d_minus))?;
    Ok(out)
}

/// Table as a list of (index, Fraction); index None is the constant term.
fn table_list<'py>(py: Python<'py>, table: &FourierTable) -> PyResult<Vec<(Option<PyPoly>, Bound<'py, PyAny>)>> {
    std::iter::once(Ok((None, fraction(py, &table.constant_term)?)))
        .chain(table.coefficients.iter().map(|(a, v)| Ok((Some(poly_obj(a)), fraction(py, v)?))))
        .collect()
}

#[pyfunction]
#[pyo3(signature = (q, n_minus, max_deg, n_plus = PolyArg::Text("1".into())))]
fn theta_o<'py>(
    py: Python<'py>,
    q: u64,
    n_minus: PolyArg,
    max_deg: usize,
    n_plus: PolyArg,
) -> PyResult<Vec<(Option<PyPoly>, Bound<'py, PyAny>)>> {
    let params = ThetaOParams::new(levels(field(q)?, n_plus, n_minus)?).map_err(err)?;
    let table = py.detach(|| theta_o_table(&params, max_deg, DEFAULT_MAX_DEG_CEILING)).map_err(err)?;
    table_list(py, &table)
}

#[pyfunction]
fn theta_lambda<'py>(
    py: Python<'py>,
    q: u64,
    frak_d: PolyArg,
    frak_n: PolyArg,
    max_deg: usize,
) -> PyResult<Vec<(Option<PyPoly>, Bound<'py, PyAny>)>> {
    let params = split(q, frak_d, frak_n)?;
    let table = py.detach(|| theta_lambda_table(&params, max_deg, DEFAULT_MAX_DEG_CEILING)).map_err(err)?;
    table_list(py, &table)
}

/// Local optimal-embedding number; kind is split, unramified or ramified,
/// quat is division-maximal, matrix-maximal or matrix-hereditary.
#[pyfunction]
fn embed_count(kind: &str, level: u32, quat: &str) -> PyResult<u32> {
    let e_kind = LocalQuadKind::ALL
        .into_iter()
        .find(|k| k.as_str() == kind)
        .ok_or_else(|| err(format!("unknown kind {kind:?}")))?;
    let d_kind = [LocalQuatKind::DIVISION_MAXIMAL, LocalQuatKind::MATRIX_MAXIMAL, LocalQuatKind::MATRIX_HEREDITARY]
        .into_iter()
        .find(|k| k.as_str() == quat)
        .ok_or_else(|| err(format!("unknown quaternion order {quat:?}")))?;
    ffcn_core::embed_count(e_kind, level, d_kind).map_err(err)
}

#[pymodule]
fn ffcn(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPoly>()?;
    m.add_class::<PyClassData>()?;
    m.add_function(wrap_pyfunction!(class_data, m)?)?;
    m.add_function(wrap_pyfunction!(hurwitz_h, m)?)?;
    m.add_function(wrap_pyfunction!(hurwitz_h_zero, m)?)?;
    m.add_function(wrap_pyfunction!(split_level, m)?)?;
    m.add_function(wrap_pyfunction!(theta_o, m)?)?;
    m.add_function(wrap_pyfunction!(theta_lambda, m)?)?;
    m.add_function(wrap_pyfunction!(embed_count, m)?)?;
    Ok(())
}
