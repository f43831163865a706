//! Python bindings. Matrices cross the boundary as lists of rows of complex numbers.

use isospec_core::bloch::{self, BlochVector};
use isospec_core::heisenberg::{self, OperatorTangent};
use isospec_core::operator::{self, ComplexMatrix};
use isospec_core::sb2c::{self, ReducedState, Sb2cSetup};
use isospec_core::unitary_orbit;
use isospec_core::Error;
use num_complex::Complex64;
use pyo3::create_exception;
use pyo3::exceptions::{PyArithmeticError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

create_exception!(isospec, SingularityError, PyArithmeticError);

type Rows = Vec<Vec<Complex64>>;

fn to_py_err(e: Error) -> PyErr {
    match e {
        Error::SingularConfiguration(_) | Error::DynamicalSingularity(_) => SingularityError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

trait IntoPy<T> {
    fn py(self) -> PyResult<T>;
}

impl<T> IntoPy<T> for Result<T, Error> {
    fn py(self) -> PyResult<T> {
        self.map_err(to_py_err)
    }
}

fn matrix(rows: Rows) -> PyResult<ComplexMatrix> {
    ComplexMatrix::from_rows(&rows).py()
}

fn rows(m: &ComplexMatrix) -> Rows {
    let n = m.dim();
    (0..n).map(|i| (0..n).map(|j| m[(i, j)]).collect()).collect()
}

#[pyfunction]
fn heisenberg_rhs(a: Rows, h: Rows) -> PyResult<Rows> {
    Ok(rows(&heisenberg::heisenberg_rhs(&matrix(a)?, &matrix(h)?).py()?))
}

#[pyfunction]
fn evolve_heisenberg_exact(a0: Rows, h: Rows, t: f64) -> PyResult<Rows> {
    Ok(rows(&heisenberg::evolve_heisenberg_exact(&matrix(a0)?, &matrix(h)?, t).py()?))
}

/// RK4 trajectory of the Heisenberg equation as `(times, states)`.
#[pyfunction]
fn evolve_heisenberg_rk4(a0: Rows, h: Rows, t_final: f64, step: f64) -> PyResult<(Vec<f64>, Vec<Rows>)> {
    let sc = heisenberg::HeisenbergScenario::new(matrix(h)?, matrix(a0)?, t_final, step).py()?;
    let tr = heisenberg::evolve_heisenberg_rk4(&sc).py()?;
    Ok((tr.times.clone(), tr.states.iter().map(rows).collect()))
}

#[pyfunction]
fn lagrangian_heisenberg(a: Rows, a_dot: Rows, h: Rows) -> PyResult<f64> {
    let tangent = OperatorTangent::new(matrix(a)?, matrix(a_dot)?).py()?;
    heisenberg::lagrangian_heisenberg(&tangent, &matrix(h)?).py()
}

#[pyfunction]
fn el_residual_heisenberg(a: Rows, a_dot: Rows, h: Rows) -> PyResult<f64> {
    let tangent = OperatorTangent::new(matrix(a)?, matrix(a_dot)?).py()?;
    heisenberg::el_residual_heisenberg(&tangent, &matrix(h)?).py()
}

#[pyfunction]
fn cartan_one_form(point: Rows, v: Rows) -> PyResult<f64> {
    heisenberg::cartan_one_form_heisenberg(&matrix(point)?, &matrix(v)?).py()
}

#[pyfunction]
fn cartan_two_form(v1: Rows, v2: Rows) -> PyResult<f64> {
    heisenberg::cartan_two_form_heisenberg(&matrix(v1)?, &matrix(v2)?).py()
}

#[pyfunction]
fn propagator(h: Rows, t: f64) -> PyResult<Rows> {
    Ok(rows(&operator::propagator(&matrix(h)?, t).py()?))
}

/// Ascending eigenvalues of a Hermitian matrix.
#[pyfunction]
fn spectrum(m: Rows) -> PyResult<Vec<f64>> {
    Ok(operator::spectrum(&matrix(m)?).py()?.eigenvalues().to_vec())
}

#[pyfunction]
fn lvn_rhs(rho: Rows, h: Rows) -> PyResult<Rows> {
    Ok(rows(&unitary_orbit::lvn_rhs(&matrix(rho)?, &matrix(h)?).py()?))
}

#[pyfunction]
fn evolve_lvn_exact(rho0: Rows, h: Rows, t: f64) -> PyResult<Rows> {
    Ok(rows(&unitary_orbit::evolve_lvn_exact(&matrix(rho0)?, &matrix(h)?, t).py()?))
}

#[pyfunction]
fn purity(rho: Rows) -> PyResult<f64> {
    Ok(unitary_orbit::purity(&matrix(rho)?))
}

#[pyfunction]
fn von_neumann_entropy(rho: Rows) -> PyResult<f64> {
    unitary_orbit::von_neumann_entropy(&matrix(rho)?).py()
}

/// `i Tr(σ u̇ u†) − Tr(u†σu H − σH)`
#[pyfunction]
fn lagrangian_unitary(u: Rows, u_dot: Rows, sigma: Rows, h: Rows) -> PyResult<f64> {
    let ut = unitary_orbit::UnitaryTangent::new(matrix(u)?, matrix(u_dot)?).py()?;
    unitary_orbit::lagrangian_unitary(&ut, &matrix(sigma)?, &matrix(h)?).py()
}

#[pyclass(name = "Sb2cElement", module = "isospec", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PySb2cElement {
    inner: sb2c::Sb2cElement,
}

#[pymethods]
impl PySb2cElement {
    #[new]
    fn new(r: f64, x: f64, y: f64) -> PyResult<Self> {
        Ok(Self { inner: sb2c::Sb2cElement::new(r, x, y).py()? })
    }

    #[getter]
    fn r(&self) -> f64 {
        self.inner.r
    }

    #[getter]
    fn x(&self) -> f64 {
        self.inner.x
    }

    #[getter]
    fn y(&self) -> f64 {
        self.inner.y
    }

    fn to_matrix(&self) -> Rows {
        rows(&self.inner.to_matrix())
    }

    fn inverse(&self) -> Self {
        Self { inner: self.inner.inverse() }
    }

    fn __mul__(&self, other: &Self) -> Self {
        Self { inner: self.inner.mul(&other.inner) }
    }

    fn __repr__(&self) -> String {
        format!("Sb2cElement(r={}, x={}, y={})", self.inner.r, self.inner.x, self.inner.y)
    }
}

#[pyclass(name = "Sb2cSetup", module = "isospec", frozen)]
struct PySb2cSetup {
    setup: Sb2cSetup,
    params: sb2c::Sb2cParameters,
}

#[pymethods]
impl PySb2cSetup {
    #[new]
    fn new(a0: Rows, h: Rows) -> PyResult<Self> {
        let setup = Sb2cSetup::new(matrix(a0)?, matrix(h)?).py()?;
        let params = sb2c::derive_parameters(&setup).py()?;
        Ok(Self { setup, params })
    }

    /// The scalar coefficients as a dict.
    fn parameters<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let p = &self.params;
        let d = PyDict::new(py);
        for (k, v) in [
            ("a", p.a),
            ("b", p.b),
            ("c", p.c),
            ("d", p.d),
            ("alpha", p.alpha),
            ("beta", p.beta),
            ("gamma", p.gamma),
            ("delta", p.delta),
            ("h1", p.h1),
            ("h2", p.h2),
            ("h3", p.h3),
            ("h4", p.h4),
        ] {
            d.set_item(k, v)?;
        }
        Ok(d)
    }

    fn orbit_point(&self, g: &PySb2cElement) -> Rows {
        rows(&sb2c::orbit_point(&g.inner, &self.setup))
    }

    /// `x = Φ(r)` on the constraint surface.
    fn phi(&self, r: f64) -> PyResult<f64> {
        sb2c::phi_of_r(r, &self.params).py()
    }

    fn constraint_residual(&self, g: &PySb2cElement) -> PyResult<f64> {
        sb2c::constraint_residual(&g.inner, &self.params).py()
    }

    fn lagrangian(&self, g: &PySb2cElement, r_dot: f64, x_dot: f64, y_dot: f64) -> PyResult<f64> {
        sb2c::lagrangian_sb2c(&g.inner, &sb2c::Sb2cVelocity::new(r_dot, x_dot, y_dot), &self.setup).py()
    }

    /// Reduced dynamics from `(y, r)`; returns a dict with `t`, `y`, `r`, `x` lists and
    /// `singularity` (None or `(kind, t_lower, t_upper)`).
    fn integrate_reduced<'py>(
        &self,
        py: Python<'py>,
        y: f64,
        r: f64,
        t_final: f64,
        step: f64,
    ) -> PyResult<Bound<'py, PyDict>> {
        let start = ReducedState::new(y, r, 0.0).py()?;
        let tr = sb2c::integrate_reduced(&start, &self.params, t_final, step).py()?;
        let d = PyDict::new(py);
        d.set_item("t", tr.samples.iter().map(|s| s.time).collect::<Vec<_>>())?;
        d.set_item("y", tr.samples.iter().map(|s| s.y).collect::<Vec<_>>())?;
        d.set_item("r", tr.samples.iter().map(|s| s.r).collect::<Vec<_>>())?;
        d.set_item("x", tr.samples.iter().map(|s| s.x).collect::<Vec<_>>())?;
        let sing = tr.singularity.map(|s| {
            let kind = match s.kind {
                sb2c::SingularityKind::VelocityDegeneracy => "velocity_degeneracy",
                sb2c::SingularityKind::ConstraintPole => "constraint_pole",
            };
            (kind, s.t_lower, s.t_upper)
        });
        d.set_item("singularity", sing)?;
        Ok(d)
    }
}

fn bloch_vector(x: [f64; 3]) -> PyResult<BlochVector> {
    BlochVector::from_array(x).py()
}

#[pyfunction]
fn density_from_bloch(x: [f64; 3]) -> PyResult<Rows> {
    Ok(rows(&bloch::density_from_bloch(&bloch_vector(x)?)))
}

#[pyfunction]
fn y_field(k: usize, x: [f64; 3]) -> PyResult<[f64; 3]> {
    bloch::y_field(k, &bloch_vector(x)?).py()
}

#[pyfunction]
fn wedge_determinant(x: [f64; 3]) -> PyResult<f64> {
    Ok(bloch::wedge_determinant(&bloch_vector(x)?))
}

#[pyfunction]
fn wedge_closed_form(x: [f64; 3]) -> PyResult<f64> {
    Ok(bloch::wedge_closed_form(&bloch_vector(x)?))
}

/// One of `FIXED_POINT_P`, `PURE_SPHERE`, `BULK`.
#[pyfunction]
fn classify_orbit(x: [f64; 3]) -> PyResult<&'static str> {
    Ok(bloch::classify_orbit(&bloch_vector(x)?).tag.as_str())
}

#[pyfunction]
fn sb2c_flow_on_state(k: usize, t: f64, x: [f64; 3]) -> PyResult<[f64; 3]> {
    Ok(bloch::sb2c_flow_on_state(k, t, &bloch_vector(x)?).py()?.to_array())
}

#[pymodule]
fn isospec(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("SingularityError", m.py().get_type::<SingularityError>())?;
    m.add_class::<PySb2cElement>()?;
    m.add_class::<PySb2cSetup>()?;
    m.add_function(wrap_pyfunction!(heisenberg_rhs, m)?)?;
    m.add_function(wrap_pyfunction!(evolve_heisenberg_exact, m)?)?;
    m.add_function(wrap_pyfunction!(evolve_heisenberg_rk4, m)?)?;
    m.add_function(wrap_pyfunction!(lagrangian_heisenberg, m)?)?;
    m.add_function(wrap_pyfunction!(el_residual_heisenberg, m)?)?;
    m.add_function(wrap_pyfunction!(cartan_one_form, m)?)?;
    m.add_function(wrap_pyfunction!(cartan_two_form, m)?)?;
    m.add_function(wrap_pyfunction!(propagator, m)?)?;
    m.add_function(wrap_pyfunction!(spectrum, m)?)?;
    m.add_function(wrap_pyfunction!(lvn_rhs, m)?)?;
    m.add_function(wrap_pyfunction!(evolve_lvn_exact, m)?)?;
    m.add_function(wrap_pyfunction!(purity, m)?)?;
    m.add_function(wrap_pyfunction!(von_neumann_entropy, m)?)?;
    m.add_function(wrap_pyfunction!(lagrangian_unitary, m)?)?;
    m.add_function(wrap_pyfunction!(density_from_bloch, m)?)?;
    m.add_function(wrap_pyfunction!(y_field, m)?)?;
    m.add_function(wrap_pyfunction!(wedge_determinant, m)?)?;
    m.add_function(wrap_pyfunction!(wedge_closed_form, m)?)?;
    m.add_function(wrap_pyfunction!(classify_orbit, m)?)?;
    m.add_function(wrap_pyfunction!(sb2c_flow_on_state, m)?)?;
    Ok(())
}
