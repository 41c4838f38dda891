//! Python bindings: the 32-bit fast divisors, generic-width parameter
//! selection, and the comparison baselines, as a `fastrem` extension module.

use fastrem_core::{baseline, bench, magic, signed, unsigned};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

fn err(e: fastrem_core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Unsigned 32-bit divisor with a precomputed 64-bit reciprocal.
#[pyclass(name = "UnsignedFastDivisor", frozen)]
struct PyUnsignedFastDivisor(unsigned::UnsignedFastDivisor);

#[pymethods]
impl PyUnsignedFastDivisor {
    #[new]
    fn new(d: u32) -> PyResult<Self> {
        unsigned::UnsignedFastDivisor::new(d).map(Self).map_err(err)
    }

    #[getter]
    fn divisor(&self) -> u32 {
        self.0.divisor()
    }

    #[getter]
    fn reciprocal(&self) -> u64 {
        self.0.reciprocal()
    }

    fn fastmod(&self, n: u32) -> u32 {
        self.0.fastmod(n)
    }

    fn fastdiv(&self, n: u32) -> u32 {
        self.0.fastdiv(n)
    }

    fn is_divisible(&self, n: u32) -> bool {
        self.0.is_divisible(n)
    }

    fn __repr__(&self) -> String {
        format!(
            "UnsignedFastDivisor(d={}, c={})",
            self.0.divisor(),
            self.0.reciprocal()
        )
    }
}

/// Signed 32-bit divisor; remainder follows truncated (C99) semantics.
#[pyclass(name = "SignedFastDivisor", frozen)]
struct PySignedFastDivisor(signed::SignedFastDivisor);

#[pymethods]
impl PySignedFastDivisor {
    #[new]
    fn new(d: i32) -> PyResult<Self> {
        signed::SignedFastDivisor::new(d).map(Self).map_err(err)
    }

    #[getter]
    fn divisor(&self) -> i32 {
        self.0.divisor()
    }

    #[getter]
    fn reciprocal(&self) -> u64 {
        self.0.reciprocal()
    }

    fn fastmod(&self, n: i32) -> i32 {
        self.0.fastmod(n)
    }

    fn is_divisible(&self, n: i32) -> bool {
        self.0.is_divisible(n)
    }

    fn __repr__(&self) -> String {
        format!("SignedFastDivisor(d={})", self.0.divisor())
    }
}

/// Granlund-Montgomery-Warren quotient-by-constant baseline.
#[pyclass(name = "GmwDivisor", frozen)]
struct PyGmwDivisor(baseline::GmwDivisor);

#[pymethods]
impl PyGmwDivisor {
    #[new]
    fn new(d: u32) -> PyResult<Self> {
        baseline::GmwDivisor::new(d).map(Self).map_err(err)
    }

    #[getter]
    fn divisor(&self) -> u32 {
        self.0.divisor()
    }

    fn div(&self, n: u32) -> u32 {
        self.0.div(n)
    }

    fn modulo(&self, n: u32) -> u32 {
        self.0.modulo(n)
    }

    fn __repr__(&self) -> String {
        format!("GmwDivisor(d={})", self.0.divisor())
    }
}

/// Granlund-Montgomery divisibility-test baseline.
#[pyclass(name = "GmDivisibility", frozen)]
struct PyGmDivisibility(baseline::GmDivisibility);

#[pymethods]
impl PyGmDivisibility {
    #[new]
    fn new(d: u32) -> PyResult<Self> {
        baseline::GmDivisibility::new(d).map(Self).map_err(err)
    }

    #[getter]
    fn divisor(&self) -> u32 {
        self.0.divisor()
    }

    #[getter]
    fn inverse(&self) -> u32 {
        self.0.inverse()
    }

    #[getter]
    fn threshold(&self) -> u32 {
        self.0.threshold()
    }

    fn is_divisible(&self, n: u32) -> bool {
        self.0.is_divisible(n)
    }

    fn __repr__(&self) -> String {
        format!("GmDivisibility(d={})", self.0.divisor())
    }
}

/// Generic-width `(N, L, F, c)` reciprocal parameters.
#[pyclass(name = "MagicParameters", frozen)]
struct PyMagicParameters(magic::MagicParameters);

#[pymethods]
impl PyMagicParameters {
    #[getter]
    fn d(&self) -> u32 {
        self.0.d
    }

    #[getter]
    fn n_bits(&self) -> u32 {
        self.0.n_bits
    }

    #[getter]
    fn l_bits(&self) -> u32 {
        self.0.l_bits
    }

    #[getter]
    fn f_bits(&self) -> u32 {
        self.0.f_bits
    }

    #[getter]
    fn c(&self) -> u64 {
        self.0.c
    }

    #[getter]
    fn signed(&self) -> bool {
        self.0.signed
    }

    #[getter]
    fn minimal(&self) -> bool {
        self.0.minimal
    }

    fn is_valid(&self) -> bool {
        self.0.is_valid()
    }

    fn divrem(&self, n: u64) -> PyResult<(u64, u64)> {
        magic::generic_divrem(n, &self.0).map_err(err)
    }

    fn is_divisible_of(&self, n: u64) -> PyResult<bool> {
        magic::generic_is_divisible(n, &self.0).map_err(err)
    }

    fn __repr__(&self) -> String {
        format!(
            "MagicParameters(d={}, n_bits={}, l_bits={}, f_bits={}, c={}, signed={}, minimal={})",
            self.0.d, self.0.n_bits, self.0.l_bits, self.0.f_bits, self.0.c,
            self.0.signed, self.0.minimal
        )
    }
}

#[pyfunction]
fn minimal_unsigned_params(d: u32, n_bits: u32) -> PyResult<PyMagicParameters> {
    magic::minimal_unsigned_params(d, n_bits).map(PyMagicParameters).map_err(err)
}

#[pyfunction]
fn convenient_unsigned_params(d: u32, n_bits: u32) -> PyResult<PyMagicParameters> {
    magic::convenient_unsigned_params(d, n_bits).map(PyMagicParameters).map_err(err)
}

#[pyfunction]
fn minimal_signed_params(d: u32, n_bits: u32) -> PyResult<PyMagicParameters> {
    magic::minimal_signed_params(d, n_bits).map(PyMagicParameters).map_err(err)
}

#[pyfunction]
fn convenient_signed_params(d: u32, n_bits: u32) -> PyResult<PyMagicParameters> {
    magic::convenient_signed_params(d, n_bits).map(PyMagicParameters).map_err(err)
}

/// Inverse of an odd `d` modulo 2^32.
#[pyfunction]
fn multiplicative_inverse(d: u32) -> PyResult<u32> {
    baseline::multiplicative_inverse(d).map_err(err)
}

/// Number of primes below `limit` by trial divisibility;
/// `strategy` is one of "lkk", "gm", "hardware".
#[pyfunction]
#[pyo3(signature = (limit, strategy = "lkk"))]
fn count_primes(limit: u32, strategy: &str) -> PyResult<u32> {
    let strategy = match strategy {
        "lkk" => bench::BenchStrategy::Lkk,
        "gm" => bench::BenchStrategy::Gm,
        "hardware" => bench::BenchStrategy::Hardware,
        other => return Err(PyValueError::new_err(format!("unknown strategy: {other}"))),
    };
    bench::count_primes(limit, strategy).map_err(err)
}

#[pymodule]
fn fastrem(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyUnsignedFastDivisor>()?;
    m.add_class::<PySignedFastDivisor>()?;
    m.add_class::<PyGmwDivisor>()?;
    m.add_class::<PyGmDivisibility>()?;
    m.add_class::<PyMagicParameters>()?;
    m.add_function(wrap_pyfunction!(minimal_unsigned_params, m)?)?;
    m.add_function(wrap_pyfunction!(convenient_unsigned_params, m)?)?;
    m.add_function(wrap_pyfunction!(minimal_signed_params, m)?)?;
    m.add_function(wrap_pyfunction!(convenient_signed_params, m)?)?;
    m.add_function(wrap_pyfunction!(multiplicative_inverse, m)?)?;
    m.add_function(wrap_pyfunction!(count_primes, m)?)?;
    Ok(())
}
