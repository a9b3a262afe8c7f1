//! Python bindings: torus knots, staircases, exact piecewise-linear Upsilon
//! functions, and the certificate engine. Rational values cross the boundary
//! as (numerator, denominator) pairs of Python ints.

use num::{BigInt, BigRational};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use concordance::emit::{pl_to_csv, pl_to_json, pl_to_svg};
use concordance::order::verify_json_document;
use concordance::{order, FamilyRule};

fn err(e: concordance::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn rational_pair(r: &BigRational) -> (BigInt, BigInt) {
    (r.numer().clone(), r.denom().clone())
}

/// The torus knot T(p,q) with 1 <= p < q and gcd(p,q) = 1.
#[pyclass(frozen, eq, hash, skip_from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct TorusKnot {
    inner: concordance::TorusKnot,
}

#[pymethods]
impl TorusKnot {
    #[new]
    fn new(p: u64, q: u64) -> PyResult<Self> {
        Ok(Self {
            inner: concordance::TorusKnot::new(p, q).map_err(err)?,
        })
    }

    #[getter]
    fn p(&self) -> u64 {
        self.inner.p()
    }

    #[getter]
    fn q(&self) -> u64 {
        self.inner.q()
    }

    fn is_unknot(&self) -> bool {
        self.inner.is_unknot()
    }

    fn genus(&self) -> u64 {
        self.inner.genus()
    }

    fn conductor(&self) -> u64 {
        self.inner.conductor()
    }

    /// Membership of n in the semigroup <p,q>.
    fn semigroup_contains(&self, n: i64) -> bool {
        self.inner.semigroup().contains(n)
    }

    /// The gaps of <p,q>, in increasing order.
    fn semigroup_gaps(&self) -> Vec<u64> {
        self.inner.semigroup().gaps()
    }

    fn staircase(&self) -> Staircase {
        Staircase {
            inner: concordance::Staircase::of(&self.inner),
        }
    }

    fn upsilon(&self) -> PLFunction {
        PLFunction {
            inner: concordance::upsilon_torus(&self.inner),
        }
    }

    fn __repr__(&self) -> String {
        self.inner.to_string()
    }
}

/// The staircase complex of a torus knot, encoded by its step vector.
#[pyclass(frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct Staircase {
    inner: concordance::Staircase,
}

#[pymethods]
impl Staircase {
    fn entries(&self) -> Vec<u64> {
        self.inner.entries().to_vec()
    }

    fn is_trivial(&self) -> bool {
        self.inner.is_trivial()
    }

    fn genus(&self) -> u64 {
        self.inner.genus()
    }

    fn conductor(&self) -> u64 {
        self.inner.conductor()
    }

    /// Hom's a-tuple; raises for the trivial staircase.
    fn a_tuple(&self) -> PyResult<Vec<i64>> {
        Ok(self.inner.a_tuple().map_err(err)?.entries().to_vec())
    }

    fn alexander_exponents(&self) -> Vec<u64> {
        self.inner.alexander_exponents()
    }

    fn epsilon(&self) -> i8 {
        self.inner.epsilon().value()
    }

    fn has_prefix(&self, pattern: Vec<u64>) -> bool {
        self.inner.has_prefix(&pattern)
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __repr__(&self) -> String {
        self.inner.to_string()
    }
}

/// An exact piecewise-linear function on [0,2].
#[pyclass(frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PLFunction {
    inner: concordance::PLFunction,
}

#[pymethods]
impl PLFunction {
    /// Breakpoint abscissae as (numerator, denominator) pairs.
    fn breakpoints(&self) -> Vec<(BigInt, BigInt)> {
        self.inner.breakpoints().iter().map(rational_pair).collect()
    }

    /// Values at the breakpoints as (numerator, denominator) pairs.
    fn values(&self) -> Vec<(BigInt, BigInt)> {
        self.inner.values().iter().map(rational_pair).collect()
    }

    /// Exact evaluation at num/den; returns a (numerator, denominator) pair.
    #[pyo3(signature = (num, den = None))]
    fn eval(&self, num: BigInt, den: Option<BigInt>) -> PyResult<(BigInt, BigInt)> {
        let den = den.unwrap_or_else(|| BigInt::from(1));
        if den == BigInt::from(0) {
            return Err(PyValueError::new_err("zero denominator"));
        }
        let value = self
            .inner
            .eval(&BigRational::new(num, den))
            .map_err(err)?;
        Ok(rational_pair(&value))
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    fn scale(&self, c: i64) -> Self {
        Self {
            inner: self.inner.scale_i64(c),
        }
    }

    fn __add__(&self, other: &Self) -> Self {
        Self {
            inner: self.inner.add(&other.inner),
        }
    }

    fn __neg__(&self) -> Self {
        Self {
            inner: self.inner.negate(),
        }
    }

    fn to_json(&self) -> PyResult<String> {
        Ok(pl_to_json(&self.inner).map_err(err)?.to_string())
    }

    fn to_csv(&self) -> String {
        pl_to_csv(&self.inner)
    }

    fn to_svg(&self) -> String {
        pl_to_svg(&self.inner)
    }

    fn __repr__(&self) -> String {
        format!("PLFunction[{}]", self.inner)
    }
}

/// Parse a knot expression like "T(9,13) - T(4,9) - T(9,10)" into
/// (p, q, coefficient) triples.
#[pyfunction]
fn parse_sum(text: &str) -> PyResult<Vec<(u64, u64, i64)>> {
    let sum = concordance::parse(text).map_err(err)?;
    Ok(sum
        .terms()
        .map(|(knot, coeff)| (knot.p(), knot.q(), *coeff))
        .collect())
}

/// The Upsilon invariant of a knot expression.
#[pyfunction]
fn upsilon(text: &str) -> PyResult<PLFunction> {
    let sum = concordance::parse(text).map_err(err)?;
    Ok(PLFunction {
        inner: concordance::upsilon_of_sum(&sum),
    })
}

/// Exact check of Upsilon_{T(q,kq+p)} = Upsilon_{T(p,q)} + k*Upsilon_{T(q,q+1)}.
#[pyfunction]
fn check_recursion(q: u64, p: u64, k: u64) -> PyResult<bool> {
    concordance::check_recursion(q, p, k).map_err(err)
}

/// Decompose [[T(p,q)]] = k*[1,p-1,p-1,1] + O; returns
/// (quotient, remainder, branch, verified staircase prefix).
#[pyfunction]
fn decompose(p: u64, q: u64) -> PyResult<(u64, u64, String, Vec<u64>)> {
    let record = concordance::decompose_torus(p, q).map_err(err)?;
    let branch = match record.branch() {
        order::Branch::UnitTail => "unit-tail",
        order::Branch::GeneralTail => "general-tail",
        order::Branch::RefinedTail => "refined-tail",
    };
    Ok((
        record.quotient(),
        record.remainder(),
        branch.to_string(),
        record.prefix().to_vec(),
    ))
}

/// Lower- and upper-bound certificates for T(q,kq+p) - T(p,q) - k*T(q,q+1),
/// as a JSON document {"lower_bound":..., "upper_bound":...}.
#[pyfunction]
fn certify(p: u64, q: u64, k: u64) -> PyResult<String> {
    let lower = concordance::certify_proposition(p, q, k).map_err(err)?;
    let upper = concordance::certify_upper_bound(p, q, k).map_err(err)?;
    let doc = serde_json::json!({
        "lower_bound": lower,
        "upper_bound": upper,
    });
    Ok(serde_json::to_string_pretty(&doc).expect("certificates serialize"))
}

/// Re-verify a certificate document (a bare certificate, a certify pair, or
/// a family document). Raises ValueError if anything fails to check.
#[pyfunction]
fn verify_certificate(text: &str) -> PyResult<usize> {
    verify_json_document(text).map_err(err)
}

type MemberTriples = Vec<(u64, u64, u64)>;

/// Build the default family (p_i = 3^i + 1, q_i = 2*3^i + 3, k_i = 1):
/// returns ([(p, q, k), ...], certificate JSON).
#[pyfunction]
fn build_family(count: usize) -> PyResult<(MemberTriples, String)> {
    let (members, certificate) =
        concordance::build_family(count, &FamilyRule::Default).map_err(err)?;
    let triples = members.iter().map(|m| (m.p, m.q, m.k)).collect();
    Ok((
        triples,
        serde_json::to_string_pretty(&certificate).expect("certificates serialize"),
    ))
}

#[pymodule]
fn concordance_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<TorusKnot>()?;
    m.add_class::<Staircase>()?;
    m.add_class::<PLFunction>()?;
    m.add_function(wrap_pyfunction!(parse_sum, m)?)?;
    m.add_function(wrap_pyfunction!(upsilon, m)?)?;
    m.add_function(wrap_pyfunction!(check_recursion, m)?)?;
    m.add_function(wrap_pyfunction!(decompose, m)?)?;
    m.add_function(wrap_pyfunction!(certify, m)?)?;
    m.add_function(wrap_pyfunction!(verify_certificate, m)?)?;
    m.add_function(wrap_pyfunction!(build_family, m)?)?;
    Ok(())
}
