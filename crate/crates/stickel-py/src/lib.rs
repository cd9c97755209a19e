//! Python bindings: explicit finite fields and elements as classes, plus the
//! headline operations (factor-count witnesses, resolvent nonresidues, r-th
//! roots, r-power field towers, experiment tables) as module functions.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use stickel::arith::nat;
use stickel::error::Error;
use stickel::field::{
    self, chi_r, descriptor_string, is_nonresidue, parse_descriptor, Field, FqElement,
};
use stickel::poly::Poly;

use stickel::roots::DEFAULT_TRIAL_CAP;
use stickel::Natural;

fn err(e: Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse_nat(s: &str) -> PyResult<Natural> {
    Natural::parse_bytes(s.trim().as_bytes(), 10)
        .ok_or_else(|| PyValueError::new_err(format!("bad integer '{s}'")))
}

/// An explicit finite field (a prime field or a tower extension).
#[pyclass(name = "Field", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyField {
    inner: Field,
}

#[pymethods]
impl PyField {
    /// Field(p): the prime field F_p (p given as int-like decimal string or int).
    #[new]
    fn new(p: &Bound<'_, PyAny>) -> PyResult<Self> {
        let p = if let Ok(v) = p.extract::<u64>() {
            nat(v)
        } else {
            parse_nat(&p.extract::<String>()?)?
        };
        Ok(PyField { inner: Field::prime(p).map_err(err)? })
    }

    /// Extends by a monic irreducible polynomial (text form, e.g. "x^2+1").
    fn extend(&self, poly: &str) -> PyResult<PyField> {
        let h = Poly::parse(&self.inner, poly).map_err(err)?;
        Ok(PyField { inner: self.inner.extend(&h).map_err(err)? })
    }

    fn characteristic(&self) -> String {
        self.inner.characteristic().to_string()
    }

    fn size(&self) -> String {
        self.inner.size().to_string()
    }

    fn degree(&self) -> usize {
        self.inner.total_degree()
    }

    /// The descriptor text format (round-trips through parse_descriptor).
    fn descriptor(&self) -> String {
        descriptor_string(&self.inner)
    }

    /// Element from its polynomial expression in the top generator.
    fn element(&self, text: &str) -> PyResult<PyElement> {
        if self.inner.is_prime_field() {
            let poly = Poly::parse(&self.inner, text).map_err(err)?;
            if poly.degree().unwrap_or(0) > 0 {
                return Err(PyValueError::new_err(
                    "prime-field element must be constant",
                ));
            }
            return Ok(PyElement { inner: self.inner.element(poly.coeff(0)) });
        }
        let parent = self.inner.parent().unwrap().clone();
        let poly = Poly::parse(&parent, text).map_err(err)?;
        Ok(PyElement { inner: self.inner.class_of(&poly).map_err(err)? })
    }

    /// Element number `index` in the deterministic enumeration.
    fn element_at(&self, index: &str) -> PyResult<PyElement> {
        Ok(PyElement { inner: self.inner.element_from_index(&parse_nat(index)?) })
    }

    /// Deterministic sieve for a monic irreducible of the given degree.
    fn find_irreducible(&self, degree: usize) -> PyResult<String> {
        let h = field::find_irreducible(&self.inner, degree, DEFAULT_TRIAL_CAP)
            .map_err(err)?;
        Ok(h.to_string())
    }

    fn is_irreducible(&self, poly: &str) -> PyResult<bool> {
        let f = Poly::parse(&self.inner, poly).map_err(err)?;
        field::is_irreducible(&f).map_err(err)
    }

    fn __repr__(&self) -> String {
        self.inner.describe()
    }

    fn __eq__(&self, other: &PyField) -> bool {
        self.inner == other.inner
    }
}

/// An element of an explicit finite field.
#[pyclass(name = "Element", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyElement {
    inner: FqElement,
}

#[pymethods]
impl PyElement {
    fn field(&self) -> PyField {
        PyField { inner: self.inner.field().clone() }
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    fn __add__(&self, other: &PyElement) -> PyResult<PyElement> {
        self.check(other)?;
        Ok(PyElement { inner: self.inner.add(&other.inner) })
    }

    fn __sub__(&self, other: &PyElement) -> PyResult<PyElement> {
        self.check(other)?;
        Ok(PyElement { inner: self.inner.sub(&other.inner) })
    }

    fn __mul__(&self, other: &PyElement) -> PyResult<PyElement> {
        self.check(other)?;
        Ok(PyElement { inner: self.inner.mul(&other.inner) })
    }

    fn inverse(&self) -> PyResult<PyElement> {
        Ok(PyElement { inner: self.inner.inv().map_err(err)? })
    }

    /// self^e for a decimal exponent of any size.
    fn pow(&self, e: &str) -> PyResult<PyElement> {
        Ok(PyElement { inner: self.inner.pow(&parse_nat(e)?) })
    }

    /// The character value self^{(q-1)/r}.
    fn chi_r(&self, r: u64) -> PyResult<PyElement> {
        Ok(PyElement { inner: chi_r(&self.inner, &nat(r)).map_err(err)? })
    }

    fn is_nonresidue(&self, r: u64) -> PyResult<bool> {
        is_nonresidue(&self.inner, &nat(r)).map_err(err)
    }

    fn __eq__(&self, other: &PyElement) -> bool {
        self.inner == other.inner
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Element({} in {})", self.inner, self.inner.field().describe())
    }
}

impl PyElement {
    fn check(&self, other: &PyElement) -> PyResult<()> {
        if self.inner.field() != other.inner.field() {
            return Err(PyValueError::new_err("elements of different fields"));
        }
        Ok(())
    }
}

/// Parses the field descriptor text format.
#[pyfunction]
fn descriptor(text: &str) -> PyResult<PyField> {
    Ok(PyField { inner: parse_descriptor(text).map_err(err)? })
}

/// Distinct-degree factor table of a monic squarefree polynomial:
/// [(degree, count, block)].
#[pyfunction]
fn ddf(field: &PyField, poly: &str) -> PyResult<Vec<(usize, usize, String)>> {
    let f = Poly::parse(&field.inner, poly).map_err(err)?.monic().map_err(err)?;
    let dec = stickel::factor::ddf(&f).map_err(err)?;
    Ok(dec
        .parts
        .iter()
        .map(|p| (p.degree, p.count, p.product.to_string()))
        .collect())
}

/// The smallest qualifying factor block for r, as (d, count, block), or None.
#[pyfunction]
fn check_property1(
    field: &PyField,
    poly: &str,
    r: u64,
) -> PyResult<Option<(usize, usize, String)>> {
    let f = Poly::parse(&field.inner, poly).map_err(err)?;
    Ok(stickel::factor::check_property1(&f, r)
        .map_err(err)?
        .map(|w| (w.d, w.count, w.block.to_string())))
}

/// Stickelberger's sign (-1)^{n-s} of a monic squarefree polynomial.
#[pyfunction]
fn stickelberger_sign(field: &PyField, poly: &str) -> PyResult<i8> {
    let f = Poly::parse(&field.inner, poly).map_err(err)?;
    stickel::factor::stickelberger_sign(&f).map_err(err)
}

#[pyfunction]
fn discriminant(field: &PyField, poly: &str) -> PyResult<PyElement> {
    let f = Poly::parse(&field.inner, poly).map_err(err)?;
    let d = stickel::resultant::discriminant(&f).map_err(err)?;
    Ok(PyElement { inner: field.inner.element(d) })
}

/// Swan's closed-form trinomial discriminant of x^n + a x^k + b; n and k are
/// decimal strings so the degree may be astronomically large.
#[pyfunction]
fn swan_discriminant(
    field: &PyField,
    n: &str,
    k: &str,
    a: &PyElement,
    b: &PyElement,
) -> PyResult<PyElement> {
    let d = stickel::resultant::swan_trinomial_discriminant(
        &field.inner,
        &parse_nat(n)?,
        &parse_nat(k)?,
        &a.inner,
        &b.inner,
    )
    .map_err(err)?;
    Ok(PyElement { inner: d })
}

#[pyfunction]
fn resultant(field: &PyField, f: &str, g: &str) -> PyResult<PyElement> {
    let f = Poly::parse(&field.inner, f).map_err(err)?;
    let g = Poly::parse(&field.inner, g).map_err(err)?;
    let r = stickel::resultant::sylvester_resultant(&f, &g).map_err(err)?;
    Ok(PyElement { inner: field.inner.element(r) })
}

/// First primitive r-th root of unity found by the deterministic scan.
#[pyfunction]
fn find_zeta(field: &PyField, r: u64) -> PyResult<PyElement> {
    Ok(PyElement {
        inner: stickel::roots::find_zeta_bruteforce(&field.inner, r, DEFAULT_TRIAL_CAP)
            .map_err(err)?,
    })
}

/// r-th nonresidue in the target field from a qualifying witness polynomial
/// over its prime field (resolvent construction, auto zeta).
#[pyfunction]
fn nonresidue(witness: &str, r: u64, target: &PyField) -> PyResult<PyElement> {
    let prime = target.inner.prime_subfield();
    let f = Poly::parse(&prime, witness).map_err(err)?;
    let out = stickel::roots::bims_any_zeta(&f, r, &target.inner, DEFAULT_TRIAL_CAP)
        .map_err(err)?;
    Ok(PyElement { inner: out })
}

/// Deterministic r-th root of a residue (scanned nonresidue + digit descent).
#[pyfunction]
fn rth_root(value: &PyElement, r: u64) -> PyResult<PyElement> {
    let field = value.inner.field().clone();
    if value.inner.is_zero() {
        return Ok(value.clone());
    }
    let eta = stickel::roots::find_nonresidue_bruteforce(&field, r, DEFAULT_TRIAL_CAP)
        .map_err(err)?;
    let ctx = stickel::roots::RootContext::new(field, r, eta).map_err(err)?;
    Ok(PyElement { inner: stickel::roots::amm_rth_root(&ctx, &value.inner).map_err(err)? })
}

/// The full pipeline of the root corollary: resolvent nonresidue from the
/// field's own minimal polynomial, then the digit descent.
#[pyfunction]
fn cor13_root(value: &PyElement, r: u64) -> PyResult<PyElement> {
    Ok(PyElement {
        inner: stickel::roots::cor13_pipeline(r, &value.inner, DEFAULT_TRIAL_CAP)
            .map_err(err)?,
    })
}

/// Verified irreducible of degree r^e over the base field, built from a
/// qualifying witness (binomial shortcut or the cyclotomic-ring tower).
#[pyfunction]
fn build_rpower_field(base: &PyField, r: u64, e: u32, witness: &str) -> PyResult<String> {
    let f = Poly::parse(&base.inner, witness).map_err(err)?;
    let h = stickel::teichmuller::build_rpower_field(
        &base.inner,
        r,
        e,
        &f,
        DEFAULT_TRIAL_CAP,
    )
    .map_err(err)?;
    Ok(h.to_string())
}

/// [(p, n(p, r))] for primes p <= pmax with r | p-1.
#[pyfunction]
fn least_nonresidue_table(r: u64, pmax: u64) -> PyResult<Vec<(u64, u64)>> {
    let rows = stickel::experiments::least_nonresidue_table(r, pmax).map_err(err)?;
    Ok(rows.into_iter().map(|row| (row.p, row.n)).collect())
}

/// (n, k, a, b, first_hit_index) of a qualifying trinomial.
type TrinomialHit = (u64, u64, u64, u64, u64);

/// First qualifying trinomial in the log^2 p box, or None.
#[pyfunction]
#[pyo3(signature = (p, bound=None))]
fn trinomial_search(p: u64, bound: Option<u64>) -> PyResult<Option<TrinomialHit>> {
    let report = stickel::experiments::trinomial_search(p, bound, false).map_err(err)?;
    Ok(report
        .first_hit
        .map(|(n, k, a, b)| (n, k, a, b, report.first_hit_index.unwrap())))
}

#[pymodule]
fn stickel_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyField>()?;
    m.add_class::<PyElement>()?;
    m.add_function(wrap_pyfunction!(descriptor, m)?)?;
    m.add_function(wrap_pyfunction!(ddf, m)?)?;
    m.add_function(wrap_pyfunction!(check_property1, m)?)?;
    m.add_function(wrap_pyfunction!(stickelberger_sign, m)?)?;
    m.add_function(wrap_pyfunction!(discriminant, m)?)?;
    m.add_function(wrap_pyfunction!(swan_discriminant, m)?)?;
    m.add_function(wrap_pyfunction!(resultant, m)?)?;
    m.add_function(wrap_pyfunction!(find_zeta, m)?)?;
    m.add_function(wrap_pyfunction!(nonresidue, m)?)?;
    m.add_function(wrap_pyfunction!(rth_root, m)?)?;
    m.add_function(wrap_pyfunction!(cor13_root, m)?)?;
    m.add_function(wrap_pyfunction!(build_rpower_field, m)?)?;
    m.add_function(wrap_pyfunction!(least_nonresidue_table, m)?)?;
    m.add_function(wrap_pyfunction!(trinomial_search, m)?)?;
    Ok(())
}
