//! Resultants via the Sylvester determinant, discriminants, and the closed
//! form for trinomial discriminants.
//!
//! The Sylvester determinant is the normative definition here; for monic f
//! it coincides with the product of g over the roots of f, which is all the
//! resolvent machinery relies on.

use num_integer::Integer;
use num_traits::Zero;

use crate::arith::{nat, Natural};
use crate::error::{Error, Result};
use crate::field::{Field, FqElement};
use crate::linalg::{self, Matrix};
use crate::poly::Poly;
use crate::ring::CoeffRing;

/// The order-(m+n) Sylvester matrix of f (degree m) and g (degree n):
/// n columns of downward-shifted f coefficients followed by m columns of
/// downward-shifted g coefficients.
pub fn sylvester_matrix<R: CoeffRing>(f: &Poly<R>, g: &Poly<R>) -> Result<Matrix<R::Elem>> {
    if f.ring() != g.ring() {
        return Err(Error::ContextMismatch);
    }
    let (Some(m), Some(n)) = (f.degree(), g.degree()) else {
        return Err(Error::PreconditionViolated(
            "Sylvester matrix of the zero polynomial".into(),
        ));
    };
    let ring = f.ring();
    let order = m + n;
    let mut mat = vec![vec![ring.zero(); order]; order];
    for col in 0..n {
        for j in 0..=m {
            mat[col + j][col] = f.coeff(m - j);
        }
    }
    for col in 0..m {
        for j in 0..=n {
            mat[col + j][n + col] = g.coeff(n - j);
        }
    }
    Ok(mat)
}

/// R(f, g) as the Sylvester determinant. By convention the resultant against
/// the zero polynomial is zero.
pub fn sylvester_resultant<R: CoeffRing>(f: &Poly<R>, g: &Poly<R>) -> Result<R::Elem> {
    if f.ring() != g.ring() {
        return Err(Error::ContextMismatch);
    }
    let ring = f.ring();
    if f.is_zero() || g.is_zero() {
        return Ok(ring.zero());
    }
    let mat = sylvester_matrix(f, g)?;
    linalg::determinant(ring, mat)
}

fn minus_one_pow<R: CoeffRing>(ring: &R, odd: bool) -> R::Elem {
    if odd {
        ring.neg(&ring.one())
    } else {
        ring.one()
    }
}

/// Delta(f) = (-1)^{m(m-1)/2} a_m^{-1} R(f, f').
pub fn discriminant<R: CoeffRing>(f: &Poly<R>) -> Result<R::Elem> {
    let m = match f.degree() {
        Some(m) if m >= 1 => m,
        _ => {
            return Err(Error::DegreeTooSmall(
                "discriminant needs a nonconstant polynomial".into(),
            ))
        }
    };
    let ring = f.ring();
    let fp = f.derivative();
    if fp.is_zero() {
        // inseparable: every root repeated
        return Ok(ring.zero());
    }
    let r = sylvester_resultant(f, &fp)?;
    let lead_inv = ring.inv(f.leading().unwrap())?;
    let sign = minus_one_pow(ring, (m * (m - 1) / 2) % 2 == 1);
    Ok(ring.mul(&sign, &ring.mul(&lead_inv, &r)))
}

/// Swan's closed form for Delta(x^n + a x^k + b) with d = gcd(n,k),
/// n = n1 d, k = k1 d:
///
///   (-1)^{n(n-1)/2} b^{k-1} E^d,
///   E = n^{n1} b^{n1-k1} + (-1)^{n1+1} (n-k)^{n1-k1} k^{k1} a^{n1}.
///
/// Exponents stay as naturals, so the degree n may be exponentially large.
pub fn swan_trinomial_discriminant(
    field: &Field,
    n: &Natural,
    k: &Natural,
    a: &FqElement,
    b: &FqElement,
) -> Result<FqElement> {
    if n <= k || k.is_zero() {
        return Err(Error::PreconditionViolated(
            "trinomial requires n > k > 0".into(),
        ));
    }
    if a.is_zero() || b.is_zero() {
        return Err(Error::PreconditionViolated(
            "trinomial coefficients must be nonzero".into(),
        ));
    }
    let d = n.gcd(k);
    let n1 = n / &d;
    let k1 = k / &d;
    let nk = n - k;

    let pow_nat = |base: &Natural, e: &Natural| -> FqElement {
        field.element(field.pow(&field.from_natural(base), e))
    };
    let term1 = pow_nat(n, &n1).mul(&b.pow(&(&n1 - &k1)));
    let n1_plus_1_odd = (&n1 + 1u32).is_odd();
    let sign_e = field.element(minus_one_pow(field, n1_plus_1_odd));
    let term2 = sign_e
        .mul(&pow_nat(&nk, &(&n1 - &k1)))
        .mul(&pow_nat(k, &k1))
        .mul(&a.pow(&n1));
    let e_val = term1.add(&term2);

    // parity of n(n-1)/2: odd exactly when n = 2, 3 (mod 4)
    let n_mod_4 = (n % nat(4)).to_u32_digits().first().copied().unwrap_or(0);
    let sign = field.element(minus_one_pow(field, n_mod_4 == 2 || n_mod_4 == 3));
    Ok(sign.mul(&b.pow(&(k - 1u32))).mul(&e_val.pow(&d)))
}
