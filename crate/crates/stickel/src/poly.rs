//! Dense univariate polynomials over a coefficient ring.
//!
//! Coefficients are stored in ascending degree with no trailing zeros; the
//! zero polynomial has an empty coefficient vector. Every polynomial carries
//! its coefficient context and binary operations reject mixed contexts.

use crate::arith::{nat, Natural};
use crate::error::{Error, Result};
use crate::ring::CoeffRing;

#[derive(Debug, Clone, PartialEq)]
pub struct Poly<R: CoeffRing> {
    ring: R,
    coeffs: Vec<R::Elem>,
}

impl<R: CoeffRing> Poly<R> {
    pub fn from_coeffs(ring: &R, mut coeffs: Vec<R::Elem>) -> Self {
        while coeffs.last().is_some_and(|c| ring.is_zero(c)) {
            coeffs.pop();
        }
        Poly { ring: ring.clone(), coeffs }
    }

    pub fn zero(ring: &R) -> Self {
        Poly { ring: ring.clone(), coeffs: Vec::new() }
    }

    pub fn one(ring: &R) -> Self {
        Poly::constant(ring, ring.one())
    }

    pub fn x(ring: &R) -> Self {
        Poly::from_coeffs(ring, vec![ring.zero(), ring.one()])
    }

    pub fn constant(ring: &R, c: R::Elem) -> Self {
        Poly::from_coeffs(ring, vec![c])
    }

    pub fn monomial(ring: &R, c: R::Elem, deg: usize) -> Self {
        let mut coeffs = vec![ring.zero(); deg];
        coeffs.push(c);
        Poly::from_coeffs(ring, coeffs)
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn coeffs(&self) -> &[R::Elem] {
        &self.coeffs
    }

    /// Coefficient of x^i, zero-padded beyond the stored length.
    pub fn coeff(&self, i: usize) -> R::Elem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.ring.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&R::Elem> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| self.ring.is_one(c))
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    fn check_ctx(&self, other: &Self) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::ContextMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_ctx(other)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| self.ring.add(&self.coeff(i), &other.coeff(i)))
            .collect();
        Ok(Poly::from_coeffs(&self.ring, coeffs))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_ctx(other)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| self.ring.sub(&self.coeff(i), &other.coeff(i)))
            .collect();
        Ok(Poly::from_coeffs(&self.ring, coeffs))
    }

    pub fn neg(&self) -> Self {
        let coeffs = self.coeffs.iter().map(|c| self.ring.neg(c)).collect();
        Poly::from_coeffs(&self.ring, coeffs)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_ctx(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Poly::zero(&self.ring));
        }
        let mut coeffs = vec![self.ring.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if self.ring.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                let t = self.ring.mul(a, b);
                coeffs[i + j] = self.ring.add(&coeffs[i + j], &t);
            }
        }
        Ok(Poly::from_coeffs(&self.ring, coeffs))
    }

    pub fn mul_scalar(&self, s: &R::Elem) -> Self {
        let coeffs = self.coeffs.iter().map(|c| self.ring.mul(c, s)).collect();
        Poly::from_coeffs(&self.ring, coeffs)
    }

    /// Euclidean division: self = q*g + rem with deg(rem) < deg(g).
    /// Requires the leading coefficient of g to be invertible.
    pub fn divmod(&self, g: &Self) -> Result<(Self, Self)> {
        self.check_ctx(g)?;
        if g.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let dg = g.degree().unwrap();
        if self.coeffs.len() < g.coeffs.len() {
            return Ok((Poly::zero(&self.ring), self.clone()));
        }
        let lead_inv = self.ring.inv(g.leading().unwrap())?;
        let mut rem = self.coeffs.clone();
        let mut quot = vec![self.ring.zero(); rem.len() - dg];
        for i in (dg..rem.len()).rev() {
            if self.ring.is_zero(&rem[i]) {
                continue;
            }
            let q = self.ring.mul(&rem[i], &lead_inv);
            for (j, gc) in g.coeffs.iter().enumerate() {
                let t = self.ring.mul(&q, gc);
                rem[i - dg + j] = self.ring.sub(&rem[i - dg + j], &t);
            }
            quot[i - dg] = q;
        }
        rem.truncate(dg);
        Ok((
            Poly::from_coeffs(&self.ring, quot),
            Poly::from_coeffs(&self.ring, rem),
        ))
    }

    pub fn rem(&self, g: &Self) -> Result<Self> {
        Ok(self.divmod(g)?.1)
    }

    /// Divides the leading coefficient out.
    pub fn monic(&self) -> Result<Self> {
        match self.leading() {
            None => Ok(self.clone()),
            Some(l) => {
                let li = self.ring.inv(l)?;
                Ok(self.mul_scalar(&li))
            }
        }
    }

    /// Monic greatest common divisor by the Euclidean algorithm; gcd(f, 0) is
    /// monic(f). Coefficients must come from a field.
    pub fn gcd(&self, other: &Self) -> Result<Self> {
        self.check_ctx(other)?;
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Extended Euclid: returns (g, s, t) with s*self + t*other = g, g monic.
    pub fn extended_gcd(&self, other: &Self) -> Result<(Self, Self, Self)> {
        self.check_ctx(other)?;
        let mut r0 = self.clone();
        let mut r1 = other.clone();
        let mut s0 = Poly::one(&self.ring);
        let mut s1 = Poly::zero(&self.ring);
        let mut t0 = Poly::zero(&self.ring);
        let mut t1 = Poly::one(&self.ring);
        while !r1.is_zero() {
            let (q, r) = r0.divmod(&r1)?;
            let s = s0.sub(&q.mul(&s1)?)?;
            let t = t0.sub(&q.mul(&t1)?)?;
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
            t0 = t1;
            t1 = t;
        }
        match r0.leading() {
            None => Ok((r0, s0, t0)),
            Some(l) => {
                let li = self.ring.inv(l)?;
                Ok((r0.mul_scalar(&li), s0.mul_scalar(&li), t0.mul_scalar(&li)))
            }
        }
    }

    /// self^e mod f by square-and-multiply.
    pub fn powmod(&self, e: &Natural, f: &Self) -> Result<Self> {
        use num_traits::Zero;
        self.check_ctx(f)?;
        if f.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut result = Poly::one(&self.ring).rem(f)?;
        if e.is_zero() {
            return Ok(result);
        }
        let mut base = self.rem(f)?;
        let bits = e.bits();
        for i in 0..bits {
            if e.bit(i) {
                result = result.mul(&base)?.rem(f)?;
            }
            if i + 1 < bits {
                base = base.mul(&base)?.rem(f)?;
            }
        }
        Ok(result)
    }

    /// Formal derivative; exponents act through the ring characteristic.
    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| {
                let k = self.ring.from_natural(&nat(i as u64));
                self.ring.mul(c, &k)
            })
            .collect();
        Poly::from_coeffs(&self.ring, coeffs)
    }

    pub fn eval(&self, point: &R::Elem) -> R::Elem {
        let mut acc = self.ring.zero();
        for c in self.coeffs.iter().rev() {
            acc = self.ring.add(&self.ring.mul(&acc, point), c);
        }
        acc
    }

    /// Symbolic rendering such as "x^4+3*x+1", highest degree first.
    pub fn to_string_with_var(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut terms = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if self.ring.is_zero(c) {
                continue;
            }
            let cs = self.ring.fmt_elem(c);
            let term = match i {
                0 => cs,
                1 if self.ring.is_one(c) => var.to_string(),
                1 => format!("{cs}*{var}"),
                _ if self.ring.is_one(c) => format!("{var}^{i}"),
                _ => format!("{cs}*{var}^{i}"),
            };
            terms.push(term);
        }
        terms.join("+")
    }
}

impl<R: CoeffRing> std::fmt::Display for Poly<R> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.to_string_with_var("x"))
    }
}
