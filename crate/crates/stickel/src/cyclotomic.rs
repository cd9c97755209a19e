//! The cyclotomic quotient ring F_q[Y]/<1 + Y + ... + Y^{r-1}> hosting a
//! "virtual" root of unity when zeta_r does not exist in F_q.
//!
//! The ring is semisimple but generally not a field; inversion can fail on
//! zero divisors, which the resultant machinery tolerates by falling back to
//! division-free elimination. The automorphisms rho_a fix F_q and send
//! zeta to zeta^a; their common fixed ring is F_q.

use crate::arith::{nat, Natural};
use num_traits::Zero;
use crate::error::{Error, Result};
use crate::field::{Field, Rep};
use crate::poly::Poly;
use crate::ring::CoeffRing;

/// Element of F_q[zeta]: coefficients of 1, zeta, ..., zeta^{r-2}.
#[derive(Debug, Clone, PartialEq)]
pub struct CycElem {
    pub(crate) coeffs: Vec<Rep>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CycRing {
    base: Field,
    r: u64,
}

impl CycRing {
    /// Requires prime r with r not dividing q (so Phi_r stays separable).
    pub fn new(base: Field, r: u64) -> Result<Self> {
        if r < 2 || !crate::arith::is_prime(&nat(r)) {
            return Err(Error::PreconditionViolated(format!("r = {r} is not prime")));
        }
        if (base.characteristic() % nat(r)).is_zero() {
            return Err(Error::PreconditionViolated(format!(
                "r = {r} equals the field characteristic"
            )));
        }
        Ok(CycRing { base, r })
    }

    pub fn base(&self) -> &Field {
        &self.base
    }

    pub fn r(&self) -> u64 {
        self.r
    }

    pub fn dim(&self) -> usize {
        (self.r - 1) as usize
    }

    /// The class of Y: the virtual zeta. For r = 2 this is the constant -1.
    pub fn zeta(&self) -> CycElem {
        let mut coeffs = vec![self.base.zero(); self.dim()];
        if self.r == 2 {
            coeffs[0] = self.base.neg(&self.base.one());
        } else {
            coeffs[1] = self.base.one();
        }
        CycElem { coeffs }
    }

    /// zeta^i for any integer exponent (negative exponents via i mod r).
    pub fn zeta_pow(&self, i: i64) -> CycElem {
        let r = self.r as i64;
        let e = i.rem_euclid(r) as u64;
        self.pow(&self.zeta(), &nat(e))
    }

    pub fn embed_base(&self, a: &Rep) -> CycElem {
        let mut coeffs = vec![self.base.zero(); self.dim()];
        coeffs[0] = a.clone();
        CycElem { coeffs }
    }

    /// Lifts a polynomial over F_q to a polynomial over the ring.
    pub fn embed_poly(&self, f: &Poly<Field>) -> Result<Poly<CycRing>> {
        if f.ring() != &self.base {
            return Err(Error::ContextMismatch);
        }
        let coeffs = f.coeffs().iter().map(|c| self.embed_base(c)).collect();
        Ok(Poly::from_coeffs(self, coeffs))
    }

    /// Phi_r = 1 + Y + ... + Y^{r-1} as a polynomial over the base field.
    pub fn phi_poly(&self) -> Poly<Field> {
        Poly::from_coeffs(&self.base, vec![self.base.one(); self.r as usize])
    }

    fn elem_as_poly(&self, v: &CycElem) -> Poly<Field> {
        Poly::from_coeffs(&self.base, v.coeffs.clone())
    }

    fn elem_from_poly(&self, p: Poly<Field>) -> CycElem {
        let mut coeffs = p.coeffs().to_vec();
        debug_assert!(coeffs.len() <= self.dim());
        coeffs.resize(self.dim(), self.base.zero());
        CycElem { coeffs }
    }

    /// Folds coefficients of 1, Y, ..., Y^{r-1} into the reduced basis using
    /// Y^{r-1} = -(1 + Y + ... + Y^{r-2}).
    fn reduce_length_r(&self, acc: Vec<Rep>) -> CycElem {
        debug_assert_eq!(acc.len(), self.r as usize);
        let top = &acc[self.dim()];
        let coeffs = acc[..self.dim()]
            .iter()
            .map(|c| self.base.sub(c, top))
            .collect();
        CycElem { coeffs }
    }

    /// The ring automorphism zeta -> zeta^a, extended linearly; a in F_r*.
    pub fn apply_automorphism(&self, v: &CycElem, a: u64) -> CycElem {
        assert!(a >= 1 && a < self.r, "automorphism index must lie in F_r*");
        let mut acc = vec![self.base.zero(); self.r as usize];
        for (i, c) in v.coeffs.iter().enumerate() {
            let target = (a as usize * i) % self.r as usize;
            acc[target] = self.base.add(&acc[target], c);
        }
        self.reduce_length_r(acc)
    }

    /// v is fixed by the whole automorphism group iff v lies in F_q.
    pub fn is_fixed_by_all(&self, v: &CycElem) -> bool {
        (1..self.r).all(|a| self.apply_automorphism(v, a) == *v)
    }

    /// Constant-vector test; by [the fixed-ring property] equivalent to
    /// `is_fixed_by_all` and used to cross-check it.
    pub fn is_base_constant(&self, v: &CycElem) -> bool {
        v.coeffs[1..].iter().all(|c| self.base.is_zero(c))
    }
}

impl CoeffRing for CycRing {
    type Elem = CycElem;

    fn zero(&self) -> CycElem {
        CycElem { coeffs: vec![self.base.zero(); self.dim()] }
    }

    fn one(&self) -> CycElem {
        self.embed_base(&self.base.one())
    }

    fn add(&self, a: &CycElem, b: &CycElem) -> CycElem {
        CycElem {
            coeffs: a
                .coeffs
                .iter()
                .zip(&b.coeffs)
                .map(|(x, y)| self.base.add(x, y))
                .collect(),
        }
    }

    fn sub(&self, a: &CycElem, b: &CycElem) -> CycElem {
        CycElem {
            coeffs: a
                .coeffs
                .iter()
                .zip(&b.coeffs)
                .map(|(x, y)| self.base.sub(x, y))
                .collect(),
        }
    }

    fn neg(&self, a: &CycElem) -> CycElem {
        CycElem { coeffs: a.coeffs.iter().map(|x| self.base.neg(x)).collect() }
    }

    fn mul(&self, a: &CycElem, b: &CycElem) -> CycElem {
        // cyclic convolution via Y^r = 1, then eliminate Y^{r-1}
        let mut acc = vec![self.base.zero(); self.r as usize];
        for (i, x) in a.coeffs.iter().enumerate() {
            if self.base.is_zero(x) {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                let target = (i + j) % self.r as usize;
                let t = self.base.mul(x, y);
                acc[target] = self.base.add(&acc[target], &t);
            }
        }
        self.reduce_length_r(acc)
    }

    fn inv(&self, a: &CycElem) -> Result<CycElem> {
        let pa = self.elem_as_poly(a);
        let phi = self.phi_poly();
        let (g, s, _) = pa.extended_gcd(&phi)?;
        if !g.is_constant() || g.is_zero() {
            return Err(Error::NotInvertible("zero divisor in the cyclotomic ring".into()));
        }
        Ok(self.elem_from_poly(s.rem(&phi)?))
    }

    fn from_natural(&self, n: &Natural) -> CycElem {
        self.embed_base(&self.base.from_natural(n))
    }

    fn is_field(&self) -> bool {
        false
    }

    fn fmt_elem(&self, e: &CycElem) -> String {
        let inner: Vec<String> = e.coeffs.iter().map(|c| self.base.fmt_elem(c)).collect();
        format!("[{}]", inner.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(p: u64, r: u64) -> CycRing {
        CycRing::new(Field::prime(nat(p)).unwrap(), r).unwrap()
    }

    #[test]
    fn zeta_has_order_r() {
        for (p, r) in [(2u64, 3u64), (3, 5), (2, 7), (5, 2), (13, 3)] {
            let cr = ring(p, r);
            let z = cr.zeta();
            let mut acc = z.clone();
            for _ in 1..r {
                assert_ne!(acc, cr.one());
                acc = cr.mul(&acc, &z);
            }
            assert_eq!(acc, cr.one());
        }
    }

    #[test]
    fn automorphism_examples() {
        let cr = ring(2, 3);
        let z = cr.zeta();
        // rho_1 is the identity
        assert_eq!(cr.apply_automorphism(&z, 1), z);
        // r=3: rho_2(zeta) = zeta^2 = -1 - zeta
        let img = cr.apply_automorphism(&z, 2);
        let expect = cr.neg(&cr.add(&cr.one(), &z));
        assert_eq!(img, expect);
        // automorphisms preserve the order of zeta
        let mut acc = img.clone();
        for _ in 1..3 {
            assert_ne!(acc, cr.one());
            acc = cr.mul(&acc, &img);
        }
        assert_eq!(acc, cr.one());
    }

    #[test]
    fn automorphisms_are_ring_homs() {
        let cr = ring(3, 5);
        let sample = |k: u64| {
            let mut coeffs = Vec::new();
            for i in 0..cr.dim() as u64 {
                coeffs.push(cr.base().from_natural(&nat((k * 7 + i * 3 + 1) % 3)));
            }
            CycElem { coeffs }
        };
        for a in 1..5u64 {
            for i in 0..4u64 {
                for j in 0..4u64 {
                    let x = sample(i);
                    let y = sample(j);
                    let lhs = cr.apply_automorphism(&cr.mul(&x, &y), a);
                    let rhs = cr.mul(
                        &cr.apply_automorphism(&x, a),
                        &cr.apply_automorphism(&y, a),
                    );
                    assert_eq!(lhs, rhs);
                    let lhs = cr.apply_automorphism(&cr.add(&x, &y), a);
                    let rhs = cr.add(
                        &cr.apply_automorphism(&x, a),
                        &cr.apply_automorphism(&y, a),
                    );
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn fixed_ring_is_the_base_field() {
        let cr = ring(2, 7);
        // constants are fixed
        let c = cr.embed_base(&cr.base().one());
        assert!(cr.is_fixed_by_all(&c));
        assert!(cr.is_base_constant(&c));
        // zeta is not fixed for r > 2
        assert!(!cr.is_fixed_by_all(&cr.zeta()));
        // exhaustive agreement over F_2: fixed <=> constant vector
        for bits in 0..(1u64 << 6) {
            let coeffs: Vec<Rep> = (0..6)
                .map(|i| cr.base().from_natural(&nat((bits >> i) & 1)))
                .collect();
            let v = CycElem { coeffs };
            assert_eq!(cr.is_fixed_by_all(&v), cr.is_base_constant(&v));
        }
    }

    #[test]
    fn inversion_and_zero_divisors() {
        // e = 1 case: F_13[Y]/Phi_3 splits, so zeta - eta is a zero divisor
        let cr = ring(13, 3);
        let z = cr.zeta();
        // zeta itself is a unit (order 3)
        let zi = cr.inv(&z).unwrap();
        assert_eq!(cr.mul(&z, &zi), cr.one());
        // Y - 3 is a zero divisor since 3 is a cube root of unity mod 13
        let mut coeffs = vec![cr.base().neg(&cr.base().from_natural(&nat(3)))];
        coeffs.push(cr.base().one());
        let zd = CycElem { coeffs };
        assert!(cr.inv(&zd).is_err());
    }

    #[test]
    fn zeta_pow_negative_exponents() {
        let cr = ring(2, 3);
        let z = cr.zeta();
        assert_eq!(cr.mul(&z, &cr.zeta_pow(-1)), cr.one());
        assert_eq!(cr.zeta_pow(3), cr.one());
        assert_eq!(cr.zeta_pow(-2), cr.zeta_pow(1));
    }
}
