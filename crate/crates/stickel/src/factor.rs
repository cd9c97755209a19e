//! Squarefreeness, distinct-degree factorization, and detection of the
//! factor-count property that drives the nonresidue constructions: a
//! squarefree f qualifies for prime r when some degree d with r | d carries
//! a number of irreducible factors not divisible by r.

use num_traits::Zero;

use crate::arith::nat;
use crate::error::{Error, Result};
use crate::field::{chi_r, is_nonresidue, Field, FqElement};
use crate::poly::Poly;
use crate::resolvent::resolvent_sum_poly;
use crate::resultant::sylvester_resultant;
use crate::ring::CoeffRing;

/// One block of a distinct-degree factorization: the product of all
/// irreducible factors of a fixed degree.
#[derive(Debug, Clone, PartialEq)]
pub struct DdfPart {
    pub degree: usize,
    pub product: Poly<Field>,
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DdfDecomposition {
    pub parts: Vec<DdfPart>,
}

impl DdfDecomposition {
    /// Total number of irreducible factors.
    pub fn factor_count(&self) -> usize {
        self.parts.iter().map(|p| p.count).sum()
    }
}

/// A witness that f satisfies the factor-count property for r: the smallest
/// degree d with r | d and r not dividing the count of degree-d factors.
#[derive(Debug, Clone, PartialEq)]
pub struct PropertyWitness {
    pub d: usize,
    pub block: Poly<Field>,
    pub count: usize,
    pub r: u64,
    pub k: usize,
}

/// gcd(f, f') is constant; nonconstant f with f' = 0 is a p-th power and
/// therefore not squarefree.
pub fn is_squarefree(f: &Poly<Field>) -> Result<bool> {
    match f.degree() {
        None | Some(0) => Err(Error::PreconditionViolated(
            "squarefreeness of a constant is undefined".into(),
        )),
        Some(_) => {
            let fp = f.derivative();
            if fp.is_zero() {
                return Ok(false);
            }
            Ok(f.gcd(&fp)?.is_constant())
        }
    }
}

/// Distinct-degree factorization of a monic squarefree polynomial. A
/// remaining factor of degree more than twice the last split degree is
/// itself irreducible and emitted as a final singleton block.
pub fn ddf(f: &Poly<Field>) -> Result<DdfDecomposition> {
    if !f.is_monic() {
        return Err(Error::NotMonic);
    }
    if !is_squarefree(f)? {
        return Err(Error::NotSquarefree);
    }
    let field = f.ring().clone();
    let q = field.size();
    let x = Poly::x(&field);
    let mut rest = f.clone();
    let mut frob = x.rem(&rest)?;
    let mut parts = Vec::new();
    let mut d = 0usize;
    while rest.degree().unwrap_or(0) > 0 && 2 * (d + 1) <= rest.degree().unwrap() {
        d += 1;
        frob = frob.powmod(&q, &rest)?;
        let g = rest.gcd(&frob.sub(&x)?)?;
        if let Some(dg) = g.degree().filter(|&dg| dg > 0) {
            parts.push(DdfPart { degree: d, product: g.clone(), count: dg / d });
            rest = rest.divmod(&g)?.0;
            frob = frob.rem(&rest)?;
        }
    }
    if let Some(dr) = rest.degree().filter(|&dr| dr > 0) {
        parts.push(DdfPart { degree: dr, product: rest, count: 1 });
    }
    Ok(DdfDecomposition { parts })
}

/// Searches the distinct-degree decomposition for the smallest qualifying
/// degree; f is made monic first (the unit is irrelevant to factor counts).
pub fn check_property1(f: &Poly<Field>, r: u64) -> Result<Option<PropertyWitness>> {
    let f = f.monic()?;
    let decomposition = ddf(&f)?;
    for part in &decomposition.parts {
        if part.degree % r as usize == 0 && part.count % r as usize != 0 {
            return Ok(Some(PropertyWitness {
                d: part.degree,
                block: part.product.clone(),
                count: part.count,
                r,
                k: part.degree / r as usize,
            }));
        }
    }
    Ok(None)
}

/// Stickelberger's sign (-1)^{n-s} for a monic squarefree f over an odd
/// prime field: n = deg f, s = number of irreducible factors.
pub fn stickelberger_sign(f: &Poly<Field>) -> Result<i8> {
    if f.ring().characteristic() == &nat(2) {
        return Err(Error::PreconditionViolated(
            "Stickelberger's sign needs odd characteristic".into(),
        ));
    }
    let f = f.monic()?;
    let n = f
        .degree()
        .ok_or_else(|| Error::PreconditionViolated("zero polynomial".into()))?;
    let s = ddf(&f)?.factor_count();
    Ok(if (n + s) % 2 == 0 { 1 } else { -1 })
}

/// For an even-degree extension F_q[x]/<f> with 4 | q-1, the class of f' is
/// a quadratic nonresidue. Returns the witness with the character check
/// already performed.
pub fn derivative_qnr_witness(field: &Field) -> Result<FqElement> {
    let defining = field.defining_poly().ok_or_else(|| {
        Error::PreconditionViolated("need an extension field, not a prime field".into())
    })?;
    let parent = field.parent().unwrap();
    let d = defining.degree().unwrap();
    if d % 2 != 0 {
        return Err(Error::PreconditionViolated(format!(
            "extension degree {d} is odd"
        )));
    }
    let q1 = parent.size() - 1u32;
    if !(&q1 % nat(4)).is_zero() {
        return Err(Error::PreconditionViolated(
            "base field size is not 1 mod 4".into(),
        ));
    }
    let witness = field.class_of(&defining.derivative())?;
    if !is_nonresidue(&witness, &nat(2))? {
        return Err(Error::OrderMismatch(
            "derivative witness is unexpectedly a residue".into(),
        ));
    }
    Ok(witness)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FilterOutcome {
    /// The character test failed, so f is certainly reducible.
    Reducible,
    /// Necessary condition passed; no information (f may still be reducible).
    Inconclusive,
}

/// Necessary condition for irreducibility: if f were irreducible of degree
/// rk, the resultant of f with its Lagrange resolvent sum would be an r-th
/// nonresidue. A trivial character value therefore certifies reducibility.
pub fn irreducibility_filter(
    f: &Poly<Field>,
    r: u64,
    zeta: &FqElement,
) -> Result<FilterOutcome> {
    let field = f.ring().clone();
    let n = f
        .degree()
        .ok_or_else(|| Error::PreconditionViolated("zero polynomial".into()))?;
    if n % r as usize != 0 {
        return Err(Error::PreconditionViolated(format!(
            "r = {r} does not divide deg f = {n}"
        )));
    }
    crate::resolvent::check_resolvent_divisibility(&field, r)?;
    crate::resolvent::check_zeta(&field, r, zeta)?;
    let f = f.monic()?;
    let g = resolvent_sum_poly(&f, r, zeta, n / r as usize)?;
    let res = sylvester_resultant(&f, &g)?;
    if field.is_zero(&res) {
        return Ok(FilterOutcome::Reducible);
    }
    if chi_r(&field.element(res), &nat(r))?.is_one() {
        Ok(FilterOutcome::Reducible)
    } else {
        Ok(FilterOutcome::Inconclusive)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{find_irreducible, is_irreducible};

    fn fp(p: u64) -> Field {
        Field::prime(nat(p)).unwrap()
    }

    fn poly(f: &Field, s: &str) -> Poly<Field> {
        Poly::parse(f, s).unwrap()
    }

    #[test]
    fn squarefree_examples() {
        let f3 = fp(3);
        assert!(!is_squarefree(&poly(&f3, "x^2")).unwrap());
        assert!(is_squarefree(&poly(&f3, "x^2+1")).unwrap());
        // x^p - x has derivative -1
        let f5 = fp(5);
        assert!(is_squarefree(&poly(&f5, "x^5-x")).unwrap());
        // p-th power: derivative vanishes
        assert!(!is_squarefree(&poly(&f5, "x^5")).unwrap());
    }

    #[test]
    fn ddf_examples() {
        let f5 = fp(5);
        let dec = ddf(&poly(&f5, "x^2-1")).unwrap();
        assert_eq!(dec.parts.len(), 1);
        assert_eq!(dec.parts[0].degree, 1);
        assert_eq!(dec.parts[0].count, 2);
        assert_eq!(dec.parts[0].product, poly(&f5, "x^2+4"));

        let f3 = fp(3);
        let dec = ddf(&poly(&f3, "x^2+1")).unwrap();
        assert_eq!(dec.parts.len(), 1);
        assert_eq!(dec.parts[0].degree, 2);
        assert_eq!(dec.parts[0].count, 1);

        let f13 = fp(13);
        let f = find_irreducible(&f13, 4, 100_000).unwrap();
        let dec = ddf(&f).unwrap();
        assert_eq!(dec.parts.len(), 1);
        assert_eq!(dec.parts[0].degree, 4);
        assert_eq!(dec.parts[0].count, 1);
    }

    #[test]
    fn ddf_rejects_bad_inputs() {
        let f5 = fp(5);
        assert!(matches!(ddf(&poly(&f5, "2*x^2+2")), Err(Error::NotMonic)));
        assert!(matches!(ddf(&poly(&f5, "x^2")), Err(Error::NotSquarefree)));
    }

    #[test]
    fn ddf_product_reconstructs() {
        use rand::prelude::*;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(99);
        for p in [3u64, 5, 7, 13] {
            let field = fp(p);
            let mut done = 0;
            while done < 40 {
                let deg = rng.random_range(2..=8usize);
                let mut coeffs: Vec<_> = (0..deg)
                    .map(|_| field.from_natural(&nat(rng.random_range(0..p))))
                    .collect();
                coeffs.push(field.one());
                let f = Poly::from_coeffs(&field, coeffs);
                if !is_squarefree(&f).unwrap() {
                    continue;
                }
                done += 1;
                let dec = ddf(&f).unwrap();
                let mut prod = Poly::one(&field);
                let mut last_d = 0;
                for part in &dec.parts {
                    assert!(part.degree > last_d);
                    last_d = part.degree;
                    assert_eq!(part.product.degree().unwrap() % part.degree, 0);
                    assert_eq!(part.count * part.degree, part.product.degree().unwrap());
                    prod = prod.mul(&part.product).unwrap();
                }
                assert_eq!(prod, f);
            }
        }
    }

    #[test]
    fn property1_examples() {
        let f3 = fp(3);
        let w = check_property1(&poly(&f3, "x^2+1"), 2).unwrap().unwrap();
        assert_eq!((w.d, w.count, w.k), (2, 1, 1));

        // (x^2+2)(x^2+3) over F_5: two irreducible quadratics, count 2 at d=2
        let f5 = fp(5);
        let f = poly(&f5, "x^2+2").mul(&poly(&f5, "x^2+3")).unwrap();
        assert!(check_property1(&f, 2).unwrap().is_none());

        // an irreducible polynomial of degree divisible by r always qualifies
        let f13 = fp(13);
        let f = find_irreducible(&f13, 3, 100_000).unwrap();
        let w = check_property1(&f, 3).unwrap().unwrap();
        assert_eq!((w.d, w.count), (3, 1));
    }

    #[test]
    fn property1_witness_refactors() {
        let f5 = fp(5);
        // block of three distinct irreducible quadratics: d=2, count=3, r=2
        let mut block = Poly::one(&f5);
        let mut found = Vec::new();
        'outer: for b in 0..5u64 {
            for c in 0..5u64 {
                let cand = Poly::from_coeffs(
                    &f5,
                    vec![f5.from_natural(&nat(c)), f5.from_natural(&nat(b)), f5.one()],
                );
                if is_irreducible(&cand).unwrap() && !found.contains(&cand) {
                    found.push(cand.clone());
                    block = block.mul(&cand).unwrap();
                    if found.len() == 3 {
                        break 'outer;
                    }
                }
            }
        }
        let w = check_property1(&block, 2).unwrap().unwrap();
        assert_eq!((w.d, w.count), (2, 3));
        let dec = ddf(&w.block).unwrap();
        assert_eq!(dec.parts.len(), 1);
        assert_eq!(dec.parts[0].count, 3);
        assert_eq!(dec.parts[0].degree, 2);
    }

    #[test]
    fn stickelberger_sign_examples() {
        let f5 = fp(5);
        assert_eq!(stickelberger_sign(&poly(&f5, "x^2+2")).unwrap(), -1);
        assert_eq!(stickelberger_sign(&poly(&f5, "x^2-1")).unwrap(), 1);
        assert_eq!(stickelberger_sign(&poly(&f5, "x+3")).unwrap(), 1);
    }

    #[test]
    fn derivative_witness_examples() {
        let f25 = make_ext(5, "x^2+2");
        let w = derivative_qnr_witness(&f25).unwrap();
        assert!(is_nonresidue(&w, &nat(2)).unwrap());

        let f169 = make_ext(13, "x^2+2");
        assert!(derivative_qnr_witness(&f169).is_ok());

        let f125 = make_ext(5, "x^3+x+1");
        assert!(matches!(
            derivative_qnr_witness(&f125),
            Err(Error::PreconditionViolated(_))
        ));
    }

    fn make_ext(p: u64, s: &str) -> Field {
        let base = fp(p);
        let h = poly(&base, s);
        base.extend(&h).unwrap()
    }

    #[test]
    fn filter_examples() {
        let f5 = fp(5);
        let zeta = f5.element_from_natural(&nat(4));
        let irr = poly(&f5, "x^2+2");
        assert_eq!(
            irreducibility_filter(&irr, 2, &zeta).unwrap(),
            FilterOutcome::Inconclusive
        );
        let red = poly(&f5, "x^2+2").mul(&poly(&f5, "x^2+3")).unwrap();
        assert_eq!(
            irreducibility_filter(&red, 2, &zeta).unwrap(),
            FilterOutcome::Reducible
        );
    }

    #[test]
    fn parity_bridge_negative_sign_implies_witness() {
        use rand::prelude::*;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let mut checked = 0;
        while checked < 300 {
            let p = *[5u64, 13, 17, 29].choose(&mut rng).unwrap();
            let field = fp(p);
            let deg = rng.random_range(2..=6usize);
            let mut coeffs: Vec<_> = (0..deg)
                .map(|_| field.from_natural(&nat(rng.random_range(0..p))))
                .collect();
            coeffs.push(field.one());
            let f = Poly::from_coeffs(&field, coeffs);
            if !is_squarefree(&f).unwrap() {
                continue;
            }
            checked += 1;
            if stickelberger_sign(&f).unwrap() == -1 {
                assert!(check_property1(&f, 2).unwrap().is_some());
            }
        }
    }
}
