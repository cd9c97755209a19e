//! Primitive r-th roots of unity and deterministic r-th root extraction.
//!
//! Root extraction is the payoff: once any r-th nonresidue is known, the
//! generalized Tonelli-Shanks digit procedure inverts the r-power map inside
//! the r-Sylow subgroup of F_q*.

use num_traits::{One, Zero};

use crate::arith::{factor_out_prime_power, mod_inverse, nat, Natural};
use crate::error::{Error, Result};
use crate::field::{chi_r, Field, FqElement};
use crate::resolvent::bims;

/// Default cap on deterministic element scans. The brute-force search is
/// exponential in log q in the worst case; the cap keeps misuse loud.
pub const DEFAULT_TRIAL_CAP: u64 = 1_000_000;

/// First element (in the deterministic enumeration 0, 1, 2, ...) whose
/// character is nontrivial, i.e. an r-th nonresidue.
pub fn find_nonresidue_bruteforce(field: &Field, r: u64, cap: u64) -> Result<FqElement> {
    let q1 = field.size() - 1u32;
    if !(&q1 % nat(r)).is_zero() {
        return Err(Error::RDoesNotDivide(r.to_string(), format!("{}-1", field.size())));
    }
    let mut idx = Natural::zero();
    let q = field.size();
    let mut trials = 0u64;
    while idx < q {
        if trials >= cap {
            return Err(Error::TrialCapExceeded(cap));
        }
        trials += 1;
        let a = field.element_from_index(&idx);
        idx += 1u32;
        if a.is_zero() {
            continue;
        }
        if !chi_r(&a, &nat(r))?.is_one() {
            return Ok(a);
        }
    }
    Err(Error::ConstructionFailed(format!(
        "no r-th nonresidue in {} for r = {r}",
        field.describe()
    )))
}

/// zeta_r := chi_r(a) for the first nonresidue a; the character value of a
/// nonresidue is a nontrivial r-th root of unity, hence of order exactly r.
pub fn find_zeta_bruteforce(field: &Field, r: u64, cap: u64) -> Result<FqElement> {
    let a = find_nonresidue_bruteforce(field, r, cap)?;
    let zeta = chi_r(&a, &nat(r))?;
    debug_assert!(zeta.pow(&nat(r)).is_one());
    Ok(zeta)
}

/// Sze's root-of-unity finder for q - 1 = r^e t with small t: among the
/// first t+1 nonzero elements there is one whose order is a multiple of r;
/// a^t then has r-power order r^s and a^{t r^{s-1}} has order exactly r.
pub fn sze_zeta(field: &Field, r: u64, t_cofactor: &Natural) -> Result<FqElement> {
    let q1 = field.size() - 1u32;
    let (u, e) = factor_out_prime_power(&q1, &nat(r));
    if u != *t_cofactor || e == 0 {
        return Err(Error::BadFactorization);
    }
    let mut idx = Natural::one();
    let bound = t_cofactor + 1u32;
    let mut scanned = Natural::zero();
    while scanned < bound {
        let a = field.element_from_index(&idx);
        idx += 1u32;
        if a.is_zero() {
            continue;
        }
        scanned += 1u32;
        let b = a.pow(t_cofactor);
        if b.is_one() {
            continue;
        }
        // ord(b) = r^s for some 1 <= s <= e
        let mut s = 0u32;
        let mut c = b.clone();
        while !c.is_one() {
            c = c.pow(&nat(r));
            s += 1;
            if s > e {
                return Err(Error::BadFactorization);
            }
        }
        let zeta = b.pow(&nat(r).pow(s - 1));
        debug_assert!(!zeta.is_one() && zeta.pow(&nat(r)).is_one());
        return Ok(zeta);
    }
    Err(Error::ConstructionFailed(
        "scan bound t+1 exhausted without an element of r-divisible order".into(),
    ))
}

/// Reusable data for extracting r-th roots in a fixed field: an r-th
/// nonresidue eta, the decomposition q - 1 = u r^t, the Sylow generator
/// g = eta^u and the table of r-th roots of unity it generates.
#[derive(Debug, Clone)]
pub struct RootContext {
    field: Field,
    r: u64,
    eta: FqElement,
    u: Natural,
    t: u32,
    sylow_gen: FqElement,
    zeta_table: Vec<FqElement>,
}

impl RootContext {
    pub fn new(field: Field, r: u64, eta: FqElement) -> Result<Self> {
        if eta.field() != &field {
            return Err(Error::ContextMismatch);
        }
        let q1 = field.size() - 1u32;
        let (u, t) = factor_out_prime_power(&q1, &nat(r));
        if t == 0 {
            return Err(Error::RDoesNotDivide(r.to_string(), format!("{}-1", field.size())));
        }
        if chi_r(&eta, &nat(r))?.is_one() {
            return Err(Error::PreconditionViolated(
                "eta must be an r-th nonresidue".into(),
            ));
        }
        let sylow_gen = eta.pow(&u);
        let zeta = sylow_gen.pow(&nat(r).pow(t - 1));
        let mut zeta_table = Vec::with_capacity(r as usize);
        let mut z = field.element_from_natural(&nat(1));
        for _ in 0..r {
            zeta_table.push(z.clone());
            z = z.mul(&zeta);
        }
        Ok(RootContext { field, r, eta, u, t, sylow_gen, zeta_table })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn r(&self) -> u64 {
        self.r
    }

    pub fn eta(&self) -> &FqElement {
        &self.eta
    }

    pub fn decomposition(&self) -> (&Natural, u32) {
        (&self.u, self.t)
    }

    /// All r roots of x^r = a given one of them: x, x zeta, ..., x zeta^{r-1}.
    pub fn all_roots(&self, x: &FqElement) -> Vec<FqElement> {
        self.zeta_table.iter().map(|z| x.mul(z)).collect()
    }
}

/// Deterministic r-th root of a residue a: digit-by-digit discrete log in
/// the Sylow subgroup, maintaining a candidate x and the error a x^{-r}.
pub fn amm_rth_root(ctx: &RootContext, a: &FqElement) -> Result<FqElement> {
    if a.field() != &ctx.field {
        return Err(Error::ContextMismatch);
    }
    if a.is_zero() {
        return Ok(a.clone());
    }
    if !chi_r(a, &nat(ctx.r))?.is_one() {
        return Err(Error::NotAResidue);
    }
    // initial guess x = a^lambda with r*lambda = 1 (mod u): the error term
    // a x^{-r} = a^{1 - r lambda} lands in the Sylow subgroup
    let lambda = if ctx.u.is_one() {
        Natural::zero()
    } else {
        mod_inverse(&nat(ctx.r), &ctx.u)?
    };
    let mut x = a.pow(&lambda);
    let mut err = a.mul(&x.pow(&nat(ctx.r)).inv()?);
    if ctx.t >= 2 {
        // g^{r^{j+1}} for the corrections, advanced each level
        let mut g_power = ctx.sylow_gen.clone(); // g^{r^0}
        for j in 0..ctx.t - 1 {
            let level = nat(ctx.r).pow(ctx.t - 2 - j);
            let val = err.pow(&level);
            let digit = ctx
                .zeta_table
                .iter()
                .position(|z| *z == val)
                .ok_or_else(|| {
                    Error::OrderMismatch("error term left the root-of-unity table".into())
                })?;
            if digit != 0 {
                let d = nat(digit as u64);
                x = x.mul(&g_power.pow(&d));
                let correction = g_power.pow(&(nat(ctx.r) * &d)).inv()?;
                err = err.mul(&correction);
            }
            g_power = g_power.pow(&nat(ctx.r));
        }
    }
    if x.pow(&nat(ctx.r)) != *a {
        return Err(Error::OrderMismatch(
            "digit extraction did not converge to a root".into(),
        ));
    }
    Ok(x)
}

/// bims with an automatically found zeta. The resolvent can vanish for
/// degenerate inputs (a defining polynomial whose generator is itself a
/// Frobenius eigenvector, e.g. a binomial), but only for specific primitive
/// roots; since the generator has a nonzero component in some Frobenius
/// eigenspace, one of the r-1 primitive roots always works, so retry over
/// the powers of the found zeta instead of accepting a zero resolvent.
pub fn bims_any_zeta(
    f: &crate::poly::Poly<Field>,
    r: u64,
    target: &Field,
    cap: u64,
) -> Result<FqElement> {
    let prime = target.prime_subfield();
    let zeta = find_zeta_bruteforce(&prime, r, cap)?;
    let mut last = Error::ZeroResolvent;
    let mut z = zeta.clone();
    for _ in 1..r {
        match bims(f, &z, r, target) {
            Ok(out) => return Ok(out),
            Err(Error::ZeroResolvent) => {
                last = Error::ZeroResolvent;
                z = z.mul(&zeta);
            }
            Err(e) => return Err(e),
        }
    }
    Err(last)
}

/// End-to-end root pipeline for F_{p^m} when r | gcd(m, p-1): find zeta_r in
/// F_p by scanning, turn the field's own minimal polynomial into a
/// nonresidue via the resolvent, then extract the root.
pub fn cor13_pipeline(r: u64, a: &FqElement, cap: u64) -> Result<FqElement> {
    let field = a.field().clone();
    let prime = field.prime_subfield();
    let m = field.total_degree();
    let p1 = prime.size() - 1u32;
    if !m.is_multiple_of(r as usize) {
        return Err(Error::PreconditionViolated(format!(
            "r = {r} does not divide the extension degree {m}"
        )));
    }
    if !(&p1 % nat(r)).is_zero() {
        return Err(Error::RDoesNotDivide(r.to_string(), format!("{}-1", prime.size())));
    }
    if a.is_zero() {
        return Ok(a.clone());
    }
    let h = if field.parent() == Some(&prime) {
        field.defining_poly().unwrap().clone()
    } else {
        crate::field::primitive_element_over(&field, &prime)?.1
    };
    let eta = bims_any_zeta(&h, r, &field, cap)?;
    let ctx = RootContext::new(field, r, eta)?;
    amm_rth_root(&ctx, a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::find_irreducible;

    fn fp(p: u64) -> Field {
        Field::prime(nat(p)).unwrap()
    }

    #[test]
    fn zeta_bruteforce_examples() {
        let f13 = fp(13);
        let z = find_zeta_bruteforce(&f13, 3, DEFAULT_TRIAL_CAP).unwrap();
        assert_eq!(z, f13.element_from_natural(&nat(3)));
        // p = 3 mod 4: the only primitive square root of unity is -1
        let f7 = fp(7);
        let z = find_zeta_bruteforce(&f7, 2, DEFAULT_TRIAL_CAP).unwrap();
        assert_eq!(z, f7.element_from_natural(&nat(6)));
        assert!(matches!(
            find_zeta_bruteforce(&f7, 5, DEFAULT_TRIAL_CAP),
            Err(Error::RDoesNotDivide(_, _))
        ));
    }

    #[test]
    fn sze_examples() {
        let f13 = fp(13);
        let z = sze_zeta(&f13, 3, &nat(4)).unwrap();
        assert_eq!(z, f13.element_from_natural(&nat(3)));
        let f17 = fp(17);
        let z = sze_zeta(&f17, 2, &nat(1)).unwrap();
        assert_eq!(z, f17.element_from_natural(&nat(16)));
        assert!(matches!(sze_zeta(&f13, 3, &nat(2)), Err(Error::BadFactorization)));
    }

    #[test]
    fn zeta_orders_and_distinct_powers() {
        for (p, r) in [(13u64, 3u64), (17, 2), (31, 5), (29, 7)] {
            let field = fp(p);
            let z = find_zeta_bruteforce(&field, r, DEFAULT_TRIAL_CAP).unwrap();
            assert!(!z.is_one());
            assert!(z.pow(&nat(r)).is_one());
            let mut seen = std::collections::HashSet::new();
            let mut acc = z.clone();
            for _ in 1..r {
                assert!(seen.insert(format!("{acc}")));
                assert!(!acc.is_one());
                acc = acc.mul(&z);
            }
        }
    }

    #[test]
    fn amm_examples() {
        let f7 = fp(7);
        let eta = find_nonresidue_bruteforce(&f7, 2, DEFAULT_TRIAL_CAP).unwrap();
        let ctx = RootContext::new(f7.clone(), 2, eta).unwrap();
        let a = f7.element_from_natural(&nat(2));
        let x = amm_rth_root(&ctx, &a).unwrap();
        assert!(x == f7.element_from_natural(&nat(3)) || x == f7.element_from_natural(&nat(4)));
        let zero = f7.element_from_natural(&nat(0));
        assert!(amm_rth_root(&ctx, &zero).unwrap().is_zero());
        let nonres = f7.element_from_natural(&nat(3));
        assert!(matches!(amm_rth_root(&ctx, &nonres), Err(Error::NotAResidue)));

        let f13 = fp(13);
        let eta = find_nonresidue_bruteforce(&f13, 3, DEFAULT_TRIAL_CAP).unwrap();
        let ctx = RootContext::new(f13.clone(), 3, eta).unwrap();
        let a = f13.element_from_natural(&nat(8));
        let x = amm_rth_root(&ctx, &a).unwrap();
        let roots: Vec<_> = [2u64, 6, 5]
            .iter()
            .map(|&v| f13.element_from_natural(&nat(v)))
            .collect();
        assert!(roots.contains(&x));
        assert_eq!(ctx.all_roots(&x).len(), 3);
        for root in ctx.all_roots(&x) {
            assert_eq!(root.pow(&nat(3)), a);
        }
    }

    #[test]
    fn amm_exhaustive_small_fields() {
        for (p, r) in [(13u64, 2u64), (13, 3), (31, 5), (25, 2), (27, 13)] {
            if (p - 1) % r != 0 && p != 25 && p != 27 {
                continue;
            }
            let field = if p == 25 {
                let f5 = fp(5);
                let h = find_irreducible(&f5, 2, 10_000).unwrap();
                f5.extend(&h).unwrap()
            } else if p == 27 {
                let f3 = fp(3);
                let h = find_irreducible(&f3, 3, 10_000).unwrap();
                f3.extend(&h).unwrap()
            } else {
                fp(p)
            };
            let q1: Natural = field.size() - 1u32;
            if !(&q1 % nat(r)).is_zero() {
                continue;
            }
            let eta = find_nonresidue_bruteforce(&field, r, DEFAULT_TRIAL_CAP).unwrap();
            let ctx = RootContext::new(field.clone(), r, eta).unwrap();
            let mut i = Natural::zero();
            while i < field.size() {
                let a = field.element_from_index(&i);
                i += 1u32;
                if a.is_zero() {
                    continue;
                }
                match amm_rth_root(&ctx, &a) {
                    Ok(x) => assert_eq!(x.pow(&nat(r)), a),
                    Err(Error::NotAResidue) => {}
                    Err(e) => panic!("unexpected error {e}"),
                }
            }
        }
    }

    #[test]
    fn cor13_examples() {
        // p=13, m=3, r=3: cube roots in F_13^3
        let f13 = fp(13);
        let h = find_irreducible(&f13, 3, 10_000).unwrap();
        let field = f13.extend(&h).unwrap();
        let a = field.element_from_index(&nat(811)).pow(&nat(3));
        let x = cor13_pipeline(3, &a, DEFAULT_TRIAL_CAP).unwrap();
        assert_eq!(x.pow(&nat(3)), a);
        // p=5, m=2, r=2
        let f5 = fp(5);
        let h = find_irreducible(&f5, 2, 10_000).unwrap();
        let field = f5.extend(&h).unwrap();
        let a = field.element_from_index(&nat(17)).pow(&nat(2));
        let x = cor13_pipeline(2, &a, DEFAULT_TRIAL_CAP).unwrap();
        assert_eq!(x.pow(&nat(2)), a);
        // r does not divide m
        let bad = cor13_pipeline(3, &a, DEFAULT_TRIAL_CAP);
        assert!(matches!(bad, Err(Error::PreconditionViolated(_))));
        // zero maps to zero
        let zero = field.element_from_natural(&nat(0));
        assert!(cor13_pipeline(2, &zero, DEFAULT_TRIAL_CAP).unwrap().is_zero());
    }
}
