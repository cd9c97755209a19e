//! Lagrange-resolvent nonresidue construction.
//!
//! Given a primitive r-th root of unity in F_q and an irreducible polynomial
//! of degree rk (or a squarefree block whose degree-rk factor count is not
//! divisible by r), the resolvent sum L = sum_i x^{q^{ki}} zeta^i is an
//! eigenvector of the q^k-Frobenius with eigenvalue zeta^{-1}, which pins its
//! character exactly. Every exported operation re-verifies the claimed
//! character identity before returning.

use num_traits::Zero;

use crate::arith::nat;
use crate::error::{Error, Result};
use crate::factor::{check_property1, PropertyWitness};
use crate::field::{chi_r, Field, FqElement};
use crate::poly::Poly;
use crate::resultant::sylvester_resultant;
use crate::ring::CoeffRing;

/// zeta must have order exactly r: zeta^r = 1 and zeta != 1.
pub fn check_zeta(field: &Field, r: u64, zeta: &FqElement) -> Result<()> {
    if zeta.field() != field {
        return Err(Error::ContextMismatch);
    }
    if zeta.is_zero() || zeta.is_one() {
        return Err(Error::BadZeta(format!("{zeta} has trivial order")));
    }
    if !zeta.pow(&nat(r)).is_one() {
        return Err(Error::BadZeta(format!("{zeta}^{r} != 1")));
    }
    Ok(())
}

/// The divisibility hypothesis of the resolvent theorem:
/// gcd(2,r) * r | q - 1 (so 4 | q-1 in the quadratic case).
pub fn check_resolvent_divisibility(field: &Field, r: u64) -> Result<()> {
    let need = if r == 2 { nat(4) } else { nat(r) };
    let q1 = field.size() - 1u32;
    if !(&q1 % &need).is_zero() {
        return Err(Error::RDoesNotDivide(
            need.to_string(),
            format!("{}-1", field.size()),
        ));
    }
    Ok(())
}

/// sum_{i=0}^{r-1} x^{q^{ki}} zeta^i reduced mod f, computed by iterated
/// Frobenius powering of the reduced terms.
pub fn resolvent_sum_poly(
    f: &Poly<Field>,
    r: u64,
    zeta: &FqElement,
    k: usize,
) -> Result<Poly<Field>> {
    let field = f.ring().clone();
    if zeta.field() != &field {
        return Err(Error::ContextMismatch);
    }
    let q = field.size();
    let x = Poly::x(&field);
    let mut term = x.rem(f)?;
    let mut zpow = field.one();
    let mut acc = Poly::zero(&field);
    for i in 0..r {
        if i > 0 {
            for _ in 0..k {
                term = term.powmod(&q, f)?;
            }
            zpow = field.mul(&zpow, zeta.rep());
        }
        acc = acc.add(&term.mul_scalar(&zpow))?;
    }
    Ok(acc)
}

/// Everything the resolvent operations need: the base field, a valid zeta,
/// and a qualifying factor block.
#[derive(Debug, Clone)]
pub struct ResolventContext {
    field: Field,
    r: u64,
    zeta: FqElement,
    witness: PropertyWitness,
}

impl ResolventContext {
    pub fn new(
        field: Field,
        r: u64,
        zeta: FqElement,
        witness: PropertyWitness,
    ) -> Result<Self> {
        check_resolvent_divisibility(&field, r)?;
        check_zeta(&field, r, &zeta)?;
        if witness.r != r
            || !witness.d.is_multiple_of(r as usize)
            || witness.count.is_multiple_of(r as usize)
            || witness.block.ring() != &field
        {
            return Err(Error::PreconditionViolated(
                "factor block does not match the resolvent parameters".into(),
            ));
        }
        Ok(ResolventContext { field, r, zeta, witness })
    }

    /// Runs the distinct-degree decomposition on f and builds the context
    /// from the smallest qualifying block.
    pub fn from_poly(field: Field, r: u64, zeta: FqElement, f: &Poly<Field>) -> Result<Self> {
        let witness = check_property1(f, r)?
            .ok_or_else(|| Error::PropertyNotSatisfied(r.to_string()))?;
        Self::new(field, r, zeta, witness)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn r(&self) -> u64 {
        self.r
    }

    pub fn zeta(&self) -> &FqElement {
        &self.zeta
    }

    pub fn witness(&self) -> &PropertyWitness {
        &self.witness
    }
}

/// L = sum_i gamma^{q^{ki}} zeta^i evaluated at a root gamma of the degree-rk
/// irreducible inside `ext`; checks the Frobenius eigenvalue identity
/// L^{q^k} = zeta^{-1} L before returning.
fn resolvent_element_at(
    base: &Field,
    ext: &Field,
    gamma: &FqElement,
    r: u64,
    zeta: &FqElement,
    k: usize,
) -> Result<FqElement> {
    let q = base.size();
    let zeta_ext = zeta.embed(ext)?;
    let mut term = gamma.clone();
    let mut zpow = ext.element_from_natural(&nat(1));
    let mut acc = ext.element_from_natural(&nat(0));
    for i in 0..r {
        if i > 0 {
            term = term.frobenius(&q, k);
            zpow = zpow.mul(&zeta_ext);
        }
        acc = acc.add(&term.mul(&zpow));
    }
    if acc.is_zero() {
        return Err(Error::ZeroResolvent);
    }
    let lhs = acc.frobenius(&q, k);
    let rhs = zeta_ext.inv()?.mul(&acc);
    if lhs != rhs {
        return Err(Error::OrderMismatch(
            "resolvent is not a Frobenius eigenvector (is the input irreducible?)".into(),
        ));
    }
    Ok(acc)
}

/// The resolvent of an irreducible polynomial of degree d = rk, as an element
/// of F_{q^d} = F_q[x]/<fi>. Both theorem identities are verified.
pub fn lagrange_resolvent(ctx: &ResolventContext, fi: &Poly<Field>) -> Result<FqElement> {
    let d = ctx.witness.d;
    if fi.degree() != Some(d) {
        return Err(Error::PreconditionViolated(format!(
            "expected an irreducible of degree {d}"
        )));
    }
    let fi = fi.monic()?;
    let ext = ctx.field.extend(&fi)?; // validates irreducibility
    let gamma = ext.generator()?;
    let l = resolvent_element_at(&ctx.field, &ext, &gamma, ctx.r, &ctx.zeta, ctx.witness.k)?;
    // theorem identity: L^{(q^d - 1)/r} = zeta^{-1}
    let e = (ext.size() - 1u32) / nat(ctx.r);
    let expect = ctx.zeta.inv()?.embed(&ext)?;
    if l.pow(&e) != expect {
        return Err(Error::OrderMismatch(
            "resolvent character differs from zeta^{-1}".into(),
        ));
    }
    Ok(l)
}

/// R(fi, L) for the resolvent L of an irreducible fi; an r-th nonresidue in
/// F_q with chi_r equal to zeta^{-1} exactly.
pub fn nonresidue_from_irreducible(
    ctx: &ResolventContext,
    fi: &Poly<Field>,
) -> Result<FqElement> {
    let l = lagrange_resolvent(ctx, fi)?;
    let l_rep = l.as_parent_poly()?;
    let fi = fi.monic()?;
    let res = sylvester_resultant(&fi, &l_rep)?;
    let out = ctx.field.element(res);
    let chi = chi_r(&out, &nat(ctx.r))?;
    if chi != ctx.zeta.inv()? {
        return Err(Error::OrderMismatch(
            "chi_r of the resultant differs from zeta^{-1}".into(),
        ));
    }
    Ok(out)
}

/// R(f, g mod f) for the whole qualifying block f (a product of r' degree-rk
/// irreducibles with r not dividing r'): chi_r of the result is zeta^{-r'},
/// which is nontrivial, so the result is an r-th nonresidue in F_q.
pub fn nonresidue_from_property1(ctx: &ResolventContext) -> Result<FqElement> {
    let f = &ctx.witness.block; // monic squarefree by construction
    let g = resolvent_sum_poly(f, ctx.r, &ctx.zeta, ctx.witness.k)?;
    let res = sylvester_resultant(f, &g)?;
    if ctx.field.is_zero(&res) {
        return Err(Error::ZeroResolvent);
    }
    let out = ctx.field.element(res);
    let chi = chi_r(&out, &nat(ctx.r))?;
    let expect = ctx.zeta.pow(&nat(ctx.witness.count as u64)).inv()?;
    if chi != expect {
        return Err(Error::OrderMismatch(
            "chi_r of the block resultant differs from zeta^{-r'}".into(),
        ));
    }
    if chi.is_one() {
        return Err(Error::OrderMismatch(
            "block resultant is unexpectedly a residue".into(),
        ));
    }
    Ok(out)
}

/// Deterministic nonresidue construction in F_{p^n} from a qualifying
/// polynomial over F_p and zeta_r in F_p.
///
/// Branch r | n: the defining polynomial of the target is itself irreducible
/// of degree divisible by r, so its resolvent (computed directly inside the
/// target) is the answer. Branch r !| n: the block resultant gives a
/// nonresidue in F_p, and the embedding stays a nonresidue because
/// (p^n - 1)/(p - 1) is not divisible by r.
///
/// For r = 2 with p = 3 (mod 4) and odd n, -1 is returned immediately.
pub fn bims(
    f: &Poly<Field>,
    zeta: &FqElement,
    r: u64,
    target: &Field,
) -> Result<FqElement> {
    let prime = target.prime_subfield();
    if f.ring() != &prime || zeta.field() != &prime {
        return Err(Error::ContextMismatch);
    }
    let p = prime.size();
    let n = target.total_degree();
    let q1 = target.size() - 1u32;
    if !(&q1 % nat(r)).is_zero() {
        return Err(Error::RDoesNotDivide(r.to_string(), format!("{}-1", target.size())));
    }
    if r == 2 && (&p % nat(4)) == nat(3) && n % 2 == 1 {
        let out = target.element(target.neg(&target.one()));
        debug_assert!(is_nonresidue_checked(&out, r)?);
        return Ok(out);
    }
    check_zeta(&prime, r, zeta)?;
    let witness = check_property1(f, r)?
        .ok_or_else(|| Error::PropertyNotSatisfied(r.to_string()))?;
    if n.is_multiple_of(r as usize) {
        // Use the target's own minimal polynomial over F_p as the irreducible.
        check_resolvent_divisibility(&prime, r)?;
        let gamma = if target.parent() == Some(&prime) {
            target.generator()?
        } else {
            crate::field::primitive_element_over(target, &prime)?.0
        };
        let k = n / r as usize;
        let l = resolvent_element_at(&prime, target, &gamma, r, zeta, k)?;
        let e = &q1 / nat(r);
        let expect = zeta.inv()?.embed(target)?;
        if l.pow(&e) != expect {
            return Err(Error::OrderMismatch(
                "resolvent character differs from zeta^{-1}".into(),
            ));
        }
        Ok(l)
    } else {
        let ctx = ResolventContext::new(prime.clone(), r, zeta.clone(), witness)?;
        let a = nonresidue_from_property1(&ctx)?;
        let lifted = a.embed(target)?;
        if !is_nonresidue_checked(&lifted, r)? {
            return Err(Error::OrderMismatch(
                "embedded element lost nonresiduosity".into(),
            ));
        }
        Ok(lifted)
    }
}

fn is_nonresidue_checked(a: &FqElement, r: u64) -> Result<bool> {
    crate::field::is_nonresidue(a, &nat(r))
}

/// Lifts an r-th nonresidue of F_{p^m} into an extension F_{p^{m l}}.
/// When r does not divide l the embedding itself works; otherwise the
/// target's minimal polynomial over F_{p^m} is irreducible of degree
/// divisible by r and the resolvent construction applies.
pub fn lift_nonresidue(
    a: &FqElement,
    zeta: &FqElement,
    r: u64,
    target: &Field,
) -> Result<FqElement> {
    let base = a.field().clone();
    if zeta.field() != &base {
        return Err(Error::ContextMismatch);
    }
    if !base.is_prefix_of(target) {
        return Err(Error::ContextMismatch);
    }
    let q1 = base.size() - 1u32;
    if !(&q1 % nat(r)).is_zero() {
        return Err(Error::RDoesNotDivide(r.to_string(), format!("{}-1", base.size())));
    }
    let ell = target.total_degree() / base.total_degree();
    if ell == 1 {
        return Ok(a.clone());
    }
    if !ell.is_multiple_of(r as usize) {
        let lifted = a.embed(target)?;
        if !is_nonresidue_checked(&lifted, r)? {
            return Err(Error::OrderMismatch(
                "embedded element lost nonresiduosity".into(),
            ));
        }
        Ok(lifted)
    } else {
        check_resolvent_divisibility(&base, r)?;
        check_zeta(&base, r, zeta)?;
        let gamma = if target.parent() == Some(&base) {
            target.generator()?
        } else {
            crate::field::primitive_element_over(target, &base)?.0
        };
        let k = ell / r as usize;
        let l = resolvent_element_at(&base, target, &gamma, r, zeta, k)?;
        let e = (target.size() - 1u32) / nat(r);
        let expect = zeta.inv()?.embed(target)?;
        if l.pow(&e) != expect {
            return Err(Error::OrderMismatch(
                "resolvent character differs from zeta^{-1}".into(),
            ));
        }
        Ok(l)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{find_irreducible, is_nonresidue};

    fn fp(p: u64) -> Field {
        Field::prime(nat(p)).unwrap()
    }

    fn poly(f: &Field, s: &str) -> Poly<Field> {
        Poly::parse(f, s).unwrap()
    }

    fn ctx_f5_r2() -> ResolventContext {
        let f5 = fp(5);
        let zeta = f5.element_from_natural(&nat(4));
        ResolventContext::from_poly(f5.clone(), 2, zeta, &poly(&f5, "x^2+2")).unwrap()
    }

    #[test]
    fn worked_example_f5() {
        // F_5, r=2, zeta=4, f=x^2+2: L = 2x and L^12 = 4 = zeta^{-1}
        let ctx = ctx_f5_r2();
        let f5 = ctx.field().clone();
        let l = lagrange_resolvent(&ctx, &poly(&f5, "x^2+2")).unwrap();
        let rep = l.as_parent_poly().unwrap();
        assert_eq!(rep, poly(&f5, "2*x"));
        let big = l.field().clone();
        assert_eq!(
            l.pow(&nat(12)),
            f5.element_from_natural(&nat(4)).embed(&big).unwrap()
        );
    }

    #[test]
    fn nonresidue_from_irreducible_f5() {
        let ctx = ctx_f5_r2();
        let f5 = ctx.field().clone();
        let a = nonresidue_from_irreducible(&ctx, &poly(&f5, "x^2+2")).unwrap();
        assert!(is_nonresidue(&a, &nat(2)).unwrap());
        let chi = chi_r(&a, &nat(2)).unwrap();
        assert_eq!(chi, ctx.zeta().inv().unwrap());
        assert!(chi.pow(&nat(2)).is_one());
    }

    #[test]
    fn context_rejects_q_3_mod_4_for_r_2() {
        let f7 = fp(7);
        let zeta = f7.element_from_natural(&nat(6));
        let f = find_irreducible(&f7, 2, 10_000).unwrap();
        let err = ResolventContext::from_poly(f7, 2, zeta, &f);
        assert!(matches!(err, Err(Error::RDoesNotDivide(_, _))));
    }

    #[test]
    fn property1_block_pipeline_r3() {
        // F_13, r=3, non-binomial cubic x^3+x+6 (no roots mod 13)
        let f13 = fp(13);
        let zeta = f13.element_from_natural(&nat(3));
        let f = poly(&f13, "x^3+x+6");
        let ctx = ResolventContext::from_poly(f13.clone(), 3, zeta, &f).unwrap();
        let a = nonresidue_from_property1(&ctx).unwrap();
        assert!(is_nonresidue(&a, &nat(3)).unwrap());
        // single block (r'=1) must agree with the irreducible route
        let b = nonresidue_from_irreducible(&ctx, &f).unwrap();
        assert_eq!(chi_r(&a, &nat(3)).unwrap(), chi_r(&b, &nat(3)).unwrap());
    }

    #[test]
    fn degenerate_binomial_resolvent_is_flagged_not_accepted() {
        // x^3+2 over F_13: the generator is a Frobenius eigenvector
        // (alpha^13 = 3 alpha), so the resolvent vanishes for zeta = 3 but
        // not for the other primitive root zeta = 9.
        let f13 = fp(13);
        let f = poly(&f13, "x^3+2");
        let bad = ResolventContext::from_poly(
            f13.clone(),
            3,
            f13.element_from_natural(&nat(3)),
            &f,
        )
        .unwrap();
        assert!(matches!(
            nonresidue_from_property1(&bad),
            Err(Error::ZeroResolvent)
        ));
        assert!(matches!(
            lagrange_resolvent(&bad, &f),
            Err(Error::ZeroResolvent)
        ));
        let good = ResolventContext::from_poly(
            f13.clone(),
            3,
            f13.element_from_natural(&nat(9)),
            &f,
        )
        .unwrap();
        let a = nonresidue_from_property1(&good).unwrap();
        assert!(is_nonresidue(&a, &nat(3)).unwrap());
    }

    #[test]
    fn bims_shortcut_minus_one() {
        let f7 = fp(7);
        let h = find_irreducible(&f7, 3, 10_000).unwrap();
        let target = f7.extend(&h).unwrap();
        let zeta = f7.element_from_natural(&nat(6));
        let f = poly(&f7, "x^2+1"); // irreducible over F_7: qualifies for r=2
        let out = bims(&f, &zeta, 2, &target).unwrap();
        let minus_one = target.element(target.neg(&target.one()));
        assert_eq!(out, minus_one);
        assert!(is_nonresidue(&out, &nat(2)).unwrap());
    }

    #[test]
    fn bims_r_divides_n() {
        // p=5, r=2, n=2, f=h=x^2+2
        let f5 = fp(5);
        let h = poly(&f5, "x^2+2");
        let target = f5.extend(&h).unwrap();
        let zeta = f5.element_from_natural(&nat(4));
        let out = bims(&h, &zeta, 2, &target).unwrap();
        assert!(is_nonresidue(&out, &nat(2)).unwrap());
        // exhaustive square table in F_25
        let mut squares = std::collections::HashSet::new();
        for i in 0..25u64 {
            let a = target.element_from_index(&nat(i));
            squares.insert(format!("{}", a.mul(&a)));
        }
        assert!(!squares.contains(&format!("{out}")));
    }

    #[test]
    fn bims_r_does_not_divide_n() {
        // p=5, r=2, n=3
        let f5 = fp(5);
        let h = find_irreducible(&f5, 3, 10_000).unwrap();
        let target = f5.extend(&h).unwrap();
        let zeta = f5.element_from_natural(&nat(4));
        let f = poly(&f5, "x^2+2");
        let out = bims(&f, &zeta, 2, &target).unwrap();
        assert!(is_nonresidue(&out, &nat(2)).unwrap());
        // the F_p-level character is the closed form zeta^{-r'}
        let down = out.demote_to(&f5).unwrap();
        assert_eq!(chi_r(&down, &nat(2)).unwrap(), zeta.inv().unwrap());
    }

    #[test]
    fn bims_rejects_unqualified_f() {
        let f5 = fp(5);
        let f = poly(&f5, "x^2+2").mul(&poly(&f5, "x^2+3")).unwrap();
        let h = poly(&f5, "x^2+2");
        let target = f5.extend(&h).unwrap();
        let zeta = f5.element_from_natural(&nat(4));
        assert!(matches!(
            bims(&f, &zeta, 2, &target),
            Err(Error::PropertyNotSatisfied(_))
        ));
    }

    #[test]
    fn lift_examples() {
        let f5 = fp(5);
        let zeta = f5.element_from_natural(&nat(4));
        let a = f5.element_from_natural(&nat(2)); // nonsquare mod 5
        assert!(is_nonresidue(&a, &nat(2)).unwrap());
        // l = 1: identity
        assert_eq!(lift_nonresidue(&a, &zeta, 2, &f5).unwrap(), a);
        // l = 3: embedding suffices
        let h3 = find_irreducible(&f5, 3, 10_000).unwrap();
        let t3 = f5.extend(&h3).unwrap();
        let up = lift_nonresidue(&a, &zeta, 2, &t3).unwrap();
        assert!(is_nonresidue(&up, &nat(2)).unwrap());
        assert_eq!(up, a.embed(&t3).unwrap());
        // l = 2: resolvent route
        let h2 = poly(&f5, "x^2+2");
        let t2 = f5.extend(&h2).unwrap();
        let up = lift_nonresidue(&a, &zeta, 2, &t2).unwrap();
        assert!(is_nonresidue(&up, &nat(2)).unwrap());
    }
}
