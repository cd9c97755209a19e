//! Explicit finite fields and their extension towers.
//!
//! A field is either a prime field F_p or an extension of another field by a
//! monic irreducible polynomial. Towers are kept explicit (never silently
//! flattened); elements are coefficient trees relative to the tower. All
//! descriptors are immutable and cheaply shareable.

use std::sync::Arc;

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::arith::{nat, Modulus, Natural};
use crate::error::{Error, Result};
use crate::linalg;
use crate::poly::Poly;
use crate::ring::CoeffRing;

/// Element data of a field in a tower: a residue for the prime level, a
/// fixed-length coefficient vector over the level below otherwise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Rep {
    Base(Natural),
    Ext(Vec<Rep>),
}

#[derive(Debug, PartialEq)]
enum FieldRepr {
    Prime {
        p: Modulus,
    },
    Ext {
        parent: Field,
        defining: Poly<Field>,
        degree: usize,
        total_degree: usize,
        size: Natural,
    },
}

/// Handle to a field descriptor (prime field or tower level).
#[derive(Debug, Clone)]
pub struct Field(Arc<FieldRepr>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || *self.0 == *other.0
    }
}

impl Field {
    /// The prime field F_p; verifies primality once.
    pub fn prime(p: Natural) -> Result<Field> {
        let p = Modulus::new_prime(p)?;
        Ok(Field(Arc::new(FieldRepr::Prime { p })))
    }

    /// Extends this field by a monic irreducible polynomial.
    pub fn extend(&self, defining: &Poly<Field>) -> Result<Field> {
        if defining.ring() != self {
            return Err(Error::ContextMismatch);
        }
        if !defining.is_monic() {
            return Err(Error::NotMonic);
        }
        if !is_irreducible(defining)? {
            return Err(Error::NotIrreducible(defining.to_string()));
        }
        let degree = defining.degree().unwrap();
        let size = num_traits::pow::pow(self.size(), degree);
        Ok(Field(Arc::new(FieldRepr::Ext {
            parent: self.clone(),
            defining: defining.clone(),
            degree,
            total_degree: self.total_degree() * degree,
            size,
        })))
    }

    pub fn is_prime_field(&self) -> bool {
        matches!(&*self.0, FieldRepr::Prime { .. })
    }

    pub fn parent(&self) -> Option<&Field> {
        match &*self.0 {
            FieldRepr::Prime { .. } => None,
            FieldRepr::Ext { parent, .. } => Some(parent),
        }
    }

    pub fn defining_poly(&self) -> Option<&Poly<Field>> {
        match &*self.0 {
            FieldRepr::Prime { .. } => None,
            FieldRepr::Ext { defining, .. } => Some(defining),
        }
    }

    pub fn characteristic(&self) -> &Natural {
        match &*self.0 {
            FieldRepr::Prime { p } => p.value(),
            FieldRepr::Ext { parent, .. } => parent.characteristic(),
        }
    }

    /// Number of elements q.
    pub fn size(&self) -> Natural {
        match &*self.0 {
            FieldRepr::Prime { p } => p.value().clone(),
            FieldRepr::Ext { size, .. } => size.clone(),
        }
    }

    /// Extension degree over the prime field.
    pub fn total_degree(&self) -> usize {
        match &*self.0 {
            FieldRepr::Prime { .. } => 1,
            FieldRepr::Ext { total_degree, .. } => *total_degree,
        }
    }

    pub fn degree_over_parent(&self) -> usize {
        match &*self.0 {
            FieldRepr::Prime { .. } => 1,
            FieldRepr::Ext { degree, .. } => *degree,
        }
    }

    fn rep_from_poly(&self, p: Poly<Field>) -> Rep {
        let FieldRepr::Ext { degree, .. } = &*self.0 else {
            unreachable!("rep_from_poly is only meaningful at extension levels")
        };
        let mut coeffs = p.coeffs().to_vec();
        debug_assert!(coeffs.len() <= *degree);
        let parent = self.parent().unwrap();
        coeffs.resize(*degree, parent.zero());
        Rep::Ext(coeffs)
    }

    fn rep_as_poly(&self, r: &Rep) -> Poly<Field> {
        let (FieldRepr::Ext { parent, .. }, Rep::Ext(coeffs)) = (&*self.0, r) else {
            unreachable!("element shape does not match the field level")
        };
        Poly::from_coeffs(parent, coeffs.clone())
    }

    /// The class of the defining variable, i.e. the canonical generator of
    /// the top tower step.
    pub fn generator(&self) -> Result<FqElement> {
        let FieldRepr::Ext { parent, degree, .. } = &*self.0 else {
            return Err(Error::PreconditionViolated(
                "a prime field has no tower generator".into(),
            ));
        };
        let mut coeffs = vec![parent.zero(); *degree];
        if *degree == 1 {
            // degree-1 relabeling: the generator is the root of the defining
            // polynomial, a constant.
            let c = self.defining_poly().unwrap().coeff(0);
            coeffs[0] = parent.neg(&c);
        } else {
            coeffs[1] = parent.one();
        }
        Ok(FqElement { field: self.clone(), rep: Rep::Ext(coeffs) })
    }

    pub fn element(&self, rep: Rep) -> FqElement {
        FqElement { field: self.clone(), rep }
    }

    /// The class of a polynomial over the parent level modulo the defining
    /// polynomial of this extension.
    pub fn class_of(&self, p: &Poly<Field>) -> Result<FqElement> {
        let FieldRepr::Ext { parent, defining, .. } = &*self.0 else {
            return Err(Error::PreconditionViolated(
                "a prime field has no polynomial classes".into(),
            ));
        };
        if p.ring() != parent {
            return Err(Error::ContextMismatch);
        }
        let reduced = p.rem(defining)?;
        Ok(self.element(self.rep_from_poly(reduced)))
    }

    pub fn element_from_natural(&self, n: &Natural) -> FqElement {
        self.element(self.from_natural(n))
    }

    /// Deterministic enumeration of field elements: index digits in mixed
    /// radix, least significant digit = constant coefficient. Index 0, 1,
    /// 2, ... give the embedded prime-field constants first.
    pub fn element_from_index(&self, idx: &Natural) -> FqElement {
        self.element(self.rep_from_index(idx))
    }

    fn rep_from_index(&self, idx: &Natural) -> Rep {
        match &*self.0 {
            FieldRepr::Prime { p } => Rep::Base(idx % p.value()),
            FieldRepr::Ext { parent, degree, .. } => {
                let radix = parent.size();
                let mut rest = idx.clone();
                let mut coeffs = Vec::with_capacity(*degree);
                for _ in 0..*degree {
                    let (q, r) = rest.div_rem(&radix);
                    coeffs.push(parent.rep_from_index(&r));
                    rest = q;
                }
                Rep::Ext(coeffs)
            }
        }
    }

    /// Walks the tower downward looking for a level with the given total
    /// degree over the prime field.
    pub fn subfield_of_total_degree(&self, d: usize) -> Option<Field> {
        let mut cur = self.clone();
        loop {
            match cur.total_degree().cmp(&d) {
                std::cmp::Ordering::Equal => return Some(cur),
                std::cmp::Ordering::Less => return None,
                std::cmp::Ordering::Greater => {
                    let parent = cur.parent()?.clone();
                    cur = parent;
                }
            }
        }
    }

    /// The prime field at the bottom of the tower.
    pub fn prime_subfield(&self) -> Field {
        let mut cur = self.clone();
        while let Some(p) = cur.parent() {
            cur = p.clone();
        }
        cur
    }

    /// Whether `self` appears in `sup`'s parent chain (or equals it).
    pub fn is_prefix_of(&self, sup: &Field) -> bool {
        let mut cur = sup.clone();
        loop {
            if cur == *self {
                return true;
            }
            match cur.parent() {
                Some(p) => cur = p.clone(),
                None => return false,
            }
        }
    }
}

impl CoeffRing for Field {
    type Elem = Rep;

    fn zero(&self) -> Rep {
        match &*self.0 {
            FieldRepr::Prime { .. } => Rep::Base(Natural::zero()),
            FieldRepr::Ext { parent, degree, .. } => {
                Rep::Ext(vec![parent.zero(); *degree])
            }
        }
    }

    fn one(&self) -> Rep {
        self.from_natural(&Natural::one())
    }

    fn add(&self, a: &Rep, b: &Rep) -> Rep {
        match (&*self.0, a, b) {
            (FieldRepr::Prime { p }, Rep::Base(x), Rep::Base(y)) => {
                Rep::Base((x + y) % p.value())
            }
            (FieldRepr::Ext { parent, .. }, Rep::Ext(x), Rep::Ext(y)) => Rep::Ext(
                x.iter().zip(y).map(|(xi, yi)| parent.add(xi, yi)).collect(),
            ),
            _ => unreachable!("element shape does not match the field level"),
        }
    }

    fn sub(&self, a: &Rep, b: &Rep) -> Rep {
        match (&*self.0, a, b) {
            (FieldRepr::Prime { p }, Rep::Base(x), Rep::Base(y)) => {
                Rep::Base((p.value() + x - y) % p.value())
            }
            (FieldRepr::Ext { parent, .. }, Rep::Ext(x), Rep::Ext(y)) => Rep::Ext(
                x.iter().zip(y).map(|(xi, yi)| parent.sub(xi, yi)).collect(),
            ),
            _ => unreachable!("element shape does not match the field level"),
        }
    }

    fn neg(&self, a: &Rep) -> Rep {
        self.sub(&self.zero(), a)
    }

    fn mul(&self, a: &Rep, b: &Rep) -> Rep {
        match (&*self.0, a, b) {
            (FieldRepr::Prime { p }, Rep::Base(x), Rep::Base(y)) => {
                Rep::Base((x * y) % p.value())
            }
            (FieldRepr::Ext { defining, .. }, _, _) => {
                let pa = self.rep_as_poly(a);
                let pb = self.rep_as_poly(b);
                let prod = pa
                    .mul(&pb)
                    .and_then(|p| p.rem(defining))
                    .expect("tower arithmetic over a validated defining polynomial");
                self.rep_from_poly(prod)
            }
            _ => unreachable!("element shape does not match the field level"),
        }
    }

    fn inv(&self, a: &Rep) -> Result<Rep> {
        match (&*self.0, a) {
            (FieldRepr::Prime { p }, Rep::Base(x)) => {
                Ok(Rep::Base(crate::arith::mod_inverse(x, p.value())?))
            }
            (FieldRepr::Ext { defining, .. }, _) => {
                let pa = self.rep_as_poly(a);
                let (g, s, _) = pa.extended_gcd(defining)?;
                if !g.is_constant() || g.is_zero() {
                    return Err(Error::NotInvertible(format!("in {}", self.describe())));
                }
                // g is monic 1 here, so s * a = 1 (mod defining).
                Ok(self.rep_from_poly(s.rem(defining)?))
            }
            _ => unreachable!("element shape does not match the field level"),
        }
    }

    fn from_natural(&self, n: &Natural) -> Rep {
        match &*self.0 {
            FieldRepr::Prime { p } => Rep::Base(n % p.value()),
            FieldRepr::Ext { parent, degree, .. } => {
                let mut coeffs = vec![parent.zero(); *degree];
                coeffs[0] = parent.from_natural(n);
                Rep::Ext(coeffs)
            }
        }
    }

    fn is_field(&self) -> bool {
        true
    }

    fn fmt_elem(&self, e: &Rep) -> String {
        match e {
            Rep::Base(n) => n.to_string(),
            Rep::Ext(coeffs) => {
                let parent = self.parent().expect("Ext rep at prime level");
                let inner: Vec<String> =
                    coeffs.iter().map(|c| parent.fmt_elem(c)).collect();
                format!("[{}]", inner.join(","))
            }
        }
    }
}

impl Field {
    pub fn describe(&self) -> String {
        match &*self.0 {
            FieldRepr::Prime { p } => format!("F_{}", p.value()),
            FieldRepr::Ext { .. } => {
                format!("F_{}^{}", self.characteristic(), self.total_degree())
            }
        }
    }
}

/// An element of an explicit finite field.
#[derive(Debug, Clone, PartialEq)]
pub struct FqElement {
    field: Field,
    rep: Rep,
}

impl FqElement {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rep(&self) -> &Rep {
        &self.rep
    }

    pub fn is_zero(&self) -> bool {
        self.field.is_zero(&self.rep)
    }

    pub fn is_one(&self) -> bool {
        self.field.is_one(&self.rep)
    }

    fn check_same(&self, other: &FqElement) {
        assert_eq!(self.field, other.field, "elements of different fields");
    }

    pub fn add(&self, other: &FqElement) -> FqElement {
        self.check_same(other);
        self.field.element(self.field.add(&self.rep, &other.rep))
    }

    pub fn sub(&self, other: &FqElement) -> FqElement {
        self.check_same(other);
        self.field.element(self.field.sub(&self.rep, &other.rep))
    }

    pub fn neg(&self) -> FqElement {
        self.field.element(self.field.neg(&self.rep))
    }

    pub fn mul(&self, other: &FqElement) -> FqElement {
        self.check_same(other);
        self.field.element(self.field.mul(&self.rep, &other.rep))
    }

    pub fn inv(&self) -> Result<FqElement> {
        Ok(self.field.element(self.field.inv(&self.rep)?))
    }

    pub fn pow(&self, e: &Natural) -> FqElement {
        self.field.element(self.field.pow(&self.rep, e))
    }

    /// Applies the q^times-power Frobenius for the given subfield size q.
    pub fn frobenius(&self, q: &Natural, times: usize) -> FqElement {
        let mut out = self.clone();
        for _ in 0..times {
            out = out.pow(q);
        }
        out
    }

    /// Embeds into an extension whose tower contains this element's field.
    pub fn embed(&self, target: &Field) -> Result<FqElement> {
        if !self.field.is_prefix_of(target) {
            return Err(Error::ContextMismatch);
        }
        let mut chain = Vec::new();
        let mut cur = target.clone();
        while cur != self.field {
            chain.push(cur.clone());
            cur = cur.parent().expect("prefix checked above").clone();
        }
        let mut rep = self.rep.clone();
        for level in chain.into_iter().rev() {
            let parent = level.parent().unwrap();
            let mut coeffs = vec![parent.zero(); level.degree_over_parent()];
            coeffs[0] = rep;
            rep = Rep::Ext(coeffs);
        }
        Ok(target.element(rep))
    }

    /// Reinterprets in the immediate subfield when all higher coordinates
    /// vanish.
    pub fn try_demote(&self) -> Option<FqElement> {
        let parent = self.field.parent()?;
        let Rep::Ext(coeffs) = &self.rep else { return None };
        if coeffs[1..].iter().all(|c| parent.is_zero(c)) {
            Some(parent.element(coeffs[0].clone()))
        } else {
            None
        }
    }

    /// Demotes down the tower to the given prefix subfield.
    pub fn demote_to(&self, sub: &Field) -> Result<FqElement> {
        let mut cur = self.clone();
        while cur.field != *sub {
            cur = cur.try_demote().ok_or_else(|| {
                Error::PreconditionViolated(format!(
                    "element {} does not lie in {}",
                    self, sub.describe()
                ))
            })?;
        }
        Ok(cur)
    }

    /// The canonical reduced representative over the parent level.
    pub fn as_parent_poly(&self) -> Result<Poly<Field>> {
        if self.field.is_prime_field() {
            return Err(Error::PreconditionViolated(
                "prime-field elements have no parent representative".into(),
            ));
        }
        Ok(self.field.rep_as_poly(&self.rep))
    }

    /// Coordinates over a prefix subfield, dimension [field : base].
    pub fn coords_over(&self, base: &Field) -> Result<Vec<Rep>> {
        if !base.is_prefix_of(&self.field) {
            return Err(Error::ContextMismatch);
        }
        fn go(field: &Field, rep: &Rep, base: &Field, out: &mut Vec<Rep>) {
            if field == base {
                out.push(rep.clone());
                return;
            }
            let Rep::Ext(coeffs) = rep else { unreachable!() };
            for c in coeffs {
                go(field.parent().unwrap(), c, base, out);
            }
        }
        let mut out = Vec::new();
        go(&self.field, &self.rep, base, &mut out);
        Ok(out)
    }
}

impl std::fmt::Display for FqElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.field.fmt_elem(&self.rep))
    }
}

/// N_{F_{q^k}/F_q}(a) = a^{(q^k-1)/(q-1)} for the subfield with
/// [a.field : subfield] = k. The result is demoted when the subfield is an
/// explicit tower level, and membership is always verified.
pub fn norm(a: &FqElement, k: usize) -> Result<FqElement> {
    let total = a.field().total_degree();
    if k == 0 || !total.is_multiple_of(k) {
        return Err(Error::PreconditionViolated(format!(
            "degree ratio {k} does not divide the extension degree {total}"
        )));
    }
    if k == 1 {
        return Ok(a.clone());
    }
    let big = a.field().size();
    let sub_degree = total / k;
    let small = num_traits::pow::pow(a.field().characteristic().clone(), sub_degree);
    let e = (&big - 1u32) / (&small - 1u32);
    let n = a.pow(&e);
    // membership: fixed by the q-power Frobenius of the subfield
    if n.pow(&small) != n {
        return Err(Error::OrderMismatch(format!(
            "norm {n} not fixed by the subfield Frobenius"
        )));
    }
    match a.field().subfield_of_total_degree(sub_degree) {
        Some(sub) => n.demote_to(&sub),
        None => Ok(n),
    }
}

/// The character chi_r(a) = a^{(q-1)/r}; requires r | q-1 and a != 0.
pub fn chi_r(a: &FqElement, r: &Natural) -> Result<FqElement> {
    let q = a.field().size();
    let q1 = &q - 1u32;
    if !(&q1 % r).is_zero() {
        return Err(Error::RDoesNotDivide(r.to_string(), format!("{q}-1")));
    }
    if a.is_zero() {
        return Err(Error::ZeroElement);
    }
    Ok(a.pow(&(q1 / r)))
}

/// a is an r-th nonresidue iff chi_r(a) != 1.
pub fn is_nonresidue(a: &FqElement, r: &Natural) -> Result<bool> {
    Ok(!chi_r(a, r)?.is_one())
}

fn prime_factors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = 2usize;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Rabin irreducibility test: f (degree n, over F_q) is irreducible iff
/// x^{q^n} = x (mod f) and gcd(x^{q^{n/s}} - x, f) = 1 for every prime s | n.
pub fn is_irreducible(f: &Poly<Field>) -> Result<bool> {
    let Some(n) = f.degree() else {
        return Err(Error::PreconditionViolated("zero polynomial".into()));
    };
    if n == 0 {
        return Err(Error::PreconditionViolated(
            "irreducibility of a constant is undefined".into(),
        ));
    }
    if n == 1 {
        return Ok(true);
    }
    let field = f.ring().clone();
    let f = f.monic()?;
    let q = field.size();
    let x = Poly::x(&field);
    // powers[i] = x^{q^i} mod f
    let mut powers = Vec::with_capacity(n + 1);
    powers.push(x.clone());
    for _ in 0..n {
        let next = powers.last().unwrap().powmod(&q, &f)?;
        powers.push(next);
    }
    if powers[n] != x.rem(&f)? {
        return Ok(false);
    }
    for s in prime_factors(n) {
        let diff = powers[n / s].sub(&x)?;
        if !diff.gcd(&f)?.is_constant() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Least-degree monic polynomial over a prefix subfield annihilating a, via
/// the Krylov sequence 1, a, a^2, ...
pub fn minimal_polynomial_over(a: &FqElement, base: &Field) -> Result<Poly<Field>> {
    if !base.is_prefix_of(a.field()) {
        return Err(Error::ContextMismatch);
    }
    if a.field() == base {
        let m = Poly::from_coeffs(base, vec![base.neg(a.rep()), base.one()]);
        return Ok(m);
    }
    let dim = a.field().total_degree() / base.total_degree();
    let mut powers = Vec::with_capacity(dim + 1);
    let mut acc = a.field().element(a.field().one());
    for _ in 0..=dim {
        powers.push(acc.coords_over(base)?);
        acc = acc.mul(a);
    }
    let coeffs = linalg::min_poly_krylov(base, &powers)?;
    Ok(Poly::from_coeffs(base, coeffs))
}

/// Minimal polynomial over the immediate parent level.
pub fn minimal_polynomial(a: &FqElement) -> Result<Poly<Field>> {
    let base = a.field().parent().unwrap_or(a.field()).clone();
    minimal_polynomial_over(a, &base)
}

/// Finds an element generating the whole of `field` over the prefix subfield
/// `base`, together with its minimal polynomial (degree exactly
/// [field : base]). Deterministic: starts from the top tower generator and
/// perturbs by lower generators and small scalars.
pub fn primitive_element_over(
    field: &Field,
    base: &Field,
) -> Result<(FqElement, Poly<Field>)> {
    if !base.is_prefix_of(field) {
        return Err(Error::ContextMismatch);
    }
    let want = field.total_degree() / base.total_degree();
    let gamma0 = field.generator()?;
    let mut candidates = vec![gamma0.clone()];
    // perturbations by generators of intermediate levels
    let mut level = field.parent().cloned();
    let mut shift = gamma0;
    while let Some(l) = level {
        if l == *base || l.is_prime_field() {
            break;
        }
        shift = shift.add(&l.generator()?.embed(field)?);
        candidates.push(shift.clone());
        level = l.parent().cloned();
    }
    for scale in 2u64..32 {
        let s = field.element_from_natural(&nat(scale));
        let last = candidates.last().unwrap().clone();
        candidates.push(last.add(&s));
    }
    for gamma in candidates {
        let m = minimal_polynomial_over(&gamma, base)?;
        if m.degree() == Some(want) {
            return Ok((gamma, m));
        }
    }
    Err(Error::ConstructionFailed(format!(
        "no primitive element of degree {want} found over {}",
        base.describe()
    )))
}

/// Lifts a polynomial coefficientwise into an extension of its coefficient
/// field.
pub fn embed_poly(f: &Poly<Field>, target: &Field) -> Result<Poly<Field>> {
    let base = f.ring();
    if !base.is_prefix_of(target) {
        return Err(Error::ContextMismatch);
    }
    let coeffs = f
        .coeffs()
        .iter()
        .map(|c| Ok(base.element(c.clone()).embed(target)?.rep().clone()))
        .collect::<Result<Vec<_>>>()?;
    Ok(Poly::from_coeffs(target, coeffs))
}

/// Deterministic scan for a monic irreducible polynomial of the given degree:
/// candidates are enumerated by index over the coefficient space and sieved
/// through `is_irreducible`.
pub fn find_irreducible(field: &Field, degree: usize, cap: u64) -> Result<Poly<Field>> {
    if degree == 0 {
        return Err(Error::PreconditionViolated("degree must be positive".into()));
    }
    let space = num_traits::pow::pow(field.size(), degree);
    let mut idx = Natural::zero();
    let mut trials = 0u64;
    while idx < space {
        if trials >= cap {
            return Err(Error::TrialCapExceeded(cap));
        }
        trials += 1;
        let mut coeffs = Vec::with_capacity(degree + 1);
        let mut rest = idx.clone();
        let radix = field.size();
        for _ in 0..degree {
            let (q, r) = rest.div_rem(&radix);
            coeffs.push(field.rep_from_index(&r));
            rest = q;
        }
        coeffs.push(field.one());
        idx += 1u32;
        let candidate = Poly::from_coeffs(field, coeffs);
        if degree > 1 && field.is_zero(&candidate.coeff(0)) {
            continue; // divisible by x
        }
        if is_irreducible(&candidate)? {
            return Ok(candidate);
        }
    }
    Err(Error::ConstructionFailed(format!(
        "no irreducible of degree {degree} over {}",
        field.describe()
    )))
}

// ---------------------------------------------------------------------------
// text formats
// ---------------------------------------------------------------------------

fn parse_rep(field: &Field, token: &str) -> Result<Rep> {
    let token = token.trim();
    if let Some(inner) = token.strip_prefix('[') {
        let inner = inner
            .strip_suffix(']')
            .ok_or_else(|| Error::Parse(format!("unbalanced brackets in '{token}'")))?;
        let parent = field
            .parent()
            .ok_or_else(|| Error::Parse("bracketed coefficient at prime level".into()))?;
        // split on top-level commas only
        let mut parts = Vec::new();
        let mut depth = 0usize;
        let mut start = 0usize;
        for (i, ch) in inner.char_indices() {
            match ch {
                '[' => depth += 1,
                ']' => depth -= 1,
                ',' if depth == 0 => {
                    parts.push(&inner[start..i]);
                    start = i + 1;
                }
                _ => {}
            }
        }
        parts.push(&inner[start..]);
        let degree = field.degree_over_parent();
        if parts.len() > degree {
            return Err(Error::Parse(format!(
                "coefficient vector longer than the level degree {degree}"
            )));
        }
        let mut coeffs = Vec::with_capacity(degree);
        for p in &parts {
            coeffs.push(parse_rep(parent, p)?);
        }
        coeffs.resize(degree, parent.zero());
        Ok(Rep::Ext(coeffs))
    } else {
        let n = Natural::parse_bytes(token.as_bytes(), 10)
            .ok_or_else(|| Error::Parse(format!("bad coefficient '{token}'")))?;
        Ok(field.from_natural(&n))
    }
}

impl Poly<Field> {
    /// Parses either the symbolic form "x^4+3*x+1" or comma-separated
    /// ascending coefficients "1,3,0,0,1" (bracketed vectors for extension
    /// coefficients).
    pub fn parse(field: &Field, text: &str) -> Result<Poly<Field>> {
        let text = text.trim();
        if text.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let has_var = text.chars().any(|c| c.is_ascii_alphabetic());
        if has_var {
            Self::parse_symbolic(field, text)
        } else {
            let mut coeffs = Vec::new();
            let mut depth = 0usize;
            let mut start = 0usize;
            let bytes: Vec<char> = text.chars().collect();
            for (i, ch) in bytes.iter().enumerate() {
                match ch {
                    '[' => depth += 1,
                    ']' => depth -= 1,
                    ',' if depth == 0 => {
                        coeffs.push(parse_rep(field, &text[start..i])?);
                        start = i + 1;
                    }
                    _ => {}
                }
            }
            coeffs.push(parse_rep(field, &text[start..])?);
            Ok(Poly::from_coeffs(field, coeffs))
        }
    }

    fn parse_symbolic(field: &Field, text: &str) -> Result<Poly<Field>> {
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let mut terms: Vec<(bool, String)> = Vec::new();
        let mut cur = String::new();
        let mut negative = false;
        let mut depth = 0usize;
        for ch in compact.chars() {
            match ch {
                '[' => {
                    depth += 1;
                    cur.push(ch);
                }
                ']' => {
                    depth -= 1;
                    cur.push(ch);
                }
                '+' | '-' if depth == 0 && !cur.is_empty() => {
                    terms.push((negative, std::mem::take(&mut cur)));
                    negative = ch == '-';
                }
                '-' if depth == 0 && cur.is_empty() => negative = true,
                _ => cur.push(ch),
            }
        }
        if !cur.is_empty() {
            terms.push((negative, cur));
        }
        let mut poly = Poly::zero(field);
        for (neg, term) in terms {
            let (coeff_txt, exp) = match term.find(|c: char| c.is_ascii_alphabetic()) {
                None => (term.as_str(), 0usize),
                Some(pos) => {
                    let coeff = term[..pos].trim_end_matches('*');
                    let rest = &term[pos + 1..];
                    let exp = if rest.is_empty() {
                        1
                    } else {
                        let e = rest.strip_prefix('^').ok_or_else(|| {
                            Error::Parse(format!("bad term '{term}'"))
                        })?;
                        e.parse::<usize>()
                            .map_err(|_| Error::Parse(format!("bad exponent in '{term}'")))?
                    };
                    (coeff, exp)
                }
            };
            let c = if coeff_txt.is_empty() {
                field.one()
            } else {
                parse_rep(field, coeff_txt)?
            };
            let c = if neg { field.neg(&c) } else { c };
            poly = poly.add(&Poly::monomial(field, c, exp))?;
        }
        Ok(poly)
    }
}

/// Canonical descriptor text: "p=<decimal>" then one defining polynomial per
/// line, bottom of the tower first. Parsing re-validates irreducibility, so a
/// descriptor is a proof-carrying artifact.
pub fn descriptor_string(field: &Field) -> String {
    let mut polys = Vec::new();
    let mut cur = field.clone();
    while let Some(defining) = cur.defining_poly() {
        polys.push(defining.to_string_with_var("x"));
        cur = cur.parent().unwrap().clone();
    }
    polys.reverse();
    let mut out = format!("p={}\n", field.characteristic());
    for p in polys {
        out.push_str(&p);
        out.push('\n');
    }
    out
}

pub fn parse_descriptor(text: &str) -> Result<Field> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let first = lines
        .next()
        .ok_or_else(|| Error::Parse("empty descriptor".into()))?
        .trim();
    let p_txt = first
        .strip_prefix("p=")
        .ok_or_else(|| Error::Parse("descriptor must start with p=<prime>".into()))?;
    let p = Natural::parse_bytes(p_txt.trim().as_bytes(), 10)
        .ok_or_else(|| Error::Parse(format!("bad prime '{p_txt}'")))?;
    let mut field = Field::prime(p)?;
    for line in lines {
        let poly = Poly::parse(&field, line)?;
        field = field.extend(&poly)?;
    }
    Ok(field)
}

/// Builds F_p[x]/<h>; rejects composite p and reducible h.
pub fn make_field(p: Natural, h_text: &str) -> Result<Field> {
    let fp = Field::prime(p)?;
    let h = Poly::parse(&fp, h_text)?;
    fp.extend(&h)
}
