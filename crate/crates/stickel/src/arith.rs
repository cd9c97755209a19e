//! Arbitrary-precision naturals and modular residue arithmetic.
//!
//! Everything downstream (field towers, resolvents, the Teichmüller
//! construction) reduces to the handful of operations in this module.
//! All values are immutable after construction and every operation is a
//! pure function.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision non-negative integer. Parses and prints as decimal.
pub type Natural = BigUint;

pub fn nat(n: u64) -> Natural {
    BigUint::from(n)
}

/// A modulus m >= 2, optionally certified prime.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Modulus {
    value: Natural,
    prime_checked: bool,
}

impl Modulus {
    pub fn new(value: Natural) -> Result<Self> {
        if value < nat(2) {
            return Err(Error::PreconditionViolated(format!(
                "modulus must be >= 2, got {value}"
            )));
        }
        Ok(Modulus { value, prime_checked: false })
    }

    /// Builds a modulus and verifies primality once, up front.
    pub fn new_prime(value: Natural) -> Result<Self> {
        if !is_prime(&value) {
            return Err(Error::NotPrime(value.to_string()));
        }
        Ok(Modulus { value, prime_checked: true })
    }

    pub fn value(&self) -> &Natural {
        &self.value
    }

    pub fn is_prime_checked(&self) -> bool {
        self.prime_checked
    }
}

/// A residue in [0, modulus).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModElement {
    value: Natural,
    modulus: Modulus,
}

impl ModElement {
    pub fn new(value: Natural, modulus: &Modulus) -> Self {
        ModElement { value: value % modulus.value(), modulus: modulus.clone() }
    }

    pub fn value(&self) -> &Natural {
        &self.value
    }

    pub fn modulus(&self) -> &Modulus {
        &self.modulus
    }

    fn check_same(&self, other: &ModElement) {
        assert_eq!(
            self.modulus, other.modulus,
            "modular arithmetic across different moduli"
        );
    }

    pub fn add(&self, other: &ModElement) -> ModElement {
        self.check_same(other);
        ModElement::new(&self.value + &other.value, &self.modulus)
    }

    pub fn sub(&self, other: &ModElement) -> ModElement {
        self.check_same(other);
        let m = self.modulus.value();
        ModElement::new(m + &self.value - &other.value, &self.modulus)
    }

    pub fn mul(&self, other: &ModElement) -> ModElement {
        self.check_same(other);
        ModElement::new(&self.value * &other.value, &self.modulus)
    }

    /// a^e by square-and-multiply; O(log e) multiplications.
    pub fn pow(&self, e: &Natural) -> ModElement {
        ModElement {
            value: self.value.modpow(e, self.modulus.value()),
            modulus: self.modulus.clone(),
        }
    }

    /// Multiplicative inverse via extended Euclid.
    pub fn inv(&self) -> Result<ModElement> {
        let v = mod_inverse(&self.value, self.modulus.value())?;
        Ok(ModElement { value: v, modulus: self.modulus.clone() })
    }

    /// Least positive n with self^n = 1, by exhaustive stepping.
    /// Intended for small moduli (the r of the constructions).
    pub fn multiplicative_order(&self) -> Result<Natural> {
        if self.value.gcd(self.modulus.value()) != Natural::one() {
            return Err(Error::NotInvertible(self.modulus.value().to_string()));
        }
        let mut acc = self.value.clone();
        let mut n = Natural::one();
        while acc != Natural::one() {
            acc = (&acc * &self.value) % self.modulus.value();
            n += 1u32;
        }
        Ok(n)
    }
}

/// Inverse of a modulo m, or NotInvertible when gcd(a, m) != 1.
pub fn mod_inverse(a: &Natural, m: &Natural) -> Result<Natural> {
    use num_bigint::BigInt;
    let a = BigInt::from(a.clone());
    let m = BigInt::from(m.clone());
    let e = a.extended_gcd(&m);
    if !e.gcd.is_one() {
        return Err(Error::NotInvertible(m.to_string()));
    }
    let r = e.x.mod_floor(&m);
    Ok(r.to_biguint().expect("mod_floor of positive modulus is non-negative"))
}

/// Writes n = u * r^t with r not dividing u. For n = 0 returns (0, 0).
pub fn factor_out_prime_power(n: &Natural, r: &Natural) -> (Natural, u32) {
    assert!(*r >= nat(2), "factor base must be >= 2");
    if n.is_zero() {
        return (Natural::zero(), 0);
    }
    let mut u = n.clone();
    let mut t = 0u32;
    loop {
        let (q, rem) = u.div_rem(r);
        if !rem.is_zero() {
            break;
        }
        u = q;
        t += 1;
    }
    (u, t)
}

/// Deterministic Miller-Rabin with the first twelve prime bases; exact for
/// all n < 3.3 * 10^24, far beyond the supported input range.
pub fn is_prime(n: &Natural) -> bool {
    if *n < nat(2) {
        return false;
    }
    for small in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let s = nat(small);
        if *n == s {
            return true;
        }
        if (n % &s).is_zero() {
            return false;
        }
    }
    let one = Natural::one();
    let n_minus_1 = n - &one;
    let (d, s) = factor_out_prime_power(&n_minus_1, &nat(2));
    'witness: for base in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = nat(base).modpow(&d, n);
        if x == one || x == n_minus_1 {
            continue;
        }
        for _ in 0..s.saturating_sub(1) {
            x = (&x * &x) % n;
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Enumerates primes p <= bound in increasing order.
pub fn primes_up_to(bound: u64) -> Vec<u64> {
    let mut out = Vec::new();
    if bound < 2 {
        return out;
    }
    let mut sieve = vec![true; (bound + 1) as usize];
    sieve[0] = false;
    if bound >= 1 {
        sieve[1] = false;
    }
    let mut i = 2usize;
    while i * i <= bound as usize {
        if sieve[i] {
            let mut j = i * i;
            while j <= bound as usize {
                sieve[j] = false;
                j += i;
            }
        }
        i += 1;
    }
    for (i, &p) in sieve.iter().enumerate() {
        if p {
            out.push(i as u64);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn me(v: u64, m: u64) -> ModElement {
        ModElement::new(nat(v), &Modulus::new(nat(m)).unwrap())
    }

    #[test]
    fn mod_pow_examples() {
        assert_eq!(me(3, 13).pow(&nat(3)).value(), &nat(1));
        assert_eq!(me(5, 7).pow(&nat(0)).value(), &nat(1));
        assert_eq!(me(5, 7).pow(&nat(1)).value(), &nat(5));
    }

    #[test]
    fn mod_pow_is_multiplicative_in_the_exponent() {
        for a in 1..40u64 {
            for e1 in 0..12u64 {
                for e2 in 0..12u64 {
                    let x = me(a, 41);
                    let lhs = x.pow(&nat(e1 + e2));
                    let rhs = x.pow(&nat(e1)).mul(&x.pow(&nat(e2)));
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn mod_inv_examples() {
        assert_eq!(me(1, 11).inv().unwrap().value(), &nat(1));
        assert_eq!(me(3, 7).inv().unwrap().value(), &nat(5));
        assert!(matches!(me(0, 7).inv(), Err(Error::NotInvertible(_))));
    }

    #[test]
    fn mod_inv_is_an_involution_for_all_units() {
        for m in [97u64, 1000] {
            let modulus = Modulus::new(nat(m)).unwrap();
            for a in 1..m {
                let x = ModElement::new(nat(a), &modulus);
                if let Ok(y) = x.inv() {
                    assert_eq!(y.inv().unwrap(), x);
                    assert_eq!(x.mul(&y).value(), &nat(1));
                }
            }
        }
    }

    #[test]
    fn multiplicative_order_examples() {
        assert_eq!(me(2, 3).multiplicative_order().unwrap(), nat(2));
        assert_eq!(me(1, 17).multiplicative_order().unwrap(), nat(1));
        assert_eq!(me(2, 7).multiplicative_order().unwrap(), nat(3));
    }

    #[test]
    fn factor_out_prime_power_examples() {
        assert_eq!(factor_out_prime_power(&nat(24), &nat(2)), (nat(3), 3));
        assert_eq!(factor_out_prime_power(&nat(5), &nat(3)), (nat(5), 0));
        assert_eq!(factor_out_prime_power(&nat(9), &nat(3)), (nat(1), 2));
    }

    #[test]
    fn factor_out_prime_power_reconstructs() {
        for n in 1..10_000u64 {
            for r in [2u64, 3, 5, 7] {
                let (u, t) = factor_out_prime_power(&nat(n), &nat(r));
                assert_eq!(&u * nat(r).pow(t), nat(n));
                assert!(!(&u % nat(r)).is_zero() || u.is_zero());
            }
        }
    }

    #[test]
    fn primality() {
        let primes = primes_up_to(2000);
        for n in 2..2000u64 {
            assert_eq!(is_prime(&nat(n)), primes.contains(&n), "n = {n}");
        }
        assert!(is_prime(&Natural::parse_bytes(b"170141183460469231731687303715884105727", 10).unwrap()));
    }

    #[test]
    fn modulus_rejects_unit() {
        assert!(Modulus::new(nat(1)).is_err());
        assert!(Modulus::new_prime(nat(15)).is_err());
    }
}
